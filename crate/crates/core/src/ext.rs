//! Extended-precision reals with a tracked absolute error bound.
//!
//! `ExtReal` carries a double-double value plus a conservative upper bound on
//! its absolute error. Arithmetic propagates the bound with first-order
//! interval rules plus a rounding term per operation.

use crate::dd::{Dd, DD_EPS};
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real number at double-double working precision with an absolute error
/// bound. Invariant: `err >= 0` and the true value lies within `err` of
/// `value` whenever the inputs honored the same contract.
#[derive(Clone, Copy, Debug)]
pub struct ExtReal {
    value: Dd,
    err: f64,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal {
        value: Dd::ZERO,
        err: 0.0,
    };

    /// Wrap an exactly-known double-double (err = 0).
    pub fn exact(value: Dd) -> ExtReal {
        ExtReal { value, err: 0.0 }
    }

    pub fn from_f64(x: f64) -> ExtReal {
        ExtReal {
            value: Dd::from_f64(x),
            err: 0.0,
        }
    }

    pub fn from_i64(x: i64) -> ExtReal {
        ExtReal {
            value: Dd::from_i64(x),
            err: 0.0,
        }
    }

    pub fn with_err(value: Dd, err: f64) -> ExtReal {
        debug_assert!(err >= 0.0);
        ExtReal { value, err }
    }

    /// pi with a one-ulp error bound.
    pub fn pi() -> ExtReal {
        ExtReal {
            value: Dd::PI,
            err: 1e-31,
        }
    }

    /// log 2 with a one-ulp error bound.
    pub fn ln_2() -> ExtReal {
        ExtReal {
            value: Dd::LN_2,
            err: 1e-31,
        }
    }

    /// 2 pi with a one-ulp error bound.
    pub fn two_pi() -> ExtReal {
        ExtReal {
            value: Dd::TWO_PI,
            err: 2e-31,
        }
    }

    #[inline]
    pub fn value(&self) -> Dd {
        self.value
    }

    #[inline]
    pub fn err(&self) -> f64 {
        self.err
    }

    #[inline]
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs(&self) -> ExtReal {
        ExtReal {
            value: self.value.abs(),
            err: self.err,
        }
    }

    fn round_term(value: Dd) -> f64 {
        DD_EPS * value.to_f64().abs() + 1e-300
    }

    pub fn ln(&self) -> ExtReal {
        let v = self.value.ln();
        // d(ln x) = dx / x; use the pessimistic |x| - err in the denominator.
        let denom = (self.value.to_f64().abs() - self.err).max(1e-300);
        ExtReal {
            value: v,
            err: self.err / denom + 4.0 * Self::round_term(v).max(DD_EPS),
        }
    }

    pub fn exp(&self) -> ExtReal {
        let v = self.value.exp();
        let scale = v.to_f64().abs();
        ExtReal {
            value: v,
            err: scale * (self.err.exp_m1().max(self.err)) + 4.0 * Self::round_term(v),
        }
    }

    pub fn powi(&self, n: i32) -> ExtReal {
        let v = self.value.powi(n);
        // d(x^n) = n x^(n-1) dx, padded by rounding for the |n| multiplies.
        let base = self.value.to_f64().abs().max(1e-300);
        let deriv = (n.unsigned_abs() as f64) * v.to_f64().abs() / base;
        ExtReal {
            value: v,
            err: deriv * self.err + (n.unsigned_abs() as f64 + 2.0) * Self::round_term(v),
        }
    }

    pub fn sqrt(&self) -> ExtReal {
        let v = self.value.sqrt();
        let denom = 2.0 * v.to_f64().max(1e-300);
        ExtReal {
            value: v,
            err: self.err / denom + 4.0 * Self::round_term(v),
        }
    }

    /// True when the two values agree within their combined error bounds plus
    /// an extra tolerance.
    pub fn agrees_with(&self, other: &ExtReal, tol: f64) -> bool {
        (*self - *other).to_f64().abs() <= self.err + other.err + tol
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        ExtReal {
            value: -self.value,
            err: self.err,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, other: ExtReal) -> ExtReal {
        let v = self.value + other.value;
        ExtReal {
            value: v,
            err: self.err + other.err + Self::round_term(v),
        }
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;
    fn sub(self, other: ExtReal) -> ExtReal {
        self + (-other)
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, other: ExtReal) -> ExtReal {
        let v = self.value * other.value;
        let a = self.value.to_f64().abs();
        let b = other.value.to_f64().abs();
        ExtReal {
            value: v,
            err: a * other.err + b * self.err + self.err * other.err + Self::round_term(v),
        }
    }
}

impl Div for ExtReal {
    type Output = ExtReal;
    fn div(self, other: ExtReal) -> ExtReal {
        let v = self.value / other.value;
        let b = other.value.to_f64().abs().max(1e-300);
        let safe_b = (b - other.err).max(1e-300);
        let err = self.err / safe_b
            + self.value.to_f64().abs() * other.err / (b * safe_b)
            + Self::round_term(v);
        ExtReal { value: v, err }
    }
}

/// Convert an exact rational to double-double by two rounds of
/// correctly-rounded f64 extraction; the leftover is below one ulp of the
/// double-double result.
pub fn rational_to_dd(q: &BigRational) -> Dd {
    let hi = rational_to_f64_nearest(q);
    if !hi.is_finite() {
        return Dd::from_f64(hi);
    }
    let rem = q - BigRational::from_float(hi).expect("finite f64");
    let lo = rational_to_f64_nearest(&rem);
    Dd::new(hi, lo)
}

/// Exact rational -> ExtReal; err is at most one unit in the last working
/// digit (and zero when the rational is dyadic and fits exactly).
pub fn rational_to_ext(q: &BigRational) -> ExtReal {
    let v = rational_to_dd(q);
    let back =
        BigRational::from_float(v.hi).unwrap_or_default() + BigRational::from_float(v.lo).unwrap_or_default();
    let err = if &back == q {
        0.0
    } else {
        DD_EPS * v.to_f64().abs() + 1e-300
    };
    ExtReal::with_err(v, err)
}

/// Exact rational value of a double-double (both components are binary
/// rationals).
pub fn dd_to_rational_exact(v: Dd) -> BigRational {
    BigRational::from_float(v.hi).unwrap_or_default()
        + BigRational::from_float(v.lo).unwrap_or_default()
}

/// Round a rational to the nearest f64 (ties to even), robust for any
/// magnitude of numerator and denominator.
pub fn rational_to_f64_nearest(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let neg = q.is_negative();
    let num = q.numer().abs();
    let den = q.denom().abs();
    let num_bits = num.bits() as i64;
    let den_bits = den.bits() as i64;
    // Scale so the integer quotient has ~55 bits, then round.
    let shift = 55 - (num_bits - den_bits);
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num << shift as u64, den.clone())
    } else {
        (num.clone(), den << (-shift) as u64)
    };
    let (quot, rem) = num_integer_div_rem(&scaled_num, &scaled_den);
    let mut mant = quot
        .to_u128()
        .expect("quotient fits in 128 bits by construction");
    // Round to nearest, ties to even.
    let twice_rem = &rem << 1u8;
    if twice_rem > scaled_den || (twice_rem == scaled_den && mant & 1 == 1) {
        mant += 1;
    }
    let mut value = mant as f64;
    let mut exp = -(shift as i32);
    // Apply the scaling in safe chunks.
    while exp > 600 {
        value *= 2f64.powi(600);
        exp -= 600;
    }
    while exp < -600 {
        value *= 2f64.powi(-600);
        exp += 600;
    }
    value *= 2f64.powi(exp);
    if neg {
        -value
    } else {
        value
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    debug_assert!(r.sign() != Sign::Minus);
    (q, r)
}

/// Parse a plain decimal literal (optionally signed, optional fraction,
/// optional e-exponent) into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mantissa, exp10) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(d) => (-1, d),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let numer: BigInt = joined.parse().ok()?;
    let scale = frac_part.len() as i64 - exp10;
    let mut num = BigInt::from(sign) * numer;
    let mut den = BigInt::from(1);
    if scale > 0 {
        den = BigInt::from(10).pow(scale as u32);
    } else if scale < 0 {
        num *= BigInt::from(10).pow((-scale) as u32);
    }
    Some(BigRational::new(num, den))
}

/// Parse a rational given either as "p/q" or as a decimal literal.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some(i) = s.find('/') {
        let num: BigInt = s[..i].trim().parse().ok()?;
        let den: BigInt = s[i + 1..].trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        parse_decimal(s)
    }
}

/// Validate the stored 40-digit constants against both their decimal
/// literals and independent series recomputations. Returns a description of
/// the first mismatch, if any.
pub fn validate_constants() -> Result<(), String> {
    let pi_lit = rational_to_dd(&parse_decimal(Dd::PI_DECIMAL).expect("pi literal"));
    if (pi_lit - Dd::PI).to_f64().abs() > 1e-31 {
        return Err("pi constant disagrees with its decimal literal".into());
    }
    let pi_run = crate::dd::pi_by_machin();
    if (pi_run - Dd::PI).to_f64().abs() > 1e-31 {
        return Err("pi constant disagrees with Machin recomputation".into());
    }
    let ln2_lit = rational_to_dd(&parse_decimal(Dd::LN_2_DECIMAL).expect("ln2 literal"));
    if (ln2_lit - Dd::LN_2).to_f64().abs() > 1e-31 {
        return Err("log 2 constant disagrees with its decimal literal".into());
    }
    let ln2_run = crate::dd::ln_2_by_atanh();
    if (ln2_run - Dd::LN_2).to_f64().abs() > 1e-31 {
        return Err("log 2 constant disagrees with series recomputation".into());
    }
    Ok(())
}
