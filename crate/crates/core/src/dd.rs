//! Double-double arithmetic: an unevaluated sum of two `f64`s giving roughly
//! 106 bits (31-32 decimal digits) of working precision.
//!
//! All error-free transformations assume round-to-nearest IEEE doubles and a
//! correct fused multiply-add, which `f64::mul_add` guarantees.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Relative rounding unit of a normalized double-double value, 2^-104.
pub const DD_EPS: f64 = 4.93038065763132e-32;

/// Two-float number `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let v = s - a;
    let e = (a - (s - v)) + (b - v);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

// The split constants intentionally store the f64-rounded head and its
// exact residual tail.
#[allow(clippy::approx_constant, clippy::excessive_precision)]
impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    /// pi to double-double precision.
    pub const PI: Dd = Dd {
        hi: 3.141592653589793116,
        lo: 1.2246467991473531772e-16,
    };
    /// 2*pi (exact doubling of `PI`).
    pub const TWO_PI: Dd = Dd {
        hi: 6.283185307179586232,
        lo: 2.4492935982947063545e-16,
    };
    /// pi/2 (exact halving of `PI`).
    pub const FRAC_PI_2: Dd = Dd {
        hi: 1.570796326794896558,
        lo: 6.123233995736765886e-17,
    };
    /// log 2 to double-double precision.
    pub const LN_2: Dd = Dd {
        hi: 6.931471805599452862e-1,
        lo: 2.3190468138462995584e-17,
    };

    /// Residual pi - (PI.hi + PI.lo), used to keep trigonometric range
    /// reduction accurate when the reduced argument is tiny (e.g. sin near
    /// pi). Exact for the stored pair; validated in tests against the
    /// 40-digit literal.
    pub const PI_TAIL: f64 = -2.9947699791177147e-33;

    /// 40-digit decimal expansion of pi; the constant pair above is validated
    /// against this literal and against a Machin-formula recomputation at
    /// startup.
    pub const PI_DECIMAL: &'static str = "3.141592653589793238462643383279502884197";
    /// 40-digit decimal expansion of log 2 (validated like `PI_DECIMAL`).
    pub const LN_2_DECIMAL: &'static str = "0.6931471805599453094172321214581765680755";

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn from_i64(x: i64) -> Dd {
        // i64 can exceed 53 bits; split exactly.
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        Dd::new(hi, lo)
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0)
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.is_sign_negative() {
            -self
        } else {
            self
        }
    }

    /// Exact multiplication by a power of two.
    #[inline]
    pub fn mul_pwr2(self, k: f64) -> Dd {
        Dd {
            hi: self.hi * k,
            lo: self.lo * k,
        }
    }

    #[inline]
    pub fn ldexp(self, e: i32) -> Dd {
        Dd {
            hi: libm_ldexp(self.hi, e),
            lo: libm_ldexp(self.lo, e),
        }
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn sqrt(self) -> Dd {
        if self.is_zero() {
            return Dd::ZERO;
        }
        debug_assert!(self.hi > 0.0, "sqrt of negative double-double");
        let approx = self.hi.sqrt();
        // One Newton step in double-double: s' = (s + x/s) / 2.
        let s = Dd::from_f64(approx);
        let s = (s + self / s).mul_pwr2(0.5);
        (s + self / s).mul_pwr2(0.5)
    }

    /// Integer power by binary exponentiation.
    pub fn powi(self, n: i32) -> Dd {
        if n == 0 {
            return Dd::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// exp(x). Argument reduction by log 2, then a Taylor series on the
    /// reduced argument.
    pub fn exp(self) -> Dd {
        if self.hi > 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Dd::ZERO;
        }
        let k = (self.hi / Dd::LN_2.hi).round();
        let r = self - Dd::LN_2 * Dd::from_f64(k);
        // |r| <= ln2/2; terms r^n/n! drop below 2^-110 near n = 28.
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for n in 1..=30 {
            term = term * r / Dd::from_f64(n as f64);
            sum = sum + term;
            if term.hi.abs() < 1e-35 * sum.hi.abs() {
                break;
            }
        }
        sum.ldexp(k as i32)
    }

    /// Natural logarithm. Newton iteration on exp, seeded from the f64 log;
    /// arguments near 1 go through `ln_1p` to keep relative accuracy.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0, "ln of non-positive double-double");
        let u = self - Dd::ONE;
        if u.hi.abs() < 0.25 {
            return u.ln_1p_of_self();
        }
        let mut y = Dd::from_f64(self.hi.ln());
        for _ in 0..2 {
            // y += x * exp(-y) - 1
            y = y + self * (-y).exp() - Dd::ONE;
        }
        y
    }

    /// log(1 + self), accurate for small `self`.
    pub fn ln_1p(self) -> Dd {
        if self.hi.abs() < 0.25 {
            self.ln_1p_of_self()
        } else {
            (Dd::ONE + self).ln()
        }
    }

    /// log(1+u) = 2 atanh(u / (2 + u)); no cancellation for |u| < 1/4.
    fn ln_1p_of_self(self) -> Dd {
        let u = self;
        let z = u / (Dd::from_f64(2.0) + u);
        let z2 = z * z;
        let mut term = z;
        let mut sum = z;
        for k in 1..=40 {
            term = term * z2;
            let add = term / Dd::from_f64((2 * k + 1) as f64);
            sum = sum + add;
            if add.hi.abs() < 1e-36 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        sum.mul_pwr2(2.0)
    }

    /// Simultaneous sin and cos with range reduction modulo pi/2. The tail
    /// component of pi is subtracted once, against the combined
    /// quarter-period count, after the reduced argument is small enough to
    /// absorb it; arguments within ~1e-33 of a multiple of pi still reduce
    /// correctly.
    pub fn sin_cos(self) -> (Dd, Dd) {
        let n2pi = (self.hi / Dd::TWO_PI.hi).round();
        let x = self - Dd::TWO_PI * Dd::from_f64(n2pi);
        let q = (x.hi / Dd::FRAC_PI_2.hi).round();
        let quarter_periods = 4.0 * n2pi + q;
        let r = x
            - Dd::FRAC_PI_2 * Dd::from_f64(q)
            - Dd::from_f64(0.5 * Dd::PI_TAIL) * Dd::from_f64(quarter_periods);
        let (s, c) = sin_cos_taylor(r);
        match (q as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    pub fn sin(self) -> Dd {
        self.sin_cos().0
    }

    pub fn cos(self) -> Dd {
        self.sin_cos().1
    }

    pub fn tan(self) -> Dd {
        let (s, c) = self.sin_cos();
        s / c
    }

    pub fn cot(self) -> Dd {
        let (s, c) = self.sin_cos();
        c / s
    }

    /// arctangent by Taylor series; only valid for |x| <= 0.27 (used by the
    /// Machin-formula constant validation).
    pub fn atan_small(self) -> Dd {
        debug_assert!(self.hi.abs() <= 0.27);
        let x2 = self * self;
        let mut term = self;
        let mut sum = self;
        let mut sign = -1.0;
        for k in 1..=40 {
            term = term * x2;
            let add = term / Dd::from_f64((2 * k + 1) as f64);
            sum = if sign > 0.0 { sum + add } else { sum - add };
            sign = -sign;
            if add.hi.abs() < 1e-36 * sum.hi.abs().max(1e-300) {
                break;
            }
        }
        sum
    }
}

/// sin and cos by Taylor series for |r| <= pi/4.
fn sin_cos_taylor(r: Dd) -> (Dd, Dd) {
    let r2 = r * r;
    // sin
    let mut term = r;
    let mut s = r;
    for k in 1..=16 {
        term = term * r2 / Dd::from_f64((2 * k * (2 * k + 1)) as f64);
        s = if k % 2 == 1 { s - term } else { s + term };
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    // cos
    let mut term = Dd::ONE;
    let mut c = Dd::ONE;
    for k in 1..=16 {
        term = term * r2 / Dd::from_f64((2 * k * (2 * k - 1)) as f64);
        c = if k % 2 == 1 { c - term } else { c + term };
        if term.hi.abs() < 1e-35 {
            break;
        }
    }
    (s, c)
}

fn libm_ldexp(x: f64, e: i32) -> f64 {
    // Values in this crate stay far from the subnormal range, so powi-style
    // scaling in two steps is exact.
    if (-1021..=1023).contains(&e) {
        x * f64::from_bits(((e + 1023) as u64) << 52)
    } else if e > 0 {
        x * f64::from_bits(2046u64 << 52) * f64::from_bits(((e - 1023 + 1023) as u64) << 52)
    } else {
        x * f64::from_bits(1u64 << 52) * libm_ldexp(1.0, e + 1022)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, other: Dd) -> Dd {
        let (s0, e0) = two_sum(self.hi, other.hi);
        let (s1, e1) = two_sum(self.lo, other.lo);
        let (s0, e2) = quick_two_sum(s0, e0 + s1);
        let (hi, lo) = quick_two_sum(s0, e2 + e1);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, other: Dd) -> Dd {
        self + (-other)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self - other * Dd::from_f64(q1);
        let q2 = r.hi / other.hi;
        let r = r - other * Dd::from_f64(q2);
        let q3 = r.hi / other.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, other: f64) -> Dd {
        self + Dd::from_f64(other)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, other: f64) -> Dd {
        self - Dd::from_f64(other)
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, other: f64) -> Dd {
        let (p, e) = two_prod(self.hi, other);
        let e = e + self.lo * other;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, other: f64) -> Dd {
        self / Dd::from_f64(other)
    }
}

impl PartialEq for Dd {
    fn eq(&self, other: &Dd) -> bool {
        self.hi == other.hi && self.lo == other.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

/// Recompute pi with Machin's formula, 16 atan(1/5) - 4 atan(1/239).
pub fn pi_by_machin() -> Dd {
    let a = (Dd::ONE / Dd::from_f64(5.0)).atan_small();
    let b = (Dd::ONE / Dd::from_f64(239.0)).atan_small();
    a.mul_pwr2(16.0) - b.mul_pwr2(4.0)
}

/// Recompute log 2 as 2 atanh(1/3).
pub fn ln_2_by_atanh() -> Dd {
    let x = Dd::ONE / Dd::from_f64(3.0);
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    for k in 1..=40 {
        term = term * x2;
        sum = sum + term / Dd::from_f64((2 * k + 1) as f64);
        if term.hi < 1e-36 {
            break;
        }
    }
    sum.mul_pwr2(2.0)
}
