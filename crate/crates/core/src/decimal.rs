//! Exact decimal rendering of double-double values.
//!
//! Output bytes must be identical across runs and platforms, so formatting
//! goes through exact rational arithmetic instead of float printing.

use crate::dd::Dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational value of a double-double.
pub fn dd_to_rational(v: Dd) -> BigRational {
    BigRational::from_float(v.hi).unwrap_or_default()
        + BigRational::from_float(v.lo).unwrap_or_default()
}

/// Render `v` with `sig` significant digits, plain decimal for moderate
/// exponents and scientific notation otherwise. Rounding is half-to-even on
/// the exact value; repeated runs produce identical bytes.
pub fn dd_to_decimal(v: Dd, sig: usize) -> String {
    let sig = sig.clamp(1, 40);
    let r = dd_to_rational(v);
    rational_to_decimal(&r, sig)
}

pub fn f64_to_decimal(v: f64, sig: usize) -> String {
    dd_to_decimal(Dd::from_f64(v), sig)
}

pub fn rational_to_decimal(r: &BigRational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let mag = r.abs();
    // Decimal exponent e with 10^e <= mag < 10^(e+1).
    let mut e = approx_log10(&mag);
    loop {
        let lower = pow10(e);
        let upper = pow10(e + 1);
        if mag < lower {
            e -= 1;
        } else if mag >= upper {
            e += 1;
        } else {
            break;
        }
    }
    // Mantissa digits: round(mag * 10^(sig-1-e)), half to even.
    let scaled = &mag * pow10(sig as i64 - 1 - e);
    let mut m = round_half_even(&scaled);
    // Rounding can carry to one extra digit (e.g. 9.99 -> 10.0).
    if m >= BigInt::from(10).pow(sig as u32) {
        m /= BigInt::from(10);
        e += 1;
    }
    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);
    let body = if (0..21).contains(&e) {
        // plain if the integer part fits comfortably
        if (e as usize) + 1 >= sig {
            // all digits are integer digits, pad with zeros
            let mut s = digits.clone();
            s.push_str(&"0".repeat((e as usize) + 1 - sig));
            s
        } else {
            format!("{}.{}", &digits[..=(e as usize)], &digits[(e as usize) + 1..])
        }
    } else if (-4..0).contains(&e) {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
    } else {
        // scientific
        let mut s = String::new();
        s.push_str(&digits[..1]);
        if sig > 1 {
            s.push('.');
            s.push_str(&digits[1..]);
        }
        s.push('e');
        if e >= 0 {
            s.push('+');
        }
        s.push_str(&e.to_string());
        s
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::from(10).pow(e as u32))
    } else {
        BigRational::new(BigInt::from(1), BigInt::from(10).pow((-e) as u32))
    }
}

fn approx_log10(r: &BigRational) -> i64 {
    let f = r.to_f64().unwrap_or(0.0);
    if f > 0.0 && f.is_finite() {
        f.log10().floor() as i64
    } else {
        // fall back to bit counts: log10(x) ~ bits * log10(2)
        let bits = r.numer().bits() as i64 - r.denom().bits() as i64;
        (bits as f64 * std::f64::consts::LOG10_2).floor() as i64
    }
}

fn round_half_even(r: &BigRational) -> BigInt {
    let floor = r.floor().to_integer();
    let frac = r - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let round_up = match frac.cmp(&half) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => !(&floor % BigInt::from(2)).is_zero(),
    };
    if round_up {
        floor + 1
    } else {
        floor
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext::parse_decimal;

    #[test]
    fn formats_catalan_digits() {
        let g = parse_decimal("0.9159655941772190150546185696791678").unwrap();
        let dd = crate::ext::rational_to_dd(&g);
        assert_eq!(dd_to_decimal(dd, 18), "0.915965594177219015");
    }

    #[test]
    fn formats_zeta3_digits() {
        let z = parse_decimal("1.2020569031595942853997381615114500").unwrap();
        let dd = crate::ext::rational_to_dd(&z);
        assert_eq!(dd_to_decimal(dd, 16), "1.202056903159594");
    }

    #[test]
    fn plain_and_scientific_switch() {
        assert_eq!(f64_to_decimal(0.5, 3), "0.500");
        assert_eq!(f64_to_decimal(-12.25, 4), "-12.25");
        assert_eq!(f64_to_decimal(1.0e-9, 3), "1.00e-9");
        assert_eq!(f64_to_decimal(0.0, 10), "0");
        assert_eq!(f64_to_decimal(3.0e21, 2), "3.0e+21");
        assert_eq!(f64_to_decimal(1e-4, 3), "0.000100");
    }

    #[test]
    fn roundtrip_32_digits_is_stable() {
        let v = Dd::PI / Dd::from_f64(7.0);
        let s = dd_to_decimal(v, 32);
        let back = crate::ext::rational_to_dd(&parse_decimal(&s).unwrap());
        assert!((v - back).to_f64().abs() < 1e-31);
        assert_eq!(s, dd_to_decimal(back, 32).as_str());
    }
}
