//! Polynomials with exact rational coefficients.
//!
//! Coefficient lists are kept in normal form (no trailing zeros; the zero
//! polynomial is the empty list), so degree is always the index of the last
//! entry. Derivatives at 0 and 1 and the integral over [0,1] are computed in
//! exact rational arithmetic.

use crate::dd::Dd;
use crate::ext::rational_to_dd;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Evaluation point for exact derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Zero,
    One,
}

/// Dense polynomial a_0 + a_1 t + ... with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
}

impl RationalPoly {
    pub fn zero() -> RationalPoly {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> RationalPoly {
        RationalPoly::from_coeffs(vec![c])
    }

    /// Build from low-to-high coefficients, trimming to normal form.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> RationalPoly {
        let mut coeffs = coeffs;
        while coeffs.last().map(Zero::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as None.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval_rational(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Coefficients rounded once into double-doubles for fast evaluation.
    pub fn dd_coeffs(&self) -> Vec<Dd> {
        self.coeffs.iter().map(rational_to_dd).collect()
    }

    pub fn eval_dd(coeffs: &[Dd], t: Dd) -> Dd {
        let mut acc = Dd::ZERO;
        for c in coeffs.iter().rev() {
            acc = acc * t + *c;
        }
        acc
    }

    pub fn add(&self, other: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        RationalPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &RationalPoly) -> RationalPoly {
        if self.is_zero() || other.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(out)
    }

    /// Multiply by t^k.
    pub fn shift_up(&self, k: usize) -> RationalPoly {
        if self.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![BigRational::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        RationalPoly::from_coeffs(out)
    }

    /// Exact quotient by t^k; requires the low-order coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> RationalPoly {
        assert!(
            self.coeffs.iter().take(k).all(Zero::is_zero),
            "polynomial is not divisible by t^{k}"
        );
        RationalPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Exact j-th derivative at an endpoint.
    ///
    /// At 0 it is j! a_j; at 1 it is sum_{m >= j} a_m m!/(m-j)!.
    pub fn derivative_at(&self, j: usize, point: End) -> BigRational {
        match point {
            End::Zero => {
                let a = self.coeff(j);
                a * BigRational::from_integer(crate::dirichlet::factorial(j as u64))
            }
            End::One => {
                let mut acc = BigRational::zero();
                for (m, a) in self.coeffs.iter().enumerate().skip(j) {
                    acc += a * BigRational::from_integer(falling_factorial(m as u64, j as u64));
                }
                acc
            }
        }
    }

    /// Exact integral over [0, 1]: sum a_m / (m+1).
    pub fn integral_01(&self) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, a) in self.coeffs.iter().enumerate() {
            acc += a / BigRational::from_integer(BigInt::from(m as u64 + 1));
        }
        acc
    }
}

/// m (m-1) ... (m-j+1); equals m!/(m-j)! for j <= m.
pub fn falling_factorial(m: u64, j: u64) -> BigInt {
    if j > m {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..j {
        acc *= BigInt::from(m - i);
    }
    acc
}

/// The weight polynomial t^(2 k0) (1-t)^(2 k0), expanded exactly; degree
/// 4 k0, vanishing to order 2 k0 at both endpoints.
pub fn weight_poly(k0: u32) -> RationalPoly {
    assert!(k0 >= 1);
    let m = 2 * k0;
    let mut coeffs = vec![BigRational::zero(); (4 * k0 + 1) as usize];
    for i in 0..=m {
        let sign = if i % 2 == 0 {
            BigInt::one()
        } else {
            BigInt::from(-1)
        };
        coeffs[(m + i) as usize] =
            BigRational::from_integer(sign * crate::dirichlet::binomial(m as u64, i as u64));
    }
    RationalPoly::from_coeffs(coeffs)
}
