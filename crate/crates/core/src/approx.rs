//! Constructive approximation certificates over special-value bases.
//!
//! The pipeline realizes the existence arguments concretely: a smooth target
//! function is manufactured by linear scaling (or a plateau bump), a
//! near-minimax polynomial comes from Chebyshev interpolation with the
//! coefficients rounded to bounded-denominator rationals, the weight
//! polynomial forces endpoint vanishing, and the basis coefficients are
//! extracted in exact rational arithmetic. Floats enter only at basis-value
//! evaluation and residual computation.

use crate::dd::Dd;
use crate::dirichlet;
use crate::ext::{rational_to_dd, rational_to_ext, ExtReal};
use crate::multifun::{self, pow_cot};
use crate::poly::{weight_poly, End, RationalPoly};
use crate::quad::{integrate, SingularityHints};
use crate::resolutions::{resolve_all, CotIndexing};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Quadrature tolerance for functional and basis values. Tight enough that
/// coefficient-rounding error dominates every certificate residual.
pub const FUNCTIONAL_TOL: f64 = 1e-28;

/// Which special-value basis a certificate targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// log C_(k+1)(x)/pi over the tangent kernel on [0, x].
    MultiCos,
    /// eta/beta values over the log cos(pi t/4) kernel on [0, 1].
    ZetaBeta,
    /// log S_(k+1)(x/2)/pi over the cotangent kernel on [0, x].
    MultiSin,
    /// zeta(2k+1)/pi^(2k+1) over the cotangent kernel on [0, 1].
    LupuWu,
}

impl BasisKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BasisKind::MultiCos => "multicos",
            BasisKind::ZetaBeta => "zetaBeta",
            BasisKind::MultiSin => "multisin",
            BasisKind::LupuWu => "lupuWu",
        }
    }

    pub fn parse(s: &str) -> Option<BasisKind> {
        match s {
            "multicos" => Some(BasisKind::MultiCos),
            "zetaBeta" | "zetabeta" => Some(BasisKind::ZetaBeta),
            "multisin" => Some(BasisKind::MultiSin),
            "lupuWu" | "lupuwu" => Some(BasisKind::LupuWu),
            _ => None,
        }
    }

    /// Bases whose functional integrates over the fixed interval [0, 1].
    fn fixed_unit_interval(&self) -> bool {
        matches!(self, BasisKind::ZetaBeta | BasisKind::LupuWu)
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Approximation target: the real number alpha and the basis parameters.
#[derive(Clone, Debug)]
pub struct ApproxTarget {
    pub alpha: BigRational,
    pub basis: BasisKind,
    pub x: BigRational,
    pub k0: u32,
    pub q: u32,
    pub n: u32,
}

impl ApproxTarget {
    pub fn validate(&self) -> Result<(), ApproxError> {
        if self.k0 < 1 || self.q < 1 || self.n < 3 {
            return Err(ApproxError::Domain {
                message: "require k0 >= 1, q >= 1, n >= 3".into(),
            });
        }
        let xf = self.x.to_f64().unwrap_or(f64::NAN);
        let ok = match self.basis {
            BasisKind::MultiCos => xf > 0.0 && xf < 0.5,
            BasisKind::MultiSin => xf > 0.0 && xf < 1.0,
            BasisKind::ZetaBeta | BasisKind::LupuWu => (xf - 1.0).abs() < 1e-15,
        };
        if !ok {
            return Err(ApproxError::Domain {
                message: format!(
                    "x = {xf} outside the legal domain of basis {}",
                    self.basis.as_str()
                ),
            });
        }
        Ok(())
    }

    /// Right end of the approximation interval.
    fn domain_end(&self) -> BigRational {
        if self.basis.fixed_unit_interval() {
            BigRational::one()
        } else {
            self.x.clone()
        }
    }
}

/// Function profile used to realize the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Profile {
    #[default]
    Constant,
    Bump,
}

impl Profile {
    pub fn parse(s: &str) -> Option<Profile> {
        match s {
            "constant" => Some(Profile::Constant),
            "bump" => Some(Profile::Bump),
            _ => None,
        }
    }
}

/// A smooth function handle.
#[derive(Clone)]
pub struct SmoothFn {
    f: Arc<dyn Fn(Dd) -> Dd + Send + Sync>,
    pub desc: String,
}

impl SmoothFn {
    pub fn new(desc: impl Into<String>, f: impl Fn(Dd) -> Dd + Send + Sync + 'static) -> SmoothFn {
        SmoothFn {
            f: Arc::new(f),
            desc: desc.into(),
        }
    }

    pub fn zero() -> SmoothFn {
        SmoothFn::new("zero", |_| Dd::ZERO)
    }

    pub fn constant(c: Dd) -> SmoothFn {
        SmoothFn::new(format!("constant {}", c.to_f64()), move |_| c)
    }

    #[inline]
    pub fn eval(&self, t: Dd) -> Dd {
        (self.f)(t)
    }

    pub fn negate(self) -> SmoothFn {
        let inner = self.f.clone();
        SmoothFn {
            f: Arc::new(move |t| -(inner)(t)),
            desc: format!("-({})", self.desc),
        }
    }
}

impl fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothFn({})", self.desc)
    }
}

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("domain error: {message}")]
    Domain { message: String },
    #[error("degenerate construction: the functional of the base profile vanished")]
    Degenerate,
    #[error("denominator budget cannot support 1/n^q at this degree (achieved bound {achieved:e})")]
    Budget { achieved: f64 },
    #[error("{stage}: {message}")]
    Stage { stage: &'static str, message: String },
}

fn stage_err(stage: &'static str, e: impl fmt::Display) -> ApproxError {
    ApproxError::Stage {
        stage,
        message: e.to_string(),
    }
}

/// The weighted integrand w(t) f(t) kernel(t) for a basis, with the
/// removable cotangent pole absorbed into the weight's t^(2 k0) factor.
fn weighted_kernel<'a>(
    f: &'a SmoothFn,
    basis: BasisKind,
    k0: u32,
) -> impl Fn(Dd) -> Dd + 'a {
    move |t: Dd| {
        let one_minus = Dd::ONE - t;
        match basis {
            BasisKind::MultiCos => {
                let w = (t * one_minus).powi(2 * k0 as i32);
                f.eval(t) * w * (Dd::PI * t).tan()
            }
            BasisKind::ZetaBeta => {
                let w = (t * one_minus).powi(2 * k0 as i32);
                f.eval(t) * w * ((Dd::PI * t).mul_pwr2(0.25).cos()).ln()
            }
            BasisKind::MultiSin | BasisKind::LupuWu => {
                f.eval(t)
                    * one_minus.powi(2 * k0 as i32)
                    * pow_cot(t, 2 * k0, Dd::FRAC_PI_2)
            }
        }
    }
}

/// The weighted functional: integral of f(t) t^(2k0) (1-t)^(2k0) kernel(t)
/// over the basis's interval, at tolerance [`FUNCTIONAL_TOL`].
pub fn functional_value(
    f: &SmoothFn,
    basis: BasisKind,
    x: Dd,
    k0: u32,
) -> Result<ExtReal, ApproxError> {
    let end = if basis.fixed_unit_interval() { Dd::ONE } else { x };
    let xf = end.to_f64();
    let legal = match basis {
        BasisKind::MultiCos => xf > 0.0 && xf < 0.5,
        BasisKind::MultiSin => xf > 0.0 && xf < 1.0,
        _ => true,
    };
    if !legal {
        return Err(ApproxError::Domain {
            message: format!("x = {xf} outside the domain of basis {}", basis.as_str()),
        });
    }
    let g = weighted_kernel(f, basis, k0);
    let hints = match basis {
        BasisKind::MultiSin | BasisKind::LupuWu => SingularityHints::pole_removed(),
        _ => SingularityHints::NONE,
    };
    let q = integrate(g, Dd::ZERO, end, FUNCTIONAL_TOL, hints)
        .map_err(|e| stage_err("functional_value", e))?;
    Ok(q.value)
}

/// Realize f_alpha with T(f_alpha) = alpha by scaling a base profile:
/// f_alpha = alpha g / T(g), with g == 1 or a plateau bump centered at the
/// interval midpoint. alpha = 0 yields the zero function and negative alpha
/// the negated positive construction.
pub fn construct_f_alpha(
    alpha: &BigRational,
    basis: BasisKind,
    x: Dd,
    k0: u32,
    profile: Profile,
) -> Result<SmoothFn, ApproxError> {
    if alpha.is_zero() {
        return Ok(SmoothFn::zero());
    }
    if alpha.is_negative() {
        let flipped = construct_f_alpha(&(-alpha), basis, x, k0, profile)?;
        return Ok(flipped.negate());
    }
    let end = if basis.fixed_unit_interval() { Dd::ONE } else { x };
    let g = match profile {
        Profile::Constant => SmoothFn::new("one", |_| Dd::ONE),
        Profile::Bump => plateau_bump(end),
    };
    let t_g = functional_value(&g, basis, x, k0)?;
    if t_g.to_f64().abs() < 1e-30 {
        return Err(ApproxError::Degenerate);
    }
    let scale = rational_to_dd(alpha) / t_g.value();
    let inner = g.f.clone();
    Ok(SmoothFn {
        f: Arc::new(move |t| inner(t) * scale),
        desc: format!("{:?} profile scaled by alpha/T(g)", profile),
    })
}

/// C-infinity plateau bump: 1 on [3L/8, 5L/8], 0 outside [L/4, 3L/4],
/// glued by exp(-1/v) smooth steps.
fn plateau_bump(end: Dd) -> SmoothFn {
    let len = end;
    SmoothFn::new("plateau bump", move |t: Dd| {
        let delta = len.mul_pwr2(0.125);
        let lo = len.mul_pwr2(0.25);
        let hi = len - lo;
        let up = smooth_step((t - lo) / delta);
        let down = smooth_step((hi - t) / delta);
        up * down
    })
}

/// psi(v)/(psi(v) + psi(1-v)) with psi(v) = exp(-1/v) for v > 0.
fn smooth_step(v: Dd) -> Dd {
    let vf = v.to_f64();
    if vf <= 1e-3 {
        // exp(-1000) underflows far below working precision
        return Dd::ZERO;
    }
    if vf >= 1.0 - 1e-3 {
        return Dd::ONE;
    }
    let a = (-(v.recip())).exp();
    let b = (-((Dd::ONE - v).recip())).exp();
    a / (a + b)
}

/// Result of the near-minimax approximation stage.
#[derive(Clone, Debug)]
pub struct SmoothApprox {
    /// Monomial form with exact rational coefficients, denominators bounded
    /// by the requested budget.
    pub poly: RationalPoly,
    /// Chebyshev-basis rationals defining the same polynomial (kept for
    /// stable evaluation).
    pub cheb_coeffs: Vec<BigRational>,
    /// Sup-norm of f - s_r measured on a dense grid, plus rounding bound.
    pub sup_error_bound: f64,
    /// Contribution of coefficient rounding alone.
    pub rounding_bound: f64,
}

/// Best rational approximation to `v` with denominator at most `max_den`,
/// by continued-fraction convergents and the final semiconvergent.
pub fn best_rational_approx(v: &BigRational, max_den: &BigInt) -> BigRational {
    if v.denom() <= max_den {
        return v.clone();
    }
    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut p_curr = v.floor().to_integer();
    let mut q_curr = BigInt::one();
    let mut rem = v - BigRational::from_integer(p_curr.clone());
    loop {
        if rem.is_zero() {
            return BigRational::new(p_curr, q_curr);
        }
        rem = rem.recip();
        let a = rem.floor().to_integer();
        rem -= BigRational::from_integer(a.clone());
        let p_next = &a * &p_curr + &p_prev;
        let q_next = &a * &q_curr + &q_prev;
        if &q_next > max_den {
            // semiconvergent with the largest admissible partial quotient
            let k = (max_den - &q_prev) / &q_curr;
            let semi = BigRational::new(&k * &p_curr + &p_prev, &k * &q_curr + &q_prev);
            let conv = BigRational::new(p_curr, q_curr);
            let da = (v - &semi).abs();
            let db = (v - &conv).abs();
            return if da < db { semi } else { conv };
        }
        p_prev = p_curr;
        q_prev = q_curr;
        p_curr = p_next;
        q_curr = q_next;
    }
}

fn dd_to_rational(v: Dd) -> BigRational {
    BigRational::from_float(v.hi).unwrap_or_default()
        + BigRational::from_float(v.lo).unwrap_or_default()
}

/// Chebyshev interpolation of `f` on [0, domain_end] at n+1 Gauss nodes,
/// rounded to rational coefficients with denominators <= denom_bound, then
/// converted exactly to the monomial basis (and re-rounded there when the
/// interval map introduces new denominators). The rounding perturbation is
/// included in the reported sup-norm bound.
pub fn approximate_smooth(
    f: &SmoothFn,
    domain_end: &BigRational,
    n: u32,
    q: u32,
    denom_bound: &BigInt,
) -> Result<SmoothApprox, ApproxError> {
    assert!(n >= 1 && denom_bound > &BigInt::zero());
    let end_dd = rational_to_dd(domain_end);
    // The rounding-perturbation bounds below use sup |t^k| <= 1, so the
    // approximation interval must sit inside [0, 1] (every basis does).
    if end_dd.to_f64() <= 0.0 || end_dd.to_f64() > 1.0 {
        return Err(ApproxError::Domain {
            message: "domain end must lie in (0, 1]".into(),
        });
    }
    let n_nodes = (n + 1) as usize;
    // Gauss-Chebyshev nodes y_j = cos((2j+1) pi / (2N)) mapped to [0, end].
    let mut samples = Vec::with_capacity(n_nodes);
    for j in 0..n_nodes {
        let angle = Dd::PI * Dd::from_f64((2 * j + 1) as f64)
            / Dd::from_f64((2 * n_nodes) as f64);
        let y = angle.cos();
        let t = end_dd * (y + Dd::ONE).mul_pwr2(0.5);
        let v = f.eval(t);
        if !v.is_finite() {
            return Err(ApproxError::Stage {
                stage: "approximate_smooth",
                message: format!("non-finite sample at t = {}", t.to_f64()),
            });
        }
        samples.push(v);
    }
    // Discrete Chebyshev transform.
    let mut cheb_dd = Vec::with_capacity(n_nodes);
    for k in 0..n_nodes {
        let mut acc = Dd::ZERO;
        for (j, s) in samples.iter().enumerate() {
            let phase = (k * (2 * j + 1)) % (4 * n_nodes);
            let angle = Dd::PI * Dd::from_f64(phase as f64)
                / Dd::from_f64((2 * n_nodes) as f64);
            acc = acc + *s * angle.cos();
        }
        let scale = if k == 0 { 1.0 } else { 2.0 };
        cheb_dd.push(acc * Dd::from_f64(scale) / Dd::from_f64(n_nodes as f64));
    }
    // Round Chebyshev coefficients; tiny ones collapse to zero.
    let mut cheb_coeffs: Vec<BigRational> = Vec::with_capacity(n_nodes);
    let mut round_bound = 0.0f64;
    for c in &cheb_dd {
        let rounded = if c.to_f64().abs() < 1e-30 {
            BigRational::zero()
        } else {
            best_rational_approx(&dd_to_rational(*c), denom_bound)
        };
        round_bound += (*c - rational_to_dd(&rounded)).to_f64().abs();
        cheb_coeffs.push(rounded);
    }
    while cheb_coeffs.last().map(Zero::is_zero).unwrap_or(false) {
        cheb_coeffs.pop();
    }
    // Exact change of basis by polynomial Clenshaw with ell(t) = 2t/end - 1.
    let ell = RationalPoly::from_coeffs(vec![
        -BigRational::one(),
        BigRational::new(BigInt::from(2), BigInt::one()) / domain_end,
    ]);
    let monomial = clenshaw_poly(&cheb_coeffs, &ell);
    // Re-round monomial coefficients to honor the denominator contract.
    let mut final_coeffs = Vec::with_capacity(monomial.coeffs().len());
    let mut second_round = 0.0f64;
    for a in monomial.coeffs() {
        let r = best_rational_approx(a, denom_bound);
        // domain is inside [0,1], so sup|delta t^k| <= |delta|
        second_round += (a - &r).abs().to_f64().unwrap_or(0.0);
        final_coeffs.push(r);
    }
    let poly = RationalPoly::from_coeffs(final_coeffs);
    round_bound += second_round;
    // Dense-grid sup-norm of f - s via stable Chebyshev evaluation.
    let cheb_dd_rounded: Vec<Dd> = cheb_coeffs.iter().map(rational_to_dd).collect();
    let grid = 4096usize;
    let mut sup = 0.0f64;
    let mut sup_f = 0.0f64;
    for j in 0..=grid {
        let t = end_dd * Dd::from_f64(j as f64) / Dd::from_f64(grid as f64);
        let y = t / end_dd * Dd::from_f64(2.0) - Dd::ONE;
        let s = clenshaw_dd(&cheb_dd_rounded, y);
        let fv = f.eval(t);
        sup = sup.max((fv - s).to_f64().abs());
        sup_f = sup_f.max(fv.to_f64().abs());
    }
    let sup_error_bound = sup + round_bound;
    // The denominator budget must keep rounding strictly below the 1/n^q
    // scale it is supposed to certify.
    if round_bound > sup_f.max(1.0) / (n as f64).powi(q as i32) {
        return Err(ApproxError::Budget {
            achieved: sup_error_bound,
        });
    }
    Ok(SmoothApprox {
        poly,
        cheb_coeffs,
        sup_error_bound,
        rounding_bound: round_bound,
    })
}

/// Clenshaw recurrence over polynomial arguments: sum c_k T_k(ell(t)).
fn clenshaw_poly(cheb: &[BigRational], ell: &RationalPoly) -> RationalPoly {
    if cheb.is_empty() {
        return RationalPoly::zero();
    }
    let two_ell = ell.scale(&BigRational::new(BigInt::from(2), BigInt::one()));
    let mut b1 = RationalPoly::zero();
    let mut b2 = RationalPoly::zero();
    for k in (1..cheb.len()).rev() {
        let b = RationalPoly::constant(cheb[k].clone())
            .add(&two_ell.mul(&b1))
            .add(&b2.scale(&BigRational::from_integer(BigInt::from(-1))));
        b2 = b1;
        b1 = b;
    }
    RationalPoly::constant(cheb[0].clone())
        .add(&ell.mul(&b1))
        .add(&b2.scale(&BigRational::from_integer(BigInt::from(-1))))
}

/// Clenshaw evaluation of sum c_k T_k(y) at double-double precision.
fn clenshaw_dd(cheb: &[Dd], y: Dd) -> Dd {
    if cheb.is_empty() {
        return Dd::ZERO;
    }
    let mut b1 = Dd::ZERO;
    let mut b2 = Dd::ZERO;
    let two_y = y.mul_pwr2(2.0);
    for k in (1..cheb.len()).rev() {
        let b = cheb[k] + two_y * b1 - b2;
        b2 = b1;
        b1 = b;
    }
    cheb[0] + y * b1 - b2
}

/// P_n = t^(2 k0) (1-t)^(2 k0) s_r(t), exact; derivatives of orders below
/// 2 k0 vanish at both endpoints (asserted).
pub fn build_pn(s_r: &RationalPoly, k0: u32) -> RationalPoly {
    let p = weight_poly(k0).mul(s_r);
    for j in 0..(2 * k0) as usize {
        assert!(p.derivative_at(j, End::Zero).is_zero());
        assert!(p.derivative_at(j, End::One).is_zero());
    }
    p
}

/// One basis coefficient paired with a printable basis-element descriptor.
#[derive(Clone, Debug)]
pub struct CoeffEntry {
    /// Basis index (None for the standalone log-2 term).
    pub k: Option<u32>,
    pub value: BigRational,
    pub basis_element: String,
}

/// Tangent-basis coefficients: c_k = -a_k paired with log C_(k+1)(x)/pi.
pub fn coefficients_thm1(p_n: &RationalPoly) -> Vec<(u32, BigRational)> {
    match p_n.degree() {
        None => Vec::new(),
        Some(deg) => {
            let start = p_n
                .coeffs()
                .iter()
                .position(|c| !c.is_zero())
                .unwrap_or(0);
            (start..=deg).map(|k| (k as u32, -p_n.coeff(k))).collect()
        }
    }
}

/// Eta/beta-basis coefficients plus the standalone log-2 coefficient
/// (-integral of P_n over [0,1], per the resolved reading).
#[derive(Clone, Debug)]
pub struct Thm2Coefficients {
    pub beta: Vec<(u32, BigRational)>,
    pub eta: Vec<(u32, BigRational)>,
    /// Multiplies log 2 in the identity-level certificate.
    pub log2_coefficient: BigRational,
}

pub fn coefficients_thm2(p_n: &RationalPoly, k0: u32) -> Thm2Coefficients {
    assert!(p_n.coeff(0).is_zero(), "P_n(0) = 0 required");
    let deg = match p_n.degree() {
        None => {
            return Thm2Coefficients {
                beta: Vec::new(),
                eta: Vec::new(),
                log2_coefficient: BigRational::zero(),
            }
        }
        Some(d) => d,
    };
    let mut beta = Vec::new();
    for k in k0 as usize..=(deg / 2) {
        let sgn = if k % 2 == 0 { 1 } else { -1 };
        let c = p_n.derivative_at(2 * k, End::One)
            * BigRational::from_integer(BigInt::from(sgn) * BigInt::from(2).pow(2 * k as u32 + 1));
        beta.push((k as u32, c));
    }
    let mut eta = Vec::new();
    for k in k0 as usize..=deg.div_ceil(2) {
        let s1 = if (k - 1) % 2 == 0 { 1 } else { -1 };
        let s0 = if k % 2 == 0 { 1 } else { -1 };
        let c = p_n.derivative_at(2 * k - 1, End::One)
            * BigRational::new(BigInt::from(s1), BigInt::from(2))
            + p_n.derivative_at(2 * k - 1, End::Zero)
                * BigRational::from_integer(BigInt::from(s0) * BigInt::from(2).pow(2 * k as u32));
        eta.push((k as u32, c));
    }
    Thm2Coefficients {
        beta,
        eta,
        log2_coefficient: -p_n.integral_01(),
    }
}

/// Cotangent-basis coefficients under a resolved indexing: the shifted
/// reading gives c_k = 2^(k+1) a_k paired with log S_(k+1)(x/2)/pi; the
/// unshifted reading gives 2^k a_k.
pub fn coefficients_thm3(
    p_n: &RationalPoly,
    indexing: CotIndexing,
) -> Vec<(u32, BigRational)> {
    match p_n.degree() {
        None => Vec::new(),
        Some(deg) => {
            let start = p_n
                .coeffs()
                .iter()
                .position(|c| !c.is_zero())
                .unwrap_or(0);
            (start..=deg)
                .map(|k| {
                    let shift = match indexing {
                        CotIndexing::ProofShifted => k as u32 + 1,
                        CotIndexing::Displayed => k as u32,
                    };
                    let c = p_n.coeff(k)
                        * BigRational::from_integer(BigInt::from(2).pow(shift));
                    (k as u32, c)
                })
                .collect()
        }
    }
}

/// Odd-zeta coefficients c_k = (-1)^k 2 [P^(2k)(1) (1 - 4^-k) + P^(2k)(0)],
/// k0 <= k <= deg/2; the log-2 term vanishes because P_n(1) = 0 (asserted).
pub fn coefficients_thm4(p_n: &RationalPoly, k0: u32) -> Vec<(u32, BigRational)> {
    assert!(p_n.coeff(0).is_zero(), "P_n(0) = 0 required");
    if p_n.is_zero() {
        return Vec::new();
    }
    assert!(
        p_n.derivative_at(0, End::One).is_zero(),
        "P_n(1) = 0 required for the log-2 term to vanish"
    );
    let deg = p_n.degree().unwrap();
    let mut out = Vec::new();
    for k in k0 as usize..=(deg / 2) {
        let sgn = if k % 2 == 0 { 1 } else { -1 };
        let one_minus = BigRational::one()
            - BigRational::new(BigInt::one(), BigInt::from(2).pow(2 * k as u32));
        let c = (p_n.derivative_at(2 * k, End::One) * one_minus
            + p_n.derivative_at(2 * k, End::Zero))
            * BigRational::from_integer(BigInt::from(2 * sgn));
        out.push((k as u32, c));
    }
    out
}

/// A fully assembled approximation certificate.
#[derive(Clone, Debug)]
pub struct ApproxCertificate {
    pub target: ApproxTarget,
    pub profile: Profile,
    pub weighted_poly: RationalPoly,
    pub coefficients: Vec<CoeffEntry>,
    pub basis_values: Vec<ExtReal>,
    pub residual: f64,
    /// For the eta/beta basis: residual without the log-2 correction term,
    /// reported alongside the corrected one.
    pub residual_without_log2: Option<f64>,
    pub claimed_bound_form: String,
    pub fitted_k: f64,
    pub ladder: Vec<(u32, f64)>,
    pub resolutions: Vec<(String, String)>,
    pub passes: bool,
    /// Sup-norm bound of the smooth-approximation stage at the final n.
    pub sup_norm_bound: f64,
}

/// Default denominator budget 10^(q+6) n^q.
pub fn default_denom_bound(q: u32, n: u32) -> BigInt {
    BigInt::from(10).pow(q + 6) * BigInt::from(n).pow(q)
}

struct BasisCache {
    values: BTreeMap<u32, ExtReal>,
}

impl BasisCache {
    fn new() -> BasisCache {
        BasisCache {
            values: BTreeMap::new(),
        }
    }

    fn get(
        &mut self,
        basis: BasisKind,
        x: Dd,
        k: u32,
    ) -> Result<ExtReal, ApproxError> {
        if let Some(v) = self.values.get(&k) {
            return Ok(*v);
        }
        let v = basis_value(basis, x, k)?;
        self.values.insert(k, v);
        Ok(v)
    }
}

/// The basis element for index k.
fn basis_value(basis: BasisKind, x: Dd, k: u32) -> Result<ExtReal, ApproxError> {
    let v = match basis {
        BasisKind::MultiCos => {
            let lc = multifun::log_multicos(k + 1, x).map_err(|e| stage_err("basis_value", e))?;
            lc.log_value / ExtReal::pi()
        }
        BasisKind::MultiSin => {
            let half = x.mul_pwr2(0.5);
            let ls = multifun::log_multisin(k + 1, half).map_err(|e| stage_err("basis_value", e))?;
            ls.log_value / ExtReal::pi()
        }
        BasisKind::LupuWu => {
            let z = dirichlet::zeta(2 * k + 1).map_err(|e| stage_err("basis_value", e))?;
            z.val / ExtReal::pi().powi(2 * k as i32 + 1)
        }
        BasisKind::ZetaBeta => unreachable!("zetaBeta uses tagged entries"),
    };
    Ok(v)
}

fn basis_element_name(basis: BasisKind, k: u32) -> String {
    match basis {
        BasisKind::MultiCos => format!("log C_{}(x)/pi", k + 1),
        BasisKind::MultiSin => format!("log S_{}(x/2)/pi", k + 1),
        BasisKind::LupuWu => format!("zeta({})/pi^{}", 2 * k + 1, 2 * k + 1),
        BasisKind::ZetaBeta => unreachable!(),
    }
}

fn zeta_beta_entries(
    coeffs: &Thm2Coefficients,
) -> Result<(Vec<CoeffEntry>, Vec<ExtReal>), ApproxError> {
    let mut entries = Vec::new();
    let mut values = Vec::new();
    for (k, c) in &coeffs.beta {
        entries.push(CoeffEntry {
            k: Some(*k),
            value: c.clone(),
            basis_element: format!("beta({})/pi^{}", 2 * k + 2, 2 * k + 1),
        });
        let b = dirichlet::beta_fn(2 * k + 2).map_err(|e| stage_err("basis_value", e))?;
        values.push(b.val / ExtReal::pi().powi(2 * *k as i32 + 1));
    }
    for (k, c) in &coeffs.eta {
        entries.push(CoeffEntry {
            k: Some(*k),
            value: c.clone(),
            basis_element: format!("eta({})/pi^{}", 2 * k + 1, 2 * k),
        });
        let e = dirichlet::eta(2 * k + 1).map_err(|e| stage_err("basis_value", e))?;
        values.push(e.val / ExtReal::pi().powi(2 * *k as i32));
    }
    entries.push(CoeffEntry {
        k: None,
        value: coeffs.log2_coefficient.clone(),
        basis_element: "log(2)".to_string(),
    });
    values.push(ExtReal::ln_2());
    Ok((entries, values))
}

/// Dot product of exact coefficients with basis values.
fn dot(entries: &[CoeffEntry], values: &[ExtReal]) -> ExtReal {
    let mut acc = ExtReal::ZERO;
    for (e, v) in entries.iter().zip(values.iter()) {
        acc = acc + rational_to_ext(&e.value) * *v;
    }
    acc
}

struct StageOutput {
    coefficients: Vec<CoeffEntry>,
    basis_values: Vec<ExtReal>,
    residual: f64,
    residual_without_log2: Option<f64>,
    poly: RationalPoly,
    sup_norm_bound: f64,
}

fn certify_at_n(
    target: &ApproxTarget,
    f_alpha: &SmoothFn,
    n: u32,
    denom_bound: &BigInt,
    cache: &mut BasisCache,
    indexing: CotIndexing,
) -> Result<StageOutput, ApproxError> {
    let domain_end = target.domain_end();
    let approx = approximate_smooth(f_alpha, &domain_end, n, target.q, denom_bound)?;
    let p_n = build_pn(&approx.poly, target.k0);
    let x_dd = rational_to_dd(&target.x);
    let alpha_ext = rational_to_ext(&target.alpha);
    let (coefficients, basis_values, residual, residual_without_log2) = match target.basis {
        BasisKind::ZetaBeta => {
            let coeffs = coefficients_thm2(&p_n, target.k0);
            let (entries, values) = zeta_beta_entries(&coeffs)?;
            let with = (alpha_ext - dot(&entries, &values)).to_f64().abs();
            let without_entries = &entries[..entries.len() - 1];
            let without_values = &values[..values.len() - 1];
            let without = (alpha_ext - dot(without_entries, without_values))
                .to_f64()
                .abs();
            (entries, values, with, Some(without))
        }
        basis => {
            let raw: Vec<(u32, BigRational)> = match basis {
                BasisKind::MultiCos => coefficients_thm1(&p_n),
                BasisKind::MultiSin => coefficients_thm3(&p_n, indexing),
                BasisKind::LupuWu => coefficients_thm4(&p_n, target.k0),
                BasisKind::ZetaBeta => unreachable!(),
            };
            let mut entries = Vec::with_capacity(raw.len());
            let mut values = Vec::with_capacity(raw.len());
            for (k, c) in raw {
                entries.push(CoeffEntry {
                    k: Some(k),
                    value: c,
                    basis_element: basis_element_name(basis, k),
                });
                values.push(cache.get(basis, x_dd, k)?);
            }
            let residual = (alpha_ext - dot(&entries, &values)).to_f64().abs();
            (entries, values, residual, None)
        }
    };
    Ok(StageOutput {
        coefficients,
        basis_values,
        residual,
        residual_without_log2,
        poly: p_n,
        sup_norm_bound: approx.sup_error_bound,
    })
}

/// Produce a verified certificate: construct f_alpha, approximate it, build
/// P_n, extract exact coefficients, evaluate basis values, and fit the
/// empirical constant over the ladder n/4, n/2, n.
pub fn certify(
    target: &ApproxTarget,
    profile: Profile,
    denom_bound: Option<BigInt>,
) -> Result<ApproxCertificate, ApproxError> {
    target.validate()?;
    let resolutions = resolve_all().map_err(|e| stage_err("resolutions", e))?;
    let indexing = resolutions.cot_indexing_value();
    let x_dd = rational_to_dd(&target.x);
    let f_alpha = construct_f_alpha(&target.alpha, target.basis, x_dd, target.k0, profile)?;
    let mut ladder_ns: Vec<u32> = vec![target.n / 4, target.n / 2, target.n]
        .into_iter()
        .map(|m| m.max(3))
        .collect();
    ladder_ns.dedup();
    let mut cache = BasisCache::new();
    let mut ladder = Vec::new();
    let mut final_stage: Option<StageOutput> = None;
    for &m in &ladder_ns {
        let bound = match &denom_bound {
            Some(b) => b.clone(),
            None => default_denom_bound(target.q, m),
        };
        let out = certify_at_n(target, &f_alpha, m, &bound, &mut cache, indexing)?;
        ladder.push((m, out.residual));
        if m == target.n {
            final_stage = Some(out);
        }
    }
    let stage = final_stage.expect("final ladder point is the target n");
    let fitted_k = ladder
        .iter()
        .map(|(m, r)| r * (*m as f64).powi(target.q as i32))
        .fold(0.0f64, f64::max);
    let bound_at_n = if fitted_k == 0.0 {
        0.0
    } else {
        fitted_k / (target.n as f64).powi(target.q as i32)
    };
    let passes = stage.residual <= bound_at_n || stage.residual == 0.0;
    Ok(ApproxCertificate {
        target: target.clone(),
        profile,
        weighted_poly: stage.poly,
        coefficients: stage.coefficients,
        basis_values: stage.basis_values,
        residual: stage.residual,
        residual_without_log2: stage.residual_without_log2,
        claimed_bound_form: "K/n^q with fitted K".to_string(),
        fitted_k,
        ladder,
        resolutions: resolutions.summary(),
        passes,
        sup_norm_bound: stage.sup_norm_bound,
    })
}

/// Recompute |alpha - sum c_k b_k| from a certificate's own entries.
pub fn recompute_residual(cert: &ApproxCertificate) -> f64 {
    let alpha_ext = rational_to_ext(&cert.target.alpha);
    (alpha_ext - dot(&cert.coefficients, &cert.basis_values))
        .to_f64()
        .abs()
}
