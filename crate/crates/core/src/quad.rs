//! Adaptive quadrature on nested Clenshaw-Curtis rules at double-double
//! precision.
//!
//! A panel is evaluated with the 33-point rule; the 17-point rule reuses the
//! even-indexed samples and the difference drives adaptive bisection.
//! Endpoint log singularities are handled by the substitution
//! `t = a + (b-a) u^2` declared through [`SingularityHints`]; a removable
//! endpoint pole is the integrand builder's job (see the cot kernels) and is
//! only recorded in the result flags.

use crate::dd::{Dd, DD_EPS};
use crate::ext::ExtReal;
use std::sync::OnceLock;
use thiserror::Error;

/// Number of subpanels a single call may process before giving up.
pub const DEFAULT_PANEL_BUDGET: u32 = 1 << 16;

/// Degree through which a single unsubdivided panel integrates polynomials
/// exactly up to rounding (the coarse rule of the nested pair).
pub const DESIGN_DEGREE: usize = 16;

const N: usize = 32; // refined rule has N+1 nodes

/// Endpoint behavior declared by the caller.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SingularityHints {
    /// Integrable logarithmic singularity at the left endpoint.
    pub left_log_singular: bool,
    /// Integrable logarithmic singularity at the right endpoint.
    pub right_log_singular: bool,
    /// The integrand removes a pole at the left endpoint analytically
    /// (recorded in the result; no transform applied).
    pub left_pole_removed: bool,
}

impl SingularityHints {
    pub const NONE: SingularityHints = SingularityHints {
        left_log_singular: false,
        right_log_singular: false,
        left_pole_removed: false,
    };

    pub fn left_log() -> SingularityHints {
        SingularityHints {
            left_log_singular: true,
            ..Self::NONE
        }
    }

    pub fn right_log() -> SingularityHints {
        SingularityHints {
            right_log_singular: true,
            ..Self::NONE
        }
    }

    pub fn both_log() -> SingularityHints {
        SingularityHints {
            left_log_singular: true,
            right_log_singular: true,
            left_pole_removed: false,
        }
    }

    pub fn pole_removed() -> SingularityHints {
        SingularityHints {
            left_pole_removed: true,
            ..Self::NONE
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadratureResult {
    /// Integral value; `value.err()` equals `err_estimate`.
    pub value: ExtReal,
    /// Upper bound honored by the identity suite.
    pub err_estimate: f64,
    /// Panels processed.
    pub subdivisions: u32,
    /// Echo of the hints that were applied.
    pub flags: SingularityHints,
}

#[derive(Debug, Error)]
pub enum QuadError {
    #[error("panel budget exhausted: tolerance {requested:e} not met (reached {achieved:e} after {panels} panels)")]
    BudgetExhausted {
        requested: f64,
        achieved: f64,
        panels: u32,
    },
    #[error("integrand returned a non-finite value near t = {t}")]
    NonFiniteSample { t: f64 },
    #[error("invalid interval: a < b is required")]
    InvalidInterval,
    #[error("tolerance must be positive and finite")]
    InvalidTolerance,
}

struct CcRule {
    nodes: Vec<Dd>,
    w_fine: Vec<Dd>,
    w_coarse: Vec<Dd>,
}

fn cc_rule() -> &'static CcRule {
    static RULE: OnceLock<CcRule> = OnceLock::new();
    RULE.get_or_init(|| CcRule {
        nodes: cc_nodes(N),
        w_fine: cc_weights(N),
        w_coarse: cc_weights(N / 2),
    })
}

fn cc_nodes(n: usize) -> Vec<Dd> {
    let mut x = vec![Dd::ZERO; n + 1];
    for (k, slot) in x.iter_mut().enumerate().take(n / 2) {
        *slot = (Dd::PI * Dd::from_f64(k as f64) / Dd::from_f64(n as f64)).cos();
    }
    x[n / 2] = Dd::ZERO;
    for k in 0..n / 2 {
        x[n - k] = -x[k];
    }
    x[0] = Dd::ONE;
    x
}

/// Clenshaw-Curtis weights for nodes cos(k pi / n), n even.
#[allow(clippy::needless_range_loop)]
fn cc_weights(n: usize) -> Vec<Dd> {
    let mut w = vec![Dd::ZERO; n + 1];
    for k in 0..=n / 2 {
        let mut sum = Dd::ONE;
        for j in 1..=n / 2 {
            let b = if j == n / 2 { 1.0 } else { 2.0 };
            // cos(2 j k pi / n), reduced through the integer phase.
            let phase = (2 * j * k) % (2 * n);
            let angle = Dd::PI * Dd::from_f64(phase as f64) / Dd::from_f64(n as f64);
            let c = angle.cos();
            sum = sum - c * (Dd::from_f64(b) / Dd::from_f64((4 * j * j - 1) as f64));
        }
        let ck = if k == 0 || k == n { 1.0 } else { 2.0 };
        w[k] = sum * (Dd::from_f64(ck) / Dd::from_f64(n as f64));
    }
    for k in 0..n / 2 {
        w[n - k] = w[k];
    }
    w
}

fn pairwise_sum(v: &[Dd]) -> Dd {
    match v.len() {
        0 => Dd::ZERO,
        1 => v[0],
        2 => v[0] + v[1],
        len => {
            let mid = len / 2;
            pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
        }
    }
}

struct PanelEstimate {
    fine: Dd,
    err: f64,
}

fn eval_panel(f: &dyn Fn(Dd) -> Dd, a: Dd, b: Dd) -> Result<PanelEstimate, QuadError> {
    let rule = cc_rule();
    let h = (b - a).mul_pwr2(0.5);
    let c = (a + b).mul_pwr2(0.5);
    let mut terms_fine = [Dd::ZERO; N + 1];
    let mut terms_coarse = [Dd::ZERO; N / 2 + 1];
    let mut abs_sum = 0.0f64;
    for j in 0..=N {
        let t = c + h * rule.nodes[j];
        let v = f(t);
        if !v.is_finite() {
            return Err(QuadError::NonFiniteSample { t: t.to_f64() });
        }
        terms_fine[j] = rule.w_fine[j] * v;
        abs_sum += terms_fine[j].to_f64().abs();
        if j % 2 == 0 {
            terms_coarse[j / 2] = rule.w_coarse[j / 2] * v;
        }
    }
    let fine = pairwise_sum(&terms_fine) * h;
    let coarse = pairwise_sum(&terms_coarse) * h;
    let round_floor = 16.0 * DD_EPS * abs_sum * h.to_f64().abs();
    let err = (fine - coarse).to_f64().abs().max(round_floor) + round_floor;
    Ok(PanelEstimate { fine, err })
}

struct Adaptive {
    panels_used: u32,
    budget: u32,
}

impl Adaptive {
    fn run(
        &mut self,
        f: &dyn Fn(Dd) -> Dd,
        a: Dd,
        b: Dd,
        tol: f64,
    ) -> Result<(Dd, f64), QuadError> {
        let total_len = (b - a).to_f64();
        // Two acceptance routes that together keep the committed error at or
        // below tol: length-proportional shares summing to tol/2, and a flat
        // per-panel floor worth tol/2 spread over the whole budget. The
        // floor is what lets refinement stop once a panel's estimate is
        // dominated by the integrand's own noise.
        let panel_floor = 0.5 * tol / self.budget as f64;
        let mut stack = vec![(a, b)];
        let mut sum = Dd::ZERO;
        let mut err_total = 0.0f64;
        while let Some((lo, hi)) = stack.pop() {
            if self.panels_used >= self.budget {
                return Err(QuadError::BudgetExhausted {
                    requested: tol,
                    achieved: err_total,
                    panels: self.panels_used,
                });
            }
            self.panels_used += 1;
            let est = eval_panel(f, lo, hi)?;
            let len = (hi - lo).to_f64();
            let share = 0.5 * tol * (len / total_len);
            let width_floor = len <= 16.0 * DD_EPS * (lo.to_f64().abs() + hi.to_f64().abs() + 1.0);
            if est.err <= share.max(panel_floor) || width_floor {
                sum = sum + est.fine;
                err_total += est.err;
            } else {
                let mid = (lo + hi).mul_pwr2(0.5);
                // Left half processed first (LIFO), keeping order deterministic.
                stack.push((mid, hi));
                stack.push((lo, mid));
            }
        }
        // Panels accepted only because they hit the width floor may have
        // pushed the total above the tolerance; that must fail loudly.
        if err_total > tol {
            return Err(QuadError::BudgetExhausted {
                requested: tol,
                achieved: err_total,
                panels: self.panels_used,
            });
        }
        Ok((sum, err_total))
    }
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` with the default
/// panel budget.
pub fn integrate<F>(
    f: F,
    a: Dd,
    b: Dd,
    tol: f64,
    hints: SingularityHints,
) -> Result<QuadratureResult, QuadError>
where
    F: Fn(Dd) -> Dd,
{
    integrate_with_budget(f, a, b, tol, hints, DEFAULT_PANEL_BUDGET)
}

/// Like [`integrate`] with an explicit panel budget.
pub fn integrate_with_budget<F>(
    f: F,
    a: Dd,
    b: Dd,
    tol: f64,
    hints: SingularityHints,
    budget: u32,
) -> Result<QuadratureResult, QuadError>
where
    F: Fn(Dd) -> Dd,
{
    if tol <= 0.0 || !tol.is_finite() {
        return Err(QuadError::InvalidTolerance);
    }
    if a.to_f64() >= b.to_f64() || !(a.to_f64().is_finite() && b.to_f64().is_finite()) {
        return Err(QuadError::InvalidInterval);
    }
    let f_ref: &dyn Fn(Dd) -> Dd = &f;
    let mut engine = Adaptive {
        panels_used: 0,
        budget,
    };
    let len = b - a;
    let (sum, err) = match (hints.left_log_singular, hints.right_log_singular) {
        (false, false) => engine.run(f_ref, a, b, tol)?,
        (true, false) => {
            let g = left_transform(f_ref, a, len);
            engine.run(&g, Dd::ZERO, Dd::ONE, tol)?
        }
        (false, true) => {
            let g = right_transform(f_ref, b, len);
            engine.run(&g, Dd::ZERO, Dd::ONE, tol)?
        }
        (true, true) => {
            // split at the midpoint; each half gets its own transform
            let half = len.mul_pwr2(0.5);
            let gl = left_transform(f_ref, a, half);
            let (s1, e1) = engine.run(&gl, Dd::ZERO, Dd::ONE, tol * 0.5)?;
            let gr = right_transform(f_ref, b, half);
            let (s2, e2) = engine.run(&gr, Dd::ZERO, Dd::ONE, tol * 0.5)?;
            (s1 + s2, e1 + e2)
        }
    };
    Ok(QuadratureResult {
        value: ExtReal::with_err(sum, err),
        err_estimate: err,
        subdivisions: engine.panels_used,
        flags: hints,
    })
}

/// Substitution t = a + L u^2: integrates a left-endpoint log singularity.
/// The u = 0 sample is the exact limit 0 and never calls `f`.
fn left_transform<'a>(f: &'a dyn Fn(Dd) -> Dd, a: Dd, len: Dd) -> impl Fn(Dd) -> Dd + 'a {
    move |u: Dd| {
        if u.is_zero() {
            return Dd::ZERO;
        }
        let t = a + len * u * u;
        f(t) * len * u.mul_pwr2(2.0)
    }
}

/// Mirrored substitution t = b - L u^2 for a right-endpoint singularity.
fn right_transform<'a>(f: &'a dyn Fn(Dd) -> Dd, b: Dd, len: Dd) -> impl Fn(Dd) -> Dd + 'a {
    move |u: Dd| {
        if u.is_zero() {
            return Dd::ZERO;
        }
        let t = b - len * u * u;
        f(t) * len * u.mul_pwr2(2.0)
    }
}
