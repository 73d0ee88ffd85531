//! Property tests: quadrature exactness against exact antiderivatives,
//! error-bound soundness, exact derivative extraction against finite
//! differences, and functional linearity.

use multitrig::approx::{functional_value, BasisKind, SmoothFn};
use multitrig::dd::Dd;
use multitrig::ext::{rational_to_dd, rational_to_ext};
use multitrig::poly::{End, RationalPoly};
use multitrig::quad::{integrate, SingularityHints, DESIGN_DEGREE};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = RationalPoly> {
    proptest::collection::vec(small_rational(), 1..=max_degree + 1)
        .prop_map(RationalPoly::from_coeffs)
}

/// Exact integral of P over [a, b] through the antiderivative.
fn exact_integral(p: &RationalPoly, a: &BigRational, b: &BigRational) -> BigRational {
    let mut anti = vec![BigRational::zero()];
    for (m, c) in p.coeffs().iter().enumerate() {
        anti.push(c / BigRational::from_integer(BigInt::from(m as u64 + 1)));
    }
    let anti = RationalPoly::from_coeffs(anti);
    anti.eval_rational(b) - anti.eval_rational(a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Polynomials up to the coarse rule's design degree integrate to within
    /// ten units of the last working digit.
    #[test]
    fn quadrature_polynomial_exactness(p in poly_strategy(DESIGN_DEGREE)) {
        let coeffs = p.dd_coeffs();
        let r = integrate(
            |t| RationalPoly::eval_dd(&coeffs, t),
            Dd::ZERO,
            Dd::ONE,
            1e-9,
            SingularityHints::NONE,
        ).unwrap();
        let exact = exact_integral(&p, &rat(0, 1), &rat(1, 1));
        let exact_dd = rational_to_dd(&exact);
        let diff = (r.value.value() - exact_dd).to_f64().abs();
        // 10 ulps of the working precision at this magnitude, plus the
        // coefficient-rounding noise of converting p to double-double.
        let scale = p.coeffs().iter().map(|c| c.to_f64().unwrap().abs()).sum::<f64>().max(1.0);
        let ulp10 = 10.0 * 1e-31 * scale;
        prop_assert!(diff <= ulp10, "diff {:e} > {:e}", diff, ulp10);
    }

    /// Error propagation stays an upper bound through random expression
    /// chains evaluated both exactly and in ExtReal.
    #[test]
    fn ext_real_error_soundness(
        a in small_rational(),
        b in small_rational(),
        c in small_rational(),
    ) {
        let xa = rational_to_ext(&a);
        let xb = rational_to_ext(&b);
        let xc = rational_to_ext(&c);
        let expr = (xa + xb) * xc - xa * xb;
        let exact = (&a + &b) * &c - &a * &b;
        let exact_dd = rational_to_dd(&exact);
        let diff = (expr.value() - exact_dd).to_f64().abs();
        prop_assert!(diff <= expr.err() + 1e-30, "diff {:e} err {:e}", diff, expr.err());
    }

    /// Exact endpoint derivatives agree with central finite differences at
    /// step 1e-6 (differences formed at working precision so the high-order
    /// stencils are not drowned by cancellation).
    #[test]
    fn derivative_matches_finite_difference(p in poly_strategy(12), j in 0usize..=3) {
        let coeffs = p.dd_coeffs();
        let h = 1e-6;
        for (point, t0) in [(End::Zero, 0.0f64), (End::One, 1.0f64)] {
            let at = |steps: f64| {
                let t = Dd::from_f64(t0) + Dd::from_f64(steps * h);
                RationalPoly::eval_dd(&coeffs, t)
            };
            let exact = p.derivative_at(j, point).to_f64().unwrap();
            let fd = match j {
                0 => at(0.0),
                1 => (at(1.0) - at(-1.0)) / Dd::from_f64(2.0 * h),
                2 => (at(1.0) - at(0.0).mul_pwr2(2.0) + at(-1.0)) / Dd::from_f64(h * h),
                _ => (at(2.0) - at(1.0).mul_pwr2(2.0) + at(-1.0).mul_pwr2(2.0) - at(-2.0))
                    / Dd::from_f64(2.0 * h * h * h),
            }
            .to_f64();
            let scale = exact.abs().max(1.0);
            prop_assert!(
                (exact - fd).abs() <= 1e-4 * scale,
                "j={j} point={point:?}: exact {exact} fd {fd}"
            );
        }
    }

    /// The zero polynomial has empty normal form; degree is the last nonzero
    /// index after any arithmetic.
    #[test]
    fn poly_normal_form(p in poly_strategy(8), q in poly_strategy(8)) {
        let sum = p.add(&q);
        if let Some(d) = sum.degree() {
            prop_assert!(!sum.coeff(d).is_zero());
        }
        let diff = sum.add(&q.scale(&rat(-1, 1)));
        // (p + q) - q == p
        prop_assert_eq!(diff, p);
    }
}

#[test]
fn functional_linearity() {
    // T(c1 f1 + c2 f2) = c1 T(f1) + c2 T(f2) with random rational weights
    let c1 = rat(3, 7);
    let c2 = rat(-5, 9);
    let c1_dd = rational_to_dd(&c1);
    let c2_dd = rational_to_dd(&c2);
    let f1 = SmoothFn::new("exp", |t: Dd| t.exp());
    let f2 = SmoothFn::new("cos3t", |t: Dd| (t * Dd::from_f64(3.0)).cos());
    let combo = {
        let f1 = f1.clone();
        let f2 = f2.clone();
        SmoothFn::new("combo", move |t| f1.eval(t) * c1_dd + f2.eval(t) * c2_dd)
    };
    for basis in [
        BasisKind::MultiCos,
        BasisKind::ZetaBeta,
        BasisKind::MultiSin,
        BasisKind::LupuWu,
    ] {
        let x = if matches!(basis, BasisKind::MultiCos) {
            Dd::from_f64(0.25)
        } else if matches!(basis, BasisKind::MultiSin) {
            Dd::from_f64(0.5)
        } else {
            Dd::ONE
        };
        let lhs = functional_value(&combo, basis, x, 1).unwrap();
        let t1 = functional_value(&f1, basis, x, 1).unwrap();
        let t2 = functional_value(&f2, basis, x, 1).unwrap();
        let rhs = rational_to_ext(&c1) * t1 + rational_to_ext(&c2) * t2;
        assert!(
            (lhs - rhs).to_f64().abs() <= 1e-18,
            "{basis:?}: diff {:e}",
            (lhs - rhs).to_f64()
        );
    }
}

#[test]
fn quadrature_higher_degree_meets_tolerance() {
    // beyond the design degree the adaptive loop still meets the tolerance
    let p = RationalPoly::from_coeffs((0..=40).map(|k| rat((k % 7) as i64 - 3, 4)).collect());
    let coeffs = p.dd_coeffs();
    let r = integrate(
        |t| RationalPoly::eval_dd(&coeffs, t),
        Dd::ZERO,
        Dd::ONE,
        1e-24,
        SingularityHints::NONE,
    )
    .unwrap();
    let exact = rational_to_dd(&exact_integral(&p, &rat(0, 1), &rat(1, 1)));
    assert!((r.value.value() - exact).to_f64().abs() <= 1e-24);
}

#[test]
fn error_estimate_is_an_upper_bound() {
    // |value - reference| <= max(errEstimate, requested tolerance) on
    // integrals with known closed forms, smooth and log-singular alike
    let tol = 1e-13;
    let cases: Vec<(QuadratureCase, Dd)> = vec![
        (
            QuadratureCase {
                f: Box::new(|t: Dd| t.exp()),
                hints: SingularityHints::NONE,
            },
            Dd::ONE.exp() - Dd::ONE,
        ),
        (
            QuadratureCase {
                f: Box::new(|t: Dd| t.ln()),
                hints: SingularityHints::left_log(),
            },
            -Dd::ONE,
        ),
        (
            QuadratureCase {
                f: Box::new(|t: Dd| (t * (Dd::ONE - t)).ln()),
                hints: SingularityHints::both_log(),
            },
            Dd::from_f64(-2.0),
        ),
    ];
    for (case, reference) in cases {
        let r = integrate(&case.f, Dd::ZERO, Dd::ONE, tol, case.hints).unwrap();
        let diff = (r.value.value() - reference).to_f64().abs();
        assert!(
            diff <= r.err_estimate.max(tol),
            "diff {diff:e} vs est {:e}",
            r.err_estimate
        );
    }
}

struct QuadratureCase {
    f: Box<dyn Fn(Dd) -> Dd>,
    hints: SingularityHints,
}

#[test]
fn weight_endpoint_vanishing_exact() {
    use multitrig::approx::build_pn;
    for k0 in 1..=3u32 {
        let s = RationalPoly::from_coeffs(vec![rat(2, 3), rat(-1, 4), rat(5, 9)]);
        let p = build_pn(&s, k0);
        for j in 0..(2 * k0) as usize {
            assert!(p.derivative_at(j, End::Zero).is_zero());
            assert!(p.derivative_at(j, End::One).is_zero());
        }
        assert!(!p.derivative_at((2 * k0) as usize, End::Zero).is_zero());
    }
}
