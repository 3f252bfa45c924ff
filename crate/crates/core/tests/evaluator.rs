use fourier_eigen::evaluator::*;
use fourier_eigen::psi::{build, PsiExpansion, Sign, Tag, Variant};
use fourier_eigen::Error;
use proptest::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float};
use std::sync::OnceLock;

const P: u32 = 256;

fn psi(d: i64, sign: Sign) -> PsiExpansion {
    build(d, sign, 64, Variant::Optimal).unwrap()
}

fn ev(d: i64, sign: Sign) -> Evaluator {
    Evaluator::new(&psi(d, sign), EvalConfig::default()).unwrap()
}

fn pts() -> Vec<Complex> {
    [(0.0, 1.0), (0.2, 1.1), (-0.3, 0.9), (0.4, 1.0), (0.1, 1.05)]
        .iter()
        .map(|&(x, y)| Complex::with_val(P, (x, y)))
        .collect()
}

fn f(x: f64) -> Float {
    Float::with_val(P, x)
}

fn rel(a: &Float, b: &Float) -> f64 {
    let d = Float::with_val(P, a - b).abs().to_f64();
    d / a.to_f64().abs().max(b.to_f64().abs()).max(1e-300)
}

#[test]
fn functional_equations_small_dimensions() {
    for d in [4, 8, 12, 16, 20, 24] {
        for sign in [Sign::Plus, Sign::Minus] {
            let e = ev(d, sign);
            let good = e.functional_eq_check(&pts(), sign.epsilon()).unwrap();
            assert!(good < 1e-20, "d={d} {sign}: {good}");
            let bad = e.functional_eq_check(&pts(), -sign.epsilon()).unwrap();
            assert!(bad > 1e-3, "d={d} {sign} flipped: {bad}");
        }
    }
    let z = Complex::with_val(P, (0.5, 1.5));
    assert!(ev(24, Sign::Minus).functional_eq_check(&[z], -1).unwrap() < 1e-20);
}

#[test]
fn sample_points_must_stay_high() {
    let e = ev(8, Sign::Plus);
    let low = Complex::with_val(P, (0.0, 0.3));
    assert!(matches!(e.psi_at(&low), Err(Error::BadSamplePoint(_))));
    let far = Complex::with_val(P, (0.0, 3.0));
    assert!(matches!(e.functional_eq_check(&[far], 1), Err(Error::BadSamplePoint(_))));
}

#[test]
fn both_paths_agree_at_the_split() {
    for (d, sign) in [(8, Sign::Plus), (12, Sign::Minus), (24, Sign::Plus), (24, Sign::Minus)] {
        let e = ev(d, sign);
        for t in [1.0, 1.1, 0.9] {
            let a = e.psi_direct(&f(t)).unwrap();
            let b = e.psi_via_s(&f(t));
            assert!(rel(&a, &b) < 2f64.powi(-100), "d={d} {sign} t={t}");
        }
    }
}

#[test]
fn psi_vanishes_rapidly_at_zero() {
    let e = ev(8, Sign::Plus);
    let small = e.eval_psi(&f(0.05)).unwrap().to_f64().abs();
    let smaller = e.eval_psi(&f(0.02)).unwrap().to_f64().abs();
    assert!(small < 1e-20 && smaller < small * 1e-20, "{small} {smaller}");
    assert!(matches!(e.eval_psi(&f(0.0)), Err(Error::BadSamplePoint(_))));
}

#[test]
fn psi_grows_like_its_principal_part() {
    let e = ev(8, Sign::Plus);
    let t = f(3.0);
    let v = e.psi_direct(&t).unwrap();
    let a1 = symbolic_value(&e.expansion().a[1], P).real().clone();
    let lead = Float::with_val(P, Float::with_val(P, Constant::Pi) * 6u32).exp() * &a1;
    assert!(rel(&v, &lead) < 1e-3, "{} vs {}", v.to_f64(), lead.to_f64());
}

#[test]
fn quadrature_is_stable() {
    let psi = psi(8, Sign::Plus);
    let base = Evaluator::new(&psi, EvalConfig::default()).unwrap().eval_w(&f(3.0)).unwrap();
    let variants = [
        EvalConfig { quad_nodes: 100, ..EvalConfig::default() },
        EvalConfig { quad_nodes: 400, ..EvalConfig::default() },
        EvalConfig { split: 0.8, ..EvalConfig::default() },
        EvalConfig { split: 1.25, ..EvalConfig::default() },
    ];
    for cfg in variants {
        let w = Evaluator::new(&psi, cfg.clone()).unwrap().eval_w(&f(3.0)).unwrap();
        assert!(rel(&base, &w) < 1e-20, "{cfg:?}");
    }
}

#[test]
fn config_validation() {
    let psi = psi(8, Sign::Plus);
    for cfg in [
        EvalConfig { precision: 32, ..EvalConfig::default() },
        EvalConfig { quad_nodes: 8, ..EvalConfig::default() },
        EvalConfig { split: 3.0, ..EvalConfig::default() },
    ] {
        assert!(matches!(Evaluator::new(&psi, cfg), Err(Error::Config(_))));
    }
}

#[test]
fn gauss_legendre_is_exact_on_polynomials() {
    let nodes = gauss_legendre(20, P);
    assert_eq!(nodes.len(), 20);
    for k in 0..40u32 {
        let s: Float = nodes.iter().map(|(x, w)| Float::with_val(P, x.clone().pow(k)) * w).fold(f(0.0), |a, b| a + b);
        let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
        assert!((s.to_f64() - want).abs() < 1e-60, "k={k}");
    }
}

#[test]
fn poles_and_domain() {
    let e = ev(8, Sign::Plus);
    assert!(matches!(e.eval_w(&f(2.0)), Err(Error::PoleAt2k(_))));
    assert!(matches!(e.eval_w(&f(0.0)), Err(Error::PoleAt2k(_))));
    assert!(matches!(e.eval_w(&f(-1.5)), Err(Error::OutsideDomain { .. })));
    let m = ev(24, Sign::Minus);
    assert!(matches!(m.eval_w(&f(-0.6)), Err(Error::OutsideDomain { .. })));
    assert!(m.eval_w(&f(-0.4)).is_ok());
}

#[test]
fn laurent_data_at_double_poles() {
    let e = ev(24, Sign::Minus);
    let pi2 = Float::with_val(P, Float::with_val(P, Constant::Pi).square_ref());
    for k in 0..=e.expansion().depth() {
        let b = symbolic_value(&e.expansion().b[k], P).real().clone();
        if b.is_zero() {
            continue;
        }
        let h = f(1e-12);
        let w = e.eval_w(&Float::with_val(P, &h + 2 * k as u32)).unwrap();
        let lim = Float::with_val(P, &w * Float::with_val(P, h.square_ref())) * &pi2;
        assert!(rel(&lim, &b) < 1e-9, "k={k}");
    }
}

#[test]
fn d8_plus_special_values() {
    let e = ev(8, Sign::Plus);
    let p = e.expansion();
    assert_eq!(p.depth(), 1);
    assert!(p.b[1].is_zero());
    let a1 = p.principal_rational('a', 1, Tag::new(0, -2, 0));
    assert!(a1 < 0);
    let sv = e.special_values(1);
    assert!(sv.u.is_zero());
    assert!(!sv.du.is_zero());
    let num = e.u_derivative_numeric(&f(2.0), 1e-3).unwrap();
    assert!(rel(&num, &sv.du) < 1e-10, "{} vs {}", num.to_f64(), sv.du.to_f64());
    let far = e.special_values(40);
    assert!(far.u.is_zero() && far.du.is_zero());
}

#[test]
fn double_zeros_beyond_the_principal_part() {
    for (d, sign) in [(8, Sign::Plus), (12, Sign::Minus), (24, Sign::Plus)] {
        let e = ev(d, sign);
        let n = e.expansion().depth();
        for m in n + 1..=n + 12 {
            let sv = e.special_values(m);
            assert!(sv.u.is_zero() && sv.du.is_zero());
        }
        for m in [n + 1, n + 3] {
            let s = 2.0 * m as f64;
            let h = 1e-3;
            let (lo, hi) = (e.eval_u(&f(s - h)).unwrap().to_f64(), e.eval_u(&f(s + h)).unwrap().to_f64());
            let mid = e.eval_u(&f(s + 2.0 * h)).unwrap().to_f64();
            assert!(lo.signum() == hi.signum() || lo == 0.0, "d={d} m={m}");
            assert!((mid / hi - 4.0).abs() < 5e-2, "d={d} m={m}: {mid} {hi}");
        }
        let top = e.special_values(n);
        assert!(!top.du.is_zero(), "d={d} {sign}");
        let num = e.u_derivative_numeric(&f(2.0 * n as f64), 1e-3).unwrap();
        assert!(rel(&num, &top.du) < 1e-10, "d={d} {sign}");
    }
}

#[test]
fn d8_plus_certificate() {
    let c = ev(8, Sign::Plus).sign_change_certificate().unwrap();
    assert!((c.last_sign_change - 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(c.grid_verdict, GridVerdict::Consistent);
    assert_eq!(c.n, 1);
}

#[test]
fn profile_samples() {
    let e = ev(8, Sign::Plus);
    let rows = e.samples(&[0.5, 1.0, 2f64.sqrt(), 3.0]).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[2].f.abs() < 1e-10 * rows[1].f.abs());
    let csv = samples_csv(&rows);
    assert!(csv.starts_with("r,F(r),residual\n"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn lower_depth_variant() {
    let p = build(16, Sign::Minus, 64, Variant::LowerDepth).unwrap();
    assert_eq!(p.depth(), psi(16, Sign::Minus).depth() - 1);
    let e = Evaluator::new(&p, EvalConfig::default()).unwrap();
    assert!(e.functional_eq_check(&pts(), -1).unwrap() < 1e-20);
    assert!(build(8, Sign::Minus, 16, Variant::LowerDepth).is_err());
    assert!(build(8, Sign::Plus, 16, Variant::LowerDepth).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn equations_hold_at_random_points(x in -0.45f64..0.45, y in 0.9f64..1.1) {
        static E: OnceLock<Evaluator> = OnceLock::new();
        let e = E.get_or_init(|| ev(8, Sign::Plus));
        let z = Complex::with_val(P, (x, y));
        prop_assert!(e.functional_eq_check(&[z], 1).unwrap() < 1e-20);
    }

    #[test]
    fn profile_is_real_and_finite(r in 0.1f64..4.0) {
        static E: OnceLock<Evaluator> = OnceLock::new();
        let e = E.get_or_init(|| ev(12, Sign::Minus));
        let v = e.eval_f(&f(r)).unwrap();
        prop_assert!(v.is_finite());
    }
}
