use fourier_eigen::arith::{bernoulli, divisor_count, divisor_sums};
use fourier_eigen::forms::{e4e6_monomial, gen, GeneratorId};
use fourier_eigen::positivity::*;
use fourier_eigen::recurrence::{member, Kind};
use fourier_eigen::{Error, QSeries};
use rug::{Integer, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn decomposed(w: i64) -> Decomposition {
    let f = member(Kind::F, w, DECOMPOSE_TRUNC).unwrap();
    decompose(f.as_f().unwrap()).unwrap()
}

#[test]
fn mu_values() {
    assert_eq!(mu(8).unwrap(), 1);
    assert_eq!(mu(10).unwrap(), 1);
    assert_eq!(mu(12).unwrap(), r(1, 6000));
    assert!(matches!(mu(6), Err(Error::BadWeight(6))));
    assert!(matches!(mu(9), Err(Error::BadWeight(9))));
}

#[test]
fn constant_terms_are_proportional_to_one_minus_two_one() {
    for w in (8..=48).step_by(2) {
        let f = member(Kind::F, w, 8).unwrap();
        let m: Rational = mu(w).unwrap() * if (w / 2) % 2 == 0 { 1 } else { -1 };
        let want = [m.clone(), Rational::from(&m * -2), m];
        assert_eq!(constant_vector(f.as_f().unwrap()), want, "w={w}");
    }
}

#[test]
fn eisenstein_scale_matches_mu() {
    for w in (8..=40).step_by(2) {
        let d = decomposed(w);
        let sign = if (w / 2) % 2 == 0 { 1 } else { -1 };
        let want = mu(w).unwrap() * r(144 * sign, (w - 3) * (w - 4));
        assert_eq!(d.eisenstein_scale, want, "w={w}");
        assert!(d.eisenstein_coefficient() > 0, "w={w}");
        assert!(d.reassemble().agrees_with(&member(Kind::F, w, DECOMPOSE_TRUNC).unwrap().as_f().unwrap().collapse()));
        for s in [&d.alpha_cusp, &d.beta_cusp, &d.gamma_cusp] {
            assert_eq!(s.coeff_int(0), 0);
        }
    }
}

#[test]
fn small_weight_closed_forms() {
    let t = DECOMPOSE_TRUNC;
    let d8 = decomposed(8);
    assert_eq!(d8.eisenstein_scale, r(36, 5));
    assert!(d8.alpha_cusp.is_zero() && d8.beta_cusp.is_zero() && d8.gamma_cusp.is_zero());
    assert_eq!(decomposed(10).eisenstein_scale, r(-24, 7));

    let delta = gen(GeneratorId::Delta, t);
    let d12 = decomposed(12);
    assert_eq!(d12.eisenstein_scale, r(1, 3000));
    let e8 = e4e6_monomial(2, 0, t);
    let want = &e8.derive().derive().scale(&r(1, 3000)) - &delta.scale(&r(4, 25));
    assert!(d12.reassemble().agrees_with(&want));

    let d16 = decomposed(16);
    let e4 = gen(GeneratorId::E4, t);
    let num = &e4e6_monomial(3, 0, t).scale(&r(49, 1)) - &e4e6_monomial(0, 2, t).scale(&r(25, 1));
    let alpha = num.scale(&r(1, 2751840000));
    let want = &alpha.derive().derive() - &(&delta * &e4).scale(&r(1, 45500));
    assert!(d16.reassemble().agrees_with(&want));
    assert!(d16.gamma_cusp.agrees_with(&(&delta * &e4).scale(&r(-1, 45500))));
}

#[test]
fn eisenstein_second_derivative_coefficients() {
    for k in [4i64, 6, 8, 12, 20] {
        let e = gen(GeneratorId::Eisenstein(k as u32), 60).derive().derive();
        let sig = divisor_sums((k - 1) as u32, 60);
        let factor = Rational::from(-2 * k) / bernoulli(k as usize);
        for n in 1..60i64 {
            let want = Rational::from(&factor * Integer::from(n * n)) * &sig[n as usize];
            assert_eq!(e.coeff_int(n), want, "k={k} n={n}");
        }
    }
}

#[test]
fn jenkins_rouse_for_delta() {
    let delta = gen(GeneratorId::Delta, 10);
    let c = jenkins_rouse(&delta, 12, 1).to_f64();
    let want = 12f64.ln().sqrt() * (11.0 + 18.72f64.exp() * 41.41f64.powi(6) * 12f64.powf(-5.5) * (-7.288f64).exp());
    assert!((c - want).abs() / want < 1e-12, "{c} vs {want}");
    assert!(jenkins_rouse(&delta, 12, 1) >= want * (1.0 - 1e-15));

    let zero = QSeries::constant(0, 10);
    assert_eq!(jenkins_rouse(&zero, 12, 1).to_f64(), 0.0);
    let doubled = jenkins_rouse(&delta.scale(&r(2, 1)), 12, 1).to_f64();
    assert!((doubled / c - 2.0).abs() < 1e-14);
}

#[test]
fn cusp_bounds_dominate_actual_coefficients() {
    for w in [24i64, 28, 32, 40] {
        let d = decomposed(w);
        let f = member(Kind::F, w, 120).unwrap();
        let d_long = decompose(f.as_f().unwrap()).unwrap();
        for (g, k) in [(&d_long.alpha_cusp, w - 4), (&d_long.beta_cusp, w - 2), (&d_long.gamma_cusp, w)] {
            let c = cusp_constant(g, k).unwrap().to_f64();
            for n in 1..120i64 {
                let bound = c * (n as f64).powf((k - 1) as f64 / 2.0) * divisor_count(n as u64) as f64;
                assert!(g.coeff_int(n).to_f64().abs() <= bound * (1.0 + 1e-9), "w={w} k={k} n={n}");
            }
        }
        assert_eq!(threshold(&d).unwrap().n0, threshold(&d_long).unwrap().n0);
    }
}

#[test]
fn thresholds() {
    assert_eq!(threshold(&decomposed(8)).unwrap().n0, 1);
    assert!(threshold(&decomposed(12)).unwrap().n0 < 10);
    for w in (8..=22).step_by(2) {
        assert!(threshold(&decomposed(w)).unwrap().n0 < 10, "w={w}");
    }
    let t16 = threshold(&decomposed(16)).unwrap().n0;
    let rep = scan(&decomposed(16), t16, t16 + 50).unwrap();
    assert_eq!(rep.verdict, Verdict::PositiveBeyondThreshold);
}

#[test]
fn re_expanded_coefficients_match_the_recurrence() {
    for w in [12i64, 22, 30] {
        let f = member(Kind::F, w, 40).unwrap().as_f().unwrap().collapse();
        let a = coefficients(&decomposed(w), 39).unwrap();
        for n in 0..40i64 {
            assert_eq!(a[n as usize], f.coeff_int(n), "w={w} n={n}");
        }
        for n in 0..first_index(w) {
            assert_eq!(a[n as usize], 0, "w={w} n={n}");
        }
    }
}

#[test]
fn f8_scan_to_2000() {
    let d = decomposed(8);
    let rep = scan(&d, 1, 2000).unwrap();
    assert_eq!(rep.verdict, Verdict::PositiveBeyondThreshold);
    assert_eq!(rep.scanned_to, 2000);
    let a = coefficients(&d, 2000).unwrap();
    let sig = divisor_sums(3, 2001);
    for n in [1usize, 2, 17, 999, 2000] {
        let want = Rational::from(&sig[n] * Integer::from(240 * n * n)) * r(36, 5);
        assert_eq!(a[n], want);
    }
}

#[test]
fn sign_flip_is_reported() {
    let d = decomposed(16).scaled(&r(-1, 1));
    let rep = scan(&d, 3, 20).unwrap();
    assert_eq!(rep.verdict, Verdict::NonPositive);
    assert_eq!(rep.first_nonpositive, Some(first_index(16)));
    let short = scan(&decomposed(24), 42, 10).unwrap();
    assert_eq!(short.verdict, Verdict::PositiveToScan);
}

#[test]
fn report_json() {
    let rep = positivity(12, None).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["w"], 12);
    assert_eq!(v["verdict"], "positive-beyond-threshold");
    assert!(v.get("first_nonpositive").is_none());
    assert!(v["scanned_to"].as_i64().unwrap() >= v["threshold"].as_i64().unwrap());
}
