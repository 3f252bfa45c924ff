use fourier_eigen::forms::{self, chi_functional_check, gen, ramanujan_suite, GeneratorId::*, QuasiForm};
use fourier_eigen::qseries::{Exp, QSeries, Unit};
use rug::{Integer, Rational};

fn int_coeffs(s: &QSeries, n: i64) -> Vec<i64> {
    (0..n).map(|k| s.coeff_int(k).numer().to_i64().unwrap()).collect()
}

/// Naive q * prod (1 - q^n)^24 by repeated multiplication with i128 arithmetic.
fn delta_naive(len: usize) -> Vec<i128> {
    let mut p = vec![0i128; len];
    p[0] = 1;
    for n in 1..len {
        for _ in 0..24 {
            for k in (n..len).rev() {
                p[k] -= p[k - n];
            }
        }
    }
    let mut d = vec![0i128; len];
    d[1..len].copy_from_slice(&p[..len - 1]);
    d
}

/// exp of a series without constant term, by the recurrence n e_n = sum k f_k e_{n-k}.
fn series_exp_halves(f: &QSeries, len: i64) -> Vec<Rational> {
    let fc: Vec<Rational> = (0..len).map(|h| f.coeff(Exp::halves(h))).collect();
    let mut e = vec![Rational::from(1)];
    for n in 1..len as usize {
        let mut acc = Rational::new();
        for k in 1..=n {
            acc += Rational::from(&fc[k] * k as i64) * &e[n - k];
        }
        e.push(acc / n as i64);
    }
    e
}

#[test]
fn eisenstein_leading_coefficients() {
    assert_eq!(int_coeffs(&gen(E4, 6), 6), vec![1, 240, 2160, 6720, 17520, 30240]);
    assert_eq!(int_coeffs(&gen(E6, 4), 4), vec![1, -504, -16632, -122976]);
    assert_eq!(int_coeffs(&gen(E2, 4), 4), vec![1, -24, -72, -96]);
    let e8 = gen(forms::GeneratorId::Eisenstein(8), 30);
    assert!(e8.agrees_with(&gen(E4, 30).pow(2).unwrap()));
}

#[test]
fn delta_matches_naive_product() {
    let d = gen(Delta, 60);
    let naive = delta_naive(60);
    for n in 0..60 {
        assert_eq!(d.coeff_int(n), Rational::from(Integer::from(naive[n as usize])), "n = {n}");
    }
    assert_eq!(d.coeff_int(2), -24);
    assert_eq!(d.coeff_int(12), -370944);
}

#[test]
fn j_expansion() {
    let j = gen(J, 4);
    assert_eq!(j.lo(), Exp::int(-1));
    assert_eq!(j.coeff_int(-1), 1);
    assert_eq!(j.coeff_int(0), 744);
    assert_eq!(j.coeff_int(1), 196884);
    assert_eq!(j.coeff_int(2), 21493760);
}

#[test]
fn thetas_from_jacobi_sums() {
    let len = 40i64;
    // theta00 = sum q^(n^2/2), theta01 with signs, theta10^4 = q^(1/2) (sum_n q^(n(n+1)/2))^4
    let mut t00 = vec![Integer::new(); (2 * len) as usize];
    let mut t01 = vec![Integer::new(); (2 * len) as usize];
    let mut t10 = vec![Integer::new(); len as usize];
    for n in -20i64..=20 {
        let e = (n * n) as usize;
        if e < t00.len() {
            t00[e] += 1;
            t01[e] += if n % 2 == 0 { 1 } else { -1 };
        }
        let e = (n * (n + 1) / 2) as usize;
        if e < t10.len() {
            t10[e] += 1;
        }
    }
    let a = QSeries::from_integers(Unit::Half, Exp::ZERO, t00).pow(4).unwrap();
    let b = QSeries::from_integers(Unit::Half, Exp::ZERO, t01).pow(4).unwrap();
    let c = QSeries::from_int_coeffs(0, t10).pow(4).unwrap().shift(Exp::halves(1));
    assert!(a.agrees_with(&gen(Theta00, len)));
    assert!(b.agrees_with(&gen(Theta01, len)));
    assert!(c.agrees_with(&gen(Theta10, len)));
    let c = gen(Theta10, 3);
    assert_eq!(c.coeff(Exp::halves(1)), 16);
    assert_eq!(c.coeff(Exp::halves(3)), 64);
}

#[test]
fn log_lambda_tail_exponentiates_to_lambda() {
    let len = 30;
    let tail = gen(LogLambdaTail, len);
    let lam = gen(Lambda, len + 1);
    let e = series_exp_halves(&tail, 2 * len);
    for h in 0..2 * len {
        assert_eq!(lam.coeff(Exp::halves(h + 1)), Rational::from(&e[h as usize] * 16), "h = {h}");
    }
}

#[test]
fn log_lambda_s_is_log_one_minus_lambda() {
    let len = 25i64;
    let lam = gen(Lambda, len);
    // log(1 - x) = -sum x^m / m
    let mut acc = QSeries::constant(0, len);
    let mut p = lam.clone();
    for m in 1..=2 * len {
        acc = &acc - &p.scale(&Rational::from((1, m)));
        p = &p * &lam;
    }
    assert!(acc.agrees_with(&gen(LogLambdaS, len)));
}

#[test]
fn identity_suite_holds() {
    for r in ramanujan_suite(60) {
        assert!(r.holds, "{} fails with residual {}", r.name, r.residual);
    }
}

#[test]
fn chi_table_functional_equations() {
    for k in 0..6 {
        for which in 0..2 {
            let r = chi_functional_check(k, which, 30);
            assert!(r.holds, "{} residual {}", r.name, r.residual);
        }
    }
}

#[test]
fn lambda_under_s_and_t() {
    let t = 30;
    let lam = gen(Lambda, t);
    // lambda(T z) = lambda / (lambda - 1)
    let lt = lam.t_action();
    let rhs = &lam * &(&lam - &QSeries::one(t)).invert().unwrap();
    assert!(lt.agrees_with(&rhs));
}

#[test]
fn quasi_derivative_matches_collapsed_derivative() {
    let t = 40;
    let e2 = gen(E2, t);
    let e4 = gen(E4, t);
    let e6 = gen(E6, t);
    let f = QuasiForm::from_triple(8, e4.pow(2).unwrap(), e6.scale_int(-2), e4.clone());
    let d = f.derivative();
    assert!(d.collapse().agrees_with(&f.collapse().derive()));
    let s = f.serre();
    assert_eq!(s.depth(), f.depth());
    let manual = &f.collapse().derive() - &(&e2 * &f.collapse()).scale(&Rational::from((6, 12)));
    assert!(s.collapse().agrees_with(&manual));
    let one = QuasiForm::modular(0, QSeries::one(t));
    assert!(one.serre().is_zero_form());
}

#[test]
fn monomial_expansion_roundtrip() {
    let f = &gen(E4, 40).pow(3).unwrap() + &gen(Delta, 40).scale_int(7);
    let ex = forms::express_in_e4e6(&f, 12).unwrap();
    let g = forms::from_e4e6(&ex, 90);
    assert!(g.truncate(Exp::int(40)).agrees_with(&f));
    assert!(g.agrees_with(&(&gen(E4, 90).pow(3).unwrap() + &gen(Delta, 90).scale_int(7))));
}
