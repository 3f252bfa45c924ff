use fourier_eigen::forms::{gen, GeneratorId};
use fourier_eigen::psi::Sign;
use fourier_eigen::recurrence::*;
use fourier_eigen::{Exp, QSeries, Valuation};
use rug::Rational;

const N: i64 = 24;

fn keys() -> [FamilyKey; 4] {
    [
        FamilyKey { kind: Kind::F, residue: 0 },
        FamilyKey { kind: Kind::F, residue: 2 },
        FamilyKey { kind: Kind::Phi, residue: 0 },
        FamilyKey { kind: Kind::Phi, residue: 2 },
    ]
}

fn zero(v: Valuation) -> bool {
    v.order().is_none()
}

#[test]
fn initial_closed_forms_agree() {
    for key in &keys()[..2] {
        let init = initial(*key, N);
        let alt = initial_alternative(*key, N).unwrap();
        for (m, a) in init.iter().zip(&alt) {
            assert!(m.as_f().unwrap().collapse().agrees_with(a), "w={}", m.weight());
        }
    }
    let f8 = initial(keys()[0], 6)[0].as_f().unwrap().collapse();
    assert_eq!(f8.coeff_int(0), 0);
    assert_eq!(f8.coeff_int(1), 1728);
}

#[test]
fn members_solve_their_ode() {
    for key in keys() {
        for m in generate(key, 64, N).unwrap() {
            let (which, p) = ode_for(&m);
            assert!(zero(ode_residual(&m, which, p, false)), "{key:?} w={} plain", m.weight());
            assert!(zero(ode_residual(&m, which, p, true)), "{key:?} w={} serre", m.weight());
            assert!(!zero(ode_residual(&m, which, p + 4, false)), "{key:?} w={} wrong parameter", m.weight());
        }
    }
}

#[test]
fn f_family_orders_are_exact() {
    for key in &keys()[..2] {
        for m in generate(*key, 80, N).unwrap() {
            let w = m.weight();
            let f = m.as_f().unwrap();
            let want = if w % 4 == 0 { w / 4 - 1 } else { (w - 6) / 4 };
            assert_eq!(f.collapse().valuation().order(), Some(Exp::int(want)), "w={w}");
            assert_eq!(f.g_part().valuation().order(), Some(Exp::int(1)), "w={w}");
            assert_eq!(f.h_part().valuation().order(), Some(Exp::ZERO), "w={w}");
        }
    }
}

#[test]
fn phi_family_orders_are_exact() {
    for key in &keys()[2..] {
        for m in generate(*key, 80, N).unwrap() {
            let w = m.weight();
            let p = m.as_phi().unwrap();
            assert_eq!(p.rest().valuation().order(), Some(Exp::ZERO), "w={w}");
            let (pi_part, real) = p.t_difference();
            assert!(real.valuation().at_least() >= Exp::int(1), "w={w}");
            if p.log().is_zero() {
                assert!(pi_part.is_zero());
            } else {
                assert_eq!(pi_part.valuation().order(), Some(Exp::int(1)), "w={w}");
            }
            let want = if w % 4 == 0 { Exp::halves((w - 2) / 2) } else { Exp::halves((w - 4) / 2) };
            let s = p.s_image();
            assert!(s.integral_part().is_zero(), "w={w}");
            assert_eq!(s.valuation().order(), Some(want), "w={w}");
        }
    }
}

#[test]
fn closed_form_reductions_match_recurrence() {
    for key in keys() {
        let fam = generate(key, 72, N).unwrap();
        for pair in fam.windows(2) {
            let Ok(red) = reduce(key, &pair[0]) else {
                assert!(key.kind == Kind::Phi && [8, 14].contains(&pair[0].weight()));
                continue;
            };
            assert!(red.agrees_with(&pair[1]), "{key:?} w={}", pair[0].weight());
        }
    }
}

#[test]
fn rankin_cohen_descent() {
    for key in &keys()[..2] {
        let fam = generate(*key, 64, N).unwrap();
        for pair in fam.windows(2) {
            let down = rc_descend(pair[1].as_f().unwrap()).unwrap();
            let want = pair[0].as_f().unwrap();
            assert!(down.collapse().agrees_with(&want.collapse()), "w={}", pair[1].weight());
        }
    }
    // a constant input degenerates to a product
    let one = fourier_eigen::forms::QuasiForm::modular(0, QSeries::one(8));
    let e4 = fourier_eigen::forms::rankin_cohen(&one, &fourier_eigen::forms::QuasiForm::modular(4, gen(GeneratorId::E4, 8)), 0, 1, 4, |a, b| a.mul(b));
    assert!(e4.collapse().agrees_with(&gen(GeneratorId::E4, 8)));
}

#[test]
fn recurrence_guards() {
    let key = FamilyKey { kind: Kind::F, residue: 0 };
    let init = initial(key, 8);
    assert!(next(key, [&init[2], &init[1], &init[0]], 12).is_err());
    assert!(next(key, [&init[2], &init[1], &init[0]], 16).is_ok());
    assert!(matches!(member(Kind::F, 9, 8), Err(_)));
    assert!(matches!(member(Kind::Phi, 4, 8), Err(_)));
}

#[test]
fn cross_validation_with_solvers() {
    for d in [4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48, 72] {
        let r = cross_validate(d, Sign::Plus, 20).unwrap();
        assert!(r.proportional, "plus d={d}");
        let r = cross_validate(d, Sign::Minus, 20).unwrap();
        assert!(r.proportional, "minus d={d}");
    }
}

#[test]
fn log_lambda_derivative() {
    let tail = gen(GeneratorId::LogLambdaTail, 12);
    let lhs = &tail.derive() + &QSeries::constant(Rational::from((1, 2)), 12);
    let rhs = gen(GeneratorId::Theta01, 12).scale(&Rational::from((1, 2)));
    assert!(lhs.agrees_with(&rhs));
}
