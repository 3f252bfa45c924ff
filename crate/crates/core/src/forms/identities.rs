//! Exact identity checks among the catalog generators.

use rug::Rational;
use serde::Serialize;

use crate::arith::binomial;
use crate::diff::Differential;
use crate::qseries::{QSeries, Valuation};

use super::chi::{chi, chi_s};
use super::{gen, GeneratorId::*};

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub holds: bool,
    /// Order of the residual, or the truncation when it vanishes identically.
    pub residual: String,
}

impl IdentityResult {
    pub fn from_residual(name: impl Into<String>, r: &QSeries) -> IdentityResult {
        let v = r.valuation();
        IdentityResult { name: name.into(), holds: matches!(v, Valuation::ZeroToTrunc(_)), residual: v.to_string() }
    }
}

pub use super::quasi::serre_modular as serre_series;

/// Rankin-Cohen bracket `[f, g]_n` for weights `(k, l)`.
pub fn rankin_cohen<F: Differential>(f: &F, g: &F, n: usize, k: i64, l: i64, mul: impl Fn(&F, &F) -> F) -> F {
    let fd: Vec<F> = std::iter::successors(Some(f.clone()), |x| Some(x.derive())).take(n + 1).collect();
    let gd: Vec<F> = std::iter::successors(Some(g.clone()), |x| Some(x.derive())).take(n + 1).collect();
    let n = n as i64;
    let mut acc: Option<F> = None;
    for i in 0..=n {
        let c = binomial(n + k - 1, n - i) * binomial(n + l - 1, i);
        let c = if i % 2 == 1 { -c } else { c };
        if c == 0 {
            continue;
        }
        let t = mul(&fd[i as usize], &gd[(n - i) as usize]).scale(&Rational::from(c));
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    acc.unwrap_or_else(|| mul(f, g).scale(&Rational::new()))
}

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

/// Ramanujan's derivative identities and the theta/lambda relations, checked exactly.
pub fn ramanujan_suite(trunc: i64) -> Vec<IdentityResult> {
    let t = trunc;
    let e2 = gen(E2, t);
    let e4 = gen(E4, t);
    let e6 = gen(E6, t);
    let delta = gen(Delta, t);
    let a = gen(Theta00, t);
    let b = gen(Theta01, t);
    let c = gen(Theta10, t);
    let lam = gen(Lambda, t);
    let one = QSeries::one(t);
    let j = gen(J, t);
    let mut out = Vec::new();
    let mut push = |name: &str, res: QSeries| out.push(IdentityResult::from_residual(name, &res));

    push("E2' = (E2^2 - E4)/12", &e2.derive() - &(&(&e2 * &e2) - &e4).scale(&r(1, 12)));
    push("E4' = (E2 E4 - E6)/3", &e4.derive() - &(&(&e2 * &e4) - &e6).scale(&r(1, 3)));
    push("E6' = (E2 E6 - E4^2)/2", &e6.derive() - &(&(&e2 * &e6) - &(&e4 * &e4)).scale(&r(1, 2)));
    push("1728 Delta = E4^3 - E6^2", &delta.scale_int(1728) - &(&e4.pow(3).unwrap() - &e6.pow(2).unwrap()));
    push("j - 1728 = E6^2 / Delta", &(&j - &QSeries::constant(1728, t)) - &(&e6.pow(2).unwrap() * &gen(Delta, t + 2).invert().unwrap()));
    push("j' = -E4^2 E6 / Delta", &gen(JPrime, t) + &(&(&e4.pow(2).unwrap() * &e6) * &gen(Delta, t + 2).invert().unwrap()));
    push("theta01^4 + theta10^4 = theta00^4", &(&b + &c) - &a);
    push("E4 = (theta00^8 + theta01^8 + theta10^8)/2", &e4 - &(&(&(&a * &a) + &(&b * &b)) + &(&c * &c)).scale(&r(1, 2)));
    push("256 Delta = (theta00 theta01 theta10)^8", &delta.scale_int(256) - &(&(&a * &b) * &c).pow(2).unwrap());
    push("lambda' = theta01^4 lambda / 2", &lam.derive() - &(&b * &lam).scale(&r(1, 2)));
    push(
        "theta00^4' = (E2 theta00^4 - theta01^8 + theta10^8)/6",
        &a.derive() - &(&(&(&e2 * &a) - &(&b * &b)) + &(&c * &c)).scale(&r(1, 6)),
    );
    push(
        "theta01^4' = (E2 theta01^4 - theta01^8 - 2 theta01^4 theta10^4)/6",
        &b.derive() - &(&(&(&e2 * &b) - &(&b * &b)) - &(&b * &c).scale_int(2)).scale(&r(1, 6)),
    );
    push(
        "theta10^4' = (E2 theta10^4 + 2 theta01^4 theta10^4 + theta10^8)/6",
        &c.derive() - &(&(&(&e2 * &c) + &(&b * &c).scale_int(2)) + &(&c * &c)).scale(&r(1, 6)),
    );
    let one_minus = &one - &lam;
    let cyc = &(&one - &lam) + &(&lam * &lam);
    push(
        "j lambda^2 (1-lambda)^2 = 256 (1 - lambda + lambda^2)^3",
        &(&(&j * &(&lam * &lam)) * &(&one_minus * &one_minus)) - &cyc.pow(3).unwrap().scale_int(256),
    );
    let l = |k: i64| lam.pow(k).unwrap();
    // the sextic is monic in lambda with j normalized by 1/256
    let jn = j.scale(&r(1, 256));
    let jj = |coef: i64, jc: i64| &QSeries::constant(coef, t) + &jn.scale_int(jc);
    let sextic = &(&(&(&(&(&l(6) - &l(5).scale_int(3)) + &(&jj(6, -1) * &l(4))) - &(&jj(7, -2) * &l(3)))
        + &(&jj(6, -1) * &l(2)))
        - &lam.scale_int(3))
        + &one;
    push("lambda sextic over j", sextic);
    push("T: theta00^4 -> theta01^4", &a.t_action() - &b);
    push("T: theta10^4 -> -theta10^4", &c.t_action() + &c);
    push("log lambda tail' = (theta01^4 - 1)/2", &gen(LogLambdaTail, t).derive() - &(&b - &one).scale(&r(1, 2)));
    push(
        "log lambda(S)' = -theta01^4 lambda / (2 (1 - lambda))",
        &gen(LogLambdaS, t).derive() + &(&(&b * &lam) * &one_minus.invert().unwrap()).scale(&r(1, 2)),
    );
    push("rankin-cohen [E4, E6]_1 = -3456 Delta", &rankin_cohen(&e4, &e6, 1, 4, 6, |x, y| x * y) + &delta.scale_int(3456));
    out
}

/// `chi - chi o T - z^(-2k) chi o S`, which vanishes for every table entry.
pub fn chi_functional_check(k: usize, which: usize, trunc: i64) -> IdentityResult {
    let c = chi(k, which, trunc);
    let res = &(&c - &c.t_action()) - &chi_s(k, which, trunc);
    IdentityResult::from_residual(format!("chi_{} functional equation, k = {k}", which + 1), &res)
}

