//! Three-term recurrences in the weight for the quasimodular family `f_w` and the
//! logarithmic family `phi_w = l log(lambda) + m`, with the differential
//! equations and Rankin-Cohen descent that certify their vanishing orders.

use rug::Rational;
use serde::Serialize;

use crate::diff::{serre, Differential};
use crate::error::{Error, Result};
use crate::forms::{gen, rankin_cohen, GeneratorId, QuasiForm};
use crate::minus::{minus_params, solve_minus};
use crate::plus::{plus_params, solve_plus};
use crate::qseries::{Exp, QSeries, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    F,
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilyKey {
    pub kind: Kind,
    /// Weight mod 4, either 0 or 2.
    pub residue: u8,
}

impl FamilyKey {
    pub fn of_weight(kind: Kind, w: i64) -> Result<FamilyKey> {
        match w.rem_euclid(4) {
            0 => Ok(FamilyKey { kind, residue: 0 }),
            2 => Ok(FamilyKey { kind, residue: 2 }),
            _ => Err(Error::BadWeight(w)),
        }
    }

    /// Weights of the three initial elements.
    pub fn initial_weights(self) -> [i64; 3] {
        let s = if self.residue == 0 { 8 } else { 10 };
        [s, s + 4, s + 8]
    }

    /// Smallest `w` for which the recurrence produces `F_{w+4}`.
    pub fn first_step(self) -> i64 {
        self.initial_weights()[2]
    }
}

/// `l log(lambda) + m` as a formal expression; `derive` uses `D log(lambda) = theta01^4 / 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogForm {
    pub log: QSeries,
    pub rest: QSeries,
}

impl LogForm {
    fn trunc_int(&self) -> i64 {
        self.log.trunc().min(self.rest.trunc()).half_steps().div_euclid(2)
    }
}

impl Differential for LogForm {
    fn derive(&self) -> Self {
        let a = gen(GeneratorId::Theta01, self.trunc_int() + 2);
        LogForm {
            log: self.log.derive(),
            rest: &(&self.log * &a).scale(&Rational::from((1, 2))) + &self.rest.derive(),
        }
    }
    fn add(&self, o: &Self) -> Self {
        LogForm { log: &self.log + &o.log, rest: &self.rest + &o.rest }
    }
    fn scale(&self, r: &Rational) -> Self {
        LogForm { log: self.log.scale(r), rest: self.rest.scale(r) }
    }
    fn mul_series(&self, s: &QSeries) -> Self {
        LogForm { log: &self.log * s, rest: &self.rest * s }
    }
    fn valuation(&self) -> Valuation {
        self.log.valuation().min(self.rest.valuation())
    }
}

/// A member of the logarithmic family together with `z^-w phi(-1/z) = l log(1 - lambda) + rest_s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiForm {
    pub weight: i64,
    pub core: LogForm,
    pub rest_s: QSeries,
}

impl PhiForm {
    pub fn log(&self) -> &QSeries {
        &self.core.log
    }

    pub fn rest(&self) -> &QSeries {
        &self.core.rest
    }

    /// The series `z^-w phi(-1/z)`.
    pub fn s_image(&self) -> QSeries {
        let t = self.core.trunc_int().min(self.rest_s.trunc().half_steps().div_euclid(2));
        (&(self.log() * &gen(GeneratorId::LogLambdaS, t + 2)) + &self.rest_s).truncate(Exp::int(t))
    }

    /// `phi(z) - phi(z + 1)`: the coefficient of `pi i` and the remaining series.
    pub fn t_difference(&self) -> (QSeries, QSeries) {
        let t = self.core.trunc_int();
        let tail = gen(GeneratorId::LogLambdaTail, t + 2);
        let jump = &tail - &tail.t_action();
        let real = &(self.log() * &jump) + &(self.rest() - &self.rest().t_action());
        (-self.log().clone(), real.truncate(Exp::int(t)))
    }

    pub fn mul_modular(&self, m: &QSeries, k: i64) -> PhiForm {
        PhiForm { weight: self.weight + k, core: self.core.mul_series(m), rest_s: &self.rest_s * m }
    }

    pub fn add(&self, o: &PhiForm) -> PhiForm {
        assert_eq!(self.weight, o.weight, "adding forms of different weight");
        PhiForm { weight: self.weight, core: self.core.add(&o.core), rest_s: &self.rest_s + &o.rest_s }
    }

    pub fn scale(&self, r: &Rational) -> PhiForm {
        PhiForm { weight: self.weight, core: self.core.scale(r), rest_s: self.rest_s.scale(r) }
    }

    /// Serre derivative `partial_index`, carried through the S-image as well.
    pub fn serre_at(&self, index: i64) -> PhiForm {
        let t = self.core.trunc_int() + 2;
        let e2 = gen(GeneratorId::E2, t);
        let b = gen(GeneratorId::Theta10, t);
        let rest_s = &serre(&self.rest_s, index, &e2) - &(self.log() * &b).scale(&Rational::from((1, 2)));
        PhiForm { weight: self.weight + 2, core: serre(&self.core, index, &e2), rest_s }
    }

    pub fn truncate(&self, t: Exp) -> PhiForm {
        PhiForm {
            weight: self.weight,
            core: LogForm { log: self.log().truncate(t), rest: self.rest().truncate(t) },
            rest_s: self.rest_s.truncate(t),
        }
    }

    pub fn agrees_with(&self, o: &PhiForm) -> bool {
        self.weight == o.weight
            && self.log().agrees_with(o.log())
            && self.rest().agrees_with(o.rest())
            && self.rest_s.agrees_with(&o.rest_s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    F(QuasiForm),
    Phi(PhiForm),
}

impl Member {
    pub fn weight(&self) -> i64 {
        match self {
            Member::F(f) => f.weight(),
            Member::Phi(p) => p.weight,
        }
    }

    fn mul_modular(&self, m: &QSeries, k: i64) -> Member {
        match self {
            Member::F(f) => Member::F(f.mul_modular(m, k)),
            Member::Phi(p) => Member::Phi(p.mul_modular(m, k)),
        }
    }

    fn add(&self, o: &Member) -> Member {
        match (self, o) {
            (Member::F(a), Member::F(b)) => Member::F(a.add_form(b)),
            (Member::Phi(a), Member::Phi(b)) => Member::Phi(a.add(b)),
            _ => panic!("mixed families"),
        }
    }

    fn scale(&self, r: &Rational) -> Member {
        match self {
            Member::F(f) => Member::F(f.scale_by(r)),
            Member::Phi(p) => Member::Phi(p.scale(r)),
        }
    }

    fn serre_at(&self, index: i64) -> Member {
        match self {
            Member::F(f) => Member::F(f.serre_at(index)),
            Member::Phi(p) => Member::Phi(p.serre_at(index)),
        }
    }

    pub fn as_f(&self) -> Option<&QuasiForm> {
        match self {
            Member::F(f) => Some(f),
            Member::Phi(_) => None,
        }
    }

    pub fn as_phi(&self) -> Option<&PhiForm> {
        match self {
            Member::Phi(p) => Some(p),
            Member::F(_) => None,
        }
    }

    pub fn agrees_with(&self, o: &Member) -> bool {
        match (self, o) {
            (Member::F(a), Member::F(b)) => a.agrees_with(b),
            (Member::Phi(a), Member::Phi(b)) => a.agrees_with(b),
            _ => false,
        }
    }

    pub fn trunc(&self) -> Exp {
        match self {
            Member::F(f) => f.trunc(),
            Member::Phi(p) => p.log().trunc().min(p.rest().trunc()).min(p.rest_s.trunc()),
        }
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn e(id: GeneratorId, t: i64) -> QSeries {
    gen(id, t)
}

/// `sum c a^i b^j` with `a = theta01^4`, `b = theta10^4`, and its S-image `sum c (-1)^(i+j) b^i a^j`.
fn theta_poly(terms: &[(i64, u32, u32)], scale: Rational, t: i64) -> (QSeries, QSeries) {
    let a = e(GeneratorId::Theta01, t);
    let b = e(GeneratorId::Theta10, t);
    let pw = |s: &QSeries, k: u32| s.pow(i64::from(k)).expect("power");
    let mut m = QSeries::zero(crate::Unit::Half, Exp::int(t));
    let mut ms = m.clone();
    for &(c, i, j) in terms {
        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
        m = &m + &(&pw(&a, i) * &pw(&b, j)).scale_int(c);
        ms = &ms + &(&pw(&b, i) * &pw(&a, j)).scale_int(sign * c);
    }
    (m.scale(&scale), ms.scale(&scale))
}

fn phi_form(weight: i64, log: QSeries, theta: &[(i64, u32, u32)], scale: Rational, t: i64) -> PhiForm {
    let (m, ms) = theta_poly(theta, scale, t);
    PhiForm { weight, core: LogForm { log, rest: m }, rest_s: ms }
}

/// The three initial elements of a family, known below `q^trunc`.
pub fn initial(key: FamilyKey, trunc: i64) -> [Member; 3] {
    use GeneratorId::*;
    let t = trunc + 2;
    let (e4, e6, delta) = (e(E4, t), e(E6, t), e(Delta, t));
    let q = |w: i64, a: QSeries, b: QSeries, c: QSeries, s: Rational| {
        Member::F(QuasiForm::from_triple(w, a, b, c).scale_by(&s).truncate(Exp::int(trunc)))
    };
    let out = match (key.kind, key.residue) {
        (Kind::F, 0) => [
            q(8, &e4 * &e4, e6.scale_int(-2), e4.clone(), r(1, 1)),
            q(12, &e6 * &e6, (&e4 * &e6).scale_int(-2), &e4 * &e4, r(1, 6000)),
            q(
                16,
                &e4.pow(4).expect("pow").scale_int(-25) + &(&e4 * &(&e6 * &e6)).scale_int(49),
                (&(&e4 * &e4) * &e6).scale_int(-48),
                &e4.pow(3).expect("pow").scale_int(49) - &(&e6 * &e6).scale_int(25),
                r(1, 2540160000),
            ),
        ],
        (Kind::F, _) => [
            q(10, -(&e4 * &e6), (&e4 * &e4).scale_int(2), -e6.clone(), r(1, 1)),
            q(
                14,
                &(&e4 * &e4) * &e6,
                -(&e4.pow(3).expect("pow") + &(&e6 * &e6)),
                &e4 * &e6,
                r(-1, 8400),
            ),
            q(
                18,
                &(&e4.pow(3).expect("pow") * &e6).scale_int(5) + &e6.pow(3).expect("pow").scale_int(7),
                -(&e4.pow(4).expect("pow").scale_int(5) + &(&e4 * &(&e6 * &e6)).scale_int(19)),
                (&(&e4 * &e4) * &e6).scale_int(12),
                r(-1, 237600 * 8400),
            ),
        ],
        (Kind::Phi, 0) => {
            let zero = QSeries::constant(0, t);
            [
                Member::Phi(phi_form(8, zero, &[(1, 4, 0), (2, 3, 1)], r(1, 1), t)),
                Member::Phi(phi_form(
                    12,
                    delta.scale(&r(8, 175)),
                    &[(2, 3, 3), (3, 4, 2), (3, 5, 1), (1, 6, 0)],
                    r(1, 11200),
                    t,
                )),
                Member::Phi(phi_form(
                    16,
                    (&delta * &e4).scale(&r(1, 231000)),
                    &[(24, 3, 5), (60, 4, 4), (68, 5, 3), (42, 6, 2), (20, 7, 1), (5, 8, 0)],
                    r(1, 1419264000),
                    t,
                )),
            ]
        }
        (Kind::Phi, _) => {
            let zero = QSeries::constant(0, t);
            [
                Member::Phi(phi_form(10, zero.clone(), &[(5, 3, 2), (5, 4, 1), (2, 5, 0)], r(1, 1), t)),
                Member::Phi(phi_form(14, zero, &[(7, 5, 2), (7, 6, 1), (2, 7, 0)], r(1, 13440), t)),
                Member::Phi(phi_form(
                    18,
                    (&delta * &e6).scale(&r(1, 600600)),
                    &[(-12, 3, 6), (-36, 4, 5), (-13, 5, 4), (34, 6, 3), (68, 7, 2), (45, 8, 1), (10, 9, 0)],
                    r(1, 1845043200),
                    t,
                )),
            ]
        }
    };
    out.map(|m| match m {
        Member::Phi(p) => Member::Phi(p.truncate(Exp::int(trunc))),
        f => f,
    })
}

/// Second closed forms of the initial `f_w`, as plain series.
pub fn initial_alternative(key: FamilyKey, trunc: i64) -> Option<[QSeries; 3]> {
    use GeneratorId::*;
    if key.kind != Kind::F {
        return None;
    }
    let t = trunc + 2;
    let (e2, e4, e6, delta) = (e(E2, t), e(E4, t), e(E6, t), e(Delta, t));
    let dd = |s: &QSeries| s.derive().derive();
    let out = if key.residue == 0 {
        [
            dd(&e4).scale(&r(36, 5)),
            &dd(&(&e4 * &e4)).scale(&r(1, 3000)) - &delta.scale(&r(4, 25)),
            &dd(&(&e4.pow(3).ok()?.scale_int(49) - &(&e6 * &e6).scale_int(25))).scale(&r(1, 2751840000))
                - &(&delta * &e4).scale(&r(1, 45500)),
        ]
    } else {
        [
            dd(&e6).scale(&r(-24, 7)),
            &dd(&(&e4 * &e6)).scale(&r(-3, 19250)) - &(&e2 * &delta).scale(&r(36, 875)),
            (&dd(&(&(&e4 * &e4) * &e6)).scale(&r(-1, 28875))
                + &(&delta * &(&e6.scale_int(181) - &(&e2 * &e4).scale_int(185))).scale(&r(2, 9625)))
                .scale(&r(1, 8400)),
        ]
    };
    Some(out.map(|s| s.truncate(Exp::int(trunc))))
}

/// `(a, b, c, denominator)` with `F_{w+4} = (a E4 F_w + b E4^2 F_{w-4} + c Delta F_{w-8}) / denominator`.
pub fn recurrence_coefficients(key: FamilyKey, w: i64) -> (Rational, Rational, Rational, Rational) {
    let p = |xs: &[i64]| xs.iter().map(|&x| Rational::from(x)).product::<Rational>();
    let (den, a, b) = match (key.kind, key.residue) {
        (Kind::F, 0) => (
            p(&[16000, w + 2, w - 3, w - 5, w - 9, w - 10, w - 11]),
            p(&[200, w - 8, w - 9, w * w - 15 * w + 38]),
            p(&[w - 8, w - 12]) * r(-5, 8),
        ),
        (Kind::F, _) => (
            p(&[16000, w - 3, w - 4, w - 5, w - 9, w - 11, w - 16]),
            p(&[200, w - 9, w - 10, w * w - 21 * w + 92]),
            p(&[w - 10, w - 14]) * r(-5, 8),
        ),
        (Kind::Phi, 0) => (
            p(&[16000, w + 4, w - 1, w - 3, w - 7, w - 8, w - 9]),
            p(&[200, w - 6, w - 7, w * w - 11 * w + 12]),
            p(&[w - 6, w - 10]) * r(-5, 8),
        ),
        (Kind::Phi, _) => (
            p(&[16000, w - 1, w - 2, w - 3, w - 7, w - 9, w - 14]),
            p(&[200, w - 7, w - 8, w * w - 17 * w + 54]),
            p(&[w - 8, w - 12]) * r(-5, 8),
        ),
    };
    (a, b, Rational::from(1), den)
}

/// `F_{w+4}` from the window `(F_w, F_{w-4}, F_{w-8})`.
pub fn next(key: FamilyKey, window: [&Member; 3], w: i64) -> Result<Member> {
    if FamilyKey::of_weight(key.kind, w)? != key || w < key.first_step() {
        return Err(Error::BadWeight(w));
    }
    for (i, m) in window.iter().enumerate() {
        if m.weight() != w - 4 * i as i64 {
            return Err(Error::BadWeight(m.weight()));
        }
    }
    let (a, b, c, den) = recurrence_coefficients(key, w);
    if den == 0 {
        return Err(Error::BadWeight(w));
    }
    let t = window.iter().map(|m| m.trunc()).min().expect("window").half_steps().div_euclid(2) + 2;
    let e4 = gen(GeneratorId::E4, t);
    let sum = window[0]
        .mul_modular(&e4, 4)
        .scale(&a)
        .add(&window[1].mul_modular(&(&e4 * &e4), 8).scale(&b))
        .add(&window[2].mul_modular(&gen(GeneratorId::Delta, t), 12).scale(&c));
    Ok(sum.scale(&den.recip()))
}

/// Members of a family of weight up to `max_w`, known below `q^trunc`.
pub fn generate(key: FamilyKey, max_w: i64, trunc: i64) -> Result<Vec<Member>> {
    let mut out: Vec<Member> = initial(key, trunc).into_iter().collect();
    while out.last().expect("nonempty").weight() < max_w {
        let n = out.len();
        let w = out[n - 1].weight();
        let m = next(key, [&out[n - 1], &out[n - 2], &out[n - 3]], w)?;
        out.push(m);
    }
    out.retain(|m| m.weight() <= max_w);
    Ok(out)
}

/// The single member of weight `w`.
pub fn member(kind: Kind, w: i64, trunc: i64) -> Result<Member> {
    let key = FamilyKey::of_weight(kind, w)?;
    if w < key.initial_weights()[0] {
        return Err(Error::BadWeight(w));
    }
    generate(key, w, trunc)?.pop().ok_or(Error::BadWeight(w))
}

/// `F_{w+4}` via the closed-form reduction `((u E4 F_w - 36 partial^2 F_w) / v)`.
pub fn reduce(key: FamilyKey, f: &Member) -> Result<Member> {
    let w = f.weight();
    let p = |xs: &[i64]| xs.iter().map(|&x| Rational::from(x)).product::<Rational>();
    let (u, v, lo) = match (key.kind, key.residue) {
        (Kind::F, 0) => (p(&[w - 5, w - 6]), p(&[120, w + 2, w - 3, w - 5, w - 10]), w - 2),
        (Kind::F, _) => (p(&[w - 8, w - 9]), p(&[120, w - 3, w - 4, w - 5, w - 16]), w - 2),
        (Kind::Phi, 0) => (p(&[w - 3, w - 4]), p(&[120, w + 4, w - 1, w - 3, w - 8]), w),
        (Kind::Phi, _) => (p(&[w - 6, w - 7]), p(&[120, w - 1, w - 2, w - 3, w - 14]), w),
    };
    if v == 0 {
        return Err(Error::BadWeight(w));
    }
    let t = f.trunc().half_steps().div_euclid(2) + 2;
    let e4 = gen(GeneratorId::E4, t);
    let dd = f.serre_at(lo).serre_at(lo + 2);
    Ok(f.mul_modular(&e4, 4).scale(&u).add(&dd.scale(&Rational::from(-36))).scale(&v.recip()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ode {
    /// Weight `0 mod 4`.
    First,
    /// Weight `2 mod 4`, with leading `E6`.
    Second,
}

struct Coeffs {
    e2: QSeries,
    e4: QSeries,
    e6: QSeries,
}

impl Coeffs {
    fn new(t: i64) -> Coeffs {
        Coeffs { e2: gen(GeneratorId::E2, t), e4: gen(GeneratorId::E4, t), e6: gen(GeneratorId::E6, t) }
    }
}

/// The ODE with parameter `w` applied to `f`, in the plain-derivative form.
pub fn ode_apply<F: Differential>(f: &F, which: Ode, w: i64, t: i64) -> F {
    let c = Coeffs::new(t);
    let d1 = f.derive();
    let d2 = d1.derive();
    let d3 = d2.derive();
    let s = |x: &QSeries, q: Rational| x.scale(&q);
    match which {
        Ode::First => {
            let c2 = s(&c.e2, r(-w, 4));
            let c1 = &s(&c.e4, r(w - 4, 4)) + &s(&c.e2.derive(), r(w * (w - 1), 4));
            let c0 = &s(&c.e4.derive(), r(-(w - 2) * (w - 4), 16)) + &s(&c.e2.derive().derive(), r(-w * (w - 1) * (w - 2), 24));
            d3.add(&d2.mul_series(&c2)).add(&d1.mul_series(&c1)).add(&f.mul_series(&c0))
        }
        Ode::Second => {
            let (e4, e6) = (&c.e4, &c.e6);
            let e4d = e4.derive();
            let e6d = e6.derive();
            let c2 = -(&s(&(e4 * e4), r(w - 2, 4)) + &s(&e6d, r(w, 2)));
            let c1 = &(&s(&(e4 * e6), r(w - 6, 4)) + &s(&(e4 * &e4d), r((w - 1) * (w - 2), 8)))
                + &s(&e6d.derive(), r(w * (w - 1), 14));
            let c0 = -(&(&(&s(&(e4 * &e6d), r((w - 2) * (w - 6), 24)) + &s(&(&e4d * &e4d), r(5 * (w - 8) * (w - 9) * (w - 10), 384)))
                + &s(&(e4 * &e4d.derive()), r(w * w * w + 105 * w * w - 1162 * w + 3576, 480)))
                + &s(&e6d.derive().derive(), r(w * (w - 1) * (w - 2), 336)));
            d3.mul_series(e6).add(&d2.mul_series(&c2)).add(&d1.mul_series(&c1)).add(&f.mul_series(&c0))
        }
    }
}

/// The same ODE written with Serre derivatives.
pub fn ode_apply_serre<F: Differential>(f: &F, which: Ode, w: i64, t: i64) -> F {
    let c = Coeffs::new(t);
    let s1 = serre(f, w - 2, &c.e2);
    let s2 = serre(&s1, w, &c.e2);
    let s3 = serre(&s2, w + 2, &c.e2);
    match which {
        Ode::First => s3
            .add(&s1.mul_series(&c.e4).scale(&r(-(3 * w * w - 36 * w + 140), 144)))
            .add(&f.mul_series(&c.e6).scale(&r(-(w - 2) * (w - 5) * (w - 14), 864))),
        Ode::Second => {
            let e4 = &c.e4;
            let k = 3 * w * w - 48 * w + 224;
            let c0 = &(&(e4 * e4) * e4).scale(&r(k, 288)) + &(&c.e6 * &c.e6).scale(&r(w * w * w - 33 * w * w + 300 * w - 896, 864));
            s3.mul_series(&c.e6)
                .add(&s2.mul_series(&(e4 * e4)).scale(&r(1, 2)))
                .add(&s1.mul_series(&(e4 * &c.e6)).scale(&r(-k, 144)))
                .add(&f.mul_series(&c0).scale(&r(-1, 1)))
        }
    }
}

/// The ODE matching a member: parameter `w` for `f_w`, `w + 2` for `phi_w`.
pub fn ode_for(m: &Member) -> (Ode, i64) {
    let w = m.weight();
    let which = if w.rem_euclid(4) == 0 { Ode::First } else { Ode::Second };
    match m {
        Member::F(_) => (which, w),
        Member::Phi(_) => (which, w + 2),
    }
}

/// Valuation of the residual of an ODE applied to a member, using the plain form or the Serre form.
pub fn ode_residual(m: &Member, which: Ode, param: i64, serre_form: bool) -> Valuation {
    let t = m.trunc().half_steps().div_euclid(2) + 2;
    let cut = m.trunc().min(Exp::int(t - 2)) - Exp::int(3);
    match m {
        Member::F(f) => {
            let s = f.collapse();
            let r = if serre_form { ode_apply_serre(&s, which, param, t) } else { ode_apply(&s, which, param, t) };
            r.truncate(cut).valuation()
        }
        Member::Phi(p) => {
            let r = if serre_form { ode_apply_serre(&p.core, which, param, t) } else { ode_apply(&p.core, which, param, t) };
            LogForm { log: r.log.truncate(cut), rest: r.rest.truncate(cut) }.valuation()
        }
    }
}

/// `(1/Delta) ([F, E4]_2 + (5/3) [F, E6]_1)` with bracket weights `(w - 2, 4)` and `(w - 2, 6)`.
pub fn rc_descend(f: &QuasiForm) -> Result<QuasiForm> {
    let w = f.weight();
    let t = f.trunc().half_steps().div_euclid(2) + 2;
    let e4 = QuasiForm::modular(4, gen(GeneratorId::E4, t));
    let e6 = QuasiForm::modular(6, gen(GeneratorId::E6, t));
    let mul = |a: &QuasiForm, b: &QuasiForm| a.mul(b);
    let b2 = rankin_cohen(f, &e4, 2, w - 2, 4, mul);
    let b1 = rankin_cohen(f, &e6, 1, w - 2, 6, mul);
    let sum = b2.add_form(&b1.scale_by(&r(5, 3)));
    sum.div_series(&gen(GeneratorId::Delta, t), 12)
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossReport {
    pub d: i64,
    pub sign: crate::psi::Sign,
    pub weight: i64,
    pub scalar: String,
    pub residual: String,
    pub proportional: bool,
}

/// Weight of the family member matching a solver dimension.
pub fn family_weight(d: i64, sign: crate::psi::Sign) -> Result<i64> {
    Ok(match sign {
        crate::psi::Sign::Plus => {
            let p = plus_params(d)?;
            12 * p.n + 2 * p.k as i64 + 4
        }
        crate::psi::Sign::Minus => {
            let p = minus_params(d)?;
            12 * p.n + 2 * p.k as i64 + 12
        }
    })
}

fn proportional_all(pairs: &[(&QSeries, &QSeries)]) -> (Option<Rational>, Valuation) {
    let mut scalar: Option<Rational> = None;
    for (a, b) in pairs {
        if b.is_zero() {
            continue;
        }
        match a.ratio_to(b) {
            Some(c) => scalar = Some(c),
            None => return (None, Valuation::Order(Exp::ZERO)),
        }
        break;
    }
    let Some(c) = scalar else { return (None, Valuation::Order(Exp::ZERO)) };
    let mut v: Option<Valuation> = None;
    for (a, b) in pairs {
        let res = &a.truncate(b.trunc()) - &b.scale(&c).truncate(a.trunc());
        let rv = res.valuation();
        v = Some(match v {
            None => rv,
            Some(x) => x.min(rv),
        });
    }
    (Some(c), v.expect("nonempty"))
}

/// Compare the recurrence member with the solver output for the same dimension.
pub fn cross_validate(d: i64, sign: crate::psi::Sign, trunc: i64) -> Result<CrossReport> {
    let w = family_weight(d, sign)?;
    let (scalar, residual) = match sign {
        crate::psi::Sign::Plus => {
            let sol = solve_plus(d, trunc)?;
            let p = sol.params;
            let m = member(Kind::F, w, trunc)?;
            let shift = gen(GeneratorId::Delta, trunc + 2).pow(p.n + p.ell)?;
            let target = (&sol.phi * &shift).truncate(Exp::int(trunc));
            let got = m.as_f().expect("f family").collapse().truncate(Exp::int(trunc));
            proportional_all(&[(&got, &target)])
        }
        crate::psi::Sign::Minus => {
            let sol = solve_minus(d, trunc + 2)?;
            let p = sol.params;
            let m = member(Kind::Phi, w, trunc)?;
            let phi = m.as_phi().expect("phi family");
            let shift = gen(GeneratorId::Delta, trunc + 4).pow(p.n + 1 + p.ell)?;
            let cut = |s: &QSeries| (s * &shift).truncate(Exp::int(trunc));
            let (l, rest, rest_s) = (cut(&sol.f_series), cut(&sol.omega_series), cut(&sol.psi_s));
            let cut = |s: &QSeries| s.truncate(Exp::int(trunc));
            proportional_all(&[(&cut(phi.rest()), &rest), (&cut(phi.log()), &l), (&cut(&phi.s_image()), &rest_s)])
        }
    };
    let proportional = scalar.is_some() && residual.order().is_none();
    let report = CrossReport {
        d,
        sign,
        weight: w,
        scalar: scalar.map(|c| c.to_string()).unwrap_or_else(|| "none".into()),
        residual: residual.to_string(),
        proportional,
    };
    if !proportional {
        return Err(Error::Identity(format!("recurrence member of weight {w} is not proportional to the solver output for d={d}: residual {residual}")));
    }
    Ok(report)
}
