//! Positivity of the Fourier coefficients of the `f_w` family: Eisenstein/cusp
//! splitting, certified cusp-coefficient bounds, thresholds and exact scans.

use rayon::prelude::*;
use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::arith::{bernoulli, dim_cusp, double_factorial, factorial};
use crate::forms::{express_in_e4e6, gen, serre_series, GeneratorId, QuasiForm};
use crate::qseries::QSeries;
use crate::recurrence::{member, Kind};
use crate::{Error, Result};

const PREC: u32 = 256;

/// Truncation used to build `f_w` before splitting it.
pub const DECOMPOSE_TRUNC: i64 = 24;

fn r(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn check_weight(w: i64) -> Result<()> {
    if w < 8 || w % 2 != 0 || w == 6 {
        return Err(Error::BadWeight(w));
    }
    Ok(())
}

/// `mu_w`, the common size of the constant terms of `(A, B, C)`.
pub fn mu(w: i64) -> Result<Rational> {
    check_weight(w)?;
    let (m, last) = if w % 4 == 0 { (w / 4 - 2, w / 2 - 1) } else { ((w - 10) / 4, w / 2 - 4) };
    let num = Integer::from(factorial(m as u32) * 3u32);
    let den = Integer::from(80).pow(m as u32) * double_factorial(w - 7) * double_factorial(last);
    Ok(Rational::from((num, den)))
}

/// First index at which the coefficients of `f_w` are expected to be positive.
pub fn first_index(w: i64) -> i64 {
    w / 4 - 1
}

/// Constant terms of `(A, B, C)` in `f = A + E2 B + E2^2 C`.
pub fn constant_vector(f: &QuasiForm) -> [Rational; 3] {
    [f.a().coeff_int(0), f.b().coeff_int(0), f.c().coeff_int(0)]
}

/// `f_w = alpha'' + beta' + gamma` with `alpha = s E_{w-4} + alpha_cusp`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub w: i64,
    pub eisenstein_scale: Rational,
    pub alpha_cusp: QSeries,
    pub beta_cusp: QSeries,
    pub gamma_cusp: QSeries,
}

fn eisenstein(k: i64, trunc: i64) -> QSeries {
    gen(GeneratorId::Eisenstein(k as u32), trunc)
}

pub fn decompose(f: &QuasiForm) -> Result<Decomposition> {
    let w = f.weight();
    check_weight(w)?;
    let t = f.trunc().as_int().ok_or_else(|| Error::Decomposition("half-integral truncation".into()))?;
    let (a, b, c) = (f.a(), f.b(), f.c());
    let e4 = gen(GeneratorId::E4, t);
    let alpha = c.scale(&r(144, (w - 3) * (w - 4)));
    let beta = &b - &serre_series(&c, w - 4).scale(&r(24, w - 4));
    let beta = beta.scale(&r(12, w - 2));
    let gamma = &(&a - &serre_series(&b, w - 2).scale(&r(12, w - 2))) + &(&e4 * &c).scale(&r(1, w - 3));
    let gamma = &gamma + &serre_series(&serre_series(&c, w - 4), w - 2).scale(&r(144, (w - 2) * (w - 3)));
    let scale = alpha.coeff_int(0);
    let alpha_cusp = &alpha - &eisenstein(w - 4, t).scale(&scale);
    for (name, s) in [("beta", &beta), ("gamma", &gamma), ("alpha", &alpha_cusp)] {
        if s.coeff_int(0) != 0 {
            return Err(Error::Decomposition(format!("{name} has constant term {}", s.coeff_int(0))));
        }
    }
    let d = Decomposition { w, eisenstein_scale: scale, alpha_cusp, beta_cusp: beta, gamma_cusp: gamma };
    if !d.reassemble().agrees_with(&f.collapse()) {
        return Err(Error::Decomposition(format!("reassembly of f_{w} does not match")));
    }
    Ok(d)
}

impl Decomposition {
    pub fn trunc(&self) -> i64 {
        [&self.alpha_cusp, &self.beta_cusp, &self.gamma_cusp]
            .iter()
            .map(|s| s.trunc().as_int().expect("integral"))
            .min()
            .expect("nonempty")
    }

    /// `s E''_{w-4} + alpha_cusp'' + beta' + gamma`.
    pub fn reassemble(&self) -> QSeries {
        let e = eisenstein(self.w - 4, self.trunc()).scale(&self.eisenstein_scale);
        let alpha = &e + &self.alpha_cusp;
        &(&alpha.derive().derive() + &self.beta_cusp.derive()) + &self.gamma_cusp
    }

    /// Multiply every part by `c`.
    pub fn scaled(&self, c: &Rational) -> Decomposition {
        Decomposition {
            w: self.w,
            eisenstein_scale: Rational::from(&self.eisenstein_scale * c),
            alpha_cusp: self.alpha_cusp.scale(c),
            beta_cusp: self.beta_cusp.scale(c),
            gamma_cusp: self.gamma_cusp.scale(c),
        }
    }

    /// Coefficient of `n^2 sigma_{w-5}(n)` in the Eisenstein part.
    pub fn eisenstein_coefficient(&self) -> Rational {
        let k = self.w - 4;
        let b = bernoulli(k as usize);
        Rational::from(&self.eisenstein_scale * Rational::from(-2 * k)) / b
    }
}

fn fl(q: &Rational, round: Round) -> Float {
    Float::with_val_round(PREC, q, round).0
}

fn mul_up(a: &Float, b: &Float) -> Float {
    Float::with_val_round(PREC, a * b, Round::Up).0
}

fn add_up(a: &Float, b: &Float) -> Float {
    Float::with_val_round(PREC, a + b, Round::Up).0
}

fn sqrt_up(a: &Float) -> Float {
    Float::with_val_round(PREC, a.sqrt_ref(), Round::Up).0
}

/// Enclosure of `sum_{m <= ell} g(m) e^(-7.288 m)`, returned as an upper bound of its modulus.
fn damped_sum_bound(g: &QSeries, ell: i64) -> Float {
    let x = r(-7288, 1000);
    let u_lo = Float::with_val_round(PREC, fl(&x, Round::Down).exp_ref(), Round::Down).0;
    let u_hi = Float::with_val_round(PREC, fl(&x, Round::Up).exp_ref(), Round::Up).0;
    let (mut p_lo, mut p_hi) = (Float::with_val(PREC, 1), Float::with_val(PREC, 1));
    let (mut lo, mut hi) = (Float::with_val(PREC, 0), Float::with_val(PREC, 0));
    for m in 1..=ell {
        p_lo = Float::with_val_round(PREC, &p_lo * &u_lo, Round::Down).0;
        p_hi = Float::with_val_round(PREC, &p_hi * &u_hi, Round::Up).0;
        let c = g.coeff_int(m);
        let (a, b) = if c >= 0 { (&p_lo, &p_hi) } else { (&p_hi, &p_lo) };
        let t_lo = Float::with_val_round(PREC, a * &c, Round::Down).0;
        let t_hi = Float::with_val_round(PREC, b * &c, Round::Up).0;
        lo = Float::with_val_round(PREC, &lo + &t_lo, Round::Down).0;
        hi = Float::with_val_round(PREC, &hi + &t_hi, Round::Up).0;
    }
    lo.abs().max(&hi.abs())
}

/// Constant `C` of the Jenkins-Rouse bound `|g(n)| <= C n^((k-1)/2) sigma_0(n)` for a
/// cusp form of weight `k` in a cusp space of dimension `ell`, rounded upward.
pub fn jenkins_rouse(g: &QSeries, k: i64, ell: i64) -> Float {
    if g.is_zero() || ell == 0 {
        return Float::with_val(PREC, 0);
    }
    let s1: Rational = (1..=ell)
        .map(|m| Rational::from(g.coeff_int(m).square() / Integer::from(m).pow((k - 1) as u32)))
        .sum();
    let first = mul_up(&fl(&r(11, 1), Round::Up), &sqrt_up(&fl(&s1, Round::Up)));
    let ratio = Rational::from((Integer::from(4141).pow((k / 2) as u32), Integer::from(100 * k).pow((k / 2) as u32)));
    let e = Float::with_val_round(PREC, fl(&r(1872, 100), Round::Up).exp_ref(), Round::Up).0;
    let mut second = mul_up(&e, &fl(&ratio, Round::Up));
    second = mul_up(&second, &sqrt_up(&fl(&r(k, 1), Round::Up)));
    second = mul_up(&second, &damped_sum_bound(g, ell));
    let ln = Float::with_val_round(PREC, fl(&r(k, 1), Round::Up).ln_ref(), Round::Up).0;
    mul_up(&sqrt_up(&ln), &add_up(&first, &second))
}

/// Bound constant for a cusp form of weight `k`: zero on a trivial space, Deligne's
/// `|g(1)|` on a one-dimensional (Hecke eigen) space, Jenkins-Rouse otherwise.
pub fn cusp_constant(g: &QSeries, k: i64) -> Result<Float> {
    if g.coeff_int(0) != 0 {
        return Err(Error::Decomposition(format!("weight {k} form is not cuspidal")));
    }
    match dim_cusp(k) {
        0 if g.is_zero() => Ok(Float::with_val(PREC, 0)),
        0 => Err(Error::Decomposition(format!("nonzero cusp form of weight {k}"))),
        1 => Ok(fl(&Rational::from(g.coeff_int(1).abs_ref()), Round::Up)),
        ell => Ok(jenkins_rouse(g, k, ell)),
    }
}

#[derive(Clone, Debug)]
pub struct Threshold {
    /// Every coefficient of index `>= n0` is certified positive.
    pub n0: i64,
    /// `C_alpha + C_beta + C_gamma`, rounded upward.
    pub cusp_constant: Float,
}

/// Least `n0` with `E n^2 n^(w-5) > C n^((w-1)/2) 2 sqrt(n)` for all `n >= n0`.
pub fn threshold(d: &Decomposition) -> Result<Threshold> {
    let w = d.w;
    let c = [(&d.alpha_cusp, w - 4), (&d.beta_cusp, w - 2), (&d.gamma_cusp, w)]
        .into_iter()
        .map(|(g, k)| cusp_constant(g, k))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .fold(Float::with_val(PREC, 0), |acc, x| add_up(&acc, x));
    let e = d.eisenstein_coefficient();
    if e <= 0 {
        return Err(Error::Decomposition(format!("Eisenstein coefficient of f_{w} is {e}")));
    }
    // compare squares exactly: E^2 n^(w-6) > 4 C^2
    let cq = c.to_rational().expect("finite");
    let rhs = Rational::from(cq.square() * 4u32);
    let e2 = e.square();
    let holds = |n: i64| Rational::from(&e2 * Integer::from(n).pow((w - 6) as u32)) > rhs;
    let mut hi = 1i64;
    while !holds(hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let n0 = if holds(1) { 1 } else { hi };
    Ok(Threshold { n0, cusp_constant: c })
}

type Expansion = Vec<((u32, u32), Rational)>;

/// Coefficients `a(0..=up_to)` of `alpha'' + beta' + gamma`, each part re-expanded in
/// `E4^a E6^b` monomials at the full length.
pub fn coefficients(d: &Decomposition, up_to: i64) -> Result<Vec<Rational>> {
    let w = d.w;
    let t = d.trunc();
    let alpha = &eisenstein(w - 4, t).scale(&d.eisenstein_scale) + &d.alpha_cusp;
    let parts: [(&QSeries, i64, u32); 3] = [(&alpha, w - 4, 2), (&d.beta_cusp, w - 2, 1), (&d.gamma_cusp, w, 0)];
    let mut terms: Vec<((u32, u32), Rational, u32)> = Vec::new();
    for (s, k, j) in parts {
        let e: Expansion = express_in_e4e6(s, k)
            .ok_or_else(|| Error::Decomposition(format!("weight {k} part is not in the E4/E6 span")))?;
        terms.extend(e.into_iter().filter(|(_, c)| *c != 0).map(|(m, c)| (m, c, j)));
    }
    let len = up_to + 1;
    let series: Vec<QSeries> = terms
        .par_iter()
        .map(|((a, b), _, _)| crate::forms::e4e6_monomial(*a, *b, len))
        .collect();
    Ok((0..len)
        .into_par_iter()
        .map(|n| {
            let mut acc = Rational::new();
            for ((_, c, j), s) in terms.iter().zip(&series) {
                let v = s.coeff_int(n);
                if v != 0 {
                    acc += Rational::from(c * v) * Integer::from(n).pow(*j);
                }
            }
            acc
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PositiveBeyondThreshold,
    PositiveToScan,
    NonPositive,
}

#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub w: i64,
    pub threshold: i64,
    pub scanned_to: i64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_nonpositive: Option<i64>,
}

/// Check the signs of the coefficients from `first_index(w)` through `up_to`.
pub fn scan(d: &Decomposition, threshold: i64, up_to: i64) -> Result<PositivityReport> {
    let start = first_index(d.w);
    let up_to = up_to.max(start);
    let a = coefficients(d, up_to)?;
    let first_nonpositive = (start..=up_to).find(|&n| a[n as usize] <= 0);
    let verdict = match first_nonpositive {
        Some(_) => Verdict::NonPositive,
        None if up_to >= threshold => Verdict::PositiveBeyondThreshold,
        None => Verdict::PositiveToScan,
    };
    Ok(PositivityReport { w: d.w, threshold, scanned_to: up_to, verdict, first_nonpositive })
}

/// Decompose `f_w`, certify a threshold and scan up to it (or to `up_to` if given).
pub fn positivity(w: i64, up_to: Option<i64>) -> Result<PositivityReport> {
    let f = member(Kind::F, w, DECOMPOSE_TRUNC)?;
    let f = f.as_f().ok_or(Error::BadWeight(w))?;
    let d = decompose(f)?;
    let t = threshold(&d)?;
    scan(&d, t.n0, up_to.unwrap_or(t.n0))
}

/// `(w, report)` for every f-family weight in `lo..=hi`.
pub fn conjecture_scan(lo: i64, hi: i64, up_to: Option<i64>) -> Result<Vec<PositivityReport>> {
    (lo.max(8)..=hi).step_by(2).map(|w| positivity(w, up_to)).collect()
}
