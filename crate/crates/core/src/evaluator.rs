//! High-precision evaluation of `psi`, the transform `W(s)`, the radial profile
//! `U(s) = -4 sin^2(pi s / 2) W(s)`, functional-equation residuals and sign checks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use serde::Serialize;

use crate::psi::{PsiExpansion, Sign, Symbolic, Tag};
use crate::qseries::QSeries;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct EvalConfig {
    /// Mantissa bits.
    pub precision: u32,
    /// Series truncation used when building expansions.
    pub trunc: i64,
    /// Gauss-Legendre nodes per quadrature panel.
    pub quad_nodes: usize,
    /// `psi(it)` is integrated through the S-image on `(0, split]` and termwise beyond.
    pub split: f64,
    /// Largest admissible estimated series remainder, relative to the value.
    pub tolerance: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { precision: 256, trunc: 64, quad_nodes: 200, split: 1.0, tolerance: 1e-30 }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.precision < 64 {
            return Err(Error::Config(format!("precision {} below 64 bits", self.precision)));
        }
        if self.quad_nodes < 16 {
            return Err(Error::Config(format!("{} quadrature nodes, need at least 16", self.quad_nodes)));
        }
        if !(0.5..=2.0).contains(&self.split) {
            return Err(Error::Config(format!("split point {} outside [0.5, 2]", self.split)));
        }
        Ok(())
    }
}

/// Smallest imaginary part at which `psi` is summed directly.
pub const MIN_HEIGHT: f64 = 0.4;

/// Panel width of the quadrature in `u = 1/t`.
const PANEL: f64 = 2.0;

fn pi(p: u32) -> Float {
    Float::with_val(p, Constant::Pi)
}

/// `i^a pi^b (log 2)^c` at precision `p`.
pub fn tag_value(tag: Tag, p: u32) -> Complex {
    let mut x = Float::with_val(p, 1);
    if tag.pi_pow != 0 {
        x *= pi(p).pow(tag.pi_pow);
    }
    if tag.ln2_pow != 0 {
        x *= Float::with_val(p, Constant::Log2).pow(tag.ln2_pow);
    }
    match tag.i_pow % 4 {
        0 => Complex::with_val(p, (x, 0)),
        1 => Complex::with_val(p, (0, x)),
        2 => Complex::with_val(p, (-x, 0)),
        _ => Complex::with_val(p, (0, -x)),
    }
}

pub fn symbolic_value(s: &Symbolic, p: u32) -> Complex {
    let mut acc = Complex::new(p);
    for (c, tag) in &s.0 {
        acc += tag_value(*tag, p) * Float::with_val(p, c);
    }
    acc
}

/// Numeric copy of a series: `sum_i c_i x^(lo + i step)` in half-steps `x = e^(pi i z)`.
#[derive(Clone, Debug)]
struct NumSeries {
    lo: i64,
    step: i64,
    coeffs: Vec<Float>,
}

impl NumSeries {
    fn new(s: &QSeries, scale: &Rational, p: u32) -> NumSeries {
        let den = s.denominator();
        let coeffs = s
            .numerators()
            .iter()
            .map(|n| Float::with_val(p, Rational::from((n.clone(), den.clone())) * scale))
            .collect();
        NumSeries { lo: s.lo().half_steps(), step: s.unit().step(), coeffs }
    }

    fn exponents(&self) -> impl Iterator<Item = (i64, &Float)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.lo + i as i64 * self.step, c))
    }

    /// Smallest positive half-step exponent with a nonzero coefficient.
    fn first_positive(&self) -> Option<i64> {
        self.exponents().find(|(h, c)| *h > 0 && !c.is_zero()).map(|(h, _)| h)
    }

    /// Sum at `x = e^(pi i z)` and an estimate of the neglected remainder.
    fn eval_complex(&self, z: &Complex, p: u32) -> (Complex, f64) {
        let piz = Complex::with_val(p, z * Complex::with_val(p, (0, pi(p))));
        let mut pow = Complex::with_val(p, &piz * self.lo).exp();
        let base = Complex::with_val(p, &piz * self.step).exp();
        let mut acc = Complex::new(p);
        let mut tail = 0f64;
        let n = self.coeffs.len();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let t = Complex::with_val(p, &pow * c);
                if i + 4 >= n {
                    tail = tail.max(Float::with_val(53, t.abs_ref()).to_f64());
                }
                acc += t;
            }
            pow *= &base;
        }
        (acc, 4.0 * tail)
    }

    /// Sum at a real `x`.
    fn eval_real(&self, x: &Float, p: u32) -> Float {
        let mut pow = Float::with_val(p, x.pow(self.lo as i32));
        let base = Float::with_val(p, x.pow(self.step as i32));
        let mut acc = Float::new(p);
        for c in &self.coeffs {
            if !c.is_zero() {
                acc += Float::with_val(p, &pow * c);
            }
            pow *= &base;
        }
        acc
    }
}

#[derive(Clone, Debug)]
struct NumTerm {
    z_pow: u32,
    factor: Complex,
    /// `i^z_pow * factor`, the real constant in front of `t^z_pow` on `z = it`.
    axis_factor: Float,
    series: NumSeries,
}

type NodeCache = Mutex<HashMap<(usize, u32), Arc<Vec<(Float, Float)>>>>;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize, p: u32) -> Arc<Vec<(Float, Float)>> {
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("node cache").get(&(n, p)) {
        return v.clone();
    }
    let wp = p + 32;
    let eps = Float::with_val(wp, Float::i_exp(1, -(p as i32) - 16));
    let half: Vec<(Float, Float)> = (0..n.div_ceil(2))
        .into_par_iter()
        .map(|i| {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = Float::with_val(wp, guess);
            let mut dp = Float::new(wp);
            for _ in 0..100 {
                let (mut p0, mut p1) = (Float::with_val(wp, 1), x.clone());
                for k in 2..=n {
                    let k = k as u32;
                    let p2 = (Float::with_val(wp, &x * &p1) * (2 * k - 1) - Float::with_val(wp, &p0 * (k - 1))) / k;
                    p0 = p1;
                    p1 = p2;
                }
                // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
                let x2 = Float::with_val(wp, x.square_ref()) - 1u32;
                dp = (Float::with_val(wp, &x * &p1) - &p0) * n as u32 / x2;
                let dx = Float::with_val(wp, &p1 / &dp);
                x -= &dx;
                if dx.abs() < eps {
                    break;
                }
            }
            let x2 = Float::with_val(wp, 1u32 - Float::with_val(wp, x.square_ref()));
            let w = Float::with_val(p, 2u32 / (x2 * Float::with_val(wp, dp.square_ref())));
            (Float::with_val(p, x), w)
        })
        .collect();
    let mut all: Vec<(Float, Float)> = half.iter().map(|(x, w)| (Float::with_val(p, -x), w.clone())).collect();
    for (i, (x, w)) in half.iter().enumerate().rev() {
        if n % 2 == 1 && i == half.len() - 1 {
            continue;
        }
        all.push((x.clone(), w.clone()));
    }
    let v = Arc::new(all);
    cache.lock().expect("node cache").insert((n, p), v.clone());
    v
}

/// `(U(2m), U'(2m))` together with the Laurent data it came from.
#[derive(Clone, Debug)]
pub struct SpecialValues {
    pub m: usize,
    pub u: Float,
    pub du: Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridVerdict {
    /// Every sample beyond `r*` has one sign and samples just below have the other.
    Consistent,
    /// Only lattice zeros `sqrt(2m)` separate samples beyond `r*`, but no sign flip at `r*`.
    NoFlipAtRadius,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignCertificate {
    pub d: i64,
    pub sign: Sign,
    /// `sqrt(2 n)` with `n` the deepest pole index.
    pub last_sign_change: f64,
    pub n: usize,
    /// Sign of `F` beyond the last sign change.
    pub sign_beyond: i32,
    pub samples: usize,
    pub grid_verdict: GridVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub r: f64,
    pub f: f64,
    pub residual: f64,
}

/// Numerical view of a [`PsiExpansion`].
pub struct Evaluator {
    psi: PsiExpansion,
    cfg: EvalConfig,
    terms: Vec<NumTerm>,
    phi: NumSeries,
    /// `d/2 - 2`.
    m: i64,
    nodes: OnceLock<Result<Vec<(Float, Float)>, String>>,
}

impl Evaluator {
    pub fn new(psi: &PsiExpansion, cfg: EvalConfig) -> Result<Evaluator> {
        cfg.validate()?;
        let p = cfg.precision;
        let mut terms = Vec::new();
        for t in &psi.terms {
            let factor = tag_value(t.tag, p);
            let axis = Complex::with_val(p, &factor * tag_value(Tag::new(t.z_pow as u8, 0, 0), p));
            if !axis.imag().is_zero() {
                return Err(Error::Config(format!("z^{} term is not real on the imaginary axis", t.z_pow)));
            }
            terms.push(NumTerm {
                z_pow: t.z_pow,
                factor,
                axis_factor: axis.real().clone(),
                series: NumSeries::new(&t.series, &t.scale, p),
            });
        }
        let phi = NumSeries::new(&psi.phi, &Rational::from(1), p);
        if phi.exponents().any(|(h, c)| h <= 0 && !c.is_zero()) {
            return Err(Error::Config("S-image has a nonpositive exponent".into()));
        }
        Ok(Evaluator { psi: psi.clone(), cfg, terms, phi, m: psi.d / 2 - 2, nodes: OnceLock::new() })
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn expansion(&self) -> &PsiExpansion {
        &self.psi
    }

    fn p(&self) -> u32 {
        self.cfg.precision
    }

    fn check_remainder(&self, rem: f64, value: f64) -> Result<()> {
        if rem > self.cfg.tolerance * value.max(1.0) {
            return Err(Error::PrecisionLoss { remainder: rem });
        }
        Ok(())
    }

    /// `psi(z)` summed from the z-polynomial components with `q = e^(2 pi i z)`.
    pub fn psi_at(&self, z: &Complex) -> Result<Complex> {
        let p = self.p();
        if z.imag().to_f64() < MIN_HEIGHT {
            return Err(Error::BadSamplePoint(format!("{:.12}", z)));
        }
        let mut acc = Complex::new(p);
        let mut rem = 0f64;
        for t in &self.terms {
            let (v, r) = t.series.eval_complex(z, p);
            let zp = Complex::with_val(p, z.pow(t.z_pow as i32));
            let scale = Complex::with_val(p, &zp * &t.factor);
            rem += r * Float::with_val(53, scale.abs_ref()).to_f64();
            acc += scale * v;
        }
        self.check_remainder(rem, Float::with_val(53, acc.abs_ref()).to_f64())?;
        Ok(acc)
    }

    /// `z^(d/2-2) psi(-1/z)` from the S-image series.
    pub fn psi_s_at(&self, z: &Complex) -> Result<Complex> {
        if z.imag().to_f64() < MIN_HEIGHT {
            return Err(Error::BadSamplePoint(format!("{:.12}", z)));
        }
        let (v, rem) = self.phi.eval_complex(z, self.p());
        self.check_remainder(rem, Float::with_val(53, v.abs_ref()).to_f64())?;
        Ok(v)
    }

    /// `psi(it)` directly from the expansion at the cusp.
    pub fn psi_direct(&self, t: &Float) -> Result<Float> {
        let z = Complex::with_val(self.p(), (0, t));
        Ok(self.psi_at(&z)?.real().clone())
    }

    /// `psi(it)` through the S-image: `psi(it) = (-it)^m phi(i/t)`.
    pub fn psi_via_s(&self, t: &Float) -> Float {
        let p = self.p();
        let x = Float::with_val(p, -(pi(p) / t)).exp();
        let v = self.phi.eval_real(&x, p);
        let sign = if (self.m / 2) % 2 == 0 { 1 } else { -1 };
        Float::with_val(p, t.pow(self.m as i32)) * v * sign
    }

    /// `psi(it)` for `t > 0`.
    pub fn eval_psi(&self, t: &Float) -> Result<Float> {
        if *t <= 0 {
            return Err(Error::BadSamplePoint(t.to_string()));
        }
        if *t >= self.cfg.split {
            self.psi_direct(t)
        } else {
            Ok(self.psi_via_s(t))
        }
    }

    /// Panels in `u = 1/t` from `1/split` to where the S-image is negligible.
    fn quadrature(&self) -> Result<&Vec<(Float, Float)>> {
        self.nodes
            .get_or_init(|| {
                let p = self.p();
                let Some(h_min) = self.phi.first_positive() else {
                    return Ok(Vec::new());
                };
                // phi(e^(-2 pi u)) decays like e^(-pi h_min u)
                let lam = std::f64::consts::PI * h_min as f64;
                let big = self
                    .phi
                    .coeffs
                    .iter()
                    .map(|c| c.to_f64().abs().max(1.0).ln())
                    .fold(0f64, f64::max);
                let u0 = 1.0 / self.cfg.split;
                let u_max = u0 + (p as f64 * std::f64::consts::LN_2 + big + 10.0) / lam;
                let panels = ((u_max - u0) / PANEL).ceil() as usize;
                let gl = gauss_legendre(self.cfg.quad_nodes, p);
                let sign = if (self.m / 2) % 2 == 0 { 1 } else { -1 };
                let u0f = Float::with_val(p, 1) / Float::with_val(p, self.cfg.split);
                let out: Vec<(Float, Float)> = (0..panels)
                    .into_par_iter()
                    .flat_map_iter(|k| {
                        let a = Float::with_val(p, &u0f + PANEL * k as f64);
                        let half = Float::with_val(p, PANEL / 2.0);
                        let mid = Float::with_val(p, &a + &half);
                        gl.iter()
                            .map(|(x, w)| {
                                let u = Float::with_val(p, &mid + Float::with_val(p, &half * x));
                                let q = Float::with_val(p, -(pi(p) * &u)).exp();
                                let v = self.phi.eval_real(&q, p);
                                let weight = Float::with_val(p, w * &half)
                                    * v
                                    * Float::with_val(p, (&u).pow(-(self.m as i32) - 2))
                                    * sign;
                                (u, weight)
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                Ok(out)
            })
            .as_ref()
            .map_err(|e| Error::Config(e.clone()))
    }

    /// `int_t0^inf t^j e^(-lam t) dt`, continued to all `lam != 0`.
    fn exp_moment(&self, j: u32, lam: &Float, t0: &Float) -> Float {
        let p = self.p();
        let mut acc = Float::new(p);
        let mut coef = Float::with_val(p, 1);
        for i in 0..=j {
            // j! / (j-i)! t0^(j-i) / lam^(i+1)
            let tp = Float::with_val(p, t0.pow((j - i) as i32));
            let lp = Float::with_val(p, lam.pow(i as i32 + 1));
            let term = Float::with_val(p, &coef * &tp) / lp;
            acc += term;
            coef *= j - i;
        }
        acc * Float::with_val(p, -Float::with_val(p, lam * t0)).exp()
    }

    fn pole_guard(&self, s: &Float) -> Result<()> {
        let tol = Float::with_val(self.p(), Float::i_exp(1, -(self.p() as i32) / 2));
        for k in 0..=self.psi.depth() {
            if self.psi.a[k].is_zero() && self.psi.b[k].is_zero() {
                continue;
            }
            if Float::with_val(self.p(), s - 2 * k as u32).abs() < tol {
                return Err(Error::PoleAt2k(format!("{}", 2 * k)));
            }
        }
        Ok(())
    }

    /// `W(s) = int_0^inf psi(it) e^(-pi s t) dt`, analytically continued.
    pub fn eval_w(&self, s: &Float) -> Result<Float> {
        let p = self.p();
        let bound = -self.psi.decay_over_pi.to_f64();
        if s.to_f64() <= bound {
            return Err(Error::OutsideDomain { s: format!("{:.12}", s), bound: format!("{bound}") });
        }
        self.pole_guard(s)?;
        let t0 = Float::with_val(p, self.cfg.split);
        let pi = pi(p);
        let mut acc = Float::new(p);
        let mut rem = 0f64;
        for t in &self.terms {
            let ser = &t.series;
            let n = ser.coeffs.len();
            for (i, (h, c)) in ser.exponents().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // q^e = e^(-2 pi e t) with e = h/2
                let lam = Float::with_val(p, &pi * Float::with_val(p, s + h));
                let v = self.exp_moment(t.z_pow, &lam, &t0) * c * &t.axis_factor;
                if i + 4 >= n {
                    rem = rem.max(Float::with_val(53, v.abs_ref()).to_f64());
                }
                acc += v;
            }
        }
        let nodes = self.quadrature()?;
        let ps = Float::with_val(p, &pi * s);
        let quad: Float = nodes
            .par_iter()
            .map(|(u, w)| Float::with_val(p, -Float::with_val(p, &ps / u)).exp() * w)
            .reduce(|| Float::new(p), |a, b| a + b);
        acc += quad;
        self.check_remainder(4.0 * rem, acc.to_f64().abs())?;
        Ok(acc)
    }

    /// `U(s) = -4 sin^2(pi s / 2) W(s)`; the removable values at the poles are `-b_k`.
    pub fn eval_u(&self, s: &Float) -> Result<Float> {
        match self.eval_w(s) {
            Ok(w) => {
                let p = self.p();
                let sn = Float::with_val(p, Float::with_val(p, pi(p) * s) / 2u32).sin();
                Ok(Float::with_val(p, sn.square_ref()) * w * -4i32)
            }
            Err(Error::PoleAt2k(_)) => {
                let k = (s.to_f64() / 2.0).round() as usize;
                Ok(self.special_values(k).u)
            }
            Err(e) => Err(e),
        }
    }

    /// Radial profile `F(r) = U(r^2)`.
    pub fn eval_f(&self, r: &Float) -> Result<Float> {
        self.eval_u(&Float::with_val(self.p(), r.square_ref()))
    }

    /// `U(2m) = -b_m` and `U'(2m) = -pi a_m` from the principal part.
    pub fn special_values(&self, m: usize) -> SpecialValues {
        let p = self.p();
        let get = |v: &Vec<Symbolic>| v.get(m).map(|x| symbolic_value(x, p).real().clone()).unwrap_or_else(|| Float::new(p));
        let u = -get(&self.psi.b);
        let du = -(get(&self.psi.a) * pi(p));
        SpecialValues { m, u, du }
    }

    /// Richardson-extrapolated central difference of `U` at `s` with initial step `h`.
    pub fn u_derivative_numeric(&self, s: &Float, h: f64) -> Result<Float> {
        let p = self.p();
        let d = |h: f64| -> Result<Float> {
            let hp = Float::with_val(p, h);
            let a = self.eval_u(&Float::with_val(p, s + &hp))?;
            let b = self.eval_u(&Float::with_val(p, s - &hp))?;
            Ok((a - b) / (2.0 * h))
        };
        let mut row: Vec<Float> = vec![d(h)?, d(h / 2.0)?, d(h / 4.0)?];
        let mut f = 4.0;
        while row.len() > 1 {
            row = row.windows(2).map(|w| (Float::with_val(p, &w[1] * f) - &w[0]) / (f - 1.0)).collect();
            f *= 4.0;
        }
        Ok(row.pop().expect("one value"))
    }

    /// Max relative residual of both functional equations over the sample points.
    pub fn functional_eq_check(&self, points: &[Complex], epsilon: i32) -> Result<f64> {
        let p = self.p();
        let mut worst = 0f64;
        for z in points {
            let one = Complex::with_val(p, (1, 0));
            let tz = Complex::with_val(p, z + &one);
            let tinv = Complex::with_val(p, z - &one);
            let sz = Complex::with_val(p, -Complex::with_val(p, z.recip_ref()));
            let tinv_sz = Complex::with_val(p, &sz - &one);
            for w in [&tz, &tinv, &sz, &tinv_sz, z] {
                if w.imag().to_f64() < MIN_HEIGHT {
                    return Err(Error::BadSamplePoint(format!("{:.12}", z)));
                }
            }
            let zm = Complex::with_val(p, z.pow(self.m as i32));
            let (pz, pt, pti) = (self.psi_at(z)?, self.psi_at(&tz)?, self.psi_at(&tinv)?);
            let ps = Complex::with_val(p, &zm * self.psi_at(&sz)?);
            let pts = Complex::with_val(p, &zm * self.psi_at(&tinv_sz)?);
            let eps = Complex::with_val(p, (epsilon, 0));
            let mag = |c: &Complex| Float::with_val(53, c.abs_ref()).to_f64();
            let r1 = Complex::with_val(p, &pts - Complex::with_val(p, &eps * &pt));
            let second = Complex::with_val(p, &pt - Complex::with_val(p, &pz * 2u32)) + &pti;
            let r2 = Complex::with_val(p, &ps * 2u32) - Complex::with_val(p, &eps * &second);
            let scale = [&pz, &pt, &pti, &ps, &pts].iter().map(|c| mag(c)).fold(f64::MIN_POSITIVE, f64::max);
            worst = worst.max(mag(&r1) / scale).max(mag(&r2) / scale);
        }
        Ok(worst)
    }

    /// `F` on `r^2 in [2n - 1.9, 2n + 40]` (step 0.05) with refinement at `2n`: checks that
    /// `F` keeps one sign beyond `sqrt(2n)` apart from the lattice zeros and flips across it.
    pub fn sign_change_certificate(&self) -> Result<SignCertificate> {
        let p = self.p();
        let n = self.psi.depth();
        let s_n = 2.0 * n as f64;
        let grid: Vec<f64> = (0..=838).map(|j| s_n - 1.9 + 0.05 * j as f64).collect();
        let values: Vec<(f64, Float)> = grid
            .par_iter()
            .filter(|&&s| (s / 2.0 - (s / 2.0).round()).abs() > 1e-9)
            .map(|&s| self.eval_u(&Float::with_val(p, s)).map(|v| (s, v)))
            .collect::<Result<_>>()?;
        let refine: Vec<(f64, Float)> = (2..=6)
            .flat_map(|k| [-1.0, 1.0].map(|sg| s_n + sg * 10f64.powi(-k)))
            .map(|s| self.eval_u(&Float::with_val(p, s)).map(|v| (s, v)))
            .collect::<Result<_>>()?;
        let sgn = |v: &Float| if v.is_sign_negative() { -1 } else { 1 };
        let beyond: Vec<&(f64, Float)> = values.iter().chain(&refine).filter(|(s, _)| *s > s_n).collect();
        let below: Vec<&(f64, Float)> = values.iter().chain(&refine).filter(|(s, _)| *s < s_n && *s > s_n - 0.5).collect();
        let sign_beyond = beyond.first().map(|(_, v)| sgn(v)).unwrap_or(1);
        if let Some((s, v)) = beyond.iter().find(|(_, v)| sgn(v) != sign_beyond || v.is_zero()) {
            return Err(Error::SignAnomaly(format!("F(sqrt({s:.3})) = {:.3e} breaks the sign {sign_beyond}", v.to_f64())));
        }
        let flips = below.iter().all(|(_, v)| sgn(v) == -sign_beyond);
        Ok(SignCertificate {
            d: self.psi.d,
            sign: self.psi.sign,
            last_sign_change: s_n.sqrt(),
            n,
            sign_beyond,
            samples: values.len() + refine.len(),
            grid_verdict: if flips { GridVerdict::Consistent } else { GridVerdict::NoFlipAtRadius },
        })
    }

    /// `(r, F(r), remainder estimate)` rows.
    pub fn samples(&self, rs: &[f64]) -> Result<Vec<Sample>> {
        let p = self.p();
        rs.par_iter()
            .map(|&r| {
                let f = self.eval_f(&Float::with_val(p, r))?;
                Ok(Sample { r, f: f.to_f64(), residual: self.cfg.tolerance * f.to_f64().abs().max(1.0) })
            })
            .collect()
    }
}

/// CSV with columns `r, F(r), residual`.
pub fn samples_csv(rows: &[Sample]) -> String {
    let mut s = String::from("r,F(r),residual\n");
    for r in rows {
        s.push_str(&format!("{},{:e},{:e}\n", r.r, r.f, r.residual));
    }
    s
}
