//! Eigenvalue `(-1)^(d/4+1)`: `psi = (X(j) omega_k log(lambda) + chi_1 Y(j) + chi_2 Z(j)) / Delta^l`.

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{chi, chi_s, gen, omega, GeneratorId};
use crate::linalg::nullspace;
use crate::plus::{ceil_div, check_dimension, normalize_polys};
use crate::poly::Poly;
use crate::psi::{PsiExpansion, PsiTerm, Sign, Tag};
use crate::qseries::{Exp, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinusParams {
    pub d: i64,
    pub ell: i64,
    pub k: usize,
    pub b_k: i64,
    pub n: i64,
    pub n_minus: i64,
    pub extra_dof: bool,
}

pub fn minus_params(d: i64) -> Result<MinusParams> {
    check_dimension(d)?;
    let ell = ceil_div(d - 4, 24);
    let k = (6 * ell - (d - 4) / 4) as usize;
    let b_k = [3, 3, 5, 5, 7, 7][k];
    let n = ceil_div(2 * ell - b_k, 4);
    let n_minus = d / 16 + 1;
    let extra_dof = [0, 4, 16, 20, 32, 36].contains(&(d % 48));
    debug_assert_eq!(n + ell + 1, n_minus);
    Ok(MinusParams { d, ell, k, b_k, n, n_minus, extra_dof })
}

/// Degrees of `(X, Y, Z)`; negative means zero.
pub fn degrees(k: usize, n: i64) -> [i64; 3] {
    match k {
        0 => [n, n, n - 1],
        1 => [n - 1, n, n],
        2 | 3 => [n, n + 1, n],
        4 | 5 => [n, n + 2, n + 1],
        _ => unreachable!("k in 0..=5"),
    }
}

/// Exponent, in half steps, that `z^(-2k) (...)(Sz)` must reach: `2n + b_k/2`.
fn target_halves(p: &MinusParams) -> i64 {
    4 * p.n + p.b_k
}

/// `lambda^6` written in the basis `1, lambda, ..., lambda^5` over `Q[j]`.
fn lambda_sextic() -> [Poly; 6] {
    // with J = j/256
    let c = |a: i64, b: i64| Poly(vec![Rational::from(a), Rational::from((b, 256))]).trimmed();
    [c(-1, 0), c(3, 0), c(-6, 1), c(7, -2), c(-6, 1), c(3, 0)]
}

/// Reduce a polynomial in `lambda` (coefficients in `Q[j]`) to degree at most 5 in `lambda`.
pub fn reduce_lambda_powers(p: &[Poly]) -> [Poly; 6] {
    let rel = lambda_sextic();
    let mut c: Vec<Poly> = p.to_vec();
    while c.len() > 6 {
        let top = c.pop().expect("nonempty");
        let base = c.len() - 6;
        for (m, r) in rel.iter().enumerate() {
            c[base + m] = c[base + m].add(&top.mul(r));
        }
    }
    c.resize(6, Poly(Vec::new()));
    std::array::from_fn(|m| c[m].clone().trimmed())
}

/// Residual of a reduction: `sum c_m(j) lambda^m` minus the original, as a series.
pub fn lambda_reduction_residual(p: &[Poly], trunc: i64) -> QSeries {
    let lam = gen(GeneratorId::Lambda, trunc + 2);
    let j = gen(GeneratorId::J, trunc + 2 * p.len() as i64 + 4);
    let eval = |coeffs: &[Poly]| {
        let mut acc = QSeries::zero(crate::Unit::Half, Exp::int(trunc));
        let mut pw = QSeries::one(trunc);
        for c in coeffs {
            let cj = c.eval_series(&j, trunc + 2 * p.len() as i64 + 4);
            acc = &acc + &(&cj * &pw).truncate(Exp::int(trunc));
            pw = &pw * &lam;
        }
        acc
    };
    &eval(p) - &eval(&reduce_lambda_powers(p))
}

#[derive(Clone, Debug)]
pub struct MinusSolution {
    pub params: MinusParams,
    pub x: Poly,
    pub y: Poly,
    pub z: Poly,
    pub origin_relaxed: bool,
    pub trunc: i64,
    /// `omega_k X(j) / Delta^l`.
    pub f_series: QSeries,
    /// `(chi_1 Y(j) + chi_2 Z(j)) / Delta^l`.
    pub omega_series: QSeries,
    /// `z^(d/2-2) psi(-1/z)`, half-integer exponents only.
    pub psi_s: QSeries,
}

/// `z^(-2k) (X(j) omega_k(Sz) log lambda(Sz) + chi_1(Sz) Y(j) + chi_2(Sz) Z(j))`.
pub fn s_transform_minus(k: usize, x: &Poly, y: &Poly, z: &Poly, trunc: i64) -> QSeries {
    let maxdeg = [x, y, z].iter().filter_map(|p| p.degree()).max().unwrap_or(0) as i64;
    let t = trunc + maxdeg + 4;
    let j = gen(GeneratorId::J, t);
    let log_s = gen(GeneratorId::LogLambdaS, t);
    let xs = &(&omega(k, t) * &x.eval_series(&j, t)) * &log_s;
    let ys = &chi_s(k, 0, t) * &y.eval_series(&j, t);
    let zs = &chi_s(k, 1, t) * &z.eval_series(&j, t);
    (&(&xs + &ys) + &zs).truncate(Exp::int(trunc))
}

struct Columns {
    layout: [usize; 3],
    x: Vec<QSeries>,
    yz: Vec<QSeries>,
    s: Vec<QSeries>,
}

fn build_columns(p: &MinusParams, trunc: i64) -> Columns {
    let degs = degrees(p.k, p.n);
    let maxdeg = degs.iter().copied().max().unwrap_or(0).max(0);
    let t = trunc + maxdeg + 4;
    let j = gen(GeneratorId::J, t);
    let w = omega(p.k, t);
    let log_s = gen(GeneratorId::LogLambdaS, t);
    let (c1, c2) = (chi(p.k, 0, t), chi(p.k, 1, t));
    let (s1, s2) = (chi_s(p.k, 0, t), chi_s(p.k, 1, t));
    let zero = QSeries::zero(crate::Unit::Half, Exp::int(t));
    let mut cols = Columns { layout: [0; 3], x: vec![], yz: vec![], s: vec![] };
    let mut jp = QSeries::one(t);
    let mut powers = Vec::new();
    for _ in 0..=maxdeg {
        powers.push(jp.clone());
        jp = &jp * &j;
    }
    for (slot, &deg) in degs.iter().enumerate() {
        cols.layout[slot] = (deg + 1).max(0) as usize;
        for ji in powers.iter().take(cols.layout[slot]) {
            match slot {
                0 => {
                    let b = &w * ji;
                    cols.s.push(&b * &log_s);
                    cols.x.push(b);
                    cols.yz.push(zero.clone());
                }
                1 => {
                    let s = &s1 * ji;
                    cols.x.push(zero.clone());
                    cols.yz.push(&c1 * ji);
                    cols.s.push(s);
                }
                _ => {
                    let s = &s2 * ji;
                    cols.x.push(zero.clone());
                    cols.yz.push(&c2 * ji);
                    cols.s.push(s);
                }
            }
        }
    }
    cols
}

/// Rows forcing every coefficient below `q^(below/2)` to vanish.
fn rows_below(cols: &[QSeries], scales: &[Integer], below: i64, rows: &mut Vec<Vec<Integer>>) -> Result<()> {
    let lowest = cols.iter().filter_map(|c| c.valuation().order()).map(|e| e.half_steps()).min();
    let Some(lowest) = lowest else { return Ok(()) };
    for h in lowest..below {
        let e = Exp::halves(h);
        let mut row = Vec::with_capacity(cols.len());
        for (c, s) in cols.iter().zip(scales) {
            let v = c.try_coeff(e).ok_or_else(|| Error::InsufficientTruncation {
                trunc: h,
                needed: format!("coefficient q^{e} of a constraint"),
            })?;
            row.push(Integer::from(v.numer() * Integer::from(s / v.denom())));
        }
        if row.iter().any(|x| *x != 0) {
            rows.push(row);
        }
    }
    Ok(())
}

fn kernel(p: &MinusParams, relax: bool) -> Result<(Columns, Vec<Vec<Rational>>)> {
    let target = target_halves(p) - 2 * i64::from(relax);
    let cols = build_columns(p, target.div_euclid(2) + 2);
    let ncols = cols.x.len();
    let scales: Vec<Integer> = (0..ncols)
        .map(|i| {
            [&cols.x, &cols.yz, &cols.s]
                .iter()
                .fold(Integer::from(1), |acc, c| acc.lcm(c[i].denominator()))
        })
        .collect();
    let mut rows = Vec::new();
    rows_below(&cols.x, &scales, -2 * p.n, &mut rows)?;
    rows_below(&cols.yz, &scales, -2 * p.n - 2, &mut rows)?;
    rows_below(&cols.s, &scales, target, &mut rows)?;
    let basis = nullspace(&rows, ncols)
        .into_iter()
        .map(|v| v.iter().zip(&scales).map(|(x, s)| Rational::from(x * s)).collect())
        .collect();
    Ok((cols, basis))
}

fn split(layout: [usize; 3], v: &[Rational]) -> [Poly; 3] {
    let (a, rest) = v.split_at(layout[0]);
    let (b, c) = rest.split_at(layout[1]);
    [a, b, c].map(|x| Poly(x.to_vec()).trimmed())
}

fn assemble(params: MinusParams, mut polys: [Poly; 3], relaxed: bool, trunc: i64) -> Result<MinusSolution> {
    normalize_polys(&mut polys);
    let [x, y, z] = polys;
    let ell = params.ell;
    let t = trunc + ell + params.n.max(0) + 6;
    let j = gen(GeneratorId::J, t);
    let dinv = gen(GeneratorId::Delta, t + 2 * ell).pow(-ell)?;
    let cut = |s: QSeries| s.truncate(Exp::int(trunc));
    let f_series = cut(&(&omega(params.k, t) * &x.eval_series(&j, t)) * &dinv);
    let chis = &(&chi(params.k, 0, t) * &y.eval_series(&j, t)) + &(&chi(params.k, 1, t) * &z.eval_series(&j, t));
    let omega_series = cut(&chis * &dinv);
    let psi_s = cut(&s_transform_minus(params.k, &x, &y, &z, t) * &dinv);
    for s in [&f_series, &omega_series, &psi_s] {
        if s.trunc() < Exp::int(trunc) {
            return Err(Error::InsufficientTruncation { trunc, needed: "psi components".into() });
        }
    }
    let sol = MinusSolution { params, x, y, z, origin_relaxed: relaxed, trunc, f_series, omega_series, psi_s };
    verify(&sol)?;
    Ok(sol)
}

impl MinusSolution {
    /// `f log(lambda)_tail + omega`, the `z`-free, `log 2`-free part of `psi`.
    pub fn constant_series(&self) -> QSeries {
        let tail = gen(GeneratorId::LogLambdaTail, self.trunc + self.params.n_minus + 2);
        (&(&self.f_series * &tail) + &self.omega_series).truncate(Exp::int(self.trunc))
    }
}

fn verify(sol: &MinusSolution) -> Result<()> {
    let p = &sol.params;
    let degs = degrees(p.k, p.n);
    for (poly, deg) in [&sol.x, &sol.y, &sol.z].iter().zip(degs) {
        if poly.degree().map_or(-1, |x| x as i64) > deg {
            return Err(Error::Identity(format!("polynomial degree exceeds {deg}")));
        }
    }
    if !sol.psi_s.integral_part().is_zero() {
        return Err(Error::Identity("S-image has integer exponents".into()));
    }
    let want = target_halves(p) - 2 * i64::from(sol.origin_relaxed) - 2 * p.ell;
    if sol.psi_s.valuation().at_least() < Exp::halves(want.max(1)) {
        return Err(Error::Identity(format!("S-image has order {}", sol.psi_s.valuation())));
    }
    let c = sol.constant_series();
    if c.half_part().terms().any(|(e, v)| e.half_steps() <= 0 && v != 0) {
        return Err(Error::Identity("principal part has half-integer exponents".into()));
    }
    Ok(())
}

pub fn solve_minus(d: i64, trunc: i64) -> Result<MinusSolution> {
    let params = minus_params(d)?;
    let (cols, basis) = kernel(&params, false)?;
    if basis.len() != 1 {
        return Err(Error::KernelDimension { expected: 1, found: basis.len() });
    }
    assemble(params, split(cols.layout, &basis[0]), false, trunc)
}

/// Basis with the last order condition dropped: two solutions with an extra degree of freedom.
pub fn solve_minus_family(d: i64, trunc: i64) -> Result<Vec<MinusSolution>> {
    let params = minus_params(d)?;
    let (cols, basis) = kernel(&params, params.extra_dof)?;
    let expected = 1 + usize::from(params.extra_dof);
    if basis.len() != expected {
        return Err(Error::KernelDimension { expected, found: basis.len() });
    }
    basis
        .iter()
        .map(|v| assemble(params, split(cols.layout, v), params.extra_dof, trunc))
        .collect()
}

/// The extra-freedom combination without the pole `q^(-n_minus)` in `psi`, so the
/// deepest pole index drops to `n_minus - 1`.
pub fn lower_depth(d: i64, trunc: i64) -> Result<MinusSolution> {
    let params = minus_params(d)?;
    if !params.extra_dof {
        return Err(Error::Config(format!("dimension {d} has no extra degree of freedom")));
    }
    let fam = solve_minus_family(d, 4)?;
    let top = |s: &MinusSolution| (s.constant_series().coeff_int(-params.n_minus), s.f_series.coeff_int(-params.n_minus));
    let (a0, b0) = top(&fam[0]);
    let (a1, b1) = top(&fam[1]);
    if b0 != 0 || b1 != 0 {
        return Err(Error::Identity("logarithmic part reaches the deepest pole".into()));
    }
    if a0 == 0 && a1 == 0 {
        return Err(Error::Identity("both basis solutions already miss the deepest pole".into()));
    }
    let mix = |u: &Poly, v: &Poly| u.scale(&a1).add(&v.scale(&Rational::from(-&a0)));
    let polys = [mix(&fam[0].x, &fam[1].x), mix(&fam[0].y, &fam[1].y), mix(&fam[0].z, &fam[1].z)];
    let sol = assemble(params, polys, true, trunc)?;
    if sol.constant_series().coeff_int(-params.n_minus) != 0 {
        return Err(Error::Identity("combination keeps the deepest pole".into()));
    }
    Ok(sol)
}

/// `psi = z (pi i f) + 4 log 2 f + (f tail + omega)`.
pub fn assemble_psi_minus(sol: &MinusSolution) -> PsiExpansion {
    let terms = vec![
        PsiTerm { z_pow: 1, tag: Tag::new(1, 1, 0), scale: Rational::from(1), series: sol.f_series.clone() },
        PsiTerm { z_pow: 0, tag: Tag::new(0, 0, 1), scale: Rational::from(4), series: sol.f_series.clone() },
        PsiTerm { z_pow: 0, tag: Tag::ONE, scale: Rational::from(1), series: sol.constant_series() },
    ];
    PsiExpansion::new(sol.params.d, Sign::Minus, terms, sol.psi_s.clone(), Rational::from((1, 2)))
}
