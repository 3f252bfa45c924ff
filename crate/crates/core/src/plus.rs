//! Eigenvalue `(-1)^(d/4)`: the kernel is a depth-2 quasimodular form built
//! from `Delta^-l (omega_{k+2} P(j), omega_{k+1} Q(j), omega_k R(j))`.

use rug::{Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{gen, omega, GeneratorId};
use crate::linalg::nullspace;
use crate::poly::Poly;
use crate::psi::{PsiExpansion, PsiTerm, Sign, Tag};
use crate::qseries::{Exp, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlusParams {
    pub d: i64,
    pub ell: i64,
    pub k: usize,
    pub a_k: i64,
    pub n: i64,
    pub n_plus: i64,
    pub extra_dof: bool,
}

pub fn check_dimension(d: i64) -> Result<()> {
    if d < 4 || d % 4 != 0 {
        return Err(Error::BadDimension(d));
    }
    Ok(())
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

pub fn plus_params(d: i64) -> Result<PlusParams> {
    check_dimension(d)?;
    let ell = ceil_div(d, 24);
    let k = (6 * ell - d / 4) as usize;
    let a_k = [1, 1, 2, 2, 3, 3][k];
    let n = ceil_div(ell - a_k + 2, 2);
    let n_plus = (d + 4) / 16 + 1;
    let extra_dof = [0, 12, 16, 28, 32, 44].contains(&(d % 48));
    debug_assert_eq!(n + ell, n_plus);
    debug_assert!(2 * n + a_k - 1 > ell);
    Ok(PlusParams { d, ell, k, a_k, n, n_plus, extra_dof })
}

/// Degrees of `(P, Q, R)`; a negative degree means the zero polynomial.
pub fn degrees(k: usize, n: i64) -> [i64; 3] {
    match k {
        0 => [n, n - 1, n],
        1 => [n, n, n - 1],
        2 | 3 => [n, n, n],
        4 => [n + 1, n, n],
        5 => [n, n + 1, n],
        _ => unreachable!("k in 0..=5"),
    }
}

#[derive(Clone, Debug)]
pub struct PlusSolution {
    pub params: PlusParams,
    pub p: Poly,
    pub q: Poly,
    pub r: Poly,
    pub origin_constrained: bool,
    pub trunc: i64,
    pub psi1: QSeries,
    pub psi2: QSeries,
    pub psi3: QSeries,
    /// `z^(d/2-2) psi(-1/z) = psi1 - 2 E2 psi2 + E2^2 psi3`.
    pub phi: QSeries,
}

impl PlusSolution {
    /// `psi2 - E2 psi3`, the coefficient of `12 i z / pi` in `psi`.
    pub fn g_series(&self) -> QSeries {
        let e2 = gen(GeneratorId::E2, self.trunc + self.params.n_plus + 2);
        &self.psi2 - &(&e2 * &self.psi3)
    }
}

/// Laurent data of the unknowns: for each coefficient, its contribution to
/// `omega_{k+1} Q - E2 omega_k R` and to the `z^2` combination.
struct System {
    layout: [usize; 3],
    g_cols: Vec<QSeries>,
    phi_cols: Vec<QSeries>,
}

fn j_powers(max: i64, trunc: i64) -> Vec<QSeries> {
    let j = gen(GeneratorId::J, trunc);
    let mut out = vec![QSeries::one(trunc)];
    for i in 1..=max.max(0) {
        let next = &out[i as usize - 1] * &j;
        out.push(next);
    }
    out
}

fn build_system(p: &PlusParams, trunc: i64) -> System {
    let degs = degrees(p.k, p.n);
    let maxdeg = degs.iter().copied().max().unwrap_or(0).max(0);
    let t = trunc + maxdeg + 4;
    let jp = j_powers(maxdeg, t);
    let e2 = gen(GeneratorId::E2, t);
    let e2sq = &e2 * &e2;
    let w0 = omega(p.k, t);
    let w1 = omega(p.k + 1, t);
    let w2 = omega(p.k + 2, t);
    let zero = QSeries::constant(0, t);
    let mut g_cols = Vec::new();
    let mut phi_cols = Vec::new();
    let mut layout = [0; 3];
    for (slot, &deg) in degs.iter().enumerate() {
        layout[slot] = (deg + 1).max(0) as usize;
        for i in 0..=deg {
            let ji = &jp[i as usize];
            let (g, phi) = match slot {
                0 => (zero.clone(), &w2 * ji),
                1 => {
                    let base = &w1 * ji;
                    (base.clone(), (&e2 * &base).scale_int(-2))
                }
                _ => {
                    let base = &w0 * ji;
                    (-(&e2 * &base), &e2sq * &base)
                }
            };
            g_cols.push(g);
            phi_cols.push(phi);
        }
    }
    System { layout, g_cols, phi_cols }
}

fn column_scales(sys: &System) -> Vec<Integer> {
    sys.g_cols
        .iter()
        .zip(&sys.phi_cols)
        .map(|(g, f)| Integer::from(g.denominator().lcm_ref(f.denominator())))
        .collect()
}

fn rows_for(cols: &[QSeries], scales: &[Integer], from: i64, to_excl: i64, rows: &mut Vec<Vec<Integer>>) -> Result<()> {
    for e in from..to_excl {
        let mut row = Vec::with_capacity(cols.len());
        for (c, s) in cols.iter().zip(scales) {
            let v = c.try_coeff(Exp::int(e)).ok_or_else(|| Error::InsufficientTruncation {
                trunc: e,
                needed: format!("coefficient q^{e} of a constraint"),
            })?;
            row.push(Integer::from(v.numer() * Integer::from(s / v.denom())));
        }
        rows.push(row);
    }
    Ok(())
}

/// Kernel basis of the order conditions. `relax` drops the last `z^2` condition.
fn kernel(p: &PlusParams, relax: bool) -> Result<(System, Vec<Vec<Rational>>)> {
    let target = 2 * p.n + p.a_k - 1 - i64::from(relax);
    let sys = build_system(p, target + 2);
    let scales = column_scales(&sys);
    let lowest = -(p.n + 2);
    let mut rows = Vec::new();
    rows_for(&sys.g_cols, &scales, lowest, -p.n + 1, &mut rows)?;
    rows_for(&sys.phi_cols, &scales, lowest, target, &mut rows)?;
    let ncols = scales.len();
    let basis = nullspace(&rows, ncols)
        .into_iter()
        .map(|v| v.iter().zip(&scales).map(|(x, s)| Rational::from(x * s)).collect())
        .collect();
    Ok((sys, basis))
}

fn split(layout: [usize; 3], v: &[Rational]) -> [Poly; 3] {
    let (a, rest) = v.split_at(layout[0]);
    let (b, c) = rest.split_at(layout[1]);
    [a, b, c].map(|x| Poly(x.to_vec()).trimmed())
}

/// Primitive integer normalization with the first nonzero leading coefficient positive.
pub(crate) fn normalize_polys(polys: &mut [Poly]) {
    let all: Vec<Rational> = polys.iter().flat_map(|p| p.0.iter().cloned()).collect();
    let ints = crate::linalg::primitive_integer(&all);
    let mut it = ints.into_iter();
    for p in polys.iter_mut() {
        for c in p.0.iter_mut() {
            *c = Rational::from(it.next().expect("length"));
        }
    }
    let lead = polys.iter().find_map(|p| p.0.last().cloned());
    if lead.is_some_and(|c| c < 0) {
        for p in polys.iter_mut() {
            *p = p.scale(&Rational::from(-1));
        }
    }
}

fn assemble(params: PlusParams, mut polys: [Poly; 3], origin: bool, trunc: i64) -> Result<PlusSolution> {
    normalize_polys(&mut polys);
    let [p, q, r] = polys;
    let ell = params.ell;
    let t = trunc + ell + params.n + 4;
    let jt = t + 2;
    let j = gen(GeneratorId::J, jt);
    let e2 = gen(GeneratorId::E2, t);
    let dinv = gen(GeneratorId::Delta, t + 2 * ell).pow(-ell)?;
    let comp = |m: usize, poly: &Poly| -> QSeries { &(&omega(m, t) * &poly.eval_series(&j, jt)) * &dinv };
    let cut = |s: QSeries| s.truncate(Exp::int(trunc));
    let psi1 = cut(comp(params.k + 2, &p));
    let psi2 = cut(comp(params.k + 1, &q));
    let psi3 = cut(comp(params.k, &r));
    let phi = &(&psi1 - &(&e2 * &psi2).scale_int(2)) + &(&(&e2 * &e2) * &psi3);
    for s in [&psi1, &psi2, &psi3, &phi] {
        if s.trunc() < Exp::int(trunc) {
            return Err(Error::InsufficientTruncation { trunc, needed: "psi components".into() });
        }
    }
    let sol = PlusSolution { params, p, q, r, origin_constrained: origin, trunc, psi1, psi2, psi3, phi };
    verify(&sol)?;
    Ok(sol)
}

fn verify(sol: &PlusSolution) -> Result<()> {
    let p = &sol.params;
    let degs = degrees(p.k, p.n);
    for (poly, deg) in [&sol.p, &sol.q, &sol.r].iter().zip(degs) {
        if poly.degree().map_or(-1, |x| x as i64) > deg {
            return Err(Error::Identity(format!("polynomial degree exceeds {deg}")));
        }
    }
    let want = 2 * p.n + p.a_k - 1 - p.ell - i64::from(sol.origin_constrained);
    if sol.phi.valuation().at_least() < Exp::int(want.max(1)) {
        return Err(Error::Identity(format!("z^2 component has order {} < {want}", sol.phi.valuation())));
    }
    let g = sol.g_series();
    if g.valuation().at_least() < Exp::int(-p.n_plus + 1) {
        return Err(Error::Identity(format!("z component has order {}", g.valuation())));
    }
    Ok(())
}

pub fn solve_plus(d: i64, trunc: i64) -> Result<PlusSolution> {
    let params = plus_params(d)?;
    let (sys, basis) = kernel(&params, false)?;
    if basis.len() != 1 {
        return Err(Error::KernelDimension { expected: 1, found: basis.len() });
    }
    assemble(params, split(sys.layout, &basis[0]), false, trunc)
}

/// Basis of the solution space with the last `z^2` condition dropped: two
/// solutions when the dimension has an extra degree of freedom, else one.
pub fn solve_plus_family(d: i64, trunc: i64) -> Result<Vec<PlusSolution>> {
    let params = plus_params(d)?;
    let (sys, basis) = kernel(&params, params.extra_dof)?;
    let expected = 1 + usize::from(params.extra_dof);
    if basis.len() != expected {
        return Err(Error::KernelDimension { expected, found: basis.len() });
    }
    basis
        .iter()
        .map(|v| assemble(params, split(sys.layout, v), params.extra_dof, trunc))
        .collect()
}

/// The combination with `b_0 = 0`, so that the eigenfunction vanishes at the origin.
pub fn apply_origin_constraint(d: i64, trunc: i64) -> Result<PlusSolution> {
    let params = plus_params(d)?;
    if !params.extra_dof {
        return Err(Error::Config(format!("dimension {d} has no extra degree of freedom")));
    }
    let (sys, basis) = kernel(&params, true)?;
    if basis.len() != 2 {
        return Err(Error::KernelDimension { expected: 2, found: basis.len() });
    }
    let probe = |v: &Vec<Rational>| -> Result<Rational> {
        let s = assemble_unverified(params, split(sys.layout, v), 4)?;
        Ok(s.g_series().coeff(Exp::ZERO))
    };
    let c0 = probe(&basis[0])?;
    let c1 = probe(&basis[1])?;
    if c0 == 0 && c1 == 0 {
        return Err(Error::Identity("both basis vectors already vanish at the origin".into()));
    }
    let v: Vec<Rational> = basis[0].iter().zip(&basis[1]).map(|(x, y)| Rational::from(x * &c1) - Rational::from(y * &c0)).collect();
    assemble(params, split(sys.layout, &v), true, trunc)
}

fn assemble_unverified(params: PlusParams, polys: [Poly; 3], trunc: i64) -> Result<PlusSolution> {
    let [p, q, r] = polys;
    let t = trunc + params.ell + params.n + 4;
    let j = gen(GeneratorId::J, t + 2);
    let dinv = gen(GeneratorId::Delta, t + 2 * params.ell).pow(-params.ell)?;
    let comp = |m: usize, poly: &Poly| -> QSeries { (&(&omega(m, t) * &poly.eval_series(&j, t + 2)) * &dinv).truncate(Exp::int(trunc)) };
    let (psi1, psi2, psi3) = (comp(params.k + 2, &p), comp(params.k + 1, &q), comp(params.k, &r));
    let phi = QSeries::constant(0, trunc);
    Ok(PlusSolution { params, p, q, r, origin_constrained: true, trunc, psi1, psi2, psi3, phi })
}

/// `psi(z) = z^2 phi + z (12 i / pi) g - (36 / pi^2) psi3`.
pub fn assemble_psi_plus(sol: &PlusSolution) -> PsiExpansion {
    let terms = vec![
        PsiTerm { z_pow: 2, tag: Tag::ONE, scale: Rational::from(1), series: sol.phi.clone() },
        PsiTerm { z_pow: 1, tag: Tag::new(1, -1, 0), scale: Rational::from(12), series: sol.g_series().truncate(Exp::int(sol.trunc)) },
        PsiTerm { z_pow: 0, tag: Tag::new(0, -2, 0), scale: Rational::from(-36), series: sol.psi3.clone() },
    ];
    PsiExpansion::new(sol.params.d, Sign::Plus, terms, sol.phi.clone(), Rational::from(1))
}
