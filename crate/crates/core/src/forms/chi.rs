//! Weight-`2k` multipliers `chi_1, chi_2` built from `theta00^4` and `lambda`.

use crate::poly::Poly;
use crate::qseries::{Exp, QSeries};

use super::{gen, GeneratorId};

/// `theta00^(4k) N(lambda) / (lambda^lam_pow (1 - lambda)^one_minus_pow)`.
#[derive(Clone, Debug)]
pub struct ChiEntry {
    pub numerator: Poly,
    pub lam_pow: i64,
    pub one_minus_pow: i64,
}

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

const ONE_PLUS: [i64; 2] = [1, 1];
const ONE_MINUS: [i64; 2] = [1, -1];
const CYC6: [i64; 3] = [1, -1, 1];
const LAM: [i64; 2] = [0, 1];

fn entry(factors: &[&[i64]], lam_pow: i64, one_minus_pow: i64) -> ChiEntry {
    let fs: Vec<Poly> = factors.iter().map(|f| p(f)).collect();
    ChiEntry { numerator: Poly::product(&fs), lam_pow, one_minus_pow }
}

/// `[k][i]` for `k = 0..=5` and `i = 0, 1` (`chi_1`, `chi_2`).
pub static CHI_TABLE: std::sync::LazyLock<Vec<[ChiEntry; 2]>> = std::sync::LazyLock::new(|| {
    vec![
        [
            entry(&[&ONE_PLUS, &ONE_MINUS, &CYC6], 2, 0),
            entry(&[&ONE_PLUS, &CYC6], 1, 1),
        ],
        [entry(&[&ONE_MINUS], 0, 0), entry(&[&ONE_MINUS, &ONE_MINUS, &ONE_MINUS, &[2, 3, 2]], 2, 0)],
        [
            entry(&[&ONE_MINUS, &ONE_PLUS], 0, 0),
            entry(&[&ONE_PLUS, &[1, 3, -7, 3, 1]], 1, 1),
        ],
        [
            entry(&[&ONE_MINUS, &CYC6], 0, 0),
            entry(&[&CYC6, &[1, 3, -10, 3, 1]], 1, 1),
        ],
        [
            entry(&[&LAM, &ONE_PLUS, &ONE_MINUS], 0, 0),
            entry(&[&ONE_PLUS, &[1, -1, 1, -1, 1, -1, 1]], 1, 1),
        ],
        [
            entry(&[&LAM, &ONE_MINUS, &[1, -4, 1]], 0, 0),
            entry(&[&[1, 0, 0, -32, 60, -32, 0, 0, 1]], 1, 1),
        ],
    ]
});

const MARGIN: i64 = 8;

fn build(k: usize, e: &ChiEntry, trunc: i64, s_side: bool) -> QSeries {
    assert!(k <= 5, "chi index {k} out of range");
    let t = trunc + MARGIN;
    let lam = gen(GeneratorId::Lambda, t);
    let one_minus = &QSeries::one(t) - &lam;
    let theta = gen(GeneratorId::Theta00, t).pow(k as i64).expect("power");
    let (num, x, y) = if s_side {
        (e.numerator.reflect().eval_series(&lam, t), &one_minus, &lam)
    } else {
        (e.numerator.eval_series(&lam, t), &lam, &one_minus)
    };
    let mut out = &theta * &num;
    if e.lam_pow > 0 {
        out = &out * &x.pow(-e.lam_pow).expect("lambda is invertible");
    }
    if e.one_minus_pow > 0 {
        out = &out * &y.pow(-e.one_minus_pow).expect("1 - lambda is invertible");
    }
    if s_side && k % 2 == 1 {
        out = -out;
    }
    let out = out.truncate(Exp::int(trunc));
    assert_eq!(out.trunc(), Exp::int(trunc), "chi margin too small");
    out
}

/// `chi_{which+1}` of index `k`, known below `q^trunc`.
pub fn chi(k: usize, which: usize, trunc: i64) -> QSeries {
    build(k, &CHI_TABLE[k][which], trunc, false)
}

/// `z^(-2k) chi(-1/z)`, known below `q^trunc`.
pub fn chi_s(k: usize, which: usize, trunc: i64) -> QSeries {
    build(k, &CHI_TABLE[k][which], trunc, true)
}

pub fn chi_pair(k: usize, trunc: i64) -> (QSeries, QSeries) {
    (chi(k, 0, trunc), chi(k, 1, trunc))
}

pub fn chi_s_pair(k: usize, trunc: i64) -> (QSeries, QSeries) {
    (chi_s(k, 0, trunc), chi_s(k, 1, trunc))
}
