//! Catalog of modular, quasimodular and theta-type generators as exact q-series.

mod cache;
mod chi;
mod identities;
mod quasi;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::arith::{bernoulli, divisor_sums, r4};
use crate::qseries::{Exp, QSeries, Unit};

pub use cache::FormCache;
pub use chi::{chi, chi_pair, chi_s, chi_s_pair, ChiEntry, CHI_TABLE};
pub use identities::{chi_functional_check, rankin_cohen, ramanujan_suite, serre_series, IdentityResult};
pub use quasi::QuasiForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorId {
    E2,
    E4,
    E6,
    /// Normalized Eisenstein series of even weight `k >= 4`.
    Eisenstein(u32),
    Delta,
    J,
    /// `j' = -E4^2 E6 / Delta`.
    JPrime,
    /// Fourth powers of the Jacobi thetas.
    Theta00,
    Theta01,
    Theta10,
    Lambda,
    /// `log(lambda) - pi i z - 4 log 2`.
    LogLambdaTail,
    /// `log(lambda(-1/z))`.
    LogLambdaS,
    /// `omega_m`, `0 <= m <= 7`.
    Omega(u8),
    /// `chi_i` of index `k`: `Chi(i, k)` with `i` in `{1, 2}`, `0 <= k <= 5`.
    Chi(u8, u8),
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::Eisenstein(k) => write!(f, "E{k}"),
            GeneratorId::Omega(m) => write!(f, "Omega{m}"),
            GeneratorId::Chi(i, k) => write!(f, "Chi{i}_{k}"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl GeneratorId {
    pub fn parse(s: &str) -> Option<GeneratorId> {
        use GeneratorId::*;
        Some(match s {
            "E2" => E2,
            "E4" => E4,
            "E6" => E6,
            "Delta" => Delta,
            "J" | "j" => J,
            "JPrime" => JPrime,
            "Theta00" => Theta00,
            "Theta01" => Theta01,
            "Theta10" => Theta10,
            "Lambda" => Lambda,
            "LogLambdaTail" => LogLambdaTail,
            "LogLambdaS" => LogLambdaS,
            _ if s.starts_with("Omega") => {
                let m: u8 = s[5..].parse().ok()?;
                return (m <= 7).then_some(Omega(m));
            }
            _ if s.starts_with("Chi") => {
                let (i, k) = s[3..].split_once('_')?;
                let (i, k): (u8, u8) = (i.parse().ok()?, k.parse().ok()?);
                return ((1..=2).contains(&i) && k <= 5).then_some(Chi(i, k));
            }
            _ => {
                let k: u32 = s.strip_prefix('E')?.parse().ok()?;
                return (k >= 4 && k % 2 == 0).then_some(Eisenstein(k)).map(|g| match k {
                    4 => E4,
                    6 => E6,
                    _ => g,
                });
            }
        })
    }

    /// Weight, where meaningful.
    pub fn weight(self) -> Option<i64> {
        use GeneratorId::*;
        Some(match self {
            E2 => 2,
            E4 => 4,
            E6 => 6,
            Eisenstein(k) => k as i64,
            Delta => 12,
            J => 0,
            JPrime => 2,
            Theta00 | Theta01 | Theta10 => 2,
            Lambda => 0,
            LogLambdaTail | LogLambdaS => return None,
            Omega(m) => omega_weight(m as usize),
            Chi(_, k) => 2 * k as i64,
        })
    }

    pub const ALL: [GeneratorId; 13] = [
        GeneratorId::E2,
        GeneratorId::E4,
        GeneratorId::E6,
        GeneratorId::Eisenstein(8),
        GeneratorId::Delta,
        GeneratorId::J,
        GeneratorId::JPrime,
        GeneratorId::Theta00,
        GeneratorId::Theta01,
        GeneratorId::Theta10,
        GeneratorId::Lambda,
        GeneratorId::LogLambdaTail,
        GeneratorId::LogLambdaS,
    ];
}

type Memo = Mutex<HashMap<GeneratorId, Arc<QSeries>>>;

fn memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Series of a generator known below `q^trunc`; results are memoized.
pub fn generator(id: GeneratorId, trunc: i64) -> Arc<QSeries> {
    let id = match id {
        GeneratorId::Eisenstein(4) => GeneratorId::E4,
        GeneratorId::Eisenstein(6) => GeneratorId::E6,
        other => other,
    };
    let want = Exp::int(trunc);
    if let Some(s) = memo().lock().expect("memo poisoned").get(&id) {
        if s.trunc() >= want {
            return if s.trunc() == want { s.clone() } else { Arc::new(s.truncate(want)) };
        }
    }
    let s = Arc::new(compute(id, trunc).truncate(want));
    debug_assert_eq!(s.trunc(), want, "{id} built to the wrong truncation");
    memo().lock().expect("memo poisoned").insert(id, s.clone());
    s
}

/// Series of a generator, owned.
pub fn gen(id: GeneratorId, trunc: i64) -> QSeries {
    (*generator(id, trunc)).clone()
}

fn eisenstein(k: u32, trunc: i64) -> QSeries {
    let len = trunc.max(1) as usize;
    let sig = divisor_sums(k - 1, len);
    let factor = Rational::from(-2 * k as i64) / bernoulli(k as usize);
    let coeffs: Vec<Rational> = sig
        .iter()
        .enumerate()
        .map(|(n, s)| if n == 0 { Rational::from(1) } else { Rational::from(&factor * s) })
        .collect();
    QSeries::from_rationals(Unit::One, Exp::ZERO, &coeffs)
}

/// `prod_{n >= 1} (1 - q^n)` known below `q^len`, by the pentagonal number theorem.
pub fn euler_product(len: i64) -> QSeries {
    let len = len.max(1) as usize;
    let mut c = vec![Integer::new(); len];
    c[0] = Integer::from(1);
    for k in 1i64.. {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let e1 = (k * (3 * k - 1) / 2) as usize;
        if e1 >= len {
            break;
        }
        c[e1] += sign;
        let e2 = (k * (3 * k + 1) / 2) as usize;
        if e2 < len {
            c[e2] += sign;
        }
    }
    QSeries::from_int_coeffs(0, c)
}

fn theta4(trunc: i64, flip: bool, odd_only: bool) -> QSeries {
    let len = (2 * trunc).max(1) as usize;
    let r = r4(len);
    let num = r
        .into_iter()
        .enumerate()
        .map(|(n, v)| {
            if odd_only {
                if n % 2 == 1 {
                    v * 2
                } else {
                    Integer::new()
                }
            } else if flip && n % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect();
    QSeries::from_integers(Unit::Half, Exp::ZERO, num)
}

fn compute(id: GeneratorId, trunc: i64) -> QSeries {
    use GeneratorId::*;
    let t = trunc;
    match id {
        E2 => {
            let len = t.max(1) as usize;
            let s = divisor_sums(1, len);
            let c = s
                .into_iter()
                .enumerate()
                .map(|(n, v)| if n == 0 { Integer::from(1) } else { v * -24 })
                .collect();
            QSeries::from_int_coeffs(0, c)
        }
        E4 => eisenstein(4, t),
        E6 => eisenstein(6, t),
        Eisenstein(k) => {
            assert!(k >= 4 && k % 2 == 0, "no Eisenstein series of weight {k}");
            eisenstein(k, t)
        }
        Delta => euler_product(t - 1).pow(24).expect("positive power").shift(Exp::int(1)),
        J => {
            let e4 = gen(E4, t + 1);
            let d = gen(Delta, t + 2);
            &e4.pow(3).expect("power") * &d.invert().expect("Delta has leading q")
        }
        JPrime => generator(J, t).derive(),
        Theta00 => theta4(t, false, false),
        Theta01 => theta4(t, true, false),
        Theta10 => theta4(t, false, true),
        Lambda => {
            let a = gen(Theta10, t + 1);
            let b = gen(Theta00, t + 1);
            a.div(&b).expect("theta00 is a unit")
        }
        LogLambdaTail => {
            let len = (2 * t).max(1) as usize;
            let r = r4(len);
            let coeffs: Vec<Rational> = r
                .into_iter()
                .enumerate()
                .map(|(k, v)| {
                    if k == 0 {
                        Rational::new()
                    } else {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        Rational::from((v * sign, k as u64))
                    }
                })
                .collect();
            QSeries::from_rationals(Unit::Half, Exp::ZERO, &coeffs)
        }
        Omega(m) => omega(m as usize, t),
        Chi(i, k) => {
            assert!((1..=2).contains(&i), "chi index {i} out of range");
            chi(k as usize, i as usize - 1, t)
        }
        LogLambdaS => {
            let len = (2 * t).max(1) as usize;
            let s1 = divisor_sums(1, len);
            let coeffs: Vec<Rational> = (0..len)
                .map(|h| {
                    if h % 2 == 1 {
                        Rational::from((Integer::from(&s1[h] * -16), h as u64))
                    } else {
                        Rational::new()
                    }
                })
                .collect();
            QSeries::from_rationals(Unit::Half, Exp::ZERO, &coeffs)
        }
    }
}

/// Weight-`2k+2`-type multipliers: `omega_0 = 1`, `omega_1 = -j'`, then
/// `E4, E6, E4^2, E4 E6, Delta, E4^2 E6`.
pub fn omega(k: usize, trunc: i64) -> QSeries {
    use GeneratorId::*;
    match k {
        0 => QSeries::one(trunc),
        1 => -gen(JPrime, trunc),
        2 => gen(E4, trunc),
        3 => gen(E6, trunc),
        4 => gen(E4, trunc).pow(2).expect("power"),
        5 => &gen(E4, trunc) * &gen(E6, trunc),
        6 => gen(Delta, trunc),
        7 => &gen(E4, trunc).pow(2).expect("power") * &gen(E6, trunc),
        _ => panic!("omega index {k} out of range"),
    }
}

/// Weight of `omega_k`.
pub fn omega_weight(k: usize) -> i64 {
    [0, 2, 4, 6, 8, 10, 12, 14][k]
}

/// `E4^a E6^b` known below `q^trunc`.
pub fn e4e6_monomial(a: u32, b: u32, trunc: i64) -> QSeries {
    let e4 = gen(GeneratorId::E4, trunc);
    let e6 = gen(GeneratorId::E6, trunc);
    &e4.pow(a as i64).expect("power") * &e6.pow(b as i64).expect("power")
}

/// Express a level-one modular form of weight `k` in the monomials
/// `E4^a E6^b` (`4a + 6b = k`, `a` descending). Verified on all known coefficients.
pub fn express_in_e4e6(f: &QSeries, k: i64) -> Option<Vec<((u32, u32), Rational)>> {
    let mons: Vec<(u32, u32)> = (0..=k / 6)
        .filter(|b| (k - 6 * b) % 4 == 0 && k - 6 * b >= 0)
        .map(|b| (((k - 6 * b) / 4) as u32, b as u32))
        .collect();
    if mons.is_empty() {
        return f.is_zero().then(Vec::new);
    }
    let trunc = f.trunc().as_int()?;
    if trunc < mons.len() as i64 {
        return None;
    }
    let series: Vec<QSeries> = mons.iter().map(|&(a, b)| e4e6_monomial(a, b, trunc)).collect();
    let m = mons.len();
    // augmented system on the first m coefficients: sum x_i s_i(n) = f(n)
    let mut rows = Vec::new();
    for n in 0..m as i64 {
        let mut row: Vec<Rational> = series.iter().map(|s| s.coeff_int(n)).collect();
        row.push(f.coeff_int(n));
        rows.push(row);
    }
    let x = solve_square(rows)?;
    let mut acc = QSeries::constant(0, trunc);
    for (s, c) in series.iter().zip(&x) {
        acc = &acc + &s.scale(c);
    }
    acc.agrees_with(f).then(|| mons.into_iter().zip(x).collect())
}

fn solve_square(mut rows: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = rows.len();
    for c in 0..n {
        let p = (c..n).find(|&i| rows[i][c] != 0)?;
        rows.swap(c, p);
        let piv = rows[c][c].clone();
        for j in c..=n {
            rows[c][j] /= &piv;
        }
        for i in 0..n {
            if i != c && rows[i][c] != 0 {
                let f = rows[i][c].clone();
                for j in c..=n {
                    let v = Rational::from(&f * &rows[c][j]);
                    rows[i][j] -= v;
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

/// Rebuild a modular form from its `E4^a E6^b` expansion at a new truncation.
pub fn from_e4e6(expansion: &[((u32, u32), Rational)], trunc: i64) -> QSeries {
    let mut acc = QSeries::constant(0, trunc);
    for ((a, b), c) in expansion {
        acc = &acc + &e4e6_monomial(*a, *b, trunc).scale(c);
    }
    acc
}
