//! Truncated Laurent series in `q^(1/2)` with exact rational coefficients.
//!
//! Exponents are tracked globally in half-steps. A series with [`Unit::One`]
//! only carries integer exponents; mixing it with a [`Unit::Half`] series
//! promotes it. Coefficients are stored as integer numerators over one common
//! positive denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rayon::prelude::*;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exponent of `q`, stored as a count of half-steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exp(i64);

impl Exp {
    pub const ZERO: Exp = Exp(0);

    pub const fn int(n: i64) -> Exp {
        Exp(2 * n)
    }

    pub const fn halves(h: i64) -> Exp {
        Exp(h)
    }

    pub const fn half_steps(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    /// Integer value of an integral exponent.
    pub fn as_int(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_rational(self) -> Rational {
        Rational::from((self.0, 2))
    }
}

impl fmt::Display for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Add for Exp {
    type Output = Exp;
    fn add(self, o: Exp) -> Exp {
        Exp(self.0 + o.0)
    }
}

impl Sub for Exp {
    type Output = Exp;
    fn sub(self, o: Exp) -> Exp {
        Exp(self.0 - o.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "1/2")]
    Half,
}

impl Unit {
    /// Number of half-steps per stored slot.
    pub const fn step(self) -> i64 {
        match self {
            Unit::One => 2,
            Unit::Half => 1,
        }
    }

    fn join(self, o: Unit) -> Unit {
        if self == Unit::One && o == Unit::One {
            Unit::One
        } else {
            Unit::Half
        }
    }
}

/// Order of vanishing of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// Leading exponent with a nonzero coefficient.
    Order(Exp),
    /// No nonzero coefficient below the truncation.
    ZeroToTrunc(Exp),
}

impl Valuation {
    /// Lower bound on the true order: the order itself, or the truncation.
    pub fn at_least(self) -> Exp {
        match self {
            Valuation::Order(e) | Valuation::ZeroToTrunc(e) => e,
        }
    }

    pub fn order(self) -> Option<Exp> {
        match self {
            Valuation::Order(e) => Some(e),
            Valuation::ZeroToTrunc(_) => None,
        }
    }

    pub fn min(self, o: Valuation) -> Valuation {
        use Valuation::*;
        match (self, o) {
            (Order(a), Order(b)) => Order(a.min(b)),
            (Order(a), ZeroToTrunc(t)) | (ZeroToTrunc(t), Order(a)) => {
                if a < t {
                    Order(a)
                } else {
                    ZeroToTrunc(t)
                }
            }
            (ZeroToTrunc(a), ZeroToTrunc(b)) => ZeroToTrunc(a.min(b)),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Order(e) => write!(f, "{e}"),
            Valuation::ZeroToTrunc(t) => write!(f, "zero below {t}"),
        }
    }
}

/// Exact truncated q-series: known coefficients on `[lo, trunc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    unit: Unit,
    lo: i64,
    trunc: i64,
    num: Vec<Integer>,
    den: Integer,
}

const PAR_THRESHOLD: usize = 192;

impl QSeries {
    /// Series from integer numerators over a common denominator.
    /// `lo` and `trunc` are half-step exponents aligned to `unit`.
    pub fn from_parts(unit: Unit, lo: Exp, num: Vec<Integer>, den: Integer) -> QSeries {
        assert!(!num.is_empty(), "series needs at least one slot");
        assert!(den != 0, "zero denominator");
        let step = unit.step();
        assert!(lo.0.rem_euclid(step) == 0, "lo not aligned to unit");
        let trunc = lo.0 + step * num.len() as i64;
        let mut s = QSeries { unit, lo: lo.0, trunc, num, den };
        if s.den < 0 {
            s.den = -s.den;
            for c in &mut s.num {
                *c = -std::mem::take(c);
            }
        }
        s.normalize();
        s
    }

    pub fn from_integers(unit: Unit, lo: Exp, num: Vec<Integer>) -> QSeries {
        QSeries::from_parts(unit, lo, num, Integer::from(1))
    }

    pub fn from_rationals(unit: Unit, lo: Exp, coeffs: &[Rational]) -> QSeries {
        let mut den = Integer::from(1);
        for c in coeffs {
            den.lcm_mut(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| Integer::from(c.numer() * Integer::from(&den / c.denom())))
            .collect();
        QSeries::from_parts(unit, lo, num, den)
    }

    /// Integer-exponent series `sum c_i q^(lo+i)` known below `lo + len`.
    pub fn from_int_coeffs(lo: i64, coeffs: Vec<Integer>) -> QSeries {
        QSeries::from_integers(Unit::One, Exp::int(lo), coeffs)
    }

    pub fn zero(unit: Unit, trunc: Exp) -> QSeries {
        let step = unit.step();
        assert!(trunc.0.rem_euclid(step) == 0);
        QSeries { unit, lo: trunc.0 - step, trunc: trunc.0, num: vec![Integer::new()], den: Integer::from(1) }
    }

    pub fn constant(c: impl Into<Rational>, trunc: i64) -> QSeries {
        QSeries::monomial(Exp::ZERO, c, Exp::int(trunc))
    }

    pub fn one(trunc: i64) -> QSeries {
        QSeries::constant(1, trunc)
    }

    /// `c q^e` known below `trunc`.
    pub fn monomial(e: Exp, c: impl Into<Rational>, trunc: Exp) -> QSeries {
        let c: Rational = c.into();
        let unit = if e.is_integral() && trunc.is_integral() { Unit::One } else { Unit::Half };
        if e >= trunc {
            return QSeries::zero(unit, trunc);
        }
        let step = unit.step();
        let len = ((trunc.0 - e.0) / step) as usize;
        let mut num = vec![Integer::new(); len];
        let (n, d) = c.into_numer_denom();
        num[0] = n;
        QSeries::from_parts(unit, e, num, d)
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    /// Lowest stored exponent.
    pub fn lo(&self) -> Exp {
        Exp(self.lo)
    }

    /// Exclusive bound below which all coefficients are known.
    pub fn trunc(&self) -> Exp {
        Exp(self.trunc)
    }

    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    pub fn numerators(&self) -> &[Integer] {
        &self.num
    }

    fn step(&self) -> i64 {
        self.unit.step()
    }

    fn slot(&self, e: Exp) -> Option<usize> {
        if e.0 < self.lo || e.0 >= self.trunc || (e.0 - self.lo) % self.step() != 0 {
            return None;
        }
        Some(((e.0 - self.lo) / self.step()) as usize)
    }

    /// Coefficient of `q^e`, or `None` when `e` is at or beyond the truncation.
    pub fn try_coeff(&self, e: Exp) -> Option<Rational> {
        if e.0 >= self.trunc {
            return None;
        }
        Some(match self.slot(e) {
            Some(i) => Rational::from((&self.num[i], &self.den)),
            None => Rational::new(),
        })
    }

    /// Coefficient of `q^e`. Panics when `e` is not below the truncation.
    pub fn coeff(&self, e: Exp) -> Rational {
        self.try_coeff(e)
            .unwrap_or_else(|| panic!("coefficient at {e} is beyond truncation {}", self.trunc()))
    }

    /// Coefficient of `q^n` for integer `n`.
    pub fn coeff_int(&self, n: i64) -> Rational {
        self.coeff(Exp::int(n))
    }

    /// All stored `(exponent, coefficient)` pairs, zeros included.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, Rational)> + '_ {
        let step = self.step();
        self.num
            .iter()
            .enumerate()
            .map(move |(i, c)| (Exp(self.lo + step * i as i64), Rational::from((c, &self.den))))
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| *c == 0)
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::ZeroToTrunc(self.trunc())
        } else {
            Valuation::Order(self.lo())
        }
    }

    /// Effective lowest exponent: the truncation for a zero series.
    fn eff_lo(&self) -> i64 {
        if self.is_zero() {
            self.trunc
        } else {
            self.lo
        }
    }

    fn normalize(&mut self) {
        let lead = self.num.iter().position(|c| *c != 0);
        match lead {
            None => {
                let step = self.step();
                self.lo = self.trunc - step;
                self.num = vec![Integer::new()];
                self.den = Integer::from(1);
                return;
            }
            Some(0) => {}
            Some(k) => {
                self.num.drain(..k);
                self.lo += self.step() * k as i64;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g == 1 {
                break;
            }
            g.gcd_mut(c);
        }
        if g != 1 {
            self.den /= &g;
            for c in &mut self.num {
                c.div_exact_mut(&g);
            }
        }
    }

    /// Same series in half-step slots.
    pub fn to_half(&self) -> QSeries {
        if self.unit == Unit::Half {
            return self.clone();
        }
        let mut num = Vec::with_capacity(2 * self.num.len());
        for c in &self.num {
            num.push(c.clone());
            num.push(Integer::new());
        }
        QSeries { unit: Unit::Half, lo: self.lo, trunc: self.trunc, num, den: self.den.clone() }
    }

    fn with_unit(&self, unit: Unit) -> std::borrow::Cow<'_, QSeries> {
        if self.unit == unit {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.to_half())
        }
    }

    /// Demote to integer exponents. Fails when a half-integer coefficient is nonzero.
    pub fn to_integral(&self) -> Result<QSeries> {
        if self.unit == Unit::One {
            return Ok(self.clone());
        }
        let mut num = Vec::new();
        let mut lo = None;
        for (e, c) in self.num.iter().enumerate().map(|(i, c)| (self.lo + i as i64, c)) {
            if e % 2 != 0 {
                if *c != 0 {
                    return Err(Error::NotIntegral { exponent: Exp(e).to_string() });
                }
            } else {
                lo.get_or_insert(e);
                num.push(c.clone());
            }
        }
        let trunc = self.trunc - self.trunc.rem_euclid(2);
        let lo = match lo {
            Some(l) if l < trunc => l,
            _ => return Ok(QSeries::zero(Unit::One, Exp(trunc))),
        };
        num.truncate(((trunc - lo) / 2) as usize);
        Ok(QSeries::from_parts(Unit::One, Exp(lo), num, self.den.clone()))
    }

    /// Drop knowledge at and beyond `trunc`.
    pub fn truncate(&self, trunc: Exp) -> QSeries {
        if trunc.0 >= self.trunc {
            return self.clone();
        }
        let unit = if trunc.is_integral() { self.unit } else { Unit::Half };
        let s = self.with_unit(unit);
        if trunc.0 <= s.lo {
            return QSeries::zero(unit, Exp(trunc.0 - trunc.0.rem_euclid(unit.step())));
        }
        let len = ((trunc.0 - s.lo) / unit.step()) as usize;
        QSeries::from_parts(unit, s.lo(), s.num[..len].to_vec(), s.den.clone())
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: Exp) -> QSeries {
        let mut s = if e.is_integral() { self.clone() } else { self.to_half() };
        s.lo += e.0;
        s.trunc += e.0;
        s
    }

    pub fn scale(&self, r: &Rational) -> QSeries {
        if *r == 0 {
            return QSeries::zero(self.unit, self.trunc());
        }
        let num = self.num.iter().map(|c| Integer::from(c * r.numer())).collect();
        QSeries::from_parts(self.unit, self.lo(), num, Integer::from(&self.den * r.denom()))
    }

    pub fn scale_int(&self, k: i64) -> QSeries {
        self.scale(&Rational::from(k))
    }

    /// `sum c q^e -> sum e c q^e`, the normalized derivative `(1/2 pi i) d/dz`.
    pub fn derive(&self) -> QSeries {
        let step = self.step();
        let num = self
            .num
            .iter()
            .enumerate()
            .map(|(i, c)| Integer::from(c * (self.lo + step * i as i64)))
            .collect();
        QSeries::from_parts(self.unit, self.lo(), num, Integer::from(&self.den * 2))
    }

    /// Image under `z -> z + 1`: half-integer exponents change sign.
    pub fn t_action(&self) -> QSeries {
        if self.unit == Unit::One {
            return self.clone();
        }
        let num = self
            .num
            .iter()
            .enumerate()
            .map(|(i, c)| if (self.lo + i as i64) % 2 != 0 { Integer::from(-c) } else { c.clone() })
            .collect();
        QSeries::from_parts(Unit::Half, self.lo(), num, self.den.clone())
    }

    fn filter_parity(&self, odd: bool) -> QSeries {
        if self.unit == Unit::One {
            return if odd { QSeries::zero(Unit::Half, self.trunc()) } else { self.clone() };
        }
        let num = self
            .num
            .iter()
            .enumerate()
            .map(|(i, c)| if ((self.lo + i as i64) % 2 != 0) == odd { c.clone() } else { Integer::new() })
            .collect();
        QSeries::from_parts(Unit::Half, self.lo(), num, self.den.clone())
    }

    /// Terms with integer exponents.
    pub fn integral_part(&self) -> QSeries {
        self.filter_parity(false)
    }

    /// Terms with half-integer exponents.
    pub fn half_part(&self) -> QSeries {
        self.filter_parity(true)
    }

    /// Terms with exponent strictly below `e`, as exact `(exponent, coefficient)` pairs.
    pub fn terms_below(&self, e: Exp) -> Vec<(Exp, Rational)> {
        self.terms().filter(|(x, c)| *x < e && *c != 0).collect()
    }

    /// Multiplicative inverse. Requires a nonzero leading coefficient.
    pub fn invert(&self) -> Result<QSeries> {
        if self.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let c = &self.num[0];
        let len = self.num.len();
        let mut pows = Vec::with_capacity(len);
        pows.push(Integer::from(1));
        for k in 1..len {
            pows.push(Integer::from(&pows[k - 1] * c));
        }
        // b_n = B_n / c^(n+1)
        let mut big = Vec::with_capacity(len);
        big.push(Integer::from(1));
        for n in 1..len {
            let mut acc = Integer::new();
            for k in 1..=n {
                if self.num[k] != 0 {
                    acc += Integer::from(&self.num[k] * &big[n - k]) * &pows[k - 1];
                }
            }
            big.push(-acc);
        }
        let num = big
            .into_iter()
            .enumerate()
            .map(|(n, b)| b * &self.den * &pows[len - 1 - n])
            .collect();
        let den = Integer::from(&pows[len - 1] * c);
        Ok(QSeries::from_parts(self.unit, Exp(-self.lo), num, den))
    }

    pub fn div(&self, o: &QSeries) -> Result<QSeries> {
        Ok(self * &o.invert()?)
    }

    pub fn pow(&self, n: i64) -> Result<QSeries> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        if n == 0 {
            let t = self.trunc - self.eff_lo();
            return Ok(QSeries::monomial(Exp::ZERO, 1, Exp(t)));
        }
        let mut acc: Option<QSeries> = None;
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = &base * &base;
        }
        Ok(acc.expect("n > 0"))
    }

    /// Exact equality on the common window of known coefficients.
    pub fn agrees_with(&self, o: &QSeries) -> bool {
        (self - o).is_zero()
    }

    /// `self == r * o` on the common window for some rational `r`; returns `r`.
    pub fn ratio_to(&self, o: &QSeries) -> Option<Rational> {
        if o.is_zero() {
            return self.is_zero().then(Rational::new);
        }
        let lead = o.lo();
        let r = self.try_coeff(lead)? / o.coeff(lead);
        (self - &o.scale(&r)).is_zero().then_some(r)
    }

    pub fn to_json(&self) -> SeriesJson {
        let step = self.step();
        SeriesJson {
            unit: self.unit,
            lo: self.lo / step,
            trunc: self.trunc / step,
            coeffs: self
                .num
                .iter()
                .map(|c| {
                    let r = Rational::from((c, &self.den));
                    format!("{}/{}", r.numer(), r.denom())
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<QSeries> {
        let step = j.unit.step();
        if j.trunc <= j.lo || (j.trunc - j.lo) as usize != j.coeffs.len() {
            return Err(Error::Parse(format!(
                "series window [{}, {}) does not match {} coefficients",
                j.lo,
                j.trunc,
                j.coeffs.len()
            )));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(QSeries::from_rationals(j.unit, Exp(j.lo * step), &coeffs))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n: Integer = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            let d: Integer = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::from((n, d))
        }
        None => Rational::from(s.parse::<Integer>().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?),
    };
    Ok(parsed)
}

/// Serialized form: exponents counted in multiples of `unit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub unit: Unit,
    pub lo: i64,
    pub trunc: i64,
    pub coeffs: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SeriesJson::deserialize(d)?;
        QSeries::from_json(&j).map_err(serde::de::Error::custom)
    }
}

fn add_sub(a: &QSeries, b: &QSeries, negate: bool) -> QSeries {
    let unit = a.unit.join(b.unit);
    let (a, b) = (a.with_unit(unit), b.with_unit(unit));
    let step = unit.step();
    let trunc = a.trunc.min(b.trunc);
    let lo = a.lo.min(b.lo);
    if lo >= trunc {
        return QSeries::zero(unit, Exp(trunc));
    }
    let den = Integer::from(a.den.lcm_ref(&b.den));
    let fa = Integer::from(&den / &a.den);
    let fb = Integer::from(&den / &b.den);
    let len = ((trunc - lo) / step) as usize;
    let mut num = vec![Integer::new(); len];
    for (i, c) in a.num.iter().enumerate() {
        let k = ((a.lo - lo) / step) as usize + i;
        if k < len {
            num[k] += Integer::from(c * &fa);
        }
    }
    for (i, c) in b.num.iter().enumerate() {
        let k = ((b.lo - lo) / step) as usize + i;
        if k < len {
            if negate {
                num[k] -= Integer::from(c * &fb);
            } else {
                num[k] += Integer::from(c * &fb);
            }
        }
    }
    QSeries::from_parts(unit, Exp(lo), num, den)
}

fn convolve(a: &[Integer], b: &[Integer], len: usize) -> Vec<Integer> {
    let term = |i: usize| {
        let mut acc = Integer::new();
        let j0 = i.saturating_sub(b.len() - 1);
        let j1 = i.min(a.len() - 1);
        for j in j0..=j1 {
            if a[j] != 0 && b[i - j] != 0 {
                acc += Integer::from(&a[j] * &b[i - j]);
            }
        }
        acc
    };
    if len >= PAR_THRESHOLD {
        (0..len).into_par_iter().map(term).collect()
    } else {
        (0..len).map(term).collect()
    }
}

fn multiply(a: &QSeries, b: &QSeries) -> QSeries {
    let unit = a.unit.join(b.unit);
    let (a, b) = (a.with_unit(unit), b.with_unit(unit));
    let step = unit.step();
    let (la, lb) = (a.eff_lo(), b.eff_lo());
    let lo = la + lb;
    let trunc = (la + b.trunc).min(lb + a.trunc);
    if a.is_zero() || b.is_zero() || trunc <= lo {
        return QSeries::zero(unit, Exp(trunc));
    }
    let len = ((trunc - lo) / step) as usize;
    let num = convolve(&a.num, &b.num, len);
    QSeries::from_parts(unit, Exp(lo), num, Integer::from(&a.den * &b.den))
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        add_sub(self, o, false)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        add_sub(self, o, true)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        multiply(self, o)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let num = self.num.iter().map(|c| Integer::from(-c)).collect();
        QSeries::from_parts(self.unit, self.lo(), num, self.den.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QSeries {
            type Output = QSeries;
            fn $m(self, o: QSeries) -> QSeries {
                (&self).$m(&o)
            }
        }
        impl $tr<&QSeries> for QSeries {
            type Output = QSeries;
            fn $m(self, o: &QSeries) -> QSeries {
                (&self).$m(o)
            }
        }
        impl $tr<QSeries> for &QSeries {
            type Output = QSeries;
            fn $m(self, o: QSeries) -> QSeries {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms().filter(|(_, c)| *c != 0).take(8) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) q^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(lo: i64, c: &[i64]) -> QSeries {
        QSeries::from_int_coeffs(lo, c.iter().map(|&x| Integer::from(x)).collect())
    }

    #[test]
    fn geometric_inverse() {
        let a = s(0, &[1, -1, 0, 0, 0, 0]);
        let inv = a.invert().unwrap();
        for n in 0..6 {
            assert_eq!(inv.coeff_int(n), 1);
        }
        assert_eq!(inv.trunc(), Exp::int(6));
    }

    #[test]
    fn truncation_of_product_with_pole() {
        let a = s(-1, &[1, 2, 3]);
        let b = s(0, &[1, 1, 1, 1]);
        let p = &a * &b;
        assert_eq!(p.lo(), Exp::int(-1));
        assert_eq!(p.trunc(), Exp::int(2));
    }

    #[test]
    fn half_unit_mixing() {
        let h = QSeries::monomial(Exp::halves(1), 1, Exp::int(4));
        let one = s(0, &[1, 1, 1, 1]);
        let p = &h * &one;
        assert_eq!(p.unit(), Unit::Half);
        assert_eq!(p.coeff(Exp::halves(3)), 1);
        assert_eq!(p.coeff(Exp::int(1)), 0);
        assert_eq!(p.trunc(), Exp::int(4));
    }

    #[test]
    fn zero_inverse_errors() {
        let z = QSeries::zero(Unit::One, Exp::int(5));
        assert!(matches!(z.invert(), Err(Error::ZeroLeadingCoefficient)));
    }

    #[test]
    fn json_text() {
        let a = QSeries::from_rationals(Unit::Half, Exp::halves(-1), &[Rational::from((1, 2)), Rational::from(-3)]);
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"unit":"1/2","lo":-1,"trunc":1,"coeffs":["1/2","-3/1"]}"#);
        let b: QSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(a, b);
    }
}
