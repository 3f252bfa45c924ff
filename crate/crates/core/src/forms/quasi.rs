//! Quasimodular forms as polynomials in `E2` with modular coefficients.

use rug::Rational;

use crate::diff::Differential;
use crate::qseries::{Exp, QSeries, Unit, Valuation};

use super::{gen, GeneratorId};

/// `sum_i E2^i M_i` of weight `w`, where `M_i` is modular of weight `w - 2i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiForm {
    weight: i64,
    parts: Vec<QSeries>,
}

fn e2_for(s: &QSeries) -> QSeries {
    let need = s.trunc().half_steps() - s.valuation().at_least().half_steps();
    gen(GeneratorId::E2, need / 2 + 2)
}

/// `M' - (k/12) E2 M` for a modular series of weight `k`.
pub fn serre_modular(m: &QSeries, k: i64) -> QSeries {
    if m.is_zero() {
        return m.clone();
    }
    &m.derive() - &(&e2_for(m) * m).scale(&Rational::from((k, 12)))
}

impl QuasiForm {
    pub fn new(weight: i64, parts: Vec<QSeries>) -> QuasiForm {
        assert!(!parts.is_empty(), "quasimodular form needs a part");
        QuasiForm { weight, parts }.trimmed()
    }

    pub fn modular(weight: i64, m: QSeries) -> QuasiForm {
        QuasiForm::new(weight, vec![m])
    }

    /// `A + E2 B + E2^2 C`.
    pub fn from_triple(weight: i64, a: QSeries, b: QSeries, c: QSeries) -> QuasiForm {
        QuasiForm::new(weight, vec![a, b, c])
    }

    fn trimmed(mut self) -> QuasiForm {
        while self.parts.len() > 1 && self.parts.last().is_some_and(|p| p.is_zero()) {
            self.parts.pop();
        }
        self
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn depth(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[QSeries] {
        &self.parts
    }

    pub fn trunc(&self) -> Exp {
        self.parts.iter().map(|p| p.trunc()).min().expect("nonempty")
    }

    fn zero_like(&self) -> QSeries {
        let t = self.trunc();
        QSeries::zero(if t.is_integral() { Unit::One } else { Unit::Half }, t)
    }

    /// Coefficient of `E2^i`.
    pub fn part(&self, i: usize) -> QSeries {
        self.parts.get(i).cloned().unwrap_or_else(|| self.zero_like())
    }

    pub fn a(&self) -> QSeries {
        self.part(0)
    }

    pub fn b(&self) -> QSeries {
        self.part(1)
    }

    pub fn c(&self) -> QSeries {
        self.part(2)
    }

    /// `-B/2 - E2 C`.
    pub fn g_part(&self) -> QSeries {
        let e2 = gen(GeneratorId::E2, self.trunc().half_steps() / 2 + 2);
        &self.b().scale(&Rational::from((-1, 2))) - &(&e2 * &self.c())
    }

    /// `C`.
    pub fn h_part(&self) -> QSeries {
        self.c()
    }

    /// `sum_i E2^i M_i` as a single series.
    pub fn collapse(&self) -> QSeries {
        let mut acc = self.parts.last().expect("nonempty").clone();
        if self.parts.len() == 1 {
            return acc;
        }
        let e2 = gen(GeneratorId::E2, self.trunc().half_steps() / 2 + 2);
        for p in self.parts.iter().rev().skip(1) {
            acc = &(&acc * &e2) + p;
        }
        acc
    }

    pub fn truncate(&self, t: Exp) -> QuasiForm {
        QuasiForm::new(self.weight, self.parts.iter().map(|p| p.truncate(t)).collect())
    }

    /// Product with a modular series of weight `k`.
    pub fn mul_modular(&self, m: &QSeries, k: i64) -> QuasiForm {
        QuasiForm::new(self.weight + k, self.parts.iter().map(|p| p * m).collect())
    }

    /// Multiply by `E2`.
    pub fn mul_e2(&self) -> QuasiForm {
        let mut parts = vec![self.zero_like()];
        parts.extend(self.parts.iter().cloned());
        QuasiForm::new(self.weight + 2, parts)
    }

    pub fn mul(&self, o: &QuasiForm) -> QuasiForm {
        let n = self.parts.len() + o.parts.len() - 1;
        let mut parts: Vec<Option<QSeries>> = vec![None; n];
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in o.parts.iter().enumerate() {
                let t = a * b;
                parts[i + j] = Some(match parts[i + j].take() {
                    None => t,
                    Some(x) => &x + &t,
                });
            }
        }
        QuasiForm::new(self.weight + o.weight, parts.into_iter().map(|p| p.expect("filled")).collect())
    }

    pub fn add_form(&self, o: &QuasiForm) -> QuasiForm {
        assert_eq!(self.weight, o.weight, "adding forms of different weight");
        let n = self.parts.len().max(o.parts.len());
        QuasiForm::new(self.weight, (0..n).map(|i| &self.part(i) + &o.part(i)).collect())
    }

    pub fn scale_by(&self, r: &Rational) -> QuasiForm {
        QuasiForm::new(self.weight, self.parts.iter().map(|p| p.scale(r)).collect())
    }

    /// Plain derivative `(1 / 2 pi i) d/dz`.
    pub fn derivative(&self) -> QuasiForm {
        let e4 = gen(GeneratorId::E4, self.trunc().half_steps() / 2 + 2);
        let n = self.parts.len() + 1;
        let mut out: Vec<QSeries> = vec![self.zero_like(); n];
        for (i, m) in self.parts.iter().enumerate() {
            let k = self.weight - 2 * i as i64;
            let ii = i as i64;
            out[i] = &out[i] + &serre_modular(m, k);
            out[i + 1] = &out[i + 1] + &m.scale(&Rational::from((ii + k, 12)));
            if i > 0 {
                out[i - 1] = &out[i - 1] - &(&e4 * m).scale(&Rational::from((ii, 12)));
            }
        }
        QuasiForm::new(self.weight + 2, out)
    }

    /// `D - (index/12) E2`.
    pub fn serre_at(&self, index: i64) -> QuasiForm {
        self.derivative().add_form(&self.mul_e2().scale_by(&Rational::from((-index, 12))))
    }

    /// Serre derivative of index `weight - depth`; preserves depth.
    pub fn serre(&self) -> QuasiForm {
        self.serre_at(self.weight - self.depth() as i64)
    }

    /// Divide every part by a series (typically `Delta`).
    pub fn div_series(&self, s: &QSeries, weight: i64) -> crate::Result<QuasiForm> {
        let inv = s.invert()?;
        Ok(QuasiForm::new(self.weight - weight, self.parts.iter().map(|p| p * &inv).collect()))
    }

    pub fn is_zero_form(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn agrees_with(&self, o: &QuasiForm) -> bool {
        self.weight == o.weight
            && (0..self.parts.len().max(o.parts.len())).all(|i| self.part(i).agrees_with(&o.part(i)))
    }

    pub fn form_valuation(&self) -> Valuation {
        self.collapse().valuation()
    }
}

impl Differential for QuasiForm {
    fn derive(&self) -> Self {
        self.derivative()
    }
    fn add(&self, o: &Self) -> Self {
        self.add_form(o)
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
    fn mul_series(&self, s: &QSeries) -> Self {
        // treated as weight-0 modular multiplier
        self.mul_modular(s, 0)
    }
    fn valuation(&self) -> Valuation {
        self.form_valuation()
    }
}
