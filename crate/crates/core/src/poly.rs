//! Dense univariate polynomials with rational coefficients.

use std::fmt;

use rug::{Integer, Rational};

use crate::qseries::QSeries;

/// Coefficients in ascending degree; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn from_ints(c: &[i64]) -> Poly {
        Poly(c.iter().map(|&v| Rational::from(v)).collect()).trimmed()
    }

    pub fn from_integers(c: &[Integer]) -> Poly {
        Poly(c.iter().map(|v| Rational::from(v.clone())).collect()).trimmed()
    }

    pub(crate) fn trimmed(mut self) -> Poly {
        while self.0.last().is_some_and(|c| *c == 0) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rational::new(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += Rational::from(a * b);
            }
        }
        Poly(out).trimmed()
    }

    pub fn product(factors: &[Poly]) -> Poly {
        factors.iter().fold(Poly::from_ints(&[1]), |acc, f| acc.mul(f))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        Poly((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect()).trimmed()
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        Poly(self.0.iter().map(|c| Rational::from(c * r)).collect()).trimmed()
    }

    /// `p(1 - x)`.
    pub fn reflect(&self) -> Poly {
        let one_minus = Poly::from_ints(&[1, -1]);
        let mut acc = Poly::default();
        for c in self.0.iter().rev() {
            acc = acc.mul(&one_minus).add(&Poly(vec![c.clone()]));
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute a series by Horner's rule.
    pub fn eval_series(&self, x: &QSeries, trunc: i64) -> QSeries {
        let mut acc = QSeries::constant(0, trunc);
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + &QSeries::constant(c.clone(), trunc);
        }
        if self.is_zero() {
            QSeries::constant(0, trunc)
        } else {
            acc
        }
    }

    /// Equal to `o` up to a nonzero rational factor.
    pub fn proportional(&self, o: &Poly) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        if self.0.len() != o.0.len() {
            return false;
        }
        let r = Rational::from(self.0.last().unwrap() / o.0.last().unwrap());
        *self == o.scale(&r)
    }

    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.0.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let a = Rational::from(c.abs_ref());
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coef = if a == 1 && i > 0 { String::new() } else { a.to_string() };
            match i {
                0 => s.push_str(&a.to_string()),
                1 => s.push_str(&format!("{coef}{var}")),
                _ => s.push_str(&format!("{coef}{var}^{i}")),
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}
