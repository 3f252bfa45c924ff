//! Operations shared by q-series, quasimodular forms and logarithmic forms.

use rug::Rational;

use crate::qseries::{QSeries, Valuation};

pub trait Differential: Clone {
    /// `(1 / 2 pi i) d/dz`.
    fn derive(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    /// Multiply by a holomorphic q-series.
    fn mul_series(&self, s: &QSeries) -> Self;
    fn valuation(&self) -> Valuation;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Rational::from(-1)))
    }

    fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derive())
    }

    fn is_zero(&self) -> bool {
        matches!(self.valuation(), Valuation::ZeroToTrunc(_))
    }
}

impl Differential for QSeries {
    fn derive(&self) -> Self {
        QSeries::derive(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, r: &Rational) -> Self {
        QSeries::scale(self, r)
    }
    fn mul_series(&self, s: &QSeries) -> Self {
        self * s
    }
    fn valuation(&self) -> Valuation {
        QSeries::valuation(self)
    }
}

/// `sum_j (c_j * s_j) * f_j`: a linear combination with series coefficients.
pub fn combine<F: Differential>(terms: &[(Rational, Option<&QSeries>, &F)]) -> F {
    let mut acc: Option<F> = None;
    for (c, s, f) in terms {
        if *c == 0 {
            continue;
        }
        let t = match s {
            Some(s) => f.mul_series(s).scale(c),
            None => f.scale(c),
        };
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t),
        });
    }
    acc.unwrap_or_else(|| terms[0].2.scale(&Rational::new()))
}

/// Serre derivative `f' - (k/12) E2 f`.
pub fn serre<F: Differential>(f: &F, k: i64, e2: &QSeries) -> F {
    f.derive().sub(&f.mul_series(e2).scale(&Rational::from((k, 12))))
}
