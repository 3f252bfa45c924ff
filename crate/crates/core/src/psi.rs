//! The kernel `psi` of the Laplace-type transform, split into powers of `z`
//! with symbolic constant factors, and its principal part at the cusp.

use std::fmt;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::qseries::{Exp, QSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    /// Eigenvalue `(-1)^(d/4)`.
    Plus,
    /// Eigenvalue `(-1)^(d/4 + 1)`.
    Minus,
}

impl Sign {
    /// `+1` for the plus construction, `-1` for the minus one.
    pub fn epsilon(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "plus" | "+" => Some(Sign::Plus),
            "minus" | "-" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// The constant `i^i_pow pi^pi_pow (log 2)^ln2_pow`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tag {
    pub i_pow: u8,
    pub pi_pow: i32,
    pub ln2_pow: u32,
}

impl Tag {
    pub const ONE: Tag = Tag { i_pow: 0, pi_pow: 0, ln2_pow: 0 };

    pub const fn new(i_pow: u8, pi_pow: i32, ln2_pow: u32) -> Tag {
        Tag { i_pow: i_pow % 4, pi_pow, ln2_pow }
    }

    pub fn mul(self, o: Tag) -> Tag {
        Tag::new((self.i_pow + o.i_pow) % 4, self.pi_pow + o.pi_pow, self.ln2_pow + o.ln2_pow)
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.i_pow {
            0 => {}
            1 => parts.push("i".to_string()),
            2 => parts.push("(-1)".to_string()),
            _ => parts.push("(-i)".to_string()),
        }
        match self.pi_pow {
            0 => {}
            1 => parts.push("pi".into()),
            p => parts.push(format!("pi^{p}")),
        }
        match self.ln2_pow {
            0 => {}
            1 => parts.push("ln2".into()),
            p => parts.push(format!("ln2^{p}")),
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Exact linear combination of tagged constants.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Symbolic(pub Vec<(Rational, Tag)>);

impl Symbolic {
    pub fn zero() -> Symbolic {
        Symbolic(Vec::new())
    }

    pub fn add_term(&mut self, c: Rational, tag: Tag) {
        if c == 0 {
            return;
        }
        // fold i^2 = -1 into the rational
        let (c, tag) = if tag.i_pow >= 2 { (-c, Tag::new(tag.i_pow - 2, tag.pi_pow, tag.ln2_pow)) } else { (c, tag) };
        if let Some(e) = self.0.iter_mut().find(|(_, t)| *t == tag) {
            e.0 += c;
        } else {
            self.0.push((c, tag));
        }
        self.0.retain(|(c, _)| *c != 0);
        self.0.sort_by(|a, b| a.1.cmp(&b.1));
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every term is real.
    pub fn is_real(&self) -> bool {
        self.0.iter().all(|(_, t)| t.i_pow == 0)
    }
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let s: Vec<String> = self.0.iter().map(|(c, t)| if *t == Tag::ONE { c.to_string() } else { format!("({c})*{t}") }).collect();
        f.write_str(&s.join(" + "))
    }
}

impl Serialize for Symbolic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct T<'a> {
            coeff: String,
            #[serde(flatten)]
            tag: &'a Tag,
        }
        let v: Vec<T> = self.0.iter().map(|(c, tag)| T { coeff: c.to_string(), tag }).collect();
        v.serialize(s)
    }
}

/// `z^z_pow * tag * scale * series(q)`.
#[derive(Clone, Debug)]
pub struct PsiTerm {
    pub z_pow: u32,
    pub tag: Tag,
    pub scale: Rational,
    pub series: QSeries,
}

/// `psi(z) = sum_terms`, with `phi(z) = z^(d/2-2) psi(-1/z)` and the principal data
/// `psi = sum a_k q^-k - i z sum b_k q^-k + O(e^(-C Im z))`.
#[derive(Clone, Debug)]
pub struct PsiExpansion {
    pub d: i64,
    pub sign: Sign,
    pub terms: Vec<PsiTerm>,
    /// `z^(d/2-2) psi(-1/z)`, a real-rational series with positive exponents only.
    pub phi: QSeries,
    pub a: Vec<Symbolic>,
    pub b: Vec<Symbolic>,
    /// Decay constant `C` as a rational multiple of `pi`.
    pub decay_over_pi: Rational,
}

impl PsiExpansion {
    /// Build from terms, extracting the principal part.
    pub fn new(d: i64, sign: Sign, terms: Vec<PsiTerm>, phi: QSeries, decay_over_pi: Rational) -> PsiExpansion {
        let mut depth = 0i64;
        for t in &terms {
            if let Some(e) = t.series.valuation().order() {
                if e.half_steps() <= 0 {
                    depth = depth.max((-e.half_steps() + 1) / 2);
                }
            }
        }
        let mut a = vec![Symbolic::zero(); depth as usize + 1];
        let mut b = vec![Symbolic::zero(); depth as usize + 1];
        for t in &terms {
            for (e, c) in t.series.terms_below(Exp::halves(1)) {
                let k = -e.as_int().unwrap_or_else(|| panic!("principal part has half-integer exponent {e}"));
                let c = c * &t.scale;
                match t.z_pow {
                    0 => a[k as usize].add_term(c, t.tag),
                    // z c q^-k = -i z (i c) q^-k
                    1 => b[k as usize].add_term(c, t.tag.mul(Tag::new(1, 0, 0))),
                    p => panic!("z^{p} component has a principal part at q^{e}"),
                }
            }
        }
        while a.len() > 1 && a.last().is_some_and(|x| x.is_zero()) && b.last().is_some_and(|x| x.is_zero()) {
            a.pop();
            b.pop();
        }
        PsiExpansion { d, sign, terms, phi, a, b, decay_over_pi }
    }

    /// Index of the deepest pole of `psi` at the cusp.
    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }

    /// Largest exponent below which every component series is known.
    pub fn trunc(&self) -> Exp {
        self.terms.iter().map(|t| t.series.trunc()).chain([self.phi.trunc()]).min().expect("terms")
    }

    /// Smallest exponent appearing beyond the principal part.
    pub fn tail_start(&self) -> Exp {
        let mut m = self.trunc();
        for t in &self.terms {
            if let Some((e, _)) = t.series.terms().find(|(e, c)| e.half_steps() > 0 && *c != 0) {
                m = m.min(e);
            }
        }
        m
    }

    /// Integer-exponent principal coefficients with the given tag, as rationals.
    pub fn principal_rational(&self, which: char, k: usize, tag: Tag) -> Rational {
        let v = if which == 'a' { &self.a } else { &self.b };
        v.get(k)
            .and_then(|s| s.0.iter().find(|(_, t)| *t == tag).map(|(c, _)| c.clone()))
            .unwrap_or_default()
    }
}

/// Exact content hash input: the rational data of an expansion.
pub fn expansion_digest_text(p: &PsiExpansion) -> String {
    let mut s = format!("d={} sign={}\n", p.d, p.sign);
    for t in &p.terms {
        s.push_str(&format!("z^{} {} {} {}\n", t.z_pow, t.tag, t.scale, serde_json::to_string(&t.series).unwrap_or_default()));
    }
    s.push_str(&serde_json::to_string(&p.phi).unwrap_or_default());
    s
}

/// Which member of a solution family to build.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// The unique solution of the full order conditions.
    #[default]
    Optimal,
    /// Plus sign only: the extra-freedom combination vanishing at the origin.
    OriginZero,
    /// Minus sign only: the extra-freedom combination with one pole fewer.
    LowerDepth,
}

/// Solve for `(d, sign)` and assemble `psi` with series known below `q^trunc`.
pub fn build(d: i64, sign: Sign, trunc: i64, variant: Variant) -> crate::Result<PsiExpansion> {
    use crate::{minus, plus};
    match (sign, variant) {
        (Sign::Plus, Variant::Optimal) => Ok(plus::assemble_psi_plus(&plus::solve_plus(d, trunc)?)),
        (Sign::Plus, Variant::OriginZero) => Ok(plus::assemble_psi_plus(&plus::apply_origin_constraint(d, trunc)?)),
        (Sign::Minus, Variant::Optimal) => Ok(minus::assemble_psi_minus(&minus::solve_minus(d, trunc)?)),
        (Sign::Minus, Variant::LowerDepth) => Ok(minus::assemble_psi_minus(&minus::lower_depth(d, trunc)?)),
        (s, v) => Err(crate::Error::Config(format!("variant {v:?} is not available for the {s} sign"))),
    }
}
