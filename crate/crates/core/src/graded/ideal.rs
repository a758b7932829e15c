use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::monomial::MultiIndex;
use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational, Rational};

/// A homogeneous polynomial as a list of distinct nonzero terms, sorted
/// with the largest monomial (graded lex) first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogPoly {
    num_vars: usize,
    degree: u32,
    terms: Vec<(Rational, MultiIndex)>,
}

impl HomogPoly {
    /// Merges repeated monomials and drops zero terms. Fails on an empty
    /// result, on inhomogeneous input or on a wrong variable count.
    pub fn new(num_vars: usize, terms: Vec<(Rational, MultiIndex)>) -> Result<Self> {
        let mut merged: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        for (c, mi) in terms {
            if mi.num_vars() != num_vars {
                return Err(Error::Input(format!(
                    "monomial {mi} has {} exponents, expected {num_vars}",
                    mi.num_vars()
                )));
            }
            *merged.entry(mi).or_insert_with(Rational::zero) += c;
        }
        let terms: Vec<_> = merged.into_iter().rev().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (c, m)).collect();
        let Some((_, first)) = terms.first() else {
            return Err(Error::Input("zero generator".into()));
        };
        let degree = first.degree();
        if let Some((_, bad)) = terms.iter().find(|(_, m)| m.degree() != degree) {
            let poly = HomogPoly { num_vars, degree, terms: terms.clone() };
            return Err(Error::Input(format!(
                "generator {poly} is not homogeneous: it mixes degrees {degree} and {}",
                bad.degree()
            )));
        }
        Ok(HomogPoly { num_vars, degree, terms })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(Rational, MultiIndex)] {
        &self.terms
    }

    /// Parses text such as `"z0*z2 - z1^2"` or `"3/2*z0^2 + z1*z2"`.
    pub fn parse(num_vars: usize, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Input(format!("cannot parse generator {text:?}: {why}"));
        let mut terms = Vec::new();
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece.as_str()),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let mut coeff = Rational::one();
            let mut exps = vec![0u32; num_vars];
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('z') {
                    let (idx, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (var, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                    if idx >= num_vars {
                        return Err(bad(&format!("variable z{idx} out of range for {num_vars} variables")));
                    }
                    exps[idx] += exp;
                } else {
                    coeff *= parse_rational(factor).map_err(|_| bad(&format!("bad factor {factor:?}")))?;
                }
            }
            if neg {
                coeff = -coeff;
            }
            terms.push((coeff, MultiIndex::new(exps)));
        }
        HomogPoly::new(num_vars, terms)
    }

    /// Coordinates with respect to an indexed monomial list.
    pub fn dense(&self, index: impl Fn(&MultiIndex) -> usize, len: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); len];
        for (c, m) in &self.terms {
            v[index(m)] += c;
        }
        v
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let s = format_rational(c);
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = m.to_string();
            match (body.as_str(), mono.as_str()) {
                (b, "1") => write!(f, "{b}")?,
                ("1", mono) => write!(f, "{mono}")?,
                (b, mono) => write!(f, "{b}*{mono}")?,
            }
        }
        Ok(())
    }
}

/// One generator term in the JSON schema: `{"coeff": "p/q", "exps": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

impl HomogPoly {
    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(c, m)| TermJson { coeff: format_rational(c), exps: m.0.clone() })
            .collect()
    }

    pub fn from_json_terms(num_vars: usize, terms: &[TermJson]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|t| Ok((parse_rational(&t.coeff)?, MultiIndex::new(t.exps.clone()))))
            .collect::<Result<Vec<_>>>()?;
        HomogPoly::new(num_vars, terms)
    }
}

/// Homogeneous ideal in `num_vars = N + 1` variables; defines `X ⊂ P^N`.
/// An empty generator list is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousIdeal {
    num_vars: usize,
    generators: Vec<HomogPoly>,
}

impl HomogeneousIdeal {
    pub fn new(num_vars: usize, generators: Vec<HomogPoly>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::Input("an ideal needs at least one variable".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.num_vars() != num_vars) {
            return Err(Error::Input(format!("generator {g} lives in {} variables, expected {num_vars}", g.num_vars())));
        }
        Ok(HomogeneousIdeal { num_vars, generators })
    }

    /// Shorthand for text generators; see [`HomogPoly::parse`].
    pub fn parse(num_vars: usize, generators: &[&str]) -> Result<Self> {
        let gens = generators.iter().map(|g| HomogPoly::parse(num_vars, g)).collect::<Result<_>>()?;
        Self::new(num_vars, gens)
    }

    pub fn zero(num_vars: usize) -> Self {
        HomogeneousIdeal { num_vars, generators: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// `N`, the dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.num_vars - 1
    }

    pub fn generators(&self) -> &[HomogPoly] {
        &self.generators
    }

    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.terms().len() == 1)
    }

    /// Canonical JSON used for content hashing: generators in their
    /// normalized term order, in the given generator order.
    pub fn canonical_json(&self) -> String {
        let gens: Vec<_> = self.generators.iter().map(HomogPoly::to_json_terms).collect();
        serde_json::json!({ "num_vars": self.num_vars, "generators": gens }).to_string()
    }

    /// Applies a permutation of the variables: variable `j` becomes
    /// variable `perm[j]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let terms = g
                    .terms()
                    .iter()
                    .map(|(c, m)| {
                        let mut e = vec![0; self.num_vars];
                        for (j, &x) in m.exps().iter().enumerate() {
                            e[perm[j]] = x;
                        }
                        (c.clone(), MultiIndex::new(e))
                    })
                    .collect();
                HomogPoly::new(self.num_vars, terms)
            })
            .collect::<Result<_>>()?;
        Self::new(self.num_vars, gens)
    }
}
