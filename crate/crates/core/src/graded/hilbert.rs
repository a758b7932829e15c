//! Hilbert function, fitted Hilbert polynomial and the Gotzmann number.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ideal::HomogeneousIdeal;
use super::piece::IdealPieces;
use crate::error::{Error, Result};
use crate::exact::diff::{binomial_coefficients, ValueWindow};
use crate::exact::poly::{factorial, PolyM};
use crate::exact::rational::{from_bigint, int, to_integer, Rational};

/// A range of consecutive degrees `start, start+1, ..., start+len-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub start: u32,
    pub len: u32,
}

impl Window {
    pub fn new(start: u32, len: u32) -> Self {
        Window { start, len }
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> {
        self.start..self.start + self.len
    }

    pub fn end(&self) -> u32 {
        self.start + self.len
    }
}

/// Which reading of `μ` to use downstream.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MuConvention {
    /// The coefficient `b_{n-1}` of `m^{n-1}` in `P(m)`.
    Literal,
    /// `2 b_{n-1} / b_n`.
    #[default]
    Normalized,
}

impl std::str::FromStr for MuConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(MuConvention::Literal),
            "normalized" => Ok(MuConvention::Normalized),
            _ => Err(Error::Input(format!("unknown mu convention '{s}' (expected literal or normalized)"))),
        }
    }
}

/// Numerical data of a Hilbert polynomial `P(m) = b_n m^n + ... + b_0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertData {
    pub dim: usize,
    pub degree: BigInt,
    pub poly: PolyM,
    /// Integer coefficients of `P` in the basis `binom(m, i)`.
    pub binomial: Vec<BigInt>,
    pub mu_literal: Rational,
    pub mu_normalized: Rational,
    /// Least sampled degree from which the Hilbert function agrees with `P`.
    pub m_stab: Option<u32>,
    pub samples: Option<ValueWindow>,
}

impl HilbertData {
    /// Derives dimension, degree and both `μ` values from `P`.
    pub fn from_polynomial(poly: PolyM) -> Result<Self> {
        let Some(n) = poly.degree() else {
            return Err(Error::Precondition("Hilbert polynomial is zero: the subscheme is empty".into()));
        };
        let b_n = poly.leading();
        let d = &b_n * Rational::from_integer(factorial(n));
        let degree = to_integer(&d).ok_or_else(|| Error::NonIntegerDegree(d.to_string()))?;
        if !degree.is_positive() {
            return Err(Error::NonIntegerDegree(d.to_string()));
        }
        let binomial = binomial_coefficients(&poly)
            .iter()
            .map(|c| to_integer(c).ok_or_else(|| Error::Input(format!("{poly} is not integer valued"))))
            .collect::<Result<Vec<_>>>()?;
        let b_prev = if n == 0 { Rational::zero() } else { poly.coeff(n - 1) };
        let mu_normalized = &b_prev * int(2) / &b_n;
        Ok(HilbertData {
            dim: n,
            degree,
            poly,
            binomial,
            mu_literal: b_prev,
            mu_normalized,
            m_stab: None,
            samples: None,
        })
    }

    pub fn mu(&self, conv: MuConvention) -> &Rational {
        match conv {
            MuConvention::Literal => &self.mu_literal,
            MuConvention::Normalized => &self.mu_normalized,
        }
    }

    /// `P(m)` as a count.
    pub fn eval(&self, m: i64) -> Rational {
        self.poly.eval_i64(m)
    }
}

pub fn hilbert_function(ideal: &HomogeneousIdeal, m: u32) -> usize {
    super::piece::ideal_degree_piece(ideal, m).quotient_dim()
}

/// Samples of the Hilbert function over `window`.
pub fn hilbert_window(pieces: &IdealPieces, window: Window) -> ValueWindow {
    ValueWindow::new(
        window.start as i64,
        window.degrees().map(|m| BigInt::from(pieces.hilbert_function(m))).collect(),
    )
}

/// Fits the Hilbert polynomial to the tail of `window`.
///
/// The degree is the least `k <= N` for which the last `k + 3` samples have
/// vanishing `(k+1)`-st difference; `m_stab` is then the least sampled
/// degree from which every sample agrees with the fit.
pub fn fit_hilbert_polynomial(pieces: &IdealPieces, window: Window) -> Result<HilbertData> {
    let samples = hilbert_window(pieces, window);
    let mut data = fit_samples(&samples, pieces.ideal().ambient_dim())?;
    let mut m_stab = window.end();
    for (i, v) in samples.values.iter().enumerate().rev() {
        let m = window.start + i as u32;
        if data.eval(m as i64) != from_bigint(v.clone()) {
            break;
        }
        m_stab = m;
    }
    data.m_stab = Some(m_stab);
    data.samples = Some(samples);
    Ok(data)
}

fn fit_samples(samples: &ValueWindow, max_degree: usize) -> Result<HilbertData> {
    let len = samples.len();
    for k in 0..=max_degree {
        let need = k + 3;
        if len < need {
            return Err(Error::WindowTooShort { needed: need, got: len });
        }
        let tail = ValueWindow::new(samples.start + (len - need) as i64, samples.values[len - need..].to_vec());
        if tail.first_nonpolynomial(k).is_none() {
            return HilbertData::from_polynomial(tail.interpolate());
        }
    }
    let tail_start = samples.start + len.saturating_sub(max_degree + 3) as i64;
    let tail = ValueWindow::new(tail_start, samples.values[len.saturating_sub(max_degree + 3)..].to_vec());
    let at = tail.first_nonpolynomial(max_degree).unwrap_or(tail_start);
    Err(Error::NonStabilized { max_degree, at })
}

/// Number of summands in the greedy Macaulay decomposition
/// `P(t) = Σ_{i=1..s} binom(t + a_i - i + 1, a_i)`, `a_1 >= ... >= a_s >= 0`.
///
/// Used as the default regularity bound for degree windows.
pub fn gotzmann_number(poly: &PolyM) -> Result<usize> {
    const LIMIT: usize = 1 << 20;
    let mut rem = poly.clone();
    let mut s = 0usize;
    let mut last_a = usize::MAX;
    while let Some(a) = rem.degree() {
        let lead = rem.leading();
        if !lead.is_positive() || a > last_a || s >= LIMIT {
            return Err(Error::Decomposition(poly.to_string()));
        }
        if a == 0 {
            let c = to_integer(&lead).ok_or_else(|| Error::Decomposition(poly.to_string()))?;
            let c: usize = c.try_into().map_err(|_| Error::Decomposition(poly.to_string()))?;
            return Ok(s + c);
        }
        let term = PolyM::binomial(a).shift(&int(a as i64 - s as i64));
        rem = &rem - &term;
        s += 1;
        last_a = a;
    }
    Ok(s)
}

/// `binom(m + N, N)`.
pub fn ambient_dim_at(num_vars: usize, m: u32) -> BigInt {
    let n = num_vars as u64 - 1;
    crate::exact::poly::binomial_int(m as u64 + n, n)
}
