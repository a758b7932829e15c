//! Truncated Laurent series in descending powers of `m`.

use num_traits::Zero;

use super::poly::PolyM;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `coeffs[i]` is the coefficient of `m^(start - i)`. Coefficients below
/// `m^(start - order)` are unknown, not zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvMSeries {
    start: i64,
    coeffs: Vec<Rational>,
}

impl InvMSeries {
    pub fn new(start: i64, coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least one coefficient");
        InvMSeries { start, coeffs }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Lowest exponent whose coefficient is known.
    pub fn lowest_exponent(&self) -> i64 {
        self.start - self.order() as i64
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `m^exp`; `None` below the truncation.
    pub fn coeff(&self, exp: i64) -> Option<Rational> {
        if exp > self.start {
            return Some(Rational::zero());
        }
        self.coeffs.get((self.start - exp) as usize).cloned()
    }

    /// Sum truncated at the higher of the two truncation points.
    pub fn add(&self, other: &InvMSeries) -> InvMSeries {
        let start = self.start.max(other.start);
        let lowest = self.lowest_exponent().max(other.lowest_exponent());
        let coeffs = (lowest..=start)
            .rev()
            .map(|e| self.coeff(e).unwrap() + other.coeff(e).unwrap())
            .collect();
        InvMSeries { start, coeffs }
    }

    /// Product, keeping only terms whose value is determined by both inputs.
    pub fn mul(&self, other: &InvMSeries) -> InvMSeries {
        let start = self.start + other.start;
        let len = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| {
                (0..=k).fold(Rational::zero(), |acc, i| acc + &self.coeffs[i] * &other.coeffs[k - i])
            })
            .collect();
        InvMSeries { start, coeffs }
    }
}

/// Laurent expansion of `numer / denom` in descending powers of `m`, with
/// `order` terms after the leading one.
///
/// The leading exponent is `deg numer - deg denom`; for a zero numerator it
/// is `-deg denom` and every coefficient is zero.
pub fn series_ratio(numer: &PolyM, denom: &PolyM, order: usize) -> Result<InvMSeries> {
    let b = denom.degree().ok_or(Error::ZeroDenominator)?;
    let Some(a) = numer.degree() else {
        return Ok(InvMSeries { start: -(b as i64), coeffs: vec![Rational::zero(); order + 1] });
    };
    // Reversed coefficient sequences: numer = m^a N(1/m), denom = m^b D(1/m).
    let n_rev = |i: usize| if i <= a { numer.coeff(a - i) } else { Rational::zero() };
    let d_rev: Vec<Rational> = (0..=b).map(|i| denom.coeff(b - i)).collect();
    let d0_inv = d_rev[0].recip();
    let mut q: Vec<Rational> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = n_rev(k);
        for i in 1..=k.min(b) {
            acc -= &d_rev[i] * &q[k - i];
        }
        q.push(acc * &d0_inv);
    }
    Ok(InvMSeries { start: a as i64 - b as i64, coeffs: q })
}

/// Like [`series_ratio`] but carries enough terms to know every coefficient
/// down to `m^lowest`.
pub fn series_ratio_down_to(numer: &PolyM, denom: &PolyM, lowest: i64) -> Result<InvMSeries> {
    let b = denom.degree().ok_or(Error::ZeroDenominator)? as i64;
    let start = numer.degree().map_or(-b, |a| a as i64 - b);
    let order = (start - lowest).max(0) as usize;
    series_ratio(numer, denom, order)
}
