//! Forward differences and the binomial basis `binom(m, i)`.
//!
//! A numerical function that agrees with a polynomial of degree `k` on
//! consecutive integers is integer valued there exactly when its
//! coefficients in the basis `binom(m, 0), ..., binom(m, k)` are integers,
//! and the top coefficient equals the constant `k`-th difference.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::PolyM;
use super::rational::{from_bigint, int, to_integer, Rational};
use crate::error::{Error, Result};

/// Integer samples `values[i] = chi(start + i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueWindow {
    pub start: i64,
    pub values: Vec<BigInt>,
}

impl ValueWindow {
    pub fn new(start: i64, values: Vec<BigInt>) -> Self {
        ValueWindow { start, values }
    }

    pub fn from_i64(start: i64, values: &[i64]) -> Self {
        ValueWindow { start, values: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Δ^k` over the window. The result starts at the same `m` and is `k`
    /// samples shorter.
    pub fn difference(&self, k: usize) -> Result<ValueWindow> {
        if self.values.len() < k + 1 {
            return Err(Error::WindowTooShort { needed: k + 1, got: self.values.len() });
        }
        let mut v = self.values.clone();
        for _ in 0..k {
            v = v.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Ok(ValueWindow { start: self.start, values: v })
    }

    /// First `m` at which `Δ^(degree+1)` is nonzero, if any.
    pub fn first_nonpolynomial(&self, degree: usize) -> Option<i64> {
        let d = self.difference(degree + 1).ok()?;
        d.values.iter().position(|v| !v.is_zero()).map(|i| self.start + i as i64)
    }

    /// The polynomial of degree `< len` through the samples.
    pub fn interpolate(&self) -> PolyM {
        let vals: Vec<Rational> = self.values.iter().cloned().map(from_bigint).collect();
        PolyM::interpolate_consecutive(self.start, &vals)
    }
}

/// `Δ^k p` as a polynomial.
pub fn forward_difference(p: &PolyM, k: usize) -> PolyM {
    let mut q = p.clone();
    for _ in 0..k {
        q = &q.shift(&int(1)) - &q;
    }
    q
}

/// The expansion `Δ^k χ(m) = Σ_{0≤i≤k} (-1)^(k-i) binom(k,i) χ(m+i)`,
/// evaluated directly from the values of `χ`.
pub fn difference_by_expansion(p: &PolyM, k: usize) -> PolyM {
    let mut out = PolyM::zero();
    for i in 0..=k {
        let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
        let c = from_bigint(super::poly::binomial_int(k as u64, i as u64) * sign);
        out = &out + &p.shift(&int(i as i64)).scale(&c);
    }
    out
}

/// Coefficients `e_0..e_deg` with `p(m) = Σ e_i binom(m, i)`.
pub fn binomial_coefficients(p: &PolyM) -> Vec<Rational> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut q = p.clone();
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..=deg {
        out.push(q.coeff(0));
        q = &q.shift(&int(1)) - &q;
    }
    out
}

/// Window form of [`binomial_coefficients`]: verifies that `Δ^(degree+1)`
/// vanishes on the whole window and returns the integer coefficients of
/// the interpolating polynomial.
pub fn binomial_coefficients_window(w: &ValueWindow, degree: usize) -> Result<Vec<BigInt>> {
    if w.len() < degree + 1 {
        return Err(Error::WindowTooShort { needed: degree + 1, got: w.len() });
    }
    if let Some(at) = w.first_nonpolynomial(degree) {
        return Err(Error::NotPolynomial { degree, at });
    }
    let p = w.interpolate();
    let mut e: Vec<BigInt> = binomial_coefficients(&p)
        .iter()
        .map(|c| to_integer(c).ok_or_else(|| Error::Internal(format!("non-integer binomial coefficient {c}"))))
        .collect::<Result<_>>()?;
    e.resize(degree + 1, BigInt::zero());
    Ok(e)
}

/// `Σ e_i binom(m, i)` as a polynomial.
pub fn from_binomial_basis(e: &[Rational]) -> PolyM {
    e.iter()
        .enumerate()
        .fold(PolyM::zero(), |acc, (i, c)| &acc + &PolyM::binomial(i).scale(c))
}

/// Elementary symmetric polynomial `σ_j(x_1, ..., x_r)`.
pub fn elementary_symmetric(j: usize, xs: &[Rational]) -> Rational {
    // e[t] after processing a prefix holds σ_t of that prefix.
    let mut e = vec![Rational::zero(); j + 1];
    e[0] = Rational::one();
    for x in xs {
        for t in (1..=j).rev() {
            let add = &e[t - 1] * x;
            e[t] += add;
        }
    }
    e[j].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_difference_of_square() {
        assert_eq!(forward_difference(&PolyM::monomial(2), 2), PolyM::constant(int(2)));
    }

    #[test]
    fn pascal_identity() {
        for j in 1..6 {
            assert_eq!(forward_difference(&PolyM::binomial(j), 1), PolyM::binomial(j - 1));
        }
    }

    #[test]
    fn cube_window_third_difference() {
        let w = ValueWindow::from_i64(0, &[0, 1, 8, 27, 64]);
        assert_eq!(w.difference(3).unwrap().values, vec![BigInt::from(6), BigInt::from(6)]);
        assert!(w.difference(5).is_err());
    }

    #[test]
    fn expansion_agrees_with_iteration() {
        let p = PolyM::from_i64(&[2, -1, 0, 3, 1]);
        for k in 0..6 {
            assert_eq!(difference_by_expansion(&p, k), forward_difference(&p, k));
        }
    }

    #[test]
    fn binomial_basis_examples() {
        assert_eq!(binomial_coefficients(&PolyM::monomial(2)), vec![int(0), int(1), int(2)]);
        assert_eq!(binomial_coefficients(&PolyM::from_i64(&[1, 2])), vec![int(1), int(2)]);
        assert_eq!(binomial_coefficients(&PolyM::from_i64(&[0, 1, -1])), vec![int(0), int(0), int(-2)]);
    }

    #[test]
    fn window_form_rejects_non_polynomial() {
        // 2^m is not a polynomial of degree 2.
        let w = ValueWindow::from_i64(0, &[1, 2, 4, 8, 16]);
        assert!(matches!(binomial_coefficients_window(&w, 2), Err(Error::NotPolynomial { at: 0, .. })));
        let w = ValueWindow::from_i64(3, &[7, 9, 11, 13]);
        let e = binomial_coefficients_window(&w, 1).unwrap();
        assert_eq!(e, vec![BigInt::from(1), BigInt::from(2)]);
        assert!(binomial_coefficients_window(&ValueWindow::from_i64(0, &[1]), 2).is_err());
    }

    #[test]
    fn elementary_symmetric_small() {
        let xs: Vec<_> = (1..=3).map(int).collect();
        assert_eq!(elementary_symmetric(0, &xs), int(1));
        assert_eq!(elementary_symmetric(1, &xs), int(6));
        assert_eq!(elementary_symmetric(2, &xs), int(11));
        assert_eq!(elementary_symmetric(3, &xs), int(6));
        assert_eq!(elementary_symmetric(4, &xs), int(0));
    }
}
