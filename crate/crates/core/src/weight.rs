//! One-parameter subgroups and the weights of Hilbert points.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::diff::{binomial_coefficients, ValueWindow};
use crate::exact::indep::IndependenceOracle;
use crate::exact::matrix::Echelon;
use crate::exact::poly::PolyM;
use crate::exact::rational::{from_bigint, to_integer, Rational};
use crate::graded::{GradedPiece, HilbertData, IdealPieces, MultiIndex, Window};

/// A diagonal one-parameter subgroup `λ(t) e_j = t^{r_j} e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OnePS(Vec<i64>);

impl OnePS {
    /// Checks `Σ r_j = 0` unless `allow_gl` is set.
    pub fn new(weights: Vec<i64>, allow_gl: bool) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Input("one-parameter subgroup needs at least one weight".into()));
        }
        let sum: i64 = weights.iter().sum();
        if sum != 0 && !allow_gl {
            return Err(Error::NotSpecialLinear { lambda: weights, sum });
        }
        Ok(OnePS(weights))
    }

    pub fn trivial(num_vars: usize) -> Self {
        OnePS(vec![0; num_vars])
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&r| r == 0)
    }

    pub fn is_special_linear(&self) -> bool {
        self.0.iter().sum::<i64>() == 0
    }

    pub fn inverse(&self) -> Self {
        OnePS(self.0.iter().map(|r| -r).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        OnePS(self.0.iter().map(|r| r * k).collect())
    }

    /// The subgroup acting on variable `perm[j]` with weight `r_j`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = vec![0; self.0.len()];
        for (j, &p) in perm.iter().enumerate() {
            out[p] = self.0[j];
        }
        OnePS(out)
    }
}

/// `Σ r_j i_j`.
pub fn monomial_weight(lambda: &OnePS, mono: &MultiIndex) -> Result<i64> {
    if lambda.len() != mono.num_vars() {
        return Err(Error::DimensionMismatch { expected: mono.num_vars(), got: lambda.len() });
    }
    Ok(lambda.0.iter().zip(mono.exps()).map(|(r, &i)| r * i as i64).sum())
}

fn piece_weights(lambda: &OnePS, piece: &GradedPiece) -> Result<Vec<i64>> {
    piece.monomials().iter().map(|m| monomial_weight(lambda, m)).collect()
}

/// `P(m)` monomial indices, strictly increasing, into the degree-`m`
/// monomial list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerSubset {
    pub m: u32,
    pub indices: Vec<usize>,
}

impl PluckerSubset {
    pub fn new(m: u32, indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Input("Plücker subset indices must be strictly increasing".into()));
        }
        Ok(PluckerSubset { m, indices })
    }
}

/// Determinant of the images of the selected monomials in the quotient
/// basis. Nonzero exactly when they restrict to a basis of the quotient.
pub fn plucker_coordinate(piece: &GradedPiece, subset: &PluckerSubset) -> Result<Rational> {
    if subset.m != piece.degree() {
        return Err(Error::Precondition(format!(
            "subset is in degree {} but the piece has degree {}",
            subset.m,
            piece.degree()
        )));
    }
    let p = piece.quotient_dim();
    if subset.indices.len() != p {
        return Err(Error::WrongSubsetSize { expected: p, got: subset.indices.len() });
    }
    if let Some(&bad) = subset.indices.iter().find(|&&i| i >= piece.ambient_dim()) {
        return Err(Error::Input(format!("monomial index {bad} out of range")));
    }
    if p == 0 {
        return Ok(Rational::from_integer(1.into()));
    }
    let rows = subset.indices.iter().map(|&i| piece.monomial_image(i)).collect();
    crate::exact::matrix::MatrixQ::from_rows_with_cols(rows, p)?.det()
}

/// Minimum total weight of a monomial basis of the quotient, by the
/// matroid greedy algorithm.
pub fn min_weight_basis(piece: &GradedPiece, lambda: &OnePS) -> Result<(i64, Vec<usize>)> {
    let weights = piece_weights(lambda, piece)?;
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by_key(|&i| (weights[i], i));
    let mut oracle = IndependenceOracle::new(piece.quotient_dim());
    let mut chosen = Vec::with_capacity(piece.quotient_dim());
    let mut total = 0i64;
    for i in order {
        if oracle.is_full() {
            break;
        }
        if oracle.extend(&piece.monomial_image(i))? {
            total += weights[i];
            chosen.push(i);
        }
    }
    chosen.sort_unstable();
    Ok((total, chosen))
}

/// The weight `w_λ(m)` of the `m`-th Hilbert point.
///
/// When `hilbert` is given the quotient dimension must equal `P(m)`.
pub fn gieseker_weight(pieces: &IdealPieces, lambda: &OnePS, m: u32, hilbert: Option<&HilbertData>) -> Result<i64> {
    if lambda.len() != pieces.ideal().num_vars() {
        return Err(Error::DimensionMismatch { expected: pieces.ideal().num_vars(), got: lambda.len() });
    }
    let piece = pieces.piece(m);
    if let Some(h) = hilbert {
        let expected = h.eval(m as i64);
        if Rational::from_integer(piece.quotient_dim().into()) != expected {
            return Err(Error::StabilizationViolated { m, found: piece.quotient_dim(), expected: expected.to_string() });
        }
    }
    if lambda.is_trivial() {
        return Ok(0);
    }
    Ok(min_weight_basis(&piece, lambda)?.0)
}

/// Minimum of the total weight over every `P(m)`-subset with nonzero
/// Plücker coordinate, by enumeration. Returns `None` when there are more
/// than `limit` subsets.
pub fn exhaustive_min_weight(piece: &GradedPiece, lambda: &OnePS, limit: u64) -> Result<Option<i64>> {
    let d = piece.ambient_dim();
    let p = piece.quotient_dim();
    let count = crate::exact::poly::binomial_int(d as u64, p as u64);
    if count > BigInt::from(limit) {
        return Ok(None);
    }
    let weights = piece_weights(lambda, piece)?;
    let mut best: Option<i64> = None;
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        let subset = PluckerSubset { m: piece.degree(), indices: idx.clone() };
        if !plucker_coordinate(piece, &subset)?.is_zero() {
            let w: i64 = idx.iter().map(|&i| weights[i]).sum();
            best = Some(best.map_or(w, |b| b.min(w)));
        }
        // Next combination in lexicographic order.
        let Some(pos) = (0..p).rev().find(|&i| idx[i] < d - p + i) else {
            break;
        };
        idx[pos] += 1;
        for j in pos + 1..p {
            idx[j] = idx[j - 1] + 1;
        }
    }
    Ok(best)
}

/// Exact polynomial through the weight samples `w_λ(m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightPolynomial {
    pub poly: PolyM,
    pub samples: ValueWindow,
}

impl WeightPolynomial {
    /// `a_j`, the coefficient of `m^j`.
    pub fn a(&self, j: usize) -> Rational {
        self.poly.coeff(j)
    }

    /// Coefficients `e_j` of `w` in the basis `binom(m, j)`, padded to
    /// length `len`.
    pub fn binomial(&self, len: usize) -> Result<Vec<BigInt>> {
        let mut e = binomial_coefficients(&self.poly)
            .iter()
            .map(|c| to_integer(c).ok_or_else(|| Error::Internal(format!("weight polynomial has binomial coefficient {c}"))))
            .collect::<Result<Vec<_>>>()?;
        if e.len() > len {
            return Err(Error::Internal(format!("weight polynomial degree exceeds {}", len - 1)));
        }
        e.resize(len, BigInt::zero());
        Ok(e)
    }
}

/// Samples `w_λ(m)` over `window` and fits a polynomial of degree at most
/// `n + 1`, checking that `Δ^{n+2}` vanishes on every sample.
pub fn weight_polynomial(
    pieces: &IdealPieces,
    lambda: &OnePS,
    window: Window,
    hilbert: &HilbertData,
) -> Result<WeightPolynomial> {
    let bound = hilbert.dim + 1;
    let len = window.len as usize;
    if len < bound + 2 {
        return Err(Error::WindowTooShort { needed: bound + 2, got: len });
    }
    let values = window
        .degrees()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&m| gieseker_weight(pieces, lambda, m, Some(hilbert)).map(BigInt::from))
        .collect::<Result<Vec<_>>>()?;
    let samples = ValueWindow::new(window.start as i64, values);
    weight_polynomial_from_samples(samples, hilbert.dim)
}

/// The fitting step of [`weight_polynomial`] on precomputed samples.
pub fn weight_polynomial_from_samples(samples: ValueWindow, dim: usize) -> Result<WeightPolynomial> {
    let bound = dim + 1;
    let diffs = samples.difference(bound + 1)?;
    if diffs.values.iter().any(|v| !v.is_zero()) {
        return Err(Error::WeightDegreeExceeded {
            bound,
            differences: diffs.values.iter().map(|v| v.to_string()).collect(),
        });
    }
    let poly = samples.interpolate();
    for (i, v) in samples.values.iter().enumerate() {
        debug_assert_eq!(poly.eval_i64(samples.start + i as i64), from_bigint(v.clone()));
    }
    Ok(WeightPolynomial { poly, samples })
}

/// Degree-`m` piece of the flat limit `λ(0)·X`.
///
/// Each element of `I_m` is replaced by its component of largest
/// `λ`-weight, which is its lowest-order part under the contragredient
/// action on coordinates. This is the convention under which the limit has
/// the same Hilbert-point weight as `I`.
pub fn initial_ideal_piece(piece: &GradedPiece, lambda: &OnePS) -> Result<GradedPiece> {
    let weights = piece_weights(lambda, piece)?;
    let d = piece.ambient_dim();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(weights[i]), i));
    let permuted: Vec<Vec<Rational>> =
        piece.echelon().rows.iter().map(|r| order.iter().map(|&i| r[i].clone()).collect()).collect();
    let ech = Echelon::from_rows(permuted, d);
    let rows = ech
        .rows
        .iter()
        .zip(&ech.pivots)
        .map(|(row, &p)| {
            let top = weights[order[p]];
            let mut out = vec![Rational::zero(); d];
            for (k, &i) in order.iter().enumerate() {
                if weights[i] == top {
                    out[i] = row[k].clone();
                }
            }
            out
        })
        .collect();
    GradedPiece::from_spanning_rows(piece.num_vars(), piece.degree(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::graded::{fit_hilbert_polynomial, HomogeneousIdeal};

    fn conic() -> IdealPieces {
        IdealPieces::new(HomogeneousIdeal::parse(3, &["z0*z2 - z1^2"]).unwrap())
    }

    fn lam(r: &[i64]) -> OnePS {
        OnePS::new(r.to_vec(), false).unwrap()
    }

    #[test]
    fn monomial_weights() {
        let l = lam(&[1, 1, -2]);
        assert_eq!(monomial_weight(&l, &MultiIndex::new(vec![0, 0, 2])).unwrap(), -4);
        assert_eq!(monomial_weight(&l, &MultiIndex::new(vec![1, 0, 1])).unwrap(), -1);
        assert!(monomial_weight(&l, &MultiIndex::new(vec![1, 1])).is_err());
    }

    #[test]
    fn rejects_general_linear() {
        assert!(matches!(OnePS::new(vec![1, 1, -1], false), Err(Error::NotSpecialLinear { sum: 1, .. })));
        assert!(OnePS::new(vec![1, 1, -1], true).is_ok());
    }

    #[test]
    fn conic_weight_values() {
        let p = conic();
        let l = lam(&[1, 1, -2]);
        assert_eq!(gieseker_weight(&p, &l, 2, None).unwrap(), -2);
        assert_eq!(gieseker_weight(&p, &l, 3, None).unwrap(), -6);
        assert_eq!(gieseker_weight(&p, &OnePS::trivial(3), 3, None).unwrap(), 0);
    }

    #[test]
    fn conic_weight_polynomial() {
        let p = conic();
        let h = fit_hilbert_polynomial(&p, Window::new(1, 6)).unwrap();
        let w = weight_polynomial(&p, &lam(&[1, 1, -2]), Window::new(2, 5), &h).unwrap();
        assert_eq!(w.poly, PolyM::from_i64(&[0, 1, -1]));
        assert_eq!(w.binomial(3).unwrap(), vec![BigInt::from(0), BigInt::from(0), BigInt::from(-2)]);
    }

    #[test]
    fn plucker_conic() {
        let piece = conic().piece(2);
        let idx = |e: [u32; 3]| piece.index_of(&MultiIndex::new(e.to_vec())).unwrap();
        let omit = |j: usize| PluckerSubset::new(2, (0..6).filter(|&i| i != j).collect()).unwrap();
        assert!(!plucker_coordinate(&piece, &omit(idx([1, 0, 1]))).unwrap().is_zero());
        assert!(plucker_coordinate(&piece, &omit(idx([2, 0, 0]))).unwrap().is_zero());
        let short = PluckerSubset::new(2, vec![0, 1]).unwrap();
        assert!(matches!(plucker_coordinate(&piece, &short), Err(Error::WrongSubsetSize { .. })));
    }

    #[test]
    fn stabilization_check() {
        let p = IdealPieces::new(HomogeneousIdeal::parse(3, &["z0^2", "z0*z1", "z1^2"]).unwrap());
        let h = HilbertData::from_polynomial(PolyM::from_i64(&[3])).unwrap();
        let err = gieseker_weight(&p, &lam(&[1, 0, -1]), 0, Some(&h)).unwrap_err();
        assert!(matches!(err, Error::StabilizationViolated { m: 0, .. }));
    }

    #[test]
    fn conic_limit_piece() {
        let piece = conic().piece(2);
        let lim = initial_ideal_piece(&piece, &lam(&[1, 1, -2])).unwrap();
        assert_eq!(lim.ideal_dim(), 1);
        let z1sq = lim.index_of(&MultiIndex::new(vec![0, 2, 0])).unwrap();
        assert_eq!(lim.echelon().rows[0][z1sq], int(1));
        assert_eq!(lim.echelon().rows[0].iter().filter(|x| !x.is_zero()).count(), 1);
        let same = initial_ideal_piece(&piece, &OnePS::trivial(3)).unwrap();
        assert_eq!(same, *piece);
    }
}
