//! Based complexes of finite-dimensional vector spaces and their torsion.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::matrix::{MatrixQ, PivotStrategy};
use crate::exact::rational::Rational;

/// `E^0 -> E^1 -> ... -> E^k` with a fixed basis in every term.
///
/// `boundaries[i]` is the matrix of `∂_i : E^i -> E^{i+1}` with rows
/// indexed by the basis of `E^i` and columns by the basis of `E^{i+1}`,
/// so `∂_{i+1} ∘ ∂_i = 0` reads `boundaries[i] * boundaries[i+1] = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasedComplex {
    dims: Vec<usize>,
    boundaries: Vec<MatrixQ>,
}

impl BasedComplex {
    /// Validates shapes and `∂² = 0`.
    pub fn new(dims: Vec<usize>, boundaries: Vec<MatrixQ>) -> Result<Self> {
        if dims.is_empty() || boundaries.len() + 1 != dims.len() {
            return Err(Error::Precondition(format!(
                "{} terms need {} boundaries, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(Error::Precondition(format!(
                    "boundary {i} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for (i, pair) in boundaries.windows(2).enumerate() {
            if !pair[0].mul(&pair[1])?.is_zero() {
                return Err(Error::IdentityFailure(format!("boundary {} composed with boundary {i} is nonzero", i + 1)));
            }
        }
        Ok(BasedComplex { dims, boundaries })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundaries(&self) -> &[MatrixQ] {
        &self.boundaries
    }

    /// Length `k` of the complex (number of boundaries).
    pub fn len(&self) -> usize {
        self.boundaries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundaries.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.boundaries.iter().map(MatrixQ::rank).collect()
    }

    /// First level `i` with `rank ∂_i + rank ∂_{i-1} != dim E^i`.
    pub fn first_non_exact_level(&self) -> Option<usize> {
        let ranks = self.ranks();
        (0..self.dims.len()).find(|&i| {
            let out = if i < ranks.len() { ranks[i] } else { 0 };
            let inc = if i > 0 { ranks[i - 1] } else { 0 };
            out + inc != self.dims[i]
        })
    }

    pub fn is_exact(&self) -> bool {
        self.first_non_exact_level().is_none()
    }

    /// Torsion of an exact complex.
    ///
    /// Starting from the full basis of `E^0`, each step keeps the basis
    /// vectors `U_i` of `E^i` complementary to the previous pivots,
    /// restricts `∂_i` to them and picks pivot columns `T_i` with
    /// `strategy`. The minor at level `i >= 1` is the determinant of the
    /// rows of `∂_{i-1}` over `U_{i-1}` stacked on the unit rows of `U_i`;
    /// the torsion is the product of these minors with exponents
    /// `(-1)^{i+1}`.
    pub fn torsion(&self, strategy: PivotStrategy) -> Result<TorsionCertificate> {
        if let Some(level) = self.first_non_exact_level() {
            return Err(Error::Incidence { level });
        }
        let k = self.len();
        let mut kept: Vec<Vec<usize>> = vec![(0..self.dims[0]).collect()];
        let mut pivots: Vec<Vec<usize>> = Vec::with_capacity(k);
        for i in 0..k {
            let d = &self.boundaries[i];
            let restricted = d.submatrix(&kept[i], &(0..d.cols()).collect::<Vec<_>>());
            let t = restricted.pivot_columns(strategy);
            if t.len() != kept[i].len() {
                return Err(Error::Internal(format!("restricted boundary {i} is not injective")));
            }
            let mut is_t = vec![false; d.cols()];
            for &c in &t {
                is_t[c] = true;
            }
            kept.push((0..d.cols()).filter(|&c| !is_t[c]).collect());
            pivots.push(t);
        }
        if !kept[k].is_empty() {
            return Err(Error::Internal("last boundary is not surjective".into()));
        }
        let mut minors = Vec::with_capacity(k);
        let mut value = Rational::one();
        for i in 1..=k {
            let d = &self.boundaries[i - 1];
            let n = self.dims[i];
            let mut rows: Vec<Vec<Rational>> = kept[i - 1].iter().map(|&r| d.row(r).to_vec()).collect();
            for &u in &kept[i] {
                let mut e = vec![Rational::zero(); n];
                e[u] = Rational::one();
                rows.push(e);
            }
            let det = MatrixQ::from_rows_with_cols(rows, n)?.det()?;
            if det.is_zero() {
                return Err(Error::Internal(format!("vanishing minor at level {i}")));
            }
            value = if i % 2 == 1 { value * &det } else { value / &det };
            minors.push(det);
        }
        Ok(TorsionCertificate {
            dims: self.dims.clone(),
            ranks: self.ranks(),
            strategy,
            pivots,
            kept,
            minors,
            value,
        })
    }
}

/// Everything needed to recheck a torsion value by hand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionCertificate {
    pub dims: Vec<usize>,
    /// Ranks of the boundaries; exactness means they fill every term.
    pub ranks: Vec<usize>,
    pub strategy: PivotStrategy,
    /// Pivot columns `T_i` chosen in `E^{i+1}`.
    pub pivots: Vec<Vec<usize>>,
    /// Basis vectors `U_i` of `E^i` not hit by earlier pivots.
    pub kept: Vec<Vec<usize>>,
    /// Minor determinants for levels `1..=k`; level `i` enters with
    /// exponent `(-1)^{i+1}`.
    #[serde(with = "crate::exact::rational::serde_vec")]
    pub minors: Vec<Rational>,
    #[serde(with = "crate::exact::rational::serde_str")]
    pub value: Rational,
}

impl TorsionCertificate {
    /// Recomputes the alternating product of the recorded minors.
    pub fn product_of_minors(&self) -> Rational {
        self.minors
            .iter()
            .enumerate()
            .fold(Rational::one(), |acc, (i, m)| if i % 2 == 0 { acc * m } else { acc / m })
    }
}
