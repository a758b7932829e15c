//! Degree-`m` pieces of a homogeneous ideal and of its quotient ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::ideal::HomogeneousIdeal;
use super::monomial::{enumerate_monomials, MultiIndex};
use crate::error::{Error, Result};
use crate::exact::matrix::{Echelon, MatrixQ};
use crate::exact::rational::{serde_vec, Rational};

/// `I_m` inside `S_m` together with the standard-monomial basis of the
/// quotient `S_m / I_m`.
///
/// Columns are the monomials of degree `m` in graded lex order. The
/// echelon basis of `I_m` is fully reduced, so its pivots sit on the
/// largest monomial of each row and the non-pivot monomials (the standard
/// monomials) map to a basis of the quotient.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: u32,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
    echelon: Echelon,
    standard: Vec<usize>,
    quotient_pos: Vec<Option<usize>>,
}

impl PartialEq for GradedPiece {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.monomials == other.monomials && self.echelon == other.echelon
    }
}

impl GradedPiece {
    /// Builds the piece spanned by `rows` (coordinates over the degree-`m`
    /// monomials).
    pub fn from_spanning_rows(num_vars: usize, m: u32, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let monomials = enumerate_monomials(num_vars - 1, m);
        if let Some(r) = rows.iter().find(|r| r.len() != monomials.len()) {
            return Err(Error::DimensionMismatch { expected: monomials.len(), got: r.len() });
        }
        let echelon = Echelon::from_rows(rows, monomials.len());
        Ok(Self::assemble(m, monomials, echelon))
    }

    fn assemble(degree: u32, monomials: Vec<MultiIndex>, echelon: Echelon) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut is_pivot = vec![false; monomials.len()];
        for &p in &echelon.pivots {
            is_pivot[p] = true;
        }
        let standard: Vec<usize> = (0..monomials.len()).filter(|&i| !is_pivot[i]).collect();
        let mut quotient_pos = vec![None; monomials.len()];
        for (k, &i) in standard.iter().enumerate() {
            quotient_pos[i] = Some(k);
        }
        GradedPiece { degree, monomials, index, echelon, standard, quotient_pos }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.monomials[0].num_vars()
    }

    /// The monomial list of `S_m`; its length is `d_m = binom(m + N, N)`.
    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn quotient_dim(&self) -> usize {
        self.standard.len()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    /// Indices (into [`GradedPiece::monomials`]) of the standard monomials.
    pub fn standard(&self) -> &[usize] {
        &self.standard
    }

    pub fn standard_monomials(&self) -> Vec<MultiIndex> {
        self.standard.iter().map(|&i| self.monomials[i].clone()).collect()
    }

    pub fn index_of(&self, m: &MultiIndex) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Quotient coordinates of an element of `S_m`.
    pub fn reduce_to_quotient(&self, v: &[Rational]) -> Vec<Rational> {
        let mut w = v.to_vec();
        self.echelon.reduce(&mut w);
        self.standard.iter().map(|&i| w[i].clone()).collect()
    }

    /// Quotient coordinates of the monomial with index `idx`.
    pub fn monomial_image(&self, idx: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.quotient_dim()];
        if let Some(k) = self.quotient_pos[idx] {
            out[k] = Rational::one();
            return out;
        }
        let r = self.echelon.pivots.iter().position(|&p| p == idx).expect("non-standard monomial is a pivot");
        for (k, &s) in self.standard.iter().enumerate() {
            out[k] = -self.echelon.rows[r][s].clone();
        }
        out
    }

    /// Every monomial's quotient image, as rows of a `d_m × P(m)` matrix.
    pub fn quotient_matrix(&self) -> MatrixQ {
        let rows = (0..self.ambient_dim()).map(|i| self.monomial_image(i)).collect();
        MatrixQ::from_rows_with_cols(rows, self.quotient_dim()).expect("consistent rows")
    }
}

/// The degree-`m` piece of `I`: the echelonized span of `x^α g` over all
/// generators `g` with `deg g <= m`.
pub fn ideal_degree_piece(ideal: &HomogeneousIdeal, m: u32) -> GradedPiece {
    let n = ideal.ambient_dim();
    let monomials = enumerate_monomials(n, m);
    let index: HashMap<&MultiIndex, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in ideal.generators() {
        if g.degree() > m {
            continue;
        }
        for alpha in enumerate_monomials(n, m - g.degree()) {
            let mut row = vec![Rational::zero(); monomials.len()];
            for (c, mono) in g.terms() {
                row[index[&mono.mul(&alpha)]] += c;
            }
            rows.push(row);
        }
    }
    let echelon = Echelon::from_rows(rows, monomials.len());
    GradedPiece::assemble(m, monomials, echelon)
}

/// Matrix of multiplication by the linear form `form` from the quotient at
/// degree `source.degree()` to the quotient at the next degree.
///
/// Row `i` holds the image of the `i`-th standard monomial of `source` in
/// the standard basis of `target`, so the matrix is
/// `quotient_dim(source) × quotient_dim(target)`.
pub fn mult_map(source: &GradedPiece, target: &GradedPiece, form: &[Rational]) -> Result<MatrixQ> {
    if target.degree() != source.degree() + 1 {
        return Err(Error::Precondition(format!(
            "multiplication map needs consecutive degrees, got {} and {}",
            source.degree(),
            target.degree()
        )));
    }
    if form.len() != source.num_vars() {
        return Err(Error::DimensionMismatch { expected: source.num_vars(), got: form.len() });
    }
    let rows = source
        .standard()
        .iter()
        .map(|&i| {
            let mono = &source.monomials()[i];
            let mut v = vec![Rational::zero(); target.ambient_dim()];
            for (j, c) in form.iter().enumerate() {
                if !c.is_zero() {
                    v[target.index_of(&mono.times_var(j)).expect("degree m+1 monomial")] += c;
                }
            }
            target.reduce_to_quotient(&v)
        })
        .collect();
    MatrixQ::from_rows_with_cols(rows, target.quotient_dim())
}

/// Serialized form of a piece, as written to the on-disk cache.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceRecord {
    pub num_vars: usize,
    pub degree: u32,
    pub pivots: Vec<usize>,
    pub rows: Vec<RowRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RowRecord(#[serde(with = "serde_vec")] pub Vec<Rational>);

impl GradedPiece {
    pub fn to_record(&self) -> PieceRecord {
        PieceRecord {
            num_vars: self.num_vars(),
            degree: self.degree,
            pivots: self.echelon.pivots.clone(),
            rows: self.echelon.rows.iter().cloned().map(RowRecord).collect(),
        }
    }

    /// Rebuilds a piece from a record, re-echelonizing so a corrupted record
    /// cannot produce an inconsistent piece.
    pub fn from_record(rec: PieceRecord) -> Result<Self> {
        let rows = rec.rows.into_iter().map(|r| r.0).collect();
        let piece = Self::from_spanning_rows(rec.num_vars, rec.degree, rows)?;
        if piece.echelon.pivots != rec.pivots {
            return Err(Error::Input("cached piece does not match its recorded pivots".into()));
        }
        Ok(piece)
    }
}

/// Persistent storage for graded pieces, keyed by ideal and degree.
pub trait PieceStore: Send + Sync {
    fn load(&self, ideal: &HomogeneousIdeal, m: u32) -> Option<GradedPiece>;
    fn store(&self, ideal: &HomogeneousIdeal, m: u32, piece: &GradedPiece);
}

/// An ideal with memoized graded pieces, optionally backed by a
/// [`PieceStore`].
pub struct IdealPieces {
    ideal: HomogeneousIdeal,
    memo: Mutex<BTreeMap<u32, Arc<GradedPiece>>>,
    store: Option<Arc<dyn PieceStore>>,
}

impl IdealPieces {
    pub fn new(ideal: HomogeneousIdeal) -> Self {
        IdealPieces { ideal, memo: Mutex::new(BTreeMap::new()), store: None }
    }

    pub fn with_store(ideal: HomogeneousIdeal, store: Arc<dyn PieceStore>) -> Self {
        IdealPieces { ideal, memo: Mutex::new(BTreeMap::new()), store: Some(store) }
    }

    pub fn ideal(&self) -> &HomogeneousIdeal {
        &self.ideal
    }

    pub fn piece(&self, m: u32) -> Arc<GradedPiece> {
        if let Some(p) = self.memo.lock().expect("memo lock").get(&m) {
            return p.clone();
        }
        let piece = match self.store.as_ref().and_then(|s| s.load(&self.ideal, m)) {
            Some(p) => p,
            None => {
                let p = ideal_degree_piece(&self.ideal, m);
                if let Some(s) = &self.store {
                    s.store(&self.ideal, m, &p);
                }
                p
            }
        };
        let piece = Arc::new(piece);
        self.memo.lock().expect("memo lock").entry(m).or_insert(piece).clone()
    }

    pub fn hilbert_function(&self, m: u32) -> usize {
        self.piece(m).quotient_dim()
    }

    pub fn mult_map(&self, m: u32, form: &[Rational]) -> Result<MatrixQ> {
        mult_map(&self.piece(m), &self.piece(m + 1), form)
    }
}
