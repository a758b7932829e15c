//! Dense matrices over the rationals.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on
//! an integer copy of the matrix; reduced row echelon forms and null spaces
//! work directly over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_of_denominators, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form: every row has a leading one at `pivots[i]`,
/// and pivot columns are zero in every other row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

/// How [`MatrixQ::pivot_columns`] chooses its pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PivotStrategy {
    /// Leftmost pivot columns of the row echelon form.
    MinIndex,
    /// Complete pivoting on the entry with the largest absolute numerator.
    MaxAbsNumerator,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`MatrixQ::from_rows`] but keeps the column count when there are no rows.
    pub fn from_rows_with_cols(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        Ok(MatrixQ { rows: n, cols, data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        Self::from_rows_with_cols(rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        let e = &mut self.data[i * self.cols + j];
        *e += v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> MatrixQ {
        let mut s = MatrixQ::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a, b, self.get(i, j).clone());
            }
        }
        s
    }

    pub fn mul(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = MatrixQ::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &MatrixQ) -> Result<MatrixQ> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(MatrixQ { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Rational) -> MatrixQ {
        MatrixQ { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Row-vector times matrix.
    pub fn left_apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += x * a;
                }
            }
        }
        Ok(out)
    }

    /// Integer copy of the matrix with every row scaled by the lcm of its
    /// denominators. Returns the rows and the product of the multipliers.
    fn integerized(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = lcm_of_denominators(row);
                let out = row.iter().map(|r| (r * Rational::from_integer(l.clone())).to_integer()).collect();
                scale *= &l;
                out
            })
            .collect();
        (rows, scale)
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integerized();
        bareiss(&mut a, self.cols).rank
    }

    /// Exact determinant. Errors on non-square input.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (mut a, scale) = self.integerized();
        let out = bareiss(&mut a, self.cols);
        if out.rank < self.rows {
            return Ok(Rational::zero());
        }
        let mut d = a[self.rows - 1][self.cols - 1].clone();
        if out.swaps % 2 == 1 {
            d = -d;
        }
        Ok(Rational::new(d, scale))
    }

    pub fn rref(&self) -> Echelon {
        Echelon::from_rows(self.row_vecs(), self.cols)
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let e = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &e.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &p) in e.rows.iter().zip(&e.pivots) {
                    x[p] = -row[f].clone();
                }
                x
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<MatrixQ> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        let e = Echelon::from_rows(aug, 2 * n);
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return None;
        }
        let rows = e.rows.into_iter().map(|r| r[n..].to_vec()).collect();
        MatrixQ::from_rows_with_cols(rows, n).ok()
    }

    /// Indices of `rank` columns whose restriction is nonsingular, in
    /// increasing order.
    pub fn pivot_columns(&self, strategy: PivotStrategy) -> Vec<usize> {
        match strategy {
            PivotStrategy::MinIndex => self.rref().pivots,
            PivotStrategy::MaxAbsNumerator => {
                let mut a = self.row_vecs();
                let mut row_live = vec![true; self.rows];
                let mut col_live = vec![true; self.cols];
                let mut chosen = Vec::new();
                loop {
                    let mut best: Option<(usize, usize)> = None;
                    for i in (0..self.rows).filter(|&i| row_live[i]) {
                        for j in (0..self.cols).filter(|&j| col_live[j]) {
                            if a[i][j].is_zero() {
                                continue;
                            }
                            let better = match best {
                                None => true,
                                Some((bi, bj)) => a[i][j].numer().abs() > a[bi][bj].numer().abs(),
                            };
                            if better {
                                best = Some((i, j));
                            }
                        }
                    }
                    let Some((pi, pj)) = best else { break };
                    row_live[pi] = false;
                    col_live[pj] = false;
                    chosen.push(pj);
                    let prow = a[pi].clone();
                    for i in (0..self.rows).filter(|&i| row_live[i]) {
                        if a[i][pj].is_zero() {
                            continue;
                        }
                        let f = &a[i][pj] / &prow[pj];
                        for j in 0..self.cols {
                            if !prow[j].is_zero() {
                                let t = &f * &prow[j];
                                a[i][j] -= t;
                            }
                        }
                    }
                }
                chosen.sort_unstable();
                chosen
            }
        }
    }
}

struct BareissOutcome {
    rank: usize,
    swaps: usize,
}

/// In-place fraction-free elimination. After return the first `rank` rows
/// form a row echelon form whose pivots are leading principal minors.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> BareissOutcome {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    BareissOutcome { rank, swaps }
}

impl Echelon {
    pub fn from_rows(mut rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Subtracts the echelon rows from `v` so that `v` vanishes on every
    /// pivot column.
    pub fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn identity_rank_and_det() {
        let i = MatrixQ::identity(3);
        assert_eq!(i.rank(), 3);
        assert_eq!(i.det().unwrap(), int(1));
    }

    #[test]
    fn zero_matrix_rank() {
        assert_eq!(MatrixQ::zeros(4, 7).rank(), 0);
    }

    #[test]
    fn conic_relation_has_rank_one() {
        // z0z2 - z1^2 in the basis z0^2, z0z1, z0z2, z1^2, z1z2, z2^2
        let m = MatrixQ::from_i64(&[&[0, 0, 1, -1, 0, 0]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn diagonal_det() {
        let mut m = MatrixQ::zeros(2, 2);
        m.set(0, 0, rat(1, 2));
        m.set(1, 1, int(-3));
        assert_eq!(m.det().unwrap(), rat(-3, 2));
    }

    #[test]
    fn det_needs_square() {
        assert!(MatrixQ::zeros(2, 3).det().is_err());
    }

    #[test]
    fn det_sign_under_swap() {
        let m = MatrixQ::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), int(-1));
        let m = MatrixQ::from_i64(&[&[0, 2, 1], &[3, 0, 0], &[0, 0, 5]]);
        assert_eq!(m.det().unwrap(), int(-30));
    }

    #[test]
    fn singular_det_is_zero() {
        let m = MatrixQ::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.det().unwrap(), int(0));
    }

    #[test]
    fn nullspace_spans_kernel() {
        let m = MatrixQ::from_i64(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for x in ns {
            let col = MatrixQ::from_rows(x.into_iter().map(|v| vec![v]).collect()).unwrap();
            assert!(m.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let m = MatrixQ::from_rows(vec![vec![rat(1, 2), int(3)], vec![int(-1), rat(2, 7)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), MatrixQ::identity(2));
        assert!(MatrixQ::from_i64(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn pivot_strategies_pick_nonsingular_columns() {
        let m = MatrixQ::from_i64(&[&[1, 1, 0, 9], &[0, 1, 1, 0]]);
        for s in [PivotStrategy::MinIndex, PivotStrategy::MaxAbsNumerator] {
            let cols = m.pivot_columns(s);
            assert_eq!(cols.len(), 2);
            assert_ne!(m.submatrix(&[0, 1], &cols).det().unwrap(), int(0));
        }
        assert_eq!(m.pivot_columns(PivotStrategy::MinIndex), vec![0, 1]);
        assert_eq!(m.pivot_columns(PivotStrategy::MaxAbsNumerator), vec![1, 3]);
    }
}
