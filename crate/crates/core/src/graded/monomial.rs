use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent vector `(i_0, ..., i_N)` of a monomial in `N + 1` variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self * z_j`.
    pub fn times_var(&self, j: usize) -> MultiIndex {
        let mut e = self.0.clone();
        e[j] += 1;
        MultiIndex(e)
    }

    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (j, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if any {
                write!(f, "*")?;
            }
            any = true;
            if e == 1 {
                write!(f, "z{j}")?;
            } else {
                write!(f, "z{j}^{e}")?;
            }
        }
        if !any {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Every monomial of degree `m` in `N + 1` variables, in graded
/// lexicographic order with `z_0 > z_1 > ... > z_N`: the exponent tuples
/// appear in decreasing lexicographic order, so `z_0^m` comes first and
/// `z_N^m` last.
pub fn enumerate_monomials(n: usize, m: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n + 1];
    fill(&mut cur, 0, m, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::binomial_int;

    #[test]
    fn linear_monomials_of_p2() {
        let m = enumerate_monomials(2, 1);
        let want: Vec<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]].iter().map(|e| MultiIndex(e.to_vec())).collect();
        assert_eq!(m, want);
    }

    #[test]
    fn counts_match_binomials() {
        assert_eq!(enumerate_monomials(2, 2).len(), 6);
        assert_eq!(enumerate_monomials(3, 5).len(), 56);
        for n in 0..5 {
            for m in 0..7u32 {
                let count = binomial_int(m as u64 + n as u64, n as u64);
                assert_eq!(enumerate_monomials(n, m).len(), usize::try_from(count).unwrap());
            }
        }
    }

    #[test]
    fn order_is_strictly_decreasing_lex() {
        let m = enumerate_monomials(3, 4);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
        assert!(m.iter().all(|x| x.degree() == 4));
    }

    #[test]
    fn display() {
        assert_eq!(MultiIndex(vec![1, 0, 2]).to_string(), "z0*z2^2");
        assert_eq!(MultiIndex(vec![0, 0]).to_string(), "1");
    }
}
