//! Expansion of `w_λ(m) / (m P(m))` in powers of `1/m`, the generalized
//! Futaki invariant, and sign-based stability verdicts.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::poly::PolyM;
use crate::exact::rational::Rational;
use crate::exact::series::series_ratio_down_to;
use crate::graded::{HilbertData, IdealPieces, Window};
use crate::weight::{weight_polynomial, OnePS, WeightPolynomial};

/// The table `c_{l,j}` with `F_l = Σ_j c_{l,j} a_j`.
///
/// Rows are `l = 0..=order`, columns `j = 0..=n+1`; entries with
/// `j < n + 1 - l` are zero. The entries depend only on `P`: with
/// `g_k` the coefficients of `m^n / P(m) = Σ g_k m^{-k}`, one has
/// `c_{l,j} = g_{l+j-n-1}`.
pub fn c_table(h: &HilbertData, order: usize) -> Result<Vec<Vec<Rational>>> {
    let n = h.dim;
    let b_n = h.poly.coeff(n);
    if b_n.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let inv = b_n.recip();
    let mut g: Vec<Rational> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = if k == 0 { Rational::from_integer(1.into()) } else { Rational::zero() };
        for i in 1..=k.min(n) {
            acc -= h.poly.coeff(n - i) * &g[k - i];
        }
        g.push(acc * &inv);
    }
    Ok((0..=order)
        .map(|l| {
            (0..=n + 1)
                .map(|j| if l + j >= n + 1 { g[l + j - n - 1].clone() } else { Rational::zero() })
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FutakiExpansion {
    pub order: usize,
    /// `F_0..F_order`.
    pub f: Vec<Rational>,
    pub c: Vec<Vec<Rational>>,
}

impl FutakiExpansion {
    pub fn f0(&self) -> &Rational {
        &self.f[0]
    }

    /// The generalized Futaki invariant; zero when `order == 0`.
    pub fn f1(&self) -> Rational {
        self.f.get(1).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Computes `F_0..F_order` by series division and by the `c_{l,j}` sums,
/// and fails unless the two agree.
pub fn futaki_expansion(h: &HilbertData, w: &WeightPolynomial, order: usize) -> Result<FutakiExpansion> {
    let n = h.dim;
    if let Some(deg) = w.poly.degree() {
        if deg > n + 1 {
            return Err(Error::InconsistentPair(format!(
                "weight polynomial has degree {deg} but the Hilbert polynomial has degree {n}"
            )));
        }
    }
    let c = c_table(h, order)?;
    let m_p = &PolyM::monomial(1) * &h.poly;
    let series = series_ratio_down_to(&w.poly, &m_p, -(order as i64))?;
    let mut f = Vec::with_capacity(order + 1);
    for (l, row) in c.iter().enumerate() {
        let by_series = series.coeff(-(l as i64)).ok_or_else(|| Error::Internal("series truncated early".into()))?;
        let by_table: Rational = row.iter().enumerate().map(|(j, c)| c * w.a(j)).sum();
        if by_series != by_table {
            return Err(Error::IdentityFailure(format!(
                "F_{l}: series division gives {by_series}, c-table gives {by_table}"
            )));
        }
        f.push(by_series);
    }
    Ok(FutakiExpansion { order, f, c })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Destabilized,
    Undetermined,
}

/// Sign tests for a single subgroup.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaRecord {
    pub lambda: OnePS,
    pub weight: WeightPolynomial,
    pub expansion: FutakiExpansion,
    /// `w_λ(m) < 0` at every sampled `m`.
    pub hilbert_stable: bool,
    /// `w_λ(m) <= 0` at every sampled `m`.
    pub hilbert_semistable: bool,
    /// `F_1 < 0`.
    pub k_stable: bool,
    /// `F_1 <= 0`.
    pub k_semistable: bool,
}

impl LambdaRecord {
    pub fn f1(&self) -> Rational {
        self.expansion.f1()
    }

    /// `-F_1`, the invariant under the opposite sign convention.
    pub fn opposite_convention_df(&self) -> Rational {
        -self.expansion.f1()
    }

    /// Names of the failed sign tests.
    pub fn failures(&self) -> Vec<&'static str> {
        if self.lambda.is_trivial() {
            return Vec::new();
        }
        let mut out = Vec::new();
        if !self.hilbert_stable {
            out.push("hilbert");
        }
        if !self.k_stable {
            out.push("k");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub records: Vec<LambdaRecord>,
    pub verdict: Verdict,
    /// Indices into `records` of the destabilizing subgroups.
    pub destabilizing: Vec<usize>,
}

impl StabilityVerdict {
    fn from_records(records: Vec<LambdaRecord>) -> Self {
        let destabilizing: Vec<usize> =
            records.iter().enumerate().filter(|(_, r)| !r.failures().is_empty()).map(|(i, _)| i).collect();
        let verdict = if destabilizing.is_empty() { Verdict::Undetermined } else { Verdict::Destabilized };
        StabilityVerdict { records, verdict, destabilizing }
    }
}

pub fn lambda_record(
    pieces: &IdealPieces,
    h: &HilbertData,
    lambda: &OnePS,
    window: Window,
    order: usize,
) -> Result<LambdaRecord> {
    let weight = weight_polynomial(pieces, lambda, window, h)?;
    let expansion = futaki_expansion(h, &weight, order.max(1))?;
    let f1 = expansion.f1();
    Ok(LambdaRecord {
        lambda: lambda.clone(),
        hilbert_stable: weight.samples.values.iter().all(|v| v.is_negative()),
        hilbert_semistable: weight.samples.values.iter().all(|v| !v.is_positive()),
        k_stable: f1.is_negative(),
        k_semistable: !f1.is_positive(),
        weight,
        expansion,
    })
}

/// Runs the Hilbert and K sign tests for every subgroup in `lambdas`.
///
/// A finite set of subgroups can only exhibit instability, so the verdict
/// is either `destabilized` or `undetermined`. Trivial subgroups never
/// destabilize.
pub fn stability_report(
    pieces: &IdealPieces,
    h: &HilbertData,
    lambdas: &[OnePS],
    window: Window,
    order: usize,
) -> Result<StabilityVerdict> {
    if lambdas.is_empty() {
        return Err(Error::Input("stability report needs at least one subgroup".into()));
    }
    let records = lambdas
        .par_iter()
        .map(|l| lambda_record(pieces, h, l, window, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(StabilityVerdict::from_records(records))
}
