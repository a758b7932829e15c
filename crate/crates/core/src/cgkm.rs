//! Difference polynomials `P_{k,l}`, the triangular `q`-system, and
//! weight-level checks of the expansion of `det π_*(L^m)` in binomial
//! coefficients.
//!
//! Sign conventions: [`pkl_polynomial`] is `Δ^k m^l`, so `P_{k,k} = k!`.
//! The alternating sum `Σ_j (-1)^{j+1} binom(k,j) (m+j)^l` used in the
//! `q`-system is [`pkl_displayed`], equal to `(-1)^{k+1} Δ^k m^l`. Only the
//! second choice makes both the exponent identity and the weight claim
//! hold, which [`verify_identities`] checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::diff::{elementary_symmetric, forward_difference};
use crate::exact::poly::{binomial_int, factorial, PolyM};
use crate::exact::ratfunc::RatFuncM;
use crate::exact::rational::{from_bigint, int, Rational};
use crate::futaki::c_table;
use crate::graded::{HilbertData, MuConvention};
use crate::weight::{OnePS, WeightPolynomial};

/// `Δ^k m^l`.
pub fn pkl_polynomial(k: usize, l: usize) -> PolyM {
    forward_difference(&PolyM::monomial(l), k)
}

/// `Σ_{0≤j≤k} (-1)^{j+1} binom(k,j) (m+j)^l`, which is
/// `(-1)^{k+1} Δ^k m^l`.
pub fn pkl_displayed(k: usize, l: usize) -> PolyM {
    let mono = PolyM::monomial(l);
    let mut out = PolyM::zero();
    for j in 0..=k {
        let sign = if j % 2 == 0 { -1 } else { 1 };
        let c = from_bigint(binomial_int(k as u64, j as u64) * sign);
        out = &out + &mono.shift(&int(j as i64)).scale(&c);
    }
    out
}

fn alt_binom(k: usize, i: usize) -> Rational {
    let sign = if i % 2 == 0 { -1 } else { 1 };
    from_bigint(binomial_int(k as u64, i as u64) * sign)
}

fn require_positive_dim(h: &HilbertData) -> Result<usize> {
    if h.dim == 0 {
        return Err(Error::Precondition("the expansion identities need n >= 1; the Hilbert polynomial is constant".into()));
    }
    Ok(h.dim)
}

/// Solves `Σ_{k=n+1-l}^{j} P̃_{k,j}(m) q_k(m) = c_{l,j}` for
/// `j = n+1-l..=n+1`, where `P̃` is [`pkl_displayed`].
///
/// Returns `[q_{n+1}, q_n, ..., q_{n+1-l}]`. The diagonal entries
/// `P̃_{k,k} = (-1)^{k+1} k!` are nonzero constants.
pub fn solve_q_system(h: &HilbertData, l: usize) -> Result<Vec<RatFuncM>> {
    let c = c_table(h, l)?;
    solve_q_system_with_rhs(h.dim, l, &c[l])
}

/// [`solve_q_system`] with an explicit right side `rhs[j] = c_{l,j}`.
pub fn solve_q_system_with_rhs(n: usize, l: usize, rhs: &[Rational]) -> Result<Vec<RatFuncM>> {
    if l > n + 1 {
        return Err(Error::Precondition(format!("l = {l} exceeds n + 1 = {}", n + 1)));
    }
    let low = n + 1 - l;
    // q[k - low] for k = low..=n+1, filled from the smallest k upward.
    let mut q: Vec<RatFuncM> = Vec::with_capacity(l + 1);
    for j in low..=n + 1 {
        let mut acc = RatFuncM::constant(rhs[j].clone());
        for k in low..j {
            acc = &acc - &(&RatFuncM::from_poly(pkl_displayed(k, j)) * &q[k - low]);
        }
        let diag = RatFuncM::from_poly(pkl_displayed(j, j));
        if diag.is_zero() {
            return Err(Error::Internal(format!("zero diagonal entry at k = {j}")));
        }
        q.push(acc.checked_div(&diag)?);
    }
    q.reverse();
    Ok(q)
}

/// Residuals `Σ_k P̃_{k,j} q_k - c_{l,j}` for every `j = 0..=n+1`.
pub fn q_system_residual(n: usize, l: usize, q: &[RatFuncM], rhs: &[Rational]) -> Vec<RatFuncM> {
    let low = n + 1 - l;
    (0..=n + 1)
        .map(|j| {
            let mut acc = RatFuncM::constant(-rhs[j].clone());
            for k in low..=n + 1 {
                let qk = &q[n + 1 - k];
                acc = &acc + &(&RatFuncM::from_poly(pkl_displayed(k, j)) * qk);
            }
            acc
        })
        .collect()
}

/// `Σ_{p=0..l} Σ_{i=0..n+1-p} (-1)^{i+1} binom(n+1-p, i) q_{n+1-p}(m) f(m+i)`.
fn q_combination(n: usize, q: &[RatFuncM], f: &PolyM) -> RatFuncM {
    let mut acc = RatFuncM::zero();
    for (p, qk) in q.iter().enumerate() {
        let k = n + 1 - p;
        let mut inner = PolyM::zero();
        for i in 0..=k {
            inner = &inner + &f.shift(&int(i as i64)).scale(&alt_binom(k, i));
        }
        acc = &acc + &(qk * &RatFuncM::from_poly(inner));
    }
    acc
}

/// The exponent identity: the `q`-weighted combination of `(m+i) P(m+i)`
/// minus its target (`1` when `l = 0`, else `0`). The result must be the
/// zero rational function.
pub fn exponent_identity_check(h: &HilbertData, l: usize) -> Result<RatFuncM> {
    let n = require_positive_dim(h)?;
    let q = solve_q_system(h, l)?;
    let m_p = &PolyM::monomial(1) * &h.poly;
    let target = if l == 0 { Rational::one() } else { Rational::zero() };
    Ok(&q_combination(n, &q, &m_p) - &RatFuncM::constant(target))
}

/// Checks `binom(x, k) = (1/k!) Σ_{j<k} (-1)^j σ_j(1..k-1) x^{k-j}` as
/// polynomials and at every `x` in `points`.
pub fn sigma_expansion_check(k: usize, points: impl IntoIterator<Item = i64>) -> bool {
    if k == 0 {
        return false;
    }
    let rhs = sigma_expansion(k);
    let lhs = PolyM::binomial(k);
    lhs == rhs && points.into_iter().all(|x| lhs.eval_i64(x) == rhs.eval_i64(x))
}

fn sigma_coefficients(k: usize) -> Vec<Rational> {
    let roots: Vec<Rational> = (1..k).map(|i| int(i as i64)).collect();
    (0..k)
        .map(|j| {
            let s = elementary_symmetric(j, &roots);
            if j % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect()
}

fn sigma_expansion(k: usize) -> PolyM {
    let inv = Rational::from_integer(factorial(k)).recip();
    let mut out = PolyM::zero();
    for (j, c) in sigma_coefficients(k).into_iter().enumerate() {
        out = &out + &PolyM::monomial(k - j).scale(&(c * &inv));
    }
    out
}

/// The weight of `L_l^∨` computed three ways.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LlWeight {
    pub l: usize,
    /// `q`-weighted combination of the Hilbert-point weights `w(m+i)`;
    /// a constant when the claim holds.
    #[serde(serialize_with = "ser_display")]
    pub combination: RatFuncM,
    /// `Σ_j c_{l,j} a_j`.
    #[serde(with = "crate::exact::rational::serde_str")]
    pub futaki: Rational,
    /// `Σ_k e_k E_k` with `E_k` the `σ`-expansion weights.
    #[serde(with = "crate::exact::rational::serde_str")]
    pub binomial_route: Rational,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl LlWeight {
    pub fn agrees(&self) -> bool {
        self.combination.as_constant().as_ref() == Some(&self.futaki) && self.binomial_route == self.futaki
    }
}

/// The weight of `L_l^∨`; fails if the three computations disagree.
pub fn ll_weight(h: &HilbertData, w: &WeightPolynomial, l: usize) -> Result<LlWeight> {
    let n = require_positive_dim(h)?;
    let c = c_table(h, l)?;
    let q = solve_q_system_with_rhs(n, l, &c[l])?;
    let combination = q_combination(n, &q, &w.poly);
    let futaki: Rational = (0..=n + 1).map(|j| &c[l][j] * w.a(j)).sum();
    let e = w.binomial(n + 2)?;
    let mut binomial_route = Rational::zero();
    for (k, ek) in e.iter().enumerate().skip(1) {
        let inv = Rational::from_integer(factorial(k)).recip();
        let big_e: Rational =
            sigma_coefficients(k).iter().enumerate().map(|(j, s)| s * &c[l][k - j]).sum::<Rational>() * inv;
        binomial_route += from_bigint(ek.clone()) * big_e;
    }
    let out = LlWeight { l, combination, futaki, binomial_route };
    if !out.agrees() {
        return Err(Error::IdentityFailure(format!(
            "weight of L_{l}: combination {}, futaki {}, binomial route {}",
            out.combination, out.futaki, out.binomial_route
        )));
    }
    Ok(out)
}

/// The weight of the dual refined CM line against `F_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RefinedCm {
    pub mu: Rational,
    pub weight: Rational,
    pub f1: Rational,
    /// `weight / F_1`, when `F_1 != 0`.
    pub ratio: Option<Rational>,
}

/// `-[(n(n+1) + μ) e_{n+1} - 2(n+1) e_n]`, the weight of the dual refined
/// CM line, read off the top two binomial coefficients of `w_λ`.
///
/// The contribution of the auxiliary line cancels only for special linear
/// subgroups, so other subgroups are rejected.
pub fn refined_cm_weight(
    h: &HilbertData,
    w: &WeightPolynomial,
    lambda: &OnePS,
    conv: MuConvention,
) -> Result<RefinedCm> {
    if !lambda.is_special_linear() {
        return Err(Error::NotSpecialLinear {
            lambda: lambda.weights().to_vec(),
            sum: lambda.weights().iter().sum(),
        });
    }
    let n = require_positive_dim(h)?;
    let e = w.binomial(n + 2)?;
    let mu = h.mu(conv).clone();
    let nn = int((n * (n + 1)) as i64);
    let weight = -((nn + &mu) * from_bigint(e[n + 1].clone()) - int(2 * (n as i64 + 1)) * from_bigint(e[n].clone()));
    let c = c_table(h, 1)?;
    let f1: Rational = (0..=n + 1).map(|j| &c[1][j] * w.a(j)).sum();
    let ratio = if f1.is_zero() { None } else { Some(&weight / &f1) };
    Ok(RefinedCm { mu, weight, f1, ratio })
}

/// One identity checked by [`verify_identities`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub l: Option<usize>,
    /// `"0"` when the identity holds.
    pub residual: String,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual == "0"
    }
}

fn first_nonzero(rs: &[RatFuncM]) -> String {
    rs.iter().find(|r| !r.is_zero()).map_or_else(|| "0".to_string(), |r| r.to_string())
}

/// The `q`-system and exponent identity for `l = 0..=n+1`, plus the
/// difference-polynomial and `σ`-expansion identities up to `n + 1`.
pub fn verify_identities(h: &HilbertData) -> Result<Vec<IdentityCheck>> {
    let n = require_positive_dim(h)?;
    let mut out = Vec::new();
    for l in 0..=n + 1 {
        let c = c_table(h, l)?;
        let q = solve_q_system_with_rhs(n, l, &c[l])?;
        out.push(IdentityCheck {
            identity: "q_system".into(),
            l: Some(l),
            residual: first_nonzero(&q_system_residual(n, l, &q, &c[l])),
        });
        out.push(IdentityCheck {
            identity: "exponent".into(),
            l: Some(l),
            residual: first_nonzero(&[exponent_identity_check(h, l)?]),
        });
    }
    let top = n + 1;
    let mut bad = Vec::new();
    for k in 0..=top {
        for l in 0..=top {
            let p = pkl_polynomial(k, l);
            let ok = if l < k {
                p.is_zero()
            } else if l == k {
                p == PolyM::constant(Rational::from_integer(factorial(k)))
            } else {
                true
            };
            let disp = pkl_displayed(k, l);
            let sign = if k % 2 == 1 { p.clone() } else { -&p };
            if !ok || disp != sign {
                bad.push(format!("P_{{{k},{l}}}"));
            }
        }
    }
    out.push(IdentityCheck { identity: "pkl".into(), l: None, residual: bad.first().cloned().unwrap_or_else(|| "0".into()) });
    let sigma_ok = (1..=top.max(2)).all(|k| sigma_expansion_check(k, 0..=20));
    out.push(IdentityCheck { identity: "sigma_expansion".into(), l: None, residual: if sigma_ok { "0".into() } else { "1".into() } });
    Ok(out)
}

/// Everything the expansion computes for one Hilbert polynomial and,
/// optionally, one subgroup.
#[derive(Clone, Debug, PartialEq)]
pub struct CgkmLedger {
    pub n: usize,
    pub hilbert: HilbertData,
    /// `pkl[k][l] = Δ^k m^l` for `k, l <= n + 1`.
    pub pkl: Vec<Vec<PolyM>>,
    /// `q[l] = [q_{n+1}, ..., q_{n+1-l}]`.
    pub q: Vec<Vec<RatFuncM>>,
    /// `e_0..e_{n+1}` of the weight polynomial.
    pub e: Option<Vec<BigInt>>,
    pub ll: Vec<LlWeight>,
    pub refined_literal: Option<RefinedCm>,
    pub refined_normalized: Option<RefinedCm>,
}

impl CgkmLedger {
    pub fn build(h: &HilbertData, weight: Option<(&OnePS, &WeightPolynomial)>) -> Result<Self> {
        let n = require_positive_dim(h)?;
        let pkl = (0..=n + 1).map(|k| (0..=n + 1).map(|l| pkl_polynomial(k, l)).collect()).collect();
        let q = (0..=n + 1).map(|l| solve_q_system(h, l)).collect::<Result<Vec<_>>>()?;
        let mut ledger = CgkmLedger {
            n,
            hilbert: h.clone(),
            pkl,
            q,
            e: None,
            ll: Vec::new(),
            refined_literal: None,
            refined_normalized: None,
        };
        if let Some((lambda, w)) = weight {
            ledger.e = Some(w.binomial(n + 2)?);
            ledger.ll = (0..=n + 1).map(|l| ll_weight(h, w, l)).collect::<Result<_>>()?;
            ledger.refined_literal = Some(refined_cm_weight(h, w, lambda, MuConvention::Literal)?);
            ledger.refined_normalized = Some(refined_cm_weight(h, w, lambda, MuConvention::Normalized)?);
        }
        Ok(ledger)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::diff::ValueWindow;
    use crate::exact::rational::rat;

    fn conic_h() -> HilbertData {
        HilbertData::from_polynomial(PolyM::from_i64(&[1, 2])).unwrap()
    }

    fn wpoly(c: &[i64]) -> WeightPolynomial {
        WeightPolynomial { poly: PolyM::from_i64(c), samples: ValueWindow::from_i64(0, &[]) }
    }

    #[test]
    fn pkl_table() {
        assert_eq!(pkl_polynomial(2, 3), PolyM::from_i64(&[6, 6]));
        assert!(pkl_polynomial(3, 2).is_zero());
        assert_eq!(pkl_polynomial(4, 4), PolyM::from_i64(&[24]));
        assert_eq!(pkl_displayed(2, 2), PolyM::from_i64(&[-2]));
        assert_eq!(pkl_displayed(3, 3), PolyM::from_i64(&[6]));
    }

    #[test]
    fn q_system_l0_is_constant() {
        let q = solve_q_system(&conic_h(), 0).unwrap();
        assert_eq!(q.len(), 1);
        // c_{0,2} = 1/2, P̃_{2,2} = -2.
        assert_eq!(q[0].as_constant(), Some(rat(-1, 4)));
    }

    #[test]
    fn conic_identities() {
        for check in verify_identities(&conic_h()).unwrap() {
            assert!(check.holds(), "{check:?}");
        }
    }

    #[test]
    fn constant_polynomial_is_rejected() {
        let h = HilbertData::from_polynomial(PolyM::from_i64(&[3])).unwrap();
        assert!(matches!(exponent_identity_check(&h, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn sigma() {
        for k in 1..=6 {
            assert!(sigma_expansion_check(k, 0..=20));
        }
    }

    #[test]
    fn conic_ll_weights() {
        let w = wpoly(&[0, 1, -1]);
        assert_eq!(ll_weight(&conic_h(), &w, 1).unwrap().futaki, rat(3, 4));
        assert_eq!(ll_weight(&conic_h(), &w, 0).unwrap().futaki, rat(-1, 2));
    }

    #[test]
    fn conic_refined_cm() {
        let lambda = OnePS::new(vec![1, 1, -2], false).unwrap();
        let r = refined_cm_weight(&conic_h(), &wpoly(&[0, 1, -1]), &lambda, MuConvention::Literal).unwrap();
        assert_eq!(r.weight, int(6));
        assert_eq!(r.ratio, Some(int(8)));
        let gl = OnePS::new(vec![1, 1, -1], true).unwrap();
        assert!(refined_cm_weight(&conic_h(), &wpoly(&[0, 1, -1]), &gl, MuConvention::Literal).is_err());
    }
}
