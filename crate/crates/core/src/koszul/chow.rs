//! Koszul complexes of a quotient ring and Chow forms by torsion.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::{BasedComplex, TorsionCertificate};
use crate::error::{Error, Result};
use crate::exact::matrix::{MatrixQ, PivotStrategy};
use crate::exact::poly::PolyM;
use crate::exact::ratfunc::RatFuncM;
use crate::exact::rational::{int, Rational};
use crate::exact::sample::RationalSampler;
use crate::graded::{enumerate_monomials, HilbertData, IdealPieces, MultiIndex};

/// `n + 1` linear forms on `P^N`, given by their coefficient rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearFormSet {
    forms: Vec<Vec<Rational>>,
}

impl LinearFormSet {
    /// Checks that all rows have the same length and the coefficient matrix
    /// has full row rank.
    pub fn new(forms: Vec<Vec<Rational>>) -> Result<Self> {
        let set = Self::unchecked(forms)?;
        let rank = set.matrix().rank();
        if rank < set.forms.len() {
            return Err(Error::DegenerateForms { rank, needed: set.forms.len() });
        }
        Ok(set)
    }

    /// Like [`LinearFormSet::new`] without the rank check, for complexes
    /// built from degenerate or zero forms.
    pub fn unchecked(forms: Vec<Vec<Rational>>) -> Result<Self> {
        let Some(first) = forms.first() else {
            return Err(Error::Input("need at least one linear form".into()));
        };
        let len = first.len();
        if let Some(bad) = forms.iter().find(|f| f.len() != len) {
            return Err(Error::DimensionMismatch { expected: len, got: bad.len() });
        }
        Ok(LinearFormSet { forms })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn forms(&self) -> &[Vec<Rational>] {
        &self.forms
    }

    pub fn count(&self) -> usize {
        self.forms.len()
    }

    pub fn num_vars(&self) -> usize {
        self.forms[0].len()
    }

    pub fn matrix(&self) -> MatrixQ {
        MatrixQ::from_rows_with_cols(self.forms.clone(), self.num_vars()).expect("rectangular forms")
    }

    /// Replaces form `i` by `rho` times itself.
    pub fn scale_form(&self, i: usize, rho: &Rational) -> Self {
        let mut forms = self.forms.clone();
        for x in forms[i].iter_mut() {
            *x *= rho;
        }
        LinearFormSet { forms }
    }

    /// `(1 - t) A + t B`.
    pub fn pencil(a: &Self, b: &Self, t: &Rational) -> Result<Self> {
        if a.count() != b.count() || a.num_vars() != b.num_vars() {
            return Err(Error::DimensionMismatch { expected: a.count() * a.num_vars(), got: b.count() * b.num_vars() });
        }
        let s = Rational::one() - t;
        let forms = a
            .forms
            .iter()
            .zip(&b.forms)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| &s * p + t * q).collect())
            .collect();
        Self::unchecked(forms)
    }

    pub fn random(sampler: &mut RationalSampler, count: usize, num_vars: usize) -> Self {
        LinearFormSet { forms: sampler.matrix(count, num_vars) }
    }
}

/// `i`-subsets of `0..k` in lexicographic order.
fn wedge_basis(k: usize, i: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for j in start..=k - left {
            cur.push(j);
            rec(j + 1, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if i <= k {
        rec(0, k, i, &mut Vec::new(), &mut out);
    }
    out
}

/// The Koszul complex `K^i = Q_{m+i} ⊗ ∧^i C^{n+1}` of the forms on the
/// quotient ring, with `∂(f ⊗ α) = Σ_j l_j f ⊗ e_j ∧ α`.
///
/// Basis vectors of `K^i` are ordered with the quotient index major and the
/// wedge index minor. `e_j ∧ e_α` is rewritten in increasing order with
/// sign `(-1)^{#{a in α : a < j}}`. When `hilbert` is given, every touched
/// quotient dimension must equal `P`.
pub fn build_koszul(
    pieces: &IdealPieces,
    m: u32,
    forms: &LinearFormSet,
    hilbert: Option<&HilbertData>,
) -> Result<BasedComplex> {
    let num_vars = pieces.ideal().num_vars();
    if forms.num_vars() != num_vars {
        return Err(Error::DimensionMismatch { expected: num_vars, got: forms.num_vars() });
    }
    let k = forms.count();
    let qpieces: Vec<_> = (0..=k as u32).map(|i| pieces.piece(m + i)).collect();
    if let Some(h) = hilbert {
        for p in &qpieces {
            let expected = h.eval(p.degree() as i64);
            if Rational::from_integer(p.quotient_dim().into()) != expected {
                return Err(Error::StabilizationViolated {
                    m: p.degree(),
                    found: p.quotient_dim(),
                    expected: expected.to_string(),
                });
            }
        }
    }
    let wedges: Vec<Vec<Vec<usize>>> = (0..=k).map(|i| wedge_basis(k, i)).collect();
    let dims: Vec<usize> = (0..=k).map(|i| qpieces[i].quotient_dim() * wedges[i].len()).collect();
    let mut boundaries = Vec::with_capacity(k);
    for i in 0..k {
        let blocks = forms
            .forms()
            .iter()
            .map(|l| super::super::graded::mult_map(&qpieces[i], &qpieces[i + 1], l))
            .collect::<Result<Vec<_>>>()?;
        let w_src = &wedges[i];
        let w_dst = &wedges[i + 1];
        let dst_index: BTreeMap<&Vec<usize>, usize> = w_dst.iter().enumerate().map(|(a, s)| (s, a)).collect();
        let mut d = MatrixQ::zeros(dims[i], dims[i + 1]);
        for (a, alpha) in w_src.iter().enumerate() {
            for j in (0..k).filter(|j| !alpha.contains(j)) {
                let below = alpha.iter().filter(|&&x| x < j).count();
                let mut beta = alpha.clone();
                beta.insert(below, j);
                let b = dst_index[&beta];
                let sign = if below % 2 == 0 { int(1) } else { int(-1) };
                let block = &blocks[j];
                for f in 0..block.rows() {
                    for g in 0..block.cols() {
                        let v = block.get(f, g);
                        if !v.is_zero() {
                            d.add_at(f * w_src.len() + a, g * w_dst.len() + b, &(v * &sign));
                        }
                    }
                }
            }
        }
        boundaries.push(d);
    }
    BasedComplex::new(dims, boundaries)
}

/// Torsion of the Koszul complex of `forms` at degree `m`.
///
/// Errors with [`Error::Incidence`] when the complex is not exact, i.e.
/// when the forms have a common zero on the subscheme.
pub fn chow_eval(
    pieces: &IdealPieces,
    forms: &LinearFormSet,
    m: u32,
    strategy: PivotStrategy,
) -> Result<TorsionCertificate> {
    build_koszul(pieces, m, forms, None)?.torsion(strategy)
}

/// Torsion values divided by the torsion of a fixed reference
/// configuration, which removes the basis-dependent constant.
#[derive(Clone, Debug, PartialEq)]
pub struct ChowNormalizer {
    pub m: u32,
    pub reference: LinearFormSet,
    pub reference_torsion: Rational,
}

impl ChowNormalizer {
    /// Uses the first non-incident configuration drawn from `seed`.
    pub fn seeded(pieces: &IdealPieces, count: usize, m: u32, seed: u64, bound: i64) -> Result<Self> {
        let mut sampler = RationalSampler::new(seed, bound);
        for _ in 0..64 {
            let forms = LinearFormSet::random(&mut sampler, count, pieces.ideal().num_vars());
            match chow_eval(pieces, &forms, m, PivotStrategy::MinIndex) {
                Ok(t) => return Ok(ChowNormalizer { m, reference: forms, reference_torsion: t.value }),
                Err(Error::Incidence { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::Interpolation("no non-incident reference configuration found".into()))
    }

    pub fn with_reference(pieces: &IdealPieces, reference: LinearFormSet, m: u32) -> Result<Self> {
        let t = chow_eval(pieces, &reference, m, PivotStrategy::MinIndex)?;
        Ok(ChowNormalizer { m, reference, reference_torsion: t.value })
    }

    pub fn normalize(&self, torsion: &Rational) -> Rational {
        torsion / &self.reference_torsion
    }
}

/// The integer `e` with `torsion(ρ l_i) = ρ^e torsion(l)`, read off by
/// scaling one form by 2; `None` if the ratio is not a power of 2.
pub fn scaling_exponent(pieces: &IdealPieces, forms: &LinearFormSet, m: u32, i: usize) -> Result<Option<i64>> {
    let base = chow_eval(pieces, forms, m, PivotStrategy::MinIndex)?.value;
    let scaled = chow_eval(pieces, &forms.scale_form(i, &int(2)), m, PivotStrategy::MinIndex)?.value;
    Ok(power_of_two(&(scaled / base)))
}

fn power_of_two(r: &Rational) -> Option<i64> {
    let (num, den) = (r.numer(), r.denom());
    let two = BigInt::from(2);
    let walk = |mut x: BigInt| {
        let mut k = 0i64;
        while x > BigInt::one() {
            let (q, rem) = x.div_rem(&two);
            if !rem.is_zero() {
                return None;
            }
            x = q;
            k += 1;
        }
        (x == BigInt::one()).then_some(k)
    };
    if num.is_one() {
        walk(den.clone()).map(|k| -k)
    } else if den.is_one() {
        walk(num.clone())
    } else {
        None
    }
}

/// A polynomial in `groups` groups of `vars` variables, homogeneous of
/// degree `degree` in each group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultihomogPoly {
    pub groups: usize,
    pub vars: usize,
    pub degree: u32,
    pub terms: BTreeMap<Vec<MultiIndex>, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultihomogTerm {
    pub exps: Vec<Vec<u32>>,
    #[serde(with = "crate::exact::rational::serde_str")]
    pub coeff: Rational,
}

impl MultihomogPoly {
    pub fn new(groups: usize, vars: usize, degree: u32, terms: BTreeMap<Vec<MultiIndex>, Rational>) -> Result<Self> {
        for key in terms.keys() {
            if key.len() != groups || key.iter().any(|g| g.num_vars() != vars || g.degree() != degree) {
                return Err(Error::Input(format!("term {key:?} is not of multidegree {degree} in {groups} groups")));
            }
        }
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(MultihomogPoly { groups, vars, degree, terms })
    }

    pub fn eval(&self, point: &[Vec<Rational>]) -> Rational {
        self.terms
            .iter()
            .map(|(key, c)| {
                let mut v = c.clone();
                for (g, mono) in key.iter().enumerate() {
                    for (x, &e) in point[g].iter().zip(mono.exps()) {
                        for _ in 0..e {
                            v *= x;
                        }
                    }
                }
                v
            })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing order of their exponent keys.
    pub fn to_terms(&self) -> Vec<MultihomogTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(k, c)| MultihomogTerm { exps: k.iter().map(|m| m.exps().to_vec()).collect(), coeff: c.clone() })
            .collect()
    }

    /// Scales to coprime integer coefficients with a positive leading term
    /// (the one with the largest exponent key).
    pub fn primitive(&self) -> Self {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut factor = Rational::new(den, num);
        if lead.is_negative() {
            factor = -factor;
        }
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), c * &factor)).collect();
        MultihomogPoly { terms, ..self.clone() }
    }

    /// Swapping any two groups leaves the polynomial unchanged up to the
    /// sign `(-1)^degree`.
    pub fn is_grassmannian_symmetric(&self) -> bool {
        let sign = if self.degree % 2 == 0 { int(1) } else { int(-1) };
        (0..self.groups).all(|a| {
            (a + 1..self.groups).all(|b| {
                self.terms.iter().all(|(k, c)| {
                    let mut s = k.clone();
                    s.swap(a, b);
                    self.terms.get(&s) == Some(&(c * &sign))
                })
            })
        })
    }
}

/// Interpolates the Chow form of an `n`-dimensional subscheme of degree
/// `d` from torsion values.
///
/// The power `p = ±1` with `torsion ∝ R^p` is read from the scaling
/// exponent `e = p d`. Values of `torsion^p` are sampled on a tensor grid
/// of random forms, `binom(d+N, N)` per group, and the per-group
/// Vandermonde systems are inverted one axis at a time. The result is made
/// primitive and checked on held-out samples.
pub fn chow_interpolate(
    pieces: &IdealPieces,
    hilbert: &HilbertData,
    m: u32,
    seed: u64,
    bound: i64,
    held_out: usize,
) -> Result<ChowInterpolation> {
    let groups = hilbert.dim + 1;
    let vars = pieces.ideal().num_vars();
    let d: u32 = u32::try_from(&hilbert.degree).map_err(|_| Error::Interpolation("degree too large".into()))?;
    let mut sampler = RationalSampler::new(seed, bound);
    let normalizer = ChowNormalizer::seeded(pieces, groups, m, seed ^ 0x5eed, bound)?;
    let e = scaling_exponent(pieces, &normalizer.reference, m, 0)?
        .ok_or_else(|| Error::Interpolation("torsion is not multihomogeneous".into()))?;
    let p = if e == d as i64 {
        1
    } else if e == -(d as i64) {
        -1
    } else {
        return Err(Error::Interpolation(format!("scaling exponent {e} is not ±{d}")));
    };
    let monos = enumerate_monomials(vars - 1, d);
    let count = monos.len();
    let mut points: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(groups);
    let mut inverses: Vec<MatrixQ> = Vec::with_capacity(groups);
    for _ in 0..groups {
        let mut found = None;
        for _ in 0..16 {
            let pts = sampler.matrix(count, vars);
            let v = MatrixQ::from_rows_with_cols(pts.iter().map(|x| monomial_values(&monos, x)).collect(), count)?;
            if let Some(inv) = v.inverse() {
                found = Some((pts, inv));
                break;
            }
        }
        let (pts, inv) = found.ok_or_else(|| Error::Interpolation("singular Vandermonde system".into()))?;
        points.push(pts);
        inverses.push(inv);
    }
    let total = count.pow(groups as u32);
    let values = (0..total)
        .into_par_iter()
        .map(|flat| {
            let forms = LinearFormSet::unchecked(grid_point(&points, flat, count))?;
            powered_value(pieces, &forms, m, p)
        })
        .collect::<Result<Vec<_>>>()?;
    let coeffs = solve_tensor(values, &inverses, count, groups)?;
    let mut terms = BTreeMap::new();
    for (flat, c) in coeffs.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let key = (0..groups).map(|g| monos[(flat / count.pow((groups - 1 - g) as u32)) % count].clone()).collect();
        terms.insert(key, c);
    }
    let poly = MultihomogPoly::new(groups, vars, d, terms)?.primitive();
    if poly.is_zero() {
        return Err(Error::Interpolation("interpolant is zero".into()));
    }
    let mut checked = 0;
    let mut ratio: Option<Rational> = None;
    while checked < held_out {
        let forms = LinearFormSet::random(&mut sampler, groups, vars);
        let v = powered_value(pieces, &forms, m, p)?;
        let f = poly.eval(forms.forms());
        match (v.is_zero(), f.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let r = &v / &f;
                if ratio.get_or_insert_with(|| r.clone()) != &r {
                    return Err(Error::Interpolation("held-out sample disagrees with interpolant".into()));
                }
            }
            _ => return Err(Error::Interpolation("held-out sample disagrees with interpolant on incidence".into())),
        }
        checked += 1;
    }
    Ok(ChowInterpolation { poly, exponent: p, scaling_exponent: e, held_out: checked, normalizer })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChowInterpolation {
    pub poly: MultihomogPoly,
    /// `p` with `torsion ∝ R^p`.
    pub exponent: i64,
    pub scaling_exponent: i64,
    pub held_out: usize,
    pub normalizer: ChowNormalizer,
}

fn monomial_values(monos: &[MultiIndex], x: &[Rational]) -> Vec<Rational> {
    monos
        .iter()
        .map(|m| {
            let mut v = Rational::one();
            for (xi, &e) in x.iter().zip(m.exps()) {
                for _ in 0..e {
                    v *= xi;
                }
            }
            v
        })
        .collect()
}

fn grid_point(points: &[Vec<Vec<Rational>>], flat: usize, count: usize) -> Vec<Vec<Rational>> {
    let groups = points.len();
    (0..groups).map(|g| points[g][(flat / count.pow((groups - 1 - g) as u32)) % count].clone()).collect()
}

/// `torsion^p`, with incident configurations mapped to zero when `p = 1`.
fn powered_value(pieces: &IdealPieces, forms: &LinearFormSet, m: u32, p: i64) -> Result<Rational> {
    match chow_eval(pieces, forms, m, PivotStrategy::MinIndex) {
        Ok(t) => Ok(if p == 1 { t.value } else { t.value.recip() }),
        Err(Error::Incidence { .. }) if p == 1 => Ok(Rational::zero()),
        Err(Error::Incidence { .. }) => {
            Err(Error::Interpolation("sample meets the subscheme but the torsion is a reciprocal".into()))
        }
        Err(e) => Err(e),
    }
}

/// Applies `inverses[g]` along axis `g` of a row-major tensor with `groups`
/// axes of length `count`.
fn solve_tensor(mut t: Vec<Rational>, inverses: &[MatrixQ], count: usize, groups: usize) -> Result<Vec<Rational>> {
    for (g, inv) in inverses.iter().enumerate() {
        let stride = count.pow((groups - 1 - g) as u32);
        let block = stride * count;
        let mut out = vec![Rational::zero(); t.len()];
        for base in (0..t.len()).step_by(block) {
            for off in 0..stride {
                for a in 0..count {
                    let mut acc = Rational::zero();
                    for s in 0..count {
                        let v = &t[base + s * stride + off];
                        if !v.is_zero() {
                            acc += inv.get(a, s) * v;
                        }
                    }
                    out[base + a * stride + off] = acc;
                }
            }
        }
        t = out;
    }
    Ok(t)
}

/// Result of probing the torsion along a pencil of forms.
#[derive(Clone, Debug, PartialEq)]
pub struct VanishingProbe {
    /// Order of zero (positive) or pole (negative) at `t = 0`.
    pub order: i64,
    pub function: RatFuncM,
    /// `(multiplicity, degree)` of the squarefree factors of the numerator.
    pub numerator_profile: Vec<(usize, usize)>,
    pub denominator_profile: Vec<(usize, usize)>,
    pub warning: Option<String>,
}

/// Reconstructs the torsion along `(1 - t) A + t B` as an exact rational
/// function of `t` and reads off its order at `t = 0`.
///
/// The numerator and denominator have degree at most `degree_bound`
/// (`d (n + 1)` for the Chow form). Samples at incident parameters are
/// skipped; the fit is checked on extra parameters.
pub fn vanishing_order_probe(
    pieces: &IdealPieces,
    a: &LinearFormSet,
    b: &LinearFormSet,
    m: u32,
    degree_bound: usize,
) -> Result<VanishingProbe> {
    let need = 2 * degree_bound + 2;
    let extra = 4;
    let mut samples: Vec<(Rational, Rational)> = Vec::new();
    let mut t = 1i64;
    let mut misses = 0;
    while samples.len() < need + extra {
        let tr = Rational::new(t.into(), 7.into());
        t += 1;
        match chow_eval(pieces, &LinearFormSet::pencil(a, b, &tr)?, m, PivotStrategy::MinIndex) {
            Ok(c) => samples.push((tr, c.value)),
            Err(Error::Incidence { .. }) => {
                misses += 1;
                if misses > 4 * need + 16 {
                    return Err(Error::Incidence { level: 0 });
                }
            }
            Err(e) => return Err(e),
        }
    }
    let (fit, check) = samples.split_at(need);
    let width = degree_bound + 1;
    let rows = fit
        .iter()
        .map(|(t, f)| {
            let mut row = Vec::with_capacity(2 * width);
            let mut p = Rational::one();
            let mut powers = Vec::with_capacity(width);
            for _ in 0..width {
                powers.push(p.clone());
                p *= t;
            }
            row.extend(powers.iter().cloned());
            row.extend(powers.iter().map(|x| -(x * f)));
            row
        })
        .collect();
    let sys = MatrixQ::from_rows_with_cols(rows, 2 * width)?;
    let null = sys.nullspace();
    let v = null.first().ok_or_else(|| Error::Interpolation("no rational function fits the pencil samples".into()))?;
    let numer = PolyM::new(v[..width].to_vec());
    let denom = PolyM::new(v[width..].to_vec());
    let function = RatFuncM::new(numer, denom)?;
    for (t, f) in check {
        if function.eval(t).as_ref() != Some(f) {
            return Err(Error::Interpolation(format!("pencil fit fails at t = {t}; raise the degree bound")));
        }
    }
    let order = zero_multiplicity(function.numer()) as i64 - zero_multiplicity(function.denom()) as i64;
    let warning = match order.abs() {
        0 => Some("pencil does not cross the Chow hypersurface at t = 0".to_string()),
        1 => None,
        k => Some(format!("order {k} at t = 0: the pencil is tangent to the Chow hypersurface")),
    };
    Ok(VanishingProbe {
        order,
        numerator_profile: squarefree_profile(function.numer()),
        denominator_profile: squarefree_profile(function.denom()),
        function,
        warning,
    })
}

fn zero_multiplicity(p: &PolyM) -> usize {
    p.coeffs().iter().take_while(|c| c.is_zero()).count()
}

/// Yun's squarefree decomposition, reported as `(multiplicity, degree)`.
pub fn squarefree_profile(p: &PolyM) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if p.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let mut b = p.div_rem(&a).expect("nonzero gcd").0;
    let mut c = dp.div_rem(&a).expect("nonzero gcd").0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().is_some_and(|deg| deg > 0) {
        a = b.gcd(&d);
        if let Some(deg) = a.degree().filter(|&deg| deg > 0) {
            out.push((i, deg));
        }
        b = b.div_rem(&a).expect("nonzero gcd").0;
        c = d.div_rem(&a).expect("nonzero gcd").0;
        d = &c - &b.derivative();
        i += 1;
    }
    out
}
