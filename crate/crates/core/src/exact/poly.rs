//! Dense univariate polynomials in the formal variable `m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// Coefficients from the constant term upwards. The zero polynomial has no
/// coefficients, otherwise the last coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyM {
    coeffs: Vec<Rational>,
}

impl PolyM {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyM { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        PolyM { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `m^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        PolyM { coeffs: c }
    }

    /// `m + c`.
    pub fn linear(c: Rational) -> Self {
        Self::new(vec![c, Rational::one()])
    }

    /// The binomial polynomial `binom(m, k) = m (m-1) ... (m-k+1) / k!`.
    pub fn binomial(k: usize) -> Self {
        let mut p = PolyM::one();
        for i in 0..k {
            p = &p * &PolyM::linear(int(-(i as i64)));
        }
        p.scale(&Rational::from_integer(factorial(k)).recip())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `m^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> Rational {
        self.eval(&int(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return PolyM::zero();
        }
        PolyM { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `p(m + c)` by repeated synthetic division.
    pub fn shift(&self, c: &Rational) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        PolyM::new(a)
    }

    pub fn derivative(&self) -> Self {
        PolyM::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Polynomial long division, `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &PolyM) -> Result<(PolyM, PolyM)> {
        let dd = d.degree().ok_or(Error::ZeroDenominator)?;
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Ok((PolyM::new(q), PolyM::new(r)))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &PolyM) -> PolyM {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> PolyM {
        if self.is_zero() {
            return PolyM::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Interpolates the values `values[i] = p(start + i)` by Newton forward
    /// differences; the result has degree `< values.len()`.
    pub fn interpolate_consecutive(start: i64, values: &[Rational]) -> PolyM {
        let mut diffs = values.to_vec();
        let mut leading = Vec::with_capacity(values.len());
        for _ in 0..values.len() {
            leading.push(diffs[0].clone());
            diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        // sum_k leading[k] * binom(m - start, k)
        let mut p = PolyM::zero();
        for (k, c) in leading.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            p = &p + &PolyM::binomial(k).scale(c);
        }
        p.shift(&int(-start))
    }

    /// Interpolation through arbitrary distinct nodes (Lagrange form).
    pub fn interpolate(points: &[(Rational, Rational)]) -> PolyM {
        let mut p = PolyM::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = PolyM::one();
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = &basis * &PolyM::linear(-xj.clone());
                    denom *= xi - xj;
                }
            }
            p = &p + &basis.scale(&(yi / denom));
        }
        p
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

impl Add for &PolyM {
    type Output = PolyM;
    fn add(self, rhs: &PolyM) -> PolyM {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyM::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &PolyM {
    type Output = PolyM;
    fn sub(self, rhs: &PolyM) -> PolyM {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PolyM::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &PolyM {
    type Output = PolyM;
    fn mul(self, rhs: &PolyM) -> PolyM {
        if self.is_zero() || rhs.is_zero() {
            return PolyM::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PolyM::new(c)
    }
}

impl Neg for &PolyM {
    type Output = PolyM;
    fn neg(self) -> PolyM {
        PolyM { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for PolyM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = format_rational(c);
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        write!(f, "m")?;
                    } else {
                        write!(f, "m^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl serde::Serialize for PolyM {
    /// Coefficients from the constant term upward, as rational strings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        super::rational::serde_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> serde::Deserialize<'de> for PolyM {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        super::rational::serde_vec::deserialize(d).map(PolyM::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn trims_leading_zeros() {
        let p = PolyM::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(PolyM::from_i64(&[0, 0]).degree(), None);
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = PolyM::from_i64(&[3, -1, 0, 2]);
        let q = p.shift(&int(5));
        for x in -3..4 {
            assert_eq!(q.eval_i64(x), p.eval_i64(x + 5));
        }
    }

    #[test]
    fn binomial_polynomial_values() {
        let b = PolyM::binomial(3);
        assert_eq!(b.eval_i64(5), int(10));
        assert_eq!(b.eval_i64(2), int(0));
        assert_eq!(b.eval_i64(-1), int(-1));
    }

    #[test]
    fn division_and_gcd() {
        let a = &PolyM::from_i64(&[-1, 1]) * &PolyM::from_i64(&[2, 1]);
        let b = &PolyM::from_i64(&[-1, 1]) * &PolyM::from_i64(&[5, 0, 1]);
        let (q, r) = b.div_rem(&a).unwrap();
        assert_eq!(&(&q * &a) + &r, b);
        assert_eq!(a.gcd(&b), PolyM::from_i64(&[-1, 1]));
        assert!(a.div_rem(&PolyM::zero()).is_err());
    }

    #[test]
    fn interpolation_reproduces_samples() {
        let p = PolyM::new(vec![rat(1, 3), int(-2), rat(5, 2)]);
        let vals: Vec<_> = (4..8).map(|x| p.eval_i64(x)).collect();
        assert_eq!(PolyM::interpolate_consecutive(4, &vals), p);
        let pts: Vec<_> = [rat(1, 2), int(3), int(-7)].into_iter().map(|x| (x.clone(), p.eval(&x))).collect();
        assert_eq!(PolyM::interpolate(&pts), p);
    }

    #[test]
    fn display() {
        assert_eq!(PolyM::from_i64(&[0, 1, -1]).to_string(), "-m^2 + m");
        assert_eq!(PolyM::new(vec![rat(1, 2), int(0), int(3)]).to_string(), "3*m^2 + 1/2");
    }
}
