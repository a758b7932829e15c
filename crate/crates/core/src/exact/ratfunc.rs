//! Rational functions in `m`, kept reduced with a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly::PolyM;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncM {
    numer: PolyM,
    denom: PolyM,
}

impl RatFuncM {
    pub fn new(numer: PolyM, denom: PolyM) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if numer.is_zero() {
            return Ok(Self::zero());
        }
        let g = numer.gcd(&denom);
        let (n, _) = numer.div_rem(&g)?;
        let (d, _) = denom.div_rem(&g)?;
        let lead = d.leading();
        Ok(RatFuncM { numer: n.scale(&lead.recip()), denom: d.scale(&lead.recip()) })
    }

    pub fn zero() -> Self {
        RatFuncM { numer: PolyM::zero(), denom: PolyM::one() }
    }

    pub fn from_poly(p: PolyM) -> Self {
        RatFuncM { numer: p, denom: PolyM::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(PolyM::constant(c))
    }

    pub fn numer(&self) -> &PolyM {
        &self.numer
    }

    pub fn denom(&self) -> &PolyM {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// The constant value, if this rational function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.numer.is_constant() && self.denom.is_constant()).then(|| self.numer.coeff(0))
    }

    /// Value at `x`; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denom.eval(x);
        (!d.is_zero()).then(|| self.numer.eval(x) / d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFuncM { numer: self.numer.scale(c), denom: self.denom.clone() }
    }

    pub fn checked_div(&self, rhs: &RatFuncM) -> Result<RatFuncM> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFuncM::new(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }
}

impl Add for &RatFuncM {
    type Output = RatFuncM;
    fn add(self, rhs: &RatFuncM) -> RatFuncM {
        if self.denom == rhs.denom {
            return RatFuncM::new(&self.numer + &rhs.numer, self.denom.clone()).expect("nonzero denominator");
        }
        let n = &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom);
        RatFuncM::new(n, &self.denom * &rhs.denom).expect("nonzero denominator")
    }
}

impl Sub for &RatFuncM {
    type Output = RatFuncM;
    fn sub(self, rhs: &RatFuncM) -> RatFuncM {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncM {
    type Output = RatFuncM;
    fn mul(self, rhs: &RatFuncM) -> RatFuncM {
        RatFuncM::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom).expect("nonzero denominator")
    }
}

impl Div for &RatFuncM {
    type Output = RatFuncM;
    /// Panics on division by zero; use [`RatFuncM::checked_div`] otherwise.
    fn div(self, rhs: &RatFuncM) -> RatFuncM {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFuncM {
    type Output = RatFuncM;
    fn neg(self) -> RatFuncM {
        RatFuncM { numer: -&self.numer, denom: self.denom.clone() }
    }
}

impl fmt::Display for RatFuncM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == PolyM::one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({}) / ({})", self.numer, self.denom)
        }
    }
}

impl Default for RatFuncM {
    fn default() -> Self {
        Self::zero()
    }
}

/// Zero test used by identity checks; kept as a free function so callers can
/// pass it to iterator adapters.
pub fn is_identically_zero(r: &RatFuncM) -> bool {
    r.numer.coeffs().iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    #[test]
    fn reduces_common_factors() {
        let g = PolyM::from_i64(&[1, 1]);
        let r = RatFuncM::new(&PolyM::from_i64(&[0, 2]) * &g, &PolyM::from_i64(&[3, 0, 4]) * &g).unwrap();
        assert_eq!(r.numer(), &PolyM::new(vec![int(0), rat(1, 2)]));
        assert_eq!(r.denom(), &PolyM::new(vec![rat(3, 4), int(0), int(1)]));
    }

    #[test]
    fn field_operations() {
        let a = RatFuncM::new(PolyM::from_i64(&[1]), PolyM::from_i64(&[0, 1])).unwrap();
        let b = RatFuncM::new(PolyM::from_i64(&[1]), PolyM::from_i64(&[1, 1])).unwrap();
        // 1/m - 1/(m+1) = 1/(m(m+1))
        let d = &a - &b;
        assert_eq!(d, RatFuncM::new(PolyM::one(), PolyM::from_i64(&[0, 1, 1])).unwrap());
        assert_eq!(&(&d * &RatFuncM::from_poly(PolyM::from_i64(&[0, 1, 1]))), &RatFuncM::constant(int(1)));
        assert!(is_identically_zero(&(&a - &a)));
        assert!(a.checked_div(&RatFuncM::zero()).is_err());
        assert!(RatFuncM::new(PolyM::one(), PolyM::zero()).is_err());
    }

    #[test]
    fn evaluation_and_poles() {
        let a = RatFuncM::new(PolyM::from_i64(&[2]), PolyM::from_i64(&[-1, 1])).unwrap();
        assert_eq!(a.eval(&int(3)), Some(int(1)));
        assert_eq!(a.eval(&int(1)), None);
    }
}
