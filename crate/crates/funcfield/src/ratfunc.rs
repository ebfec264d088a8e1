//! Canonical rational functions num/den over the session field.
//!
//! Invariants: gcd(num, den) = 1, den monic and nonzero. Equality of the
//! struct fields is equality in K(x).

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, Poly};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Lowest-terms constructor; the only way to build a `RatFunc`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let field = den.field();
        if num.is_zero() {
            return Ok(RatFunc {
                num: Poly::zero(field),
                den: Poly::one(field),
            });
        }
        let g = poly_gcd(&num, &den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let lc = den.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        RatFunc {
            num: p,
            den: Poly::one(field),
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: FieldSpec) -> Self {
        RatFunc::from_poly(Poly::one(field))
    }

    pub fn x(field: FieldSpec) -> Self {
        RatFunc::from_poly(Poly::x(field))
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> FieldSpec {
        self.den.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RatFunc::new(num, den).expect("den product nonzero")
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("den product nonzero")
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Integer power, negative exponents allowed for nonzero functions.
    pub fn powi(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mag = e.unsigned_abs() as u32;
        Ok(RatFunc {
            num: base.num.pow(mag),
            den: base.den.pow(mag),
        })
    }

    pub fn derivative(&self) -> RatFunc {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        let den = self.den.mul(&self.den);
        RatFunc::new(num, den).expect("den square nonzero")
    }

    /// Value at x = alpha; `None` when alpha is a pole.
    pub fn eval(&self, alpha: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(alpha);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(alpha).div(&d))
    }

    /// Pole order bookkeeping: -v_inf, the paper's "degree" of an element.
    /// `None` for the zero function.
    pub fn degree(&self) -> Option<i64> {
        let n = self.num.degree()?;
        Some(n as i64 - self.den.degree().unwrap() as i64)
    }

    /// Substitutes `g` for the variable: self(g). Errors when the
    /// denominator vanishes identically under the substitution.
    pub fn compose(&self, g: &RatFunc) -> Result<RatFunc> {
        let num = compose_poly(&self.num, g);
        let den = compose_poly(&self.den, g);
        num.div(&den)
    }
}

impl fmt::Display for RatFunc {
    /// Parse-compatible rendering: `num` or `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// p(g) by Horner's rule in K(x).
pub fn compose_poly(p: &Poly, g: &RatFunc) -> RatFunc {
    let field = p.field();
    let mut acc = RatFunc::zero(field);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(g).add(&RatFunc::constant(c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> Poly {
        Poly::from_i64(FieldSpec::Q, coeffs)
    }

    #[test]
    fn make_reduces_to_lowest_terms() {
        // (x^2 - 1)/(x - 1) -> x + 1
        let f = RatFunc::new(qp(&[-1, 0, 1]), qp(&[-1, 1])).unwrap();
        assert_eq!(f, RatFunc::from_poly(qp(&[1, 1])));
        // (2x)/2 -> x
        let f = RatFunc::new(qp(&[0, 2]), qp(&[2])).unwrap();
        assert_eq!(f, RatFunc::x(FieldSpec::Q));
        // 1/(2x - 2) -> (1/2)/(x - 1): monic denominator
        let f = RatFunc::new(qp(&[1]), qp(&[-2, 2])).unwrap();
        assert!(f.den().is_monic());
        assert_eq!(f.den(), &qp(&[-1, 1]));
        assert_eq!(f.to_string(), "(1/2)/(x - 1)");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFunc::new(qp(&[1]), Poly::zero(FieldSpec::Q)).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn normalization_is_idempotent() {
        let f = RatFunc::new(qp(&[0, 0, 3]), qp(&[-2, 0, 2])).unwrap();
        let again = RatFunc::new(f.num().clone(), f.den().clone()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn arithmetic() {
        let x = RatFunc::x(FieldSpec::Q);
        let one = RatFunc::one(FieldSpec::Q);
        // x + 1/x = (x^2+1)/x
        let f = x.add(&one.div(&x).unwrap());
        assert_eq!(f.num(), &qp(&[1, 0, 1]));
        assert_eq!(f.den(), &qp(&[0, 1]));
        // (x+1)(x-1) = x^2 - 1
        let g = RatFunc::from_poly(qp(&[1, 1])).mul(&RatFunc::from_poly(qp(&[-1, 1])));
        assert_eq!(g, RatFunc::from_poly(qp(&[-1, 0, 1])));
        assert_eq!(x.powi(-2).unwrap().den(), &qp(&[0, 0, 1]));
        assert_eq!(f.degree(), Some(1));
        assert_eq!(one.div(&x).unwrap().degree(), Some(-1));
    }
}
