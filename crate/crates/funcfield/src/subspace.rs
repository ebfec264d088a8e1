//! Finite-dimensional K-subspaces of K(x) in canonical form.
//!
//! Every space is stored as a single monic common denominator together
//! with numerator polynomials in reduced row-echelon form (pivot = leading
//! degree, pivots strictly decreasing, monic, cleared in the other rows),
//! with the common factor between the row-space gcd and the denominator
//! cancelled. Two equal subspaces have identical fields, so `==` decides
//! equality of spaces. Echelon pivoting on the highest-degree coefficient
//! makes the basis a v_inf-filtered basis up to reversal.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, poly_lcm, Poly};
use crate::ratfunc::RatFunc;
use crate::scalar::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    den: Poly,
    rows: Vec<Poly>,
}

impl Subspace {
    pub fn zero(field: FieldSpec) -> Self {
        Subspace {
            field,
            den: Poly::one(field),
            rows: Vec::new(),
        }
    }

    /// K-linear span of the generators; zero entries are discarded.
    pub fn span(gens: &[RatFunc]) -> Result<Self> {
        let mut field = None;
        for g in gens {
            match field {
                None => field = Some(g.field()),
                Some(f) if f == g.field() => {}
                Some(_) => return Err(Error::MixedFields),
            }
        }
        let field = field.expect("span requires at least one generator");
        let mut den = Poly::one(field);
        for g in gens {
            den = poly_lcm(&den, g.den());
        }
        let rows = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.num().mul(&den.div_exact(g.den())))
            .collect();
        Ok(Self::canonicalize(field, den, rows))
    }

    /// Polynomials of degree at most `i` (dimension i + 1).
    pub fn poly_space(field: FieldSpec, i: usize) -> Self {
        let rows = (0..=i)
            .rev()
            .map(|k| Poly::monomial(field.one(), k))
            .collect();
        Subspace {
            field,
            den: Poly::one(field),
            rows,
        }
    }

    fn canonicalize(field: FieldSpec, den: Poly, rows: Vec<Poly>) -> Self {
        let mut rows = rref(rows);
        let mut den = den.make_monic();
        let mut g = Poly::zero(field);
        for r in &rows {
            g = poly_gcd(&g, r);
        }
        g = poly_gcd(&g, &den);
        if !g.is_constant() && !g.is_zero() {
            den = den.div_exact(&g);
            rows = rref(rows.into_iter().map(|r| r.div_exact(&g)).collect());
        }
        Subspace { field, den, rows }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Monic common denominator.
    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Echelon numerators, strictly decreasing leading degrees.
    pub fn rows(&self) -> &[Poly] {
        &self.rows
    }

    /// Canonical basis as rational functions, echelon order (descending
    /// degree).
    pub fn basis(&self) -> Vec<RatFunc> {
        self.rows
            .iter()
            .map(|r| RatFunc::new(r.clone(), self.den.clone()).expect("den nonzero"))
            .collect()
    }

    pub fn contains(&self, f: &RatFunc) -> bool {
        if f.is_zero() {
            return true;
        }
        if f.field() != self.field {
            return false;
        }
        // Denominators of members divide the common denominator.
        let (q, r) = self.den.div_rem(f.den());
        if !r.is_zero() {
            return false;
        }
        let mut n = f.num().mul(&q);
        while let Some(d) = n.degree() {
            match self.rows.iter().find(|row| row.degree() == Some(d)) {
                Some(row) => n = n.sub(&row.scale(n.leading_coeff().unwrap())),
                None => return false,
            }
        }
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|e| other.contains(e))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let den = poly_lcm(&self.den, &other.den);
        let a = den.div_exact(&self.den);
        let b = den.div_exact(&other.den);
        let rows = self
            .rows
            .iter()
            .map(|r| r.mul(&a))
            .chain(other.rows.iter().map(|r| r.mul(&b)))
            .collect();
        Ok(Self::canonicalize(self.field, den, rows))
    }

    /// Span of all pairwise products of basis elements; `product(S, S)`
    /// is S². The pair list is deduplicated (i <= j) when both sides are
    /// the same space.
    pub fn product(&self, other: &Subspace) -> Result<Subspace> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let den = self.den.mul(&other.den);
        let mut rows = Vec::new();
        if self == other {
            for i in 0..self.rows.len() {
                for j in i..self.rows.len() {
                    rows.push(self.rows[i].mul(&self.rows[j]));
                }
            }
        } else {
            for r in &self.rows {
                for s in &other.rows {
                    rows.push(r.mul(s));
                }
            }
        }
        Ok(Self::canonicalize(self.field, den, rows))
    }

    pub fn square(&self) -> Subspace {
        self.product(self).expect("same field")
    }

    /// Scales the whole space by a nonzero rational function.
    pub fn scale(&self, f: &RatFunc) -> Result<Subspace> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        let gens: Vec<RatFunc> = self.basis().iter().map(|e| e.mul(f)).collect();
        if gens.is_empty() {
            return Ok(Subspace::zero(self.field));
        }
        Subspace::span(&gens)
    }
}

/// Reduced row echelon form with columns ordered by descending degree.
fn rref(rows: Vec<Poly>) -> Vec<Poly> {
    let mut echelon: BTreeMap<usize, Poly> = BTreeMap::new();
    for mut r in rows {
        while let Some(d) = r.degree() {
            match echelon.get(&d) {
                Some(e) => r = r.sub(&e.scale(r.leading_coeff().unwrap())),
                None => {
                    echelon.insert(d, r.make_monic());
                    break;
                }
            }
        }
    }
    // Back-substitution in ascending pivot order keeps cleared columns
    // cleared.
    let pivots: Vec<usize> = echelon.keys().copied().collect();
    for &d in &pivots {
        let rd = echelon[&d].clone();
        for &e in &pivots {
            if e <= d {
                continue;
            }
            let row = echelon.get_mut(&e).unwrap();
            let c = row.coeff(d);
            if !c.is_zero() {
                *row = row.sub(&rd.scale(&c));
            }
        }
    }
    echelon.into_values().rev().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn qp(coeffs: &[i64]) -> Poly {
        Poly::from_i64(FieldSpec::Q, coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(qp(num), qp(den)).unwrap()
    }

    fn monomials(exps: &[usize]) -> Subspace {
        let gens: Vec<RatFunc> = exps
            .iter()
            .map(|&a| RatFunc::from_poly(Poly::monomial(FieldSpec::Q.one(), a)))
            .collect();
        Subspace::span(&gens).unwrap()
    }

    #[test]
    fn span_discards_dependencies() {
        // {1, x, 2x+3} has dimension 2 with basis numerators {x, 1}
        let s = Subspace::span(&[rf(&[1], &[1]), rf(&[0, 1], &[1]), rf(&[3, 2], &[1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.rows(), &[qp(&[0, 1]), qp(&[1])]);
        assert!(s.den().is_one());
    }

    #[test]
    fn span_with_denominator() {
        let s = Subspace::span(&[rf(&[1], &[-1, 1]), rf(&[0, 1], &[-1, 1])]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.den(), &qp(&[-1, 1]));
        // 1 = (x - (x-1))/(x-1) is in the space
        assert!(s.contains(&rf(&[1], &[1])));
    }

    #[test]
    fn span_of_zero() {
        let s = Subspace::span(&[RatFunc::zero(FieldSpec::Q)]).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.den().is_one());
    }

    #[test]
    fn canonical_representation_is_unique() {
        // Same space from two generating sets.
        let a = Subspace::span(&[rf(&[1], &[-1, 1]), rf(&[0, 1], &[-1, 1])]).unwrap();
        let b = Subspace::span(&[rf(&[1], &[1]), rf(&[1], &[-1, 1])]).unwrap();
        assert_eq!(a, b);
        // A removable denominator is cancelled: (x-1)/(x-1) etc.
        let c = Subspace::span(&[rf(&[-1, 1], &[-1, 1])]).unwrap();
        assert_eq!(c.dim(), 1);
        assert!(c.den().is_one());
        // span(basis(S)) == S field-for-field
        let again = Subspace::span(&a.basis()).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn contains_examples() {
        let s = monomials(&[0, 2, 4]);
        // (x^2+1)^2 = x^4 + 2x^2 + 1
        assert!(s.contains(&rf(&[1, 0, 2, 0, 1], &[1])));
        assert!(!s.contains(&rf(&[0, 0, 0, 1], &[1])));
        let t = Subspace::span(&[rf(&[1], &[-1, 1])]).unwrap();
        assert!(!t.contains(&rf(&[1], &[-2, 1])));
    }

    #[test]
    fn sum_examples() {
        let a = monomials(&[0, 1]);
        let b = monomials(&[1, 2]);
        let c = a.sum(&b).unwrap();
        assert_eq!(c, Subspace::poly_space(FieldSpec::Q, 2));
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.sum(&Subspace::zero(FieldSpec::Q)).unwrap(), a);
    }

    #[test]
    fn product_examples() {
        let a = monomials(&[0, 1]);
        assert_eq!(a.square(), Subspace::poly_space(FieldSpec::Q, 2));
        // {0,1,2,4,5}: sumset has 11 elements
        let s = monomials(&[0, 1, 2, 4, 5]);
        assert_eq!(s.square().dim(), 11);
        let one = Subspace::span(&[RatFunc::one(FieldSpec::Q)]).unwrap();
        let t = Subspace::span(&[rf(&[1], &[0, 1]), rf(&[3, 1], &[1])]).unwrap();
        assert_eq!(one.product(&t).unwrap(), t);
    }

    #[test]
    fn poly_space_product_identity() {
        let p2 = Subspace::poly_space(FieldSpec::Q, 2);
        let p4 = Subspace::poly_space(FieldSpec::Q, 4);
        assert_eq!(p2.product(&p2).unwrap(), p4);
        assert_eq!(Subspace::poly_space(FieldSpec::Q, 0).dim(), 1);
        assert_eq!(Subspace::poly_space(FieldSpec::Q, 3).dim(), 4);
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = RatFunc::one(FieldSpec::Q);
        let b = RatFunc::one(FieldSpec::fp(5).unwrap());
        assert_eq!(Subspace::span(&[a, b]).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn product_contains_factor_when_one_present() {
        let s = Subspace::span(&[rf(&[1], &[1]), rf(&[0, 1], &[0, 0, 1])]).unwrap();
        let sq = s.square();
        for e in s.basis() {
            assert!(sq.contains(&e));
        }
    }
}
