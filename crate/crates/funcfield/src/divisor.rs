//! Places and valuations of K(x), divisors on the projective line,
//! minimal divisors of subspaces, and explicit genus-0 Riemann-Roch
//! spaces.
//!
//! Places are the K-rational points (x - α) plus the place at infinity.
//! Inputs whose denominators contain an irreducible factor of degree > 1
//! leave this regime and are reported as [`Error::NonSplitPlace`] rather
//! than silently merging conjugate places, which would corrupt divisor
//! degrees relative to the algebraically closed setting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{poly_gcd, split_roots, Poly};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Place {
    Finite(Scalar),
    Infinity,
}

impl Place {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Place {
    /// Finite places by field order, infinity last.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => a.cmp_key(b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(a) => write!(f, "{a}"),
            Place::Infinity => write!(f, "inf"),
        }
    }
}

/// Order of vanishing of `f` at the place: at a finite α the multiplicity
/// of (x - α) in the numerator minus the denominator, at infinity
/// deg(den) - deg(num).
pub fn valuation(f: &RatFunc, place: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    Ok(match place {
        Place::Infinity => f.den().degree().unwrap() as i64 - f.num().degree().unwrap() as i64,
        Place::Finite(alpha) => {
            f.num().root_multiplicity(alpha) as i64 - f.den().root_multiplicity(alpha) as i64
        }
    })
}

/// Finite formal integer combination of places; zero coefficients are not
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn from_coeffs(entries: impl IntoIterator<Item = (Place, i64)>) -> Self {
        let mut d = Divisor::zero();
        for (p, c) in entries {
            d.add_at(p, c);
        }
        d
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, place: Place, c: i64) {
        if c == 0 {
            return;
        }
        match self.coeffs.entry(place) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, c)| (p, *c))
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| *c >= 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_at(p.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, c) in other.iter() {
            out.add_at(p.clone(), -c);
        }
        out
    }

    /// Coefficientwise comparison D <= E.
    pub fn le(&self, other: &Divisor) -> bool {
        let places: std::collections::BTreeSet<&Place> =
            self.support().chain(other.support()).collect();
        places.into_iter().all(|p| self.coeff(p) <= other.coeff(p))
    }
}

impl fmt::Display for Divisor {
    /// Literal form `c*place ± ...`, e.g. `3*inf - 2*0`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // infinity first reads like the paper's (n-1)P_inf + ... shapes
        let mut parts: Vec<(&Place, i64)> = self.iter().collect();
        parts.sort_by(|a, b| match (a.0, b.0) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Less,
            (_, Place::Infinity) => Ordering::Greater,
            (x, y) => x.cmp(y),
        });
        for (i, (p, c)) in parts.iter().enumerate() {
            if i == 0 {
                if *c < 0 {
                    write!(f, "-")?;
                }
            } else if *c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}", c.abs(), p)?;
        }
        Ok(())
    }
}

/// Divisor of least degree with S ⊆ L(D): coefficient -min v_P over the
/// space at every place. Support lives at the denominator roots, the
/// common zeros of the echelon numerators (negative coefficients; the
/// paper's normalization 1 ∈ S forces them away, but "least degree" is
/// kept literal here) and infinity. All of these must split over K.
pub fn minimal_divisor(space: &Subspace) -> Result<Divisor> {
    assert!(space.dim() >= 1, "minimal divisor of the zero space");
    let mut d = Divisor::zero();
    for (alpha, mult) in split_roots(space.den())? {
        d.add_at(Place::Finite(alpha), mult as i64);
    }
    let mut g = Poly::zero(space.field());
    for r in space.rows() {
        g = poly_gcd(&g, r);
    }
    if !g.is_constant() {
        for (alpha, mult) in split_roots(&g)? {
            d.add_at(Place::Finite(alpha), -(mult as i64));
        }
    }
    let top = space.rows()[0].degree().unwrap() as i64;
    d.add_at(Place::Infinity, top - space.den().degree().unwrap() as i64);
    Ok(d)
}

/// The genus-0 Riemann-Roch space
/// L(D) = { f in K(x) : v_P(f) >= -v_P(D) for all P }.
///
/// Built by shifting D by the principal divisor of c = Π (x-α)^{v_α(D)}
/// so that only the infinite place remains, where the space is the
/// polynomials of degree <= deg D; the basis is then x^j / c. Returns the
/// zero space when deg D < 0; otherwise dim L(D) = deg D + 1.
pub fn riemann_roch_space(d: &Divisor) -> Subspace {
    let deg = d.degree();
    let field = d
        .support()
        .find_map(|p| match p {
            Place::Finite(a) => Some(a.field()),
            Place::Infinity => None,
        })
        .unwrap_or(crate::scalar::FieldSpec::Q);
    if deg < 0 {
        return Subspace::zero(field);
    }
    let mut c_num = Poly::one(field);
    let mut c_den = Poly::one(field);
    for (p, v) in d.iter() {
        if let Place::Finite(alpha) = p {
            let lin = Poly::x_minus(alpha);
            if v > 0 {
                c_num = c_num.mul(&lin.pow(v as u32));
            } else {
                c_den = c_den.mul(&lin.pow((-v) as u32));
            }
        }
    }
    let gens: Vec<RatFunc> = (0..=deg as usize)
        .map(|j| {
            RatFunc::new(Poly::monomial(field.one(), j).mul(&c_den), c_num.clone())
                .expect("c numerator nonzero")
        })
        .collect();
    let space = Subspace::span(&gens).expect("single field");
    // Postcondition is checked, not trusted.
    assert_eq!(space.dim() as i64, deg + 1, "riemann_roch_space dimension");
    debug_assert!(matches!(contained_in_l(&space, d), Ok(true)));
    space
}

/// True iff every basis element satisfies v_P >= -v_P(D) at every place
/// of supp(D) and every pole of S.
pub fn contained_in_l(space: &Subspace, d: &Divisor) -> Result<bool> {
    if space.dim() == 0 {
        return Ok(true);
    }
    let mut places: Vec<Place> = d.support().cloned().collect();
    for (alpha, _) in split_roots(space.den())? {
        let p = Place::Finite(alpha);
        if !places.contains(&p) {
            places.push(p);
        }
    }
    if !places.iter().any(Place::is_infinity) {
        places.push(Place::Infinity);
    }
    for e in space.basis() {
        for p in &places {
            if valuation(&e, p)? < -d.coeff(p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn qp(coeffs: &[i64]) -> Poly {
        Poly::from_i64(FieldSpec::Q, coeffs)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(qp(num), qp(den)).unwrap()
    }

    fn q(n: i64) -> Scalar {
        FieldSpec::Q.from_i64(n)
    }

    #[test]
    fn valuation_examples() {
        let x3 = rf(&[0, 0, 0, 1], &[1]);
        assert_eq!(valuation(&x3, &Place::Infinity).unwrap(), -3);
        let inv_x = rf(&[1], &[0, 1]);
        assert_eq!(valuation(&inv_x, &Place::Finite(q(0))).unwrap(), -1);
        // (x-1)^2/x at 1
        let f = rf(&[1, -2, 1], &[0, 1]);
        assert_eq!(valuation(&f, &Place::Finite(q(1))).unwrap(), 2);
        assert_eq!(
            valuation(&RatFunc::zero(FieldSpec::Q), &Place::Infinity),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn divisor_bookkeeping() {
        let mut d = Divisor::zero();
        d.add_at(Place::Infinity, 3);
        d.add_at(Place::Finite(q(0)), -2);
        assert_eq!(d.degree(), 1);
        assert_eq!(d.to_string(), "3*inf - 2*0");
        let e = d.sub(&d.clone());
        assert_eq!(e, Divisor::zero());
        assert_eq!(e.to_string(), "0");
    }

    #[test]
    fn minimal_divisor_examples() {
        // span{1, 1/(x-1)} -> P_1
        let s = Subspace::span(&[rf(&[1], &[1]), rf(&[1], &[-1, 1])]).unwrap();
        let d = minimal_divisor(&s).unwrap();
        assert_eq!(d, Divisor::from_coeffs([(Place::Finite(q(1)), 1)]));
        assert_eq!(d.degree(), 1);

        // polynomials of degree < n: (n-1) P_inf
        let p = Subspace::poly_space(FieldSpec::Q, 4);
        assert_eq!(
            minimal_divisor(&p).unwrap(),
            Divisor::from_coeffs([(Place::Infinity, 4)])
        );

        // span{x^2, x^3} -> 3 P_inf - 2 P_0
        let s = Subspace::span(&[rf(&[0, 0, 1], &[1]), rf(&[0, 0, 0, 1], &[1])]).unwrap();
        let d = minimal_divisor(&s).unwrap();
        assert_eq!(
            d,
            Divisor::from_coeffs([(Place::Infinity, 3), (Place::Finite(q(0)), -2)])
        );
        assert!(contained_in_l(&s, &d).unwrap());
    }

    #[test]
    fn minimal_divisor_nonsplit() {
        let s = Subspace::span(&[rf(&[1], &[1, 0, 1])]).unwrap();
        assert!(matches!(minimal_divisor(&s), Err(Error::NonSplitPlace(_))));
    }

    #[test]
    fn riemann_roch_examples() {
        // L(2 P_inf) = {1, x, x^2}
        let d = Divisor::from_coeffs([(Place::Infinity, 2)]);
        assert_eq!(riemann_roch_space(&d), Subspace::poly_space(FieldSpec::Q, 2));

        // L(P_0 + P_inf) = {1/x, 1, x}
        let d = Divisor::from_coeffs([(Place::Infinity, 1), (Place::Finite(q(0)), 1)]);
        let l = riemann_roch_space(&d);
        assert_eq!(l.dim(), 3);
        for e in [rf(&[1], &[0, 1]), rf(&[1], &[1]), rf(&[0, 1], &[1])] {
            assert!(l.contains(&e));
        }

        // L(3 P_inf - 2 P_0) = {x^2, x^3}
        let d = Divisor::from_coeffs([(Place::Infinity, 3), (Place::Finite(q(0)), -2)]);
        let l = riemann_roch_space(&d);
        assert_eq!(l.dim(), 2);
        assert!(l.contains(&rf(&[0, 0, 1], &[1])));
        assert!(l.contains(&rf(&[0, 0, 0, 1], &[1])));

        // negative degree -> zero space
        let d = Divisor::from_coeffs([(Place::Infinity, -1)]);
        assert_eq!(riemann_roch_space(&d).dim(), 0);
    }

    #[test]
    fn containment_examples() {
        let s = Subspace::poly_space(FieldSpec::Q, 1);
        assert!(contained_in_l(&s, &Divisor::from_coeffs([(Place::Infinity, 5)])).unwrap());
        let t = Subspace::span(&[rf(&[1], &[0, 1])]).unwrap();
        assert!(!contained_in_l(&t, &Divisor::from_coeffs([(Place::Infinity, 1)])).unwrap());
        // definitional: S inside L(minimal_divisor(S))
        let s =
            Subspace::span(&[rf(&[1], &[1]), rf(&[0, 1], &[-2, 1]), rf(&[5, 3], &[1])]).unwrap();
        let d = minimal_divisor(&s).unwrap();
        assert!(contained_in_l(&s, &d).unwrap());
    }

    #[test]
    fn minimality_of_minimal_divisor() {
        let s = Subspace::span(&[
            rf(&[1], &[1]),
            rf(&[0, 1], &[-2, 1]),
            rf(&[1, 1, 1], &[-2, 1]),
        ])
        .unwrap();
        let d = minimal_divisor(&s).unwrap();
        assert!(contained_in_l(&s, &d).unwrap());
        // decreasing any support coefficient by one breaks containment
        let support: Vec<Place> = d.support().cloned().collect();
        for p in support {
            let mut smaller = d.clone();
            smaller.add_at(p, -1);
            assert!(!contained_in_l(&s, &smaller).unwrap());
        }
    }

    #[test]
    fn rr_dimension_formula() {
        for (inf, at0, at1) in [(2, 1, 0), (4, -1, 2), (0, 0, 0), (1, 3, -2)] {
            let d = Divisor::from_coeffs([
                (Place::Infinity, inf),
                (Place::Finite(q(0)), at0),
                (Place::Finite(q(1)), at1),
            ]);
            if d.degree() >= 0 {
                assert_eq!(riemann_roch_space(&d).dim() as i64, d.degree() + 1);
            }
        }
    }
}
