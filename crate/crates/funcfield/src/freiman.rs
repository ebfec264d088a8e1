//! The integer side of the story: sumsets, the 3k-4 theorem, arithmetic
//! progression hulls, and the monomial embedding A ↦ span{x^a : a ∈ A}
//! that transports integer sets into subspaces (dim S² = |A+A|).

use std::collections::BTreeSet;
use std::fmt;

use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::FieldSpec;
use crate::subspace::Subspace;

/// Finite nonempty set of integers, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSet {
    elems: Vec<i64>,
}

impl IntSet {
    pub fn new(elems: impl IntoIterator<Item = i64>) -> Self {
        let set: BTreeSet<i64> = elems.into_iter().collect();
        assert!(!set.is_empty(), "IntSet must be nonempty");
        IntSet {
            elems: set.into_iter().collect(),
        }
    }

    pub fn elems(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.elems[0]
    }

    pub fn max(&self) -> i64 {
        *self.elems.last().unwrap()
    }
}

impl fmt::Display for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// A + A = { a1 + a2 } by pair enumeration.
pub fn sumset(a: &IntSet) -> IntSet {
    let mut out = BTreeSet::new();
    for (i, x) in a.elems.iter().enumerate() {
        for y in &a.elems[i..] {
            out.insert(x + y);
        }
    }
    IntSet::new(out)
}

/// The minimal arithmetic progression containing A: translate the minimum
/// to 0, divide by the gcd of the gaps; length (max - min)/d + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApHull {
    pub start: i64,
    pub step: i64,
    pub len: i64,
}

pub fn ap_hull(a: &IntSet) -> ApHull {
    if a.len() == 1 {
        return ApHull {
            start: a.min(),
            step: 1,
            len: 1,
        };
    }
    let mut d: i64 = 0;
    for w in a.elems.windows(2) {
        d = gcd(d, w[1] - w[0]);
    }
    ApHull {
        start: a.min(),
        step: d,
        len: (a.max() - a.min()) / d + 1,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Verdict of the 3k-4 theorem on one set.
#[derive(Debug, Clone)]
pub struct FreimanReport {
    pub set: IntSet,
    pub sumset_size: usize,
    /// |A+A| <= 3|A| - 4.
    pub hypothesis_holds: bool,
    pub hull: ApHull,
    /// |A+A| - |A| + 1.
    pub bound: i64,
    /// hull length <= bound.
    pub conclusion_holds: bool,
}

/// Checks hypothesis and conclusion of the 3k-4 theorem. The theorem
/// guarantees the conclusion under the hypothesis; both are reported so
/// that the (vacuous) failing-hypothesis cases stay informative.
pub fn freiman_3k4(a: &IntSet) -> FreimanReport {
    assert!(a.len() >= 2, "3k-4 needs at least two elements");
    let ss = sumset(a);
    let hull = ap_hull(a);
    let bound = ss.len() as i64 - a.len() as i64 + 1;
    FreimanReport {
        set: a.clone(),
        sumset_size: ss.len(),
        hypothesis_holds: ss.len() as i64 <= 3 * a.len() as i64 - 4,
        conclusion_holds: hull.len <= bound,
        hull,
        bound,
    }
}

/// span{x^a : a ∈ A}; A must be translated to start at 0 or above.
/// Its combinatorial genus is |A+A| - 2|A| + 1.
pub fn monomial_space(a: &IntSet, field: FieldSpec) -> Subspace {
    assert!(a.min() >= 0, "translate the set to non-negative exponents");
    let gens: Vec<RatFunc> = a
        .elems
        .iter()
        .map(|&e| RatFunc::from_poly(Poly::monomial(field.one(), e as usize)))
        .collect();
    Subspace::span(&gens).expect("one field")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sumset_examples() {
        let a = IntSet::new([0, 1, 2, 4]);
        assert_eq!(sumset(&a).elems(), &[0, 1, 2, 3, 4, 5, 6, 8]);
        assert_eq!(sumset(&IntSet::new([0])).elems(), &[0]);
        assert_eq!(sumset(&IntSet::new([0, 1, 2, 4, 5])).len(), 11);
    }

    #[test]
    fn freiman_examples() {
        // {0,1,2,4}: hypothesis holds with equality, hull length = bound
        let r = freiman_3k4(&IntSet::new([0, 1, 2, 4]));
        assert_eq!(r.sumset_size, 8);
        assert!(r.hypothesis_holds);
        assert_eq!(r.hull, ApHull { start: 0, step: 1, len: 5 });
        assert_eq!(r.bound, 5);
        assert!(r.conclusion_holds);

        // {0,1,3}: |A+A| = 6 > 5, hypothesis fails
        let r = freiman_3k4(&IntSet::new([0, 1, 3]));
        assert_eq!(r.sumset_size, 6);
        assert!(!r.hypothesis_holds);

        // exact AP with common difference d
        let r = freiman_3k4(&IntSet::new([0, 7, 14]));
        assert_eq!(r.hull, ApHull { start: 0, step: 7, len: 3 });
        assert!(r.conclusion_holds);
    }

    #[test]
    fn monomial_embedding() {
        let a = IntSet::new([0, 1, 2, 4, 5]);
        let s = monomial_space(&a, FieldSpec::Q);
        assert_eq!(s.dim(), 5);
        assert_eq!(s.square().dim(), sumset(&a).len());

        let b = IntSet::new([0, 1, 2, 4]);
        let s = monomial_space(&b, FieldSpec::Q);
        let gamma = s.square().dim() as i64 - 2 * s.dim() as i64 + 1;
        assert_eq!(gamma, 1);

        let c = IntSet::new((0..5).collect::<Vec<_>>());
        assert_eq!(
            monomial_space(&c, FieldSpec::Q),
            Subspace::poly_space(FieldSpec::Q, 4)
        );
    }

    #[test]
    fn sumset_size_bounds() {
        for a in [
            IntSet::new([0, 3, 9, 11]),
            IntSet::new([1, 2]),
            IntSet::new([-5, 0, 5, 6, 30]),
        ] {
            let s = sumset(&a).len();
            assert!(s >= 2 * a.len() - 1);
            assert!(s <= a.len() * (a.len() + 1) / 2);
        }
    }
}
