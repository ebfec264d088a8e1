//! Dense univariate polynomials over the session field.
//!
//! Degrees in this artifact stay small, so plain quadratic arithmetic is
//! used throughout. The zero polynomial has an empty coefficient vector
//! and its degree is `None` (a stand-in for -∞), never -1, so valuation
//! arithmetic cannot confuse it with a constant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::{FieldSpec, Scalar};

/// Polynomial with `coeffs[i]` the coefficient of x^i; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Poly { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        let field = c.field();
        Poly::new(field, vec![c])
    }

    /// The monomial c· x^k.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn x(field: FieldSpec) -> Self {
        Poly::monomial(field.one(), 1)
    }

    /// x - alpha.
    pub fn x_minus(alpha: &Scalar) -> Self {
        let field = alpha.field();
        Poly::new(field, vec![alpha.neg(), field.one()])
    }

    pub fn from_i64(field: FieldSpec, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        Poly::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, coeffs)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(
            self.field,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on zero divisor (callers check).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let d = divisor.coeffs.len();
        if self.coeffs.len() < d {
            return (Poly::zero(self.field), self.clone());
        }
        let lead_inv = divisor.leading_coeff().unwrap().inv();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len() - d + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(b));
            }
            quot[k] = c;
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn make_monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.field.from_i64(i as i64)))
            .collect();
        Poly::new(self.field, coeffs)
    }

    /// Multiplicity of alpha as a root; 0 when alpha is not a root.
    pub fn root_multiplicity(&self, alpha: &Scalar) -> usize {
        assert!(!self.is_zero());
        let lin = Poly::x_minus(alpha);
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.div_rem(&lin);
            if !r.is_zero() {
                return m;
            }
            m += 1;
            cur = q;
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0. Over ℚ the Euclidean loop runs on primitive
/// integer polynomials (coefficients explode under plain monic division);
/// over 𝔽_p field division is cheap and the plain loop is used.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    match a.field() {
        FieldSpec::Q => poly_gcd_q(a, b),
        FieldSpec::Fp(_) => {
            let mut a = a.clone();
            let mut b = b.clone();
            while !b.is_zero() {
                let (_, r) = a.div_rem(&b);
                a = b;
                b = r;
            }
            a.make_monic()
        }
    }
}

/// Primitive pseudo-remainder sequence over ℤ.
fn poly_gcd_q(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.make_monic();
    }
    if b.is_zero() {
        return a.make_monic();
    }
    let mut a = to_primitive_integer(a);
    let mut b = to_primitive_integer(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = int_pseudo_rem(&a, &b);
        a = b;
        b = int_primitive(r);
    }
    let field = FieldSpec::Q;
    Poly::new(
        field,
        a.iter().map(|c| field.from_bigint(c)).collect(),
    )
    .make_monic()
}

/// Remainder of lc(b)^k * a by b over ℤ; inputs nonzero, deg a >= deg b.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc_b = b.last().unwrap();
    while r.len() > db {
        let lead = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for (i, c) in r.iter_mut().enumerate() {
            *c *= lc_b;
            if i >= shift {
                *c -= &lead * &b[i - shift];
            }
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut content = BigInt::zero();
    for c in &v {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut v {
            *c /= &content;
        }
    }
    v
}

pub fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero(a.field());
    }
    let g = poly_gcd(a, b);
    a.mul(b).div_exact(&g).make_monic()
}

/// Splits off every linear factor over the base field:
/// `p = lc · Π (x - α)^mult · nonsplit`, with `nonsplit` monic and free of
/// roots in K. Over ℚ the rational-root bound is used on the primitive
/// integer form; over 𝔽_p every residue is tried.
pub fn linear_root_factorization(p: &Poly) -> (Vec<(Scalar, usize)>, Poly) {
    assert!(!p.is_zero(), "root factorization of zero");
    let field = p.field();
    let mut roots: BTreeMap<String, (Scalar, usize)> = BTreeMap::new();
    let mut rest = p.make_monic();

    let candidates: Vec<Scalar> = match field {
        FieldSpec::Q => rational_root_candidates(p),
        FieldSpec::Fp(q) => (0..q).map(|v| Scalar::Fp { val: v, p: q }).collect(),
    };
    for alpha in candidates {
        if rest.is_constant() {
            break;
        }
        let m = rest.root_multiplicity(&alpha);
        if m > 0 {
            rest = rest.div_exact(&Poly::x_minus(&alpha).pow(m as u32));
            roots.insert(alpha.to_string(), (alpha, m));
        }
    }
    let mut out: Vec<(Scalar, usize)> = roots.into_values().collect();
    out.sort_by(|a, b| a.0.cmp_key(&b.0));
    (out, rest.make_monic())
}

/// All roots in K must exist: errors with the leftover factor otherwise.
pub fn split_roots(p: &Poly) -> crate::Result<Vec<(Scalar, usize)>> {
    let (roots, rest) = linear_root_factorization(p);
    if rest.is_constant() {
        Ok(roots)
    } else {
        Err(crate::Error::NonSplitPlace(rest.to_string()))
    }
}

/// Candidate rational roots r/s with r | c_0, s | c_n of the primitive
/// integer form (after stripping the power of x).
fn rational_root_candidates(p: &Poly) -> Vec<Scalar> {
    let ints = to_primitive_integer(p);
    let first_nonzero = ints.iter().position(|c| !c.is_zero());
    let mut cands = vec![FieldSpec::Q.zero()];
    let Some(lo) = first_nonzero else {
        return cands;
    };
    let num_divs = divisors(ints[lo].magnitude());
    let den_divs = divisors(ints.last().unwrap().magnitude());
    for r in &num_divs {
        for s in &den_divs {
            if r.gcd(s).is_one() {
                let ratio = BigRational::new(r.clone(), s.clone());
                cands.push(Scalar::Rat(-ratio.clone()));
                cands.push(Scalar::Rat(ratio));
            }
        }
    }
    cands
}

fn to_primitive_integer(p: &Poly) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        if let Scalar::Rat(r) = c {
            den_lcm = den_lcm.lcm(r.denom());
        }
    }
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| match c {
            Scalar::Rat(r) => (r * BigRational::from_integer(den_lcm.clone()))
                .to_integer(),
            Scalar::Fp { .. } => unreachable!("integer form only used over Q"),
        })
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if !content.is_zero() && !content.is_one() {
        for c in &mut ints {
            *c /= &content;
        }
    }
    ints
}

/// Positive divisors by trial division; desk-scale inputs only.
fn divisors(n: &num_bigint::BigUint) -> Vec<BigInt> {
    use num_bigint::BigUint;
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    if m.is_zero() {
        return vec![BigInt::one()];
    }
    let mut f = BigUint::from(2u32);
    while &f * &f <= m {
        let mut e = 0;
        while (&m % &f).is_zero() {
            m /= &f;
            e += 1;
        }
        if e > 0 {
            factors.push((f.clone(), e));
        }
        f += 1u32;
    }
    if !m.is_one() {
        factors.push((m, 1));
    }
    let mut divs = vec![BigUint::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.into_iter().map(BigInt::from).collect()
}

impl fmt::Display for Poly {
    /// Renders in parse-compatible syntax with explicit `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = match c {
                Scalar::Rat(r) if r.is_negative() => (true, Scalar::Rat(-r)),
                other => (false, other.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(coeffs: &[i64]) -> Poly {
        Poly::from_i64(FieldSpec::Q, coeffs)
    }

    #[test]
    fn zero_degree_is_sentinel() {
        assert_eq!(Poly::zero(FieldSpec::Q).degree(), None);
        assert_eq!(qp(&[5]).degree(), Some(0));
        assert_eq!(qp(&[0, 0, 1]).degree(), Some(2));
    }

    #[test]
    fn gcd_examples() {
        // (x^2 - 1, x^2 - 2x + 1) -> x - 1
        assert_eq!(poly_gcd(&qp(&[-1, 0, 1]), &qp(&[1, -2, 1])), qp(&[-1, 1]));
        // (x^3, 0) -> x^3
        assert_eq!(poly_gcd(&qp(&[0, 0, 0, 1]), &Poly::zero(FieldSpec::Q)), qp(&[0, 0, 0, 1]));
        // coprime
        assert_eq!(poly_gcd(&qp(&[1, 0, 1]), &qp(&[-1, 1])), qp(&[1]));
        // gcd(0,0) = 0
        let z = Poly::zero(FieldSpec::Q);
        assert_eq!(poly_gcd(&z, &z), z);
    }

    #[test]
    fn gcd_divides_both() {
        // spot check the divisibility property on a non-monic pair
        let a = qp(&[2, 4, 2]); // 2(x+1)^2
        let b = qp(&[-2, 0, 2]); // 2(x-1)(x+1)
        let g = poly_gcd(&a, &b);
        assert_eq!(g, qp(&[1, 1]));
        assert!(a.div_rem(&g).1.is_zero());
        assert!(b.div_rem(&g).1.is_zero());
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = qp(&[3, 0, -2, 7, 1]);
        let b = qp(&[1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn root_factorization_examples() {
        // x^3 - x -> roots 0, 1, -1
        let (roots, rest) = linear_root_factorization(&qp(&[0, -1, 0, 1]));
        let shown: Vec<(String, usize)> =
            roots.iter().map(|(a, m)| (a.to_string(), *m)).collect();
        assert_eq!(
            shown,
            vec![("-1".into(), 1), ("0".into(), 1), ("1".into(), 1)]
        );
        assert!(rest.is_one());

        // (x-2)^2
        let (roots, rest) = linear_root_factorization(&qp(&[4, -4, 1]));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].1, 2);
        assert!(rest.is_one());

        // x^2 + 1 irreducible over Q
        let (roots, rest) = linear_root_factorization(&qp(&[1, 0, 1]));
        assert!(roots.is_empty());
        assert_eq!(rest, qp(&[1, 0, 1]));
    }

    #[test]
    fn root_factorization_reconstructs() {
        // lc * prod (x - a)^m * nonsplit == p, non-monic rational case
        let p = qp(&[2, -1]).mul(&qp(&[1, 0, 1])).mul(&qp(&[-3, 1]).pow(2));
        let (roots, rest) = linear_root_factorization(&p);
        let mut rebuilt = rest.scale(p.leading_coeff().unwrap());
        for (alpha, m) in &roots {
            rebuilt = rebuilt.mul(&Poly::x_minus(alpha).pow(*m as u32));
        }
        assert_eq!(rebuilt, p);
        assert_eq!(roots.len(), 2); // 1/2 and 3
    }

    #[test]
    fn root_factorization_fp() {
        let f = FieldSpec::fp(7).unwrap();
        // x^2 + 1 over F_7: -1 is not a square mod 7
        let p = Poly::from_i64(f, &[1, 0, 1]);
        let (roots, rest) = linear_root_factorization(&p);
        assert!(roots.is_empty());
        assert_eq!(rest, p);
        // x^2 - 2 over F_7: 3^2 = 2 -> roots 3 and 4
        let p = Poly::from_i64(f, &[-2, 0, 1]);
        let (roots, rest) = linear_root_factorization(&p);
        assert_eq!(roots.len(), 2);
        assert!(rest.is_one());
    }

    #[test]
    fn display_roundtrips_visually() {
        assert_eq!(qp(&[-1, 0, 1]).to_string(), "x^2 - 1");
        assert_eq!(qp(&[0, 1]).to_string(), "x");
        assert_eq!(qp(&[5]).to_string(), "5");
        assert_eq!(Poly::zero(FieldSpec::Q).to_string(), "0");
        let half = FieldSpec::Q
            .from_ratio(&BigInt::from(1), &BigInt::from(2))
            .unwrap();
        assert_eq!(Poly::new(FieldSpec::Q, vec![half]).to_string(), "1/2");
    }
}
