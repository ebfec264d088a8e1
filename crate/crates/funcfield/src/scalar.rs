//! Exact base-field arithmetic: arbitrary-precision rationals and prime
//! fields 𝔽_p.
//!
//! A [`Scalar`] is one element; the session field is described by a
//! [`FieldSpec`], which is needed to mint zeros and ones (the prime-field
//! modulus is runtime data). Mixing elements of different fields is a
//! programming error and panics; span-level operations check first and
//! report [`Error::MixedFields`](crate::Error::MixedFields).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// The base field of an analysis session: ℚ or 𝔽_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    Fp(u64),
}

impl FieldSpec {
    /// Validates a prime-field spec.
    pub fn fp(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::Fp(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::zero()),
            FieldSpec::Fp(p) => Scalar::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::one()),
            FieldSpec::Fp(p) => Scalar::Fp { val: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Q => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldSpec::Fp(p) => {
                let pz = BigInt::from(*p);
                let mut r = n % &pz;
                if r.sign() == Sign::Minus {
                    r += &pz;
                }
                let (_, digits) = r.to_u64_digits();
                Scalar::Fp {
                    val: digits.first().copied().unwrap_or(0),
                    p: *p,
                }
            }
        }
    }

    /// a/b as a field element; errors on b = 0 in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.from_bigint(num).div(&d))
    }

    /// Number of elements, `None` for ℚ.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldSpec::Q => None,
            FieldSpec::Fp(p) => Some(*p),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Q => write!(f, "q"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

/// One exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Rational in lowest terms with positive denominator (maintained by
    /// `BigRational`).
    Rat(BigRational),
    /// Residue in [0, p).
    Fp { val: u64, p: u64 },
}

fn mixed_fields() -> ! {
    panic!("internal error: scalar arithmetic across different base fields")
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Q,
            Scalar::Fp { p, .. } => FieldSpec::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) if p == q => Scalar::Fp {
                val: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mixed_fields(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) if p == q => Scalar::Fp {
                val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => mixed_fields(),
        }
    }

    /// Multiplicative inverse; panics on zero (checked by callers).
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: pow_mod(*val, p - 2, *p),
                p: *p,
            },
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Total order used for canonical map keys. Only meaningful within one
    /// field; comparing across fields panics.
    pub fn cmp_key(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) if p == q => a.cmp(b),
            _ => mixed_fields(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, .. } => write!(f, "{val}"),
        }
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set is known to be exact for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Parses an unsigned decimal literal of arbitrary length.
pub fn bigint_from_decimal(digits: &str) -> Option<BigInt> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(BigInt::from(
        BigUint::parse_bytes(digits.as_bytes(), 10).expect("digits checked"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let f = FieldSpec::Q;
        let a = f.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = FieldSpec::fp(101).unwrap();
        let a = f.from_i64(-1);
        assert_eq!(a.to_string(), "100");
        let b = f.from_i64(51);
        assert!(a.add(&b).sub(&b).eq(&a));
        let c = f.from_i64(7);
        assert!(c.mul(&c.inv()).is_one());
    }

    #[test]
    fn not_prime_rejected() {
        assert_eq!(FieldSpec::fp(4).unwrap_err(), Error::NotPrime(4));
        assert!(FieldSpec::fp(2).is_ok());
        assert!(FieldSpec::fp(65537).is_ok());
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
    }
}
