//! Instance factories: the canonical γ = 0 / γ = 1 bases, degree-set
//! families with optional finite poles, monomial instances, and seeded
//! random subspaces inside a target Riemann-Roch space. These feed every
//! property suite and the fuzzer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisor::{riemann_roch_space, Divisor};
use crate::error::{Error, Result};
use crate::freiman::IntSet;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::{FieldSpec, Scalar};
use crate::subspace::Subspace;

/// 1, x, ..., x^{n-1}: γ = 0 with minimal divisor (n-1)P_inf. The
/// parameter is the dimension.
pub fn canonical_gamma0(field: FieldSpec, n: usize) -> Subspace {
    assert!(n >= 3, "the gamma = 0 family needs dimension >= 3");
    Subspace::poly_space(field, n - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gamma1Shape {
    /// 1, x, ..., x^{n-2}, (x+α)x^{n-1}
    A,
    /// 1, (x+α)x, (x+α)x^2, ..., (x+α)x^{n-1}
    B,
}

/// The two γ = 1 shapes; dimension n >= 4.
pub fn canonical_gamma1(field: FieldSpec, n: usize, shape: Gamma1Shape, alpha: &Scalar) -> Subspace {
    assert!(n >= 4, "the gamma = 1 families need dimension >= 4");
    let x_plus_alpha = Poly::new(field, vec![alpha.clone(), field.one()]);
    let mono = |k: usize| Poly::monomial(field.one(), k);
    let gens: Vec<RatFunc> = match shape {
        Gamma1Shape::A => (0..=n - 2)
            .map(mono)
            .chain(std::iter::once(x_plus_alpha.mul(&mono(n - 1))))
            .map(RatFunc::from_poly)
            .collect(),
        Gamma1Shape::B => std::iter::once(Poly::one(field))
            .chain((1..=n - 1).map(|k| x_plus_alpha.mul(&mono(k))))
            .map(RatFunc::from_poly)
            .collect(),
    };
    Subspace::span(&gens).expect("one field")
}

/// span{x^a : a ∈ A} over the requested field.
pub fn monomial_instance(field: FieldSpec, set: &IntSet) -> Subspace {
    crate::freiman::monomial_space(set, field)
}

/// Poles attached to a degree family: element i gains a term
/// 1/(x - α)^orders[i] (order 0 = untouched).
#[derive(Debug, Clone)]
pub struct PolePlan {
    pub alpha: Scalar,
    pub orders: Vec<u32>,
}

/// A subspace whose filtered degree set is exactly `degset`, optionally
/// with finite poles injected at one α while preserving the degrees.
/// The construction is checked after the fact; a plan that disturbs the
/// degrees is rejected.
pub fn degree_family(
    field: FieldSpec,
    degset: &IntSet,
    pole_plan: Option<&PolePlan>,
) -> Result<Subspace> {
    if degset.min() != 0 {
        return Err(Error::DegreeRealizationFailed(
            "degree set must start at 0".into(),
        ));
    }
    let mut gens = Vec::with_capacity(degset.len());
    for (i, &d) in degset.elems().iter().enumerate() {
        let mut g = RatFunc::from_poly(Poly::monomial(field.one(), d as usize));
        if let Some(plan) = pole_plan {
            let k = plan.orders.get(i).copied().unwrap_or(0);
            if k > 0 {
                let tail = RatFunc::new(
                    Poly::one(field),
                    Poly::x_minus(&plan.alpha).pow(k),
                )?;
                g = g.add(&tail);
            }
        }
        gens.push(g);
    }
    let space = Subspace::span(&gens)?;
    let got = crate::filtration::filtered_basis(&space).degrees();
    if got != degset.elems() {
        return Err(Error::DegreeRealizationFailed(format!(
            "requested degrees {:?} but realized {:?}",
            degset.elems(),
            got
        )));
    }
    Ok(space)
}

/// A seeded n-dimensional subspace of L(D) containing 1. D must be
/// effective (otherwise 1 is not in L(D)) and n <= deg D + 1. The same
/// seed reproduces the same space bit for bit.
pub fn random_in_rr(d: &Divisor, n: usize, seed: u64) -> Result<Subspace> {
    if !d.is_effective() {
        return Err(Error::DivisorNotEffective);
    }
    if n == 0 || n as i64 > d.degree() + 1 {
        return Err(Error::DimensionTooLarge);
    }
    let ambient = riemann_roch_space(d);
    let basis = ambient.basis();
    let field = ambient.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let mut gens = vec![RatFunc::one(field)];
        for _ in 1..n {
            let mut g = RatFunc::zero(field);
            for b in &basis {
                let c = field.from_i64(rng.gen_range(-3i64..=3));
                g = g.add(&b.scale(&c));
            }
            gens.push(g);
        }
        let space = Subspace::span(&gens)?;
        if space.dim() == n {
            return Ok(space);
        }
    }
    Err(Error::InternalInvariant(
        "could not sample a space of full dimension".into(),
    ))
}

/// A reproducible description of a generated instance; its one-line
/// serialization is written into generated files so every instance can be
/// rebuilt from its spec line.
#[derive(Debug, Clone)]
pub enum FamilySpec {
    Gamma0 { n: usize },
    Gamma1 { shape: Gamma1Shape, n: usize, alpha: i64 },
    Monomial { set: Vec<i64> },
    DegSet { set: Vec<i64>, pole: Option<(i64, Vec<u32>)> },
    RandomRr { divisor: String, n: usize },
}

#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub family: FamilySpec,
    pub field: FieldSpec,
    pub seed: u64,
}

impl InstanceSpec {
    /// Builds the generators of the instance, in ascending degree order.
    pub fn realize(&self) -> Result<Vec<RatFunc>> {
        let field = self.field;
        let space = match &self.family {
            FamilySpec::Gamma0 { n } => {
                if *n < 3 {
                    return Err(Error::DegreeRealizationFailed("gamma0 needs n >= 3".into()));
                }
                canonical_gamma0(field, *n)
            }
            FamilySpec::Gamma1 { shape, n, alpha } => {
                if *n < 4 {
                    return Err(Error::DegreeRealizationFailed("gamma1 needs n >= 4".into()));
                }
                canonical_gamma1(field, *n, *shape, &field.from_i64(*alpha))
            }
            FamilySpec::Monomial { set } => {
                let set = IntSet::new(set.iter().copied());
                if set.min() < 0 {
                    return Err(Error::DegreeRealizationFailed(
                        "monomial exponents must be non-negative".into(),
                    ));
                }
                monomial_instance(field, &set)
            }
            FamilySpec::DegSet { set, pole } => {
                let plan = pole.as_ref().map(|(alpha, orders)| PolePlan {
                    alpha: field.from_i64(*alpha),
                    orders: orders.clone(),
                });
                degree_family(field, &IntSet::new(set.iter().copied()), plan.as_ref())?
            }
            FamilySpec::RandomRr { divisor, n } => {
                let d = crate::parse::parse_divisor(divisor, field)?;
                random_in_rr(&d, *n, self.seed)?
            }
        };
        let mut gens = space.basis();
        gens.reverse();
        Ok(gens)
    }

    /// The complete instance file, spec line included.
    pub fn render_file(&self) -> Result<String> {
        use std::fmt::Write;
        let gens = self.realize()?;
        let mut out = String::new();
        let _ = writeln!(out, "# funcfield instance: {self}");
        let _ = writeln!(out, "field: {}", render_field(self.field));
        for g in &gens {
            let _ = writeln!(out, "{g}");
        }
        Ok(out)
    }
}

fn render_field(field: FieldSpec) -> String {
    match field {
        FieldSpec::Q => "q".into(),
        FieldSpec::Fp(p) => format!("fp {p}"),
    }
}

fn render_ints(set: &[i64]) -> String {
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl std::fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.family {
            FamilySpec::Gamma0 { n } => write!(f, "family=gamma0 n={n}")?,
            FamilySpec::Gamma1 { shape, n, alpha } => {
                let tag = match shape {
                    Gamma1Shape::A => "gamma1a",
                    Gamma1Shape::B => "gamma1b",
                };
                write!(f, "family={tag} n={n} alpha={alpha}")?;
            }
            FamilySpec::Monomial { set } => write!(f, "family=monomial set={}", render_ints(set))?,
            FamilySpec::DegSet { set, pole } => {
                write!(f, "family=degset set={}", render_ints(set))?;
                if let Some((alpha, orders)) = pole {
                    write!(
                        f,
                        " pole-alpha={alpha} pole-orders={}",
                        orders
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )?;
                }
            }
            FamilySpec::RandomRr { divisor, n } => {
                write!(f, "family=random-rr divisor={divisor} n={n}")?;
            }
        }
        write!(f, " field={} seed={}", self.field, self.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{contained_in_l, minimal_divisor, Place};
    use crate::filtration::{filtered_basis, genus_profile};

    fn q(n: i64) -> Scalar {
        FieldSpec::Q.from_i64(n)
    }

    fn gamma_of(s: &Subspace) -> i64 {
        s.square().dim() as i64 - 2 * s.dim() as i64 + 1
    }

    #[test]
    fn gamma0_family() {
        for n in 3..=6 {
            let s = canonical_gamma0(FieldSpec::Q, n);
            assert_eq!(s.dim(), n);
            assert_eq!(gamma_of(&s), 0);
            let d = minimal_divisor(&s).unwrap();
            assert_eq!(d, Divisor::from_coeffs([(Place::Infinity, n as i64 - 1)]));
        }
    }

    #[test]
    fn gamma1_families() {
        for n in 4..=6 {
            for shape in [Gamma1Shape::A, Gamma1Shape::B] {
                for a in [-1, 0, 1, 2] {
                    let s = canonical_gamma1(FieldSpec::Q, n, shape, &q(a));
                    assert_eq!(s.dim(), n, "shape {shape:?} alpha {a}");
                    assert_eq!(gamma_of(&s), 1, "shape {shape:?} alpha {a}");
                }
            }
        }
        // shape A, n=4, alpha=1: squares grow (1, 3, 5, 8)
        let s = canonical_gamma1(FieldSpec::Q, 4, Gamma1Shape::A, &q(1));
        let fb = filtered_basis(&s);
        let gp = genus_profile(&fb.elements).unwrap();
        assert_eq!(gp.gamma_seq, vec![0, 0, 0, 1]);
    }

    #[test]
    fn degree_family_examples() {
        // {0,2,4,5,6}: gamma = 2 via the sumset
        let s = degree_family(FieldSpec::Q, &IntSet::new([0, 2, 4, 5, 6]), None).unwrap();
        assert_eq!(gamma_of(&s), 2);
        assert_eq!(
            minimal_divisor(&s).unwrap(),
            Divisor::from_coeffs([(Place::Infinity, 6)])
        );

        // Table 1 instance
        let s = degree_family(FieldSpec::Q, &IntSet::new([0, 1, 2, 4, 5]), None).unwrap();
        assert_eq!(filtered_basis(&s).degrees(), vec![0, 1, 2, 4, 5]);

        // pole plan preserves the degree set
        let plan = PolePlan {
            alpha: q(1),
            orders: vec![0, 0, 0, 0, 1],
        };
        let s = degree_family(FieldSpec::Q, &IntSet::new([0, 1, 2, 3, 4]), Some(&plan)).unwrap();
        assert_eq!(filtered_basis(&s).degrees(), vec![0, 1, 2, 3, 4]);
        let d = minimal_divisor(&s).unwrap();
        assert_eq!(d.coeff(&Place::Finite(q(1))), 1);

        // a bad degree set is rejected
        assert!(matches!(
            degree_family(FieldSpec::Q, &IntSet::new([1, 2]), None),
            Err(Error::DegreeRealizationFailed(_))
        ));
    }

    #[test]
    fn random_in_rr_contract() {
        let d = Divisor::from_coeffs([(Place::Infinity, 5), (Place::Finite(q(0)), 1)]);
        let s = random_in_rr(&d, 4, 7).unwrap();
        assert_eq!(s.dim(), 4);
        assert!(s.contains(&RatFunc::one(FieldSpec::Q)));
        assert!(contained_in_l(&s, &d).unwrap());
        assert!(minimal_divisor(&s).unwrap().le(&d));
        // determinism
        assert_eq!(s, random_in_rr(&d, 4, 7).unwrap());
        // distinct seeds usually differ
        assert_ne!(s, random_in_rr(&d, 4, 8).unwrap());

        // full space is forced when n = deg D + 1
        let d = Divisor::from_coeffs([(Place::Infinity, 4)]);
        assert_eq!(
            random_in_rr(&d, 5, 1).unwrap(),
            Subspace::poly_space(FieldSpec::Q, 4)
        );

        assert_eq!(
            random_in_rr(&d, 6, 1).unwrap_err(),
            Error::DimensionTooLarge
        );
        let neg = Divisor::from_coeffs([(Place::Finite(q(0)), -1), (Place::Infinity, 3)]);
        assert_eq!(
            random_in_rr(&neg, 2, 1).unwrap_err(),
            Error::DivisorNotEffective
        );
    }

    #[test]
    fn instance_spec_roundtrip() {
        let spec = InstanceSpec {
            family: FamilySpec::RandomRr {
                divisor: "5*inf+1*0".into(),
                n: 4,
            },
            field: FieldSpec::Q,
            seed: 7,
        };
        let text = spec.render_file().unwrap();
        let (field, gens) = crate::parse::parse_instance_file(&text).unwrap();
        assert_eq!(field, FieldSpec::Q);
        let space = Subspace::span(&gens).unwrap();
        assert_eq!(space, random_in_rr(&crate::parse::parse_divisor("5*inf+1*0", FieldSpec::Q).unwrap(), 4, 7).unwrap());
        // byte-identical regeneration
        assert_eq!(text, spec.render_file().unwrap());
    }

    #[test]
    fn instance_spec_lines() {
        let spec = InstanceSpec {
            family: FamilySpec::Gamma1 {
                shape: Gamma1Shape::A,
                n: 5,
                alpha: 2,
            },
            field: FieldSpec::Q,
            seed: 0,
        };
        assert_eq!(spec.to_string(), "family=gamma1a n=5 alpha=2 field=q seed=0");
        let text = spec.render_file().unwrap();
        assert_eq!(text.lines().count(), 7); // comment + header + 5 generators
    }
}
