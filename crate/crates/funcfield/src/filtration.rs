//! Filtered and super-filtered bases, the natural filtration, genus
//! sequences, degree tables, neededness of products, and the divisor
//! growth bookkeeping M_i / μ_i / Δ_i.
//!
//! A filtered basis has strictly decreasing v_inf and is normalized so
//! that e_1 = 1 (the original minimal-degree element is divided out and
//! kept as the normalizer). The combinatorial genus of each prefix space
//! S_i = <e_1..e_i> is γ_i = dim S_i² - 2 dim S_i + 1; the sequence is
//! non-decreasing, which is a theorem, so a decrease is reported as an
//! internal arithmetic bug rather than a finding.

use std::collections::BTreeSet;

use crate::divisor::{minimal_divisor, riemann_roch_space, valuation, Divisor, Place};
use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::subspace::Subspace;

/// Basis e_1 = 1, e_2, ..., e_n with strictly increasing degree
/// (equivalently strictly decreasing v_inf).
#[derive(Debug, Clone)]
pub struct FilteredBasis {
    pub elements: Vec<RatFunc>,
    /// The original minimal-degree element; the analyzed space is
    /// `normalizer * span(elements)`.
    pub normalizer: RatFunc,
}

impl FilteredBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.elements
            .iter()
            .map(|e| e.degree().expect("basis elements are nonzero"))
            .collect()
    }
}

/// Computes the filtered basis of S with respect to v_inf, normalized by
/// the element of maximal valuation. The echelon rows of the canonical
/// representation already realize |v_inf(S)| = dim S, so the basis is the
/// reversed row list divided by the last row.
pub fn filtered_basis(space: &Subspace) -> FilteredBasis {
    assert!(space.dim() >= 1, "filtered basis of the zero space");
    let rows = space.rows();
    let last = rows.last().unwrap();
    let elements = rows
        .iter()
        .rev()
        .map(|r| RatFunc::new(r.clone(), last.clone()).expect("last row nonzero"))
        .collect();
    let normalizer = RatFunc::new(last.clone(), space.den().clone()).expect("den nonzero");
    FilteredBasis {
        elements,
        normalizer,
    }
}

/// The chain S_1 ⊂ S_2 ⊂ ... ⊂ S_n of prefix spans; unique for the
/// valuation, independent of the chosen filtered basis.
pub fn natural_filtration(basis: &[RatFunc]) -> Vec<Subspace> {
    (1..=basis.len())
        .map(|i| Subspace::span(&basis[..i]).expect("one field"))
        .collect()
}

#[derive(Debug, Clone)]
pub struct GenusProfile {
    /// γ_i = dim S_i² - 2 dim S_i + 1 per prefix.
    pub gamma_seq: Vec<i64>,
    /// Unique index with γ_t = γ_n > γ_{t-1}; undefined when γ_n = 0.
    pub t: Option<usize>,
    /// First index with γ = 1; undefined when 1 never occurs.
    pub t1: Option<usize>,
    /// δ = max(γ_{i+1} - γ_i).
    pub delta: i64,
    pub degrees: Vec<i64>,
}

impl GenusProfile {
    pub fn gamma(&self) -> i64 {
        *self.gamma_seq.last().expect("nonempty profile")
    }

    /// Smallest index with γ_i > 0; the jump index used in the divisor
    /// growth arguments (equals `t` when the sequence has one jump).
    pub fn first_jump(&self) -> Option<usize> {
        self.gamma_seq.iter().position(|&g| g > 0).map(|i| i + 1)
    }
}

/// Genus sequence of the natural filtration, with jump indices and δ.
/// Also used as the per-prefix dimension oracle: the squares are computed
/// by `product` on every prefix.
pub fn genus_profile(basis: &[RatFunc]) -> Result<GenusProfile> {
    let filtration = natural_filtration(basis);
    genus_profile_of(&filtration, basis)
}

/// Same as [`genus_profile`] but reuses an already-computed filtration.
pub fn genus_profile_of(filtration: &[Subspace], basis: &[RatFunc]) -> Result<GenusProfile> {
    let mut gamma_seq = Vec::with_capacity(filtration.len());
    for (i, s) in filtration.iter().enumerate() {
        let sq = s.square();
        let gamma = sq.dim() as i64 - 2 * (i as i64 + 1) + 1;
        gamma_seq.push(gamma);
    }
    for i in 1..gamma_seq.len() {
        if gamma_seq[i] < gamma_seq[i - 1] {
            return Err(Error::InternalInvariant(format!(
                "genus sequence decreased: gamma_{} = {} > gamma_{} = {}",
                i,
                gamma_seq[i - 1],
                i + 1,
                gamma_seq[i]
            )));
        }
    }
    if gamma_seq[0] != 0 {
        return Err(Error::InternalInvariant(format!(
            "gamma_1 = {} (must be 0)",
            gamma_seq[0]
        )));
    }
    let gamma = *gamma_seq.last().unwrap();
    let t = if gamma > 0 {
        gamma_seq.iter().position(|&g| g == gamma).map(|i| i + 1)
    } else {
        None
    };
    let t1 = gamma_seq.iter().position(|&g| g == 1).map(|i| i + 1);
    let delta = gamma_seq
        .windows(2)
        .map(|w| w[1] - w[0])
        .max()
        .unwrap_or(0);
    let degrees = basis
        .iter()
        .map(|e| e.degree().expect("nonzero"))
        .collect();
    Ok(GenusProfile {
        gamma_seq,
        t,
        t1,
        delta,
        degrees,
    })
}

/// Upper-triangular table of deg(e_i e_j) = deg e_i + deg e_j for
/// i <= j <= k; row i holds the entries j = i..k.
pub fn degree_table(degrees: &[i64], k: usize) -> Vec<Vec<i64>> {
    assert!(k <= degrees.len());
    (0..k)
        .map(|i| (i..k).map(|j| degrees[i] + degrees[j]).collect())
        .collect()
}

/// Over all bases B ⊆ E of a complement of `base` inside `target`
/// (|B| = dim target - dim base), the minimum and maximum of |B ∩ T|,
/// by rank formulas:
///   min = dim(target) - dim(base + span(E \ T))
///   max = dim(base + span(T)) - dim(base).
/// "Exactly k elements of T are needed" in the sense of the neededness
/// definition iff min = max = k.
pub fn needed_count(
    target: &Subspace,
    base: &Subspace,
    e: &[RatFunc],
    t: &[RatFunc],
) -> Result<(usize, usize)> {
    let with_all = sum_with_span(base, e)?;
    if &with_all != target {
        return Err(Error::SpanMismatch);
    }
    debug_assert!(t.iter().all(|s| e.contains(s)), "T must be a subset of E");
    let rest: Vec<RatFunc> = e.iter().filter(|s| !t.contains(s)).cloned().collect();
    let min = target.dim() - sum_with_span(base, &rest)?.dim();
    let max = sum_with_span(base, t)?.dim() - base.dim();
    Ok((min, max))
}

/// True iff `s` lies outside base + span(E \ {s}), i.e. every complement
/// basis drawn from E must contain it.
pub fn is_needed(
    s: &RatFunc,
    target: &Subspace,
    base: &Subspace,
    e: &[RatFunc],
) -> Result<bool> {
    assert!(e.contains(s), "s must be an element of E");
    let with_all = sum_with_span(base, e)?;
    if &with_all != target {
        return Err(Error::SpanMismatch);
    }
    let mut rest: Vec<RatFunc> = e.to_vec();
    let pos = rest.iter().position(|x| x == s).unwrap();
    rest.remove(pos);
    Ok(!sum_with_span(base, &rest)?.contains(s))
}

fn sum_with_span(base: &Subspace, gens: &[RatFunc]) -> Result<Subspace> {
    if gens.is_empty() {
        return Ok(base.clone());
    }
    base.sum(&Subspace::span(gens)?)
}

/// Indices i (1-based) where deg(e_i e_t) > max deg(S_{t-1}²) =
/// 2 deg(e_{t-1}), which alone forces e_i e_t to be needed for the basis
/// of S_t².
pub fn needed_degree_screen(degrees: &[i64], t: usize) -> Vec<usize> {
    assert!(t >= 2 && t <= degrees.len());
    let cutoff = 2 * degrees[t - 2];
    (1..=t)
        .filter(|&i| degrees[i - 1] + degrees[t - 1] > cutoff)
        .collect()
}

/// A filtered basis whose pole orders at every finite pole α are
/// additionally non-increasing along the basis, ending at the worst pole
/// order m_α of the whole space.
#[derive(Debug, Clone)]
pub struct SuperFilteredBasis {
    pub elements: Vec<RatFunc>,
    /// α -> m_α = min v_α(S) for every finite pole of the space.
    pub pole_floor: Vec<(Scalar, i64)>,
}

impl SuperFilteredBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.elements
            .iter()
            .map(|e| e.degree().expect("nonzero"))
            .collect()
    }

    /// Checks the defining chain conditions verbatim; used by the
    /// property suites.
    pub fn verify(&self) -> Result<()> {
        let degs = self.degrees();
        if degs[0] != 0 || !self.elements[0].is_constant() {
            return Err(Error::InternalInvariant("e_1 must be 1".into()));
        }
        if !degs.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InternalInvariant(
                "degrees not strictly increasing".into(),
            ));
        }
        let space = Subspace::span(&self.elements)?;
        for (alpha, floor) in &self.pole_floor {
            let place = Place::Finite(alpha.clone());
            let chain: Vec<i64> = self
                .elements
                .iter()
                .map(|e| valuation(e, &place))
                .collect::<Result<_>>()?;
            if !chain.windows(2).all(|w| w[0] >= w[1]) {
                return Err(Error::InternalInvariant(format!(
                    "v_{alpha} chain not non-increasing: {chain:?}"
                )));
            }
            let m: i64 = space
                .basis()
                .iter()
                .map(|e| valuation(e, &place))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .unwrap();
            if *chain.last().unwrap() != m || m != *floor {
                return Err(Error::InternalInvariant(format!(
                    "v_{alpha}(e_n) = {} but m = {m}",
                    chain.last().unwrap()
                )));
            }
        }
        Ok(())
    }
}

/// Builds a super filtered basis by the replacement sweep: for i = 2..n
/// replace e_i by e_i + a e_{i-1}, where a avoids, for each pole α, the
/// unique value that would raise v_α above v_α(e_{i-1}). The v_inf
/// filtration survives by the ultrametric property. `a` is chosen as the
/// smallest non-negative integer outside the bad set, so the output is
/// deterministic.
pub fn super_filtered_basis(space: &Subspace) -> Result<SuperFilteredBasis> {
    let fb = filtered_basis(space);
    super_filter(fb.elements)
}

/// The sweep itself, starting from an already filtered, normalized basis.
pub fn super_filter(mut elements: Vec<RatFunc>) -> Result<SuperFilteredBasis> {
    let field = elements[0].field();
    let normalized = Subspace::span(&elements)?;
    let poles: Vec<Scalar> = crate::poly::split_roots(normalized.den())?
        .into_iter()
        .map(|(a, _)| a)
        .collect();

    for i in 1..elements.len() {
        let mut bad: BTreeSet<String> = BTreeSet::new();
        let mut bad_vals: Vec<Scalar> = Vec::new();
        for alpha in &poles {
            let place = Place::Finite(alpha.clone());
            let vi = valuation(&elements[i], &place)?;
            let vprev = valuation(&elements[i - 1], &place)?;
            let bad_a = if vi > vprev {
                Some(field.zero())
            } else if vi == vprev {
                // cancellation value: the residue of -e_i/e_{i-1} at α
                let u = elements[i].div(&elements[i - 1]).expect("e_{i-1} nonzero");
                Some(residue_at(&u, alpha).neg())
            } else {
                None
            };
            if let Some(a) = bad_a {
                if bad.insert(a.to_string()) {
                    bad_vals.push(a);
                }
            }
        }
        let mut k: i64 = 0;
        let a = loop {
            if let Some(limit) = field.size() {
                if k as u64 >= limit {
                    return Err(Error::SmallFieldExhausted);
                }
            }
            let cand = field.from_i64(k);
            if !bad_vals.contains(&cand) {
                break cand;
            }
            k += 1;
        };
        if !a.is_zero() {
            elements[i] = elements[i].add(&elements[i - 1].scale(&a));
        }
    }

    let mut pole_floor = Vec::new();
    let last = elements.last().unwrap();
    for alpha in &poles {
        let m = valuation(last, &Place::Finite(alpha.clone()))?;
        pole_floor.push((alpha.clone(), m));
    }
    Ok(SuperFilteredBasis {
        elements,
        pole_floor,
    })
}

/// Value of `u` at α after stripping matching powers of (x - α); requires
/// v_α(u) = 0.
fn residue_at(u: &RatFunc, alpha: &Scalar) -> Scalar {
    let lin = crate::poly::Poly::x_minus(alpha);
    let m = u.num().root_multiplicity(alpha);
    debug_assert_eq!(m, u.den().root_multiplicity(alpha));
    let num = u.num().div_exact(&lin.pow(m as u32));
    let den = u.den().div_exact(&lin.pow(m as u32));
    num.eval(alpha).div(&den.eval(alpha))
}

/// Divisor growth along the filtration: D_i, the finite-pole counts M_i,
/// their increments μ_i, the degree jumps Δ_i, and
/// Δ_Max = max(deg D_i - deg D_{i-1}).
#[derive(Debug, Clone)]
pub struct GrowthProfile {
    pub divisors: Vec<Divisor>,
    pub pole_counts: Vec<i64>,
    /// μ_i = M_i - M_{i-1} for i = 2..n.
    pub mu: Vec<i64>,
    /// Δ_i = deg e_i - deg e_{i-1} for i = 2..n.
    pub degree_jumps: Vec<i64>,
    pub delta_max: i64,
}

pub fn growth_profile(basis: &SuperFilteredBasis) -> Result<GrowthProfile> {
    let filtration = natural_filtration(&basis.elements);
    growth_profile_of(basis, &filtration)
}

pub fn growth_profile_of(
    basis: &SuperFilteredBasis,
    filtration: &[Subspace],
) -> Result<GrowthProfile> {
    let degrees = basis.degrees();
    let mut divisors = Vec::with_capacity(filtration.len());
    for s in filtration {
        divisors.push(minimal_divisor(s)?);
    }
    // M_i counts poles with multiplicity outside infinity; in lowest
    // terms that is the denominator degree.
    let pole_counts: Vec<i64> = basis
        .elements
        .iter()
        .map(|e| e.den().degree().unwrap() as i64)
        .collect();
    for i in 0..pole_counts.len() {
        if pole_counts[i] + degrees[i] != divisors[i].degree() {
            return Err(Error::InternalInvariant(format!(
                "M_{0} + deg(e_{0}) = {1} but deg(D_{0}) = {2}",
                i + 1,
                pole_counts[i] + degrees[i],
                divisors[i].degree()
            )));
        }
        if i > 0 && pole_counts[i] < pole_counts[i - 1] {
            return Err(Error::InternalInvariant(
                "M_i decreased along a super filtered basis".into(),
            ));
        }
    }
    let mu = pole_counts.windows(2).map(|w| w[1] - w[0]).collect();
    let degree_jumps: Vec<i64> = degrees.windows(2).map(|w| w[1] - w[0]).collect();
    let delta_max = divisors
        .windows(2)
        .map(|w| w[1].degree() - w[0].degree())
        .max()
        .unwrap_or(0);
    Ok(GrowthProfile {
        divisors,
        pole_counts,
        mu,
        degree_jumps,
        delta_max,
    })
}

/// For each i in t-1..=n, whether T_i := L((t-2)P_inf + D_i) ⊆ S_i².
/// The hypotheses γ_{t-1} = 0 and t > μ_j + Δ_j are checked first;
/// `force` runs the probe anyway.
pub fn check_t_inclusions(
    basis: &SuperFilteredBasis,
    growth: &GrowthProfile,
    profile: &GenusProfile,
    t: usize,
    force: bool,
) -> Result<Vec<bool>> {
    let n = basis.dim();
    assert!(t >= 2 && t <= n);
    let mut gate_errors = Vec::new();
    if profile.gamma_seq[t - 2] != 0 {
        gate_errors.push(format!("gamma_{} = {} != 0", t - 1, profile.gamma_seq[t - 2]));
    }
    for j in 0..growth.mu.len() {
        if (t as i64) <= growth.mu[j] + growth.degree_jumps[j] {
            gate_errors.push(format!(
                "t = {t} <= mu_{0} + Delta_{0} = {1}",
                j + 2,
                growth.mu[j] + growth.degree_jumps[j]
            ));
        }
    }
    if !gate_errors.is_empty() && !force {
        return Err(Error::HypothesisNotMet(gate_errors.join("; ")));
    }
    let filtration = natural_filtration(&basis.elements);
    let mut out = Vec::new();
    for i in t - 1..=n {
        let mut d = growth.divisors[i - 1].clone();
        d.add_at(Place::Infinity, t as i64 - 2);
        let t_space = riemann_roch_space(&d);
        let square = filtration[i - 1].square();
        out.push(t_space.basis().iter().all(|e| square.contains(e)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::FieldSpec;

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
    fn filtered_basis_examples() {
        let s = Subspace::span(&[rf(&[1], &[1]), rf(&[0, 1], &[1]), rf(&[3, 2], &[1])]).unwrap();
        let fb = filtered_basis(&s);
        assert_eq!(fb.degrees(), vec![0, 1]);
        assert_eq!(fb.elements[0], RatFunc::one(FieldSpec::Q));

        // span{x^2, x^5}: normalizer x^2, basis (1, x^3)
        let s = monomials(&[2, 5]);
        let fb = filtered_basis(&s);
        assert_eq!(fb.normalizer, rf(&[0, 0, 1], &[1]));
        assert_eq!(fb.elements, vec![rf(&[1], &[1]), rf(&[0, 0, 0, 1], &[1])]);

        let s = monomials(&[0, 1, 2, 4, 5]);
        assert_eq!(filtered_basis(&s).degrees(), vec![0, 1, 2, 4, 5]);
    }

    #[test]
    fn natural_filtration_examples() {
        let fb = filtered_basis(&monomials(&[0, 1, 2, 4, 5]));
        let chain = natural_filtration(&fb.elements);
        assert_eq!(chain.len(), 5);
        assert_eq!(chain[2], Subspace::poly_space(FieldSpec::Q, 2));
        for (i, s) in chain.iter().enumerate() {
            assert_eq!(s.dim(), i + 1);
        }
        assert_eq!(chain[4], monomials(&[0, 1, 2, 4, 5]));
    }

    #[test]
    fn genus_profile_table1_instance() {
        let fb = filtered_basis(&monomials(&[0, 1, 2, 4, 5]));
        let gp = genus_profile(&fb.elements).unwrap();
        assert_eq!(gp.gamma_seq, vec![0, 0, 0, 1, 2]);
        assert_eq!(gp.t, Some(5));
        assert_eq!(gp.t1, Some(4));
        assert_eq!(gp.delta, 1);
        assert_eq!(gp.first_jump(), Some(4));
    }

    #[test]
    fn genus_profile_poly_space() {
        let fb = filtered_basis(&Subspace::poly_space(FieldSpec::Q, 5));
        let gp = genus_profile(&fb.elements).unwrap();
        assert_eq!(gp.gamma_seq, vec![0; 6]);
        assert_eq!(gp.t, None);
        assert_eq!(gp.t1, None);
        assert_eq!(gp.delta, 0);
    }

    #[test]
    fn genus_profile_gamma1_shape() {
        // {1, x, x^2, (x+1)x^3}: dims of squares are (1, 3, 5, 8)
        let s = Subspace::span(&[
            rf(&[1], &[1]),
            rf(&[0, 1], &[1]),
            rf(&[0, 0, 1], &[1]),
            rf(&[0, 0, 0, 1, 1], &[1]),
        ])
        .unwrap();
        let fb = filtered_basis(&s);
        let chain = natural_filtration(&fb.elements);
        let dims: Vec<usize> = chain.iter().map(|s| s.square().dim()).collect();
        assert_eq!(dims, vec![1, 3, 5, 8]);
        let gp = genus_profile(&fb.elements).unwrap();
        assert_eq!(gp.gamma_seq, vec![0, 0, 0, 1]);
        assert_eq!(gp.t, Some(4));
        assert_eq!(gp.t1, Some(4));
    }

    #[test]
    fn degree_table_table1() {
        let degrees = [0, 1, 2, 4, 5];
        let table = degree_table(&degrees, 5);
        // entry (3,5) = 7, entry (1,4) = 4, entry (1,1) = 0
        assert_eq!(table[2][2], 7);
        assert_eq!(table[0][3], 4);
        assert_eq!(table[0][0], 0);
        assert_eq!(table[4], vec![10]);
    }

    fn table1_needed_setup() -> (Subspace, Subspace, Vec<RatFunc>) {
        let fb = filtered_basis(&monomials(&[0, 1, 2, 4, 5]));
        let chain = natural_filtration(&fb.elements);
        let target = chain[4].square();
        let base = chain[3].square();
        let e5 = fb.elements[4].clone();
        let products: Vec<RatFunc> = fb.elements.iter().map(|e| e.mul(&e5)).collect();
        (target, base, products)
    }

    #[test]
    fn needed_table1_example() {
        let (target, base, products) = table1_needed_setup();
        // e_3 e_5 needed; e_1 e_5 and e_2 e_5 never needed
        let (min, max) = needed_count(&target, &base, &products, &products[2..3]).unwrap();
        assert_eq!((min, max), (1, 1));
        let (min, max) = needed_count(&target, &base, &products, &products[0..2]).unwrap();
        assert_eq!((min, max), (0, 0));
        // T = E: every complement basis has exactly codim elements
        let codim = target.dim() - base.dim();
        let (min, max) = needed_count(&target, &base, &products, &products).unwrap();
        assert_eq!((min, max), (codim, codim));

        assert!(is_needed(&products[3], &target, &base, &products).unwrap());
        assert!(is_needed(&products[4], &target, &base, &products).unwrap());
        assert!(!is_needed(&products[0], &target, &base, &products).unwrap());
    }

    #[test]
    fn needed_span_mismatch() {
        let (target, base, products) = table1_needed_setup();
        let short = &products[..2];
        assert_eq!(
            needed_count(&target, &base, short, &short[..1]).unwrap_err(),
            Error::SpanMismatch
        );
    }

    #[test]
    fn degree_screen_examples() {
        assert_eq!(needed_degree_screen(&[0, 1, 2, 4, 5], 5), vec![4, 5]);
        // all of e_i e_t forced once deg e_t is huge
        assert_eq!(
            needed_degree_screen(&[0, 1, 2, 100], 4),
            vec![1, 2, 3, 4]
        );
        // screen must be a subset of the true needed set
        let (target, base, products) = table1_needed_setup();
        for i in needed_degree_screen(&[0, 1, 2, 4, 5], 5) {
            assert!(is_needed(&products[i - 1], &target, &base, &products).unwrap());
        }
    }

    #[test]
    fn super_filter_noop_when_chain_holds() {
        // {1, x, x^2 + 1/(x-1)}: v_1 chain of the canonical filtered
        // basis is (0, 0, -1), already valid
        let s = Subspace::span(&[
            rf(&[1], &[1]),
            rf(&[0, 1], &[1]),
            rf(&[1, 0, -1, 1], &[-1, 1]), // x^2 + 1/(x-1)
        ])
        .unwrap();
        let sfb = super_filtered_basis(&s).unwrap();
        sfb.verify().unwrap();
        assert_eq!(sfb.pole_floor.len(), 1);
        assert_eq!(sfb.pole_floor[0].1, -1);
    }

    #[test]
    fn super_filter_sweep_example() {
        // handed the filtered basis (1, x + 1/(x-1), x^2) whose v_1 chain
        // (0, -1, 0) violates monotonicity, the sweep replaces e_3 by
        // x^2 + a e_2 for the smallest good a; only a = 0 is bad
        let e2 = rf(&[1, -1, 1], &[-1, 1]); // x + 1/(x-1)
        let sfb = super_filter(vec![
            rf(&[1], &[1]),
            e2.clone(),
            rf(&[0, 0, 1], &[1]),
        ])
        .unwrap();
        sfb.verify().unwrap();
        let place = Place::Finite(FieldSpec::Q.from_i64(1));
        let chain: Vec<i64> = sfb
            .elements
            .iter()
            .map(|e| valuation(e, &place).unwrap())
            .collect();
        assert_eq!(chain, vec![0, -1, -1]);
        assert_eq!(sfb.elements[2], rf(&[0, 0, 1], &[1]).add(&e2));
    }

    #[test]
    fn super_filter_pole_free_is_filtered() {
        let s = monomials(&[0, 1, 3]);
        let sfb = super_filtered_basis(&s).unwrap();
        sfb.verify().unwrap();
        assert!(sfb.pole_floor.is_empty());
        assert_eq!(sfb.elements, filtered_basis(&s).elements);
    }

    #[test]
    fn growth_profile_examples() {
        // pole-free monomials 0..n-1: all M_i = 0, delta_max = 1
        let sfb = super_filtered_basis(&Subspace::poly_space(FieldSpec::Q, 4)).unwrap();
        let gp = growth_profile(&sfb).unwrap();
        assert_eq!(gp.pole_counts, vec![0; 5]);
        assert_eq!(gp.delta_max, 1);

        // {1, f, f^2} with f = x + 1/(x-1): M = (0,1,2), mu = (1,1),
        // Delta = (1,1), Delta_Max = 2
        let f = rf(&[1, -1, 1], &[-1, 1]);
        let s = Subspace::span(&[rf(&[1], &[1]), f.clone(), f.mul(&f)]).unwrap();
        let sfb = super_filtered_basis(&s).unwrap();
        sfb.verify().unwrap();
        let gp = growth_profile(&sfb).unwrap();
        assert_eq!(gp.pole_counts, vec![0, 1, 2]);
        assert_eq!(gp.mu, vec![1, 1]);
        assert_eq!(gp.degree_jumps, vec![1, 1]);
        assert_eq!(gp.delta_max, 2);
    }

    #[test]
    fn t_inclusions_monomial_example() {
        // degrees {0,1,2,4}: t = 4, gate satisfied, all inclusions hold
        let s = monomials(&[0, 1, 2, 4]);
        let sfb = super_filtered_basis(&s).unwrap();
        let profile = genus_profile(&sfb.elements).unwrap();
        let growth = growth_profile(&sfb).unwrap();
        let t = profile.first_jump().unwrap();
        assert_eq!(t, 4);
        let incl = check_t_inclusions(&sfb, &growth, &profile, t, false).unwrap();
        assert_eq!(incl, vec![true, true]);
    }

    #[test]
    fn t_inclusions_gate() {
        // Table 1 instance: last jump t = 5 has gamma_{t-1} = 1, gate fails
        let s = monomials(&[0, 1, 2, 4, 5]);
        let sfb = super_filtered_basis(&s).unwrap();
        let profile = genus_profile(&sfb.elements).unwrap();
        let growth = growth_profile(&sfb).unwrap();
        assert!(matches!(
            check_t_inclusions(&sfb, &growth, &profile, 5, false),
            Err(Error::HypothesisNotMet(_))
        ));
        // still runnable as a probe
        let probe = check_t_inclusions(&sfb, &growth, &profile, 5, true).unwrap();
        assert_eq!(probe.len(), 2);
    }
}
