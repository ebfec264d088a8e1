//! End-to-end analysis of one instance: span, filtered basis, genus
//! profile, degree table, neededness, super filtration, divisor growth,
//! subfield tower, minimal divisor, Riemann-Roch space and the conjecture
//! verdict, together with a fixed checklist of lemma findings.
//!
//! The whole theory assumes F = K(S) is the field the divisors live in,
//! so when the normalized input space generates a proper subfield K(y) ⊊
//! K(x) the analyzer first rewrites every basis element as a rational
//! expression in y (normalized to keep its pole at infinity, so the
//! filtration order is preserved) and analyzes the rewritten space. The
//! original index [K(x) : K(S)] is reported as `ambient_index`.

use serde_json::{json, Map, Value};

use crate::divisor::{Divisor, Place};
use crate::error::{Error, Result};
use crate::filtration::{
    check_t_inclusions, degree_table, filtered_basis, genus_profile_of, growth_profile_of,
    is_needed, natural_filtration, needed_count, super_filter, GenusProfile, GrowthProfile,
    SuperFilteredBasis,
};
use crate::ratfunc::RatFunc;
use crate::scalar::FieldSpec;
use crate::subspace::Subspace;
use crate::tower::{
    express_in_generator, luroth_generator, pole_count, subfield_index_chain,
    valuation_gap_probe,
};

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    /// Column for the neededness report; defaults to t when defined.
    pub needed_col: Option<usize>,
    /// Hard cap on the input dimension.
    pub max_dim: usize,
    /// Sample count for the valuation-gap probe.
    pub gap_trials: usize,
    /// Seed for the probes.
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            needed_col: None,
            max_dim: 24,
            gap_trials: 6,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

/// One entry of the lemma checklist.
#[derive(Debug, Clone)]
pub struct Finding {
    pub id: &'static str,
    pub status: Status,
    pub witness: Option<String>,
}

/// The fixed checklist order.
pub const FINDING_IDS: [&str; 12] = [
    "L2.2", "L2.4", "L2.5", "L2.8", "L2.9", "L2.10i", "L2.10ii", "L5.1", "L5.3", "T1.7",
    "C1.6", "Conj1",
];

#[derive(Debug, Clone)]
pub struct ConjectureVerdict {
    /// γ <= dim S - 3.
    pub hypothesis: bool,
    /// dim S + γ (genus 0).
    pub bound: i64,
    /// dim L(D) for the minimal divisor D.
    pub dim_ld: i64,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct NeededEntry {
    pub i: usize,
    pub j: usize,
    pub needed: bool,
    pub min: usize,
    pub max: usize,
    /// Whether "exactly k are needed" is well defined (min = max).
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub field: FieldSpec,
    pub dim: usize,
    /// [K(x) : K(S)] of the normalized input; `None` for constant spaces.
    pub ambient_index: Option<u64>,
    pub basis: SuperFilteredBasis,
    pub profile: GenusProfile,
    pub growth: GrowthProfile,
    pub tower_indices: Vec<Option<u64>>,
    pub needed_col: Option<usize>,
    pub needed: Vec<NeededEntry>,
    pub minimal_divisor: Divisor,
    pub conjecture: ConjectureVerdict,
    pub findings: Vec<Finding>,
}

impl Analysis {
    pub fn gamma(&self) -> i64 {
        self.profile.gamma()
    }

    pub fn any_failure(&self) -> bool {
        self.findings.iter().any(|f| f.status == Status::Fail)
    }

    pub fn finding(&self, id: &str) -> &Finding {
        self.findings.iter().find(|f| f.id == id).expect("fixed checklist")
    }
}

/// Runs the full pipeline on the span of the generators.
pub fn analyze(gens: &[RatFunc], opts: &AnalysisOptions) -> Result<Analysis> {
    let space = Subspace::span(gens)?;
    if space.dim() == 0 {
        return Err(Error::ZeroElement);
    }
    if space.dim() > opts.max_dim {
        return Err(Error::DimensionTooLarge);
    }
    let field = space.field();

    // Normalize (e_1 = 1) and move to F = K(S) coordinates if needed.
    let fb = filtered_basis(&space);
    let mut elements = fb.elements;
    let ambient_index = match luroth_generator(&elements) {
        Err(Error::AllConstant) => None,
        Err(e) => return Err(e),
        Ok(y) => {
            let index = pole_count(&y)?;
            if index > 1 {
                elements = rewrite_in_subfield(&elements, &y)?;
            }
            Some(index)
        }
    };

    let normalized = Subspace::span(&elements)?;
    let refiltered = filtered_basis(&normalized);
    let basis = super_filter(refiltered.elements)?;
    let n = basis.dim();

    let filtration = natural_filtration(&basis.elements);
    let profile = genus_profile_of(&filtration, &basis.elements)?;
    let growth = growth_profile_of(&basis, &filtration)?;
    let tower_indices = subfield_index_chain(&filtration)?;

    let needed_col = opts.needed_col.or(profile.t);
    let mut needed = Vec::new();
    if let Some(col) = needed_col {
        assert!(col >= 2 && col <= n, "needed column out of range");
        let target = filtration[col - 1].square();
        let base = filtration[col - 2].square();
        let e_col = &basis.elements[col - 1];
        let products: Vec<RatFunc> =
            basis.elements[..col].iter().map(|e| e.mul(e_col)).collect();
        for i in 1..=col {
            let single = std::slice::from_ref(&products[i - 1]);
            let (min, max) = needed_count(&target, &base, &products, single)?;
            let needed_flag = is_needed(&products[i - 1], &target, &base, &products)?;
            needed.push(NeededEntry {
                i,
                j: col,
                needed: needed_flag,
                min,
                max,
                exact: min == max,
            });
        }
    }

    let d_min = growth.divisors.last().expect("n >= 1").clone();
    let gamma = profile.gamma();
    let dim_ld = d_min.degree() + 1;
    let conjecture = ConjectureVerdict {
        hypothesis: gamma <= n as i64 - 3,
        bound: n as i64 + gamma,
        dim_ld,
        holds: dim_ld <= n as i64 + gamma,
    };

    let mut analysis = Analysis {
        field,
        dim: n,
        ambient_index,
        basis,
        profile,
        growth,
        tower_indices,
        needed_col,
        needed,
        minimal_divisor: d_min,
        conjecture,
        findings: Vec::new(),
    };
    analysis.findings = run_checklist(&analysis, &filtration, opts)?;
    Ok(analysis)
}

/// Rewrites every element as a rational expression in the Lüroth
/// generator of K(S), with the generator normalized so its pole stays at
/// infinity (the filtration order is then preserved).
fn rewrite_in_subfield(elements: &[RatFunc], y: &RatFunc) -> Result<Vec<RatFunc>> {
    let y = normalize_pole_at_infinity(y)?;
    let mut out = Vec::with_capacity(elements.len());
    for e in elements {
        let r = express_in_generator(e, &y)?.ok_or_else(|| {
            Error::InternalInvariant("basis element not in K(y) for the Lüroth generator".into())
        })?;
        debug_assert_eq!(r.compose(&y).unwrap(), *e);
        out.push(r);
    }
    Ok(out)
}

/// Möbius-normalizes a nonconstant generator so that v_inf(y) < 0; the
/// place of K(y) below the infinite place of K(x) is then the infinite
/// place of K(y).
pub fn normalize_pole_at_infinity(y: &RatFunc) -> Result<RatFunc> {
    if y.is_constant() {
        return Err(Error::ConstantElement);
    }
    let num_deg = y.num().degree().unwrap();
    let den_deg = y.den().degree().unwrap();
    if num_deg > den_deg {
        return Ok(y.clone());
    }
    if num_deg < den_deg {
        return y.inv();
    }
    let c = y
        .num()
        .leading_coeff()
        .unwrap()
        .div(y.den().leading_coeff().unwrap());
    y.sub(&RatFunc::constant(c)).inv()
}

fn run_checklist(
    analysis: &Analysis,
    filtration: &[Subspace],
    opts: &AnalysisOptions,
) -> Result<Vec<Finding>> {
    let n = analysis.dim;
    let profile = &analysis.profile;
    let growth = &analysis.growth;
    let basis = &analysis.basis;
    let field = analysis.field;
    let gamma = profile.gamma();
    let mut out = Vec::new();
    let mut push = |id: &'static str, status: Status, witness: Option<String>| {
        out.push(Finding {
            id,
            status,
            witness,
        })
    };

    // L2.2: non-decreasing genus sequence starting at 0. A violation
    // aborts genus_profile_of, so reaching this point is the pass.
    push("L2.2", Status::Pass, None);

    // L2.4: K(S_{delta+2}) = K(S).
    if n >= 2 {
        let i_star = ((profile.delta + 2) as usize).min(n);
        let at = analysis.tower_indices[i_star - 1];
        let full = analysis.tower_indices[n - 1];
        if at == full {
            push("L2.4", Status::Pass, None);
        } else {
            push(
                "L2.4",
                Status::Fail,
                Some(format!(
                    "index at S_{i_star} is {at:?} but index of S is {full:?}"
                )),
            );
        }
    } else {
        push("L2.4", Status::NotApplicable, None);
    }

    // L2.5: valuation gaps of exactly 1 at sampled places.
    if n >= 2 && analysis.tower_indices[n - 1] == Some(1) {
        match valuation_gap_probe(&filtration[n - 1], opts.gap_trials, opts.seed) {
            Ok(witnesses) => {
                match witnesses.iter().find(|w| w.gap != 1) {
                    None => push("L2.5", Status::Pass, None),
                    Some(w) => push(
                        "L2.5",
                        Status::Fail,
                        Some(format!("gap {} at alpha = {}", w.gap, w.alpha)),
                    ),
                }
            }
            Err(Error::FieldTooSmall) | Err(Error::HypothesisNotMet(_)) => {
                push("L2.5", Status::NotApplicable, None)
            }
            Err(e) => return Err(e),
        }
    } else {
        push("L2.5", Status::NotApplicable, None);
    }

    // L2.8: structure of the γ = 0 / γ = 1 prefix, in coordinates where
    // K(prefix) = K(x) (otherwise the canonical generator is a proper
    // subfield element and the literal p_i comparison is meaningless).
    let j_star = match profile.t {
        Some(t) => t - 1,
        None => n,
    };
    let prefix_gamma = profile.gamma_seq[j_star - 1];
    let prefix_index = analysis.tower_indices[j_star - 1];
    let mut l28 = (Status::NotApplicable, None);
    if prefix_gamma == 0 && j_star >= 3 && prefix_index == Some(1) {
        let want = Subspace::poly_space(field, j_star - 1);
        let want_sq = Subspace::poly_space(field, 2 * j_star - 2);
        if filtration[j_star - 1] == want && filtration[j_star - 1].square() == want_sq {
            l28 = (Status::Pass, None);
        } else {
            l28 = (
                Status::Fail,
                Some(format!("S_{j_star} is not p_{}", j_star - 1)),
            );
        }
    } else if prefix_gamma == 1 && j_star >= 4 && prefix_index == Some(1) {
        let t1 = profile.t1.expect("gamma hits 1");
        if t1 == j_star {
            // S_{j*-1} = p_{j*-2}, deg e_{j*} = j*, S_{j*}^2 inside p_{2 j*}
            let ok = filtration[j_star - 2] == Subspace::poly_space(field, j_star - 2)
                && profile.degrees[j_star - 1] == j_star as i64
                && filtration[j_star - 1]
                    .square()
                    .is_subspace_of(&Subspace::poly_space(field, 2 * j_star));
            l28 = if ok {
                (Status::Pass, None)
            } else {
                (
                    Status::Fail,
                    Some(format!("t1 = {j_star} prefix structure violated")),
                )
            };
        } else if t1 == 3 {
            // S_i = K + e_2 p_{i-2} and S_i^2 = K + e_2 p_{2i-2}, and
            // successive quotients are polynomials
            let one = Subspace::span(&[RatFunc::one(field)])?;
            let e2 = &basis.elements[1];
            let mut ok = true;
            for i in 3..=j_star {
                let shifted = Subspace::poly_space(field, i - 2).scale(e2)?;
                if filtration[i - 1] != one.sum(&shifted)? {
                    ok = false;
                    break;
                }
                let shifted_sq = Subspace::poly_space(field, 2 * i - 2).scale(e2)?;
                if filtration[i - 1].square() != one.sum(&shifted_sq)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                for i in 1..j_star {
                    if !basis.elements[i]
                        .div(&basis.elements[i - 1])
                        .expect("nonzero")
                        .is_polynomial()
                    {
                        ok = false;
                        break;
                    }
                }
            }
            l28 = if ok {
                (Status::Pass, None)
            } else {
                (
                    Status::Fail,
                    Some("t1 = 3 prefix structure violated".into()),
                )
            };
        }
    }
    push("L2.8", l28.0, l28.1);

    // L2.9: pole count of each basis element equals the degree of the
    // minimal divisor of <1, e>.
    let mut l29 = (Status::Pass, None);
    if n == 1 {
        l29 = (Status::NotApplicable, None);
    }
    for e in basis.elements.iter().skip(1) {
        let pc = pole_count(e)? as i64;
        let s = Subspace::span(&[RatFunc::one(field), e.clone()])?;
        let deg = crate::divisor::minimal_divisor(&s)?.degree();
        if pc != deg {
            l29 = (
                Status::Fail,
                Some(format!("pole_count({e}) = {pc} but deg D = {deg}")),
            );
            break;
        }
    }
    push("L2.9", l29.0, l29.1);

    // L2.10(i): flat genus step forces equal divisor differences.
    let mut l210i = (Status::NotApplicable, None);
    for i in 2..n {
        // 1-based i with 2 <= i <= n-1 and gamma_{i+1} = gamma_i
        if profile.gamma_seq[i] != profile.gamma_seq[i - 1] {
            continue;
        }
        let lhs = growth.divisors[i].sub(&growth.divisors[i - 1]);
        let rhs = growth.divisors[i - 1].sub(&growth.divisors[i - 2]);
        if lhs == rhs {
            if l210i.0 == Status::NotApplicable {
                l210i = (Status::Pass, None);
            }
        } else {
            l210i = (
                Status::Fail,
                Some(format!(
                    "D_{} - D_{} = {} but D_{} - D_{} = {}",
                    i + 1,
                    i,
                    lhs,
                    i,
                    i - 1,
                    rhs
                )),
            );
            break;
        }
    }
    push("L2.10i", l210i.0, l210i.1);

    // L2.10(ii): on a flat step with i >= 3, places absent from D_{i-1}
    // stay absent from D_i.
    let mut l210ii = (Status::NotApplicable, None);
    for i in 3..n {
        if profile.gamma_seq[i] != profile.gamma_seq[i - 1] {
            continue;
        }
        let prev = &growth.divisors[i - 2];
        let cur = &growth.divisors[i - 1];
        let escaped = cur
            .support()
            .find(|p| cur.coeff(p) != 0 && prev.coeff(p) == 0);
        match escaped {
            None => {
                if l210ii.0 == Status::NotApplicable {
                    l210ii = (Status::Pass, None);
                }
            }
            Some(p) => {
                l210ii = (
                    Status::Fail,
                    Some(format!("place {p} enters D_{i} but is absent from D_{}", i - 1)),
                );
                break;
            }
        }
    }
    push("L2.10ii", l210ii.0, l210ii.1);

    // L5.1: the super filtered basis postcondition, verbatim.
    match basis.verify() {
        Ok(()) => push("L5.1", Status::Pass, None),
        Err(Error::InternalInvariant(msg)) => push("L5.1", Status::Fail, Some(msg)),
        Err(e) => return Err(e),
    }

    // L5.3: T_i = L((t-2)P_inf + D_i) inside S_i^2, gated on the lemma's
    // hypotheses with t the first jump index. The base case reads the
    // gamma = 0 prefix as polynomials in a generator of F, so the prefix
    // must generate the whole field (degree sets like {0,2,4,...} do
    // not, and the inclusion genuinely fails there).
    let mut l53 = (Status::NotApplicable, None);
    if let Some(t) = profile.first_jump() {
        if analysis.tower_indices[t - 2] == Some(1) {
            match check_t_inclusions(basis, growth, profile, t, false) {
                Ok(incl) => {
                    l53 = match incl.iter().position(|ok| !ok) {
                        None => (Status::Pass, None),
                        Some(k) => (
                            Status::Fail,
                            Some(format!("T_{} not inside S_{}^2", t - 1 + k, t - 1 + k)),
                        ),
                    };
                }
                Err(Error::HypothesisNotMet(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    push("L5.3", l53.0, l53.1);

    // T1.7: under gamma_3 = 0 and gamma_{Delta_Max} = 0 (and the value
    // set {0, gamma} or {0, 1, gamma} with gamma <= n-3), the minimal
    // divisor satisfies dim L(D) <= n + gamma.
    let mut t17 = (Status::NotApplicable, None);
    let values: std::collections::BTreeSet<i64> = profile.gamma_seq.iter().copied().collect();
    let admissible_values = values
        .iter()
        .all(|&v| v == 0 || v == 1 || v == gamma);
    let dmax = growth.delta_max;
    if profile.t.is_some()
        && gamma <= n as i64 - 3
        && admissible_values
        && n >= 3
        && profile.gamma_seq[2] == 0
        && dmax >= 1
        && (dmax as usize) <= n
        && profile.gamma_seq[dmax as usize - 1] == 0
    {
        t17 = if analysis.conjecture.dim_ld <= n as i64 + gamma {
            (Status::Pass, None)
        } else {
            (
                Status::Fail,
                Some(format!(
                    "dim L(D) = {} > {}",
                    analysis.conjecture.dim_ld,
                    n as i64 + gamma
                )),
            )
        };
    }
    push("T1.7", t17.0, t17.1);

    // C1.6: gamma = 2, dim >= 5 implies deg(D) <= n + 1.
    if gamma == 2 && n >= 5 {
        let deg = analysis.minimal_divisor.degree();
        if deg <= n as i64 + 1 {
            push("C1.6", Status::Pass, None);
        } else {
            push(
                "C1.6",
                Status::Fail,
                Some(format!("deg D = {deg} > {}", n + 1)),
            );
        }
    } else {
        push("C1.6", Status::NotApplicable, None);
    }

    // Conjecture 1 verdict.
    if analysis.conjecture.hypothesis {
        if analysis.conjecture.holds {
            push("Conj1", Status::Pass, None);
        } else {
            push(
                "Conj1",
                Status::Fail,
                Some(format!(
                    "dim L(D) = {} > dim S + gamma = {}",
                    analysis.conjecture.dim_ld, analysis.conjecture.bound
                )),
            );
        }
    } else {
        push("Conj1", Status::NotApplicable, None);
    }

    debug_assert_eq!(out.len(), FINDING_IDS.len());
    Ok(out)
}

fn divisor_json(d: &Divisor) -> Value {
    let mut map = Map::new();
    for (p, c) in d.iter() {
        let key = match p {
            Place::Infinity => "inf".to_string(),
            Place::Finite(a) => a.to_string(),
        };
        map.insert(key, json!(c));
    }
    Value::Object(map)
}

impl Analysis {
    /// Machine report; every field element is rendered as an exact
    /// string, never a float.
    pub fn to_json(&self) -> Value {
        let table = degree_table(&self.profile.degrees, self.dim);
        json!({
            "field": self.field.to_string(),
            "dim": self.dim,
            "gamma": self.gamma(),
            "gamma_seq": self.profile.gamma_seq,
            "t": self.profile.t,
            "t1": self.profile.t1,
            "delta": self.profile.delta,
            "degrees": self.profile.degrees,
            "degree_table": table,
            "divisors": self.growth.divisors.iter().map(divisor_json).collect::<Vec<_>>(),
            "ambient_index": self.ambient_index,
            "conjecture": {
                "hypothesis": self.conjecture.hypothesis,
                "bound": self.conjecture.bound,
                "dim_LD": self.conjecture.dim_ld,
                "holds": self.conjecture.holds,
            },
            "needed": self.needed.iter().map(|e| json!({
                "i": e.i,
                "j": e.j,
                "needed": e.needed,
                "min": e.min,
                "max": e.max,
                "exact": e.exact,
            })).collect::<Vec<_>>(),
            "tower": { "indices": self.tower_indices },
            "growth": {
                "M": self.growth.pole_counts,
                "mu": self.growth.mu,
                "delta_max": self.growth.delta_max,
            },
            "findings": self.findings.iter().map(|f| json!({
                "id": f.id,
                "status": f.status.as_str(),
                "witness": f.witness,
            })).collect::<Vec<_>>(),
        })
    }

    /// Human-readable report; `show_table` adds the upper-triangular
    /// degree table.
    pub fn render_text(&self, show_table: bool) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let _ = writeln!(s, "field: {}", self.field);
        let _ = writeln!(s, "dim S = {}   gamma = {}", self.dim, self.gamma());
        let _ = writeln!(s, "gamma_seq = {:?}", self.profile.gamma_seq);
        let _ = writeln!(
            s,
            "t = {}   t1 = {}   delta = {}",
            opt(self.profile.t),
            opt(self.profile.t1),
            self.profile.delta
        );
        let _ = writeln!(s, "degrees = {:?}", self.profile.degrees);
        if let Some(idx) = self.ambient_index {
            if idx > 1 {
                let _ = writeln!(s, "ambient index [K(x):K(S)] = {idx} (rewritten)");
            }
        }
        let _ = writeln!(s, "D = {}   deg D = {}", self.minimal_divisor, self.minimal_divisor.degree());
        let _ = writeln!(
            s,
            "conjecture: hypothesis {} | dim L(D) = {} <= {} : {}",
            if self.conjecture.hypothesis { "holds" } else { "fails (vacuous)" },
            self.conjecture.dim_ld,
            self.conjecture.bound,
            if self.conjecture.holds { "yes" } else { "NO" }
        );
        let _ = writeln!(
            s,
            "growth: M = {:?}  mu = {:?}  Delta_Max = {}",
            self.growth.pole_counts, self.growth.mu, self.growth.delta_max
        );
        let _ = writeln!(
            s,
            "tower indices = [{}]",
            self.tower_indices
                .iter()
                .map(|i| match i {
                    None => "-".to_string(),
                    Some(k) => k.to_string(),
                })
                .collect::<Vec<_>>()
                .join(", ")
        );
        if show_table {
            let _ = writeln!(s, "degree table (deg e_i e_j):");
            let table = degree_table(&self.profile.degrees, self.dim);
            for (i, row) in table.iter().enumerate() {
                let _ = write!(s, "  e_{}:", i + 1);
                for _ in 0..i {
                    let _ = write!(s, "     ");
                }
                for v in row {
                    let _ = write!(s, " {v:4}");
                }
                let _ = writeln!(s);
            }
        }
        if let Some(col) = self.needed_col {
            let _ = writeln!(s, "needed (column {col}):");
            for e in &self.needed {
                let _ = writeln!(
                    s,
                    "  e_{}e_{}: needed = {}  (min {}, max {}{})",
                    e.i,
                    e.j,
                    e.needed,
                    e.min,
                    e.max,
                    if e.exact { "" } else { "; not exact" }
                );
            }
        }
        let _ = writeln!(s, "findings:");
        for f in &self.findings {
            let _ = write!(s, "  {:8} {}", f.id, f.status.as_str());
            if let Some(w) = &f.witness {
                let _ = write!(s, "  [{w}]");
            }
            let _ = writeln!(s);
        }
        s
    }
}

fn opt(v: Option<usize>) -> String {
    match v {
        None => "-".to_string(),
        Some(k) => k.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freiman::IntSet;
    use crate::generators::{canonical_gamma0, monomial_instance};

    fn analyze_monomials(set: &[i64]) -> Analysis {
        let s = monomial_instance(FieldSpec::Q, &IntSet::new(set.iter().copied()));
        analyze(&s.basis(), &AnalysisOptions::default()).unwrap()
    }

    #[test]
    fn table1_pipeline() {
        let a = analyze_monomials(&[0, 1, 2, 4, 5]);
        assert_eq!(a.gamma(), 2);
        assert_eq!(a.profile.gamma_seq, vec![0, 0, 0, 1, 2]);
        assert_eq!(
            a.minimal_divisor,
            Divisor::from_coeffs([(Place::Infinity, 5)])
        );
        assert_eq!(a.conjecture.dim_ld, 6);
        assert_eq!(a.conjecture.bound, 7);
        assert!(a.conjecture.holds);
        assert!(a.conjecture.hypothesis);
        assert!(!a.any_failure());
        // the needed column reproduces the paper's example
        assert_eq!(a.needed_col, Some(5));
        let flags: Vec<bool> = a.needed.iter().map(|e| e.needed).collect();
        assert_eq!(flags, vec![false, false, true, true, true]);
        // checklist ids fixed and ordered
        let ids: Vec<&str> = a.findings.iter().map(|f| f.id).collect();
        assert_eq!(ids, FINDING_IDS.to_vec());
        assert_eq!(a.finding("C1.6").status, Status::Pass);
    }

    #[test]
    fn gamma0_pipeline() {
        let s = canonical_gamma0(FieldSpec::Q, 6);
        let a = analyze(&s.basis(), &AnalysisOptions::default()).unwrap();
        assert_eq!(a.gamma(), 0);
        assert_eq!(a.conjecture.dim_ld, 6);
        assert!(a.conjecture.holds);
        assert_eq!(a.finding("L2.8").status, Status::Pass);
        assert_eq!(a.finding("L5.3").status, Status::NotApplicable); // no jump
        assert_eq!(a.finding("Conj1").status, Status::Pass);
        assert!(!a.any_failure());
    }

    #[test]
    fn ambient_rewriting() {
        // {1, x^2, x^4, x^6} generates K(x^2); the analyzer rewrites and
        // reports the index
        let a = analyze_monomials(&[0, 2, 4, 6]);
        assert_eq!(a.ambient_index, Some(2));
        assert_eq!(a.profile.degrees, vec![0, 1, 2, 3]);
        assert_eq!(a.gamma(), 0);
        assert_eq!(a.conjecture.dim_ld, 4);
        assert!(a.conjecture.holds);
        assert!(!a.any_failure());
    }

    #[test]
    fn degenerate_constant_space() {
        let a = analyze(&[RatFunc::one(FieldSpec::Q)], &AnalysisOptions::default()).unwrap();
        assert_eq!(a.dim, 1);
        assert_eq!(a.gamma(), 0);
        assert_eq!(a.ambient_index, None);
        assert_eq!(a.minimal_divisor, Divisor::zero());
        assert!(!a.any_failure());
    }

    #[test]
    fn max_dim_guard() {
        let s = Subspace::poly_space(FieldSpec::Q, 30);
        assert_eq!(
            analyze(&s.basis(), &AnalysisOptions::default()).unwrap_err(),
            Error::DimensionTooLarge
        );
    }

    #[test]
    fn json_shape() {
        let a = analyze_monomials(&[0, 1, 2, 4, 5]);
        let v = a.to_json();
        assert_eq!(v["dim"], 5);
        assert_eq!(v["gamma"], 2);
        assert_eq!(v["conjecture"]["dim_LD"], 6);
        assert_eq!(v["divisors"][4]["inf"], 5);
        assert_eq!(v["field"], "q");
        assert_eq!(v["findings"].as_array().unwrap().len(), FINDING_IDS.len());
        // deterministic serialization
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            serde_json::to_string(&a.to_json()).unwrap()
        );
    }
}
