//! Subfield machinery for K(S) ⊆ K(x): pole counts as field degrees,
//! constructive Lüroth generators, subfield indices along the natural
//! filtration, and the valuation-gap probe.
//!
//! The minimal polynomial of x over K(f) for f = p/q in lowest terms is
//! (up to content) ψ_f(T) = q(x)p(T) - p(x)q(T); its T-degree is
//! max(deg p, deg q), the pole count of f. Folding with a bivariate gcd
//! over K(x)[T] — computed in K[x][T] with content/primitive-part
//! bookkeeping to avoid fraction blowup — yields the minimal polynomial
//! of x over K(f_1, ..., f_k), and any nonconstant coefficient of its
//! monic form generates that subfield.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{linear_root_factorization, poly_gcd, Poly};
use crate::ratfunc::RatFunc;
use crate::scalar::{FieldSpec, Scalar};
use crate::subspace::Subspace;

/// Number of poles of `f` counted with multiplicity (including infinity),
/// which equals the field index [K(x) : K(f)].
pub fn pole_count(f: &RatFunc) -> Result<u64> {
    if f.is_constant() {
        return Err(Error::ConstantElement);
    }
    let n = f.num().degree().unwrap_or(0) as u64;
    let d = f.den().degree().unwrap() as u64;
    Ok(n.max(d))
}

/// Polynomials in T over K[x]; index = T-degree.
#[derive(Debug, Clone)]
struct BiPoly {
    coeffs: Vec<Poly>,
}

impl BiPoly {
    fn new(mut coeffs: Vec<Poly>) -> Self {
        while coeffs.last().is_some_and(Poly::is_zero) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &Poly {
        self.coeffs.last().expect("nonzero")
    }

    fn scale(&self, c: &Poly) -> BiPoly {
        BiPoly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    fn shift(&self, k: usize) -> BiPoly {
        let field = self.coeffs[0].field();
        let mut coeffs = vec![Poly::zero(field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        BiPoly::new(coeffs)
    }

    fn sub(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let field = self
            .coeffs
            .first()
            .or(other.coeffs.first())
            .expect("nonzero operand")
            .field();
        let zero = Poly::zero(field);
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a.sub(b)
            })
            .collect();
        BiPoly::new(coeffs)
    }

    fn content(&self) -> Poly {
        let field = self.coeffs[0].field();
        let mut g = Poly::zero(field);
        for c in &self.coeffs {
            g = poly_gcd(&g, c);
        }
        g
    }

    fn primitive(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        BiPoly::new(self.coeffs.iter().map(|a| a.div_exact(&c)).collect())
    }

    /// Specialization x = c, as a univariate polynomial in T.
    fn eval_x(&self, c: &Scalar) -> Poly {
        let field = c.field();
        Poly::new(field, self.coeffs.iter().map(|p| p.eval(c)).collect())
    }

    /// Pseudo-remainder of self by other (deg other <= deg self).
    fn prem(&self, other: &BiPoly) -> BiPoly {
        let db = other.deg().expect("division by zero");
        let mut r = self.clone();
        while let Some(dr) = r.deg() {
            if dr < db {
                break;
            }
            let piece = other.scale(r.lead()).shift(dr - db);
            r = r.scale(other.lead()).sub(&piece);
        }
        r
    }
}

/// Primitive gcd in K[x][T]; also the gcd in K(x)[T] up to a factor from
/// K[x].
///
/// Over ℚ the pseudo-remainder sequence suffers severe coefficient
/// growth, so the gcd is computed by evaluation and interpolation: the
/// inputs are specialized at sample points c (avoiding the leading
/// coefficients' zeros), the univariate gcds in T are interpolated back
/// through exact rational reconstruction, and the candidate is certified
/// by pseudo-division — a verified common divisor of the generic degree
/// is the gcd. Over 𝔽_p coefficients cannot grow and the plain primitive
/// sequence is used (doubling as the fallback).
fn bi_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let field = a.coeffs[0].field();
    if field == FieldSpec::Q {
        if let Some(h) = bi_gcd_interpolate(a, b) {
            return h;
        }
    }
    bi_gcd_prs(a, b)
}

fn bi_gcd_prs(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut a = a.primitive();
    let mut b = b.primitive();
    if a.deg() < b.deg() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.prem(&b).primitive();
        a = b;
        b = r;
    }
    a.primitive()
}

fn bi_gcd_interpolate(a: &BiPoly, b: &BiPoly) -> Option<BiPoly> {
    let field = a.coeffs[0].field();
    let x_bound = a
        .coeffs
        .iter()
        .chain(b.coeffs.iter())
        .filter_map(|p| p.degree())
        .max()?;
    let lc_a = a.lead();
    let lc_b = b.lead();

    // deg g_c >= deg gcd at every sample with non-vanishing leading
    // coefficients, with equality off a finite bad set; collect samples,
    // keep those of minimal degree.
    let wanted = 2 * x_bound + 3;
    let mut samples: Vec<(Scalar, Poly)> = Vec::new();
    let mut d_star = usize::MAX;
    let mut k: i64 = 0;
    let mut inspected = 0usize;
    while samples.len() < wanted && inspected < 8 * wanted {
        let c = field.from_i64(if k % 2 == 0 { k / 2 } else { -(k / 2) - 1 });
        k += 1;
        inspected += 1;
        if lc_a.eval(&c).is_zero() || lc_b.eval(&c).is_zero() {
            continue;
        }
        let g_c = crate::poly::poly_gcd(&a.eval_x(&c), &b.eval_x(&c));
        let d = g_c.degree().expect("gcd of nonzero is nonzero");
        match d.cmp(&d_star) {
            std::cmp::Ordering::Less => {
                d_star = d;
                samples.retain(|_| false);
                samples.push((c, g_c));
            }
            std::cmp::Ordering::Equal => samples.push((c, g_c)),
            std::cmp::Ordering::Greater => {}
        }
    }
    if samples.len() < wanted {
        return None;
    }
    if d_star == 0 {
        return Some(BiPoly::new(vec![Poly::one(field)]));
    }

    // Rationally reconstruct each monic coefficient c_j = p/q with
    // deg p, deg q <= x_bound from the sampled values.
    let mut coeffs: Vec<RatFunc> = Vec::with_capacity(d_star);
    for j in 0..d_star {
        let mut matrix = Vec::with_capacity(samples.len());
        for (c, g_c) in &samples {
            let v = g_c.coeff(j);
            let mut row = Vec::with_capacity(2 * x_bound + 2);
            let mut power = field.one();
            for _ in 0..=x_bound {
                row.push(power.clone());
                power = power.mul(c);
            }
            let mut power = field.one();
            for _ in 0..=x_bound {
                row.push(power.mul(&v).neg());
                power = power.mul(c);
            }
            matrix.push(row);
        }
        let kernel = kernel_vector(matrix, field)?;
        let p = Poly::new(field, kernel[..=x_bound].to_vec());
        let q = Poly::new(field, kernel[x_bound + 1..].to_vec());
        if q.is_zero() {
            return None;
        }
        coeffs.push(RatFunc::new(p, q).ok()?);
    }

    // Clear denominators and certify by pseudo-division.
    let mut den = Poly::one(field);
    for c in &coeffs {
        den = crate::poly::poly_lcm(&den, c.den());
    }
    let mut rows: Vec<Poly> = coeffs
        .iter()
        .map(|c| c.num().mul(&den.div_exact(c.den())))
        .collect();
    rows.push(den);
    let h = BiPoly::new(rows).primitive();
    if h.deg() != Some(d_star) {
        return None;
    }
    if a.prem(&h).is_zero() && b.prem(&h).is_zero() {
        Some(h)
    } else {
        None
    }
}

/// ψ_f(T) = q(x)p(T) - p(x)q(T) made primitive: the minimal polynomial of
/// x over K(f) up to a unit.
fn min_poly_of_x_over(f: &RatFunc) -> BiPoly {
    let p = f.num();
    let q = f.den();
    let deg = pole_count(f).expect("nonconstant") as usize;
    let coeffs = (0..=deg)
        .map(|j| q.scale(&p.coeff(j)).sub(&p.scale(&q.coeff(j))))
        .collect::<Vec<Poly>>();
    BiPoly::new(coeffs).primitive()
}

/// A single rational function y with K(gens) = K(y), computed by folding
/// bivariate gcds of the generators' minimal polynomials. Among the
/// nonconstant coefficients of the monic gcd the one with the fewest
/// poles (lowest T-index on ties) is returned, so the output is
/// deterministic. A single nonconstant generator is returned as-is.
pub fn luroth_generator(gens: &[RatFunc]) -> Result<RatFunc> {
    let nonconstant: Vec<&RatFunc> = gens.iter().filter(|g| !g.is_constant()).collect();
    match nonconstant.len() {
        0 => return Err(Error::AllConstant),
        1 => return Ok(nonconstant[0].clone()),
        _ => {}
    }
    let field = nonconstant[0].field();
    let mut h = min_poly_of_x_over(nonconstant[0]);
    for g in &nonconstant[1..] {
        if h.deg() == Some(1) {
            break;
        }
        h = bi_gcd(&h, &min_poly_of_x_over(g));
    }
    let m = h.deg().expect("minimal polynomial is nonzero");
    if m == 1 {
        return Ok(RatFunc::x(field));
    }
    let lead = h.lead().clone();
    let mut best: Option<(u64, RatFunc)> = None;
    for j in 0..m {
        let c = RatFunc::new(h.coeffs[j].clone(), lead.clone())?;
        if c.is_constant() {
            continue;
        }
        let pc = pole_count(&c)?;
        if best.as_ref().is_none_or(|(b, _)| pc < *b) {
            best = Some((pc, c));
        }
    }
    best.map(|(_, c)| c).ok_or_else(|| {
        Error::InternalInvariant("monic minimal polynomial had only constant coefficients".into())
    })
}

/// [K(x) : K(S_i)] for every space of the filtration, `None` where the
/// prefix consists of constants only. Computed incrementally: the
/// generator of K(S_{i+1}) is the Lüroth generator of (y_i, e_{i+1}).
pub fn subfield_index_chain(filtration: &[Subspace]) -> Result<Vec<Option<u64>>> {
    let mut indices = Vec::with_capacity(filtration.len());
    let mut gen: Option<RatFunc> = None;
    let mut seen = 0usize;
    for space in filtration {
        // ascending degree order: the element new to this prefix is last
        for e in space.basis().iter().rev().skip(seen) {
            if e.is_constant() {
                continue;
            }
            gen = Some(match gen.take() {
                None => e.clone(),
                Some(y) => {
                    if pole_count(&y)? == 1 {
                        y
                    } else {
                        luroth_generator(&[y, e.clone()])?
                    }
                }
            });
        }
        seen = space.dim();
        indices.push(match &gen {
            None => None,
            Some(y) => Some(pole_count(y)?),
        });
    }
    Ok(indices)
}

/// Writes `e` as a rational expression R(y) of degree at most
/// pole_count(e) in the generator; `None` when `e` is not in K(y) within
/// that bound. R is returned as a rational function in a fresh variable.
pub fn express_in_generator(e: &RatFunc, y: &RatFunc) -> Result<Option<RatFunc>> {
    let field = e.field();
    if e.is_constant() {
        return Ok(Some(e.clone()));
    }
    let bound = pole_count(e)? as usize;
    let a = y.num();
    let b = y.den();
    // c * Σ q_j a^j b^{B-j}  =  d * Σ p_j a^j b^{B-j}
    let mut weights = Vec::with_capacity(bound + 1);
    for j in 0..=bound {
        weights.push(a.pow(j as u32).mul(&b.pow((bound - j) as u32)));
    }
    let c = e.num();
    let d = e.den();
    let p_cols: Vec<Poly> = weights.iter().map(|w| w.mul(d).neg()).collect();
    let q_cols: Vec<Poly> = weights.iter().map(|w| w.mul(c)).collect();
    let rows = p_cols
        .iter()
        .chain(q_cols.iter())
        .filter_map(|p| p.degree())
        .max()
        .map_or(0, |d| d + 1);
    let mut matrix = vec![vec![field.zero(); 2 * (bound + 1)]; rows];
    for (col, p) in p_cols.iter().chain(q_cols.iter()).enumerate() {
        for (row, item) in matrix.iter_mut().enumerate() {
            item[col] = p.coeff(row);
        }
    }
    let Some(kernel) = kernel_vector(matrix, field) else {
        return Ok(None);
    };
    let p = Poly::new(field, kernel[..=bound].to_vec());
    let q = Poly::new(field, kernel[bound + 1..].to_vec());
    debug_assert!(!q.is_zero());
    Ok(Some(RatFunc::new(p, q)?))
}

/// One nonzero kernel vector of the matrix, or `None` when the kernel is
/// trivial. Plain exact Gaussian elimination; the systems here are tiny.
fn kernel_vector(mut m: Vec<Vec<Scalar>>, field: FieldSpec) -> Option<Vec<Scalar>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut row = 0;
    for col in 0..cols {
        let Some(r) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r2 in 0..m.len() {
            if r2 != row && !m[r2][col].is_zero() {
                let factor = m[r2][col].clone();
                for c2 in 0..cols {
                    let delta = m[row][c2].mul(&factor);
                    m[r2][c2] = m[r2][c2].sub(&delta);
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free = (0..cols).find(|&c| pivot_of_col[c].is_none())?;
    let mut v = vec![field.zero(); cols];
    v[free] = field.one();
    for c in 0..cols {
        if let Some(r) = pivot_of_col[c] {
            v[c] = m[r][free].neg();
        }
    }
    Some(v)
}

/// A witness for the valuation-gap lemma: two elements of S whose
/// α-valuations differ by exactly one.
#[derive(Debug, Clone)]
pub struct GapWitness {
    pub alpha: Scalar,
    pub s1: RatFunc,
    pub s2: RatFunc,
    pub gap: i64,
}

/// Samples `trials` points α outside the constructible bad set (zeros of
/// f, of g and of the Wronskian fg' - f'g for two coprime distinct-degree
/// numerators of S) and produces elements s_1, s_2 of S with
/// v_α(s_1) - v_α(s_2) = 1. A witness with gap ≠ 1 falsifies the lemma on
/// this instance; callers must check the recorded gap.
pub fn valuation_gap_probe(space: &Subspace, trials: usize, seed: u64) -> Result<Vec<GapWitness>> {
    assert!(space.dim() >= 2, "probe needs two distinct degrees");
    let field = space.field();
    let g0 = poly_gcd(&space.rows()[0], &space.rows()[1]);
    let f = space.rows()[0].div_exact(&g0);
    let g = space.rows()[1].div_exact(&g0);
    let wronskian = f.mul(&g.derivative()).sub(&f.derivative().mul(&g));
    if wronskian.is_zero() {
        return Err(Error::HypothesisNotMet(
            "wronskian of the probe pair vanishes identically".into(),
        ));
    }
    let mut bad: Vec<Scalar> = Vec::new();
    for p in [&f, &g, &wronskian] {
        for (alpha, _) in linear_root_factorization(p).0 {
            if !bad.contains(&alpha) {
                bad.push(alpha);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut witnesses = Vec::with_capacity(trials);
    let mut tried: Vec<Scalar> = Vec::new();
    let mut attempts = 0usize;
    while witnesses.len() < trials {
        attempts += 1;
        let alpha = match field {
            FieldSpec::Q => field.from_i64(rng.gen_range(-10_000i64..=10_000)),
            FieldSpec::Fp(p) => {
                if attempts > 4 * p as usize {
                    return Err(Error::FieldTooSmall);
                }
                field.from_i64(rng.gen_range(0..p) as i64)
            }
        };
        if bad.contains(&alpha) || tried.contains(&alpha) {
            continue;
        }
        tried.push(alpha.clone());
        let a = f.eval(&alpha).div(&g.eval(&alpha)).neg();
        let s1 = RatFunc::new(
            space.rows()[0].add(&space.rows()[1].scale(&a)),
            space.den().clone(),
        )?;
        let s2 = RatFunc::new(space.rows()[0].clone(), space.den().clone())?;
        let place = crate::divisor::Place::Finite(alpha.clone());
        let gap =
            crate::divisor::valuation(&s1, &place)? - crate::divisor::valuation(&s2, &place)?;
        witnesses.push(GapWitness { alpha, s1, s2, gap });
    }
    Ok(witnesses)
}
