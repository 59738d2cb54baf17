//! The lattice obstruction to smoothly embedding a disjoint union of
//! rational balls `B(pᵢ,qᵢ)` in CP².
//!
//! Replacing each ball by the positive-definite plumbing `Cᵢ` with the same
//! boundary gives a closed positive-definite manifold, so Donaldson's theorem
//! yields a finite-index embedding `Λ_M ⊕ Λ_C ↪ ℤᵐ`. Here `Λ_M` has rank one
//! with generator norm `∏ pᵢ²` and `m = 1 + rank Λ_C`. Such an embedding can
//! come from an actual smooth embedding only if
//!
//! 1. the generator of `Λ_M` maps to a primitive vector, and
//! 2. every coordinate vector `eᵢ` pairs nonzero with both `Λ_M` and `Λ_C`.
//!
//! Since `Λ_C` has corank one, its saturated orthogonal complement is spanned
//! by a primitive `w`, and the generator of `Λ_M` must map to `±k·w`.
//! Primitivity forces `k = 1`, so a class of `Λ_C` is a witness exactly when
//! `w·w = ∏ pᵢ²` and both pairing conditions hold. If the exhaustive search
//! finds no witness, the union does not embed.

use std::collections::BTreeSet;
use std::time::Duration;

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::contfrac::{lens_plumbing, HJExpansion};
use crate::error::{Error, LimitKind, Result, SearchStats};
use crate::lattice::{
    canonical_form, direct_sum, direct_sum_all, enumerate_embedding_classes, integer_determinant,
    is_isometric_embedding, is_primitive_vector, lattice_determinant, linear_lattice, orthogonal_complement,
    search_embeddings, unit_pairing_profile, EmbeddingMatrix, GramLattice, SearchLimits, UnitPairingProfile,
};
use crate::markov::{odd_fibonacci, BallSpec};

/// Boundary lens space `L(p², pq − 1)` of `B(p,q)`.
pub fn ball_boundary(b: &BallSpec) -> (BigUint, BigUint) {
    let p = b.p();
    (p * p, p * b.q() - 1u32)
}

/// Weights of the positive-definite plumbing bounded by `∂B(p,q)`:
/// the expansion of `P/(P − Q)` for `(P, Q) = (p², pq − 1)`.
pub fn ball_plumbing(b: &BallSpec) -> Result<HJExpansion> {
    let (big_p, big_q) = ball_boundary(b);
    lens_plumbing(big_p, big_q)
}

/// The ball `B(F(2n+1), F(2n−1))`.
pub fn fibonacci_ball(n: u64) -> Result<BallSpec> {
    if n < 1 {
        return Err(Error::invalid("Fibonacci balls are indexed from n = 1"));
    }
    BallSpec::new(odd_fibonacci(n + 1)?, odd_fibonacci(n)?)
}

/// The lattice problem attached to a list of balls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionProblem {
    pub balls: Vec<BallSpec>,
    /// Norm of the generator of `Λ_M`, i.e. `|H₁|` of the boundary union.
    #[serde(with = "crate::decimal")]
    pub m_norm: BigUint,
    /// Plumbing weights of each `Cᵢ`, in ball order.
    pub plumbings: Vec<HJExpansion>,
    /// `1 + Σ rank Λ_{Cᵢ}`.
    #[serde(with = "crate::decimal")]
    pub ambient: usize,
}

impl ObstructionProblem {
    pub fn components(&self) -> Vec<GramLattice> {
        self.plumbings.iter().map(|e| linear_lattice(&e.weights()).expect("plumbing is nonempty")).collect()
    }

    /// `Λ_C`, the direct sum of the components.
    pub fn lattice_c(&self) -> GramLattice {
        direct_sum_all(&self.components()).expect("problem has at least one ball")
    }

    /// Row ranges of each component inside `Λ_C`.
    pub fn component_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.plumbings
            .iter()
            .map(|e| {
                let r = start..start + e.len();
                start = r.end;
                r
            })
            .collect()
    }

    fn m_norm_i64(&self) -> Result<i64> {
        self.m_norm
            .to_i64()
            .ok_or_else(|| Error::invalid(format!("generator norm {} does not fit in 64 bits", self.m_norm)))
    }
}

/// Assembles `Λ_M ⊕ Λ_C ↪ ℤᵐ` for the given balls.
pub fn build_problem(balls: &[BallSpec]) -> Result<ObstructionProblem> {
    if balls.is_empty() {
        return Err(Error::invalid("need at least one ball"));
    }
    let m_norm = balls.iter().fold(BigUint::one(), |acc, b| acc * b.p() * b.p());
    let plumbings = balls.iter().map(ball_plumbing).collect::<Result<Vec<_>>>()?;
    let ambient = 1 + plumbings.iter().map(HJExpansion::len).sum::<usize>();
    Ok(ObstructionProblem { balls: balls.to_vec(), m_norm, plumbings, ambient })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// No embedding satisfies the conditions; the search was exhaustive.
    Obstructed,
    /// A witness embedding exists, so the lattice test says nothing.
    NotObstructed,
    /// The search ran out of budget before deciding.
    Inconclusive(LimitKind),
}

/// How the classes of `Λ_M ⊕ Λ_C` are produced.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Enumerate `Λ_C` and read `Λ_M` off the orthogonal complement.
    #[default]
    Complement,
    /// Enumerate the whole direct sum, `Λ_M` row first. Only sensible for tiny cases.
    Direct,
}

/// An embedding of `Λ_M ⊕ Λ_C` passing every condition, in canonical form.
/// Row 0 is the image of the generator of `Λ_M`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub embedding: EmbeddingMatrix,
}

impl Witness {
    pub fn generator(&self) -> &[i64] {
        &self.embedding.rows()[0]
    }

    pub fn lattice_c_image(&self) -> EmbeddingMatrix {
        self.embedding.slice_rows(1..self.embedding.rows().len())
    }
}

/// Why examined classes failed, counted per condition (a class may fail several).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionTally {
    #[serde(with = "crate::decimal")]
    pub classes_examined: u64,
    /// No finite-index extension at all: the generator norm is not `k²·w·w`.
    #[serde(with = "crate::decimal")]
    pub no_extension: u64,
    /// A finite-index extension exists but the generator image is not primitive.
    #[serde(with = "crate::decimal")]
    pub not_primitive: u64,
    /// Some `eᵢ` pairs trivially with `Λ_M`.
    #[serde(with = "crate::decimal")]
    pub unit_pairing_m: u64,
    /// Some `eᵢ` pairs trivially with `Λ_C`.
    #[serde(with = "crate::decimal")]
    pub unit_pairing_c: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub problem: ObstructionProblem,
    pub strategy: Strategy,
    pub verdict: Verdict,
    /// True when every class was examined; an OBSTRUCTED verdict requires it.
    pub exhaustive: bool,
    pub witnesses: Vec<Witness>,
    pub tally: ConditionTally,
    pub stats: SearchStats,
}

/// Runs the obstruction with the complement strategy.
pub fn check_obstruction(problem: &ObstructionProblem, limits: SearchLimits) -> Result<ObstructionReport> {
    check_obstruction_with(problem, limits, Strategy::Complement)
}

/// Runs the obstruction with an explicit strategy.
pub fn check_obstruction_with(
    problem: &ObstructionProblem,
    limits: SearchLimits,
    strategy: Strategy,
) -> Result<ObstructionReport> {
    check_obstruction_timed(problem, limits, strategy).map(|(r, _)| r)
}

/// Like [`check_obstruction_with`], also returning the wall-clock time spent.
/// Timing is kept out of the report so reports are reproducible.
pub fn check_obstruction_timed(
    problem: &ObstructionProblem,
    limits: SearchLimits,
    strategy: Strategy,
) -> Result<(ObstructionReport, Duration)> {
    let m_norm = problem.m_norm_i64()?;
    let lattice_c = problem.lattice_c();
    let m = problem.ambient;
    let mut seen = BTreeSet::new();
    let mut witnesses = BTreeSet::new();
    let mut tally = ConditionTally::default();
    let mut failure = None;

    let outcome = match strategy {
        Strategy::Complement => search_embeddings(&lattice_c, m, limits, |a| {
            let canon = canonical_form(a);
            if failure.is_some() || !seen.insert(canon.clone()) {
                return;
            }
            match examine_c_class(&canon, m_norm, &mut tally) {
                Ok(found) => witnesses.extend(found),
                Err(e) => failure = Some(e),
            }
        })?,
        Strategy::Direct => {
            let full = direct_sum(&linear_lattice(&[m_norm])?, &lattice_c);
            search_embeddings(&full, m, limits, |a| {
                let canon = canonical_form(a);
                if failure.is_some() || !seen.insert(canon.clone()) {
                    return;
                }
                match examine_full_class(&canon, &mut tally) {
                    Ok(Some(w)) => {
                        witnesses.insert(w);
                    }
                    Ok(None) => {}
                    Err(e) => failure = Some(e),
                }
            })?
        }
    };
    if let Some(e) = failure {
        return Err(e);
    }

    let det_c = lattice_determinant(&lattice_c);
    let full_lattice = direct_sum(&linear_lattice(&[m_norm])?, &lattice_c);
    for w in &witnesses {
        verify_witness(w, &full_lattice, m_norm, &det_c)?;
    }

    let exhaustive = outcome.limit_hit.is_none();
    let verdict = match (witnesses.is_empty(), outcome.limit_hit) {
        (false, _) => Verdict::NotObstructed,
        (true, None) => Verdict::Obstructed,
        (true, Some(kind)) => Verdict::Inconclusive(kind),
    };
    let report = ObstructionReport {
        problem: problem.clone(),
        strategy,
        verdict,
        exhaustive,
        witnesses: witnesses.into_iter().collect(),
        tally,
        stats: outcome.stats,
    };
    Ok((report, outcome.elapsed))
}

/// The primitive complement generator of a corank-one image, with its norm.
fn complement_generator(a_c: &EmbeddingMatrix) -> Result<(Vec<i64>, i64)> {
    let comp = orthogonal_complement(a_c)?;
    let (w, norm) = comp
        .generator()
        .ok_or_else(|| Error::internal(format!("complement of a corank-one image has rank {}", comp.rank())))?;
    Ok((w.to_vec(), norm))
}

/// `k` with `k²·w_norm = m_norm`, if any.
fn scale_factor(m_norm: i64, w_norm: i64) -> Option<i64> {
    if m_norm % w_norm != 0 {
        return None;
    }
    let ratio = m_norm / w_norm;
    let k = ratio.sqrt();
    (k * k == ratio).then_some(k)
}

fn examine_c_class(a_c: &EmbeddingMatrix, m_norm: i64, tally: &mut ConditionTally) -> Result<Vec<Witness>> {
    tally.classes_examined += 1;
    let (w, w_norm) = complement_generator(a_c)?;
    let w_row = EmbeddingMatrix::new(vec![w.clone()], a_c.ambient())?;
    let profile = unit_pairing_profile(&w_row, a_c)?;
    let m_ok = profile.coordinates.iter().all(|u| u.with_m);
    let c_ok = profile.coordinates.iter().all(|u| u.with_c);
    tally.unit_pairing_m += u64::from(!m_ok);
    tally.unit_pairing_c += u64::from(!c_ok);
    match scale_factor(m_norm, w_norm) {
        None => {
            tally.no_extension += 1;
            Ok(vec![])
        }
        Some(k) if k != 1 => {
            tally.not_primitive += 1;
            Ok(vec![])
        }
        Some(_) if !(m_ok && c_ok) => Ok(vec![]),
        Some(_) => {
            let mut out = BTreeSet::new();
            for sign in [1, -1] {
                let g: Vec<i64> = w.iter().map(|x| sign * x).collect();
                let full = EmbeddingMatrix::new(vec![g], a_c.ambient())?.stack(a_c)?;
                out.insert(Witness { embedding: canonical_form(&full) });
            }
            Ok(out.into_iter().collect())
        }
    }
}

fn examine_full_class(full: &EmbeddingMatrix, tally: &mut ConditionTally) -> Result<Option<Witness>> {
    tally.classes_examined += 1;
    let k = full.rows().len();
    let a_m = full.slice_rows(0..1);
    let a_c = full.slice_rows(1..k);
    let primitive = is_primitive_vector(&a_m.rows()[0])?;
    let profile = unit_pairing_profile(&a_m, &a_c)?;
    let m_ok = profile.coordinates.iter().all(|u| u.with_m);
    let c_ok = profile.coordinates.iter().all(|u| u.with_c);
    tally.not_primitive += u64::from(!primitive);
    tally.unit_pairing_m += u64::from(!m_ok);
    tally.unit_pairing_c += u64::from(!c_ok);
    Ok((primitive && m_ok && c_ok).then(|| Witness { embedding: full.clone() }))
}

/// Re-checks a witness from scratch: isometry, primitivity, unit pairing and
/// the finite-index determinant identity `det(A)² = m_norm · det Λ_C`.
fn verify_witness(w: &Witness, full_lattice: &GramLattice, m_norm: i64, det_c: &BigInt) -> Result<()> {
    let a = &w.embedding;
    if !is_isometric_embedding(full_lattice, a)? {
        return Err(Error::internal("witness is not an isometric embedding"));
    }
    if !is_primitive_vector(w.generator())? {
        return Err(Error::internal("witness generator is not primitive"));
    }
    if !unit_pairing_profile(&a.slice_rows(0..1), &w.lattice_c_image())?.pass {
        return Err(Error::internal("witness fails the unit pairing condition"));
    }
    let det = integer_determinant(a.rows());
    if &det * &det != BigInt::from(m_norm) * det_c {
        return Err(Error::internal("witness is not a finite-index embedding"));
    }
    Ok(())
}

/// Canonical classes of full embeddings `Λ_M ⊕ Λ_C ↪ ℤᵐ` (no conditions
/// imposed), produced by either strategy. The two must agree.
pub fn full_embedding_classes(
    problem: &ObstructionProblem,
    strategy: Strategy,
    limits: SearchLimits,
) -> Result<BTreeSet<EmbeddingMatrix>> {
    let m_norm = problem.m_norm_i64()?;
    let m = problem.ambient;
    let lattice_c = problem.lattice_c();
    let mut out = BTreeSet::new();
    match strategy {
        Strategy::Direct => {
            let full = direct_sum(&linear_lattice(&[m_norm])?, &lattice_c);
            for c in enumerate_embedding_classes(&full, m, limits)?.classes {
                out.insert(c.representative().clone());
            }
        }
        Strategy::Complement => {
            for c in enumerate_embedding_classes(&lattice_c, m, limits)?.classes {
                let a_c = c.representative();
                let (w, w_norm) = complement_generator(a_c)?;
                if let Some(k) = scale_factor(m_norm, w_norm) {
                    for sign in [k, -k] {
                        let g = w.iter().map(|x| sign * x).collect();
                        let full = EmbeddingMatrix::new(vec![g], m)?.stack(a_c)?;
                        out.insert(canonical_form(&full));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Runs the obstruction on `B_k ⊔ B_n` for each pair, where
/// `B_j = B(F(2j+1), F(2j−1))`.
pub fn theorem2_suite(pairs: &[(u64, u64)], limits: SearchLimits) -> Result<Vec<ObstructionReport>> {
    pairs
        .iter()
        .map(|&(k, n)| {
            let problem = build_problem(&[fibonacci_ball(k)?, fibonacci_ball(n)?])?;
            check_obstruction(&problem, limits)
        })
        .collect()
}

/// One embedding class together with its complement inside its own support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub representative: EmbeddingMatrix,
    /// Number of coordinates the image uses.
    #[serde(with = "crate::decimal")]
    pub support: usize,
    /// Rank of the orthogonal complement in the span of the support coordinates.
    #[serde(with = "crate::decimal")]
    pub complement_rank: usize,
    /// `w·w` when that complement has rank one.
    #[serde(with = "crate::decimal::option")]
    pub generator_norm: Option<i64>,
    /// Whether that complement contains a vector of norm one.
    pub complement_has_unit_vectors: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    #[serde(with = "crate::decimal::vec")]
    pub weights: Vec<i64>,
    #[serde(with = "crate::decimal")]
    pub ambient: usize,
    /// Ordered by support size, then canonical form.
    pub classes: Vec<ClassSummary>,
    pub stats: SearchStats,
}

/// Classifies the embeddings of `Λ(weights)` into ℤᵐ and describes each class.
pub fn classification_report(weights: &[i64], m: usize, limits: SearchLimits) -> Result<ClassificationReport> {
    let l = linear_lattice(weights)?;
    let e = enumerate_embedding_classes(&l, m, limits)?;
    let mut classes = e
        .classes
        .iter()
        .map(|c| {
            let rep = c.representative();
            let support = rep.support();
            let local = rep.restrict_columns(&support);
            let comp = orthogonal_complement(&local)?;
            // ±eᵢ lies in the complement exactly when column i of the image vanishes.
            let has_unit = (0..local.ambient()).any(|j| local.column(j).iter().all(|&x| x == 0));
            Ok(ClassSummary {
                representative: rep.clone(),
                support: support.len(),
                complement_rank: comp.rank(),
                generator_norm: comp.generator().map(|(_, n)| n),
                complement_has_unit_vectors: has_unit,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| a.support.cmp(&b.support).then_with(|| a.representative.cmp(&b.representative)));
    Ok(ClassificationReport { weights: weights.to_vec(), ambient: m, classes, stats: e.stats })
}

/// Weights `3ⁿ⁻¹, 2, 2, 3ⁿ⁻¹, 2` of the plumbing for `B(F(2n+1), F(2n−1))`.
pub fn cemb_weights(n: usize) -> Result<Vec<i64>> {
    if n < 2 {
        return Err(Error::invalid(format!("the chain 3^(n-1),2,2,3^(n-1),2 needs n ≥ 2, got {n}")));
    }
    let mut w = vec![3; n - 1];
    w.extend([2, 2]);
    w.extend(std::iter::repeat_n(3, n - 1));
    w.push(2);
    Ok(w)
}

/// Classification of `Λ(3ⁿ⁻¹,2,2,3ⁿ⁻¹,2)` in ℤᵐ for `m ≥ 4n`.
pub fn lemma_cemb_report(n: usize, m: usize, limits: SearchLimits) -> Result<ClassificationReport> {
    let weights = cemb_weights(n)?;
    if m < 4 * n {
        return Err(Error::invalid(format!("ambient rank {m} is below 4n = {}", 4 * n)));
    }
    classification_report(&weights, m, limits)
}

/// The ball `B(3,1)`: the unique class of `Λ(9) ⊕ Λ(2,2,2,3)` in ℤ⁵ and the
/// obstruction verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleB31Report {
    pub classes: Vec<EmbeddingMatrix>,
    pub unit_pairing: Vec<UnitPairingProfile>,
    pub obstruction: ObstructionReport,
}

pub fn example_b31(limits: SearchLimits) -> Result<ExampleB31Report> {
    let problem = build_problem(&[BallSpec::new(3u32, 1u32)?])?;
    let classes: Vec<EmbeddingMatrix> =
        full_embedding_classes(&problem, Strategy::Direct, limits)?.into_iter().collect();
    let unit_pairing = classes
        .iter()
        .map(|a| unit_pairing_profile(&a.slice_rows(0..1), &a.slice_rows(1..a.rows().len())))
        .collect::<Result<Vec<_>>>()?;
    let obstruction = check_obstruction(&problem, limits)?;
    Ok(ExampleB31Report { classes, unit_pairing, obstruction })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(p: u32, q: u32) -> BallSpec {
        BallSpec::new(p, q).unwrap()
    }

    fn big(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn boundaries() {
        assert_eq!(ball_boundary(&ball(3, 1)), (big(9), big(2)));
        assert_eq!(ball_boundary(&ball(2, 1)), (big(4), big(1)));
        assert_eq!(ball_boundary(&ball(5, 2)), (big(25), big(9)));
    }

    #[test]
    fn plumbings() {
        let w = |b: &BallSpec| ball_plumbing(b).unwrap().coefficients().to_vec();
        assert_eq!(w(&ball(3, 1)), vec![2, 2, 2, 3]);
        assert_eq!(w(&ball(2, 1)), vec![2, 2, 2]);
        assert_eq!(w(&ball(5, 2)), vec![2, 3, 2, 2, 3]);
        assert_eq!(w(&ball(13, 5)), vec![2, 3, 3, 2, 2, 3, 3]);
    }

    #[test]
    fn problems() {
        let p = build_problem(&[ball(3, 1)]).unwrap();
        assert_eq!((p.m_norm.clone(), p.ambient), (big(9), 5));
        assert_eq!(p.lattice_c(), linear_lattice(&[2, 2, 2, 3]).unwrap());

        let p = build_problem(&[ball(2, 1), ball(5, 2)]).unwrap();
        assert_eq!((p.m_norm.clone(), p.ambient), (big(100), 9));
        assert_eq!(p.component_ranges(), vec![0..3, 3..8]);

        let p = build_problem(&[ball(2, 1)]).unwrap();
        assert_eq!((p.m_norm.clone(), p.ambient), (big(4), 4));

        assert!(build_problem(&[]).is_err());
    }

    #[test]
    fn b31_is_obstructed() {
        let r = check_obstruction(&build_problem(&[ball(3, 1)]).unwrap(), SearchLimits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert!(r.exhaustive && r.witnesses.is_empty());
    }

    #[test]
    fn b21_positive_control() {
        let r = check_obstruction(&build_problem(&[ball(2, 1)]).unwrap(), SearchLimits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotObstructed);
        assert!(r.witnesses.iter().all(|w| w.generator().iter().all(|x| x.abs() == 1)));
    }

    #[test]
    fn scale_factors() {
        assert_eq!(scale_factor(9, 1), Some(3));
        assert_eq!(scale_factor(100, 4), Some(5));
        assert_eq!(scale_factor(100, 8), None);
        assert_eq!(scale_factor(25, 25), Some(1));
    }

    #[test]
    fn cemb_weight_lists() {
        assert_eq!(cemb_weights(2).unwrap(), vec![3, 2, 2, 3, 2]);
        assert_eq!(cemb_weights(3).unwrap(), vec![3, 3, 2, 2, 3, 3, 2]);
        assert!(cemb_weights(1).is_err());
        assert!(lemma_cemb_report(2, 7, SearchLimits::default()).is_err());
    }

    #[test]
    fn inconclusive_under_tiny_budget() {
        let p = build_problem(&[ball(2, 1), ball(5, 2)]).unwrap();
        let r = check_obstruction(&p, SearchLimits::nodes(10)).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive(LimitKind::Nodes));
        assert!(!r.exhaustive);
    }
}
