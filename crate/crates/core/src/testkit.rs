//! Seeded random arrangements, independent oracles, and the property checks
//! that the suite and the acceptance tests run over them.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{LaurentMonomial, LaurentPoly, Rational};
use crate::arrangement::{Arrangement, EdgeAtInfinity, Line};
use crate::chambers::{ChamberSet, SignVector};
use crate::cohomology::{cohomology_dims, condition_cdo, main_theorem_verdict, MonodromyAssignment};
use crate::complex::{
    dense_edge_multiplicities, equal_up_to_sign, symbolic_det, Analysis,
};
use crate::error::{Error, Result};
use crate::flag::{choose_nth_generic_flag, decompose};

const GENERATOR_RETRIES: usize = 1_000;

/// Cyclotomic denominators used by the samplers; `ℚ(ζ_{2m})` stays of
/// degree at most 4.
pub const SAMPLE_DENOMINATORS: [u64; 4] = [3, 4, 5, 6];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n_range: (usize, usize),
    pub coeff_bound: i64,
    pub force_parallel_pairs: usize,
    pub force_triple_points: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            n_range: (3, 7),
            coeff_bound: 4,
            force_parallel_pairs: 0,
            force_triple_points: 0,
        }
    }
}

fn random_normal(rng: &mut ChaCha8Rng, bound: i64) -> (i64, i64) {
    loop {
        let a = rng.gen_range(-bound..=bound);
        let b = rng.gen_range(-bound..=bound);
        if a != 0 || b != 0 {
            return (a, b);
        }
    }
}

fn try_generate(cfg: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Option<Arrangement> {
    let bound = cfg.coeff_bound.max(1);
    let mut planted = 2 * cfg.force_parallel_pairs + 3 * cfg.force_triple_points;
    if cfg.force_parallel_pairs == 1 && cfg.force_triple_points == 0 {
        // a lone parallel pair needs a transversal to be essential
        planted += 1;
    }
    let (lo, hi) = cfg.n_range;
    let n = rng.gen_range(lo.max(2)..=hi.max(lo).max(2)).max(planted);
    let mut lines: Vec<Line> = Vec::with_capacity(n);
    for _ in 0..cfg.force_parallel_pairs {
        let (a, b) = random_normal(rng, bound);
        let c1 = rng.gen_range(-bound..=bound);
        let c2 = loop {
            let c = rng.gen_range(-bound..=bound);
            if c != c1 {
                break c;
            }
        };
        lines.push(Line::from_ints(a, b, c1)?);
        lines.push(Line::from_ints(a, b, c2)?);
    }
    for _ in 0..cfg.force_triple_points {
        let px = rng.gen_range(-bound..=bound);
        let py = rng.gen_range(-bound..=bound);
        for _ in 0..3 {
            let (a, b) = random_normal(rng, bound);
            lines.push(Line::from_ints(a, b, -(a * px + b * py))?);
        }
    }
    while lines.len() < n {
        let (a, b) = random_normal(rng, bound);
        let c = rng.gen_range(-bound..=bound);
        lines.push(Line::from_ints(a, b, c)?);
    }
    Arrangement::new(format!("random-{}", cfg.seed), lines).ok()
}

/// Deterministic in `cfg`; resamples until the lines are distinct and
/// the arrangement is essential with every planted feature intact.
pub fn random_arrangement(cfg: &GeneratorConfig) -> Result<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..GENERATOR_RETRIES {
        let Some(arr) = try_generate(cfg, &mut rng) else {
            continue;
        };
        let dense = arr.dense_edges();
        if dense.infinity_dense.len() >= cfg.force_parallel_pairs.min(1)
            && dense.affine_dense.len() >= cfg.force_triple_points.min(1)
        {
            return Ok(arr);
        }
    }
    Err(Error::GeneratorExhausted(GENERATOR_RETRIES))
}

fn meet(l: &Line, m: &Line) -> Option<(Rational, Rational)> {
    let r = |v: &num_bigint::BigInt| Rational::from_integer(v.clone());
    let det = r(l.a()) * r(m.b()) - r(l.b()) * r(m.a());
    if det.is_zero() {
        return None;
    }
    let x = (r(l.b()) * r(m.c()) - r(l.c()) * r(m.b())) / &det;
    let y = (r(l.c()) * r(m.a()) - r(l.a()) * r(m.c())) / &det;
    Some((x, y))
}

/// `(total, bounded)` chamber counts by inserting lines one at a time: the
/// `k`-th line is cut by the earlier ones into `1 + p_k` pieces, each of
/// which splits a chamber.
pub fn zaslavsky_oracle(arr: &Arrangement) -> (usize, usize) {
    let lines = arr.lines();
    let mut cuts = 0usize;
    for k in 0..lines.len() {
        let points: BTreeSet<(Rational, Rational)> =
            (0..k).filter_map(|j| meet(&lines[k], &lines[j])).collect();
        cuts += points.len();
    }
    let n = lines.len();
    (1 + n + cuts, (1 + cuts).saturating_sub(n))
}

/// Sign vectors observed at pseudo-random rational points off the lines.
pub fn sample_points_oracle(arr: &Arrangement, count: usize, seed: u64) -> BTreeSet<SignVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reach: i64 = 4 * (arr.coordinate_bound().ceil().to_integer().try_into().unwrap_or(1000i64) + 2);
    let mut seen = BTreeSet::new();
    for _ in 0..count {
        let d: i64 = rng.gen_range(1..=12);
        let x = Rational::new(rng.gen_range(-reach * d..=reach * d).into(), d.into());
        let y = Rational::new(rng.gen_range(-reach * d..=reach * d).into(), d.into());
        if let Some(s) = SignVector::of_point(arr, &x, &y) {
            seen.insert(s);
        }
    }
    seen
}

pub fn random_assignment(rng: &mut ChaCha8Rng, n: usize) -> MonodromyAssignment {
    let m = SAMPLE_DENOMINATORS[rng.gen_range(0..SAMPLE_DENOMINATORS.len())];
    let k = (0..n).map(|_| rng.gen_range(0..m as i64)).collect();
    MonodromyAssignment::new(m, k).expect("positive m")
}

/// Random assignments satisfying the condition on dense edges at infinity.
pub fn cdo_assignments(arr: &Arrangement, count: usize, seed: u64) -> Vec<MonodromyAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let l = random_assignment(&mut rng, arr.len());
        if condition_cdo(arr, &l) {
            out.push(l);
        }
    }
    out
}

/// Adjusts one exponent so that `q_X = 1`.
pub fn plant_violation(arr: &Arrangement, l: &MonodromyAssignment, x: &EdgeAtInfinity) -> MonodromyAssignment {
    let members: BTreeSet<usize> = match x {
        EdgeAtInfinity::WholeLineAtInfinity => BTreeSet::new(),
        EdgeAtInfinity::Point(p) => p.members.clone(),
    };
    // q_X = ∏_{i ∉ members} q_i^{-1}; zero that exponent sum through the
    // last line outside the class
    let free = (0..arr.len()).rev().find(|i| !members.contains(i)).expect("essential");
    let mut k = l.k().to_vec();
    let rest: i64 = (0..arr.len()).filter(|&i| i != free && !members.contains(&i)).map(|i| k[i]).sum();
    k[free] = (-rest).rem_euclid(l.m() as i64);
    MonodromyAssignment::new(l.m(), k).expect("positive m")
}

/// `count` assignments: one planted violation for each dense edge at
/// infinity in turn, then random ones.
pub fn mixed_assignments(arr: &Arrangement, count: usize, seed: u64) -> Vec<MonodromyAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = arr.dense_edges().at_infinity();
    let mut out = Vec::with_capacity(count);
    for x in edges.iter().cycle().take(count.min(2 * edges.len())) {
        let base = random_assignment(&mut rng, arr.len());
        out.push(plant_violation(arr, &base, x));
    }
    while out.len() < count {
        out.push(random_assignment(&mut rng, arr.len()));
    }
    out
}

/// A deterministic mixture of plain, parallel-pair and triple-point cases.
pub fn suite_config(seed: u64, case: usize, n_max: usize) -> GeneratorConfig {
    let pairs = case % 3;
    let triples = (case / 3) % 2;
    let pairs = if 2 * pairs + 3 * triples > n_max { 1 } else { pairs };
    GeneratorConfig {
        seed: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(case as u64),
        n_range: (3, n_max),
        coeff_bound: 4,
        force_parallel_pairs: pairs,
        force_triple_points: triples,
    }
}

pub fn suite_arrangements(seed: u64, cases: usize, n_max: usize) -> Result<Vec<Arrangement>> {
    (0..cases)
        .map(|i| random_arrangement(&suite_config(seed, i, n_max)))
        .collect()
}

pub type Check = std::result::Result<(), String>;

fn fail<T: std::fmt::Display>(what: T) -> Check {
    Err(what.to_string())
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Chamber counts against the intersection-data oracle.
pub fn check_zaslavsky(a: &Analysis) -> Check {
    let (total, bounded) = zaslavsky_oracle(&a.arrangement);
    ensure(
        total == a.chambers.len() && bounded == a.chambers.bounded_count(),
        || {
            format!(
                "oracle ({total}, {bounded}) vs enumeration ({}, {})",
                a.chambers.len(),
                a.chambers.bounded_count()
            )
        },
    )
}

/// Level sizes equal the Betti numbers, `ι` pairs `bch^{q−1}` with `uch^q`,
/// and `bch²` is exactly the set of bounded chambers.
pub fn check_counts(a: &Analysis) -> Check {
    let dec = &a.decomposition;
    let ch = &a.chambers;
    ensure(dec.counts() == a.arrangement.betti_numbers(), || {
        format!("level sizes {:?} vs Betti {:?}", dec.counts(), a.arrangement.betti_numbers())
    })?;
    ensure(dec.uch1 == vec![lift(ch.opposite(dec.c0))?], || "uch1 is not the opposite of C0".into())?;
    let images: Vec<usize> = lift(dec.bch1.iter().map(|&c| ch.opposite(c)).collect())?;
    let images_set: BTreeSet<usize> = images.iter().copied().collect();
    let uch2: BTreeSet<usize> = dec.uch2.iter().copied().collect();
    ensure(images_set.len() == images.len() && images_set == uch2, || {
        "opposite map bch1 -> uch2 is not a bijection".into()
    })?;
    let bounded: Vec<usize> = (0..ch.len()).filter(|&c| ch.get(c).is_bounded()).collect();
    ensure(dec.bch2 == bounded, || "bch2 differs from the bounded chambers".into())?;
    for &c in ch.unbounded().collect::<Vec<_>>().iter() {
        let o = lift(ch.opposite(c))?;
        ensure(lift(ch.opposite(o))? == c, || format!("opposite is not an involution at {c}"))?;
    }
    Ok(())
}

pub fn check_sampled_signs(a: &Analysis, count: usize, seed: u64) -> Check {
    let observed = sample_points_oracle(&a.arrangement, count, seed);
    match observed.iter().find(|s| a.chambers.index_of(s).is_none()) {
        Some(s) => fail(format!("sampled sign vector {s} was not enumerated")),
        None => Ok(()),
    }
}

pub fn check_cochain(a: &Analysis) -> Check {
    ensure(a.matrices.is_complex(), || "d0 * d1 is not zero".into())
}

fn opposite_sign_rule(a: &Analysis, ch: &ChamberSet) -> Check {
    let nvars = a.arrangement.len();
    for &c in &a.decomposition.bch1 {
        let opp = lift(ch.opposite(c))?;
        let entry = a.matrices.entry(c, opp).ok_or("opposite not in ch2")?;
        let sep = lift(ch.sep(c, opp))?;
        let walls = lift(a.decomposition.walls(c))?;
        let parallel = a.arrangement.lines()[walls[0]].is_parallel(&a.arrangement.lines()[walls[1]]);
        let t = LaurentPoly::twist(&LaurentMonomial::product_of(nvars, sep));
        let want = if parallel { -&t } else { t };
        ensure(*entry == want, || format!("sign rule fails at chamber {c}"))?;
        let x = lift(ch.x_of(c))?;
        let qx = LaurentPoly::twist(&a.arrangement.q_half_monomial(x));
        ensure(equal_up_to_sign(entry, &qx), || {
            format!("coefficient of the opposite of {c} is not the twist of q_X(C)")
        })?;
    }
    Ok(())
}

/// Determinant of the reduced map against the edge-at-infinity product,
/// with the structural facts its factorization rests on.
pub fn check_determinant(a: &Analysis) -> Check {
    let reduced = lift(a.reduced())?;
    lift(reduced.check_structure())?;
    opposite_sign_rule(a, &a.chambers)?;
    let mult = lift(dense_edge_multiplicities(&a.chambers, &a.decomposition))?;
    let dense: BTreeSet<EdgeAtInfinity> = a.arrangement.dense_edges().at_infinity().into_iter().collect();
    let seen: BTreeSet<EdgeAtInfinity> = mult.keys().cloned().collect();
    ensure(seen == dense, || "X(C) over bch1 does not run through the dense edges at infinity".into())?;
    let det = lift(symbolic_det(&reduced))?;
    let predicted = lift(a.predicted_det())?;
    ensure(equal_up_to_sign(&det, &predicted), || format!("det {det} vs predicted {predicted}"))
}

/// Level sizes and cohomology agree for the second valid flag.
pub fn check_flag_independence(a: &Analysis, l: &MonodromyAssignment) -> Check {
    let flag = lift(choose_nth_generic_flag(&a.arrangement, 1))?;
    let dec = lift(decompose(&a.arrangement, &a.chambers, &flag))?;
    ensure(dec.counts() == a.decomposition.counts() && dec.bch2.len() == a.decomposition.bch2.len(), || {
        "level sizes depend on the flag".into()
    })?;
    let other = lift(Analysis::with_flag(a.arrangement.clone(), flag))?;
    let (x, y) = (lift(cohomology_dims(a, l, true))?, lift(cohomology_dims(&other, l, true))?);
    ensure(x.dims() == y.dims(), || format!("cohomology {:?} vs {:?} across flags", x.dims(), y.dims()))
}

/// Generic vanishing: at any assignment with `q_X ≠ 1` on the dense edges at
/// infinity, cohomology is concentrated in degree 2 with dimension `|χ|`.
pub fn check_vanishing(a: &Analysis, l: &MonodromyAssignment) -> Check {
    let r = lift(cohomology_dims(a, l, true))?;
    ensure(r.euler_check && r.betti_bound_check, || format!("Euler or Betti bound fails at {l}"))?;
    if r.cdo_holds {
        let chi = a.arrangement.euler_characteristic().unsigned_abs() as usize;
        ensure(r.dims() == (0, 0, chi), || format!("{:?} at {l} with the condition at infinity", r.dims()))?;
    }
    if r.dt_holds {
        ensure(r.bounded_basis_holds && r.h2 == a.chambers.bounded_count(), || {
            format!("bounded chambers do not form a basis at {l}")
        })?;
    }
    Ok(())
}

/// The three verdicts agree for indecomposable arrangements; otherwise the
/// forward implications hold.
pub fn check_equivalence(a: &Analysis, l: &MonodromyAssignment) -> Check {
    let r = lift(cohomology_dims(a, l, true))?;
    let v = main_theorem_verdict(a, &r);
    ensure(v.passes(), || format!("verdicts {v:?} at {l}"))
}

pub fn check_trivial(a: &Analysis) -> Check {
    let r = lift(cohomology_dims(a, &MonodromyAssignment::trivial(a.arrangement.len()), true))?;
    ensure(r.dims() == a.arrangement.betti_numbers(), || {
        format!("trivial system gives {:?}", r.dims())
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PropertyOutcome {
    pub checked: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl PropertyOutcome {
    pub fn record(&mut self, label: &str, outcome: Check) {
        self.checked += 1;
        if let Err(e) = outcome {
            self.failed += 1;
            self.first_failure.get_or_insert_with(|| format!("{label}: {e}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    pub properties: BTreeMap<String, PropertyOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub cases: usize,
    pub n_max: usize,
    pub assignments: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 2024,
            cases: 50,
            n_max: 7,
            assignments: 10,
        }
    }
}

/// Runs every property over seeded random arrangements.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteSummary> {
    let mut props: BTreeMap<String, PropertyOutcome> = BTreeMap::new();
    let mut record = |name: &str, label: &str, c: Check| {
        props.entry(name.to_string()).or_default().record(label, c);
    };
    for (i, arr) in suite_arrangements(cfg.seed, cfg.cases, cfg.n_max)?.into_iter().enumerate() {
        let label = format!("case {i}");
        let a = match Analysis::new(arr) {
            Ok(a) => a,
            Err(e) => {
                record("pipeline", &label, fail(e));
                continue;
            }
        };
        record("pipeline", &label, Ok(()));
        record("zaslavsky", &label, check_zaslavsky(&a));
        record("sampled_signs", &label, check_sampled_signs(&a, 2_000, cfg.seed ^ i as u64));
        record("counts", &label, check_counts(&a));
        record("cochain", &label, check_cochain(&a));
        record("determinant", &label, check_determinant(&a));
        record("trivial_system", &label, check_trivial(&a));
        let seed = cfg.seed.wrapping_add(i as u64);
        let cdo = cdo_assignments(&a.arrangement, cfg.assignments, seed);
        record("flag_independence", &label, check_flag_independence(&a, &cdo[0]));
        for l in &cdo {
            record("vanishing", &label, check_vanishing(&a, l));
        }
        for l in mixed_assignments(&a.arrangement, cfg.assignments, seed) {
            record("equivalence", &label, check_equivalence(&a, &l));
        }
    }
    let passed = props.values().all(PropertyOutcome::passed);
    Ok(SuiteSummary {
        seed: cfg.seed,
        cases: cfg.cases,
        passed,
        properties: props,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chambers::enumerate_chambers;
    use crate::fixtures;

    #[test]
    fn zaslavsky_on_fixtures() {
        assert_eq!(zaslavsky_oracle(&fixtures::x4()), (9, 1));
        assert_eq!(zaslavsky_oracle(&fixtures::b4()), (9, 1));
        assert_eq!(zaslavsky_oracle(&fixtures::triangle()), (7, 1));
    }

    #[test]
    fn generator_is_deterministic_and_plants() {
        let cfg = GeneratorConfig {
            seed: 7,
            n_range: (5, 5),
            force_parallel_pairs: 1,
            force_triple_points: 1,
            ..GeneratorConfig::default()
        };
        let a = random_arrangement(&cfg).unwrap();
        assert_eq!(a, random_arrangement(&cfg).unwrap());
        assert_eq!(a.len(), 5);
        let dense = a.dense_edges();
        assert!(!dense.infinity_dense.is_empty());
        assert!(!dense.affine_dense.is_empty());
    }

    #[test]
    fn sampling_saturates_x4() {
        let arr = fixtures::x4();
        let all: BTreeSet<SignVector> = enumerate_chambers(&arr)
            .unwrap()
            .chambers()
            .iter()
            .map(|c| c.sign.clone())
            .collect();
        assert_eq!(sample_points_oracle(&arr, 10_000, 1), all);
        assert!(sample_points_oracle(&arr, 1, 1).len() <= 1);
    }

    #[test]
    fn planted_violations_hit_their_edge() {
        let arr = fixtures::b4();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for x in arr.dense_edges().at_infinity() {
            let l = plant_violation(&arr, &random_assignment(&mut rng, 4), &x);
            assert!(l.q_at_infinity_is_one(&x), "{}", x.label());
        }
    }

    #[test]
    fn small_suite_passes() {
        let s = run_suite(&SuiteConfig {
            cases: 6,
            assignments: 4,
            ..SuiteConfig::default()
        })
        .unwrap();
        assert!(s.passed, "{:#?}", s.properties);
    }
}
