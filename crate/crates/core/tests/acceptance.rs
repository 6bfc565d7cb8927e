//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chambercoh::arith::{LaurentMonomial, LaurentPoly};
use chambercoh::chambers::{Sign, SignVector};
use chambercoh::cohomology::{check_main_theorem, cohomology_dims, condition_cdo, condition_dt, MonodromyAssignment};
use chambercoh::complex::{equal_up_to_sign, Analysis};
use chambercoh::fixtures;
use chambercoh::parse_arrangement;
use chambercoh::testkit::{
    cdo_assignments, check_cochain, check_counts, check_determinant, check_equivalence, check_trivial,
    check_vanishing, check_zaslavsky, mixed_assignments, random_arrangement, suite_arrangements, Check,
    GeneratorConfig,
};

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

const SUITE_SEED: u64 = 20_240_611;
const SUITE_CASES: usize = 200;
const SUITE_N_MAX: usize = 7;
const ASSIGNMENTS_PER_CASE: usize = 50;
const B4_TABLE_BUDGET: Duration = Duration::from_secs(1);
const DETERMINANT_BUDGET: Duration = Duration::from_secs(300);
const PIPELINE_N: usize = 10;
const PIPELINE_BUDGET: Duration = Duration::from_secs(10);

fn idx(a: &Analysis, s: &str) -> usize {
    let sign = SignVector(s.chars().map(|c| if c == '+' { Sign::Plus } else { Sign::Minus }).collect());
    a.chambers.index_of(&sign).expect("chamber exists")
}

fn tw(n: usize, lines: &[usize]) -> LaurentPoly {
    LaurentPoly::twist(&LaurentMonomial::product_of(n, lines.iter().map(|i| i - 1)))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn over_suite(suite: &[Analysis], mut f: impl FnMut(usize, &Analysis) -> Check) -> Check {
    for (i, a) in suite.iter().enumerate() {
        f(i, a).map_err(|e| format!("case {i}: {e}"))?;
    }
    Ok(())
}

fn b4_table() -> Check {
    let start = Instant::now();
    let a = Analysis::new(fixtures::b4()).map_err(|e| e.to_string())?;
    let d = &a.decomposition;
    ensure(d.counts() == (1, 4, 4), format!("ch sizes {:?}", d.counts()))?;
    ensure((d.bch1.len(), d.bch2.len()) == (3, 1), "bch sizes")?;
    ensure((d.uch1.len(), d.uch2.len()) == (1, 3), "uch sizes")?;
    let c0v = a.chambers.opposite(d.c0).map_err(|e| e.to_string())?;
    ensure(d.uch1 == vec![c0v], "uch1 is not the opposite of C0")?;
    let opp: BTreeSet<usize> = d.bch1.iter().map(|&c| a.chambers.opposite(c).unwrap()).collect();
    ensure(opp == d.uch2.iter().copied().collect(), "uch2 is not the opposite of bch1")?;
    ensure(a.chambers.get(d.bch2[0]).is_bounded(), "bch2 chamber is unbounded")?;
    ensure(start.elapsed() < B4_TABLE_BUDGET, format!("took {:?}", start.elapsed()))
}

fn x4_matrices() -> Check {
    let a = Analysis::new(fixtures::x4()).map_err(|e| e.to_string())?;
    ensure(
        a.matrices.d0 == vec![tw(4, &[1]), tw(4, &[1, 2]), tw(4, &[1, 2, 3]), tw(4, &[1, 2, 3, 4])],
        "d0 row",
    )?;
    let [c1, c2, c3, c0v, c1v, c2v, c3v, d] =
        ["+---", "++--", "+++-", "++++", "-+++", "-+-+", "---+", "-+--"].map(|s| idx(&a, s));
    ensure(a.matrices.rows == vec![c1, c2, c3, c0v], "ch1 order")?;
    let z = LaurentPoly::zero(4);
    let rows = [
        (c1, [tw(4, &[1, 2, 3, 4]), tw(4, &[1, 2, 4]), z.clone(), tw(4, &[1, 2])]),
        (c2, [z.clone(), -&tw(4, &[1, 4]), z.clone(), -&tw(4, &[1])]),
        (c3, [z.clone(), tw(4, &[1, 3, 4]), tw(4, &[1, 2, 3, 4]), z.clone()]),
        (c0v, [-&tw(4, &[1]), -&tw(4, &[1, 3]), -&tw(4, &[1, 2, 3]), z.clone()]),
    ];
    for (row, want) in rows {
        for (col, e) in [c1v, c2v, c3v, d].into_iter().zip(want) {
            ensure(a.matrices.entry(row, col) == Some(&e), format!("entry ({row}, {col})"))?;
        }
    }
    // each underlined diagonal coefficient is ±(q_X(C)^{1/2} − q_X(C)^{−1/2})
    for c in [c1, c2, c3] {
        let x = a.chambers.x_of(c).map_err(|e| e.to_string())?;
        let qx = LaurentPoly::twist(&a.arrangement.q_half_monomial(x));
        let opp = a.chambers.opposite(c).map_err(|e| e.to_string())?;
        ensure(equal_up_to_sign(a.matrices.entry(c, opp).unwrap(), &qx), format!("diagonal at {c}"))?;
    }
    Ok(())
}

fn determinants(fixed: &[Analysis], suite: &[Analysis]) -> Check {
    let start = Instant::now();
    for a in fixed {
        check_determinant(a).map_err(|e| format!("{}: {e}", a.arrangement.name()))?;
    }
    over_suite(suite, |_, a| check_determinant(a))?;
    ensure(start.elapsed() < DETERMINANT_BUDGET, format!("took {:?}", start.elapsed()))
}

fn decomposable_counterexample() -> Check {
    let a = Analysis::new(fixtures::b4()).map_err(|e| e.to_string())?;
    let l = MonodromyAssignment::new(5, vec![1, 2, 3, 4]).unwrap();
    let (r, v) = check_main_theorem(&a, &l).map_err(|e| e.to_string())?;
    ensure(r.rank_to_uch2 == 3, format!("rank {}", r.rank_to_uch2))?;
    ensure(r.h2 == 1 && r.bounded_basis_holds, "H2 not spanned by the bounded chamber")?;
    ensure(!v.i && v.iii && !r.indecomposable, format!("verdicts {v:?}"))
}

fn vanishing(suite: &[Analysis]) -> Check {
    over_suite(suite, |i, a| {
        for l in cdo_assignments(&a.arrangement, ASSIGNMENTS_PER_CASE, SUITE_SEED + i as u64) {
            check_vanishing(a, &l)?;
        }
        Ok(())
    })
}

fn equivalence(suite: &[Analysis]) -> Check {
    let (mut indecomposable, mut held, mut failed) = (0, 0, 0);
    over_suite(suite, |i, a| {
        if !a.is_indecomposable().map_err(|e| e.to_string())? {
            return Ok(());
        }
        indecomposable += 1;
        for l in mixed_assignments(&a.arrangement, ASSIGNMENTS_PER_CASE, SUITE_SEED ^ i as u64) {
            check_equivalence(a, &l)?;
            if condition_cdo(&a.arrangement, &l) {
                held += 1;
            } else {
                failed += 1;
            }
        }
        Ok(())
    })?;
    println!("    {indecomposable} indecomposable cases, (i) true {held} times, false {failed} times");
    ensure(indecomposable > 0 && held > 0 && failed > 0, "equivalence exercised one-sidedly")
}

fn refinement_regime() -> Check {
    let a = Analysis::new(fixtures::x4()).map_err(|e| e.to_string())?;
    let l = MonodromyAssignment::new(5, vec![1, 1, 1, 3]).unwrap();
    ensure(condition_cdo(&a.arrangement, &l), "condition at infinity fails")?;
    ensure(!condition_dt(&a.arrangement, &l, false), "triple point is not trivial")?;
    let r = cohomology_dims(&a, &l, true).map_err(|e| e.to_string())?;
    ensure(r.dims() == (0, 0, 1) && r.bounded_basis_holds, format!("{:?}", r.dims()))
}

fn pipeline() -> Check {
    let cfg = GeneratorConfig {
        seed: SUITE_SEED,
        n_range: (PIPELINE_N, PIPELINE_N),
        coeff_bound: 6,
        force_parallel_pairs: 1,
        force_triple_points: 1,
    };
    let text = random_arrangement(&cfg).map_err(|e| e.to_string())?.to_arr_text();
    let start = Instant::now();
    let arr = parse_arrangement("n10", &text).map_err(|e| e.to_string())?;
    let a = Analysis::new(arr).map_err(|e| e.to_string())?;
    let l = cdo_assignments(&a.arrangement, 1, SUITE_SEED).remove(0);
    let r = cohomology_dims(&a, &l, true).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(a.arrangement.len() == PIPELINE_N, "wrong size")?;
    ensure(r.euler_check, "Euler identity")?;
    ensure(took < PIPELINE_BUDGET, format!("took {took:?}"))
}

fn main() -> ExitCode {
    let arrangements = suite_arrangements(SUITE_SEED, SUITE_CASES, SUITE_N_MAX).expect("suite generates");
    let suite: Vec<Analysis> = arrangements
        .into_iter()
        .map(|arr| Analysis::new(arr).expect("pipeline runs"))
        .collect();
    let fixed: Vec<Analysis> = [fixtures::x4(), fixtures::b4(), fixtures::triangle()]
        .into_iter()
        .map(|arr| Analysis::new(arr).unwrap())
        .collect();

    let criteria: Vec<Criterion> = vec![
        ("B4 decomposition table (1,4,4), bch (1,3,1), uch (0,1,3)", Box::new(b4_table)),
        ("X4 d0 and d1 entrywise, diagonal coefficients", Box::new(x4_matrices)),
        ("det = +-predicted on fixtures and 200 random cases", Box::new(|| determinants(&fixed, &suite))),
        ("d0 * d1 = 0 on 200 random cases", Box::new(|| over_suite(&suite, |_, a| check_cochain(a)))),
        (
            "level sizes = Betti numbers, opposite-chamber bijections, chamber counts",
            Box::new(|| over_suite(&suite, |_, a| check_counts(a).and_then(|_| check_zaslavsky(a)))),
        ),
        ("B4 counterexample: rank 3, H2 bounded, (i) false", Box::new(decomposable_counterexample)),
        ("condition at infinity => (0,0,|chi|), 50 assignments per case", Box::new(|| vanishing(&suite))),
        ("(i) <=> (ii) <=> (iii) for indecomposable cases", Box::new(|| equivalence(&suite))),
        ("X4 trivial triple point, nontrivial at infinity => (0,0,1)", Box::new(refinement_regime)),
        ("trivial local system gives Betti numbers", Box::new(|| over_suite(&suite, |_, a| check_trivial(a)))),
        ("n = 10 full pipeline under 10 s", Box::new(pipeline)),
    ];

    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name}  ({took:.2?})", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name}  ({took:.2?}): {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
