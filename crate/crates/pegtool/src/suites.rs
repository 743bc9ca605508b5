//! Named verification suites. Every numbered criterion belongs to exactly
//! one suite; `all` runs every suite in order.
//!
//! A check returns a pass flag and a JSON detail object. Checks are
//! deterministic for a given seed and budget; timings are recorded
//! separately so they can be left out of machine-readable output.

use std::cmp::Ordering;
use std::time::Instant;

use peg_core::engine::{
    apply_move_multi, legal_moves, reach_set, reach_target_exhaustive, reach_target_tree_directed,
    witness_search, Distribution, Mode, SearchBudget,
};
use peg_core::graph::{
    all_pairs_distances, build_family, diameter_and_longest_path, generate, leaves, FamilySpec, Graph,
};
use peg_core::solvers::{
    binomial, coverage, fibonacci_distribution, fibonacci_min_branching, lobster_distribution,
    optimal_pegging_number, peg_probability, pegging_number, unrank, verify_pegs, Coverage, PegVerdict,
};
use peg_core::weights::binary::{
    binary_adversarial_distribution, binary_level_ranking, binary_level_ratio, binary_root_weight_closed,
    binary_summed_weight_closed, binary_summed_weights_by_level, binary_top_levels_weight,
};
use peg_core::weights::{distribution_weight, omega_pow, optimal_lower_bound, summed_weight, GoldenNumber};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// A published claim reproduced by computation.
    Claim,
    /// Follows directly from the definitions.
    Trivial,
    /// Computed by an independent oracle in this code base.
    Derived,
}

#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub budget: SearchBudget,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context {
            budget: SearchBudget::default(),
            seed: 2024,
        }
    }
}

pub struct Outcome {
    pub passed: bool,
    pub detail: Value,
}

type CheckFn = fn(&Context) -> peg_core::Result<Outcome>;

pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub basis: Basis,
    pub run: CheckFn,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub criterion: u8,
    pub name: &'static str,
    pub basis: Basis,
    pub passed: bool,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub tool_version: &'static str,
    pub seed: u64,
    pub budget: SearchBudget,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}` (available: {list})", list = suite_names().join(", "))]
pub struct UnknownSuite(pub String);

/// Suite name and the criteria it covers.
pub const SUITES: &[(&str, &[u8])] = &[
    ("paths", &[1]),
    ("stars", &[2]),
    ("caterpillars", &[3]),
    ("lobsters", &[4]),
    ("fibonacci", &[5]),
    ("weights", &[6, 10]),
    ("equivalence", &[7, 8]),
    ("monotonicity", &[9]),
    ("binary", &[11, 12]),
    ("probability", &[13]),
];

pub const CRITERIA: std::ops::RangeInclusive<u8> = 1..=13;

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).chain(["all"]).collect()
}

pub fn suite_of(criterion: u8) -> Option<&'static str> {
    SUITES
        .iter()
        .find(|(_, cs)| cs.contains(&criterion))
        .map(|(n, _)| *n)
}

pub fn checks() -> Vec<Check> {
    use Basis::*;
    let c = |criterion, name, basis, run: CheckFn| Check {
        criterion,
        name,
        basis,
        run,
    };
    vec![
        c(1, "path optimal pegging numbers", Claim, path_formula),
        c(2, "star pegging numbers", Claim, star_formulas),
        c(3, "random caterpillar optimal pegging numbers", Claim, caterpillar_formula),
        c(4, "three pegs never peg the star-core lobster", Claim, lobster_counterexample),
        c(4, "interior of a longest path pegs a lobster", Claim, lobster_construction),
        c(5, "Fibonacci distribution sizes", Claim, fibonacci_sizes),
        c(5, "Fibonacci distributions peg finite trees", Derived, fibonacci_pegs),
        c(6, "golden power reduction", Trivial, omega_powers),
        c(6, "weight never increases along random move sequences", Claim, weight_monotonicity),
        c(6, "every reachable target has weight at least one", Claim, reach_implies_weight),
        c(7, "proper, stacking and peggling reach agree", Claim, mode_equivalence),
        c(8, "moves toward the target suffice on trees", Claim, toward_target),
        c(9, "deleting a leaf never raises the pegging number", Claim, subtree_monotonicity),
        c(10, "binary tree closed forms equal brute force", Derived, binary_closed_forms),
        c(10, "binary level ranking and ratios", Claim, binary_ranking),
        c(11, "adversarial weight certificate", Claim, adversarial_certificate),
        c(12, "greedy lower bound on binary trees", Claim, binary_lower_bound),
        c(12, "full T_5 reaches four steps down a pendant path", Claim, pendant_path_reach),
        c(13, "star pegging probabilities", Derived, star_probabilities),
    ]
}

fn run_checks(suite: &str, selected: impl Iterator<Item = Check>, ctx: &Context) -> Vec<CheckResult> {
    selected
        .map(|check| {
            let clock = Instant::now();
            let (passed, detail) = match (check.run)(ctx) {
                Ok(o) => (o.passed, o.detail),
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            CheckResult {
                suite: suite.to_string(),
                criterion: check.criterion,
                name: check.name,
                basis: check.basis,
                passed,
                detail,
                millis: Some(clock.elapsed().as_millis() as u64),
            }
        })
        .collect()
}

pub fn run_criterion(criterion: u8, ctx: &Context) -> Vec<CheckResult> {
    let suite = suite_of(criterion).unwrap_or("none");
    run_checks(suite, checks().into_iter().filter(|c| c.criterion == criterion), ctx)
}

pub fn run_suite(name: &str, ctx: &Context) -> Result<SuiteReport, UnknownSuite> {
    let results = if name == "all" {
        SUITES
            .iter()
            .flat_map(|(suite, criteria)| {
                run_checks(suite, checks().into_iter().filter(|c| criteria.contains(&c.criterion)), ctx)
            })
            .collect()
    } else {
        let (_, criteria) = SUITES
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| UnknownSuite(name.to_string()))?;
        run_checks(name, checks().into_iter().filter(|c| criteria.contains(&c.criterion)), ctx)
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        tool_version: peg_core::VERSION,
        seed: ctx.seed,
        budget: ctx.budget,
        results,
    })
}

fn family(spec: FamilySpec) -> peg_core::Result<Graph> {
    build_family(&spec)
}

fn outcome(passed: bool, detail: Value) -> peg_core::Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn path_formula(ctx: &Context) -> peg_core::Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    for n in 3..=9 {
        let got = optimal_pegging_number(&family(FamilySpec::Path(n))?, ctx.budget)?.value;
        let want = n.div_ceil(2);
        passed &= got == Some(want);
        rows.push(json!({ "n": n, "p": got, "expected": want }));
    }
    outcome(passed, json!({ "paths": rows }))
}

fn star_formulas(ctx: &Context) -> peg_core::Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    for n in 3..=7 {
        let g = family(FamilySpec::Star(n))?;
        let p = optimal_pegging_number(&g, ctx.budget)?.value;
        let big = pegging_number(&g, ctx.budget)?.value;
        passed &= p == Some(2) && big == Some(n);
        rows.push(json!({ "n": n, "p": p, "P": big }));
    }
    outcome(passed, json!({ "stars": rows }))
}

fn caterpillar_formula(ctx: &Context) -> peg_core::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut rows = Vec::new();
    let mut passed = true;
    while rows.len() < 24 {
        let spec = generate::random_caterpillar_spec(13, &mut rng);
        let g = build_family(&spec)?;
        let (d, _) = diameter_and_longest_path(&g);
        if d < 2 {
            continue;
        }
        let got = optimal_pegging_number(&g, ctx.budget)?.value;
        let want = (d + 1).div_ceil(2);
        passed &= got == Some(want);
        rows.push(json!({ "spec": spec.to_string(), "n": g.vertex_count(), "d": d, "p": got, "expected": want }));
    }
    outcome(passed, json!({ "caterpillars": rows }))
}

fn lobster_counterexample(ctx: &Context) -> peg_core::Result<Outcome> {
    let g = family(FamilySpec::Lobster(vec![vec![1, 1, 1, 1]]))?;
    let (d, _) = diameter_and_longest_path(&g);
    let n = g.vertex_count();
    let total = binomial(n, 3).unwrap_or(0);
    let (mut misses, mut pegs, mut unknown) = (0, 0, 0);
    for r in 0..total {
        match coverage(&g, &Distribution::from_vertices(unrank(n, 3, r)), ctx.budget)?.0 {
            Coverage::Pegs => pegs += 1,
            Coverage::Misses(_) => misses += 1,
            Coverage::Unknown(_) => unknown += 1,
        }
    }
    outcome(
        n == 9 && d == 4 && total == 84 && misses == 84,
        json!({ "vertices": n, "diameter": d, "distributions": total, "fail": misses, "peg": pegs, "unknown": unknown }),
    )
}

/// Sample lobsters of diameter five and six.
pub fn sample_lobsters() -> Vec<FamilySpec> {
    vec![
        FamilySpec::Lobster(vec![vec![0], vec![1], vec![0], vec![0]]),
        FamilySpec::Lobster(vec![vec![1], vec![2, 0], vec![1]]),
        FamilySpec::Lobster(vec![vec![2], vec![1, 1], vec![], vec![1]]),
        FamilySpec::Lobster(vec![vec![1], vec![0, 2], vec![1, 0], vec![1]]),
    ]
}

fn lobster_construction(ctx: &Context) -> peg_core::Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut diameters = Vec::new();
    for spec in sample_lobsters() {
        let g = build_family(&spec)?;
        let (d, _) = diameter_and_longest_path(&g);
        let dist = lobster_distribution(&g)?;
        let report = verify_pegs(&g, &dist, ctx.budget)?;
        let ok = dist.len() == d - 1 && report.verdict == PegVerdict::Pegs;
        passed &= ok;
        diameters.push(d);
        rows.push(json!({ "spec": spec.to_string(), "d": d, "pegs": dist.to_vec(), "verdict": report.verdict }));
    }
    passed &= diameters.contains(&5) && diameters.contains(&6);
    outcome(passed, json!({ "lobsters": rows }))
}

fn fibonacci_sizes(_: &Context) -> peg_core::Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    let (mut a, mut b) = (0u64, 1u64);
    let mut fib = vec![0u64];
    for _ in 0..12 {
        (a, b) = (b, a + b);
        fib.push(a);
    }
    for h in 0..=6 {
        let branching = fibonacci_min_branching(h) as usize;
        let size = fibonacci_distribution(branching, h)?.len() as u64;
        let want = fib[h + 3] - 1;
        passed &= size == want;
        rows.push(json!({ "h": h, "b": branching, "size": size, "expected": want }));
    }
    outcome(passed, json!({ "sizes": rows }))
}

fn fibonacci_pegs(ctx: &Context) -> peg_core::Result<Outcome> {
    let small = family(FamilySpec::Ary { branching: 3, height: 2 })?;
    let d = fibonacci_distribution(3, 2)?;
    let exhaustive = reach_set(&small, &d, Mode::Proper, ctx.budget)?;
    let small_ok = exhaustive.complete && exhaustive.all_reachable();
    // Reported only: nothing says which finite branching attains the bound.
    let exact_p = optimal_pegging_number(&small, ctx.budget)?.value;
    let big = family(FamilySpec::Ary { branching: 6, height: 3 })?;
    let d6 = fibonacci_distribution(6, 3)?;
    let report = verify_pegs(&big, &d6, ctx.budget)?;
    outcome(
        small_ok && report.verdict == PegVerdict::Pegs,
        json!({
            "ary:3,2": { "pegs": d.to_vec(), "exact_p": exact_p, "complete": exhaustive.complete, "all_reachable": exhaustive.all_reachable() },
            "ary:6,3": { "pegs": d6.len(), "verdict": report.verdict },
        }),
    )
}

fn omega_powers(_: &Context) -> peg_core::Result<Outcome> {
    let omega = GoldenNumber::omega();
    let mut passed = &omega * &omega == &GoldenNumber::from_integers(1, 0) - &omega;
    let mut power = GoldenNumber::from_integers(1, 0);
    for k in 0..=200 {
        passed &= power == omega_pow(k);
        power = &power * &omega;
    }
    for m in 0..=64 {
        for n in 0..=64 {
            passed &= &omega_pow(m) * &omega_pow(n) == omega_pow(m + n);
        }
    }
    let float = (0..=40).all(|k| {
        let exact = omega_pow(k).to_f64();
        (exact - 0.618_033_988_749_894_8f64.powi(k as i32)).abs() <= 1e-12 * exact.max(1e-300) + 1e-15
    });
    outcome(passed && float, json!({ "checked_powers": 200, "product_pairs": 65 * 65, "float_hints": float }))
}

fn weight_monotonicity(ctx: &Context) -> peg_core::Result<Outcome> {
    use rayon::prelude::*;
    let corpus = generate::corpus(12);
    let tables: Vec<Vec<Vec<GoldenNumber>>> = corpus
        .iter()
        .map(|g| {
            all_pairs_distances(g)
                .into_iter()
                .map(|row| row.into_iter().map(omega_pow).collect())
                .collect()
        })
        .collect();
    const SEQUENCES: u64 = 10_000;
    let results: Vec<(usize, usize)> = (0..SEQUENCES)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed ^ (i.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
            let which = rng.gen_range(0..corpus.len());
            let g = &corpus[which];
            let table = &tables[which];
            let n = g.vertex_count();
            let mode = [Mode::Proper, Mode::Stacking, Mode::Peggling][rng.gen_range(0..3)];
            let mut state: Distribution = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            if state.is_empty() {
                state.insert(0);
            }
            let mut multi = state.to_multi();
            let weight = |m: &peg_core::engine::MultiDistribution, t: usize| -> GoldenNumber {
                m.iter().map(|(v, c)| table[v][t].scale_int(c as u64)).sum()
            };
            let mut current: Vec<GoldenNumber> = (0..n).map(|t| weight(&multi, t)).collect();
            let (mut moves, mut violations) = (0, 0);
            loop {
                let options = legal_moves(g, &multi, mode);
                if options.is_empty() {
                    break;
                }
                let m = options[rng.gen_range(0..options.len())];
                multi = apply_move_multi(g, &multi, &m).expect("legal move applies");
                moves += 1;
                for (t, w) in current.iter_mut().enumerate() {
                    let next = weight(&multi, t);
                    if next > *w {
                        violations += 1;
                    }
                    *w = next;
                }
            }
            (moves, violations)
        })
        .collect();
    let moves: usize = results.iter().map(|r| r.0).sum();
    let violations: usize = results.iter().map(|r| r.1).sum();
    outcome(
        violations == 0,
        json!({ "sequences": SEQUENCES, "graphs": corpus.len(), "moves": moves, "violations": violations }),
    )
}

fn reach_implies_weight(ctx: &Context) -> peg_core::Result<Outcome> {
    use rayon::prelude::*;
    let corpus = generate::corpus(12);
    let mut jobs = Vec::new();
    for (gi, g) in corpus.iter().enumerate() {
        let n = g.vertex_count();
        for k in 1..=5.min(n) {
            for r in 0..binomial(n, k).unwrap_or(0) {
                jobs.push((gi, k, r));
            }
        }
    }
    let results: Vec<(usize, usize, bool)> = jobs
        .par_iter()
        .map(|&(gi, k, r)| -> peg_core::Result<(usize, usize, bool)> {
            let g = &corpus[gi];
            let n = g.vertex_count();
            let d = Distribution::from_vertices(unrank(n, k, r));
            let out = reach_set(g, &d, Mode::Proper, ctx.budget)?;
            let mut checked = 0;
            let mut violations = 0;
            for t in out.reachable().iter() {
                checked += 1;
                if distribution_weight(g, t, &d)?.cmp_integer(1) == Ordering::Less {
                    violations += 1;
                }
            }
            Ok((checked, violations, out.complete))
        })
        .collect::<peg_core::Result<_>>()?;
    let checked: usize = results.iter().map(|r| r.0).sum();
    let violations: usize = results.iter().map(|r| r.1).sum();
    let incomplete = results.iter().filter(|r| !r.2).count();
    outcome(
        violations == 0 && incomplete == 0,
        json!({ "distributions": jobs.len(), "reachable_targets": checked, "violations": violations, "incomplete": incomplete }),
    )
}

fn mode_equivalence(ctx: &Context) -> peg_core::Result<Outcome> {
    use rayon::prelude::*;
    let corpus = generate::corpus(9);
    let mut jobs = Vec::new();
    for (gi, g) in corpus.iter().enumerate() {
        let n = g.vertex_count();
        for k in 1..=4.min(n) {
            for r in 0..binomial(n, k).unwrap_or(0) {
                jobs.push((gi, k, r));
            }
        }
    }
    let mismatches: Vec<Value> = jobs
        .par_iter()
        .map(|&(gi, k, r)| -> peg_core::Result<Option<Value>> {
            let g = &corpus[gi];
            let d = Distribution::from_vertices(unrank(g.vertex_count(), k, r));
            let proper = reach_set(g, &d, Mode::Proper, ctx.budget)?;
            let stacking = reach_set(g, &d, Mode::Stacking, ctx.budget)?;
            let peggling = reach_set(g, &d, Mode::Peggling, ctx.budget)?;
            let complete = proper.complete && stacking.complete && peggling.complete;
            let same = proper.reachable() == stacking.reachable() && proper.reachable() == peggling.reachable();
            Ok((!(complete && same)).then(|| {
                json!({ "graph": gi, "pegs": d.to_vec(), "complete": complete,
                        "proper": proper.reachable().to_vec(), "stacking": stacking.reachable().to_vec(),
                        "peggling": peggling.reachable().to_vec() })
            }))
        })
        .collect::<peg_core::Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    outcome(
        mismatches.is_empty(),
        json!({ "graphs": corpus.len(), "distributions": jobs.len(), "mismatches": mismatches }),
    )
}

fn toward_target(ctx: &Context) -> peg_core::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed.wrapping_add(8));
    let mut mismatches = Vec::new();
    let mut reachable = 0;
    const INSTANCES: usize = 200;
    for _ in 0..INSTANCES {
        let n = rng.gen_range(2..=10);
        let g = generate::random_tree(n, &mut rng);
        let mut d: Distribution = (0..n).filter(|_| rng.gen_bool(0.55)).collect();
        if d.is_empty() {
            d.insert(rng.gen_range(0..n));
        }
        let t = rng.gen_range(0..n);
        let directed = reach_target_tree_directed(&g, &d, t, ctx.budget)?.verdict;
        let full = reach_target_exhaustive(&g, &d, t, ctx.budget)?.verdict;
        reachable += full.is_reachable() as usize;
        if directed.is_unknown() || full.is_unknown() || directed.is_reachable() != full.is_reachable() {
            mismatches.push(json!({ "edges": g.edges().collect::<Vec<_>>(), "pegs": d.to_vec(), "target": t,
                                    "directed": directed.status(), "unrestricted": full.status() }));
        }
    }
    outcome(
        mismatches.is_empty(),
        json!({ "instances": INSTANCES, "reachable": reachable, "mismatches": mismatches }),
    )
}

fn subtree_monotonicity(ctx: &Context) -> peg_core::Result<Outcome> {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut undecided = 0;
    for n in 2..=7 {
        for tree in generate::nonisomorphic_trees(n) {
            let whole = pegging_number(&tree, ctx.budget)?.value;
            for leaf in leaves(&tree) {
                let (smaller, _) = tree.without_vertex(leaf)?;
                let part = pegging_number(&smaller, ctx.budget)?.value;
                checked += 1;
                match (whole, part) {
                    (Some(w), Some(p)) if p > w => violations.push(json!({
                        "edges": tree.edges().collect::<Vec<_>>(), "leaf": leaf, "P": w, "P_without_leaf": p })),
                    (Some(_), Some(_)) => {}
                    _ => undecided += 1,
                }
            }
        }
    }
    outcome(
        violations.is_empty() && undecided == 0,
        json!({ "pairs": checked, "violations": violations, "undecided": undecided }),
    )
}

fn binary_closed_forms(_: &Context) -> peg_core::Result<Outcome> {
    let mut mismatches = Vec::new();
    for h in 0..=10 {
        let g = family(FamilySpec::Ary { branching: 2, height: h })?;
        let all: Vec<usize> = g.vertices().collect();
        if binary_root_weight_closed(h) != summed_weight(&g, &[0], &all)? {
            mismatches.push(json!({ "h": h, "form": "root" }));
        }
        for (l, brute) in binary_summed_weights_by_level(&g)?.iter().enumerate() {
            if &binary_summed_weight_closed(h, l)? != brute {
                mismatches.push(json!({ "h": h, "level": l, "form": "summed" }));
            }
        }
    }
    outcome(mismatches.is_empty(), json!({ "heights": "0..=10", "mismatches": mismatches }))
}

fn binary_ranking(_: &Context) -> peg_core::Result<Outcome> {
    const TOL: f64 = 1e-5;
    let mut rows = Vec::new();
    let mut passed = true;
    for h in 8..=16 {
        let ranking = binary_level_ranking(h)?;
        let r04 = binary_level_ratio(h, 0, 4)?;
        let r03 = binary_level_ratio(h, 0, 3)?;
        let ok = ranking[..5] == [1, 2, 3, 0, 4] && (r04 - 1.12937).abs() < TOL && (r03 - 0.995713).abs() < TOL;
        passed &= ok;
        rows.push(json!({ "h": h, "ranking": ranking, "w0_over_w4": r04, "w0_over_w3": r03 }));
    }
    outcome(passed, json!({ "heights": rows }))
}

fn adversarial_certificate(_: &Context) -> peg_core::Result<Outcome> {
    let a = binary_adversarial_distribution(14)?;
    let g = family(FamilySpec::Ary { branching: 2, height: 14 })?;
    // Recomputed from scratch rather than trusting the builder's totals.
    let base = distribution_weight(&g, a.target, &a.base)?;
    let refined = distribution_weight(&g, a.target, &a.refined)?;
    let base_hint = base.to_f64();
    let refined_hint = refined.to_f64();
    let passed = base == a.base_weight
        && refined == a.refined_weight
        && base.cmp_integer(1) == Ordering::Less
        && base_hint < 0.93
        && refined.cmp_integer(1) == Ordering::Less
        && refined_hint > 0.99
        && refined_hint < 1.0;
    outcome(
        passed,
        json!({
            "h": 14,
            "vertices": a.vertex_count,
            "target": a.target,
            "base": { "pegs": a.base.len(), "weight": base, "float_hint": base_hint },
            "refined": { "pegs": a.refined.len(), "weight": refined, "float_hint": refined_hint },
            "empty_vertices": a.refined_empty,
            "claimed_empty_vertices": a.claimed_empty,
            "discrepancy": a.budget_discrepancy(),
            "census": a.census,
        }),
    )
}

fn binary_lower_bound(_: &Context) -> peg_core::Result<Outcome> {
    let mut rows = Vec::new();
    let mut passed = true;
    for h in 8..=12 {
        let g = family(FamilySpec::Ary { branching: 2, height: h })?;
        let bound = optimal_lower_bound(&g, &leaves(&g))?;
        let top = binary_top_levels_weight(h, h - 3)?;
        let below = top.cmp_integer(1i64 << h) == Ordering::Less;
        let want = 1usize << (h - 3);
        passed &= bound >= want && below;
        rows.push(json!({ "h": h, "bound": bound, "required": want,
                          "top_levels_weight": top.to_f64(), "leaves": 1u64 << h, "strict": below }));
    }
    outcome(passed, json!({ "heights": rows }))
}

/// `T_5` with a path of `len` extra vertices hanging off the root; the
/// path vertices take the highest ids.
pub fn binary_with_pendant_path(h: usize, len: usize) -> peg_core::Result<Graph> {
    let tree = family(FamilySpec::Ary { branching: 2, height: h })?;
    let n = tree.vertex_count();
    let mut edges: Vec<(usize, usize)> = tree.edges().collect();
    let mut prev = 0;
    for i in 0..len {
        edges.push((prev, n + i));
        prev = n + i;
    }
    Graph::from_edges(n + len, &edges)
}

fn pendant_path_reach(ctx: &Context) -> peg_core::Result<Outcome> {
    let g = binary_with_pendant_path(5, 4)?;
    let tree_size = g.vertex_count() - 4;
    let d = Distribution::from_vertices(0..tree_size);
    let t = g.vertex_count() - 1;
    let out = witness_search(&g, &d, t, ctx.budget)?;
    let witness_len = out.verdict.witness().map(<[_]>::len);
    outcome(
        g.vertex_count() == 67 && out.verdict.is_reachable(),
        json!({ "vertices": g.vertex_count(), "pegs": d.len(), "target": t, "status": out.verdict.status(),
                "witness_moves": witness_len, "expansions": out.states }),
    )
}

fn star_probabilities(ctx: &Context) -> peg_core::Result<Outcome> {
    let g = family(FamilySpec::Star(5))?;
    let mut rows = Vec::new();
    let mut passed = true;
    for (k, pegging, total) in [(1, 0, 5), (4, 4, 5), (5, 1, 1)] {
        let r = peg_probability(&g, k, 0, ctx.seed, ctx.budget)?;
        passed &= r.exact && r.pegging == pegging && r.trials == total && r.unknown == 0;
        rows.push(json!({ "k": k, "pegging": r.pegging, "trials": r.trials, "estimate": r.estimate, "exact": r.exact }));
    }
    outcome(passed, json!({ "star:5": rows }))
}
