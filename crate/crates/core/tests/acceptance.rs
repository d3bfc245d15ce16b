//! Acceptance suite: one test per headline claim, each printing a PASS
//! line with the measured quantities (run with `-- --nocapture` to see
//! them). Every tolerance is pinned here and every comparison is exact.
//!
//! Scale note: the sweeps run their full stated sample counts by default;
//! set SCENARIO_SCHED_ACCEPT_DIV to an integer to divide the counts during
//! development.

use scenario_sched::adversaries::{
    build_i1, build_i2, lb2k_adversary, lb53_adversary, lemma_palette_recoloring_check, n_bound,
    n_bound_within_tower, omhc3_adversary, omhc_general_i, omhc_general_n,
    prop_all_splits_counterexamples, prop_bicolored_check, rule1_counterexample,
    rule1_forced_assignments, x_size, x_size_bound_holds, y_size,
};
use scenario_sched::algorithms::{
    baseline_suite, conforms_to_rule1, graham_ratio_bound, run_on_instance, AlgorithmId,
};
use scenario_sched::analysis::check_invariant1;
use scenario_sched::harness::{
    duel, map_collect, minimax_certify, random_instance, MinimaxCaps, WeightMode,
};
use scenario_sched::oracle::{exact_opt, lower_bound_avg, verify_certificate};
use scenario_sched::state::{load_matrix, AssignmentState};
use scenario_sched::transforms::{deletion_hypothesis, report_cut, report_delete, DeletionHypothesis};
use scenario_sched::{Instance, Job, Weight};

fn scale(count: usize) -> usize {
    let div: usize = std::env::var("SCENARIO_SCHED_ACCEPT_DIV")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1);
    (count / div.max(1)).max(1)
}

fn five_thirds() -> Weight {
    Weight::from_ratio(5, 3)
}

fn lb53_bound() -> Weight {
    (Weight::from_int(9) + Weight::sqrt17()) / Weight::from_int(8)
}

/// Does the completed run match the bottleneck shape: last job in both
/// scenarios, and the largest single-scenario job's completion time equals
/// the completion time of the penultimate job?
fn bottleneck_shape(state: &AssignmentState) -> bool {
    let n = state.n();
    if n < 2 {
        return false;
    }
    let jobs = state.jobs();
    let last = &jobs[n - 1];
    if !(last.in_scenario(0) && last.in_scenario(1)) {
        return false;
    }
    let single = |j: &Job| j.in_scenario(0) ^ j.in_scenario(1);
    match (0..n).rev().find(|&j| single(&jobs[j])) {
        None => true,
        Some(j) => state.completion(j) == state.completion(n - 2),
    }
}

/// Criterion 1, main clause: the rule-based algorithm stays within 5/3 of
/// the exact optimum on 1e5 seeded random 2x2 instances (exact comparison)
/// and obeys the double-scenario rule on every replay.
#[test]
fn criterion_1_five_thirds_upper_bound() {
    let samples = scale(100_000);
    let bound = five_thirds();
    let failures: Vec<String> = map_collect((0..samples as u64).collect(), |seed| {
        let n = (seed % 13) as usize;
        let inst = random_instance(2, 2, n, WeightMode::rational(10, 10), seed);
        let mut alg = AlgorithmId::Alg53.instantiate();
        let mut state = AssignmentState::new(2, 2);
        for job in &inst.jobs {
            let machine = match alg.assign(&state, job) {
                Ok(m) => m,
                Err(e) => return Some(format!("seed {seed}: {e}")),
            };
            state.push(job.clone(), machine).unwrap();
        }
        if !conforms_to_rule1(&inst, state.assignment()) {
            return Some(format!("seed {seed}: double-scenario rule violated"));
        }
        if inst.jobs.iter().all(|j| j.scenarios.is_empty()) || inst.n() == 0 {
            return None;
        }
        let opt = exact_opt(&inst).unwrap();
        if opt.value.is_zero() {
            return None;
        }
        let ratio = state.makespan() / opt.value;
        if ratio > bound {
            return Some(format!("seed {seed}: ratio {} exceeds 5/3", ratio.decimal(8)));
        }
        None
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{failures:?}");
    println!(
        "[criterion 1] PASS - alg53 <= 5/3 against the exact optimum on {samples} random 2x2 instances, rule-conforming throughout"
    );
}

/// Criterion 1, invariant clause: "the invariant holds after every prefix
/// on bottleneck-shaped runs". This is FALSE for the algorithm as
/// specified: when an other-scenario job cannot go onto the loaded machine
/// because the dominance condition would newly trigger with an unmoved
/// makespan cell, the fallback assignment pushes anticipation above 2, and
/// the final proxy ratio of a shaped run can even exceed 5/3 while the
/// true ratio against the optimum stays within it (the worked fixture
/// lives in the algorithm's unit tests). This test verifies the
/// falsification with counted seeds instead of asserting the clause; the
/// invariant does hold on every prefix strictly after the last
/// single-scenario job, which is the scope the maintenance argument
/// covers.
#[test]
fn criterion_1_invariant_clause_as_stated_fails() {
    let samples = scale(100_000);
    let bound = five_thirds();
    let mut literal_violations = 0usize;
    let mut scoped_violations = 0usize;
    let mut checked_shaped = 0usize;
    for seed in 0..samples as u64 {
        let n = (seed % 13) as usize;
        let inst = random_instance(2, 2, n, WeightMode::rational(10, 10), seed);
        let single = |j: &Job| j.in_scenario(0) ^ j.in_scenario(1);
        let last_single = (0..inst.n()).rev().find(|&j| single(&inst.jobs[j]));
        let mut alg = AlgorithmId::Alg53.instantiate();
        let mut state = AssignmentState::new(2, 2);
        let mut literal_ok = true;
        let mut scoped_ok = true;
        for (idx, job) in inst.jobs.iter().enumerate() {
            let machine = alg.assign(&state, job).unwrap();
            state.push(job.clone(), machine).unwrap();
            let inv = check_invariant1(&state).unwrap();
            if idx + 1 == inst.n() {
                literal_ok &= inv.proxy_ok;
            } else {
                literal_ok &= inv.all();
                if last_single.map(|j| idx > j).unwrap_or(true) {
                    scoped_ok &= inv.all();
                }
            }
        }
        if bottleneck_shape(&state) {
            checked_shaped += 1;
            if !literal_ok {
                literal_violations += 1;
            }
            if !scoped_ok {
                scoped_violations += 1;
            }
        }
    }
    assert_eq!(scoped_violations, 0, "the maintenance-lemma scope must hold");
    assert!(
        literal_violations > 0,
        "the literal clause unexpectedly held; the gap analysis needs revisiting"
    );
    // The documented worked counterexample stays frozen in the algorithm's
    // unit tests; the true ratio never escapes the bound (criterion 1).
    let inst = rule1_counterexample();
    let state = run_on_instance(AlgorithmId::Alg53.instantiate().as_mut(), &inst).unwrap();
    assert!(state.makespan() / exact_opt(&inst).unwrap().value <= bound);
    println!(
        "[criterion 1, invariant clause] FAIL as literally stated (documented): {literal_violations} of {checked_shaped} shaped runs dip before the last single-scenario job; 0 violations after it"
    );
}

/// Criterion 2: exhaustive minimax over the adaptive adversary certifies
/// the (9+sqrt(17))/8 lower bound, and every suite duel reaches it.
#[test]
fn criterion_2_lb53_minimax() {
    let bound = lb53_bound();
    let outcome = minimax_certify(&|| lb53_adversary(), 2, &bound, MinimaxCaps::default());
    assert!(outcome.is_certified(), "{outcome:?}");
    // Cross-check: certified bound implies every duel reaches it.
    for id in [AlgorithmId::Alg53, AlgorithmId::Greedy, AlgorithmId::FirstFit, AlgorithmId::Fixed(1)] {
        let mut alg = id.instantiate();
        let result = duel(alg.as_mut(), lb53_adversary()).unwrap();
        assert!(result.ratio >= bound, "{id} escaped the bound");
    }
    println!(
        "[criterion 2] PASS - minimax certifies ratio >= (9+sqrt17)/8 = {} on every response path",
        bound.decimal(12)
    );
}

/// Criterion 3: the two-instance adversary certifies the bound 2 for
/// m = 2, 3, 4 machines with K >= 3 scenarios.
#[test]
fn criterion_3_i1_i2_composite() {
    for m in 2..=4usize {
        let bound = Weight::from_int(2);
        let outcome = minimax_certify(&move || lb2k_adversary(m), m, &bound, MinimaxCaps::default());
        assert!(outcome.is_certified(), "m={m}: {outcome:?}");
        // The static instances behind the adversary keep their optima.
        assert_eq!(exact_opt(&build_i1(m).unwrap()).unwrap().value, Weight::one());
        assert_eq!(exact_opt(&build_i2(m).unwrap()).unwrap().value, Weight::one());
    }
    println!("[criterion 3] PASS - minimax certifies ratio >= 2 for m = 2, 3, 4");
}

/// Criterion 4: the five-job counterexample forces every rule-conforming
/// play that splits the opening pair to makespan exactly 5 against an
/// optimum of 3 - ratio exactly 5/3.
#[test]
fn criterion_4_rule_barrier() {
    let inst = rule1_counterexample();
    let opt = exact_opt(&inst).unwrap();
    assert_eq!(opt.value, Weight::from_int(3));
    let forced = rule1_forced_assignments();
    assert!(!forced.is_empty());
    for assignment in &forced {
        let loads = load_matrix(&inst, assignment).unwrap();
        assert_eq!(loads.makespan(), Weight::from_int(5), "{assignment:?}");
    }
    let mut conforming = Vec::new();
    let mut suite = vec![AlgorithmId::Alg53, AlgorithmId::Greedy, AlgorithmId::FirstFit];
    suite.extend((0..32).map(AlgorithmId::Fixed));
    for id in suite {
        let state = run_on_instance(id.instantiate().as_mut(), &inst).unwrap();
        let splits_opening = state.assignment()[0] != state.assignment()[1];
        if splits_opening && conforms_to_rule1(&inst, state.assignment()) {
            let ratio = state.makespan() / opt.value.clone();
            assert_eq!(ratio, five_thirds(), "{id} should be forced to exactly 5/3");
            conforming.push(id.to_string());
        }
    }
    assert!(conforming.contains(&"alg53".to_string()));
    println!(
        "[criterion 4] PASS - {} rule-conforming branches and suite members {:?} all forced to 5/3",
        forced.len(),
        conforming
    );
}

/// Criterion 5: the pigeonhole list scheduler respects its ratio bound
/// (m-1)/ceil(m/K)+1 and K+1 over random sweeps for 2 <= K < m <= 8, and
/// hits the classic 2 - 1/m worst case exactly for K = 1.
#[test]
fn criterion_5_generalized_list_scheduling() {
    let per_pair = scale(10_000);
    for m in 3..=8usize {
        for k in 2..m {
            let bound = graham_ratio_bound(m, k);
            let trivial = Weight::from_int(k as i64 + 1);
            assert!(bound <= trivial, "the ratio guarantee is within K+1");
            let worst = map_collect((0..per_pair as u64).collect(), |seed| {
                let n = (seed % 13) as usize;
                let inst =
                    random_instance(m, k, n, WeightMode::rational(10, 10), seed ^ 0x9e3779b9);
                let state =
                    run_on_instance(AlgorithmId::Graham.instantiate().as_mut(), &inst).unwrap();
                if state.makespan().is_zero() {
                    return Weight::zero();
                }
                let opt = exact_opt(&inst).unwrap();
                state.makespan() / opt.value
            })
            .into_iter()
            .max()
            .unwrap();
            assert!(worst <= bound, "m={m} K={k}: worst {} over bound", worst.decimal(8));
        }
    }
    // K = 1 classic worst case, certified without the oracle: the witness
    // splits the unit jobs evenly and isolates the heavy job, matching the
    // averaging lower bound exactly.
    for m in 2..=6usize {
        let mut jobs = vec![Job::unit(vec![0]); m * (m - 1)];
        jobs.push(Job::new(Weight::from_int(m as i64), vec![0]));
        let inst = Instance::new(m, 1, jobs);
        let state = run_on_instance(AlgorithmId::Graham.instantiate().as_mut(), &inst).unwrap();
        assert_eq!(state.makespan(), Weight::from_int(2 * m as i64 - 1));
        let witness: Vec<usize> = (0..m * (m - 1)).map(|j| j % (m - 1)).chain([m - 1]).collect();
        let opt_value = Weight::from_int(m as i64);
        assert!(verify_certificate(&inst, &witness, &opt_value).unwrap());
        assert_eq!(lower_bound_avg(&inst), opt_value);
        let ratio = state.makespan() / opt_value;
        let expected = Weight::from_int(2) - Weight::from_ratio(1, m as i64);
        assert_eq!(ratio, expected, "m={m}");
    }
    println!(
        "[criterion 5] PASS - graham within (m-1)/ceil(m/K)+1 and K+1 on {} samples per (m,K), classic K=1 ratio exactly 2-1/m",
        per_pair
    );
}

/// Criterion 6: the bingo-card round robin is 2-competitive on random unit
/// instances with three scenarios, with clean card structure throughout.
#[test]
fn criterion_6_bingo_two_competitive() {
    let per_m = scale(10_000);
    let two = Weight::from_int(2);
    for m in 2..=9usize {
        let worst = map_collect((0..per_m as u64).collect(), |seed| {
            let n = (seed % 16) as usize;
            let inst = random_instance(m, 3, n, WeightMode::Unit, seed ^ (m as u64) << 32);
            let mut alg = scenario_sched::algorithms::Bingo::new();
            let state = run_on_instance(&mut alg, &inst).unwrap();
            let audit = alg.audit();
            assert!(audit.single_open_copy_per_column, "m={m} seed={seed}: open-copy audit");
            if state.makespan().is_zero() {
                return Weight::zero();
            }
            let opt = exact_opt(&inst).unwrap();
            state.makespan() / opt.value
        })
        .into_iter()
        .max()
        .unwrap();
        assert!(worst <= two, "m={m}: worst ratio {}", worst.decimal(8));
    }
    println!("[criterion 6] PASS - bingo <= 2 on {per_m} random unit K=3 instances per m in 2..=9");
}

/// Criterion 7: the three-color hypergraph adversary forces ratio 3 within
/// 103 nodes and 233 hyperedges against greedy, balanced first fit, and a
/// thousand seeded baselines, with its offline coloring proper throughout;
/// plus the exhaustive recoloring checks behind the construction.
#[test]
fn criterion_7_omhc3_adversary() {
    assert!(prop_bicolored_check(), "reachable-outcome recoloring check");
    assert!(lemma_palette_recoloring_check(), "palette recoloring over all 3^7 splits");
    // The literal all-splits reading of the bichromatic-pairs claim fails;
    // the adversary only ever needs play-reachable outcomes.
    assert!(!prop_all_splits_counterexamples().is_empty());

    let suite = baseline_suite(scale(1000) as u64);
    let three = Weight::from_int(3);
    let failures: Vec<String> = map_collect(suite, |id| {
        let mut alg = id.instantiate();
        match duel(alg.as_mut(), omhc3_adversary()) {
            Err(e) => Some(format!("{id}: {e}")),
            Ok(result) => {
                if result.ratio != three {
                    Some(format!("{id}: ratio {}", result.ratio.decimal(6)))
                } else if result.transcript.len() > 103 {
                    Some(format!("{id}: {} nodes", result.transcript.len()))
                } else if !result.audits.iter().all(|a| a.passed) {
                    Some(format!("{id}: failed audits {:?}", result.audits))
                } else {
                    None
                }
            }
        }
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{failures:?}");
    println!(
        "[criterion 7] PASS - forced monochromatic triple within budgets against greedy, first fit and seeded baselines; sub-lemma checks exhaustive"
    );
}

/// Criterion 8: the general construction at desk scale - recursion values,
/// the closed-form bound, exhaustive certification for two colors, and
/// budgeted three-color runs.
#[test]
fn criterion_8_general_construction() {
    // (a) recursion values against independently derived constants.
    assert_eq!(x_size(2, 2), 3u32.into());
    assert_eq!(x_size(2, 3), 7u32.into());
    assert_eq!(x_size(3, 2), 10u32.into());
    assert_eq!(x_size(3, 3), 157u32.into());
    assert_eq!(y_size(2, 2), 35u32.into());
    assert_eq!(n_bound(2), 4u32.into());
    // (b) the closed-form product bound for all m, d <= 6.
    for m in 1..=6 {
        for d in 1..=6 {
            assert!(x_size_bound_holds(m, d), "bound fails at ({m},{d})");
        }
    }
    // (c) exhaustive certification of the two-color construction.
    let outcome =
        minimax_certify(&|| omhc_general_n(2, None), 2, &Weight::from_int(2), MinimaxCaps::default());
    assert!(outcome.is_certified(), "{outcome:?}");
    assert!(n_bound_within_tower(2), "N(2) within the (2m+1) tower of height 5");
    // (d) budgeted three-color runs stay within X(3,3) = 157 nodes. The
    // full tower-scale run is out of reach: Y(3,2) alone is ~6.5e7 nodes.
    assert_eq!(y_size(3, 2), 65_471_548u32.into());
    let suite = baseline_suite(scale(1000) as u64);
    let failures: Vec<String> = map_collect(suite, |id| {
        let mut alg = id.instantiate();
        match duel(alg.as_mut(), omhc_general_i(3, 3, Some(157))) {
            Err(e) => Some(format!("{id}: {e}")),
            Ok(result) => {
                if result.transcript.len() > 157 {
                    Some(format!("{id}: {} nodes", result.transcript.len()))
                } else if !result.audits.iter().all(|a| a.passed) {
                    Some(format!("{id}: audits {:?}", result.audits))
                } else {
                    None
                }
            }
        }
    })
    .into_iter()
    .flatten()
    .collect();
    assert!(failures.is_empty(), "{failures:?}");
    println!(
        "[criterion 8] PASS - recursion values, closed-form bound (m,d <= 6), N(2) certified exhaustively, I(3,3) within 157 nodes"
    );
}

/// Criterion 9: worst-case surgery - deleting the hypothesis-satisfying
/// job and cutting at a makespan-increasing double job never decrease the
/// replayed proxy ratio, and cutting balances the machines at the cut.
#[test]
fn criterion_9_transform_lemmas() {
    let samples = scale(10_000);
    let alg = AlgorithmId::Alg53;
    let stats: Vec<(usize, usize)> = map_collect((0..samples as u64).collect(), |seed| {
        let n = 4 + (seed % 9) as usize;
        let inst = random_instance(2, 2, n, WeightMode::rational(10, 10), seed ^ 0xabcdef);
        let state = scenario_sched::algorithms::replay(&alg, &inst).unwrap();
        let mut deletes = 0;
        let mut cuts = 0;
        // Deletion at the largest single-scenario index when the lemma's
        // argmax-stability hypothesis holds.
        let single = |j: &Job| j.in_scenario(0) ^ j.in_scenario(1);
        if let Some(j) = (0..inst.n()).rev().find(|&j| single(&inst.jobs[j])) {
            if deletion_hypothesis(&inst, &state, j) == DeletionHypothesis::Holds {
                let report = report_delete(&inst, j, &alg).unwrap();
                if let (Some(_), Some(_)) = (&report.ratio_before, &report.ratio_after) {
                    assert!(
                        report.ratio_nondecreasing,
                        "seed {seed}: deletion decreased the proxy ratio"
                    );
                    deletes = 1;
                }
            }
        }
        // Cutting at every double-scenario job whose assignment raised the
        // makespan.
        for t in 0..inst.n() {
            let double = inst.jobs[t].in_scenario(0) && inst.jobs[t].in_scenario(1);
            if !double || state.makespan_at(t + 1) <= state.makespan_at(t) {
                continue;
            }
            let report = report_cut(&inst, t, &alg).unwrap();
            assert!(report.prefix_loads_equal, "seed {seed} t={t}: prefix loads changed");
            assert!(report.balanced_at_cut, "seed {seed} t={t}: machines unbalanced at cut");
            assert!(
                report.ratio_nondecreasing,
                "seed {seed} t={t}: cut decreased the proxy ratio"
            );
            cuts += 1;
        }
        (deletes, cuts)
    });
    let (deletes, cuts) = stats
        .into_iter()
        .fold((0, 0), |(a, b), (x, y)| (a + x, b + y));
    assert!(deletes > samples / 20, "too few deletion points exercised: {deletes}");
    assert!(cuts > samples / 4, "too few cut points exercised: {cuts}");
    println!(
        "[criterion 9] PASS - {deletes} deletions and {cuts} cuts over {samples} instances, ratios nondecreasing, cuts balanced"
    );
}
