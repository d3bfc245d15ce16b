//! Worst-case instance surgery for m = K = 2: deleting a job (zeroing its
//! weight) and cutting a double-scenario job into two.
//!
//! Both transforms are statements about an algorithm's behavior, so they
//! take the algorithm as a parameter and replay it from scratch; nothing is
//! patched incrementally.

use serde::Serialize;

use crate::algorithms::{replay, AlgoError, AlgorithmId};
use crate::analysis::{proxy_ratio, AnalysisError};
use crate::instance::{Instance, Job};
use crate::state::AssignmentState;
use crate::weight::Weight;

#[derive(Debug, thiserror::Error)]
pub enum TransformError {
    #[error("job index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("cut point must be a double-scenario job")]
    NotDoubleScenario,
    #[error("not cuttable: the makespan does not increase at the cut point")]
    NotCuttable,
    #[error("cutting requires m = K = 2")]
    WrongShape,
    #[error("algorithm failed during replay: {0}")]
    Replay(#[from] AlgoError),
}

/// Deletion: set `p_j` to zero, keeping the job as a placeholder so that
/// indices and scenario sets stay stable.
pub fn delete_job(instance: &Instance, j: usize) -> Result<Instance, TransformError> {
    if j >= instance.n() {
        return Err(TransformError::IndexOutOfRange(j + 1, instance.n()));
    }
    let mut out = instance.clone();
    out.jobs[j].p = Weight::zero();
    Ok(out)
}

/// Does the deletion-lemma hypothesis hold for job `j` under the replayed
/// schedule? `j` must be the largest single-scenario index, and deleting
/// it must leave every machine's maximum load untouched at every prefix:
/// the scenario more represented on its machine stays the same AND the job
/// sits in the other (minority) scenario. Ties in that argmax, and later
/// double-scenario jobs arriving at a machine-maxima tie (whose resolution
/// could drift after the deletion), are rejected and flagged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeletionHypothesis {
    Holds,
    NotLargestSingleScenario,
    ArgmaxChanged,
    ArgmaxTied,
    /// The job weights the majority scenario of its machine, so deleting it
    /// lowers that machine's maximum and later decisions may diverge.
    MajorityScenario,
    /// A later double-scenario job arrived at equal machine maxima; its
    /// tie-break depends on state the deletion may perturb.
    LaterTie,
}

pub fn deletion_hypothesis(
    instance: &Instance,
    state: &AssignmentState,
    j: usize,
) -> DeletionHypothesis {
    let single = |job: &Job| job.in_scenario(0) ^ job.in_scenario(1);
    let largest = (0..instance.n()).rev().find(|&i| single(&instance.jobs[i]));
    if largest != Some(j) {
        return DeletionHypothesis::NotLargestSingleScenario;
    }
    let machine = state.assignment()[j];
    let loads_at = |upto: usize, m: usize, k: usize| -> Weight {
        let mut acc = Weight::zero();
        for i in 0..upto {
            if state.assignment()[i] == m && instance.jobs[i].in_scenario(k) {
                acc += &instance.jobs[i].p;
            }
        }
        acc
    };
    let argmax = |upto: usize| -> Option<usize> {
        let a = loads_at(upto, machine, 0);
        let b = loads_at(upto, machine, 1);
        match a.cmp(&b) {
            std::cmp::Ordering::Greater => Some(0),
            std::cmp::Ordering::Less => Some(1),
            std::cmp::Ordering::Equal => None,
        }
    };
    let stable = match (argmax(j), argmax(j + 1)) {
        (Some(a), Some(b)) if a == b => a,
        (None, _) | (_, None) => return DeletionHypothesis::ArgmaxTied,
        _ => return DeletionHypothesis::ArgmaxChanged,
    };
    if instance.jobs[j].in_scenario(stable) {
        return DeletionHypothesis::MajorityScenario;
    }
    for later in j + 1..instance.n() {
        let max0 = loads_at(later, 0, 0).max(loads_at(later, 0, 1));
        let max1 = loads_at(later, 1, 0).max(loads_at(later, 1, 1));
        if max0 == max1 {
            return DeletionHypothesis::LaterTie;
        }
    }
    DeletionHypothesis::Holds
}

/// Cutting: replace double-scenario job `t` by two double-scenario jobs of
/// total weight `p_t`, the first sized so that after it both machines'
/// maximum loads agree with the previous makespan.
pub fn cut_job(
    instance: &Instance,
    t: usize,
    algorithm: &AlgorithmId,
) -> Result<Instance, TransformError> {
    if instance.m != 2 || instance.k != 2 {
        return Err(TransformError::WrongShape);
    }
    if t >= instance.n() {
        return Err(TransformError::IndexOutOfRange(t + 1, instance.n()));
    }
    let job_t = &instance.jobs[t];
    if !(job_t.in_scenario(0) && job_t.in_scenario(1)) {
        return Err(TransformError::NotDoubleScenario);
    }
    let state = replay(algorithm, instance)?;
    if state.makespan_at(t + 1) <= state.makespan_at(t) {
        return Err(TransformError::NotCuttable);
    }
    // p'_t = makespan(t-1) - min_i max_k (prefix load of machine i).
    let prefix = &state.assignment()[..t];
    let prefix_loads = crate::state::load_matrix(&instance.truncated(t), prefix)
        .expect("replayed prefix is valid");
    let min_machine_max = prefix_loads.machine_max(0).min(prefix_loads.machine_max(1));
    let p_t_new = state.makespan_at(t) - min_machine_max;
    let p_next = job_t.p.clone() - p_t_new.clone();
    assert!(
        p_next.is_positive(),
        "p'_(t+1) must be positive; guaranteed by the makespan precondition"
    );

    let mut jobs = Vec::with_capacity(instance.n() + 1);
    jobs.extend(instance.jobs[..t].iter().cloned());
    jobs.push(Job::new(p_t_new, vec![0, 1]));
    jobs.push(Job::new(p_next, vec![0, 1]));
    jobs.extend(instance.jobs[t + 1..].iter().cloned());
    Ok(Instance::new(instance.m, instance.k, jobs))
}

/// Before/after record of a transform under a replayed algorithm, with the
/// cutting-lemma property flags.
#[derive(Clone, Debug, Serialize)]
pub struct TransformReport {
    pub algorithm: String,
    pub before: Instance,
    pub after: Instance,
    pub ratio_before: Option<Weight>,
    pub ratio_after: Option<Weight>,
    /// (i) prefix load tables before the cut point coincide.
    pub prefix_loads_equal: bool,
    /// (ii) after the replaced job both machines' maximum loads agree.
    pub balanced_at_cut: bool,
    /// (iii) the proxy ratio did not decrease.
    pub ratio_nondecreasing: bool,
    /// deletion-lemma hypothesis diagnosis (deletions only).
    pub deletion_hypothesis: Option<DeletionHypothesis>,
}

fn ratio_of(state: &AssignmentState) -> Option<Weight> {
    match proxy_ratio(state) {
        Ok(r) => Some(r),
        Err(AnalysisError::UndefinedRatio) => None,
        Err(e) => panic!("proxy ratio on a 2x2 replay: {e}"),
    }
}

pub fn report_cut(
    instance: &Instance,
    t: usize,
    algorithm: &AlgorithmId,
) -> Result<TransformReport, TransformError> {
    let after = cut_job(instance, t, algorithm)?;
    let before_state = replay(algorithm, instance)?;
    let after_state = replay(algorithm, &after)?;
    let prefix_loads_equal = {
        let a = crate::state::load_matrix(&instance.truncated(t), &before_state.assignment()[..t])
            .expect("prefix valid");
        let b = crate::state::load_matrix(&after.truncated(t), &after_state.assignment()[..t])
            .expect("prefix valid");
        a == b
    };
    let balanced_at_cut = {
        let loads = crate::state::load_matrix(&after.truncated(t + 1), &after_state.assignment()[..t + 1])
            .expect("prefix valid");
        loads.machine_max(0) == loads.machine_max(1)
    };
    let ratio_before = ratio_of(&before_state);
    let ratio_after = ratio_of(&after_state);
    let ratio_nondecreasing = match (&ratio_before, &ratio_after) {
        (Some(b), Some(a)) => a >= b,
        _ => false,
    };
    Ok(TransformReport {
        algorithm: algorithm.to_string(),
        before: instance.clone(),
        after,
        ratio_before,
        ratio_after,
        prefix_loads_equal,
        balanced_at_cut,
        ratio_nondecreasing,
        deletion_hypothesis: None,
    })
}

pub fn report_delete(
    instance: &Instance,
    j: usize,
    algorithm: &AlgorithmId,
) -> Result<TransformReport, TransformError> {
    let after = delete_job(instance, j)?;
    let before_state = replay(algorithm, instance)?;
    let after_state = replay(algorithm, &after)?;
    let hypothesis = if instance.m == 2 && instance.k == 2 {
        Some(deletion_hypothesis(instance, &before_state, j))
    } else {
        None
    };
    let ratio_before = ratio_of(&before_state);
    let ratio_after = ratio_of(&after_state);
    let ratio_nondecreasing = match (&ratio_before, &ratio_after) {
        (Some(b), Some(a)) => a >= b,
        _ => false,
    };
    Ok(TransformReport {
        algorithm: algorithm.to_string(),
        before: instance.clone(),
        after,
        ratio_before,
        ratio_after,
        prefix_loads_equal: true,
        balanced_at_cut: false,
        ratio_nondecreasing,
        deletion_hypothesis: hypothesis,
    })
}
