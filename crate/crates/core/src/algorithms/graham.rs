//! Pigeonhole extension of Graham's list scheduling for m > K.

use crate::instance::Reveal;
use crate::state::{AssignmentState, LoadMatrix};
use crate::weight::Weight;

use super::{AlgoError, OnlineAlgorithm};

/// Lowest-indexed machine that is `s`-favorable with respect to every
/// scenario in `active`: for each such scenario at least `s` other machines
/// carry at least its load.
///
/// With `s = ⌈m/K⌉ - 1` existence is guaranteed by the pigeonhole
/// principle; the assertion below fires if that is ever violated.
pub fn favorable_machine(loads: &LoadMatrix, s: usize, active: &[usize]) -> usize {
    let m = loads.m();
    'machines: for i in 0..m {
        for &k in active {
            let mine = loads.get(i, k);
            let others = (0..m).filter(|&i2| i2 != i && loads.get(i2, k) >= mine).count();
            if others < s {
                continue 'machines;
            }
        }
        return i;
    }
    unreachable!("no {s}-favorable machine found; pigeonhole bound violated")
}

/// Assigns every job to a machine that is `(⌈m/K⌉ - 1)`-favorable for all
/// scenarios of the job. Competitive ratio `(m-1)/⌈m/K⌉ + 1` for m > K;
/// reduces to least-loaded list scheduling for K = 1.
pub struct GrahamScenarios;

impl OnlineAlgorithm for GrahamScenarios {
    fn name(&self) -> String {
        "graham".into()
    }

    fn assign(&mut self, state: &AssignmentState, reveal: &Reveal) -> Result<usize, AlgoError> {
        let (m, k) = (state.m(), state.k());
        if k == 0 || m <= k {
            return Err(AlgoError::Configuration {
                algorithm: self.name(),
                reason: format!("requires m > K >= 1, got m = {m}, K = {k}"),
            });
        }
        let s = m.div_ceil(k) - 1;
        Ok(favorable_machine(state.loads(), s, &reveal.scenarios))
    }
}

/// The guaranteed ratio `(m-1)/⌈m/K⌉ + 1`.
pub fn graham_ratio_bound(m: usize, k: usize) -> Weight {
    Weight::from_ratio((m - 1) as i64, m.div_ceil(k) as i64) + Weight::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Instance, Job};
    use crate::algorithms::run_on_instance;

    fn loads_from(m: usize, k: usize, cols: &[&[i64]]) -> LoadMatrix {
        // cols[k][i] = load of machine i in scenario k
        let mut lm = LoadMatrix::zero(m, k);
        for (kk, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                lm.add(i, kk, &Weight::from_int(v));
            }
        }
        lm
    }

    #[test]
    fn least_loaded_for_single_scenario() {
        let lm = loads_from(2, 1, &[&[3, 1]]);
        assert_eq!(favorable_machine(&lm, 1, &[0]), 1);
    }

    #[test]
    fn all_zero_ties_to_first_machine() {
        let lm = loads_from(4, 2, &[&[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(favorable_machine(&lm, 1, &[0, 1]), 0);
    }

    #[test]
    fn worked_example_m4_k2() {
        let lm = loads_from(4, 2, &[&[5, 1, 2, 3], &[0, 4, 1, 1]]);
        // Exhaustive check of the favorability predicate picks machine 3
        // (0-based 2) as the lowest 1-favorable machine in both scenarios.
        assert_eq!(favorable_machine(&lm, 1, &[0, 1]), 2);
    }

    #[test]
    fn classic_list_scheduling_worst_case() {
        // m = 3, K = 1: six unit jobs then one of weight 3 → makespan 5.
        let mut jobs: Vec<Job> = (0..6).map(|_| Job::unit(vec![0])).collect();
        jobs.push(Job::new(Weight::from_int(3), vec![0]));
        let inst = Instance::new(3, 1, jobs);
        let state = run_on_instance(&mut GrahamScenarios, &inst).unwrap();
        assert_eq!(state.makespan(), Weight::from_int(5));
    }

    #[test]
    fn first_job_goes_to_machine_one() {
        let inst = Instance::new(4, 2, vec![Job::unit(vec![1])]);
        let state = run_on_instance(&mut GrahamScenarios, &inst).unwrap();
        assert_eq!(state.assignment(), &[0]);
    }

    #[test]
    fn rejects_m_not_exceeding_k() {
        let inst = Instance::new(2, 2, vec![Job::unit(vec![0])]);
        assert!(run_on_instance(&mut GrahamScenarios, &inst).is_err());
    }
}
