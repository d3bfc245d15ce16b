//! Baseline algorithms: greedy least-max-load, balanced first fit, and a
//! seeded deterministic baseline for adversary stress tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::Reveal;
use crate::state::AssignmentState;
use crate::weight::Weight;

use super::{AlgoError, OnlineAlgorithm};

/// Assigns to the machine minimizing the resulting maximum load over the
/// job's scenarios; lowest index on ties. For K = 1 this is exactly
/// least-loaded list scheduling.
pub struct Greedy;

fn resulting_max(state: &AssignmentState, reveal: &Reveal, machine: usize) -> Weight {
    let mut worst = Weight::zero();
    for &k in &reveal.scenarios {
        let v = state.load_or_zero(machine, k) + reveal.p.clone();
        if v > worst {
            worst = v;
        }
    }
    worst
}

impl OnlineAlgorithm for Greedy {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn assign(&mut self, state: &AssignmentState, reveal: &Reveal) -> Result<usize, AlgoError> {
        let mut best = 0;
        let mut best_val = resulting_max(state, reveal, 0);
        for i in 1..state.m() {
            let v = resulting_max(state, reveal, i);
            if v < best_val {
                best_val = v;
                best = i;
            }
        }
        Ok(best)
    }
}

/// First fit balanced by the makespan: the lowest-indexed machine on which
/// the job does not raise the current makespan; greedy choice if every
/// machine would raise it.
pub struct FirstFit;

impl OnlineAlgorithm for FirstFit {
    fn name(&self) -> String {
        "firstfit".into()
    }

    fn assign(&mut self, state: &AssignmentState, reveal: &Reveal) -> Result<usize, AlgoError> {
        let makespan = state.makespan();
        for i in 0..state.m() {
            if resulting_max(state, reveal, i) <= makespan {
                return Ok(i);
            }
        }
        Greedy.assign(state, reveal)
    }
}

/// Deterministic seeded baseline: machine choices are drawn from a ChaCha
/// stream, so identical transcripts give identical decisions.
pub struct FixedSeed {
    seed: u64,
    rng: ChaCha8Rng,
}

impl FixedSeed {
    pub fn new(seed: u64) -> Self {
        FixedSeed { seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl OnlineAlgorithm for FixedSeed {
    fn name(&self) -> String {
        format!("fixed:{}", self.seed)
    }

    fn assign(&mut self, state: &AssignmentState, _reveal: &Reveal) -> Result<usize, AlgoError> {
        Ok(self.rng.gen_range(0..state.m()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{run_on_instance, GrahamScenarios};
    use crate::harness::{random_instance, WeightMode};
    use crate::instance::{Instance, Job};

    #[test]
    fn greedy_first_job_to_machine_one() {
        let inst = Instance::new(3, 2, vec![Job::unit(vec![0, 1])]);
        let state = run_on_instance(&mut Greedy, &inst).unwrap();
        assert_eq!(state.assignment(), &[0]);
    }

    #[test]
    fn greedy_matches_graham_for_single_scenario() {
        for seed in 0..50u64 {
            let inst = random_instance(4, 1, 10, WeightMode::rational(8, 4), seed);
            let g = run_on_instance(&mut Greedy, &inst).unwrap();
            let gr = run_on_instance(&mut GrahamScenarios, &inst).unwrap();
            assert_eq!(g.assignment(), gr.assignment(), "seed {seed}");
        }
    }

    #[test]
    fn greedy_forced_to_two_on_i2() {
        let inst = crate::adversaries::build_i2(2).unwrap();
        let state = run_on_instance(&mut Greedy, &inst).unwrap();
        assert_eq!(state.makespan(), Weight::from_int(2));
        let opt = crate::oracle::exact_opt(&inst).unwrap();
        assert_eq!(opt.value, Weight::one());
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let inst = random_instance(3, 3, 12, WeightMode::Unit, 5);
        let a = run_on_instance(&mut FixedSeed::new(9), &inst).unwrap();
        let b = run_on_instance(&mut FixedSeed::new(9), &inst).unwrap();
        let c = run_on_instance(&mut FixedSeed::new(10), &inst).unwrap();
        assert_eq!(a.assignment(), b.assignment());
        assert_ne!(a.assignment(), c.assignment());
    }
}
