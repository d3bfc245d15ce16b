//! Online algorithms behind a single interface.
//!
//! An algorithm is a deterministic function of the instance parameters,
//! the transcript so far and the revealed job; it never inspects future
//! jobs. Algorithms are addressed by string id: `graham`, `alg53`,
//! `bingo`, `greedy`, `firstfit`, `fixed:<seed>`.

mod alg53;
mod baselines;
mod bingo;
mod graham;

pub use alg53::{alg53_snapshot, conforms_to_rule1, rule1_machine, Alg53, Alg53Snapshot};
pub use baselines::{FirstFit, FixedSeed, Greedy};
pub use bingo::{Bingo, BingoAudit};
pub use graham::{favorable_machine, graham_ratio_bound, GrahamScenarios};

use std::fmt;
use std::str::FromStr;

use crate::instance::{Instance, Reveal};
use crate::state::AssignmentState;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgoError {
    #[error("{algorithm} is undefined for this configuration: {reason}")]
    Configuration { algorithm: String, reason: String },
    #[error("{algorithm} does not support this instance: {reason}")]
    UnsupportedInstance { algorithm: String, reason: String },
}

/// An online scheduling algorithm. `assign` sees the state before the
/// revealed job and must return a 0-based machine index.
pub trait OnlineAlgorithm: Send {
    fn name(&self) -> String;
    fn assign(&mut self, state: &AssignmentState, reveal: &Reveal) -> Result<usize, AlgoError>;
}

/// Parsed algorithm identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgorithmId {
    Graham,
    Alg53,
    Bingo,
    Greedy,
    FirstFit,
    Fixed(u64),
}

impl AlgorithmId {
    pub fn instantiate(&self) -> Box<dyn OnlineAlgorithm> {
        match self {
            AlgorithmId::Graham => Box::new(GrahamScenarios),
            AlgorithmId::Alg53 => Box::new(Alg53),
            AlgorithmId::Bingo => Box::new(Bingo::new()),
            AlgorithmId::Greedy => Box::new(Greedy),
            AlgorithmId::FirstFit => Box::new(FirstFit),
            AlgorithmId::Fixed(seed) => Box::new(FixedSeed::new(*seed)),
        }
    }
}

impl fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmId::Graham => write!(f, "graham"),
            AlgorithmId::Alg53 => write!(f, "alg53"),
            AlgorithmId::Bingo => write!(f, "bingo"),
            AlgorithmId::Greedy => write!(f, "greedy"),
            AlgorithmId::FirstFit => write!(f, "firstfit"),
            AlgorithmId::Fixed(seed) => write!(f, "fixed:{seed}"),
        }
    }
}

impl FromStr for AlgorithmId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graham" => Ok(AlgorithmId::Graham),
            "alg53" => Ok(AlgorithmId::Alg53),
            "bingo" => Ok(AlgorithmId::Bingo),
            "greedy" => Ok(AlgorithmId::Greedy),
            "firstfit" | "balanced-first-fit" => Ok(AlgorithmId::FirstFit),
            other => match other.strip_prefix("fixed:") {
                Some(seed) => seed
                    .parse::<u64>()
                    .map(AlgorithmId::Fixed)
                    .map_err(|e| format!("bad seed in {other:?}: {e}")),
                None => Err(format!("unknown algorithm id {other:?}")),
            },
        }
    }
}

/// Run an algorithm over a whole instance, returning the assignment state.
pub fn run_on_instance(
    algorithm: &mut dyn OnlineAlgorithm,
    instance: &Instance,
) -> Result<AssignmentState, AlgoError> {
    let mut state = AssignmentState::new(instance.m, instance.k);
    for job in &instance.jobs {
        let machine = algorithm.assign(&state, job)?;
        state
            .push(job.clone(), machine)
            .expect("algorithm returned an out-of-range machine");
    }
    Ok(state)
}

/// Replay an algorithm id over an instance from a fresh state.
pub fn replay(id: &AlgorithmId, instance: &Instance) -> Result<AssignmentState, AlgoError> {
    run_on_instance(id.instantiate().as_mut(), instance)
}

/// The deterministic baseline suite used to stress the hypergraph
/// adversaries: greedy, balanced first fit, and `n_seeds` seeded baselines.
pub fn baseline_suite(n_seeds: u64) -> Vec<AlgorithmId> {
    let mut out = vec![AlgorithmId::Greedy, AlgorithmId::FirstFit];
    out.extend((0..n_seeds).map(AlgorithmId::Fixed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::random_instance;
    use crate::harness::WeightMode;

    #[test]
    fn ids_roundtrip() {
        for id in ["graham", "alg53", "bingo", "greedy", "firstfit", "fixed:42"] {
            let parsed: AlgorithmId = id.parse().unwrap();
            assert_eq!(parsed.to_string(), id);
        }
        assert!("nope".parse::<AlgorithmId>().is_err());
    }

    #[test]
    fn replay_is_deterministic() {
        for seed in 0..30u64 {
            let inst = random_instance(3, 2, 9, WeightMode::rational(6, 3), seed);
            for id in [AlgorithmId::Greedy, AlgorithmId::FirstFit, AlgorithmId::Fixed(7)] {
                let a = replay(&id, &inst).unwrap();
                let b = replay(&id, &inst).unwrap();
                assert_eq!(a.assignment(), b.assignment());
            }
        }
    }
}
