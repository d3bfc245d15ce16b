//! The 5/3-competitive algorithm for two machines and two scenarios.
//!
//! Single-scenario jobs of the makespan scenario go opposite the makespan
//! machine; single-scenario jobs of the other scenario go onto the makespan
//! machine when the maintained invariant survives that, otherwise opposite;
//! double-scenario jobs follow the fixed rule of always loading the machine
//! that does not attain the makespan (ties: the machine of the previous
//! job, the first machine initially).

use crate::analysis::{canonical_cell, check_invariant1};
use crate::instance::{Instance, Reveal};
use crate::state::AssignmentState;
use crate::weight::Weight;

use super::{AlgoError, OnlineAlgorithm};

pub struct Alg53;

/// The five prefix quantities of the analysis, in the canonical frame:
/// `x1..x4` are the loads (with `x1` maximal) and `x5` the revealed weight.
#[derive(Clone, Debug)]
pub struct Alg53Snapshot {
    pub x: [Weight; 5],
}

pub fn alg53_snapshot(state: &AssignmentState, reveal: &Reveal) -> Alg53Snapshot {
    let (i1, k1) = canonical_cell(state);
    let (i2, k2) = (1 - i1, 1 - k1);
    Alg53Snapshot {
        x: [
            state.load(i1, k1).clone(),
            state.load(i1, k2).clone(),
            state.load(i2, k1).clone(),
            state.load(i2, k2).clone(),
            reveal.p.clone(),
        ],
    }
}

/// The double-scenario rule: the machine whose maximum load is smaller,
/// ties broken to the machine that received the previous job (machine 1
/// when there is none).
pub fn rule1_machine(state: &AssignmentState) -> usize {
    let a = state.loads().machine_max(0);
    let b = state.loads().machine_max(1);
    match a.cmp(&b) {
        std::cmp::Ordering::Less => 0,
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => state.last_machine().unwrap_or(0),
    }
}

impl OnlineAlgorithm for Alg53 {
    fn name(&self) -> String {
        "alg53".into()
    }

    fn assign(&mut self, state: &AssignmentState, reveal: &Reveal) -> Result<usize, AlgoError> {
        if state.m() != 2 || state.k() != 2 {
            return Err(AlgoError::Configuration {
                algorithm: self.name(),
                reason: format!("requires m = K = 2, got m = {}, K = {}", state.m(), state.k()),
            });
        }
        let (i1, k1) = canonical_cell(state);
        let (i2, k2) = (1 - i1, 1 - k1);
        let in1 = reveal.in_scenario(k1);
        let in2 = reveal.in_scenario(k2);
        Ok(match (in1, in2) {
            (true, true) => rule1_machine(state),
            (true, false) => i2,
            (false, true) => {
                let mut trial = state.clone();
                trial.push(reveal.clone(), i1).expect("machine in range");
                if check_invariant1(&trial).expect("2x2 state").all() {
                    i1
                } else {
                    i2
                }
            }
            // A job in no scenario is inert; keep it off the makespan machine.
            (false, false) => i2,
        })
    }
}

/// Replay check: does the assignment obey the double-scenario rule at every
/// job in both scenarios? Used to identify rule-conforming algorithms
/// independently of how they were implemented. Requires K = 2.
pub fn conforms_to_rule1(instance: &Instance, assignment: &[usize]) -> bool {
    assert_eq!(instance.k, 2, "rule conformance is defined for K = 2");
    assert_eq!(instance.m, 2, "rule conformance is defined for m = 2");
    let mut state = AssignmentState::new(instance.m, instance.k);
    for (j, job) in instance.jobs.iter().enumerate() {
        if j >= assignment.len() {
            break;
        }
        if job.in_scenario(0) && job.in_scenario(1) && assignment[j] != rule1_machine(&state) {
            return false;
        }
        state.push(job.clone(), assignment[j]).expect("valid machine");
    }
    true
}
