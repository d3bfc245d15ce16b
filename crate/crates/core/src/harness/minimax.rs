//! Exhaustive certification of adaptive lower bounds: explore every
//! deterministic algorithm response path against a resumable adversary and
//! check that every leaf ends with a verified certificate and ratio at
//! least the claimed bound.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::adversaries::{AdvMove, Adversary};
use crate::oracle::verify_certificate;
use crate::state::AssignmentState;
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub enum MinimaxOutcome {
    /// Every response path ends with ratio >= bound and a valid certificate.
    Certified { leaves: usize },
    /// Some path escapes the bound (or breaks a certificate).
    Refuted { path: Vec<usize>, reason: String },
    /// Budget exceeded or the adversary reported an honest failure;
    /// explicitly distinct from refutation.
    Inconclusive { reason: String },
}

impl MinimaxOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, MinimaxOutcome::Certified { .. })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MinimaxCaps {
    pub max_leaves: usize,
    pub max_depth: usize,
}

impl Default for MinimaxCaps {
    fn default() -> Self {
        MinimaxCaps { max_leaves: 1_000_000, max_depth: 64 }
    }
}

/// Replay the adversary along `path`, returning the state and next move.
fn replay(
    factory: &(dyn Fn() -> Box<dyn Adversary> + Sync),
    path: &[usize],
) -> (Box<dyn Adversary>, AssignmentState, AdvMove) {
    let mut adv = factory();
    let mut state = AssignmentState::new(adv.m(), adv.initial_k());
    let mut mv = adv.next(None);
    for &machine in path {
        match mv {
            AdvMove::Reveal { job, backfill } => {
                state.push(job, machine).expect("path machines in range");
                for &(j, k) in &backfill {
                    state.backfill(j, k).expect("backfill targets a revealed job");
                }
                mv = adv.next(Some(machine));
            }
            AdvMove::Stop(_) => unreachable!("path extends beyond a stop"),
        }
    }
    (adv, state, mv)
}

fn explore(
    factory: &(dyn Fn() -> Box<dyn Adversary> + Sync),
    m: usize,
    bound: &Weight,
    caps: &MinimaxCaps,
    leaves: &AtomicUsize,
    path: Vec<usize>,
    parallel_depth: usize,
) -> MinimaxOutcome {
    if path.len() > caps.max_depth {
        return MinimaxOutcome::Inconclusive {
            reason: format!("depth cap {} exceeded", caps.max_depth),
        };
    }
    let (_adv, state, mv) = replay(factory, &path);
    match mv {
        AdvMove::Stop(stop) => {
            let n = leaves.fetch_add(1, Ordering::Relaxed) + 1;
            if n > caps.max_leaves {
                return MinimaxOutcome::Inconclusive {
                    reason: format!("leaf cap {} exceeded", caps.max_leaves),
                };
            }
            if let Some(reason) = stop.failure {
                return MinimaxOutcome::Inconclusive {
                    reason: format!("adversary failed on path {path:?}: {reason}"),
                };
            }
            if let Some(bad) = stop.audits.iter().find(|a| !a.passed) {
                return MinimaxOutcome::Refuted {
                    path,
                    reason: format!("invariant audit {} failed: {}", bad.name, bad.detail),
                };
            }
            let Some(cert) = stop.certificate else {
                return MinimaxOutcome::Inconclusive {
                    reason: format!("no certificate on path {path:?}"),
                };
            };
            let instance = state.to_instance();
            match verify_certificate(&instance, &cert.assignment, &cert.claimed) {
                Ok(true) => {}
                Ok(false) => {
                    return MinimaxOutcome::Refuted {
                        path,
                        reason: "certificate witness misses its claim".into(),
                    }
                }
                Err(e) => {
                    return MinimaxOutcome::Refuted { path, reason: format!("bad certificate: {e}") }
                }
            }
            if cert.claimed.is_zero() {
                return MinimaxOutcome::Refuted { path, reason: "zero claimed optimum".into() };
            }
            let ratio = state.makespan() / cert.claimed;
            if ratio >= *bound {
                MinimaxOutcome::Certified { leaves: 1 }
            } else {
                MinimaxOutcome::Refuted {
                    path,
                    reason: format!("ratio {} below bound {}", ratio.decimal(8), bound.decimal(8)),
                }
            }
        }
        AdvMove::Reveal { .. } => {
            let branch = |machine: usize| {
                let mut next = path.clone();
                next.push(machine);
                explore(factory, m, bound, caps, leaves, next, parallel_depth.saturating_sub(1))
            };
            let results: Vec<MinimaxOutcome> = if parallel_depth > 0 {
                super::exec::map_collect((0..m).collect(), branch)
            } else {
                (0..m).map(branch).collect()
            };
            let mut total = 0;
            for r in results {
                match r {
                    MinimaxOutcome::Certified { leaves } => total += leaves,
                    other => return other,
                }
            }
            MinimaxOutcome::Certified { leaves: total }
        }
    }
}

/// Explore every algorithm-response path; `Certified` iff every leaf ends
/// with a verified certificate and exact ratio at least `bound`.
pub fn minimax_certify(
    factory: &(dyn Fn() -> Box<dyn Adversary> + Sync),
    m: usize,
    bound: &Weight,
    caps: MinimaxCaps,
) -> MinimaxOutcome {
    let leaves = AtomicUsize::new(0);
    explore(factory, m, bound, &caps, &leaves, Vec::new(), 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adversaries::{lb2k_adversary, lb53_adversary, omhc_general_n};

    #[test]
    fn lb53_certifies_its_bound() {
        let bound = (Weight::from_int(9) + Weight::sqrt17()) / Weight::from_int(8);
        let outcome = minimax_certify(&|| lb53_adversary(), 2, &bound, MinimaxCaps::default());
        match outcome {
            MinimaxOutcome::Certified { leaves } => assert!(leaves <= 256, "{leaves} leaves"),
            other => panic!("{other:?}"),
        }
        // Strictly above the bound the certification must fail.
        let above = bound + Weight::from_ratio(1, 1000);
        let outcome = minimax_certify(&|| lb53_adversary(), 2, &above, MinimaxCaps::default());
        assert!(matches!(outcome, MinimaxOutcome::Refuted { .. }));
    }

    #[test]
    fn i1i2_certifies_two_for_small_m() {
        for m in 2..=3 {
            let bound = Weight::from_int(2);
            let outcome =
                minimax_certify(&move || lb2k_adversary(m), m, &bound, MinimaxCaps::default());
            assert!(outcome.is_certified(), "m={m}: {outcome:?}");
        }
    }

    #[test]
    fn general_n2_certifies_two() {
        let bound = Weight::from_int(2);
        let outcome =
            minimax_certify(&|| omhc_general_n(2, None), 2, &bound, MinimaxCaps::default());
        match outcome {
            MinimaxOutcome::Certified { leaves } => assert!(leaves <= 16, "{leaves} leaves"),
            other => panic!("{other:?}"),
        }
    }
}
