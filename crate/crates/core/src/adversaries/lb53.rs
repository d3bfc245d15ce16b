//! The adaptive lower bound for two machines and two scenarios: no
//! deterministic algorithm beats (9+√17)/8.
//!
//! Four unit jobs force a balanced opening (or an immediate ratio 2).
//! With X = 3+√17, a job of weight X pins down a heavy machine, a job of
//! weight X/2 branches the play, and depending on the branch a third heavy
//! job either already yields the bound or sets up the final double-scenario
//! job of weight 2+3X/2, which forces makespan 3+5X/2 against an optimum
//! of 2+3X/2 — exactly (9+√17)/8.

use crate::instance::Job;
use crate::state::AssignmentState;
use crate::weight::Weight;

use super::coro::{AdvMeta, CoroAdversary, Yielder};
use super::{Aborted, Adversary, Certificate, GameStop};

fn x() -> Weight {
    Weight::from_int(3) + Weight::sqrt17()
}

/// The bound (9+√17)/8.
pub fn lb53_target() -> Weight {
    (Weight::from_int(9) + Weight::sqrt17()) / Weight::from_int(8)
}

pub fn lb53_adversary() -> Box<dyn Adversary> {
    let meta = AdvMeta {
        id: "lb53".into(),
        m: 2,
        initial_k: 2,
        target_ratio: lb53_target(),
    };
    CoroAdversary::spawn(meta, body)
}

fn body(y: &Yielder) -> Result<GameStop, Aborted> {
    let mut state = AssignmentState::new(2, 2);
    let push = |state: &mut AssignmentState, y: &Yielder, job: Job| -> Result<usize, Aborted> {
        let machine = y.reveal(job.clone())?;
        state.push(job, machine).expect("machine in range");
        Ok(machine)
    };

    // Four unit jobs; any co-location of a conflicting pair is ratio 2.
    let u1 = push(&mut state, y, Job::unit(vec![0]))?;
    let u2 = push(&mut state, y, Job::unit(vec![0]))?;
    if u1 == u2 {
        let cert = Certificate { assignment: vec![0, 1], claimed: Weight::one() };
        return Ok(GameStop::success(cert, vec![]));
    }
    let u3 = push(&mut state, y, Job::unit(vec![1]))?;
    let u4 = push(&mut state, y, Job::unit(vec![1]))?;
    if u3 == u4 {
        let cert = Certificate { assignment: vec![0, 1, 0, 1], claimed: Weight::one() };
        return Ok(GameStop::success(cert, vec![]));
    }

    let x = x();
    let half_x = x.clone() / Weight::from_int(2);

    // The heavy first-scenario job names the logical first machine.
    let heavy = push(&mut state, y, Job::new(x.clone(), vec![0]))?;

    let sixth = push(&mut state, y, Job::new(half_x.clone(), vec![1]))?;

    if sixth == heavy {
        // Branch (i): another heavy second-scenario job.
        let seventh = push(&mut state, y, Job::new(x.clone(), vec![1]))?;
        if seventh == heavy {
            // Makespan 1 + 3X/2 against optimum X: co-locate jobs 5 and 7.
            let mut witness = vec![0usize; 7];
            witness[4] = 1;
            witness[6] = 1;
            let cert = Certificate { assignment: witness, claimed: x.clone() };
            debug_assert_eq!(state.makespan(), Weight::one() + x.clone() * Weight::from_ratio(3, 2));
            return Ok(GameStop::success(cert, vec![]));
        }
    } else {
        // Branch (ii): a double-scenario job of weight X/2.
        let seventh = push(&mut state, y, Job::new(half_x.clone(), vec![0, 1]))?;
        if seventh == heavy {
            // Makespan 1 + 3X/2 against optimum X: co-locate jobs 5 and 6.
            let mut witness = vec![0usize; 7];
            witness[4] = 1;
            witness[5] = 1;
            let cert = Certificate { assignment: witness, claimed: x.clone() };
            debug_assert_eq!(state.makespan(), Weight::one() + x.clone() * Weight::from_ratio(3, 2));
            return Ok(GameStop::success(cert, vec![]));
        }
    }

    // Both branches now have p(S1 ∩ J_heavy) = p(S2 ∩ J_other) = 1 + X.
    let final_weight = Weight::from_int(2) + x.clone() * Weight::from_ratio(3, 2);
    let _ = push(&mut state, y, Job::new(final_weight.clone(), vec![0, 1]))?;
    let expected = Weight::from_int(3) + x.clone() * Weight::from_ratio(5, 2);
    assert_eq!(
        state.makespan(),
        expected,
        "the final double-scenario job must force makespan 3 + 5X/2"
    );
    // Optimum 2 + 3X/2: first seven jobs on one machine, the last alone.
    let mut witness = vec![0usize; 8];
    witness[7] = 1;
    let cert = Certificate { assignment: witness, claimed: final_weight };
    Ok(GameStop::success(cert, vec![]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{exact_opt, verify_certificate};

    #[test]
    fn target_is_nine_plus_root_seventeen_over_eight() {
        let t = lb53_target();
        assert!(t.decimal(6).starts_with("1.640388"));
        // (3 + 5X/2) / (2 + 3X/2) equals the target exactly.
        let x = x();
        let ratio = (Weight::from_int(3) + x.clone() * Weight::from_ratio(5, 2))
            / (Weight::from_int(2) + x.clone() * Weight::from_ratio(3, 2));
        assert_eq!(ratio, t);
        // And so does (1 + 3X/2) / X.
        let early = (Weight::one() + x.clone() * Weight::from_ratio(3, 2)) / x;
        assert_eq!(early, t);
    }

    /// The full-play certificate claims the true optimum, not just an upper
    /// bound: check against the exact oracle on the 8-job instance.
    #[test]
    fn full_play_certificate_is_tight() {
        let x = x();
        let jobs = vec![
            Job::unit(vec![0]),
            Job::unit(vec![0]),
            Job::unit(vec![1]),
            Job::unit(vec![1]),
            Job::new(x.clone(), vec![0]),
            Job::new(x.clone() / Weight::from_int(2), vec![1]),
            Job::new(x.clone(), vec![1]),
            Job::new(Weight::from_int(2) + x.clone() * Weight::from_ratio(3, 2), vec![0, 1]),
        ];
        let inst = crate::instance::Instance::new(2, 2, jobs);
        let opt = exact_opt(&inst).unwrap();
        let claimed = Weight::from_int(2) + x * Weight::from_ratio(3, 2);
        assert_eq!(opt.value, claimed);
        let mut witness = vec![0usize; 8];
        witness[7] = 1;
        assert!(verify_certificate(&inst, &witness, &claimed).unwrap());
    }
}
