//! The two-instance adversary showing that with at least three scenarios no
//! algorithm on two (or more) machines beats ratio 2, even for unit jobs.
//!
//! Both instances share their first two jobs. Splitting them walks into the
//! first instance (all later jobs in both of the first two scenarios);
//! co-locating them walks into the second (a third scenario chains the
//! tail). Either way a load of 2 is forced while the optimum stays 1, and
//! the adversary truncates with a certificate the moment that happens.

use crate::instance::{Instance, Job};
use crate::state::AssignmentState;
use crate::weight::Weight;

use super::coro::{AdvMeta, CoroAdversary, Yielder};
use super::{Adversary, Aborted, Certificate, GameStop};

/// First instance: n = m+1 unit jobs, S1 = {1, 3, ..., m+1},
/// S2 = {2, 3, ..., m+1}.
pub fn build_i1(m: usize) -> Result<Instance, String> {
    if m < 2 {
        return Err(format!("need m >= 2 machines, got {m}"));
    }
    let mut jobs = vec![Job::unit(vec![0]), Job::unit(vec![1])];
    jobs.extend((2..m + 1).map(|_| Job::unit(vec![0, 1])));
    Ok(Instance::new(m, 2, jobs))
}

/// Second instance: n = m+2 unit jobs, S1 = {1, 3}, S2 = {2, 4, ..., m+2},
/// S3 = {3, 4, ..., m+2}.
pub fn build_i2(m: usize) -> Result<Instance, String> {
    if m < 2 {
        return Err(format!("need m >= 2 machines, got {m}"));
    }
    let mut jobs = vec![Job::unit(vec![0]), Job::unit(vec![1]), Job::unit(vec![0, 2])];
    jobs.extend((3..m + 2).map(|_| Job::unit(vec![1, 2])));
    Ok(Instance::new(m, 3, jobs))
}

/// Witness with optimum 1 for the first j jobs of the I1 line: the two
/// opening jobs share a machine, every later job gets its own.
fn i1_witness(j: usize) -> Vec<usize> {
    let mut w = vec![0, 0];
    w.extend((2..j).map(|i| i - 1));
    w.truncate(j);
    w
}

/// Witness with optimum 1 for the first j jobs of the I2 line: job 3 joins
/// job 2, job 1 joins job 4's machine, later jobs get fresh machines.
fn i2_witness(j: usize) -> Vec<usize> {
    let mut w = vec![1, 0, 0];
    w.extend((3..j).map(|i| i - 2));
    w.truncate(j);
    w
}

pub fn lb2k_adversary(m: usize) -> Box<dyn Adversary> {
    assert!(m >= 2, "need at least two machines");
    let meta = AdvMeta {
        id: format!("i1i2:{m}"),
        m,
        initial_k: 3,
        target_ratio: Weight::from_int(2),
    };
    CoroAdversary::spawn(meta, move |y| body(y, m))
}

fn body(y: &Yielder, m: usize) -> Result<GameStop, Aborted> {
    let mut state = AssignmentState::new(m, 3);
    let push = |state: &mut AssignmentState, y: &Yielder, job: Job| -> Result<(), Aborted> {
        let machine = y.reveal(job.clone())?;
        state.push(job, machine).expect("machine in range");
        Ok(())
    };
    push(&mut state, y, Job::unit(vec![0]))?;
    push(&mut state, y, Job::unit(vec![1]))?;
    let two = Weight::from_int(2);
    if state.assignment()[0] != state.assignment()[1] {
        // I1 line: the pigeonhole forces two conflicting jobs together.
        for _ in 2..m + 1 {
            push(&mut state, y, Job::unit(vec![0, 1]))?;
            if state.makespan() == two {
                let cert = Certificate {
                    assignment: i1_witness(state.n()),
                    claimed: Weight::one(),
                };
                return Ok(GameStop::success(cert, vec![]));
            }
        }
        unreachable!("m+1 jobs on m machines must co-locate a conflicting pair")
    } else {
        // I2 line: the third scenario forces the tail onto distinct
        // machines, one of which already hosts a conflicting opener.
        push(&mut state, y, Job::unit(vec![0, 2]))?;
        if state.makespan() == two {
            let cert =
                Certificate { assignment: i2_witness(3), claimed: Weight::one() };
            return Ok(GameStop::success(cert, vec![]));
        }
        for _ in 3..m + 2 {
            push(&mut state, y, Job::unit(vec![1, 2]))?;
            if state.makespan() == two {
                let cert = Certificate {
                    assignment: i2_witness(state.n()),
                    claimed: Weight::one(),
                };
                return Ok(GameStop::success(cert, vec![]));
            }
        }
        unreachable!("the tail cannot avoid both openers and itself")
    }
}
