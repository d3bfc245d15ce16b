//! Non-adaptive adversaries: fixed instances replayed job by job, the
//! rule-fix counterexample, and a seeded random stream for stress tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, Job};
use crate::state::AssignmentState;
use crate::weight::Weight;

use super::coro::{AdvMeta, CoroAdversary};
use super::{Adversary, Certificate, GameStop};

/// Wrap a fixed instance as an adversary. With a certificate the stop is
/// self-certifying; without one the harness falls back to the oracle.
pub fn static_adversary(
    id: &str,
    instance: Instance,
    certificate: Option<Certificate>,
    target_ratio: Weight,
) -> Box<dyn Adversary> {
    let meta = AdvMeta {
        id: id.to_string(),
        m: instance.m,
        initial_k: instance.k,
        target_ratio,
    };
    CoroAdversary::spawn(meta, move |y| {
        for job in &instance.jobs {
            let _ = y.reveal(job.clone())?;
        }
        Ok(GameStop { certificate, failure: None, audits: vec![] })
    })
}

/// The five-job instance on which every algorithm obeying the
/// double-scenario rule is forced to makespan 5 while the optimum is 3:
/// weights (1, 1, 2, 1, 3), S1 = {1, 2, 4, 5}, S2 = {3, 4, 5}.
pub fn rule1_counterexample() -> Instance {
    Instance::new(
        2,
        2,
        vec![
            Job::unit(vec![0]),
            Job::unit(vec![0]),
            Job::new(Weight::from_int(2), vec![1]),
            Job::unit(vec![0, 1]),
            Job::new(Weight::from_int(3), vec![0, 1]),
        ],
    )
}

/// All complete assignments of the counterexample that split the first two
/// jobs and obey the double-scenario rule (with its deterministic
/// tie-break) on jobs 4 and 5. Free choices remain only on jobs 1–3.
pub fn rule1_forced_assignments() -> Vec<Vec<usize>> {
    let inst = rule1_counterexample();
    let mut out = Vec::new();
    for code in 0..(1u32 << inst.n()) {
        let assignment: Vec<usize> =
            (0..inst.n()).map(|j| ((code >> j) & 1) as usize).collect();
        if assignment[0] == assignment[1] {
            continue;
        }
        if crate::algorithms::conforms_to_rule1(&inst, &assignment) {
            out.push(assignment);
        }
    }
    out
}

/// Seeded stream of random unit jobs with K scenarios; stops after n jobs
/// without a certificate (the harness scores it against the oracle).
pub fn random_stream_adversary(m: usize, k: usize, n: usize, seed: u64) -> Box<dyn Adversary> {
    let meta = AdvMeta {
        id: format!("random:{m},{k},{n},{seed}"),
        m,
        initial_k: k,
        target_ratio: Weight::one(),
    };
    CoroAdversary::spawn(meta, move |y| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = AssignmentState::new(m, k);
        for _ in 0..n {
            let mask = rng.gen_range(1..(1u32 << k));
            let scenarios = (0..k).filter(|b| mask >> b & 1 == 1).collect();
            let job = Job::unit(scenarios);
            let machine = y.reveal(job.clone())?;
            state.push(job, machine).expect("valid machine");
        }
        Ok(GameStop { certificate: None, failure: None, audits: vec![] })
    })
}
