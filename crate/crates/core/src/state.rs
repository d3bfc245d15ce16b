//! Load and completion-time accounting for a (prefix of a) schedule.
//!
//! [`AssignmentState`] is the engine's incremental view of a game: the jobs
//! revealed so far, their machine assignments, the per-(machine, scenario)
//! load table, per-job completion times and the running makespan. Everything
//! is recomputable from scratch, which the tests exploit.

use crate::instance::{Instance, Job, Reveal};
use crate::weight::{weight_sum, Weight};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum StateError {
    #[error("machine {0} out of range 1..={1}")]
    MachineOutOfRange(usize, usize),
    #[error("assignment covers {given} jobs but {wanted} were requested")]
    IncompleteAssignment { given: usize, wanted: usize },
    #[error("job {0} is not assigned")]
    Unassigned(usize),
}

/// The m×K table of loads `p(J_i ∩ S_k)`. All entries are nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadMatrix {
    m: usize,
    k: usize,
    cells: Vec<Weight>,
}

impl LoadMatrix {
    pub fn zero(m: usize, k: usize) -> Self {
        LoadMatrix { m, k, cells: vec![Weight::zero(); m * k] }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, machine: usize, scenario: usize) -> &Weight {
        &self.cells[machine * self.k + scenario]
    }

    pub fn add(&mut self, machine: usize, scenario: usize, w: &Weight) {
        self.cells[machine * self.k + scenario] += w;
    }

    /// Grow the scenario dimension, padding with zero loads.
    pub fn grow_k(&mut self, new_k: usize) {
        if new_k <= self.k {
            return;
        }
        let mut cells = vec![Weight::zero(); self.m * new_k];
        for i in 0..self.m {
            for k in 0..self.k {
                cells[i * new_k + k] = self.cells[i * self.k + k].clone();
            }
        }
        self.k = new_k;
        self.cells = cells;
    }

    /// Largest load on the given machine over all scenarios (zero if K = 0).
    pub fn machine_max(&self, machine: usize) -> Weight {
        let mut best = Weight::zero();
        for k in 0..self.k {
            let v = self.get(machine, k);
            if *v > best {
                best = v.clone();
            }
        }
        best
    }

    /// The makespan: largest entry of the table, zero for an empty table.
    pub fn makespan(&self) -> Weight {
        let mut best = Weight::zero();
        for c in &self.cells {
            if *c > best {
                best = c.clone();
            }
        }
        best
    }

    /// All `(machine, scenario)` cells attaining the makespan.
    /// Empty when the table is all-zero.
    pub fn makespan_cells(&self) -> Vec<(usize, usize)> {
        let ms = self.makespan();
        if ms.is_zero() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for i in 0..self.m {
            for k in 0..self.k {
                if *self.get(i, k) == ms {
                    out.push((i, k));
                }
            }
        }
        out
    }
}

/// Compute the load matrix of an assignment prefix from scratch.
///
/// `assignment[j]` is the 0-based machine of job `j`; it may cover only a
/// prefix of the instance's jobs.
pub fn load_matrix(instance: &Instance, assignment: &[usize]) -> Result<LoadMatrix, StateError> {
    let mut loads = LoadMatrix::zero(instance.m, instance.k);
    for (j, &machine) in assignment.iter().enumerate() {
        if machine >= instance.m {
            return Err(StateError::MachineOutOfRange(machine + 1, instance.m));
        }
        for &k in &instance.jobs[j].scenarios {
            loads.add(machine, k, &instance.jobs[j].p);
        }
    }
    Ok(loads)
}

/// Makespan of a load matrix (maximum entry; zero when empty).
pub fn makespan(loads: &LoadMatrix) -> Weight {
    loads.makespan()
}

/// Completion time `C_j = max_{k : j ∈ S_k} C_j^k` of an assigned job,
/// where `C_j^k` sums the processing times of jobs `j' ≤ j` on the same
/// machine belonging to `S_k`. Zero for a job in no scenario.
pub fn completion_time(
    instance: &Instance,
    assignment: &[usize],
    job: usize,
) -> Result<Weight, StateError> {
    if job >= assignment.len() {
        return Err(StateError::Unassigned(job + 1));
    }
    let machine = assignment[job];
    if machine >= instance.m {
        return Err(StateError::MachineOutOfRange(machine + 1, instance.m));
    }
    let mut best = Weight::zero();
    for &k in &instance.jobs[job].scenarios {
        let c = weight_sum(
            (0..=job)
                .filter(|&j2| assignment[j2] == machine && instance.jobs[j2].in_scenario(k))
                .map(|j2| &instance.jobs[j2].p),
        );
        if c > best {
            best = c;
        }
    }
    Ok(best)
}

/// Incremental game state: revealed jobs, assignments, loads, completions.
#[derive(Clone, Debug)]
pub struct AssignmentState {
    m: usize,
    k: usize,
    jobs: Vec<Job>,
    assignment: Vec<usize>,
    loads: LoadMatrix,
    completions: Vec<Weight>,
    makespans: Vec<Weight>,
    scenario_totals: Vec<Weight>,
}

impl AssignmentState {
    pub fn new(m: usize, k: usize) -> Self {
        AssignmentState {
            m,
            k,
            jobs: Vec::new(),
            assignment: Vec::new(),
            loads: LoadMatrix::zero(m, k),
            completions: Vec::new(),
            makespans: Vec::new(),
            scenario_totals: vec![Weight::zero(); k],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn loads(&self) -> &LoadMatrix {
        &self.loads
    }

    pub fn load(&self, machine: usize, scenario: usize) -> &Weight {
        self.loads.get(machine, scenario)
    }

    /// Load of a cell, treating scenarios not seen yet as empty. Reveals
    /// may introduce fresh scenario indices (hyperedges created by an
    /// adaptive opponent), which only enter the table on push.
    pub fn load_or_zero(&self, machine: usize, scenario: usize) -> Weight {
        if scenario < self.k {
            self.loads.get(machine, scenario).clone()
        } else {
            Weight::zero()
        }
    }

    /// Machine that received the most recent job, if any.
    pub fn last_machine(&self) -> Option<usize> {
        self.assignment.last().copied()
    }

    /// Completion time of job `j` (0-based), already assigned.
    pub fn completion(&self, j: usize) -> &Weight {
        &self.completions[j]
    }

    pub fn completions(&self) -> &[Weight] {
        &self.completions
    }

    /// Current makespan (max over machines and scenarios of the load).
    pub fn makespan(&self) -> Weight {
        self.makespans.last().cloned().unwrap_or_else(Weight::zero)
    }

    /// Makespan after the first `j` jobs (`j = 0` gives zero).
    pub fn makespan_at(&self, j: usize) -> Weight {
        if j == 0 {
            Weight::zero()
        } else {
            self.makespans[j - 1].clone()
        }
    }

    /// Total processing time of scenario `k` among revealed jobs.
    pub fn scenario_total(&self, k: usize) -> &Weight {
        &self.scenario_totals[k]
    }

    /// Reveal a job and assign it to `machine`. Scenario indices beyond the
    /// current `K` grow the table (used by the hypergraph adversaries where
    /// hyperedges are created adaptively).
    pub fn push(&mut self, reveal: Reveal, machine: usize) -> Result<(), StateError> {
        if machine >= self.m {
            return Err(StateError::MachineOutOfRange(machine + 1, self.m));
        }
        if let Some(&max_k) = reveal.scenarios.iter().max() {
            if max_k >= self.k {
                self.k = max_k + 1;
                self.loads.grow_k(self.k);
                self.scenario_totals.resize(self.k, Weight::zero());
            }
        }
        let mut completion = Weight::zero();
        for &k in &reveal.scenarios {
            self.loads.add(machine, k, &reveal.p);
            self.scenario_totals[k] += &reveal.p;
            let c = self.loads.get(machine, k);
            if *c > completion {
                completion = c.clone();
            }
        }
        let makespan = self.makespan().max(completion.clone());
        self.makespans.push(makespan);
        self.completions.push(completion);
        self.assignment.push(machine);
        self.jobs.push(reveal);
        Ok(())
    }

    /// Retroactively add an already-assigned job to a scenario: used for
    /// hypergraph play where a newly created hyperedge may contain nodes
    /// revealed earlier. Loads and the makespan are updated; recorded
    /// completion times keep their reveal-time values (the hypergraph games
    /// only evaluate loads).
    pub fn backfill(&mut self, job: usize, scenario: usize) -> Result<(), StateError> {
        if job >= self.jobs.len() {
            return Err(StateError::Unassigned(job + 1));
        }
        if scenario >= self.k {
            self.k = scenario + 1;
            self.loads.grow_k(self.k);
            self.scenario_totals.resize(self.k, Weight::zero());
        }
        if self.jobs[job].in_scenario(scenario) {
            return Ok(());
        }
        let p = self.jobs[job].p.clone();
        let machine = self.assignment[job];
        self.loads.add(machine, scenario, &p);
        self.scenario_totals[scenario] += &p;
        self.jobs[job].scenarios.push(scenario);
        self.jobs[job].scenarios.sort_unstable();
        let cell = self.loads.get(machine, scenario).clone();
        if let Some(last) = self.makespans.last_mut() {
            if cell > *last {
                *last = cell;
            }
        }
        Ok(())
    }

    /// The instance formed by the jobs revealed so far.
    pub fn to_instance(&self) -> Instance {
        Instance::new(self.m, self.k, self.jobs.clone())
    }

    /// Jobs whose completion time equals the current makespan.
    pub fn makespan_attaining_jobs(&self) -> Vec<usize> {
        let ms = self.makespan();
        (0..self.n()).filter(|&j| self.completions[j] == ms).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Weight;
    use rand::{Rng, SeedableRng};

    /// Instance I1 from the two-machine lower bound: unit jobs with
    /// S1 = {1, 3}, S2 = {2, 3} for m = 2.
    fn i1_m2() -> Instance {
        Instance::new(
            2,
            2,
            vec![Job::unit(vec![0]), Job::unit(vec![1]), Job::unit(vec![0, 1])],
        )
    }

    #[test]
    fn load_matrix_on_small_instance() {
        let inst = i1_m2();
        let loads = load_matrix(&inst, &[0, 1, 0]).unwrap();
        assert_eq!(*loads.get(0, 0), Weight::from_int(2));
        assert_eq!(loads.makespan(), Weight::from_int(2));
        // The offline split {1,2} | {3} achieves makespan 1.
        let off = load_matrix(&inst, &[0, 0, 1]).unwrap();
        assert_eq!(makespan(&off), Weight::one());
    }

    #[test]
    fn empty_prefix_is_all_zero() {
        let inst = i1_m2();
        let loads = load_matrix(&inst, &[]).unwrap();
        assert_eq!(makespan(&loads), Weight::zero());
    }

    #[test]
    fn single_job_single_scenario() {
        let inst = Instance::new(2, 2, vec![Job::new(Weight::from_int(5), vec![0])]);
        let loads = load_matrix(&inst, &[0]).unwrap();
        assert_eq!(*loads.get(0, 0), Weight::from_int(5));
        assert_eq!(*loads.get(0, 1), Weight::zero());
        assert_eq!(*loads.get(1, 0), Weight::zero());
        assert_eq!(completion_time(&inst, &[0], 0).unwrap(), Weight::from_int(5));
    }

    #[test]
    fn completion_time_takes_max_over_scenarios() {
        let inst = i1_m2();
        let c3 = completion_time(&inst, &[0, 1, 0], 2).unwrap();
        assert_eq!(c3, Weight::from_int(2));
    }

    #[test]
    fn job_in_no_scenario_has_zero_completion() {
        let inst = Instance::new(2, 2, vec![Job::new(Weight::from_int(4), vec![])]);
        assert_eq!(completion_time(&inst, &[0], 0).unwrap(), Weight::zero());
        let loads = load_matrix(&inst, &[0]).unwrap();
        assert_eq!(makespan(&loads), Weight::zero());
    }

    #[test]
    fn invalid_machine_rejected() {
        let inst = i1_m2();
        assert!(matches!(
            load_matrix(&inst, &[2]),
            Err(StateError::MachineOutOfRange(3, 2))
        ));
    }

    #[test]
    fn incremental_state_matches_scratch_recomputation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let m = rng.gen_range(1..=4);
            let k = rng.gen_range(0..=4usize);
            let n = rng.gen_range(0..=10);
            let mut state = AssignmentState::new(m, k);
            let mut jobs = Vec::new();
            let mut assignment = Vec::new();
            let mut prev_makespan = Weight::zero();
            for _ in 0..n {
                let p = Weight::from_ratio(rng.gen_range(0..=10), rng.gen_range(1..=4));
                let scen: Vec<usize> =
                    (0..k).filter(|_| rng.gen_bool(0.5)).collect();
                let job = Job::new(p, scen);
                let machine = rng.gen_range(0..m);
                state.push(job.clone(), machine).unwrap();
                jobs.push(job);
                assignment.push(machine);
                let inst = Instance::new(m, k, jobs.clone());
                let fresh = load_matrix(&inst, &assignment).unwrap();
                assert_eq!(fresh, *state.loads());
                let j = jobs.len() - 1;
                assert_eq!(
                    completion_time(&inst, &assignment, j).unwrap(),
                    *state.completion(j)
                );
                // makespan is nondecreasing in the prefix length
                assert!(state.makespan() >= prev_makespan);
                prev_makespan = state.makespan();
                assert_eq!(state.makespan(), makespan(&fresh));
            }
        }
    }
}
