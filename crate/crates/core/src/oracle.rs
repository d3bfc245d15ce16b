//! Exact offline optimum via exhaustive search with branch and bound,
//! plus certificate verification and the standard averaging lower bound.
//!
//! Instances whose weights are all rational are scaled to exact integers
//! and solved by a makespan-feasibility binary search; everything else
//! (the √17 constructions are tiny) goes through a direct branch and bound
//! on exact weights. Both paths break machine symmetry canonically: a job
//! may only open the lowest-indexed previously unused machine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::instance::Instance;
use crate::state::load_matrix;
use crate::weight::Weight;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} jobs, over the search cap of {cap}; verify a certificate instead")]
    OverCap { n: usize, cap: usize },
    #[error("assignment covers {given} of {wanted} jobs")]
    IncompleteAssignment { given: usize, wanted: usize },
    #[error("machine {0} out of range 1..={1}")]
    MachineOutOfRange(usize, usize),
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Refuse exhaustive search above this many jobs.
    pub job_cap: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { job_cap: 16 }
    }
}

/// Optimal value together with a witness assignment achieving it.
#[derive(Clone, Debug)]
pub struct OptResult {
    pub value: Weight,
    pub assignment: Vec<usize>,
}

/// `max(max_j p_j, max_k p(S_k)/m)` — the two classic lower bounds on the
/// offline optimum.
pub fn lower_bound_avg(instance: &Instance) -> Weight {
    let mut bound = Weight::zero();
    for job in &instance.jobs {
        if job.p > bound {
            bound = job.p.clone();
        }
    }
    let m = Weight::from_int(instance.m as i64);
    for k in 0..instance.k {
        let avg = instance.scenario_total(k) / m.clone();
        if avg > bound {
            bound = avg;
        }
    }
    bound
}

/// True iff the complete assignment achieves makespan at most `claimed`.
pub fn verify_certificate(
    instance: &Instance,
    assignment: &[usize],
    claimed: &Weight,
) -> Result<bool, OracleError> {
    if assignment.len() != instance.n() {
        return Err(OracleError::IncompleteAssignment {
            given: assignment.len(),
            wanted: instance.n(),
        });
    }
    let loads = load_matrix(instance, assignment).map_err(|e| match e {
        crate::state::StateError::MachineOutOfRange(a, b) => OracleError::MachineOutOfRange(a, b),
        _ => unreachable!(),
    })?;
    Ok(loads.makespan() <= *claimed)
}

pub fn exact_opt(instance: &Instance) -> Result<OptResult, OracleError> {
    exact_opt_with(instance, &OracleConfig::default())
}

pub fn exact_opt_with(
    instance: &Instance,
    cfg: &OracleConfig,
) -> Result<OptResult, OracleError> {
    if instance.n() > cfg.job_cap {
        return Err(OracleError::OverCap { n: instance.n(), cap: cfg.job_cap });
    }
    if instance.n() == 0 {
        return Ok(OptResult { value: Weight::zero(), assignment: vec![] });
    }
    match IntegerView::try_from_instance(instance) {
        Some(view) => Ok(view.solve()),
        None => Ok(solve_weights(instance)),
    }
}

/// Reference implementation: scan all m^n assignments. Test oracle for the
/// pruned search; exponential, keep n small.
pub fn exhaustive_opt(instance: &Instance) -> OptResult {
    let n = instance.n();
    let m = instance.m;
    let mut best_value: Option<Weight> = None;
    let mut best_assignment = vec![0; n];
    let mut assignment = vec![0usize; n];
    loop {
        let loads = load_matrix(instance, &assignment).expect("valid machines");
        let value = loads.makespan();
        if best_value.as_ref().is_none_or(|b| value < *b) {
            best_value = Some(value);
            best_assignment = assignment.clone();
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == n {
                return OptResult {
                    value: best_value.unwrap_or_else(Weight::zero),
                    assignment: best_assignment,
                };
            }
            assignment[pos] += 1;
            if assignment[pos] < m {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Job order used by both search paths: decreasing weight, then decreasing
/// scenario count, then original index. Tightens pruning; correctness is
/// unaffected.
fn search_order(instance: &Instance) -> Vec<usize> {
    let mut order: Vec<usize> = (0..instance.n()).collect();
    order.sort_by(|&a, &b| {
        let ja = &instance.jobs[a];
        let jb = &instance.jobs[b];
        jb.p.cmp(&ja.p)
            .then(jb.scenarios.len().cmp(&ja.scenarios.len()))
            .then(a.cmp(&b))
    });
    order
}

/// Greedy warm start: assign in search order to the machine minimizing the
/// resulting maximum load over the job's scenarios.
fn greedy_assignment(instance: &Instance, order: &[usize]) -> Vec<usize> {
    let mut assignment = vec![0usize; instance.n()];
    let mut loads = vec![vec![Weight::zero(); instance.k]; instance.m];
    for &j in order {
        let job = &instance.jobs[j];
        let mut best = 0usize;
        let mut best_val: Option<Weight> = None;
        for (i, machine_loads) in loads.iter().enumerate() {
            let mut worst = Weight::zero();
            for &k in &job.scenarios {
                let v = machine_loads[k].clone() + job.p.clone();
                if v > worst {
                    worst = v;
                }
            }
            if best_val.as_ref().is_none_or(|b| worst < *b) {
                best_val = Some(worst);
                best = i;
            }
        }
        assignment[j] = best;
        for &k in &job.scenarios {
            loads[best][k] += &job.p;
        }
    }
    assignment
}

// ---------------------------------------------------------------------
// Integer path
// ---------------------------------------------------------------------

struct IntegerView {
    m: usize,
    k: usize,
    /// Scaled integer weights in original job order.
    weights: Vec<u64>,
    scenarios: Vec<Vec<usize>>,
    order: Vec<usize>,
    scale: BigInt,
}

impl IntegerView {
    fn try_from_instance(instance: &Instance) -> Option<IntegerView> {
        let mut lcm = BigInt::one();
        for job in &instance.jobs {
            if !job.p.is_rational() || job.p.is_negative() {
                return None;
            }
            lcm = lcm.lcm(job.p.rational_part().denom());
        }
        let mut weights = Vec::with_capacity(instance.n());
        let mut total: u64 = 0;
        for job in &instance.jobs {
            let scaled = (job.p.rational_part() * &lcm).to_integer();
            let w = scaled.to_u64()?;
            total = total.checked_add(w.checked_mul(instance.k.max(1) as u64)?)?;
            if total > u64::MAX / 4 {
                return None;
            }
            weights.push(w);
        }
        Some(IntegerView {
            m: instance.m,
            k: instance.k,
            weights,
            scenarios: instance.jobs.iter().map(|j| j.scenarios.clone()).collect(),
            order: search_order(instance),
            scale: lcm,
        })
    }

    fn makespan_of(&self, assignment: &[usize]) -> u64 {
        let mut loads = vec![0u64; self.m * self.k];
        for (j, &i) in assignment.iter().enumerate() {
            for &k in &self.scenarios[j] {
                loads[i * self.k + k] += self.weights[j];
            }
        }
        loads.iter().copied().max().unwrap_or(0)
    }

    fn lower_bound(&self) -> u64 {
        let mut bound = self.weights.iter().copied().max().unwrap_or(0);
        for k in 0..self.k {
            let tot: u64 = (0..self.weights.len())
                .filter(|&j| self.scenarios[j].contains(&k))
                .map(|j| self.weights[j])
                .sum();
            bound = bound.max(tot.div_ceil(self.m as u64));
        }
        bound
    }

    /// Depth-first feasibility test for makespan ≤ bound, canonical machine
    /// opening, loads pruned against the bound.
    fn feasible(&self, bound: u64) -> Option<Vec<usize>> {
        let mut assignment = vec![usize::MAX; self.weights.len()];
        let mut loads = vec![0u64; self.m * self.k];
        if self.dfs(0, bound, 0, &mut loads, &mut assignment) {
            Some(assignment)
        } else {
            None
        }
    }

    fn dfs(
        &self,
        depth: usize,
        bound: u64,
        used: usize,
        loads: &mut [u64],
        assignment: &mut [usize],
    ) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let j = self.order[depth];
        let w = self.weights[j];
        let limit = (used + 1).min(self.m);
        for i in 0..limit {
            let fits = self.scenarios[j].iter().all(|&k| loads[i * self.k + k] + w <= bound);
            if !fits {
                continue;
            }
            for &k in &self.scenarios[j] {
                loads[i * self.k + k] += w;
            }
            assignment[j] = i;
            let new_used = used.max(i + 1);
            if self.dfs(depth + 1, bound, new_used, loads, assignment) {
                return true;
            }
            for &k in &self.scenarios[j] {
                loads[i * self.k + k] -= w;
            }
            assignment[j] = usize::MAX;
            // A job that changes no loads fails on every machine if it
            // fails on one; trying further machines only repeats work.
            if w == 0 || self.scenarios[j].is_empty() {
                break;
            }
        }
        false
    }

    fn solve(&self) -> OptResult {
        let lb = self.lower_bound();
        let greedy = {
            // greedy on scaled integers, in search order
            let mut assignment = vec![0usize; self.weights.len()];
            let mut loads = vec![0u64; self.m * self.k];
            for &j in &self.order {
                let w = self.weights[j];
                let mut best = 0usize;
                let mut best_val = u64::MAX;
                for i in 0..self.m {
                    let worst = self
                        .scenarios[j]
                        .iter()
                        .map(|&k| loads[i * self.k + k] + w)
                        .max()
                        .unwrap_or(0);
                    if worst < best_val {
                        best_val = worst;
                        best = i;
                    }
                }
                assignment[j] = best;
                for &k in &self.scenarios[j] {
                    loads[best * self.k + k] += w;
                }
            }
            assignment
        };
        let mut best_assignment = greedy;
        let mut ub = self.makespan_of(&best_assignment);
        // Binary search the optimum value; feasibility is monotone in it.
        let mut lo = lb;
        while lo < ub {
            let mid = lo + (ub - lo) / 2;
            match self.feasible(mid) {
                Some(assignment) => {
                    best_assignment = assignment;
                    ub = mid;
                }
                None => lo = mid + 1,
            }
        }
        let value_scaled = BigInt::from(self.makespan_of(&best_assignment));
        let value = Weight::new(
            num_rational::BigRational::new(value_scaled, self.scale.clone()),
            num_rational::BigRational::zero(),
        );
        OptResult { value, assignment: best_assignment }
    }
}

// ---------------------------------------------------------------------
// General path: branch and bound on exact weights
// ---------------------------------------------------------------------

fn solve_weights(instance: &Instance) -> OptResult {
    let order = search_order(instance);
    let mut incumbent_assignment = greedy_assignment(instance, &order);
    let mut incumbent = load_matrix(instance, &incumbent_assignment)
        .expect("greedy assignment valid")
        .makespan();
    let lb = lower_bound_avg(instance);
    if incumbent > lb {
        let mut loads = vec![vec![Weight::zero(); instance.k]; instance.m];
        let mut assignment = vec![0usize; instance.n()];
        branch(
            instance,
            &order,
            0,
            0,
            &Weight::zero(),
            &mut loads,
            &mut assignment,
            &mut incumbent,
            &mut incumbent_assignment,
            &lb,
        );
    }
    OptResult { value: incumbent, assignment: incumbent_assignment }
}

#[allow(clippy::too_many_arguments)]
fn branch(
    instance: &Instance,
    order: &[usize],
    depth: usize,
    used: usize,
    current_max: &Weight,
    loads: &mut Vec<Vec<Weight>>,
    assignment: &mut Vec<usize>,
    incumbent: &mut Weight,
    incumbent_assignment: &mut Vec<usize>,
    lb: &Weight,
) -> bool {
    // Returns true when the search can stop globally (incumbent hit lb).
    if depth == order.len() {
        if *current_max < *incumbent {
            *incumbent = current_max.clone();
            *incumbent_assignment = assignment.clone();
        }
        return *incumbent <= *lb;
    }
    let j = order[depth];
    let job = &instance.jobs[j];
    let limit = (used + 1).min(instance.m);
    for i in 0..limit {
        let mut new_max = current_max.clone();
        for &k in &job.scenarios {
            let v = loads[i][k].clone() + job.p.clone();
            if v > new_max {
                new_max = v;
            }
        }
        if new_max >= *incumbent {
            continue;
        }
        for &k in &job.scenarios {
            loads[i][k] += &job.p;
        }
        assignment[j] = i;
        let stop = branch(
            instance,
            order,
            depth + 1,
            used.max(i + 1),
            &new_max,
            loads,
            assignment,
            incumbent,
            incumbent_assignment,
            lb,
        );
        for &k in &job.scenarios {
            loads[i][k] -= &job.p;
        }
        if stop {
            return true;
        }
    }
    false
}
