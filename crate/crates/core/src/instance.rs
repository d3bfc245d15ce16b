//! The scheduling instance model: `m` identical machines, `K` scenarios
//! (subsets of the job ground set), and jobs revealed in index order with
//! their processing time and scenario memberships.
//!
//! Machines and scenarios are 0-based internally; the JSON interchange
//! format is 1-based.

use serde::{Deserialize, Serialize};

use crate::weight::Weight;

/// One job: processing time and the scenarios it belongs to.
/// A job in no scenario is legal and inert (it contributes to no load).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Job {
    pub p: Weight,
    /// Sorted, deduplicated 0-based scenario indices.
    pub scenarios: Vec<usize>,
}

impl Job {
    pub fn new(p: Weight, mut scenarios: Vec<usize>) -> Self {
        scenarios.sort_unstable();
        scenarios.dedup();
        Job { p, scenarios }
    }

    pub fn unit(scenarios: Vec<usize>) -> Self {
        Job::new(Weight::one(), scenarios)
    }

    pub fn in_scenario(&self, k: usize) -> bool {
        self.scenarios.binary_search(&k).is_ok()
    }
}

/// What the online algorithm sees when a job arrives.
pub type Reveal = Job;

/// A complete instance of scheduling under scenarios.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub m: usize,
    pub k: usize,
    pub jobs: Vec<Job>,
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("machine count must be at least 1")]
    NoMachines,
    #[error("job {job} references scenario {scenario} outside 1..={k}")]
    ScenarioOutOfRange { job: usize, scenario: usize, k: usize },
    #[error("negative processing time on job {0}")]
    NegativeWeight(usize),
}

impl Instance {
    pub fn new(m: usize, k: usize, jobs: Vec<Job>) -> Self {
        Instance { m, k, jobs }
    }

    pub fn empty(m: usize, k: usize) -> Self {
        Instance { m, k, jobs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn validate(&self) -> Result<(), InstanceError> {
        if self.m == 0 {
            return Err(InstanceError::NoMachines);
        }
        for (j, job) in self.jobs.iter().enumerate() {
            if job.p.is_negative() {
                return Err(InstanceError::NegativeWeight(j + 1));
            }
            for &k in &job.scenarios {
                if k >= self.k {
                    return Err(InstanceError::ScenarioOutOfRange {
                        job: j + 1,
                        scenario: k + 1,
                        k: self.k,
                    });
                }
            }
        }
        Ok(())
    }

    /// The derived job set `S_k` in reveal order.
    pub fn scenario_jobs(&self, k: usize) -> Vec<usize> {
        (0..self.n()).filter(|&j| self.jobs[j].in_scenario(k)).collect()
    }

    /// Total processing time of `S_k`.
    pub fn scenario_total(&self, k: usize) -> Weight {
        let mut acc = Weight::zero();
        for job in &self.jobs {
            if job.in_scenario(k) {
                acc += &job.p;
            }
        }
        acc
    }

    /// True when every job has unit processing time.
    pub fn is_unit(&self) -> bool {
        self.jobs.iter().all(|j| j.p == Weight::one())
    }

    pub fn truncated(&self, n: usize) -> Instance {
        Instance { m: self.m, k: self.k, jobs: self.jobs[..n].to_vec() }
    }
}

#[derive(Serialize, Deserialize)]
struct JobWire {
    p: Weight,
    scenarios: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct InstanceWire {
    m: usize,
    #[serde(rename = "K")]
    k: usize,
    jobs: Vec<JobWire>,
}

impl Serialize for Instance {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let wire = InstanceWire {
            m: self.m,
            k: self.k,
            jobs: self
                .jobs
                .iter()
                .map(|j| JobWire {
                    p: j.p.clone(),
                    scenarios: j.scenarios.iter().map(|&s| s + 1).collect(),
                })
                .collect(),
        };
        wire.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = InstanceWire::deserialize(de)?;
        let mut jobs = Vec::with_capacity(wire.jobs.len());
        for (idx, j) in wire.jobs.into_iter().enumerate() {
            let mut scenarios = Vec::with_capacity(j.scenarios.len());
            for s in j.scenarios {
                if s == 0 || s > wire.k {
                    return Err(serde::de::Error::custom(format!(
                        "job {}: scenario {} outside 1..={}",
                        idx + 1,
                        s,
                        wire.k
                    )));
                }
                scenarios.push(s - 1);
            }
            jobs.push(Job::new(j.p, scenarios));
        }
        Ok(Instance::new(wire.m, wire.k, jobs))
    }
}
