//! Lower-bound constructions as executable adaptive opponents.
//!
//! An adversary is a resumable state machine: the harness asks it for the
//! next move (a job reveal or a stop), feeding back the algorithm's machine
//! choice after every reveal. The adaptive constructions are written as
//! plain recursive generator functions running on a dedicated thread; the
//! [`Yielder`] rendezvous channel turns them into `next()`-style state
//! machines without hand-rolled state enums.
//!
//! Every successful stop ships a certificate: an explicit assignment (for
//! the hypergraph adversaries, the maintained proper coloring) witnessing
//! the claimed offline optimum. A stop without a certificate is an honest
//! failure and is reported as such, never as success.

mod coro;
mod general;
mod lb2k;
mod lb53;
mod omhc3;
mod sizes;
mod statics;

pub use coro::{Aborted, CoroAdversary, Yielder};
pub use general::{omhc_general_i, omhc_general_l, omhc_general_n, GeneralOutcomeKind};
pub use lb2k::{build_i1, build_i2, lb2k_adversary};
pub use lb53::lb53_adversary;
pub use omhc3::{
    lemma_palette_recoloring_check, omhc3_adversary, prop_all_splits_counterexamples,
    prop_bicolored_check, GADGET_EDGE_COUNT, GADGET_NODES,
};
pub use sizes::{n_bound, n_bound_within_tower, x_size, x_size_bound_holds, y_size, y_size_as_u64};
pub use statics::{random_stream_adversary, rule1_counterexample, rule1_forced_assignments, static_adversary};

use std::str::FromStr;

use crate::instance::Reveal;
use crate::weight::Weight;

/// An explicit witness for the adversary's claimed offline optimum.
#[derive(Clone, Debug)]
pub struct Certificate {
    /// Machine (or offline color) per revealed job, 0-based.
    pub assignment: Vec<usize>,
    pub claimed: Weight,
}

/// Audit record emitted by an adversary about its own invariants.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Audit {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Audit {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Audit { name: name.into(), passed, detail: detail.into() }
    }
}

/// Terminal report of a game from the adversary's side.
#[derive(Clone, Debug)]
pub struct GameStop {
    pub certificate: Option<Certificate>,
    /// `Some(reason)` marks an honest failure (budget exhausted, internal
    /// assertion); such a stop never counts as success.
    pub failure: Option<String>,
    pub audits: Vec<Audit>,
}

impl GameStop {
    pub fn success(certificate: Certificate, audits: Vec<Audit>) -> Self {
        GameStop { certificate: Some(certificate), failure: None, audits }
    }

    pub fn failed(reason: impl Into<String>, audits: Vec<Audit>) -> Self {
        GameStop { certificate: None, failure: Some(reason.into()), audits }
    }
}

/// Retroactive scenario membership: hypergraph adversaries may create a
/// hyperedge containing nodes revealed earlier (their partial edges were
/// notional singletons until then); the engine accounts the old jobs into
/// the new scenario.
pub type Backfill = (usize, usize); // (0-based job, 0-based scenario)

#[derive(Debug)]
pub enum AdvMove {
    Reveal { job: Reveal, backfill: Vec<Backfill> },
    Stop(GameStop),
}

/// A resumable adaptive opponent.
pub trait Adversary: Send {
    fn id(&self) -> String;
    fn m(&self) -> usize;
    /// Scenario count the game starts with (may grow for hypergraph play).
    fn initial_k(&self) -> usize;
    /// The competitive ratio the construction is designed to force.
    fn target_ratio(&self) -> Weight;
    /// Next move; `response` carries the machine chosen for the previous
    /// reveal (`None` on the first call).
    fn next(&mut self, response: Option<usize>) -> AdvMove;
}

/// Parsed adversary identifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdversaryId {
    Lb53,
    I1I2 { m: usize },
    Rule1,
    Omhc3,
    GeneralI { m: usize, d: usize },
    GeneralL { m: usize, d: usize },
    GeneralN { m: usize },
    RandomStream { m: usize, k: usize, n: usize, seed: u64 },
}

impl AdversaryId {
    /// Instantiate a fresh adversary. `budget` caps revealed nodes for the
    /// recursive hypergraph constructions (a sensible default otherwise).
    pub fn instantiate(&self, budget: Option<usize>) -> Box<dyn Adversary> {
        match *self {
            AdversaryId::Lb53 => lb53_adversary(),
            AdversaryId::I1I2 { m } => lb2k_adversary(m),
            AdversaryId::Rule1 => {
                let inst = rule1_counterexample();
                let cert = Certificate {
                    assignment: vec![0, 0, 0, 0, 1],
                    claimed: Weight::from_int(3),
                };
                static_adversary("rule1", inst, Some(cert), Weight::from_ratio(5, 3))
            }
            AdversaryId::Omhc3 => omhc3_adversary(),
            AdversaryId::GeneralI { m, d } => omhc_general_i(m, d, budget),
            AdversaryId::GeneralL { m, d } => omhc_general_l(m, d, budget),
            AdversaryId::GeneralN { m } => omhc_general_n(m, budget),
            AdversaryId::RandomStream { m, k, n, seed } => {
                random_stream_adversary(m, k, n, seed)
            }
        }
    }
}

impl std::fmt::Display for AdversaryId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdversaryId::Lb53 => write!(f, "lb53"),
            AdversaryId::I1I2 { m } => write!(f, "i1i2:{m}"),
            AdversaryId::Rule1 => write!(f, "rule1"),
            AdversaryId::Omhc3 => write!(f, "omhc3"),
            AdversaryId::GeneralI { m, d } => write!(f, "omhc-i:{m},{d}"),
            AdversaryId::GeneralL { m, d } => write!(f, "omhc-l:{m},{d}"),
            AdversaryId::GeneralN { m } => write!(f, "omhc-n:{m}"),
            AdversaryId::RandomStream { m, k, n, seed } => {
                write!(f, "random:{m},{k},{n},{seed}")
            }
        }
    }
}

impl FromStr for AdversaryId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn nums(text: &str, want: usize) -> Result<Vec<u64>, String> {
            let parts: Vec<_> = text.split(',').collect();
            if parts.len() != want {
                return Err(format!("expected {want} comma-separated numbers in {text:?}"));
            }
            parts
                .iter()
                .map(|p| p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
                .collect()
        }
        if s == "lb53" {
            return Ok(AdversaryId::Lb53);
        }
        if s == "rule1" {
            return Ok(AdversaryId::Rule1);
        }
        if s == "omhc3" {
            return Ok(AdversaryId::Omhc3);
        }
        if let Some(rest) = s.strip_prefix("i1i2:") {
            let v = nums(rest, 1)?;
            return Ok(AdversaryId::I1I2 { m: v[0] as usize });
        }
        if let Some(rest) = s.strip_prefix("omhc-i:") {
            let v = nums(rest, 2)?;
            return Ok(AdversaryId::GeneralI { m: v[0] as usize, d: v[1] as usize });
        }
        if let Some(rest) = s.strip_prefix("omhc-l:") {
            let v = nums(rest, 2)?;
            return Ok(AdversaryId::GeneralL { m: v[0] as usize, d: v[1] as usize });
        }
        if let Some(rest) = s.strip_prefix("omhc-n:") {
            let v = nums(rest, 1)?;
            return Ok(AdversaryId::GeneralN { m: v[0] as usize });
        }
        if let Some(rest) = s.strip_prefix("random:") {
            let v = nums(rest, 4)?;
            return Ok(AdversaryId::RandomStream {
                m: v[0] as usize,
                k: v[1] as usize,
                n: v[2] as usize,
                seed: v[3],
            });
        }
        Err(format!("unknown adversary id {s:?}"))
    }
}
