//! Competitive analysis engine for online makespan scheduling under
//! scenarios, and for its unit-weight hypergraph-coloring view.
//!
//! The crate provides:
//!
//! - exact arithmetic in Q(√17) ([`weight`]) so that every load, ratio and
//!   bound comparison is decided without floating point;
//! - the instance/assignment model ([`instance`], [`state`]) and the
//!   schedule measures used by the two-machine analysis ([`analysis`]);
//! - the online algorithms ([`algorithms`]): the pigeonhole extension of
//!   list scheduling, the 5/3-competitive rule-based algorithm for
//!   m = K = 2, the bingo-card round robin for K = 3 unit jobs, plus
//!   greedy/first-fit/seeded baselines;
//! - an exact offline optimum oracle with certificate checking
//!   ([`oracle`]);
//! - the worst-case instance surgery (deletion and cutting) as replayable
//!   transforms ([`transforms`]);
//! - hypergraphs with growable hyperedges, hyperforest detection and
//!   proper-coloring bookkeeping ([`hypergraph`]);
//! - the adaptive lower-bound adversaries ([`adversaries`]), each of which
//!   ships a verifiable optimality certificate when it stops;
//! - a game harness with duels, exhaustive minimax certification, seeded
//!   instance generation and report tables ([`harness`]).
//!
//! Sweeps and minimax subtrees run data-parallel through rayon by default;
//! building with `--no-default-features` gives a fully sequential engine
//! with identical results.

pub mod algorithms;
pub mod analysis;
pub mod adversaries;
pub mod harness;
pub mod hypergraph;
pub mod instance;
pub mod oracle;
pub mod state;
pub mod transforms;
pub mod weight;

pub use instance::{Instance, Job, Reveal};
pub use state::{AssignmentState, LoadMatrix};
pub use weight::Weight;
