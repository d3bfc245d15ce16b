//! Game loop, ratio evaluation, exhaustive minimax certification, seeded
//! instance generation, and report emission.

mod exec;
mod game;
mod minimax;
mod random;
mod table;

pub use exec::{map_collect, map_collect_seq};
pub use game::{duel, replay_audit, run_static, DuelError, GameResult, OptSource, TranscriptStep};
pub use minimax::{minimax_certify, MinimaxCaps, MinimaxOutcome};
pub use random::{random_instance, random_instance_density, WeightMode};
pub use table::{build_table, render_table, TableEntry, TableFormat};

/// Global seed honored by the CLI and sweeps, from `SCENARIO_SCHED_SEED`.
pub fn env_seed() -> u64 {
    std::env::var("SCENARIO_SCHED_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0)
}
