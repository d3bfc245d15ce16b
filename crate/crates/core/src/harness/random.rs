//! Reproducible random instance generation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, Job};
use crate::weight::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightMode {
    Unit,
    /// Uniform `num/den` with `1 <= num <= max_num`, `1 <= den <= max_den`.
    Rational { max_num: i64, max_den: i64 },
}

impl WeightMode {
    pub fn rational(max_num: i64, max_den: i64) -> Self {
        WeightMode::Rational { max_num, max_den }
    }
}

/// Scenario memberships drawn uniformly over nonempty subsets of [K]
/// (jobs are in no scenario when K = 0). Identical seeds give identical
/// instances.
pub fn random_instance(m: usize, k: usize, n: usize, mode: WeightMode, seed: u64) -> Instance {
    assert!(k <= 20, "scenario subsets are drawn from bitmasks");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs = (0..n)
        .map(|_| {
            let p = draw_weight(&mut rng, mode);
            let scenarios = if k == 0 {
                Vec::new()
            } else {
                let mask = rng.gen_range(1..(1u32 << k));
                (0..k).filter(|b| mask >> b & 1 == 1).collect()
            };
            Job::new(p, scenarios)
        })
        .collect();
    Instance::new(m, k, jobs)
}

/// Density-controlled variant: each scenario joins independently with the
/// given probability, redrawing empty sets.
pub fn random_instance_density(
    m: usize,
    k: usize,
    n: usize,
    mode: WeightMode,
    density: f64,
    seed: u64,
) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jobs = (0..n)
        .map(|_| {
            let p = draw_weight(&mut rng, mode);
            let mut scenarios: Vec<usize> = Vec::new();
            if k > 0 {
                loop {
                    scenarios = (0..k).filter(|_| rng.gen_bool(density)).collect();
                    if !scenarios.is_empty() {
                        break;
                    }
                }
            }
            Job::new(p, scenarios)
        })
        .collect();
    Instance::new(m, k, jobs)
}

fn draw_weight(rng: &mut ChaCha8Rng, mode: WeightMode) -> Weight {
    match mode {
        WeightMode::Unit => Weight::one(),
        WeightMode::Rational { max_num, max_den } => {
            Weight::from_ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
        }
    }
}
