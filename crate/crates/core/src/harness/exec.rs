//! Data-parallel sweep primitive with a sequential twin.
//!
//! With the default `parallel` feature, [`map_collect`] fans work out over
//! rayon; without it, it is exactly [`map_collect_seq`]. Results come back
//! in input order either way, so sweeps merge deterministically.

/// Map a function over items, in parallel when the `parallel` feature is
/// enabled. Output order matches input order.
#[cfg(feature = "parallel")]
pub fn map_collect<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    I: Send,
    O: Send,
    F: Fn(I) -> O + Sync + Send,
{
    map_collect_seq(items, f)
}

/// Sequential twin of [`map_collect`], always available; the benchmark
/// suite compares the two.
pub fn map_collect_seq<I, O, F>(items: Vec<I>, f: F) -> Vec<O>
where
    F: Fn(I) -> O,
{
    items.into_iter().map(f).collect()
}
