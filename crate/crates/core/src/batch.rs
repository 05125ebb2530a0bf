//! Independent jobs run data-parallel with rayon when the `parallel`
//! feature is on (the default), and one after another otherwise.
//!
//! The `*_sequential` variants are always sequential so the two execution
//! modes can be compared in one build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f` applied to every seed in `seeds`, results in seed order.
pub fn map_seeds<T, F>(seeds: impl IntoIterator<Item = u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    let seeds: Vec<u64> = seeds.into_iter().collect();
    #[cfg(feature = "parallel")]
    {
        seeds.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        seeds.into_iter().map(f).collect()
    }
}

pub fn map_seeds_sequential<T, F>(seeds: impl IntoIterator<Item = u64>, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    seeds.into_iter().map(f).collect()
}

/// Order-preserving map over a slice.
pub fn map<A, T, F>(items: &[A], f: F) -> Vec<T>
where
    A: Sync,
    T: Send,
    F: Fn(&A) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// True iff `f` holds for every item; may stop early.
pub fn all<A, F>(items: &[A], f: F) -> bool
where
    A: Sync,
    F: Fn(&A) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().all(f)
    }
}

/// Whether the parallel code paths are compiled in.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
