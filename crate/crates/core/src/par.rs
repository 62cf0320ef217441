//! Data-parallel map helpers.
//!
//! The verification workloads in this crate are dominated by embarrassingly
//! parallel grids of independent exact computations (all-pairs Hom
//! dimensions, per-index certificate checks, sweeps over decompositions).
//! With the `parallel` feature (default) these run on rayon; without it they
//! fall back to plain sequential iteration. [`map_sequential`] is always
//! available so benchmarks can compare both code paths in a single build.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, in parallel when the `parallel` feature is on.
pub fn map<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.into_iter().map(f).collect()
    }
}

/// Sequential reference implementation of [`map`].
pub fn map_sequential<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> R,
{
    items.into_iter().map(f).collect()
}
