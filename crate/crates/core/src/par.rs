//! Parallel-or-sequential map helpers.
//!
//! With the `parallel` feature (default) the index maps run on the rayon
//! pool; without it they are plain sequential loops. Either way results
//! are collected in index order, so output is bit-identical across both
//! builds and across thread counts.

#[cfg(feature = "parallel")]
pub(crate) fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indices<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Always-sequential twin of [`map_indices`]; the explicit fallback path
/// and the baseline the benches compare against.
pub(crate) fn map_indices_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}
