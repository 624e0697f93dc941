//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the hot loops (subgroup lattice
//! expansion, per-subgroup genetic tests, table validation) fan out over
//! rayon. Without it the same call sites run sequentially. Both paths
//! preserve input order, so callers see identical results.

#[cfg(feature = "parallel")]
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub(crate) fn par_range_all<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().all(f)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn par_range_all<F>(n: usize, f: F) -> bool
where
    F: Fn(usize) -> bool,
{
    (0..n).all(f)
}

/// Name of the active execution mode, used by the bench suite to label runs.
pub fn execution_mode() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}
