//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) batch maps run on the rayon
//! global pool; without it they run in order on the calling thread. Results
//! are always returned in input order, so output never depends on the
//! feature or the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, in parallel when the feature is enabled.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

/// Always-sequential variant, kept public for benchmarking and debugging.
pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Whether [`map`] actually fans out.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
