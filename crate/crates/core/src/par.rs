//! Thin fan-out helpers. With the `parallel` feature and `ExecMode::Parallel`
//! they use rayon's indexed iterators, which keep input order, so callers
//! see the same result as the sequential path.

use crate::config::ExecMode;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

pub fn filter_map<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return items.par_iter().filter_map(f).collect();
    }
    let _ = mode;
    items.iter().filter_map(f).collect()
}

/// First `Some` in input order.
pub fn find_map_first<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return items.par_iter().find_map_first(f);
    }
    let _ = mode;
    items.iter().find_map(f)
}

pub fn range_filter_map<R, F>(mode: ExecMode, range: std::ops::Range<u64>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return range.into_par_iter().filter_map(f).collect();
    }
    let _ = mode;
    range.filter_map(f).collect()
}

pub fn range_find_map_first<R, F>(mode: ExecMode, range: std::ops::Range<u64>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(u64) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecMode::Parallel {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = mode;
    range.into_iter().find_map(f)
}

/// Runs `f` on a pool of `jobs` threads. Without the `parallel` feature,
/// or when the pool cannot be built, `f` runs on the calling thread.
pub fn install<R, F>(jobs: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        return pool.install(f);
    }
    let _ = jobs;
    f()
}
