//! Execution strategy for the exhaustive suites.
//!
//! Law checks, enumerations and certifications are embarrassingly parallel
//! over their case index. With the `parallel` feature (on by default) the
//! [`Strategy::Parallel`] variant fans out through rayon; without it every
//! call runs sequentially. Results are always returned in case-index order
//! so reports are identical under both strategies.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    #[default]
    Parallel,
}

impl Strategy {
    /// True when this strategy will actually use worker threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// `f` over every index of `range`, results in index order.
pub fn map_range<R, F>(strategy: Strategy, range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().map(f).collect();
    }
    let _ = strategy;
    range.map(f).collect()
}

/// `f` over a slice, results in slice order.
pub fn map_slice<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// The result for the lowest index at which `f` returns `Some`.
pub fn find_first<R, F>(strategy: Strategy, range: Range<usize>, f: F) -> Option<R>
where
    R: Send,
    F: Fn(usize) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().find_map_first(f);
    }
    let _ = strategy;
    range.into_iter().find_map(f)
}

/// Sum of `f` over the range.
pub fn count_range<F>(strategy: Strategy, range: Range<usize>, f: F) -> usize
where
    F: Fn(usize) -> usize + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        return range.into_par_iter().map(f).sum();
    }
    let _ = strategy;
    range.map(f).sum()
}
