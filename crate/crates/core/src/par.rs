//! Sweeps over enumeration indices, run on the rayon pool when the
//! `parallel` feature is enabled and sequentially otherwise.

use std::ops::Range;

/// How an exhaustive sweep is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepMode {
    Sequential,
    /// Falls back to sequential without the `parallel` feature.
    #[default]
    Parallel,
}

impl SweepMode {
    /// `true` when sweeps really run on more than one thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == SweepMode::Parallel
    }
}

/// The first index in `range` (in index order) for which `probe` yields a
/// value, with that value.
pub fn find_first<T, F>(mode: SweepMode, range: Range<u64>, probe: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(u64) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return range
            .into_par_iter()
            .find_map_first(|i| probe(i).map(|t| (i, t)));
    }
    let _ = mode;
    range.into_iter().find_map(|i| probe(i).map(|t| (i, t)))
}

/// Maps `f` over `items`, preserving order.
pub fn map_collect<I, T, F>(mode: SweepMode, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Sizes the global worker pool. Returns `false` if the pool was already
/// initialised or the feature is off.
pub fn configure_workers(workers: usize) -> bool {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .is_ok()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        false
    }
}
