//! Execution policy for data-parallel loops.
//!
//! Every parallel loop in the crate maps an index range to independent
//! results and collects them in index order, so the output never depends on
//! scheduling. Without the `parallel` feature both policies run sequentially.

use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Maps `f` over `range`, returning results in index order.
    pub fn map<T, F>(self, range: Range<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().map(f).collect()
            }
            _ => range.map(f).collect(),
        }
    }

    /// Runs `trials` independent Monte-Carlo trials. Trial `i` receives
    /// `trial_seed(base_seed, i)`.
    pub fn trials<T, F>(self, base_seed: u64, trials: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        self.map(0..trials, |i| f(trial_seed(base_seed, i)))
    }
}

/// Seed splitting rule for independent trials.
pub fn trial_seed(base_seed: u64, trial_index: usize) -> u64 {
    base_seed.wrapping_add(trial_index as u64)
}

/// Configures the global worker pool. A no-op without the `parallel` feature.
pub fn init_thread_pool(threads: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = threads.filter(|&n| n > 0) {
        // build_global fails only if a pool already exists; keep that one.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
}
