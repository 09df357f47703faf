//! Trial-level data parallelism.
//!
//! Everything that fans out (trials, colors, permutation blocks) goes through
//! [`map_indexed`]. Results come back in index order, so output never depends
//! on the thread count. Without the `parallel` feature every call runs
//! sequentially.

/// How a batch of independent work items is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon's global pool.
    #[default]
    Parallel,
    /// A dedicated pool with this many threads.
    Threads(usize),
}

impl Execution {
    /// `jobs` as given on the command line: 0 = all cores, 1 = sequential.
    pub fn from_jobs(jobs: usize) -> Self {
        match jobs {
            0 => Execution::Parallel,
            1 => Execution::Sequential,
            t => Execution::Threads(t),
        }
    }
}

/// Evaluates `f(0), ..., f(count - 1)` and returns the results in index order.
pub fn map_indexed<T, F>(count: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        match exec {
            Execution::Sequential => {}
            Execution::Parallel => return (0..count).into_par_iter().map(f).collect(),
            Execution::Threads(t) => {
                if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(t).build() {
                    return pool.install(|| (0..count).into_par_iter().map(&f).collect());
                }
            }
        }
    }
    #[cfg(not(feature = "parallel"))]
    let _ = exec;
    (0..count).map(f).collect()
}
