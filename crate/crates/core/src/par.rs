//! Data-parallel helpers. With the `parallel` feature the sweeps run on the
//! rayon pool; without it (or under [`Execution::Sequential`]) they run on
//! the calling thread. Results are identical either way.

use std::ops::RangeInclusive;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a sweep distributes its work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when this build can actually run sweeps in parallel.
    pub fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Maps every value of `range` through `f` and concatenates the outputs in
/// range order.
pub fn flat_map_range<T, F>(exec: Execution, range: RangeInclusive<i64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(i64) -> Vec<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range.into_par_iter().flat_map_iter(f).collect(),
        _ => range.flat_map(f).collect(),
    }
}

/// Folds `f` over `range` and merges partial accumulators with `merge`.
/// `merge` must be associative with `A::default()` as identity.
#[cfg_attr(not(feature = "parallel"), allow(unused_variables))]
pub fn fold_range<A, F, M>(exec: Execution, range: RangeInclusive<i64>, f: F, merge: M) -> A
where
    A: Default + Send,
    F: Fn(&mut A, i64) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => range
            .into_par_iter()
            .fold(A::default, |mut acc, i| {
                f(&mut acc, i);
                acc
            })
            .reduce(A::default, &merge),
        _ => {
            let mut acc = A::default();
            for i in range {
                f(&mut acc, i);
            }
            acc
        }
    }
}

/// Runs `op` on a dedicated pool of `workers` threads. `workers <= 1` or a
/// build without `parallel` runs it on the current thread.
pub fn with_workers<R: Send>(workers: usize, op: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to build thread pool");
        return pool.install(op);
    }
    let _ = workers;
    op()
}

/// Execution mode implied by a worker count.
pub fn execution_for(workers: usize) -> Execution {
    if workers <= 1 {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let f = |i: i64| if i % 3 == 0 { vec![i, -i] } else { vec![] };
        let seq = flat_map_range(Execution::Sequential, -50..=50, f);
        let par = flat_map_range(Execution::Parallel, -50..=50, f);
        assert_eq!(seq, par);

        let sum = |acc: &mut i64, i: i64| *acc += i * i;
        let seq = fold_range(Execution::Sequential, 1..=1000, sum, |a, b| a + b);
        let par = with_workers(4, || {
            fold_range(Execution::Parallel, 1..=1000, sum, |a, b| a + b)
        });
        assert_eq!(seq, par);
        assert_eq!(seq, 333_833_500);
    }
}
