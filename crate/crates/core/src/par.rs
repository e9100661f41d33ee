//! Index-range scans that run on rayon when the `parallel` feature is on
//! and fall back to plain loops otherwise.
//!
//! Reductions must be associative and commutative so that the result does
//! not depend on how the range was split.

use std::ops::Range;

/// How a scan is executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// Whether work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// `reduce` over `map(i)` for every `i` in `range`.
pub fn map_reduce<R, M, I, F>(exec: Exec, range: Range<usize>, map: M, identity: I, reduce: F) -> R
where
    R: Send,
    M: Fn(usize) -> R + Sync + Send,
    I: Fn() -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(map).reduce(identity, reduce);
    }
    let _ = exec;
    range.map(map).fold(identity(), reduce)
}

/// `f(i)` for every `i`, in index order.
pub fn collect<T, M>(exec: Exec, range: Range<usize>, map: M) -> Vec<T>
where
    T: Send,
    M: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().map(map).collect();
    }
    let _ = exec;
    range.map(map).collect()
}

/// The hit with the smallest index, if any.
pub fn find_first<T, M>(exec: Exec, range: Range<usize>, f: M) -> Option<T>
where
    T: Send,
    M: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return range.into_par_iter().find_map_first(f);
    }
    let _ = exec;
    range.into_iter().find_map(f)
}
