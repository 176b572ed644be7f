//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) `Strategy::Parallel` runs on
//! the global rayon pool. Without it, both strategies run sequentially.
//! Reductions here are over integers, so results never depend on how work
//! was split.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// `f(0) + f(1) + ... + f(n-1)` under `combine`.
pub(crate) fn map_reduce<T, F, C>(strategy: Strategy, n: usize, identity: T, f: F, combine: C) -> T
where
    T: Send + Clone + Sync,
    F: Fn(usize) -> T + Sync + Send,
    C: Fn(T, T) -> T + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), &combine),
        _ => (0..n).map(f).fold(identity, combine),
    }
}

/// `[f(0), ..., f(n-1)]`, order preserved.
pub(crate) fn map_collect<T, F>(strategy: Strategy, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match strategy {
        #[cfg(feature = "parallel")]
        Strategy::Parallel => (0..n).into_par_iter().map(f).collect(),
        _ => (0..n).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for strategy in [Strategy::Sequential, Strategy::Parallel] {
            let s = map_reduce(strategy, 1000, 0u64, |i| i as u64, |a, b| a + b);
            assert_eq!(s, 999 * 1000 / 2);
            let v = map_collect(strategy, 5, |i| i * i);
            assert_eq!(v, vec![0, 1, 4, 9, 16]);
        }
    }
}
