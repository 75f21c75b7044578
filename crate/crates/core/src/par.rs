//! Execution strategy for batch searches and checks.
//!
//! With the `parallel` feature disabled, `Strategy::Parallel` runs
//! sequentially. Results never depend on the strategy.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
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

impl Strategy {
    /// The first `Some` in item order.
    pub fn find_first<T, R, F>(self, items: &[T], f: F) -> Option<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter().find_map_first(f),
            _ => items.iter().find_map(f),
        }
    }

    /// `f` applied to every item, in item order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Strategy::Parallel => items.par_iter().map(f).collect(),
            _ => items.iter().map(f).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let items: Vec<u32> = (0..10_000).collect();
        let pick = |x: &u32| (x % 997 == 996).then_some(*x);
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(s.find_first(&items, pick), Some(996));
            assert_eq!(s.map(&items, |x| x * 2)[4321], 8642);
        }
    }
}
