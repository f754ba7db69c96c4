//! Thin switch between rayon and sequential iteration.
//!
//! Every helper returns results in input order, so callers get identical
//! output whichever [`Strategy`] runs.

/// Execution strategy for the data-parallel entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Sequential,
    /// Uses rayon when the `parallel` feature is on; otherwise identical to
    /// `Sequential`.
    #[default]
    Parallel,
}

impl Strategy {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Ordered map over a slice.
pub fn map<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Ordered map over `0..n`.
pub fn map_range<R, F>(strategy: Strategy, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = strategy;
    (0..n).map(f).collect()
}

/// True iff `pred` holds for every index in `0..n`.
pub fn all_range<F>(strategy: Strategy, n: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().all(pred);
    }
    let _ = strategy;
    (0..n).all(pred)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a = map(Strategy::Sequential, &xs, |x| x * x);
        let b = map(Strategy::Parallel, &xs, |x| x * x);
        assert_eq!(a, b);
        assert!(all_range(Strategy::Parallel, 100, |i| i < 100));
        assert!(!all_range(Strategy::Sequential, 100, |i| i != 57));
    }
}
