//! Order-preserving fan-out, parallel when the `parallel` feature is on.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// `f(0), …, f(n - 1)` in index order.
pub(crate) fn map_indexed<T: Send>(n: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

pub(crate) fn max_over<T: Sync>(items: &[T], f: impl Fn(&T) -> usize + Sync + Send) -> usize {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).max().unwrap_or(0)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).max().unwrap_or(0)
    }
}
