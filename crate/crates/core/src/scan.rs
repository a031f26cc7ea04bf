//! Exhaustive scans over index spaces. With the default `parallel`
//! feature these fan out through rayon; the sequential versions are
//! always available (and are all you get with
//! `--no-default-features`). Benches compare the two.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// True iff `pred` holds for every index in `0..total`.
pub fn all_indices<F>(total: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..total).into_par_iter().all(pred)
    }
    #[cfg(not(feature = "parallel"))]
    {
        all_indices_seq(total, pred)
    }
}

pub fn all_indices_seq<F>(total: usize, pred: F) -> bool
where
    F: Fn(usize) -> bool,
{
    (0..total).all(pred)
}

/// True iff `pred` holds on the full `total × total` grid.
pub fn all_pairs<F>(total: usize, pred: F) -> bool
where
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    all_indices(total * total, |k| pred(k / total, k % total))
}

pub fn all_pairs_seq<F>(total: usize, pred: F) -> bool
where
    F: Fn(usize, usize) -> bool,
{
    all_indices_seq(total * total, |k| pred(k / total, k % total))
}

/// Map every index and collect, preserving index order.
pub fn map_indices<T, F>(total: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..total).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total).map(f).collect()
    }
}

/// Indices where `pred` holds, in ascending order.
pub fn filter_indices<F>(total: usize, pred: F) -> Vec<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..total).into_par_iter().filter(|&k| pred(k)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total).filter(|&k| pred(k)).collect()
    }
}
