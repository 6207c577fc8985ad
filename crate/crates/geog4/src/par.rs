//! Data-parallel map over an index range with a sequential fallback. The
//! `parallel` feature (default on) uses a work-stealing thread pool; with the
//! feature off the same API runs sequentially. Results are returned in index
//! order either way, so outputs are deterministic across both modes.

/// Map `f` over `0..count`, returning results in index order.
#[cfg(feature = "parallel")]
pub fn indexed_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

/// Map `f` over `0..count`, returning results in index order.
#[cfg(not(feature = "parallel"))]
pub fn indexed_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    (0..count).map(f).collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn order_preserved() {
        let out = super::indexed_map(100, |i| i * i);
        assert_eq!(out, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }
}
