//! Order-preserving map, data-parallel when the `parallel` feature is on.

#[cfg(feature = "parallel")]
pub fn map<T: Sync, R: Send>(xs: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    xs.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map<T: Sync, R: Send>(xs: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    xs.iter().map(f).collect()
}

/// Always sequential; the baseline the benchmark compares against.
pub fn map_seq<T, R>(xs: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    xs.iter().map(f).collect()
}
