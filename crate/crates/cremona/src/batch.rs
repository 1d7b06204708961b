//! Batch driving for the data-parallel surfaces: table verification,
//! enumeration filtering, and bulk classification. With the `parallel`
//! feature (default) work runs on a rayon pool sized by `CREMONA_THREADS`;
//! without it everything stays sequential. The `*_seq` twins always run
//! sequentially so the two paths can be compared in benches.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[cfg(feature = "parallel")]
fn configure_pool() {
    use std::sync::Once;
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Ok(v) = std::env::var("CREMONA_THREADS") {
            if let Ok(n) = v.parse::<usize>() {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    });
}

#[cfg(feature = "parallel")]
pub fn for_each<T: Sync, F: Fn(&T) + Sync + Send>(items: &[T], f: F) {
    configure_pool();
    items.par_iter().for_each(|t| f(t));
}

#[cfg(not(feature = "parallel"))]
pub fn for_each<T, F: Fn(&T)>(items: &[T], f: F) {
    items.iter().for_each(f);
}

#[cfg(feature = "parallel")]
pub fn map_collect<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(items: &[T], f: F) -> Vec<R> {
    configure_pool();
    items.par_iter().map(|t| f(t)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Sequential twin of `map_collect`, kept for benchmarking both paths.
pub fn map_collect_seq<T, R, F: Fn(&T) -> R>(items: &[T], f: F) -> Vec<R> {
    items.iter().map(f).collect()
}
