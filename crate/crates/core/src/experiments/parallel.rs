use rayon::prelude::*;

use crate::error::{Error, Result};

/// Evaluates `f(state, i)` for `i in 0..count` on `workers` threads and
/// returns the results in index order. `init` builds one scratch state per
/// rayon work split, so buffers are reused across replicates.
pub(crate) fn map_indexed<T, S, I, F>(count: usize, workers: usize, init: I, f: F) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> S + Send + Sync,
    F: Fn(&mut S, usize) -> T + Send + Sync,
{
    if workers <= 1 {
        let mut state = init();
        return Ok((0..count).map(|i| f(&mut state, i)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| (0..count).into_par_iter().map_init(&init, |s, i| f(s, i)).collect()))
}
