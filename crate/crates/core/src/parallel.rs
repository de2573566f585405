//! Worker pools and per-index random streams.
//!
//! Every random draw is tied to an index rather than to a thread, so the
//! result of a batch does not depend on how many workers process it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rayon::ThreadPoolBuildError;

/// Runs `job` on a dedicated pool of `workers` threads (at least one).
pub fn with_workers<T: Send>(
    workers: usize,
    job: impl FnOnce() -> T + Send,
) -> Result<T, ThreadPoolBuildError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()?;
    Ok(pool.install(job))
}

/// The random stream for draw number `index` of a run seeded with `seed`.
pub fn indexed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rayon::prelude::*;

    #[test]
    fn streams_are_independent_of_worker_count() {
        let draw = |w| {
            with_workers(w, || {
                (0..64u64)
                    .into_par_iter()
                    .map(|i| indexed_rng(9, i).random::<u64>())
                    .collect::<Vec<_>>()
            })
            .unwrap()
        };
        assert_eq!(draw(1), draw(4));
        let v = draw(2);
        assert_ne!(v[0], v[1]);
    }
}
