//! Parallel match execution. Games run on a worker pool and are aggregated
//! in game order, so results do not depend on the worker count.

use std::time::Instant;

use rayon::prelude::*;
use zatrikion_core::harness::{self, GameRecord, HarnessError, MatchConfig, MatchStats};
use zatrikion_core::search::Clock;

/// Milliseconds since construction.
pub struct SystemClock(Instant);

impl SystemClock {
    pub fn new() -> SystemClock {
        SystemClock(Instant::now())
    }
}

impl Default for SystemClock {
    fn default() -> SystemClock {
        SystemClock::new()
    }
}

impl Clock for SystemClock {
    fn now_ms(&self) -> u64 {
        self.0.elapsed().as_millis() as u64
    }
}

pub fn run_match_parallel(config: &MatchConfig, workers: usize) -> Result<(MatchStats, Vec<GameRecord>), HarnessError> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<Result<GameRecord, HarnessError>> = pool.install(|| {
        (0..config.games)
            .into_par_iter()
            .map(|i| {
                let clock = SystemClock::new();
                harness::play_game(config, i, Some(&clock))
            })
            .collect()
    });
    let mut stats = MatchStats::new(config.variant);
    let mut records = Vec::with_capacity(results.len());
    for r in results {
        let record = r?;
        stats.record(&record);
        records.push(record);
    }
    Ok((stats, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zatrikion_core::{SearchLimits, Variant};

    #[test]
    fn worker_count_does_not_change_results() {
        let config = MatchConfig::new(Variant::ByzantineRegular, 3, SearchLimits::depth(1), 4);
        let one = run_match_parallel(&config, 1).unwrap();
        let three = run_match_parallel(&config, 3).unwrap();
        assert_eq!(one, three);
        assert_eq!(one.0, harness::run_match(&config, None).unwrap().0);
    }
}
