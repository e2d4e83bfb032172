//! Parallel study execution. Replications are independent work items
//! with per-index derived generators, so the thread count cannot change
//! any numeric output.

use crate::{CliError, CliResult};
use rankspectra_core::simgen::{
    aggregate, run_replication, AccuracyTable, ReplicationOutcome, ScenarioConfig, StudyOptions,
};
use rankspectra_core::{alt, Method};
use rayon::prelude::*;

/// Resolve the worker count: flag, then `RANKSPECTRA_THREADS`, then all
/// available cores.
pub fn resolve_threads(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("RANKSPECTRA_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .filter(|&t| t > 0)
    .unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

pub fn build_pool(threads: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))
}

/// Run one scenario's replications on the pool and aggregate.
pub fn run_study_parallel(
    pool: &rayon::ThreadPool,
    cfg: &ScenarioConfig,
    methods: &[Method],
    opts: &StudyOptions,
) -> CliResult<AccuracyTable> {
    cfg.validate()?;
    let bema_pair = if methods.contains(&Method::Bema) {
        let bema_cfg = opts.bema.clone().unwrap_or_default();
        let reference = alt::bema_reference(cfg.n, cfg.p, &bema_cfg)?;
        Some((bema_cfg, reference))
    } else {
        None
    };
    let outcomes: Vec<ReplicationOutcome> = pool.install(|| {
        (0..cfg.t)
            .into_par_iter()
            .map(|i| run_replication(cfg, methods, bema_pair.as_ref().map(|(c, r)| (c, r)), i))
            .collect::<rankspectra_core::Result<Vec<_>>>()
    })?;
    aggregate(cfg, methods, &outcomes).map_err(CliError::from)
}
