//! Multi-scenario execution. Scenarios are independent, so a sweep can run
//! serially or across threads with identical results.

use thiserror::Error;

use super::engine::{run_scenario, RunOutput};
use super::{Scenario, SimError};

/// All per-scenario failures of a sweep, by scenario index.
#[derive(Error, Debug, Clone, PartialEq)]
#[error("{} of the sweep's scenarios are invalid", errors.len())]
pub struct SweepError {
    pub errors: Vec<(usize, SimError)>,
}

/// Runs every scenario in order, one record per scenario.
pub fn collect_sweep(scenarios: &[Scenario]) -> Result<Vec<RunOutput>, SweepError> {
    let mut outputs = Vec::with_capacity(scenarios.len());
    let mut errors = Vec::new();
    for (i, scn) in scenarios.iter().enumerate() {
        match run_scenario(scn) {
            Ok(out) => outputs.push(out),
            Err(e) => errors.push((i, e)),
        }
    }
    if errors.is_empty() {
        Ok(outputs)
    } else {
        Err(SweepError { errors })
    }
}

/// Runs the sweep across `threads` workers; output order matches input.
pub fn collect_sweep_parallel(
    scenarios: &[Scenario],
    threads: usize,
) -> Result<Vec<RunOutput>, SweepError> {
    if scenarios.is_empty() {
        return Ok(Vec::new());
    }
    let threads = threads.max(1);
    let mut slots: Vec<Option<Result<RunOutput, SimError>>> = Vec::new();
    slots.resize_with(scenarios.len(), || None);
    std::thread::scope(|scope| {
        for (chunk_idx, chunk) in slots
            .chunks_mut(scenarios.len().div_ceil(threads))
            .enumerate()
        {
            let chunk_size = scenarios.len().div_ceil(threads);
            let start = chunk_idx * chunk_size;
            let scenarios = &scenarios[start..(start + chunk.len())];
            scope.spawn(move || {
                for (slot, scn) in chunk.iter_mut().zip(scenarios) {
                    *slot = Some(run_scenario(scn));
                }
            });
        }
    });
    let mut outputs = Vec::with_capacity(scenarios.len());
    let mut errors = Vec::new();
    for (i, slot) in slots.into_iter().enumerate() {
        match slot.expect("every slot filled") {
            Ok(out) => outputs.push(out),
            Err(e) => errors.push((i, e)),
        }
    }
    if errors.is_empty() {
        Ok(outputs)
    } else {
        Err(SweepError { errors })
    }
}
