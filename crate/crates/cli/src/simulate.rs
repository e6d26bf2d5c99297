//! `simulate`: run the configured scenario (or a one-axis sweep of it) and
//! write the metrics CSV plus the event transcript.

use std::path::{Path, PathBuf};

use mihsim_core::config::RunConfig;
use mihsim_core::sim::{run_scenario, MetricsRecord, RunOutput};

use crate::CmdError;

fn run_one(cfg: &RunConfig) -> Result<RunOutput, CmdError> {
    let scn = cfg.scenario();
    run_scenario(&scn).map_err(|e| CmdError::usage(e.to_string()))
}

pub fn run(cfg: &RunConfig, out: Option<&Path>) -> Result<(), CmdError> {
    let stem: PathBuf = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("mihsim_run"));
    let mut csv = String::from(MetricsRecord::CSV_HEADER);
    csv.push('\n');
    let mut transcript = String::new();

    match &cfg.sweep {
        None => {
            let out = run_one(cfg)?;
            if let Err(e) = &out.outcome {
                eprintln!("note: handover did not complete: {e}");
            }
            csv.push_str(&out.metrics.csv_line());
            csv.push('\n');
            transcript.push_str(&out.transcript.to_text());
        }
        Some((key, range)) => {
            for value in range.values() {
                let mut row_cfg = cfg.clone();
                row_cfg
                    .set_swept(key, value)
                    .map_err(|e| CmdError::usage(e.to_string()))?;
                let out = run_one(&row_cfg)?;
                csv.push_str(&out.metrics.csv_line());
                csv.push('\n');
                transcript.push_str(&format!("# {key} = {value}\n"));
                transcript.push_str(&out.transcript.to_text());
            }
        }
    }

    let csv_path = stem.with_extension("metrics.csv");
    let transcript_path = stem.with_extension("transcript.txt");
    std::fs::write(&csv_path, csv)
        .map_err(|e| CmdError::usage(format!("cannot write {}: {e}", csv_path.display())))?;
    std::fs::write(&transcript_path, transcript)
        .map_err(|e| CmdError::usage(format!("cannot write {}: {e}", transcript_path.display())))?;
    println!(
        "wrote {} and {}",
        csv_path.display(),
        transcript_path.display()
    );
    Ok(())
}
