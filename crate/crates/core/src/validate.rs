//! Simulation-versus-model cross validation.
//!
//! Runs each closed-form-comparable scheme in deterministic mode and
//! checks that (a) the simulated handover delay matches the model within
//! [`DELAY_TOLERANCE_MS`], and (b) the transcript's per-link signaling
//! volumes equal the model's term sums exactly.

use crate::analytic::{handover_delay, scheme_signaling_terms, AnalyzedScheme, MessageCatalog};
use crate::config::RunConfig;
use crate::protocol::Scheme;
use crate::sim::{run_scenario, SimError};

/// Absolute tolerance on the delay comparison, ms.
pub const DELAY_TOLERANCE_MS: f64 = 0.1;

/// One comparison line of the validation report.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub simulated: String,
    pub model: String,
    pub pass: bool,
}

impl CheckLine {
    pub fn render(&self) -> String {
        format!(
            "{}: {} | sim {} | model {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.simulated,
            self.model
        )
    }
}

/// Validation outcome across all checked schemes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<CheckLine>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&c.render());
            s.push('\n');
        }
        s.push_str(if self.all_pass() {
            "validation: all checks passed\n"
        } else {
            "validation: FAILED\n"
        });
        s
    }
}

fn scheme_pairs() -> [(Scheme, AnalyzedScheme); 3] {
    [
        (Scheme::StandardMobileInit, AnalyzedScheme::Standard),
        (Scheme::FastHandoverMih, AnalyzedScheme::Fast),
        (Scheme::ProposedIntegrated, AnalyzedScheme::Proposed),
    ]
}

/// Cross-validates simulation against the closed-form model.
///
/// `model_catalog` overrides the message catalog on the model side only,
/// which turns any tampered size into a visible tally mismatch.
pub fn validate(
    cfg: &RunConfig,
    model_catalog: Option<MessageCatalog>,
) -> Result<ValidationReport, SimError> {
    let model_catalog = model_catalog.unwrap_or_else(|| cfg.catalog());
    let delay_params = cfg.delay_params();
    let mut report = ValidationReport::default();
    for (scheme, analyzed) in scheme_pairs() {
        let mut scn = cfg.scenario_for(scheme);
        scn.mode = crate::sim::Mode::Deterministic;
        let out = run_scenario(&scn)?;
        let sim_delay = out
            .metrics
            .handover_delay_ms
            .expect("deterministic nominal run completes");
        let model_delay = handover_delay(analyzed, &delay_params, &model_catalog, &cfg.topology);
        report.checks.push(CheckLine {
            name: format!("delay {}", analyzed.name()),
            simulated: format!("{sim_delay:.4} ms"),
            model: format!("{model_delay:.4} ms"),
            pass: (sim_delay - model_delay).abs() <= DELAY_TOLERANCE_MS,
        });
        let model_terms = scheme_signaling_terms(analyzed, &model_catalog, &cfg.topology);
        report.checks.push(CheckLine {
            name: format!("tally {}", analyzed.name()),
            simulated: format!("{:?}", out.tally),
            model: format!("{model_terms:?}"),
            pass: out.tally == model_terms,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::MsgId;

    #[test]
    fn defaults_pass() {
        let report = validate(&RunConfig::default(), None).unwrap();
        assert_eq!(report.checks.len(), 6);
        assert!(report.all_pass(), "{}", report.render());
    }

    #[test]
    fn tampered_catalog_fails() {
        let tampered = RunConfig::default().catalog().with_override(MsgId::Pbu, 77);
        let report = validate(&RunConfig::default(), Some(tampered)).unwrap();
        assert!(!report.all_pass());
        // the tally side must notice, for every scheme
        let tally_fails = report
            .checks
            .iter()
            .filter(|c| c.name.starts_with("tally") && !c.pass)
            .count();
        assert_eq!(tally_fails, 3);
    }
}
