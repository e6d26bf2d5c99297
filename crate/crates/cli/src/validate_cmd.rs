//! `validate`: run each closed-form-comparable scheme deterministically
//! and compare simulated delay and signaling tallies against the model.
//! `--override-size` tampers the model side, for exercising the failure
//! path of the comparison itself.

use mihsim_core::analytic::MsgId;
use mihsim_core::config::RunConfig;
use mihsim_core::validate::validate;

use crate::CmdError;

fn parse_override(arg: &str) -> Result<(MsgId, u32), CmdError> {
    let (abbrev, size) = arg
        .split_once('=')
        .ok_or_else(|| CmdError::usage(format!("expected ABBREV=OCTETS, got `{arg}`")))?;
    let id = MsgId::from_abbrev(abbrev.trim()).map_err(|e| CmdError::usage(e.to_string()))?;
    let size: u32 = size
        .trim()
        .parse()
        .map_err(|e| CmdError::usage(format!("bad size in `{arg}`: {e}")))?;
    Ok((id, size))
}

pub fn run(cfg: &RunConfig, overrides: &[String]) -> Result<(), CmdError> {
    let model_catalog = if overrides.is_empty() {
        None
    } else {
        let mut catalog = cfg.catalog();
        for arg in overrides {
            let (id, size) = parse_override(arg)?;
            catalog = catalog.with_override(id, size);
        }
        Some(catalog)
    };
    let report = validate(cfg, model_catalog).map_err(|e| CmdError::usage(e.to_string()))?;
    if report.all_pass() {
        print!("{}", report.render());
        Ok(())
    } else {
        Err(CmdError::Validation(report.render().trim_end().to_string()))
    }
}
