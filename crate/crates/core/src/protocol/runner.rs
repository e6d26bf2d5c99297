//! One-call runners for the six schemes over default link parameters.
//!
//! Each runner executes the scheme in the event engine and returns the
//! full run output (transcript, metrics, final binding cache). Scheme-level
//! failures (rejections, unknown peers) surface in `RunOutput::outcome`.

use crate::sim::{run_scenario, RunOutput, Scenario, SimError};

use super::context::{HandoverContext, Scheme};

/// Who triggers a standard handover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Initiator {
    Mobile,
    Network,
}

fn run(scheme: Scheme, ctx: &HandoverContext) -> Result<RunOutput, SimError> {
    let scn = Scenario {
        scheme,
        ctx: ctx.clone(),
        ..Scenario::default()
    };
    run_scenario(&scn)
}

/// Predictive fast handover (previous-gateway initiated).
pub fn run_fpmip_predictive(ctx: &HandoverContext) -> Result<RunOutput, SimError> {
    run(Scheme::FpmipPredictive, ctx)
}

/// Reactive fast handover (new-gateway initiated).
pub fn run_fpmip_reactive(ctx: &HandoverContext) -> Result<RunOutput, SimError> {
    run(Scheme::FpmipReactive, ctx)
}

/// Media-independent fast handover with transient bicast.
pub fn run_fast_handover_mih(ctx: &HandoverContext) -> Result<RunOutput, SimError> {
    run(Scheme::FastHandoverMih, ctx)
}

/// The integrated scheme with extended commit messages.
pub fn run_proposed(ctx: &HandoverContext) -> Result<RunOutput, SimError> {
    run(Scheme::ProposedIntegrated, ctx)
}

/// Standard handover, mobile- or network-initiated.
pub fn run_standard(ctx: &HandoverContext, initiator: Initiator) -> Result<RunOutput, SimError> {
    let scheme = match initiator {
        Initiator::Mobile => Scheme::StandardMobileInit,
        Initiator::Network => Scheme::StandardNetworkInit,
    };
    run(scheme, ctx)
}
