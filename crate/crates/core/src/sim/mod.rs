//! Deterministic discrete-event simulator.
//!
//! A scenario executes one handover scheme as a timed message flow over
//! modeled links, with a downlink constant-bit-rate flow running through
//! the binding cache, inter-gateway tunnels and packet buffers. The run
//! produces a transcript, a metrics record, and the final binding cache.
//!
//! In deterministic mode every link delay is the expected value of the
//! link model, which makes the measured handover delay directly comparable
//! to the closed-form model. In sampled mode per-frame ARQ outcomes and
//! per-message wireless failures are drawn from a seeded generator.

mod engine;
mod flows;
mod link;
mod metrics;
mod sweep;

pub use engine::{run_scenario, RunOutput};
pub use link::{sample_frame_delay, LinkModel, WiredLinkParams, WirelessLinkParams};
pub use metrics::{signaling_tally, tally_cost, MetricsRecord, TallySplit};
pub use sweep::{collect_sweep, collect_sweep_parallel, SweepError};

use thiserror::Error;

use crate::analytic::Topology;
use crate::protocol::{HandoverContext, PacketBuffer, Scheme};

/// Simulator errors.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid scenario field {field}: {reason}")]
    ConfigInvalid { field: &'static str, reason: String },
}

/// Link-delay evaluation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Expected delays from the closed-form link model.
    #[default]
    Deterministic,
    /// Per-frame/per-message outcomes drawn from the seeded generator.
    Sampled,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Deterministic => "deterministic",
            Mode::Sampled => "sampled",
        }
    }

    pub fn from_name(name: &str) -> Option<Mode> {
        match name {
            "deterministic" => Some(Mode::Deterministic),
            "sampled" => Some(Mode::Sampled),
            _ => None,
        }
    }
}

/// Complete description of one simulation run.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub scheme: Scheme,
    pub wireless: WirelessLinkParams,
    pub wired: WiredLinkParams,
    pub topology: Topology,
    /// Link-layer handover delay, ms.
    pub t_l2_ms: f64,
    /// Wireless signaling failure probability (sampled mode).
    pub p_f: f64,
    /// Downlink data packet size, octets.
    pub data_packet_octets: u32,
    /// Downlink packet interval, ms.
    pub cbr_interval_ms: f64,
    /// Gateway packet-buffer capacity, packets.
    pub buffer_capacity: usize,
    /// Time at which the handover flow starts, ms.
    pub trigger_ms: f64,
    /// Downlink traffic tail after handover completion, ms.
    pub cooldown_ms: f64,
    /// Number of candidate gateways the serving gateway queries.
    pub candidate_count: u32,
    /// Neighboring-network count (sizes some control messages).
    pub neighbor_count: u32,
    pub seed: u64,
    pub mode: Mode,
    pub ctx: HandoverContext,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            scheme: Scheme::ProposedIntegrated,
            wireless: WirelessLinkParams::default(),
            wired: WiredLinkParams::default(),
            topology: Topology::default(),
            t_l2_ms: 45.35,
            p_f: 0.5,
            data_packet_octets: 1024,
            cbr_interval_ms: 10.0,
            buffer_capacity: PacketBuffer::DEFAULT_CAPACITY,
            trigger_ms: 1000.0,
            cooldown_ms: 100.0,
            candidate_count: 6,
            neighbor_count: 6,
            seed: 1,
            mode: Mode::Deterministic,
            ctx: HandoverContext::default(),
        }
    }
}

impl Scenario {
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |field: &'static str, reason: &str| {
            Err(SimError::ConfigInvalid {
                field,
                reason: reason.to_string(),
            })
        };
        if let Err(e) = self.wireless.validate() {
            return bad("wireless", &e.to_string());
        }
        if let Err(e) = self.wired.validate() {
            return bad("wired", &e.to_string());
        }
        if let Err(e) = self.topology.validate() {
            return bad("topology", &e.to_string());
        }
        if !(self.t_l2_ms >= 0.0) {
            return bad("t_l2_ms", "must be non-negative");
        }
        if !(0.0..1.0).contains(&self.p_f) {
            return bad("p_f", "must be in [0, 1)");
        }
        if self.data_packet_octets == 0 {
            return bad("l_d_octets", "must be positive");
        }
        if !(self.cbr_interval_ms > 0.0) {
            return bad("cbr_interval_ms", "must be positive");
        }
        if self.buffer_capacity == 0 {
            return bad("buffer_capacity", "must be positive");
        }
        if !(self.trigger_ms >= 0.0) {
            return bad("ho_trigger_ms", "must be non-negative");
        }
        if !(self.cooldown_ms >= 0.0) {
            return bad("cooldown_ms", "must be non-negative");
        }
        if self.candidate_count == 0 && !self.ctx.fault_no_candidates {
            return bad("m_pref_poas", "must be positive");
        }
        Ok(())
    }

    /// The delay-model view of this scenario's link parameters.
    pub fn delay_params(&self) -> crate::DelayParams {
        crate::analytic::DelayParams {
            tau_ms: self.wireless.tau_ms,
            rho_f: self.wireless.rho_f,
            frame_octets: self.wireless.frame_octets,
            wireless_delay_ms: self.wireless.wireless_delay_ms,
            retx_limit: self.wireless.retx_limit,
            wired_bw_octets_per_s: self.wired.bw_octets_per_s,
            wired_latency_ms: self.wired.latency_ms,
            l2_handover_ms: self.t_l2_ms,
            data_packet_octets: self.data_packet_octets,
        }
    }

    /// The message-size catalog this scenario runs with.
    pub fn catalog(&self) -> crate::analytic::MessageCatalog {
        crate::analytic::MessageCatalog::new(self.neighbor_count, self.candidate_count)
    }
}
