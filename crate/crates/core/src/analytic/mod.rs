//! Closed-form performance models: wireless ARQ link delay, per-scheme
//! handover delay, city-section mobility, and signaling cost.
//!
//! Delay and mobility routines are generic over [`crate::Scalar`]; the
//! signaling-cost path uses exact rational arithmetic so cost comparisons
//! and simulator cross-checks are free of rounding.

mod catalog;
mod cost;
mod delay;
mod mobility;

pub use catalog::{message_size, MessageCatalog, MsgId, SizeRule, CATALOG_ROWS};
pub use cost::{
    per_handover_cost, ratio_to_f64, scheme_signaling_terms, total_cost, CostParams, CostSplit,
    RetxFactor, SchemeTerms,
};
pub use delay::{
    arq_outcome_probability, arq_probability_mass, frame_count, frame_delay, handover_delay,
    wired_packet_delay, wireless_packet_delay, DelayParams, TUNNEL_HEADER_OCTETS,
};
pub use mobility::{
    epoch_length, epoch_travel_time, expected_crossings, handover_rate, MobilityParams,
};

use thiserror::Error;

/// Errors from the analytic models.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum AnalyticError {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("unknown message abbreviation: {0}")]
    UnknownMessage(String),
}

/// The three schemes covered by the closed-form delay and cost models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnalyzedScheme {
    Standard,
    Fast,
    Proposed,
}

impl AnalyzedScheme {
    pub const ALL: [AnalyzedScheme; 3] = [
        AnalyzedScheme::Standard,
        AnalyzedScheme::Fast,
        AnalyzedScheme::Proposed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AnalyzedScheme::Standard => "standard",
            AnalyzedScheme::Fast => "fast",
            AnalyzedScheme::Proposed => "proposed",
        }
    }
}

/// Hop counts between the network entities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Topology {
    pub mn_mag_hops: u32,
    pub mag_lma_hops: u32,
    pub mag_miis_hops: u32,
    pub mag_mag_hops: u32,
}

impl Default for Topology {
    fn default() -> Self {
        Topology {
            mn_mag_hops: 1,
            mag_lma_hops: 10,
            mag_miis_hops: 10,
            mag_mag_hops: 10,
        }
    }
}

impl Topology {
    pub fn validate(&self) -> Result<(), AnalyticError> {
        if self.mn_mag_hops == 0
            || self.mag_lma_hops == 0
            || self.mag_miis_hops == 0
            || self.mag_mag_hops == 0
        {
            return Err(AnalyticError::Domain("hop counts must be >= 1"));
        }
        Ok(())
    }
}
