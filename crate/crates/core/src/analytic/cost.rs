//! Per-handover and per-second signaling cost, split into a wireless part
//! (scaled by the retransmission factor of the lossy wireless link) and a
//! wired part (sum of message size x hop count per wired path class).
//!
//! All per-handover arithmetic is exact over rationals.

use num_rational::Ratio;

use super::catalog::{MessageCatalog, MsgId};
use super::mobility::{handover_rate, MobilityParams};
use super::{AnalyticError, AnalyzedScheme, Topology};
use crate::{Rational, Scalar};

/// How wireless retransmissions scale the wireless signaling cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RetxFactor {
    /// `P_f / (1 - P_f)`: vanishes on a loss-free link.
    #[default]
    FailureOdds,
    /// `1 / (1 - P_f)`: expected transmissions per message.
    ExpectedTransmissions,
}

/// Cost-model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CostParams {
    /// Wireless link transmission failure probability, in `[0, 1)`.
    pub wireless_fail_prob: Rational,
    /// Unit transmission cost over a wired link.
    pub wired_unit_cost: Rational,
    /// Unit transmission cost over the wireless link.
    pub wireless_unit_cost: Rational,
    pub retx_factor: RetxFactor,
    pub topology: Topology,
}

impl Default for CostParams {
    fn default() -> Self {
        CostParams {
            wireless_fail_prob: Ratio::new(1, 2),
            wired_unit_cost: Ratio::from_integer(1),
            wireless_unit_cost: Ratio::new(3, 2),
            retx_factor: RetxFactor::FailureOdds,
            topology: Topology::default(),
        }
    }
}

impl CostParams {
    pub fn validate(&self) -> Result<(), AnalyticError> {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        if self.wireless_fail_prob < zero || self.wireless_fail_prob >= one {
            return Err(AnalyticError::Domain(
                "failure probability must be in [0, 1)",
            ));
        }
        if self.wired_unit_cost <= zero || self.wireless_unit_cost <= zero {
            return Err(AnalyticError::Domain("unit costs must be positive"));
        }
        self.topology.validate()
    }

    fn retx_multiplier(&self) -> Rational {
        let one = Ratio::from_integer(1);
        match self.retx_factor {
            RetxFactor::FailureOdds => self.wireless_fail_prob / (one - self.wireless_fail_prob),
            RetxFactor::ExpectedTransmissions => one / (one - self.wireless_fail_prob),
        }
    }
}

/// Raw signaling volume of one handover, as octet-hop sums per link class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SchemeTerms {
    pub wireless_octet_hops: u64,
    pub mag_mag_octet_hops: u64,
    pub mag_miis_octet_hops: u64,
    pub mag_lma_octet_hops: u64,
}

impl SchemeTerms {
    pub fn wired_octet_hops(&self) -> u64 {
        self.mag_mag_octet_hops + self.mag_miis_octet_hops + self.mag_lma_octet_hops
    }
}

/// Per-link-class signaling volume of a scheme's control-message exchange.
///
/// The message lists per class are fixed per scheme; the resource-query
/// pair repeats once per candidate gateway.
pub fn scheme_signaling_terms(
    scheme: AnalyzedScheme,
    catalog: &MessageCatalog,
    topology: &Topology,
) -> SchemeTerms {
    let s = |id: MsgId| catalog.size(id) as u64;
    let m = catalog.candidate_count as u64;
    let (air, mag_mag, mag_miis, mag_lma) = match scheme {
        AnalyzedScheme::Standard => (
            s(MsgId::GetInfoRequest)
                + s(MsgId::GetInfoResponse)
                + s(MsgId::CandidateQueryRequest)
                + s(MsgId::CandidateQueryResponse)
                + s(MsgId::MnCommitRequest)
                + s(MsgId::MnCommitResponse)
                + s(MsgId::Rs)
                + s(MsgId::Ra),
            m * (s(MsgId::ResourceQueryRequest) + s(MsgId::ResourceQueryResponse))
                + s(MsgId::CommitRequest)
                + s(MsgId::CommitResponse)
                + s(MsgId::CompleteRequest)
                + s(MsgId::CompleteResponse),
            s(MsgId::GetInfoRequest) + s(MsgId::GetInfoResponse),
            s(MsgId::AaaQuery) + s(MsgId::AaaReply) + 3 * (s(MsgId::Pbu) + s(MsgId::Pba)),
        ),
        AnalyzedScheme::Fast => (
            s(MsgId::LinkGoingDown)
                + s(MsgId::CandidateQueryRequest)
                + s(MsgId::CandidateQueryResponse)
                + s(MsgId::NetCommitRequest)
                + s(MsgId::NetCommitResponse)
                + s(MsgId::Rs)
                + s(MsgId::Ra),
            m * (s(MsgId::ResourceQueryRequest) + s(MsgId::ResourceQueryResponse))
                + s(MsgId::CommitRequest)
                + s(MsgId::CommitResponse)
                + s(MsgId::CompleteRequest)
                + s(MsgId::CompleteResponse)
                + s(MsgId::Hi)
                + s(MsgId::Hack),
            s(MsgId::GetInfoRequest) + s(MsgId::GetInfoResponse),
            3 * (s(MsgId::Pbu) + s(MsgId::Pba)),
        ),
        AnalyzedScheme::Proposed => (
            s(MsgId::LinkGoingDown)
                + s(MsgId::LinkUp)
                + s(MsgId::CandidateQueryRequest)
                + s(MsgId::CandidateQueryResponse)
                + s(MsgId::NetCommitRequest)
                + s(MsgId::NetCommitResponse)
                + s(MsgId::Una),
            m * (s(MsgId::ResourceQueryRequest) + s(MsgId::ResourceQueryResponse))
                + s(MsgId::CommitRequestExt)
                + s(MsgId::CommitResponseExt)
                + s(MsgId::CompleteRequest)
                + s(MsgId::CompleteResponse),
            s(MsgId::GetInfoRequest) + s(MsgId::GetInfoResponse),
            2 * (s(MsgId::Pbu) + s(MsgId::Pba)),
        ),
    };
    SchemeTerms {
        wireless_octet_hops: air * topology.mn_mag_hops as u64,
        mag_mag_octet_hops: mag_mag * topology.mag_mag_hops as u64,
        mag_miis_octet_hops: mag_miis * topology.mag_miis_hops as u64,
        mag_lma_octet_hops: mag_lma * topology.mag_lma_hops as u64,
    }
}

/// Exact per-handover signaling cost split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostSplit {
    pub wireless: Rational,
    pub wired: Rational,
}

impl CostSplit {
    pub fn total(&self) -> Rational {
        self.wireless + self.wired
    }
}

/// Signaling cost of one handover under `params`, split into wireless and
/// wired parts.
pub fn per_handover_cost(
    scheme: AnalyzedScheme,
    params: &CostParams,
    catalog: &MessageCatalog,
) -> CostSplit {
    let terms = scheme_signaling_terms(scheme, catalog, &params.topology);
    let wireless = params.wireless_unit_cost
        * params.retx_multiplier()
        * Ratio::from_integer(terms.wireless_octet_hops as i64);
    let wired = params.wired_unit_cost * Ratio::from_integer(terms.wired_octet_hops() as i64);
    CostSplit { wireless, wired }
}

/// Signaling cost per second: handover rate times per-handover cost.
pub fn total_cost<S: Scalar>(
    scheme: AnalyzedScheme,
    params: &CostParams,
    mobility: &MobilityParams<S>,
    catalog: &MessageCatalog,
) -> Result<S, AnalyticError> {
    let rate = handover_rate(mobility)?;
    let per_ho = per_handover_cost(scheme, params, catalog).total();
    let per_ho_s = S::from_f64(ratio_to_f64(per_ho)).ok_or(AnalyticError::Domain(
        "per-handover cost not representable in scalar type",
    ))?;
    Ok(rate * per_ho_s)
}

/// Rational-to-float conversion used at model boundaries.
pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}
