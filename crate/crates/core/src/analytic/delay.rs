//! Link-delay and handover-delay models.
//!
//! The wireless link uses a stop-and-wait ARQ abstraction: a frame either
//! crosses the link directly (probability `1 - rho_f`) or is delivered
//! after `i` round trips plus `j - 1` extra interframe gaps, with outcome
//! probabilities decaying geometrically in the frame error rate.

use super::catalog::{MessageCatalog, MsgId};
use super::{AnalyticError, AnalyzedScheme, Topology};
use crate::Scalar;

/// Tunnel encapsulation overhead added to packets forwarded to, and
/// buffered at, a target gateway (octets).
pub const TUNNEL_HEADER_OCTETS: u32 = 40;

/// Parameters of the wireless ARQ link, the wired links, and the data flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayParams<S> {
    /// Interframe time, ms.
    pub tau_ms: S,
    /// Frame error rate over the wireless link, in `[0, 1)`.
    pub rho_f: S,
    /// Wireless frame size, octets.
    pub frame_octets: u32,
    /// One-way wireless link delay, ms.
    pub wireless_delay_ms: S,
    /// Upper summation bound / retransmission limit of the ARQ model.
    pub retx_limit: u32,
    /// Wired link bandwidth, octets per second.
    pub wired_bw_octets_per_s: S,
    /// Wired path latency, ms (applied once per path).
    pub wired_latency_ms: S,
    /// Link-layer handover delay, ms.
    pub l2_handover_ms: S,
    /// Downlink data packet size, octets.
    pub data_packet_octets: u32,
}

impl<S: Scalar> Default for DelayParams<S> {
    fn default() -> Self {
        DelayParams {
            tau_ms: S::from_u32_exact(20),
            rho_f: S::from_f64(0.1).unwrap(),
            frame_octets: 100,
            wireless_delay_ms: S::from_u32_exact(10),
            retx_limit: 10,
            wired_bw_octets_per_s: S::from_f64(12.5e6).unwrap(),
            wired_latency_ms: S::from_u32_exact(2),
            l2_handover_ms: S::from_f64(45.35).unwrap(),
            data_packet_octets: 1024,
        }
    }
}

impl<S: Scalar> DelayParams<S> {
    pub fn validate(&self) -> Result<(), AnalyticError> {
        if !(self.tau_ms > S::zero()) {
            return Err(AnalyticError::Domain("interframe time must be positive"));
        }
        if !(self.rho_f >= S::zero() && self.rho_f < S::one()) {
            return Err(AnalyticError::Domain("frame error rate must be in [0, 1)"));
        }
        if self.frame_octets == 0 {
            return Err(AnalyticError::Domain("frame size must be positive"));
        }
        if self.retx_limit == 0 {
            return Err(AnalyticError::Domain("retransmission limit must be >= 1"));
        }
        if !(self.wired_bw_octets_per_s > S::zero()) {
            return Err(AnalyticError::Domain("wired bandwidth must be positive"));
        }
        if self.wired_latency_ms < S::zero() || self.l2_handover_ms < S::zero() {
            return Err(AnalyticError::Domain("latencies must be non-negative"));
        }
        Ok(())
    }
}

/// Probability that a frame is delivered after `round_trips` link round
/// trips and `slot` of the interframe schedule (`1 <= slot <= round_trips`).
pub fn arq_outcome_probability<S: Scalar>(
    rho_f: S,
    round_trips: u32,
    slot: u32,
) -> Result<S, AnalyticError> {
    if round_trips < 1 {
        return Err(AnalyticError::Domain("round_trips must be >= 1"));
    }
    if slot < 1 || slot > round_trips {
        return Err(AnalyticError::Domain(
            "slot must satisfy 1 <= slot <= round_trips",
        ));
    }
    let i = round_trips as u64;
    let exponent = (i * i - i) / 2 + slot as u64 - 1;
    let one = S::one();
    let base = (S::from_u32_exact(2) - rho_f) * rho_f;
    Ok(rho_f * (one - rho_f) * (one - rho_f) * base.powi(exponent as i32))
}

/// Expected one-way transport delay of a single frame over the wireless
/// link, ms.
pub fn frame_delay<S: Scalar>(p: &DelayParams<S>) -> S {
    let two = S::from_u32_exact(2);
    let mut acc = p.wireless_delay_ms * (S::one() - p.rho_f);
    for i in 1..=p.retx_limit {
        for j in 1..=i {
            let prob = arq_outcome_probability(p.rho_f, i, j).expect("valid indices");
            let delay = two * S::from_u32_exact(i) * p.wireless_delay_ms
                + two * S::from_u32_exact(j - 1) * p.tau_ms;
            acc += prob * delay;
        }
    }
    acc
}

/// Total probability mass captured by the truncated ARQ outcome series
/// (approaches 1 as the retransmission limit grows).
pub fn arq_probability_mass<S: Scalar>(rho_f: S, retx_limit: u32) -> S {
    let mut mass = S::one() - rho_f;
    for i in 1..=retx_limit {
        for j in 1..=i {
            mass += arq_outcome_probability(rho_f, i, j).expect("valid indices");
        }
    }
    mass
}

/// Number of frames a packet of `packet_octets` occupies.
pub fn frame_count(packet_octets: u32, frame_octets: u32) -> u32 {
    packet_octets.div_ceil(frame_octets)
}

/// Expected one-way packet transport delay over the wireless link, ms.
pub fn wireless_packet_delay<S: Scalar>(p: &DelayParams<S>, packet_octets: u32) -> S {
    debug_assert!(packet_octets > 0);
    let k = frame_count(packet_octets, p.frame_octets);
    frame_delay(p) + S::from_u32_exact(k - 1) * p.tau_ms
}

/// One-way packet transport delay over a wired path of `hops` hops, ms.
pub fn wired_packet_delay<S: Scalar>(
    p: &DelayParams<S>,
    packet_octets: u32,
    hops: u32,
) -> Result<S, AnalyticError> {
    if hops == 0 {
        return Err(AnalyticError::Domain("wired path needs at least one hop"));
    }
    let transmit_s =
        S::from_u32_exact(packet_octets) * S::from_u32_exact(hops) / p.wired_bw_octets_per_s;
    Ok(transmit_s * S::from_u32_exact(1000) + p.wired_latency_ms)
}

/// Expected handover delay of a scheme, ms: the time from losing
/// connectivity on the serving link until the first downlink packet
/// arrives from the target gateway.
pub fn handover_delay<S: Scalar>(
    scheme: AnalyzedScheme,
    p: &DelayParams<S>,
    catalog: &MessageCatalog,
    topology: &Topology,
) -> S {
    let data = p.data_packet_octets;
    match scheme {
        // Router solicitation/advertisement, then a binding update round
        // trip to the anchor, then the first (untunneled) packet.
        AnalyzedScheme::Standard => {
            wireless_packet_delay(p, catalog.size(MsgId::Rs))
                + wireless_packet_delay(p, catalog.size(MsgId::Ra))
                + wired_packet_delay(p, catalog.size(MsgId::Pbu), topology.mag_lma_hops)
                    .expect("hops >= 1")
                + wired_packet_delay(p, catalog.size(MsgId::Pba), topology.mag_lma_hops)
                    .expect("hops >= 1")
                + wireless_packet_delay(p, data)
                + p.l2_handover_ms
        }
        // Buffered packets carry the tunnel header; the router solicitation
        // triggers their delivery.
        AnalyzedScheme::Fast => {
            p.l2_handover_ms
                + wireless_packet_delay(p, catalog.size(MsgId::Rs))
                + wireless_packet_delay(p, data + TUNNEL_HEADER_OCTETS)
        }
        // Same shape with the neighbor advertisement as the trigger.
        AnalyzedScheme::Proposed => {
            p.l2_handover_ms
                + wireless_packet_delay(p, catalog.size(MsgId::Una))
                + wireless_packet_delay(p, data + TUNNEL_HEADER_OCTETS)
        }
    }
}
