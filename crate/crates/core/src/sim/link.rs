//! Link model shared by all scenarios: wireless ARQ delays (expected or
//! sampled) and wired store-and-forward delays.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::{
    arq_outcome_probability, frame_count, frame_delay, wired_packet_delay, AnalyticError,
    DelayParams, Topology,
};

use super::Mode;

/// Wireless ARQ link parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WirelessLinkParams {
    /// Interframe time, ms.
    pub tau_ms: f64,
    /// Frame error rate, in `[0, 1)`.
    pub rho_f: f64,
    /// Frame size, octets.
    pub frame_octets: u32,
    /// One-way wireless link delay, ms.
    pub wireless_delay_ms: f64,
    /// Retransmission limit of the ARQ model.
    pub retx_limit: u32,
}

impl Default for WirelessLinkParams {
    fn default() -> Self {
        WirelessLinkParams {
            tau_ms: 20.0,
            rho_f: 0.1,
            frame_octets: 100,
            wireless_delay_ms: 10.0,
            retx_limit: 10,
        }
    }
}

impl WirelessLinkParams {
    pub fn validate(&self) -> Result<(), AnalyticError> {
        if !(self.tau_ms > 0.0) {
            return Err(AnalyticError::Domain("interframe time must be positive"));
        }
        if !(0.0..1.0).contains(&self.rho_f) {
            return Err(AnalyticError::Domain("frame error rate must be in [0, 1)"));
        }
        if self.frame_octets == 0 {
            return Err(AnalyticError::Domain("frame size must be positive"));
        }
        if self.retx_limit == 0 {
            return Err(AnalyticError::Domain("retransmission limit must be >= 1"));
        }
        if !(self.wireless_delay_ms > 0.0) {
            return Err(AnalyticError::Domain("wireless delay must be positive"));
        }
        Ok(())
    }
}

/// Wired link parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WiredLinkParams {
    /// Bandwidth, octets per second.
    pub bw_octets_per_s: f64,
    /// Path latency, ms (applied once per path).
    pub latency_ms: f64,
}

impl Default for WiredLinkParams {
    fn default() -> Self {
        WiredLinkParams {
            bw_octets_per_s: 12.5e6,
            latency_ms: 2.0,
        }
    }
}

impl WiredLinkParams {
    pub fn validate(&self) -> Result<(), AnalyticError> {
        if !(self.bw_octets_per_s > 0.0) {
            return Err(AnalyticError::Domain("wired bandwidth must be positive"));
        }
        if !(self.latency_ms >= 0.0) {
            return Err(AnalyticError::Domain("wired latency must be non-negative"));
        }
        Ok(())
    }
}

/// Draws one frame transport delay from the ARQ outcome distribution:
/// direct success with probability `1 - rho_f` yields the link delay;
/// outcome `(i, j)` yields `2 i D_wl + 2 (j - 1) tau`. Outcome weights are
/// renormalized over the truncated series.
pub fn sample_frame_delay(params: &DelayParams<f64>, rng: &mut impl Rng) -> f64 {
    let mut outcomes: Vec<(f64, f64)> = Vec::new();
    let mut total = 1.0 - params.rho_f;
    outcomes.push((total, params.wireless_delay_ms));
    for i in 1..=params.retx_limit {
        for j in 1..=i {
            let w = arq_outcome_probability(params.rho_f, i, j).expect("valid indices");
            let d =
                2.0 * i as f64 * params.wireless_delay_ms + 2.0 * (j - 1) as f64 * params.tau_ms;
            total += w;
            outcomes.push((w, d));
        }
    }
    let mut u = rng.gen::<f64>() * total;
    for (w, d) in &outcomes {
        if u < *w {
            return *d;
        }
        u -= w;
    }
    outcomes.last().expect("non-empty outcome table").1
}

/// Precomputed outcome table for repeated sampling within one scenario.
#[derive(Debug, Clone)]
struct FrameOutcomes {
    outcomes: Vec<(f64, f64)>,
    total: f64,
}

impl FrameOutcomes {
    fn new(params: &DelayParams<f64>) -> Self {
        let mut outcomes = Vec::new();
        let mut total = 1.0 - params.rho_f;
        outcomes.push((total, params.wireless_delay_ms));
        for i in 1..=params.retx_limit {
            for j in 1..=i {
                let w = arq_outcome_probability(params.rho_f, i, j).expect("valid indices");
                let d = 2.0 * i as f64 * params.wireless_delay_ms
                    + 2.0 * (j - 1) as f64 * params.tau_ms;
                total += w;
                outcomes.push((w, d));
            }
        }
        FrameOutcomes { outcomes, total }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        let mut u = rng.gen::<f64>() * self.total;
        for (w, d) in &self.outcomes {
            if u < *w {
                return *d;
            }
            u -= w;
        }
        self.outcomes.last().expect("non-empty").1
    }
}

/// Combined link model for one scenario.
#[derive(Debug, Clone)]
pub struct LinkModel {
    pub params: DelayParams<f64>,
    pub topology: Topology,
    pub signaling_fail_prob: f64,
    pub mode: Mode,
    frame_outcomes: FrameOutcomes,
    expected_frame_delay: f64,
}

/// An air transmission plan: transcript-visible failed attempts (offset
/// from the send time) plus the total send-to-receive delay.
#[derive(Debug, Clone, Default)]
pub struct AirPlan {
    /// Offsets of failed whole-message attempts, ms after send.
    pub failed_attempt_offsets: Vec<f64>,
    /// Offset of successful reception, ms after send.
    pub total_delay: f64,
}

impl LinkModel {
    pub fn new(
        params: DelayParams<f64>,
        topology: Topology,
        signaling_fail_prob: f64,
        mode: Mode,
    ) -> Self {
        let frame_outcomes = FrameOutcomes::new(&params);
        let expected_frame_delay = frame_delay(&params);
        LinkModel {
            params,
            topology,
            signaling_fail_prob,
            mode,
            frame_outcomes,
            expected_frame_delay,
        }
    }

    /// One-way air delay for a packet of `octets` (no failure model).
    pub fn air_delay(&self, octets: u32, rng: &mut ChaCha8Rng) -> f64 {
        let k = frame_count(octets, self.params.frame_octets);
        let head = match self.mode {
            Mode::Deterministic => self.expected_frame_delay,
            Mode::Sampled => self.frame_outcomes.draw(rng),
        };
        head + (k - 1) as f64 * self.params.tau_ms
    }

    /// Air plan for a signaling message: in sampled mode each message
    /// independently fails with the wireless failure probability and is
    /// retransmitted after one interframe time.
    pub fn air_signal_plan(&self, octets: u32, rng: &mut ChaCha8Rng) -> AirPlan {
        let mut plan = AirPlan::default();
        let mut offset = 0.0;
        if self.mode == Mode::Sampled {
            while rng.gen::<f64>() < self.signaling_fail_prob {
                offset += self.params.tau_ms;
                plan.failed_attempt_offsets.push(offset);
            }
        }
        plan.total_delay = offset + self.air_delay(octets, rng);
        plan
    }

    /// One-way wired delay over `hops` hops.
    pub fn wired_delay(&self, octets: u32, hops: u32) -> f64 {
        wired_packet_delay(&self.params, octets, hops).expect("hop counts validated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn params() -> DelayParams<f64> {
        DelayParams::default()
    }

    #[test]
    fn error_free_link_always_direct() {
        let p = DelayParams {
            rho_f: 0.0,
            ..params()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            assert_eq!(sample_frame_delay(&p, &mut rng), 10.0);
        }
    }

    #[test]
    fn sampled_mean_matches_expected_frame_delay() {
        let p = params();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 1_000_000;
        let mean: f64 = (0..n)
            .map(|_| sample_frame_delay(&p, &mut rng))
            .sum::<f64>()
            / n as f64;
        let expected = frame_delay(&p);
        assert!(
            (mean - expected).abs() / expected < 0.02,
            "mean {mean} vs expected {expected}"
        );
    }

    #[test]
    fn deterministic_air_delay_is_expected_value() {
        let lm = LinkModel::new(params(), Topology::default(), 0.5, Mode::Deterministic);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!((lm.air_delay(1024, &mut rng) - 211.51664628750572).abs() < 1e-9);
        assert!((lm.air_delay(16, &mut rng) - 11.51664628750572).abs() < 1e-9);
    }

    #[test]
    fn deterministic_signal_plan_never_fails() {
        let lm = LinkModel::new(params(), Topology::default(), 0.9, Mode::Deterministic);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let plan = lm.air_signal_plan(100, &mut rng);
        assert!(plan.failed_attempt_offsets.is_empty());
    }

    #[test]
    fn sampled_signal_plan_retransmits() {
        let lm = LinkModel::new(params(), Topology::default(), 0.5, Mode::Sampled);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut saw_failure = false;
        for _ in 0..50 {
            let plan = lm.air_signal_plan(100, &mut rng);
            if !plan.failed_attempt_offsets.is_empty() {
                saw_failure = true;
                assert!(plan.total_delay > *plan.failed_attempt_offsets.last().unwrap());
            }
        }
        assert!(saw_failure);
    }

    #[test]
    fn wired_delay_example() {
        let lm = LinkModel::new(params(), Topology::default(), 0.5, Mode::Deterministic);
        assert!((lm.wired_delay(76, 10) - 2.0608).abs() < 1e-12);
    }
}
