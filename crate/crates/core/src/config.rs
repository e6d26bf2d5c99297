//! Line-oriented `key = value` run configuration.
//!
//! Unknown keys are rejected. Missing keys take the documented defaults.
//! `#` starts a comment. At most one `sweep.<param> = start:step:stop`
//! axis may be present; sweep endpoints are parsed as exact decimals so
//! swept values carry no accumulated rounding.
//!
//! Key list (defaults in parentheses):
//!
//! ```text
//! scheme (proposed)          standard_mobile | standard_network |
//!                            fpmip_predictive | fpmip_reactive |
//!                            fast_mih | proposed
//! seed (1)                   u64 run seed
//! mode (deterministic)       deterministic | sampled
//! tau_ms (20)                wireless interframe time
//! rho_f (0.1)                wireless frame error rate
//! l_f_octets (100)           wireless frame size
//! d_wl_ms (10)               one-way wireless link delay
//! retx_limit (10)            ARQ retransmission limit
//! bw_wired_octets_per_s (12500000)
//! d_wired_ms (2)             wired path latency
//! t_l2_ms (45.35)            link-layer handover delay
//! l_d_octets (1024)          downlink data packet size
//! p_f (0.5)                  wireless signaling failure probability
//! unit_cost_wired (1)        cost unit A
//! unit_cost_wireless (1.5)   cost unit B
//! retx_factor (paper)        paper | expected_transmissions
//! h_mn_mag (1)               access hop count
//! h_mag_lma (10)             gateway-anchor hop count
//! h_mag_miis (10)            gateway-infoserver hop count
//! h_mag_mag (10)             gateway-gateway hop count
//! n_neighbors (6)            neighboring network count
//! m_pref_poas (6)            preferred/candidate gateway count
//! city_a_m (36000)           section length
//! city_b_m (24000)           section width
//! road_dx_m (10)             vertical road spacing
//! road_dy_m (10)             horizontal road spacing
//! road_d_m                   sets both road spacings
//! cell_radius_m (100)
//! v_min_mps (1)              minimum node speed
//! v_max_mps (50)             maximum node speed
//! t_pause_max_s (70)         maximum pause time
//! m_mobility (6)             segment count of the crossing model
//! cbr_interval_ms (10)       downlink packet interval
//! buffer_capacity (256)      gateway buffer capacity, packets
//! ho_trigger_ms (1000)       handover flow start time
//! cooldown_ms (100)          traffic tail after completion
//! ctx_forwarding (true)      request forwarding flag
//! ctx_buffering (true)       request buffering flag
//! previous_ap_id (0)         previous point-of-attachment id
//! fault.hack_status (0)      nonzero injects a pre-registration reject
//! fault.commit_status (0)    128..132 injects a commit reject
//! fault.no_candidates (false)
//! fault.unknown_prev_ap (false)
//! sweep.<numeric-key> = start:step:stop
//! ```

use std::collections::BTreeSet;

use num_rational::Ratio;
use thiserror::Error;

use crate::analytic::{CostParams, MessageCatalog, RetxFactor, Topology};
use crate::protocol::{HandoverContext, HandoverFlag, Scheme};
use crate::sim::{Mode, Scenario, WiredLinkParams, WirelessLinkParams};
use crate::{MobilityParams, Rational};

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value for `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },
    #[error("multiple sweep axes: `{first}` and `{second}` (at most one allowed)")]
    MultipleSweeps { first: String, second: String },
    #[error("key `{key}` cannot be swept")]
    NotSweepable { key: String },
}

/// An exact decimal number: `num / 10^scale`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decimal {
    pub num: i64,
    pub scale: u32,
}

impl Decimal {
    pub fn parse(s: &str) -> Option<Decimal> {
        let s = s.trim();
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1i64, r),
            None => (1, s),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let scale = frac_part.len() as u32;
        let digits = format!("{int_part}{frac_part}");
        let num: i64 = digits.parse().ok()?;
        Some(Decimal {
            num: sign * num,
            scale,
        })
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / 10f64.powi(self.scale as i32)
    }

    pub fn to_ratio(self) -> Rational {
        Ratio::new(self.num, 10i64.pow(self.scale))
    }

    fn rescale(self, scale: u32) -> Decimal {
        Decimal {
            num: self.num * 10i64.pow(scale - self.scale),
            scale,
        }
    }
}

impl std::fmt::Display for Decimal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

/// A `start:step:stop` sweep axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRange {
    pub start: Decimal,
    pub step: Decimal,
    pub stop: Decimal,
}

impl SweepRange {
    pub fn parse(s: &str) -> Option<SweepRange> {
        let mut parts = s.split(':');
        let start = Decimal::parse(parts.next()?)?;
        let step = Decimal::parse(parts.next()?)?;
        let stop = Decimal::parse(parts.next()?)?;
        if parts.next().is_some() || step.num <= 0 {
            return None;
        }
        Some(SweepRange { start, step, stop })
    }

    /// All values `start, start+step, ...` up to and including `stop`.
    pub fn values(&self) -> Vec<Decimal> {
        let scale = self.start.scale.max(self.step.scale).max(self.stop.scale);
        let (start, step, stop) = (
            self.start.rescale(scale),
            self.step.rescale(scale),
            self.stop.rescale(scale),
        );
        let mut out = Vec::new();
        let mut v = start.num;
        while v <= stop.num {
            out.push(Decimal { num: v, scale });
            v += step.num;
        }
        out
    }
}

/// Parsed run configuration with every model parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scheme: Scheme,
    pub seed: u64,
    pub mode: Mode,
    pub wireless: WirelessLinkParams,
    pub wired: WiredLinkParams,
    pub t_l2_ms: f64,
    pub l_d_octets: u32,
    pub p_f: Rational,
    pub unit_cost_wired: Rational,
    pub unit_cost_wireless: Rational,
    pub retx_factor: RetxFactor,
    pub topology: Topology,
    pub n_neighbors: u32,
    pub m_pref_poas: u32,
    pub city_a_m: f64,
    pub city_b_m: f64,
    pub road_dx_m: f64,
    pub road_dy_m: f64,
    pub cell_radius_m: f64,
    pub v_min_mps: f64,
    pub v_max_mps: f64,
    pub t_pause_max_s: f64,
    pub m_mobility: u32,
    pub cbr_interval_ms: f64,
    pub buffer_capacity: usize,
    pub ho_trigger_ms: f64,
    pub cooldown_ms: f64,
    pub ctx_forwarding: bool,
    pub ctx_buffering: bool,
    pub previous_ap_id: u32,
    pub fault_hack_status: u8,
    pub fault_commit_status: u8,
    pub fault_no_candidates: bool,
    pub fault_unknown_prev_ap: bool,
    pub sweep: Option<(String, SweepRange)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scheme: Scheme::ProposedIntegrated,
            seed: 1,
            mode: Mode::Deterministic,
            wireless: WirelessLinkParams::default(),
            wired: WiredLinkParams::default(),
            t_l2_ms: 45.35,
            l_d_octets: 1024,
            p_f: Ratio::new(1, 2),
            unit_cost_wired: Ratio::from_integer(1),
            unit_cost_wireless: Ratio::new(3, 2),
            retx_factor: RetxFactor::FailureOdds,
            topology: Topology::default(),
            n_neighbors: 6,
            m_pref_poas: 6,
            city_a_m: 36000.0,
            city_b_m: 24000.0,
            road_dx_m: 10.0,
            road_dy_m: 10.0,
            cell_radius_m: 100.0,
            v_min_mps: 1.0,
            v_max_mps: 50.0,
            t_pause_max_s: 70.0,
            m_mobility: 6,
            cbr_interval_ms: 10.0,
            buffer_capacity: 256,
            ho_trigger_ms: 1000.0,
            cooldown_ms: 100.0,
            ctx_forwarding: true,
            ctx_buffering: true,
            previous_ap_id: 0,
            fault_hack_status: 0,
            fault_commit_status: 0,
            fault_no_candidates: false,
            fault_unknown_prev_ap: false,
            sweep: None,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let stripped = raw.split('#').next().unwrap_or("").trim();
            if stripped.is_empty() {
                continue;
            }
            let Some((key, value)) = stripped.split_once('=') else {
                return Err(ConfigError::Syntax {
                    line,
                    text: stripped.to_string(),
                });
            };
            cfg.apply(line, key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    fn apply(&mut self, line: usize, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = |key: &str, reason: &str| ConfigError::BadValue {
            line,
            key: key.to_string(),
            reason: reason.to_string(),
        };
        if let Some(param) = key.strip_prefix("sweep.") {
            let range = SweepRange::parse(value)
                .ok_or_else(|| bad(key, "expected start:step:stop with positive step"))?;
            if !Self::is_sweepable(param) {
                return Err(ConfigError::NotSweepable {
                    key: param.to_string(),
                });
            }
            if let Some((first, _)) = &self.sweep {
                return Err(ConfigError::MultipleSweeps {
                    first: first.clone(),
                    second: param.to_string(),
                });
            }
            self.sweep = Some((param.to_string(), range));
            return Ok(());
        }
        macro_rules! num {
            ($ty:ty) => {
                value.parse::<$ty>().map_err(|e| bad(key, &e.to_string()))?
            };
        }
        let parse_bool = |v: &str| match v {
            "true" | "on" | "yes" | "1" => Ok(true),
            "false" | "off" | "no" | "0" => Ok(false),
            _ => Err(bad(key, "expected true/false")),
        };
        let parse_ratio = |v: &str| {
            Decimal::parse(v)
                .map(Decimal::to_ratio)
                .ok_or_else(|| bad(key, "expected a decimal number"))
        };
        match key {
            "scheme" => {
                self.scheme =
                    Scheme::from_name(value).ok_or_else(|| bad(key, "unknown scheme name"))?
            }
            "seed" => self.seed = num!(u64),
            "mode" => {
                self.mode = Mode::from_name(value)
                    .ok_or_else(|| bad(key, "expected deterministic or sampled"))?
            }
            "tau_ms" => self.wireless.tau_ms = num!(f64),
            "rho_f" => self.wireless.rho_f = num!(f64),
            "l_f_octets" => self.wireless.frame_octets = num!(u32),
            "d_wl_ms" => self.wireless.wireless_delay_ms = num!(f64),
            "retx_limit" => self.wireless.retx_limit = num!(u32),
            "bw_wired_octets_per_s" => self.wired.bw_octets_per_s = num!(f64),
            "d_wired_ms" => self.wired.latency_ms = num!(f64),
            "t_l2_ms" => self.t_l2_ms = num!(f64),
            "l_d_octets" => self.l_d_octets = num!(u32),
            "p_f" => self.p_f = parse_ratio(value)?,
            "unit_cost_wired" => self.unit_cost_wired = parse_ratio(value)?,
            "unit_cost_wireless" => self.unit_cost_wireless = parse_ratio(value)?,
            "retx_factor" => {
                self.retx_factor = match value {
                    "paper" => RetxFactor::FailureOdds,
                    "expected_transmissions" => RetxFactor::ExpectedTransmissions,
                    _ => return Err(bad(key, "expected paper or expected_transmissions")),
                }
            }
            "h_mn_mag" => self.topology.mn_mag_hops = num!(u32),
            "h_mag_lma" => self.topology.mag_lma_hops = num!(u32),
            "h_mag_miis" => self.topology.mag_miis_hops = num!(u32),
            "h_mag_mag" => self.topology.mag_mag_hops = num!(u32),
            "n_neighbors" => self.n_neighbors = num!(u32),
            "m_pref_poas" => self.m_pref_poas = num!(u32),
            "city_a_m" => self.city_a_m = num!(f64),
            "city_b_m" => self.city_b_m = num!(f64),
            "road_dx_m" => self.road_dx_m = num!(f64),
            "road_dy_m" => self.road_dy_m = num!(f64),
            "road_d_m" => {
                let v = num!(f64);
                self.road_dx_m = v;
                self.road_dy_m = v;
            }
            "cell_radius_m" => self.cell_radius_m = num!(f64),
            "v_min_mps" => self.v_min_mps = num!(f64),
            "v_max_mps" => self.v_max_mps = num!(f64),
            "t_pause_max_s" => self.t_pause_max_s = num!(f64),
            "m_mobility" => self.m_mobility = num!(u32),
            "cbr_interval_ms" => self.cbr_interval_ms = num!(f64),
            "buffer_capacity" => self.buffer_capacity = num!(usize),
            "ho_trigger_ms" => self.ho_trigger_ms = num!(f64),
            "cooldown_ms" => self.cooldown_ms = num!(f64),
            "ctx_forwarding" => self.ctx_forwarding = parse_bool(value)?,
            "ctx_buffering" => self.ctx_buffering = parse_bool(value)?,
            "previous_ap_id" => self.previous_ap_id = num!(u32),
            "fault.hack_status" => self.fault_hack_status = num!(u8),
            "fault.commit_status" => self.fault_commit_status = num!(u8),
            "fault.no_candidates" => self.fault_no_candidates = parse_bool(value)?,
            "fault.unknown_prev_ap" => self.fault_unknown_prev_ap = parse_bool(value)?,
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// Numeric keys a sweep or figure axis may vary.
    pub fn is_sweepable(key: &str) -> bool {
        matches!(
            key,
            "tau_ms"
                | "rho_f"
                | "d_wl_ms"
                | "t_l2_ms"
                | "p_f"
                | "h_mn_mag"
                | "h_mag_lma"
                | "h_mag_miis"
                | "h_mag_mag"
                | "city_a_m"
                | "city_b_m"
                | "road_dx_m"
                | "road_dy_m"
                | "road_d_m"
                | "cell_radius_m"
                | "v_min_mps"
                | "v_max_mps"
                | "t_pause_max_s"
                | "cbr_interval_ms"
        )
    }

    /// Applies one swept value to its key.
    pub fn set_swept(&mut self, key: &str, value: Decimal) -> Result<(), ConfigError> {
        let v = value.to_f64();
        match key {
            "tau_ms" => self.wireless.tau_ms = v,
            "rho_f" => self.wireless.rho_f = v,
            "d_wl_ms" => self.wireless.wireless_delay_ms = v,
            "t_l2_ms" => self.t_l2_ms = v,
            "p_f" => self.p_f = value.to_ratio(),
            "h_mn_mag" => self.topology.mn_mag_hops = v as u32,
            "h_mag_lma" => self.topology.mag_lma_hops = v as u32,
            "h_mag_miis" => self.topology.mag_miis_hops = v as u32,
            "h_mag_mag" => self.topology.mag_mag_hops = v as u32,
            "city_a_m" => self.city_a_m = v,
            "city_b_m" => self.city_b_m = v,
            "road_dx_m" => self.road_dx_m = v,
            "road_dy_m" => self.road_dy_m = v,
            "road_d_m" => {
                self.road_dx_m = v;
                self.road_dy_m = v;
            }
            "cell_radius_m" => self.cell_radius_m = v,
            "v_min_mps" => self.v_min_mps = v,
            "v_max_mps" => self.v_max_mps = v,
            "t_pause_max_s" => self.t_pause_max_s = v,
            "cbr_interval_ms" => self.cbr_interval_ms = v,
            _ => {
                return Err(ConfigError::NotSweepable {
                    key: key.to_string(),
                })
            }
        }
        Ok(())
    }

    /// The handover context this configuration describes.
    pub fn context(&self) -> HandoverContext {
        let mut flags = BTreeSet::from([HandoverFlag::P]);
        if self.ctx_forwarding {
            flags.insert(HandoverFlag::F);
        }
        if self.ctx_buffering {
            flags.insert(HandoverFlag::U);
        }
        HandoverContext {
            flags,
            previous_ap_id: self.previous_ap_id,
            fault_hack_status: self.fault_hack_status,
            fault_commit_status: self.fault_commit_status,
            fault_no_candidates: self.fault_no_candidates,
            fault_unknown_prev_ap: self.fault_unknown_prev_ap,
            ..HandoverContext::default()
        }
    }

    /// Simulation scenario for `self.scheme`.
    pub fn scenario(&self) -> Scenario {
        self.scenario_for(self.scheme)
    }

    pub fn scenario_for(&self, scheme: Scheme) -> Scenario {
        Scenario {
            scheme,
            wireless: self.wireless,
            wired: self.wired,
            topology: self.topology,
            t_l2_ms: self.t_l2_ms,
            p_f: crate::analytic::ratio_to_f64(self.p_f),
            data_packet_octets: self.l_d_octets,
            cbr_interval_ms: self.cbr_interval_ms,
            buffer_capacity: self.buffer_capacity,
            trigger_ms: self.ho_trigger_ms,
            cooldown_ms: self.cooldown_ms,
            candidate_count: self.m_pref_poas,
            neighbor_count: self.n_neighbors,
            seed: self.seed,
            mode: self.mode,
            ctx: self.context(),
        }
    }

    pub fn delay_params(&self) -> crate::DelayParams {
        self.scenario().delay_params()
    }

    pub fn cost_params(&self) -> CostParams {
        CostParams {
            wireless_fail_prob: self.p_f,
            wired_unit_cost: self.unit_cost_wired,
            wireless_unit_cost: self.unit_cost_wireless,
            retx_factor: self.retx_factor,
            topology: self.topology,
        }
    }

    pub fn mobility_params(&self) -> MobilityParams {
        MobilityParams {
            section_length_m: self.city_a_m,
            section_width_m: self.city_b_m,
            road_spacing_x_m: self.road_dx_m,
            road_spacing_y_m: self.road_dy_m,
            cell_radius_m: self.cell_radius_m,
            v_min_mps: self.v_min_mps,
            v_max_mps: self.v_max_mps,
            pause_max_s: self.t_pause_max_s,
            crossing_segments: self.m_mobility,
        }
    }

    pub fn catalog(&self) -> MessageCatalog {
        MessageCatalog::new(self.n_neighbors, self.m_pref_poas)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_roundtrip() {
        let cfg = RunConfig::parse("").unwrap();
        assert_eq!(cfg, RunConfig::default());
    }

    #[test]
    fn parses_keys_and_comments() {
        let cfg = RunConfig::parse(
            "# comment\nscheme = fast_mih\nrho_f = 0.2  # trailing\np_f = 0.25\nh_mag_mag = 20\n",
        )
        .unwrap();
        assert_eq!(cfg.scheme, Scheme::FastHandoverMih);
        assert_eq!(cfg.wireless.rho_f, 0.2);
        assert_eq!(cfg.p_f, Ratio::new(1, 4));
        assert_eq!(cfg.topology.mag_mag_hops, 20);
    }

    #[test]
    fn unknown_key_rejected() {
        let err = RunConfig::parse("no_such_key = 1\n").unwrap_err();
        assert!(matches!(err, ConfigError::UnknownKey { .. }));
    }

    #[test]
    fn bad_value_rejected() {
        let err = RunConfig::parse("seed = banana\n").unwrap_err();
        assert!(matches!(err, ConfigError::BadValue { .. }));
    }

    #[test]
    fn one_sweep_axis_max() {
        let err =
            RunConfig::parse("sweep.rho_f = 0:0.05:0.3\nsweep.d_wl_ms = 1:1:50\n").unwrap_err();
        assert!(matches!(err, ConfigError::MultipleSweeps { .. }));
    }

    #[test]
    fn sweep_values_exact() {
        let r = SweepRange::parse("0:0.05:0.3").unwrap();
        let vals: Vec<f64> = r.values().iter().map(|d| d.to_f64()).collect();
        assert_eq!(vals, vec![0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3]);
        let r = SweepRange::parse("1:1:5").unwrap();
        assert_eq!(r.values().len(), 5);
    }

    #[test]
    fn decimal_ratio_is_exact() {
        assert_eq!(
            Decimal::parse("0.05").unwrap().to_ratio(),
            Ratio::new(1, 20)
        );
        assert_eq!(Decimal::parse("1.5").unwrap().to_ratio(), Ratio::new(3, 2));
    }

    #[test]
    fn syntax_error_reported_with_line() {
        let err = RunConfig::parse("scheme = proposed\nnot a config line\n").unwrap_err();
        assert_eq!(
            err,
            ConfigError::Syntax {
                line: 2,
                text: "not a config line".into()
            }
        );
    }
}
