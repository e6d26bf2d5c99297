use std::collections::BTreeSet;

use crate::codec::{HomeNetworkPrefix, LinkAddr, TransportAddr};

use super::entity::EntityId;

/// The six executable handover schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    StandardMobileInit,
    StandardNetworkInit,
    FpmipPredictive,
    FpmipReactive,
    FastHandoverMih,
    ProposedIntegrated,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::StandardMobileInit,
        Scheme::StandardNetworkInit,
        Scheme::FpmipPredictive,
        Scheme::FpmipReactive,
        Scheme::FastHandoverMih,
        Scheme::ProposedIntegrated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::StandardMobileInit => "standard_mobile",
            Scheme::StandardNetworkInit => "standard_network",
            Scheme::FpmipPredictive => "fpmip_predictive",
            Scheme::FpmipReactive => "fpmip_reactive",
            Scheme::FastHandoverMih => "fast_mih",
            Scheme::ProposedIntegrated => "proposed",
        }
    }

    pub fn from_name(name: &str) -> Option<Scheme> {
        Self::ALL.iter().copied().find(|s| s.name() == name)
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Flags carried by the inter-gateway handover-initiate exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum HandoverFlag {
    /// Pre-registration (proactive) exchange.
    P,
    /// Request packet forwarding over an inter-gateway tunnel.
    F,
    /// Request buffering at the previous gateway.
    U,
}

/// Mobile node profile, transferred between gateways during handover.
#[derive(Debug, Clone, PartialEq)]
pub struct MnProfile {
    /// Network access identifier.
    pub mn_id: String,
    pub ll_id: LinkAddr,
    pub lla_iid: LinkAddr,
    pub hnps: Vec<HomeNetworkPrefix>,
    pub lmaa: TransportAddr,
    /// Access technology tag of the serving interface.
    pub serving_if_tech: String,
    /// Access technology tag of the candidate interface.
    pub candidate_if_tech: String,
}

impl Default for MnProfile {
    fn default() -> Self {
        MnProfile {
            mn_id: "mn1@example.net".into(),
            ll_id: LinkAddr::Mac48([0x02, 0x00, 0x5E, 0x10, 0x00, 0x01]),
            lla_iid: LinkAddr::Iid64([0x02, 0x00, 0x5E, 0xFF, 0xFE, 0x10, 0x00, 0x01]),
            hnps: vec![HomeNetworkPrefix::new(
                64,
                "2001:db8:1::".parse().expect("valid prefix"),
            )],
            lmaa: TransportAddr::V6("2001:db8::1".parse().expect("valid address")),
            serving_if_tech: "802.11".into(),
            candidate_if_tech: "802.16".into(),
        }
    }
}

/// Per-run handover context: flags, fault injection and identities.
#[derive(Debug, Clone, PartialEq)]
pub struct HandoverContext {
    pub profile: MnProfile,
    /// Flags requested on the handover-initiate exchange (predictive and
    /// reactive modes).
    pub flags: BTreeSet<HandoverFlag>,
    /// Previous point-of-attachment id announced by the MN on reattach
    /// (reactive mode).
    pub previous_ap_id: u32,
    /// Injected acknowledge code for the pre-registration exchange
    /// (0 = success).
    pub fault_hack_status: u8,
    /// Injected status for the handover-commit response (0 = success).
    pub fault_commit_status: u8,
    /// Injected empty candidate list.
    pub fault_no_candidates: bool,
    /// Injected unknown previous point of attachment.
    pub fault_unknown_prev_ap: bool,
}

impl Default for HandoverContext {
    fn default() -> Self {
        HandoverContext {
            profile: MnProfile::default(),
            flags: BTreeSet::from([HandoverFlag::P, HandoverFlag::F, HandoverFlag::U]),
            previous_ap_id: 0,
            fault_hack_status: 0,
            fault_commit_status: 0,
            fault_no_candidates: false,
            fault_unknown_prev_ap: false,
        }
    }
}

impl HandoverContext {
    pub fn has_flag(&self, flag: HandoverFlag) -> bool {
        self.flags.contains(&flag)
    }

    pub fn flags_note(&self) -> String {
        let mut s = String::new();
        for f in &self.flags {
            s.push(match f {
                HandoverFlag::P => 'P',
                HandoverFlag::F => 'F',
                HandoverFlag::U => 'U',
            });
        }
        s
    }
}

/// Static entity layout of a scenario.
#[derive(Debug, Clone)]
pub struct EntitySet {
    pub mn: EntityId,
    pub serving_mag: EntityId,
    pub candidate_mags: Vec<EntityId>,
    pub lma: EntityId,
    pub miis: EntityId,
    pub serving_poa: EntityId,
    pub target_poa: EntityId,
}

impl EntitySet {
    /// Serving gateway plus `candidates` distinct candidate gateways.
    pub fn with_candidates(candidates: u32) -> Self {
        EntitySet {
            mn: EntityId::mn(),
            serving_mag: EntityId::mag(0),
            candidate_mags: (1..=candidates).map(EntityId::mag).collect(),
            lma: EntityId::lma(),
            miis: EntityId::miis(),
            serving_poa: EntityId::poa(0),
            target_poa: EntityId::poa(1),
        }
    }

    /// Resolves a point-of-attachment id to its gateway: PoA `k` hangs off
    /// gateway `k`.
    pub fn mag_for_poa(&self, ap_id: u32) -> Option<EntityId> {
        let mag = EntityId::mag(ap_id);
        if mag == self.serving_mag || self.candidate_mags.contains(&mag) {
            Some(mag)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poa_resolution() {
        let ents = EntitySet::with_candidates(3);
        assert_eq!(ents.mag_for_poa(0), Some(EntityId::mag(0)));
        assert_eq!(ents.mag_for_poa(2), Some(EntityId::mag(2)));
        assert_eq!(ents.mag_for_poa(9), None);
    }

    #[test]
    fn scheme_names_roundtrip() {
        for s in Scheme::ALL {
            assert_eq!(Scheme::from_name(s.name()), Some(s));
        }
        assert_eq!(Scheme::from_name("bogus"), None);
    }
}
