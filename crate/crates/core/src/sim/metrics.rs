//! Metrics records and signaling tallies computed from transcripts.

use crate::analytic::{SchemeTerms, Topology};
use crate::protocol::{EntityRole, LinkClass, Scheme, Transcript};

use super::Mode;

/// Per-run metrics. Signaling volumes are raw octet-hop sums; unit costs
/// are applied by the cost model.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub scheme: Scheme,
    pub seed: u64,
    pub mode: Mode,
    pub handover_delay_ms: Option<f64>,
    pub packets_generated: u64,
    pub packets_delivered: u64,
    pub packets_lost: u64,
    pub packets_duplicated_suppressed: u64,
    pub signaling_wireless_octet_hops: u64,
    pub signaling_wired_octet_hops: u64,
    pub transcript_events: usize,
}

impl MetricsRecord {
    pub const CSV_HEADER: &'static str = "scheme,seed,mode,handover_delay_ms,packets_generated,packets_delivered,packets_lost,packets_duplicated_suppressed,signaling_wireless_octet_hops,signaling_wired_octet_hops,transcript_events";

    pub fn csv_line(&self) -> String {
        let delay = self
            .handover_delay_ms
            .map(|d| format!("{d:.4}"))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.scheme,
            self.seed,
            self.mode.name(),
            delay,
            self.packets_generated,
            self.packets_delivered,
            self.packets_lost,
            self.packets_duplicated_suppressed,
            self.signaling_wireless_octet_hops,
            self.signaling_wired_octet_hops,
            self.transcript_events
        )
    }
}

/// Signaling volume of a transcript, split per link class.
pub type TallySplit = SchemeTerms;

/// Sums `size x hops` over the transcript's signaling events: wireless
/// events count the access hop count, wired events their path hop count
/// grouped by endpoint roles. Data packets and local markers are excluded.
pub fn signaling_tally(transcript: &Transcript, topology: &Topology) -> TallySplit {
    let mut t = TallySplit::default();
    for ev in transcript.signaling() {
        match ev.link {
            LinkClass::Wireless => {
                t.wireless_octet_hops += ev.size_octets as u64 * topology.mn_mag_hops as u64;
            }
            LinkClass::Wired { hops } => {
                let vol = ev.size_octets as u64 * hops as u64;
                match (ev.src.role, ev.dst.role) {
                    (EntityRole::Mag, EntityRole::Lma) | (EntityRole::Lma, EntityRole::Mag) => {
                        t.mag_lma_octet_hops += vol
                    }
                    (EntityRole::Mag, EntityRole::Miis) | (EntityRole::Miis, EntityRole::Mag) => {
                        t.mag_miis_octet_hops += vol
                    }
                    (EntityRole::Mag, EntityRole::Mag) => t.mag_mag_octet_hops += vol,
                    _ => t.mag_mag_octet_hops += vol,
                }
            }
            LinkClass::Local => {}
        }
    }
    t
}

/// Applies unit costs to a tally: `(B x wireless, A x wired)`.
pub fn tally_cost(tally: &TallySplit, wired_unit: f64, wireless_unit: f64) -> (f64, f64) {
    (
        wireless_unit * tally.wireless_octet_hops as f64,
        wired_unit * tally.wired_octet_hops() as f64,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{EntityId, EventClass, TranscriptEvent};

    fn ev(
        src: EntityId,
        dst: EntityId,
        size: u32,
        link: LinkClass,
        class: EventClass,
    ) -> TranscriptEvent {
        TranscriptEvent {
            t_ms: 0.0,
            src,
            dst,
            kind: "X".into(),
            size_octets: size,
            link,
            class,
            note: String::new(),
        }
    }

    #[test]
    fn empty_transcript_zero_tally() {
        let t = signaling_tally(&Transcript::default(), &Topology::default());
        assert_eq!(t, TallySplit::default());
        assert_eq!(tally_cost(&t, 1.0, 1.5), (0.0, 0.0));
    }

    #[test]
    fn single_wired_update() {
        let mut tr = Transcript::default();
        tr.push(ev(
            EntityId::mag(0),
            EntityId::lma(),
            76,
            LinkClass::Wired { hops: 10 },
            EventClass::Signaling,
        ));
        let t = signaling_tally(&tr, &Topology::default());
        assert_eq!(t.mag_lma_octet_hops, 760);
        assert_eq!(t.wired_octet_hops(), 760);
        assert_eq!(tally_cost(&t, 1.0, 1.5), (0.0, 760.0));
    }

    #[test]
    fn data_and_markers_excluded() {
        let mut tr = Transcript::default();
        tr.push(ev(
            EntityId::mag(0),
            EntityId::mn(),
            1024,
            LinkClass::Wireless,
            EventClass::Data,
        ));
        tr.push(ev(
            EntityId::mn(),
            EntityId::mn(),
            0,
            LinkClass::Local,
            EventClass::Marker,
        ));
        tr.push(ev(
            EntityId::mn(),
            EntityId::mag(0),
            52,
            LinkClass::Wireless,
            EventClass::Signaling,
        ));
        let t = signaling_tally(&tr, &Topology::default());
        assert_eq!(t.wireless_octet_hops, 52);
        assert_eq!(t.wired_octet_hops(), 0);
    }
}
