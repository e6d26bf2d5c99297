//! Event-loop executor: merges the scheme's planned signaling flow with
//! the downlink data plane (binding cache routing, bicast duplication,
//! tunnels, buffers, air transmissions) and collects metrics.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::TUNNEL_HEADER_OCTETS;
use crate::protocol::{
    BceTable, EntityId, EventClass, LinkClass, PacketBuffer, ProtocolError, Transcript,
    TranscriptEvent,
};

use super::flows::{build_flow, DetachMode, Effect, FlowPlan, PlannedEvent};
use super::link::LinkModel;
use super::metrics::{signaling_tally, MetricsRecord, TallySplit};
use super::{Scenario, SimError};

/// Result of one scenario run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub metrics: MetricsRecord,
    pub transcript: Transcript,
    pub bce: BceTable,
    /// Scheme-level outcome; fault-injected runs carry the abort reason.
    pub outcome: Result<(), ProtocolError>,
    pub tally: TallySplit,
}

#[derive(Debug)]
enum Ev {
    Planned(usize),
    CbrTick,
    PacketAtNode {
        seq: u64,
        node: EntityId,
        tunneled: bool,
    },
    AirComplete {
        tx: usize,
    },
}

struct Scheduled {
    t: f64,
    order: u64,
    ev: Ev,
}

impl PartialEq for Scheduled {
    fn eq(&self, other: &Self) -> bool {
        self.t == other.t && self.order == other.order
    }
}
impl Eq for Scheduled {}
impl PartialOrd for Scheduled {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Scheduled {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap, we need earliest-first
        other
            .t
            .total_cmp(&self.t)
            .then_with(|| other.order.cmp(&self.order))
    }
}

#[derive(Debug, Clone)]
struct AirTx {
    seq: u64,
    size: u32,
    mag: EntityId,
    note: &'static str,
    cancelled: bool,
    done: bool,
}

struct Engine {
    scn: Scenario,
    link: LinkModel,
    plan: FlowPlan,
    rng: ChaCha8Rng,
    now: f64,
    queue: BinaryHeap<Scheduled>,
    order: u64,
    transcript: Transcript,
    // protocol state
    bce: BceTable,
    forward_to: HashMap<EntityId, EntityId>,
    buffering: HashMap<EntityId, PacketBuffer>,
    attached: BTreeSet<EntityId>,
    air_service_off: HashSet<EntityId>,
    // data plane
    next_seq: u64,
    cbr_stop: Option<f64>,
    air_txs: Vec<AirTx>,
    delivered: BTreeSet<u64>,
    duplicates: u64,
    // measurement
    t_loss: Option<f64>,
    t_first_target: Option<f64>,
    outcome: Result<(), ProtocolError>,
    completed: bool,
}

impl Engine {
    fn new(scn: Scenario) -> Self {
        let link = LinkModel::new(scn.delay_params(), scn.topology, scn.p_f, scn.mode);
        let mut rng = ChaCha8Rng::seed_from_u64(scn.seed);
        let plan = build_flow(&scn, &link, &mut rng);
        Engine {
            scn,
            link,
            plan,
            rng,
            now: 0.0,
            queue: BinaryHeap::new(),
            order: 0,
            transcript: Transcript::default(),
            bce: BceTable::new(),
            forward_to: HashMap::new(),
            buffering: HashMap::new(),
            attached: BTreeSet::new(),
            air_service_off: HashSet::new(),
            next_seq: 0,
            cbr_stop: None,
            air_txs: Vec::new(),
            delivered: BTreeSet::new(),
            duplicates: 0,
            t_loss: None,
            t_first_target: None,
            outcome: Ok(()),
            completed: false,
        }
    }

    fn schedule(&mut self, t: f64, ev: Ev) {
        debug_assert!(t >= self.now, "cannot schedule into the past");
        let order = self.order;
        self.order += 1;
        self.queue.push(Scheduled { t, order, ev });
    }

    fn mn(&self) -> EntityId {
        EntityId::mn()
    }

    fn mn_id(&self) -> String {
        self.scn.ctx.profile.mn_id.clone()
    }

    fn run(mut self) -> RunOutput {
        // initial attachment at the serving gateway
        let serving = self.plan.serving_mag;
        let hnps: Vec<String> = self
            .scn
            .ctx
            .profile
            .hnps
            .iter()
            .map(|h| h.to_string())
            .collect();
        let mn_id = self.mn_id();
        self.bce.register(&mn_id, hnps, serving);
        self.attached.insert(serving);
        let initial = std::mem::take(&mut self.plan.initial_effects);
        for fx in &initial {
            self.apply_effect(fx.clone());
        }
        for i in 0..self.plan.events.len() {
            let t = self.plan.events[i].t_ms;
            self.schedule(t, Ev::Planned(i));
        }
        self.schedule(0.0, Ev::CbrTick);

        let deadline = self.scn.trigger_ms + 600_000.0;
        while let Some(Scheduled { t, ev, .. }) = self.queue.pop() {
            debug_assert!(t >= self.now);
            self.now = t;
            if self.now > deadline {
                break;
            }
            match ev {
                Ev::Planned(i) => self.on_planned(i),
                Ev::CbrTick => self.on_cbr_tick(),
                Ev::PacketAtNode {
                    seq,
                    node,
                    tunneled,
                } => self.on_packet_at_node(seq, node, tunneled),
                Ev::AirComplete { tx } => self.on_air_complete(tx),
            }
        }
        self.finalize()
    }

    fn on_planned(&mut self, idx: usize) {
        let ev: &PlannedEvent = &self.plan.events[idx];
        self.transcript.push(TranscriptEvent {
            t_ms: ev.t_ms,
            src: ev.src,
            dst: ev.dst,
            kind: ev.kind.clone(),
            size_octets: ev.size_octets,
            link: ev.link,
            class: ev.class,
            note: ev.note.clone(),
        });
        let effects = self.plan.events[idx].effects.clone();
        for fx in effects {
            self.apply_effect(fx);
        }
    }

    fn apply_effect(&mut self, fx: Effect) {
        match fx {
            Effect::ConnectivityLost { mode } => {
                self.t_loss = Some(self.now);
                if mode == DetachMode::Hard {
                    let detached: Vec<EntityId> = self.attached.iter().copied().collect();
                    self.attached.clear();
                    self.cancel_in_flight(&detached);
                }
            }
            Effect::MnAttach(mag) => {
                self.attached.insert(mag);
            }
            Effect::MnDetachGraceful(mag) => {
                self.attached.remove(&mag);
            }
            Effect::StopAirService(mag) => {
                self.air_service_off.insert(mag);
            }
            Effect::EstablishTunnel { from, to } => {
                self.forward_to.insert(from, to);
            }
            Effect::TeardownTunnel { from } => {
                self.forward_to.remove(&from);
            }
            Effect::StartBuffering(mag) => {
                self.buffering
                    .entry(mag)
                    .or_insert_with(|| PacketBuffer::new(mag, self.scn.buffer_capacity));
            }
            Effect::FlushBufferToAir { at } => {
                if let Some(mut buf) = self.buffering.remove(&at) {
                    let pkts = buf.release_all();
                    self.log_marker(
                        at,
                        self.mn(),
                        "BUFFER_FLUSH",
                        &format!(
                            "{} packet(s), {} overflow-dropped",
                            pkts.len(),
                            buf.dropped()
                        ),
                    );
                    for p in pkts {
                        self.start_air(p.seq, at, p.size_octets + TUNNEL_HEADER_OCTETS, "buffered");
                    }
                }
            }
            Effect::FlushBufferViaTunnel { from, to } => {
                if let Some(mut buf) = self.buffering.remove(&from) {
                    let pkts = buf.release_all();
                    self.log_marker(
                        from,
                        to,
                        "BUFFER_FLUSH",
                        &format!("{} packet(s) forwarded via tunnel", pkts.len()),
                    );
                    let size = self.scn.data_packet_octets + TUNNEL_HEADER_OCTETS;
                    let delay = self.link.wired_delay(size, self.link.topology.mag_mag_hops);
                    for p in pkts {
                        let t = self.now + delay;
                        self.schedule(
                            t,
                            Ev::PacketAtNode {
                                seq: p.seq,
                                node: to,
                                tunneled: true,
                            },
                        );
                    }
                }
            }
            Effect::DiscardBuffer { at } => {
                if let Some(mut buf) = self.buffering.remove(&at) {
                    let pkts = buf.release_all();
                    self.log_marker(
                        at,
                        at,
                        "BUFFER_DISCARD",
                        &format!("{} packet(s) dropped", pkts.len()),
                    );
                }
            }
            Effect::LmaPbu {
                mag,
                transient,
                dereg,
            } => {
                let pbu = crate::protocol::PbuRequest {
                    mn_id: self.mn_id(),
                    mag,
                    transient,
                    dereg,
                };
                // flow-generated updates always target an existing binding
                self.bce.process_pbu(&pbu).expect("flow-consistent update");
            }
            Effect::ResumeDownlink { at } => {
                self.air_service_off.remove(&at);
                // continuously backlogged flow: the head-of-line packet is
                // transmitted the moment service resumes
                let seq = self.next_seq;
                self.next_seq += 1;
                self.start_air(seq, at, self.scn.data_packet_octets, "resume");
            }
            Effect::Abort(err) => {
                self.outcome = Err(err);
                self.cbr_stop = Some(self.now + self.scn.cooldown_ms);
            }
            Effect::Complete => {
                self.completed = true;
                self.cbr_stop = Some(self.now + self.scn.cooldown_ms);
            }
        }
    }

    /// Hard detach: transmissions in flight toward the mobile node fail.
    /// The transmitting gateway recovers them into its tunnel or buffer
    /// when one is active; otherwise they are lost.
    fn cancel_in_flight(&mut self, detached: &[EntityId]) {
        let mut recovered_tunnel: Vec<(u64, EntityId)> = Vec::new();
        let mut recovered_buffer: Vec<(u64, EntityId)> = Vec::new();
        let mut lost = 0u32;
        for tx in &mut self.air_txs {
            if tx.done || tx.cancelled || !detached.contains(&tx.mag) {
                continue;
            }
            tx.cancelled = true;
            if let Some(&to) = self.forward_to.get(&tx.mag) {
                recovered_tunnel.push((tx.seq, to));
            } else if self.buffering.contains_key(&tx.mag) {
                recovered_buffer.push((tx.seq, tx.mag));
            } else {
                lost += 1;
            }
        }
        if !(recovered_tunnel.is_empty() && recovered_buffer.is_empty() && lost == 0) {
            self.log_marker(
                self.mn(),
                self.mn(),
                "AIR_CUTOFF",
                &format!(
                    "{} in-flight recovered, {} lost",
                    recovered_tunnel.len() + recovered_buffer.len(),
                    lost
                ),
            );
        }
        let size = self.scn.data_packet_octets + TUNNEL_HEADER_OCTETS;
        let delay = self.link.wired_delay(size, self.link.topology.mag_mag_hops);
        for (seq, to) in recovered_tunnel {
            let t = self.now + delay;
            self.schedule(
                t,
                Ev::PacketAtNode {
                    seq,
                    node: to,
                    tunneled: true,
                },
            );
        }
        for (seq, mag) in recovered_buffer {
            self.enqueue_packet(seq, mag);
        }
    }

    fn on_cbr_tick(&mut self) {
        if let Some(stop) = self.cbr_stop {
            if self.now >= stop {
                return;
            }
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.route_from_lma(seq);
        let t = self.now + self.scn.cbr_interval_ms;
        self.schedule(t, Ev::CbrTick);
    }

    fn route_from_lma(&mut self, seq: u64) {
        let mn_id = self.mn_id();
        let Some(entry) = self.bce.get(&mn_id) else {
            self.log_data(
                EntityId::lma(),
                self.mn(),
                self.scn.data_packet_octets,
                LinkClass::Local,
                &format!("seq={seq} unroutable: no binding"),
            );
            return;
        };
        let targets = entry.downlink_targets();
        let delay = self
            .link
            .wired_delay(self.scn.data_packet_octets, self.link.topology.mag_lma_hops);
        for mag in targets {
            let t = self.now + delay;
            self.schedule(
                t,
                Ev::PacketAtNode {
                    seq,
                    node: mag,
                    tunneled: false,
                },
            );
        }
    }

    fn on_packet_at_node(&mut self, seq: u64, node: EntityId, tunneled: bool) {
        if let Some(&to) = self.forward_to.get(&node) {
            let size = self.scn.data_packet_octets + TUNNEL_HEADER_OCTETS;
            let delay = self.link.wired_delay(size, self.link.topology.mag_mag_hops);
            let t = self.now + delay;
            self.schedule(
                t,
                Ev::PacketAtNode {
                    seq,
                    node: to,
                    tunneled: true,
                },
            );
            return;
        }
        if self.buffering.contains_key(&node) {
            self.enqueue_packet(seq, node);
            return;
        }
        if self.attached.contains(&node) && !self.air_service_off.contains(&node) {
            let extra = if tunneled { TUNNEL_HEADER_OCTETS } else { 0 };
            let note = if tunneled { "tunneled" } else { "native" };
            self.start_air(seq, node, self.scn.data_packet_octets + extra, note);
            return;
        }
        self.log_data(
            node,
            self.mn(),
            self.scn.data_packet_octets,
            LinkClass::Local,
            &format!("seq={seq} dropped: unreachable at {node}"),
        );
    }

    fn enqueue_packet(&mut self, seq: u64, node: EntityId) {
        let pkt = crate::protocol::BufferedPacket {
            seq,
            size_octets: self.scn.data_packet_octets,
            enqueued_at_ms: self.now,
        };
        let buf = self
            .buffering
            .get_mut(&node)
            .expect("enqueue requires active buffer");
        if let Some(evicted) = buf.enqueue(pkt) {
            self.log_data(
                node,
                node,
                self.scn.data_packet_octets,
                LinkClass::Local,
                &format!("seq={evicted} dropped: buffer overflow"),
            );
        }
    }

    fn start_air(&mut self, seq: u64, mag: EntityId, size: u32, note: &'static str) {
        let delay = self.link.air_delay(size, &mut self.rng);
        let tx = AirTx {
            seq,
            size,
            mag,
            note,
            cancelled: false,
            done: false,
        };
        self.air_txs.push(tx);
        let idx = self.air_txs.len() - 1;
        let t = self.now + delay;
        self.schedule(t, Ev::AirComplete { tx: idx });
    }

    fn on_air_complete(&mut self, idx: usize) {
        let tx = self.air_txs[idx].clone();
        if tx.cancelled {
            return;
        }
        self.air_txs[idx].done = true;
        let first_delivery = self.delivered.insert(tx.seq);
        if !first_delivery {
            self.duplicates += 1;
        }
        let dup_note = if first_delivery {
            ""
        } else {
            " (duplicate suppressed)"
        };
        let mn = self.mn();
        self.log_data(
            tx.mag,
            mn,
            tx.size,
            LinkClass::Wireless,
            &format!("seq={} {}{}", tx.seq, tx.note, dup_note),
        );
        if self.t_first_target.is_none() {
            if let Some(t_loss) = self.t_loss {
                if tx.mag == self.plan.target_mag && self.now >= t_loss {
                    self.t_first_target = Some(self.now);
                }
            }
        }
    }

    fn log_marker(&mut self, src: EntityId, dst: EntityId, kind: &str, note: &str) {
        self.transcript.push(TranscriptEvent {
            t_ms: self.now,
            src,
            dst,
            kind: kind.to_string(),
            size_octets: 0,
            link: LinkClass::Local,
            class: EventClass::Marker,
            note: note.to_string(),
        });
    }

    fn log_data(&mut self, src: EntityId, dst: EntityId, size: u32, link: LinkClass, note: &str) {
        self.transcript.push(TranscriptEvent {
            t_ms: self.now,
            src,
            dst,
            kind: "DATA".to_string(),
            size_octets: size,
            link,
            class: EventClass::Data,
            note: note.to_string(),
        });
    }

    fn finalize(self) -> RunOutput {
        debug_assert!(
            self.completed || self.outcome.is_err(),
            "flow must end in completion or abort"
        );
        let generated = self.next_seq;
        let delivered = self.delivered.len() as u64;
        let lost = generated - delivered;
        let handover_delay_ms = match (self.t_loss, self.t_first_target) {
            (Some(loss), Some(first)) => Some(first - loss),
            _ => None,
        };
        let tally = signaling_tally(&self.transcript, &self.scn.topology);
        let metrics = MetricsRecord {
            scheme: self.scn.scheme,
            seed: self.scn.seed,
            mode: self.scn.mode,
            handover_delay_ms,
            packets_generated: generated,
            packets_delivered: delivered,
            packets_lost: lost,
            packets_duplicated_suppressed: self.duplicates,
            signaling_wireless_octet_hops: tally.wireless_octet_hops,
            signaling_wired_octet_hops: tally.wired_octet_hops(),
            transcript_events: self.transcript.len(),
        };
        RunOutput {
            metrics,
            transcript: self.transcript,
            bce: self.bce,
            outcome: self.outcome,
            tally,
        }
    }
}

/// Runs one scenario to completion.
pub fn run_scenario(scn: &Scenario) -> Result<RunOutput, SimError> {
    scn.validate()?;
    Ok(Engine::new(scn.clone()).run())
}
