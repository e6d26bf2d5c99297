//! Per-scheme handover flows.
//!
//! A flow builder walks the scheme's causal message chain, drawing link
//! delays from the scenario's link model, and emits a time-stamped plan of
//! transcript events with attached state effects. The engine merges the
//! plan with the data-plane events and applies effects in time order.

use rand_chacha::ChaCha8Rng;

use crate::analytic::{MessageCatalog, MsgId, TUNNEL_HEADER_OCTETS};
use crate::protocol::{
    EntityId, EntityRole, EntitySet, EventClass, HandoverFlag, LinkClass, ProtocolError, Scheme,
};

use super::link::LinkModel;
use super::Scenario;

/// How the mobile node leaves its serving link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetachMode {
    /// Single radio: in-flight downlink transmissions are cut off. The
    /// serving gateway recovers them into an active tunnel or buffer,
    /// otherwise they are lost.
    Hard,
    /// Dual radio: in-flight transmissions on the old link complete.
    MakeBeforeBreak,
}

/// State changes applied when a planned event fires.
#[derive(Debug, Clone)]
pub enum Effect {
    /// Marks the handover-delay start; applies the detach semantics.
    ConnectivityLost {
        mode: DetachMode,
    },
    MnAttach(EntityId),
    /// Dual-radio interface release; in-flight transmissions complete.
    MnDetachGraceful(EntityId),
    /// The gateway stops starting new downlink transmissions.
    StopAirService(EntityId),
    EstablishTunnel {
        from: EntityId,
        to: EntityId,
    },
    TeardownTunnel {
        from: EntityId,
    },
    StartBuffering(EntityId),
    /// Drain the buffer onto the air; buffered packets carry the tunnel
    /// encapsulation overhead.
    FlushBufferToAir {
        at: EntityId,
    },
    /// Drain the buffer into the inter-gateway tunnel.
    FlushBufferViaTunnel {
        from: EntityId,
        to: EntityId,
    },
    /// Drop all buffered packets.
    DiscardBuffer {
        at: EntityId,
    },
    LmaPbu {
        mag: EntityId,
        transient: bool,
        dereg: bool,
    },
    /// Opens downlink service at the gateway and immediately serves the
    /// head-of-line packet of the continuously backlogged downlink flow.
    ResumeDownlink {
        at: EntityId,
    },
    Abort(ProtocolError),
    Complete,
}

/// One pre-planned flow event.
#[derive(Debug, Clone)]
pub struct PlannedEvent {
    pub t_ms: f64,
    pub src: EntityId,
    pub dst: EntityId,
    pub kind: String,
    pub size_octets: u32,
    pub link: LinkClass,
    pub class: EventClass,
    pub note: String,
    pub effects: Vec<Effect>,
}

/// Full plan for one scheme run.
#[derive(Debug, Clone)]
pub struct FlowPlan {
    pub events: Vec<PlannedEvent>,
    pub serving_mag: EntityId,
    pub target_mag: EntityId,
    /// Effects applied at scenario start.
    pub initial_effects: Vec<Effect>,
}

struct FlowBuilder<'a> {
    link: &'a LinkModel,
    rng: &'a mut ChaCha8Rng,
    catalog: MessageCatalog,
    events: Vec<PlannedEvent>,
    cursor: f64,
}

impl<'a> FlowBuilder<'a> {
    fn new(scn: &Scenario, link: &'a LinkModel, rng: &'a mut ChaCha8Rng) -> Self {
        FlowBuilder {
            link,
            rng,
            catalog: scn.catalog(),
            events: Vec::new(),
            cursor: scn.trigger_ms,
        }
    }

    fn hops(&self, a: EntityId, b: EntityId) -> u32 {
        use EntityRole::*;
        let t = &self.link.topology;
        match (a.role, b.role) {
            (Mag, Lma) | (Lma, Mag) => t.mag_lma_hops,
            (Mag, Miis) | (Miis, Mag) => t.mag_miis_hops,
            (Mag, Mag) => t.mag_mag_hops,
            _ => panic!("no wired path between {a} and {b}"),
        }
    }

    /// Wireless signaling message sent at `t_send`; returns arrival time.
    fn air_at(
        &mut self,
        t_send: f64,
        id: MsgId,
        from: EntityId,
        to: EntityId,
        note: &str,
        effects: Vec<Effect>,
    ) -> f64 {
        let size = self.catalog.size(id);
        let plan = self.link.air_signal_plan(size, self.rng);
        for off in &plan.failed_attempt_offsets {
            self.events.push(PlannedEvent {
                t_ms: t_send + off,
                src: from,
                dst: to,
                kind: id.name().to_string(),
                size_octets: size,
                link: LinkClass::Wireless,
                class: EventClass::Signaling,
                note: "transmission failed, retransmitting".into(),
                effects: Vec::new(),
            });
        }
        let t_arr = t_send + plan.total_delay;
        self.events.push(PlannedEvent {
            t_ms: t_arr,
            src: from,
            dst: to,
            kind: id.name().to_string(),
            size_octets: size,
            link: LinkClass::Wireless,
            class: EventClass::Signaling,
            note: note.into(),
            effects,
        });
        self.cursor = self.cursor.max(t_arr);
        t_arr
    }

    fn air(
        &mut self,
        id: MsgId,
        from: EntityId,
        to: EntityId,
        note: &str,
        effects: Vec<Effect>,
    ) -> f64 {
        self.air_at(self.cursor, id, from, to, note, effects)
    }

    fn wired_at(
        &mut self,
        t_send: f64,
        id: MsgId,
        from: EntityId,
        to: EntityId,
        note: &str,
        effects: Vec<Effect>,
    ) -> f64 {
        let size = self.catalog.size(id);
        let hops = self.hops(from, to);
        let t_arr = t_send + self.link.wired_delay(size, hops);
        self.events.push(PlannedEvent {
            t_ms: t_arr,
            src: from,
            dst: to,
            kind: id.name().to_string(),
            size_octets: size,
            link: LinkClass::Wired { hops },
            class: EventClass::Signaling,
            note: note.into(),
            effects,
        });
        self.cursor = self.cursor.max(t_arr);
        t_arr
    }

    fn wired(
        &mut self,
        id: MsgId,
        from: EntityId,
        to: EntityId,
        note: &str,
        effects: Vec<Effect>,
    ) -> f64 {
        self.wired_at(self.cursor, id, from, to, note, effects)
    }

    /// Node-local event at the cursor (size zero, never tallied).
    fn marker(
        &mut self,
        src: EntityId,
        dst: EntityId,
        kind: &str,
        note: &str,
        effects: Vec<Effect>,
    ) -> f64 {
        self.marker_at(self.cursor, src, dst, kind, note, effects)
    }

    fn marker_at(
        &mut self,
        t: f64,
        src: EntityId,
        dst: EntityId,
        kind: &str,
        note: &str,
        effects: Vec<Effect>,
    ) -> f64 {
        self.events.push(PlannedEvent {
            t_ms: t,
            src,
            dst,
            kind: kind.to_string(),
            size_octets: 0,
            link: LinkClass::Local,
            class: EventClass::Marker,
            note: note.into(),
            effects,
        });
        self.cursor = self.cursor.max(t);
        t
    }

    /// One uplink data packet along `path`; the first leg is wireless,
    /// later legs wired (tunneled legs carry the encapsulation overhead).
    fn uplink(&mut self, data_octets: u32, path: &[EntityId]) {
        let mut t = self.cursor;
        for (i, pair) in path.windows(2).enumerate() {
            let (from, to) = (pair[0], pair[1]);
            let (size, link, dur) = if i == 0 {
                let d = self.link.air_delay(data_octets, self.rng);
                (data_octets, LinkClass::Wireless, d)
            } else {
                let tunneled = from.role == EntityRole::Mag && to.role == EntityRole::Mag;
                let size = data_octets + if tunneled { TUNNEL_HEADER_OCTETS } else { 0 };
                let hops = self.hops(from, to);
                (
                    size,
                    LinkClass::Wired { hops },
                    self.link.wired_delay(size, hops),
                )
            };
            t += dur;
            self.events.push(PlannedEvent {
                t_ms: t,
                src: from,
                dst: to,
                kind: "DATA".into(),
                size_octets: size,
                link,
                class: EventClass::Data,
                note: "uplink".into(),
                effects: Vec::new(),
            });
        }
        self.cursor = self.cursor.max(t);
    }

    fn wait(&mut self, ms: f64) {
        self.cursor += ms;
    }

    fn finish(self, serving_mag: EntityId, target_mag: EntityId) -> FlowPlan {
        FlowPlan {
            events: self.events,
            serving_mag,
            target_mag,
            initial_effects: Vec::new(),
        }
    }
}

/// Builds the flow plan for the scenario's scheme.
pub fn build_flow(scn: &Scenario, link: &LinkModel, rng: &mut ChaCha8Rng) -> FlowPlan {
    match scn.scheme {
        Scheme::StandardMobileInit => standard(scn, link, rng, true),
        Scheme::StandardNetworkInit => standard(scn, link, rng, false),
        Scheme::FpmipPredictive => fpmip_predictive(scn, link, rng),
        Scheme::FpmipReactive => fpmip_reactive(scn, link, rng),
        Scheme::FastHandoverMih => fast_handover(scn, link, rng),
        Scheme::ProposedIntegrated => proposed(scn, link, rng),
    }
}

fn candidates(scn: &Scenario) -> Vec<EntityId> {
    if scn.ctx.fault_no_candidates {
        Vec::new()
    } else {
        (1..=scn.candidate_count.max(1))
            .map(EntityId::mag)
            .collect()
    }
}

/// Standard handover: the mobile node (or the network) discovers and
/// selects the target, commits over the air, and rebinding happens after
/// reattachment with no buffering or forwarding.
fn standard(scn: &Scenario, link: &LinkModel, rng: &mut ChaCha8Rng, mobile_init: bool) -> FlowPlan {
    let mn = EntityId::mn();
    let smag = EntityId::mag(0);
    let lma = EntityId::lma();
    let miis = EntityId::miis();
    let cands = candidates(scn);
    let tmag = *cands.first().unwrap_or(&EntityId::mag(1));

    let mut fb = FlowBuilder::new(scn, link, rng);
    let info_exchange = |fb: &mut FlowBuilder| {
        fb.air(
            MsgId::GetInfoRequest,
            mn,
            smag,
            "neighbor information pull",
            vec![],
        );
        fb.wired(MsgId::GetInfoRequest, smag, miis, "", vec![]);
        fb.wired(MsgId::GetInfoResponse, miis, smag, "", vec![]);
        fb.air(MsgId::GetInfoResponse, smag, mn, "", vec![]);
    };
    let candidate_exchange = |fb: &mut FlowBuilder| {
        fb.air(MsgId::CandidateQueryRequest, smag, mn, "", vec![]);
        fb.air(
            MsgId::CandidateQueryResponse,
            mn,
            smag,
            "preferred list",
            vec![],
        );
    };
    if mobile_init {
        info_exchange(&mut fb);
        candidate_exchange(&mut fb);
    } else {
        candidate_exchange(&mut fb);
        info_exchange(&mut fb);
    }
    for cand in &cands {
        fb.wired(MsgId::ResourceQueryRequest, smag, *cand, "", vec![]);
        fb.wired(
            MsgId::ResourceQueryResponse,
            *cand,
            smag,
            "resources ok",
            vec![],
        );
    }
    fb.air(MsgId::MnCommitRequest, mn, smag, "", vec![]);
    fb.air(MsgId::MnCommitResponse, smag, mn, "", vec![]);
    fb.wired(MsgId::CommitRequest, smag, tmag, "", vec![]);
    fb.wired(MsgId::CommitResponse, tmag, smag, "", vec![]);
    // profile lookup and pre-registration refresh toward the anchor
    fb.wired(MsgId::AaaQuery, smag, lma, "profile query", vec![]);
    fb.wired(MsgId::AaaReply, lma, smag, "", vec![]);
    fb.wired(
        MsgId::Pbu,
        smag,
        lma,
        "pre-registration refresh",
        vec![Effect::LmaPbu {
            mag: smag,
            transient: false,
            dereg: false,
        }],
    );
    fb.wired(MsgId::Pba, lma, smag, "", vec![]);

    fb.marker(
        mn,
        mn,
        "L2_HANDOVER_START",
        "serving link down",
        vec![Effect::ConnectivityLost {
            mode: DetachMode::Hard,
        }],
    );
    fb.wait(scn.t_l2_ms);
    fb.marker(
        mn,
        mn,
        "ATTACH",
        "new link up",
        vec![Effect::MnAttach(tmag)],
    );
    fb.air(MsgId::Rs, mn, tmag, "", vec![]);
    // address state confirmed on advertisement receipt, then the target
    // registers the binding
    let t_ra = fb.air(MsgId::Ra, tmag, mn, "", vec![]);
    fb.wired_at(
        t_ra,
        MsgId::Pbu,
        tmag,
        lma,
        "registration",
        vec![Effect::LmaPbu {
            mag: tmag,
            transient: false,
            dereg: false,
        }],
    );
    fb.wired(
        MsgId::Pba,
        lma,
        tmag,
        "binding active",
        vec![Effect::ResumeDownlink { at: tmag }],
    );
    fb.wired(
        MsgId::Pbu,
        smag,
        lma,
        "deregistration",
        vec![Effect::LmaPbu {
            mag: smag,
            transient: false,
            dereg: true,
        }],
    );
    fb.wired(MsgId::Pba, lma, smag, "", vec![]);
    fb.wired(MsgId::CompleteRequest, smag, tmag, "", vec![]);
    fb.wired(
        MsgId::CompleteResponse,
        tmag,
        smag,
        "resources released",
        vec![Effect::Complete],
    );

    let mut plan = fb.finish(smag, tmag);
    // no forwarding state exists at the target before the binding
    // acknowledgement returns
    plan.initial_effects.push(Effect::StopAirService(tmag));
    plan
}

/// Predictive fast handover: the serving gateway pre-registers with the
/// target, a forwarding tunnel buffers the downlink at the target, and the
/// binding moves after reattachment.
fn fpmip_predictive(scn: &Scenario, link: &LinkModel, rng: &mut ChaCha8Rng) -> FlowPlan {
    let mn = EntityId::mn();
    let pmag = EntityId::mag(0);
    let nmag = EntityId::mag(1);
    let lma = EntityId::lma();
    let spoa = EntityId::poa(0);
    let ctx = &scn.ctx;

    let mut fb = FlowBuilder::new(scn, link, rng);
    fb.marker(mn, spoa, "L2_REPORT", "mn-id + new poa-id", vec![]);
    fb.marker(spoa, pmag, "HO_INDICATION", "mn-id + new poa-id", vec![]);
    fb.wired(
        MsgId::Hi,
        pmag,
        nmag,
        "flags=P mn-id hnp lmaa lla-iid",
        vec![],
    );
    if ctx.fault_hack_status != 0 {
        fb.wired(
            MsgId::Hack,
            nmag,
            pmag,
            &format!("flags=P code={}", ctx.fault_hack_status),
            vec![Effect::Abort(ProtocolError::HandoverReject {
                status: ctx.fault_hack_status,
            })],
        );
        return fb.finish(pmag, nmag);
    }
    fb.wired(MsgId::Hack, nmag, pmag, "flags=P code=0", vec![]);
    let mut flags = String::new();
    if ctx.has_flag(HandoverFlag::U) {
        flags.push('U');
    }
    if ctx.has_flag(HandoverFlag::F) {
        flags.push('F');
    }
    let mut fx = vec![Effect::StartBuffering(nmag)];
    if ctx.has_flag(HandoverFlag::F) {
        fx.push(Effect::EstablishTunnel {
            from: pmag,
            to: nmag,
        });
    }
    fb.wired(MsgId::Hi, nmag, pmag, &format!("flags={flags}"), fx);
    if ctx.has_flag(HandoverFlag::F) {
        fb.marker(
            pmag,
            nmag,
            "TUNNEL_ESTABLISH",
            "forwarding downlink",
            vec![],
        );
    }
    fb.marker(
        mn,
        mn,
        "L2_HANDOVER_START",
        "serving link down",
        vec![Effect::ConnectivityLost {
            mode: DetachMode::Hard,
        }],
    );
    fb.wait(scn.t_l2_ms);
    fb.marker(
        mn,
        mn,
        "ATTACH",
        "address configured, buffered delivery",
        vec![
            Effect::MnAttach(nmag),
            Effect::FlushBufferToAir { at: nmag },
        ],
    );
    // uplink resumes once the buffered downlink reaches the mobile node
    let first_delivery = link.air_delay(scn.data_packet_octets + TUNNEL_HEADER_OCTETS, fb.rng);
    fb.wait(first_delivery);
    fb.uplink(scn.data_packet_octets, &[mn, nmag, pmag, lma]);
    fb.wired(
        MsgId::Pbu,
        nmag,
        lma,
        "registration",
        vec![Effect::LmaPbu {
            mag: nmag,
            transient: false,
            dereg: false,
        }],
    );
    fb.wired(MsgId::Pba, lma, nmag, "binding active", vec![]);
    if ctx.has_flag(HandoverFlag::F) {
        // drain window for packets already headed to the old gateway
        fb.wait(link.wired_delay(scn.data_packet_octets, link.topology.mag_lma_hops));
        fb.marker(
            pmag,
            nmag,
            "TUNNEL_TEARDOWN",
            "",
            vec![Effect::TeardownTunnel { from: pmag }, Effect::Complete],
        );
    } else {
        fb.marker(mn, mn, "HANDOVER_COMPLETE", "", vec![Effect::Complete]);
    }
    fb.finish(pmag, nmag)
}

/// Reactive fast handover: the mobile node reattaches first; the new
/// gateway then pulls context from the previous one and optionally sets up
/// a forwarding tunnel for the packets buffered there.
fn fpmip_reactive(scn: &Scenario, link: &LinkModel, rng: &mut ChaCha8Rng) -> FlowPlan {
    let mn = EntityId::mn();
    let nmag = EntityId::mag(1);
    let lma = EntityId::lma();
    let ctx = &scn.ctx;
    let ents = EntitySet::with_candidates(scn.candidate_count.max(1));
    let announced_ap =
        if ctx.fault_unknown_prev_ap && ents.mag_for_poa(ctx.previous_ap_id).is_some() {
            u32::MAX
        } else {
            ctx.previous_ap_id
        };
    let resolved_pmag = ents.mag_for_poa(announced_ap);
    let pmag = resolved_pmag.unwrap_or(ents.serving_mag);

    let mut fb = FlowBuilder::new(scn, link, rng);
    // the previous gateway detects the detachment and buffers the downlink
    fb.marker(
        mn,
        mn,
        "L2_HANDOVER_START",
        "detached from serving link",
        vec![
            Effect::StartBuffering(ents.serving_mag),
            Effect::ConnectivityLost {
                mode: DetachMode::Hard,
            },
        ],
    );
    fb.wait(scn.t_l2_ms);
    fb.marker(
        mn,
        mn,
        "ATTACH",
        "new link up",
        vec![Effect::MnAttach(nmag)],
    );
    if resolved_pmag.is_none() {
        fb.air(
            MsgId::Una,
            mn,
            nmag,
            &format!("attach: mn-id + previous poa {announced_ap}"),
            vec![Effect::Abort(ProtocolError::UnknownPreviousMag {
                ap_id: announced_ap,
            })],
        );
        return fb.finish(ents.serving_mag, nmag);
    }
    fb.air(
        MsgId::Una,
        mn,
        nmag,
        &format!("attach: mn-id + previous poa {announced_ap}"),
        vec![],
    );
    let forwarding = ctx.has_flag(HandoverFlag::F);
    let flags = if forwarding { "PF" } else { "P" };
    fb.wired(
        MsgId::Hi,
        nmag,
        pmag,
        &format!("flags={flags} mn-id"),
        vec![],
    );
    let mut fx = Vec::new();
    if forwarding {
        fx.push(Effect::EstablishTunnel {
            from: pmag,
            to: nmag,
        });
        fx.push(Effect::FlushBufferViaTunnel {
            from: pmag,
            to: nmag,
        });
    }
    fb.wired(MsgId::Hack, pmag, nmag, "flags=P hnp lmaa context", fx);
    if forwarding {
        fb.marker(
            pmag,
            nmag,
            "TUNNEL_ESTABLISH",
            "forwarding buffered downlink",
            vec![],
        );
    }
    if forwarding {
        fb.uplink(scn.data_packet_octets, &[mn, nmag, pmag, lma]);
    } else {
        fb.uplink(scn.data_packet_octets, &[mn, nmag, lma]);
    }
    let mut pbu_fx = vec![Effect::LmaPbu {
        mag: nmag,
        transient: false,
        dereg: false,
    }];
    if !forwarding {
        // nothing can deliver the buffered packets once the binding moves
        pbu_fx.push(Effect::DiscardBuffer { at: pmag });
    }
    fb.wired(MsgId::Pbu, nmag, lma, "registration", pbu_fx);
    fb.wired(MsgId::Pba, lma, nmag, "binding active", vec![]);
    if forwarding {
        fb.wait(link.wired_delay(scn.data_packet_octets, link.topology.mag_lma_hops));
        fb.marker(
            pmag,
            nmag,
            "TUNNEL_TEARDOWN",
            "",
            vec![Effect::TeardownTunnel { from: pmag }, Effect::Complete],
        );
    } else {
        fb.marker(mn, mn, "HANDOVER_COMPLETE", "", vec![Effect::Complete]);
    }
    fb.finish(pmag, nmag)
}

/// Media-independent fast handover: the serving gateway coordinates
/// discovery, resource checks and commit; context transfer still uses the
/// inter-gateway initiate/acknowledge exchange, and a transient binding
/// bicasts the downlink while the mobile node switches.
fn fast_handover(scn: &Scenario, link: &LinkModel, rng: &mut ChaCha8Rng) -> FlowPlan {
    let mn = EntityId::mn();
    let smag = EntityId::mag(0);
    let lma = EntityId::lma();
    let miis = EntityId::miis();
    let cands = candidates(scn);

    let mut fb = FlowBuilder::new(scn, link, rng);
    fb.air(MsgId::LinkGoingDown, mn, smag, "signal fading", vec![]);
    fb.wired(MsgId::GetInfoRequest, smag, miis, "neighbor map", vec![]);
    fb.wired(MsgId::GetInfoResponse, miis, smag, "", vec![]);
    fb.air(MsgId::CandidateQueryRequest, smag, mn, "", vec![]);
    fb.air(
        MsgId::CandidateQueryResponse,
        mn,
        smag,
        "preferred list",
        vec![],
    );
    if cands.is_empty() {
        fb.marker(
            smag,
            smag,
            "HANDOVER_ABORT",
            "no candidate gateway",
            vec![Effect::Abort(ProtocolError::NoCandidate)],
        );
        return fb.finish(smag, EntityId::mag(1));
    }
    for cand in &cands {
        fb.wired(MsgId::ResourceQueryRequest, smag, *cand, "", vec![]);
        fb.wired(
            MsgId::ResourceQueryResponse,
            *cand,
            smag,
            "resources ok",
            vec![],
        );
    }
    let tmag = cands[0];
    fb.wired(MsgId::CommitRequest, smag, tmag, "", vec![]);
    fb.wired(MsgId::CommitResponse, tmag, smag, "", vec![]);
    fb.wired(MsgId::Hi, smag, tmag, "context: mn-id iid lmaa", vec![]);
    let t_hack = fb.wired(MsgId::Hack, tmag, smag, "context accepted", vec![]);
    // the prepared target sets up the transient binding while the serving
    // gateway commands the switch
    fb.wired_at(
        t_hack,
        MsgId::Pbu,
        tmag,
        lma,
        "transient flag",
        vec![Effect::LmaPbu {
            mag: tmag,
            transient: true,
            dereg: false,
        }],
    );
    fb.wired(
        MsgId::Pba,
        lma,
        tmag,
        "bicast begins",
        vec![Effect::StartBuffering(tmag)],
    );
    fb.air_at(
        t_hack,
        MsgId::NetCommitRequest,
        smag,
        mn,
        "switch to target",
        vec![],
    );
    let t_cmd = fb.cursor;
    fb.air_at(t_cmd, MsgId::NetCommitResponse, mn, smag, "", vec![]);
    fb.marker_at(
        t_cmd,
        mn,
        mn,
        "L2_HANDOVER_START",
        "serving link down",
        vec![Effect::ConnectivityLost {
            mode: DetachMode::Hard,
        }],
    );
    let t_attach = t_cmd + scn.t_l2_ms;
    fb.marker_at(
        t_attach,
        mn,
        mn,
        "ATTACH",
        "new link up",
        vec![Effect::MnAttach(tmag)],
    );
    fb.marker_at(t_attach, mn, mn, "MIH_Link_Up", "local indication", vec![]);
    fb.air_at(
        t_attach,
        MsgId::Rs,
        mn,
        tmag,
        "buffered delivery trigger",
        vec![Effect::FlushBufferToAir { at: tmag }],
    );
    fb.air(MsgId::Ra, tmag, mn, "", vec![]);
    fb.wired(
        MsgId::Pbu,
        tmag,
        lma,
        "registration",
        vec![Effect::LmaPbu {
            mag: tmag,
            transient: false,
            dereg: false,
        }],
    );
    fb.wired(MsgId::Pba, lma, tmag, "binding active", vec![]);
    fb.wired(
        MsgId::Pbu,
        smag,
        lma,
        "deregistration",
        vec![Effect::LmaPbu {
            mag: smag,
            transient: false,
            dereg: true,
        }],
    );
    fb.wired(MsgId::Pba, lma, smag, "", vec![]);
    fb.wired(MsgId::CompleteRequest, tmag, smag, "", vec![]);
    fb.wired(
        MsgId::CompleteResponse,
        smag,
        tmag,
        "resources released",
        vec![Effect::Complete],
    );
    fb.finish(smag, tmag)
}

/// Integrated scheme: the extended commit exchange replaces the
/// inter-gateway initiate/acknowledge pair, the anchor bicasts via a
/// transient binding, and the dual-radio mobile node switches
/// make-before-break.
fn proposed(scn: &Scenario, link: &LinkModel, rng: &mut ChaCha8Rng) -> FlowPlan {
    let mn = EntityId::mn();
    let smag = EntityId::mag(0);
    let lma = EntityId::lma();
    let miis = EntityId::miis();
    let cands = candidates(scn);
    let ctx = &scn.ctx;

    let mut fb = FlowBuilder::new(scn, link, rng);
    fb.air(MsgId::LinkGoingDown, mn, smag, "if=serving", vec![]);
    // per-handover refresh of the cached neighbor map
    fb.wired(
        MsgId::GetInfoRequest,
        smag,
        miis,
        "neighbor map refresh",
        vec![],
    );
    fb.wired(MsgId::GetInfoResponse, miis, smag, "", vec![]);
    fb.air(MsgId::CandidateQueryRequest, smag, mn, "", vec![]);
    fb.air(
        MsgId::CandidateQueryResponse,
        mn,
        smag,
        "preferred list",
        vec![],
    );
    if cands.is_empty() {
        fb.marker(
            smag,
            smag,
            "HANDOVER_ABORT",
            "no candidate gateway",
            vec![Effect::Abort(ProtocolError::NoCandidate)],
        );
        return fb.finish(smag, EntityId::mag(1));
    }
    for cand in &cands {
        fb.wired(MsgId::ResourceQueryRequest, smag, *cand, "", vec![]);
        fb.wired(
            MsgId::ResourceQueryResponse,
            *cand,
            smag,
            "resources ok",
            vec![],
        );
    }
    let tmag = cands[0];
    fb.wired(
        MsgId::CommitRequestExt,
        smag,
        tmag,
        "tlv: mn-id lla-iid lmaa hnp-list",
        vec![],
    );
    if ctx.fault_commit_status != 0 {
        fb.wired(
            MsgId::CommitResponseExt,
            tmag,
            smag,
            &format!("status={}", ctx.fault_commit_status),
            vec![Effect::Abort(ProtocolError::CommitRejected {
                status: ctx.fault_commit_status,
            })],
        );
        return fb.finish(smag, tmag);
    }
    let t_resp = fb.wired(MsgId::CommitResponseExt, tmag, smag, "status=0", vec![]);
    // resource prepared: the target sets up the transient binding
    fb.wired_at(
        t_resp,
        MsgId::Pbu,
        tmag,
        lma,
        "transient flag",
        vec![Effect::LmaPbu {
            mag: tmag,
            transient: true,
            dereg: false,
        }],
    );
    fb.wired(
        MsgId::Pba,
        lma,
        tmag,
        "bicast begins, target buffers",
        vec![Effect::StartBuffering(tmag)],
    );
    let t_loss = fb.air_at(
        t_resp,
        MsgId::NetCommitRequest,
        smag,
        mn,
        "switch to target interface",
        vec![
            Effect::ConnectivityLost {
                mode: DetachMode::MakeBeforeBreak,
            },
            Effect::StopAirService(smag),
        ],
    );
    let t_up = t_loss + scn.t_l2_ms;
    fb.marker_at(
        t_up,
        mn,
        mn,
        "IF_C_UP",
        "candidate interface connected",
        vec![Effect::MnAttach(tmag)],
    );
    fb.air_at(t_up, MsgId::LinkUp, mn, tmag, "if=candidate", vec![]);
    let t_una = fb.air_at(
        t_up,
        MsgId::Una,
        mn,
        tmag,
        "buffered delivery trigger",
        vec![Effect::FlushBufferToAir { at: tmag }],
    );
    fb.air_at(t_up, MsgId::NetCommitResponse, mn, smag, "", vec![]);
    fb.wired_at(
        t_una,
        MsgId::Pbu,
        tmag,
        lma,
        "registration",
        vec![Effect::LmaPbu {
            mag: tmag,
            transient: false,
            dereg: false,
        }],
    );
    fb.wired(MsgId::Pba, lma, tmag, "binding active at target", vec![]);
    // release the old interface once native downlink flows
    fb.wait(link.wired_delay(scn.data_packet_octets, link.topology.mag_lma_hops));
    fb.marker(
        mn,
        smag,
        "MIH_Link_Down",
        "old binding released (via target network)",
        vec![Effect::MnDetachGraceful(smag)],
    );
    fb.wired(MsgId::CompleteRequest, smag, tmag, "", vec![]);
    fb.wired(
        MsgId::CompleteResponse,
        tmag,
        smag,
        "resources released, bicast ends",
        vec![Effect::Complete],
    );
    fb.finish(smag, tmag)
}
