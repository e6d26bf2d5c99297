//! Handover-protocol state: network entities, the anchor's binding cache
//! with transient bicast, per-gateway packet buffers, handover context,
//! and timed transcripts of scheme runs.
//!
//! The six executable schemes themselves are driven by the event engine in
//! [`crate::sim`]; thin `run_*` wrappers here execute one scheme with
//! default link parameters and return its transcript.

mod bce;
mod buffer;
mod context;
mod entity;
mod runner;
mod transcript;

pub use bce::{BceState, BceTable, BindingCacheEntry, PbaInfo, PbuRequest};
pub use buffer::{BufferedPacket, PacketBuffer};
pub use context::{EntitySet, HandoverContext, HandoverFlag, MnProfile, Scheme};
pub use entity::{EntityId, EntityRole};
pub use runner::{
    run_fast_handover_mih, run_fpmip_predictive, run_fpmip_reactive, run_proposed, run_standard,
    Initiator,
};
pub use transcript::{EventClass, LinkClass, Transcript, TranscriptEvent};

use thiserror::Error;

/// Scheme-level failures. A failed run leaves the binding cache unchanged.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("handover rejected by target gateway: status {status}")]
    HandoverReject { status: u8 },
    #[error("previous point of attachment {ap_id} resolves to no gateway")]
    UnknownPreviousMag { ap_id: u32 },
    #[error("no candidate gateway available")]
    NoCandidate,
    #[error("handover commit rejected: status {status}")]
    CommitRejected { status: u8 },
    #[error("deregistration for unknown binding: {mn_id}")]
    DeregUnknownBinding { mn_id: String },
}
