//! Wire codec for the MIH message subset used by the handover schemes.
//!
//! Frames are an 8-octet header followed by a TLV payload. Three extended
//! TLV codes carry the mobility context that lets a single handover-commit
//! exchange replace the HI/HACK pre-registration messages:
//!
//! - `101` MN link-local address interface identifier
//! - `102` LMA transport address (IPv4 or IPv6)
//! - `103` home network prefix list
//!
//! The message-kind registry (service id / opcode / action id triples and
//! mandatory TLVs per kind) is loaded from `data/mih_registry.txt`.

mod header;
mod message;
mod registry;
mod status;
mod tlv;
mod values;

pub use header::MihHeader;
pub use message::{
    build_commit_request_ext, build_commit_response_ext, decode_message, encode_message,
    MessageKind, MihMessage,
};
pub use registry::{registry, KindInfo, Registry};
pub use status::StatusCode;
pub use tlv::{decode_tlv, encode_tlv, Tlv, TlvCode};
pub use values::{HomeNetworkPrefix, LinkAddr, TransportAddr};

use thiserror::Error;

/// Errors produced by the encoder/decoder. Decoding errors carry the octet
/// offset at which the problem was detected.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("TLV value too long: {len} octets (max 65535)")]
    ValueTooLong { len: usize },
    #[error("truncated input at offset {offset}: need {needed} more octet(s)")]
    Truncated { offset: usize, needed: usize },
    #[error("malformed TLV length field at offset {offset}: {reason}")]
    MalformedLength { offset: usize, reason: &'static str },
    #[error("unknown message kind: sid={sid} opcode={opcode} aid={aid}")]
    UnknownMessageKind { sid: u8, opcode: u8, aid: u16 },
    #[error("message kind {kind} is missing mandatory TLV {code}")]
    MissingMandatoryTlv { kind: &'static str, code: u8 },
    #[error("invalid value for TLV {code} at offset {offset}: {reason}")]
    InvalidTlvValue {
        code: u8,
        offset: usize,
        reason: &'static str,
    },
    #[error("home network prefix list must not be empty")]
    EmptyHnpList,
    #[error("header field out of range: {field}")]
    FieldRange { field: &'static str },
}
