use super::header::MihHeader;
use super::registry::registry;
use super::status::StatusCode;
use super::tlv::{Tlv, TlvCode};
use super::values::{validate_extended_shape, HomeNetworkPrefix, LinkAddr, TransportAddr};
use super::CodecError;

/// Every message kind the codec understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MessageKind {
    LinkUp,
    LinkGoingDown,
    GetInformationRequest,
    GetInformationResponse,
    NetHoCandidateQueryRequest,
    NetHoCandidateQueryResponse,
    N2nHoQueryResourceRequest,
    N2nHoQueryResourceResponse,
    MnHoCommitRequest,
    MnHoCommitResponse,
    NetHoCommitRequest,
    NetHoCommitResponse,
    N2nHoCommitRequest,
    N2nHoCommitResponse,
    N2nHoCommitRequestExt,
    N2nHoCommitResponseExt,
    N2nHoCompleteRequest,
    N2nHoCompleteResponse,
}

impl MessageKind {
    pub const ALL: &'static [MessageKind] = &[
        MessageKind::LinkUp,
        MessageKind::LinkGoingDown,
        MessageKind::GetInformationRequest,
        MessageKind::GetInformationResponse,
        MessageKind::NetHoCandidateQueryRequest,
        MessageKind::NetHoCandidateQueryResponse,
        MessageKind::N2nHoQueryResourceRequest,
        MessageKind::N2nHoQueryResourceResponse,
        MessageKind::MnHoCommitRequest,
        MessageKind::MnHoCommitResponse,
        MessageKind::NetHoCommitRequest,
        MessageKind::NetHoCommitResponse,
        MessageKind::N2nHoCommitRequest,
        MessageKind::N2nHoCommitResponse,
        MessageKind::N2nHoCommitRequestExt,
        MessageKind::N2nHoCommitResponseExt,
        MessageKind::N2nHoCompleteRequest,
        MessageKind::N2nHoCompleteResponse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MessageKind::LinkUp => "MIH_Link_Up",
            MessageKind::LinkGoingDown => "MIH_Link_Going_Down",
            MessageKind::GetInformationRequest => "MIH_Get_Information_request",
            MessageKind::GetInformationResponse => "MIH_Get_Information_response",
            MessageKind::NetHoCandidateQueryRequest => "MIH_Net_HO_Candidate_Query_request",
            MessageKind::NetHoCandidateQueryResponse => "MIH_Net_HO_Candidate_Query_response",
            MessageKind::N2nHoQueryResourceRequest => "MIH_N2N_HO_Query_Resource_request",
            MessageKind::N2nHoQueryResourceResponse => "MIH_N2N_HO_Query_Resource_response",
            MessageKind::MnHoCommitRequest => "MIH_MN_HO_Commit_request",
            MessageKind::MnHoCommitResponse => "MIH_MN_HO_Commit_response",
            MessageKind::NetHoCommitRequest => "MIH_Net_HO_Commit_request",
            MessageKind::NetHoCommitResponse => "MIH_Net_HO_Commit_response",
            MessageKind::N2nHoCommitRequest => "MIH_N2N_HO_Commit_request",
            MessageKind::N2nHoCommitResponse => "MIH_N2N_HO_Commit_response",
            MessageKind::N2nHoCommitRequestExt => "MIH_N2N_HO_Commit_request_ext",
            MessageKind::N2nHoCommitResponseExt => "MIH_N2N_HO_Commit_response_ext",
            MessageKind::N2nHoCompleteRequest => "MIH_N2N_HO_Complete_request",
            MessageKind::N2nHoCompleteResponse => "MIH_N2N_HO_Complete_response",
        }
    }

    pub fn from_name(name: &str) -> Option<MessageKind> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

impl std::fmt::Display for MessageKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A decoded (or to-be-encoded) MIH message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MihMessage {
    pub header: MihHeader,
    pub kind: MessageKind,
    pub tlvs: Vec<Tlv>,
}

impl MihMessage {
    /// Builds a message of `kind`; the header triple comes from the registry
    /// and `payload_len` is computed from the TLVs.
    pub fn new(kind: MessageKind, transaction_id: u16, tlvs: Vec<Tlv>) -> Result<Self, CodecError> {
        let info = registry().info(kind);
        let mut header = MihHeader::new(info.sid, info.opcode, info.aid, transaction_id)?;
        let payload_len: usize = tlvs.iter().map(Tlv::encoded_len).sum();
        if payload_len > u16::MAX as usize {
            return Err(CodecError::ValueTooLong { len: payload_len });
        }
        header.payload_len = payload_len as u16;
        Ok(MihMessage { header, kind, tlvs })
    }

    pub fn find_tlv(&self, code: TlvCode) -> Option<&Tlv> {
        self.tlvs.iter().find(|t| t.code == code)
    }

    /// The status TLV value, when present.
    pub fn status(&self) -> Option<StatusCode> {
        self.find_tlv(TlvCode::STATUS)
            .and_then(|t| t.value.first().copied())
            .map(StatusCode)
    }

    fn validate(&self) -> Result<(), CodecError> {
        let info = registry().info(self.kind);
        for code in &info.mandatory {
            if self.find_tlv(*code).is_none() {
                return Err(CodecError::MissingMandatoryTlv {
                    kind: self.kind.name(),
                    code: code.0,
                });
            }
        }
        Ok(())
    }
}

/// Encodes a message: 8-octet header followed by the TLV payload.
pub fn encode_message(msg: &MihMessage) -> Result<Vec<u8>, CodecError> {
    msg.validate()?;
    let payload_len: usize = msg.tlvs.iter().map(Tlv::encoded_len).sum();
    if payload_len > u16::MAX as usize {
        return Err(CodecError::ValueTooLong { len: payload_len });
    }
    let mut header = msg.header;
    header.payload_len = payload_len as u16;
    let mut out = Vec::with_capacity(MihHeader::LEN + payload_len);
    out.extend_from_slice(&header.encode()?);
    for tlv in &msg.tlvs {
        validate_extended_shape(tlv, out.len())?;
        tlv.encode_into(&mut out)?;
    }
    Ok(out)
}

/// Decodes a message, consuming exactly `8 + payload_len` octets, and
/// validates mandatory TLVs and extended TLV value shapes.
pub fn decode_message(buf: &[u8]) -> Result<MihMessage, CodecError> {
    let header = MihHeader::decode(buf)?;
    let info = registry()
        .lookup(header.sid, header.opcode, header.aid)
        .ok_or(CodecError::UnknownMessageKind {
            sid: header.sid,
            opcode: header.opcode,
            aid: header.aid,
        })?;
    let payload_end = MihHeader::LEN + header.payload_len as usize;
    if buf.len() < payload_end {
        return Err(CodecError::Truncated {
            offset: buf.len(),
            needed: payload_end - buf.len(),
        });
    }
    let mut tlvs = Vec::new();
    let mut offset = MihHeader::LEN;
    while offset < payload_end {
        let (tlv, used) = Tlv::decode_at(&buf[offset..payload_end], offset)?;
        validate_extended_shape(&tlv, offset)?;
        tlvs.push(tlv);
        offset += used;
    }
    let msg = MihMessage {
        header,
        kind: info.kind,
        tlvs,
    };
    msg.validate()?;
    Ok(msg)
}

/// Builds the extended handover-commit request carrying the MN identity,
/// its link-local interface identifier, the LMA address and the home
/// network prefix list, in that TLV order.
pub fn build_commit_request_ext(
    mn_id: &str,
    lla_iid: LinkAddr,
    lmaa: TransportAddr,
    hnps: &[HomeNetworkPrefix],
    transaction_id: u16,
) -> Result<MihMessage, CodecError> {
    let tlvs = vec![
        Tlv::new(TlvCode::MN_ID, mn_id.as_bytes().to_vec()),
        lla_iid.to_tlv(),
        lmaa.to_tlv(),
        HomeNetworkPrefix::list_to_tlv(hnps)?,
    ];
    MihMessage::new(MessageKind::N2nHoCommitRequestExt, transaction_id, tlvs)
}

/// Builds the extended handover-commit response carrying a status TLV.
pub fn build_commit_response_ext(
    status: StatusCode,
    transaction_id: u16,
) -> Result<MihMessage, CodecError> {
    let tlvs = vec![Tlv::new(TlvCode::STATUS, vec![status.0])];
    MihMessage::new(MessageKind::N2nHoCommitResponseExt, transaction_id, tlvs)
}
