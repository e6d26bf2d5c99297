//! Control-message size catalog used by the cost model and the simulator.
//!
//! Sizes cover only the protocol header of each message (no outer IP
//! header). Three command-service sizes depend on the number of
//! neighboring networks `n` and preferred points of attachment `m`.

use std::collections::HashMap;

use super::AnalyticError;

/// Identifier for every cataloged control message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MsgId {
    LinkGoingDown,
    LinkUp,
    GetInfoRequest,
    GetInfoResponse,
    CandidateQueryRequest,
    CandidateQueryResponse,
    ResourceQueryRequest,
    ResourceQueryResponse,
    CommitRequest,
    CommitRequestExt,
    CommitResponse,
    CommitResponseExt,
    NetCommitRequest,
    NetCommitResponse,
    CompleteRequest,
    CompleteResponse,
    MnCommitRequest,
    MnCommitResponse,
    AaaQuery,
    AaaReply,
    Hi,
    Hack,
    Pbu,
    Pba,
    Rs,
    Ra,
    Una,
}

/// How a catalog entry's size is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeRule {
    Const(u32),
    /// 63 + 11 n + 8 m n
    CandidateQueryReq,
    /// 77 + 101 m
    CandidateQueryResp,
    /// 150 + 11 m
    ResourceQueryReq,
}

impl SizeRule {
    fn eval(self, n: u32, m: u32) -> u32 {
        match self {
            SizeRule::Const(c) => c,
            SizeRule::CandidateQueryReq => 63 + 11 * n + 8 * m * n,
            SizeRule::CandidateQueryResp => 77 + 101 * m,
            SizeRule::ResourceQueryReq => 150 + 11 * m,
        }
    }
}

/// (id, message name, abbreviation, size rule)
pub const CATALOG_ROWS: &[(MsgId, &str, &str, SizeRule)] = &[
    (
        MsgId::LinkGoingDown,
        "MIH_Link_Going_Down",
        "M_1",
        SizeRule::Const(78),
    ),
    (MsgId::LinkUp, "MIH_Link_Up", "M_2", SizeRule::Const(95)),
    (
        MsgId::GetInfoRequest,
        "MIH_Get_Information_request",
        "M_3",
        SizeRule::Const(1500),
    ),
    (
        MsgId::GetInfoResponse,
        "MIH_Get_Information_response",
        "M_4",
        SizeRule::Const(1500),
    ),
    (
        MsgId::CandidateQueryRequest,
        "MIH_Net_HO_Candidate_Query_request",
        "M_5",
        SizeRule::CandidateQueryReq,
    ),
    (
        MsgId::CandidateQueryResponse,
        "MIH_Net_HO_Candidate_Query_response",
        "M_6",
        SizeRule::CandidateQueryResp,
    ),
    (
        MsgId::ResourceQueryRequest,
        "MIH_N2N_HO_Query_Resource_request",
        "M_7",
        SizeRule::ResourceQueryReq,
    ),
    (
        MsgId::ResourceQueryResponse,
        "MIH_N2N_HO_Query_Resource_response",
        "M_8",
        SizeRule::Const(165),
    ),
    (
        MsgId::CommitRequest,
        "MIH_N2N_HO_Commit_request",
        "M_9",
        SizeRule::Const(213),
    ),
    (
        MsgId::CommitRequestExt,
        "MIH_N2N_HO_Commit_request_ext",
        "M_9e",
        SizeRule::Const(264),
    ),
    (
        MsgId::CommitResponse,
        "MIH_N2N_HO_Commit_response",
        "M_10",
        SizeRule::Const(92),
    ),
    (
        MsgId::CommitResponseExt,
        "MIH_N2N_HO_Commit_response_ext",
        "M_10e",
        SizeRule::Const(92),
    ),
    (
        MsgId::NetCommitRequest,
        "MIH_Net_HO_Commit_request",
        "M_11",
        SizeRule::Const(122),
    ),
    (
        MsgId::NetCommitResponse,
        "MIH_Net_HO_Commit_response",
        "M_12",
        SizeRule::Const(103),
    ),
    (
        MsgId::CompleteRequest,
        "MIH_N2N_HO_Complete_request",
        "M_13",
        SizeRule::Const(109),
    ),
    (
        MsgId::CompleteResponse,
        "MIH_N2N_HO_Complete_response",
        "M_14",
        SizeRule::Const(112),
    ),
    (
        MsgId::MnCommitRequest,
        "MIH_MN_HO_Commit_request",
        "M_15",
        SizeRule::Const(75),
    ),
    (
        MsgId::MnCommitResponse,
        "MIH_MN_HO_Commit_response",
        "M_16",
        SizeRule::Const(78),
    ),
    (MsgId::AaaQuery, "AAA_Query", "M_17", SizeRule::Const(32)),
    (MsgId::AaaReply, "AAA_Reply", "M_18", SizeRule::Const(60)),
    (MsgId::Hi, "HI", "M_HI", SizeRule::Const(72)),
    (MsgId::Hack, "HACK", "M_HACK", SizeRule::Const(32)),
    (MsgId::Pbu, "PBU", "M_PBU", SizeRule::Const(76)),
    (MsgId::Pba, "PBA", "M_PBA", SizeRule::Const(52)),
    (MsgId::Rs, "RS", "M_RS", SizeRule::Const(16)),
    (MsgId::Ra, "RA", "M_RA", SizeRule::Const(64)),
    (MsgId::Una, "UNA", "M_UNA", SizeRule::Const(52)),
];

impl MsgId {
    fn row(self) -> &'static (MsgId, &'static str, &'static str, SizeRule) {
        CATALOG_ROWS
            .iter()
            .find(|(id, ..)| *id == self)
            .expect("every MsgId has a catalog row")
    }

    pub fn name(self) -> &'static str {
        self.row().1
    }

    pub fn abbrev(self) -> &'static str {
        self.row().2
    }

    pub fn from_abbrev(abbrev: &str) -> Result<MsgId, AnalyticError> {
        CATALOG_ROWS
            .iter()
            .find(|(_, _, a, _)| *a == abbrev)
            .map(|(id, ..)| *id)
            .ok_or_else(|| AnalyticError::UnknownMessage(abbrev.to_string()))
    }
}

/// Catalog instantiated for a given `(n, m)`, with optional size overrides
/// (used for fault injection in the validation tooling).
#[derive(Debug, Clone)]
pub struct MessageCatalog {
    pub neighbor_count: u32,
    pub candidate_count: u32,
    overrides: HashMap<MsgId, u32>,
}

impl MessageCatalog {
    pub fn new(neighbor_count: u32, candidate_count: u32) -> Self {
        MessageCatalog {
            neighbor_count,
            candidate_count,
            overrides: HashMap::new(),
        }
    }

    /// Replaces the size of one entry; later lookups see the override.
    pub fn with_override(mut self, id: MsgId, size: u32) -> Self {
        self.overrides.insert(id, size);
        self
    }

    pub fn size(&self, id: MsgId) -> u32 {
        if let Some(&s) = self.overrides.get(&id) {
            return s;
        }
        id.row().3.eval(self.neighbor_count, self.candidate_count)
    }
}

impl Default for MessageCatalog {
    fn default() -> Self {
        MessageCatalog::new(6, 6)
    }
}

/// Looks up a message size by abbreviation, evaluating formulas at `(n, m)`.
pub fn message_size(abbrev: &str, n: u32, m: u32) -> Result<u32, AnalyticError> {
    let id = MsgId::from_abbrev(abbrev)?;
    Ok(MessageCatalog::new(n, m).size(id))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sizes() {
        assert_eq!(message_size("M_PBU", 6, 6).unwrap(), 76);
        assert_eq!(message_size("M_UNA", 6, 6).unwrap(), 52);
        assert_eq!(message_size("M_9e", 6, 6).unwrap(), 264);
        assert_eq!(message_size("M_10e", 6, 6).unwrap(), 92);
        assert_eq!(message_size("M_10", 6, 6).unwrap(), 92);
    }

    #[test]
    fn formula_sizes() {
        assert_eq!(message_size("M_5", 6, 6).unwrap(), 417);
        assert_eq!(message_size("M_6", 6, 6).unwrap(), 683);
        assert_eq!(message_size("M_7", 6, 6).unwrap(), 216);
        // formulas respond to their parameters
        assert_eq!(message_size("M_5", 1, 1).unwrap(), 63 + 11 + 8);
        assert_eq!(message_size("M_6", 6, 2).unwrap(), 77 + 202);
    }

    #[test]
    fn unknown_abbreviation() {
        assert!(matches!(
            message_size("M_99", 6, 6),
            Err(AnalyticError::UnknownMessage(_))
        ));
    }

    #[test]
    fn override_replaces_size() {
        let cat = MessageCatalog::default().with_override(MsgId::Pbu, 77);
        assert_eq!(cat.size(MsgId::Pbu), 77);
        assert_eq!(cat.size(MsgId::Pba), 52);
    }

    #[test]
    fn catalog_has_27_rows() {
        assert_eq!(CATALOG_ROWS.len(), 27);
    }
}
