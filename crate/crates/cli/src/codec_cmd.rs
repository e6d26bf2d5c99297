//! `codec encode` / `codec decode`: wire-message tooling.
//!
//! Encode reads a field-spec text:
//!
//! ```text
//! kind = MIH_N2N_HO_Commit_request_ext
//! transaction_id = 7
//! mn_id = mn1@example
//! lla_iid = iid:00-11-22-33-44-55-66-77    # or mac:aa-bb-cc-dd-ee-ff
//! lmaa = 2001:db8::1                       # IPv4 or IPv6
//! hnp = 64:2001:db8:1::                    # repeatable
//! status = 130                             # commit responses
//! tlv = 7:0a0b0c                           # generic code:hex, repeatable
//! ```
//!
//! and emits a whitespace-separated hex dump. Decode reads such a dump and
//! prints the header fields and a typed TLV listing.

use std::net::IpAddr;
use std::path::Path;

use mihsim_core::codec::{
    build_commit_request_ext, build_commit_response_ext, decode_message, encode_message,
    HomeNetworkPrefix, LinkAddr, MessageKind, MihMessage, StatusCode, Tlv, TlvCode, TransportAddr,
};

use crate::{write_output, CmdError};

fn bad(msg: impl Into<String>) -> CmdError {
    CmdError::Usage(msg.into())
}

fn parse_hex_octets(text: &str) -> Result<Vec<u8>, CmdError> {
    text.split_whitespace()
        .map(|tok| {
            u8::from_str_radix(tok, 16)
                .map_err(|_| bad(format!("`{tok}` is not a two-digit hex octet")))
        })
        .collect()
}

fn parse_link_addr(value: &str) -> Result<LinkAddr, CmdError> {
    let (kind, rest) = value
        .split_once(':')
        .ok_or_else(|| bad("link address must be mac:.. or iid:.."))?;
    let octets: Vec<u8> = rest
        .split('-')
        .map(|p| u8::from_str_radix(p, 16).map_err(|_| bad(format!("bad octet `{p}`"))))
        .collect::<Result<_, _>>()?;
    match kind {
        "mac" => octets
            .as_slice()
            .try_into()
            .map(LinkAddr::Mac48)
            .map_err(|_| bad("mac link address needs 6 octets")),
        "iid" => octets
            .as_slice()
            .try_into()
            .map(LinkAddr::Iid64)
            .map_err(|_| bad("interface identifier needs 8 octets")),
        _ => Err(bad("link address kind must be mac or iid")),
    }
}

#[derive(Default)]
struct FieldSpec {
    kind: Option<MessageKind>,
    transaction_id: u16,
    mn_id: Option<String>,
    lla_iid: Option<LinkAddr>,
    lmaa: Option<TransportAddr>,
    hnps: Vec<HomeNetworkPrefix>,
    status: Option<StatusCode>,
    raw_tlvs: Vec<Tlv>,
}

fn parse_field_spec(text: &str) -> Result<FieldSpec, CmdError> {
    let mut spec = FieldSpec::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let (key, value) = stripped
            .split_once('=')
            .ok_or_else(|| bad(format!("line {line}: expected `key = value`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "kind" => {
                spec.kind = Some(
                    MessageKind::from_name(value)
                        .ok_or_else(|| bad(format!("line {line}: unknown kind `{value}`")))?,
                )
            }
            "transaction_id" => {
                spec.transaction_id = value
                    .parse()
                    .map_err(|e| bad(format!("line {line}: transaction_id: {e}")))?
            }
            "mn_id" => spec.mn_id = Some(value.to_string()),
            "lla_iid" => spec.lla_iid = Some(parse_link_addr(value)?),
            "lmaa" => {
                let addr: IpAddr = value
                    .parse()
                    .map_err(|e| bad(format!("line {line}: lmaa: {e}")))?;
                spec.lmaa = Some(match addr {
                    IpAddr::V4(a) => TransportAddr::V4(a),
                    IpAddr::V6(a) => TransportAddr::V6(a),
                });
            }
            "hnp" => {
                let (len, prefix) = value
                    .split_once(':')
                    .ok_or_else(|| bad(format!("line {line}: hnp must be LEN:PREFIX")))?;
                let len: u8 = len
                    .parse()
                    .map_err(|e| bad(format!("line {line}: prefix length: {e}")))?;
                let prefix = prefix
                    .parse()
                    .map_err(|e| bad(format!("line {line}: prefix: {e}")))?;
                spec.hnps.push(HomeNetworkPrefix::new(len, prefix));
            }
            "status" => {
                spec.status = Some(StatusCode(
                    value
                        .parse()
                        .map_err(|e| bad(format!("line {line}: status: {e}")))?,
                ))
            }
            "tlv" => {
                let (code, hex) = value
                    .split_once(':')
                    .ok_or_else(|| bad(format!("line {line}: tlv must be CODE:HEX")))?;
                let code: u8 = code
                    .parse()
                    .map_err(|e| bad(format!("line {line}: tlv code: {e}")))?;
                let bytes = (0..hex.len())
                    .step_by(2)
                    .map(|i| {
                        u8::from_str_radix(hex.get(i..i + 2).unwrap_or(""), 16)
                            .map_err(|_| bad(format!("line {line}: tlv hex payload")))
                    })
                    .collect::<Result<Vec<u8>, _>>()?;
                spec.raw_tlvs.push(Tlv::new(TlvCode(code), bytes));
            }
            _ => return Err(bad(format!("line {line}: unknown field `{key}`"))),
        }
    }
    Ok(spec)
}

fn build_message(spec: FieldSpec) -> Result<MihMessage, CmdError> {
    let kind = spec.kind.ok_or_else(|| bad("missing `kind` field"))?;
    let msg = match kind {
        MessageKind::N2nHoCommitRequestExt => build_commit_request_ext(
            spec.mn_id.as_deref().ok_or_else(|| bad("missing mn_id"))?,
            spec.lla_iid.ok_or_else(|| bad("missing lla_iid"))?,
            spec.lmaa.ok_or_else(|| bad("missing lmaa"))?,
            &spec.hnps,
            spec.transaction_id,
        ),
        MessageKind::N2nHoCommitResponseExt => build_commit_response_ext(
            spec.status.ok_or_else(|| bad("missing status"))?,
            spec.transaction_id,
        ),
        _ => {
            let mut tlvs = Vec::new();
            if let Some(mn_id) = &spec.mn_id {
                tlvs.push(Tlv::new(TlvCode::MN_ID, mn_id.as_bytes().to_vec()));
            }
            if let Some(status) = spec.status {
                tlvs.push(Tlv::new(TlvCode::STATUS, vec![status.0]));
            }
            tlvs.extend(spec.raw_tlvs.iter().cloned());
            MihMessage::new(kind, spec.transaction_id, tlvs)
        }
    }
    .map_err(|e| bad(e.to_string()))?;
    Ok(msg)
}

fn hexdump(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 3);
    for (i, b) in bytes.iter().enumerate() {
        if i > 0 {
            out.push(if i % 16 == 0 { '\n' } else { ' ' });
        }
        out.push_str(&format!("{b:02x}"));
    }
    out.push('\n');
    out
}

fn render_tlv(tlv: &Tlv) -> String {
    match tlv.code {
        TlvCode::MN_ID => format!("tlv 1 (mn id): \"{}\"", String::from_utf8_lossy(&tlv.value)),
        TlvCode::STATUS => {
            let status = StatusCode(tlv.value.first().copied().unwrap_or(0));
            format!("tlv 3 (status): {} \"{}\"", status.0, status.meaning())
        }
        TlvCode::MN_LLA_IID => match LinkAddr::from_value(&tlv.value, 0) {
            Ok(addr) => format!("tlv 101 (mn lla-iid): {addr}"),
            Err(e) => format!("tlv 101 (mn lla-iid): invalid ({e})"),
        },
        TlvCode::LMA_ADDRESS => match TransportAddr::from_value(&tlv.value, 0) {
            Ok(addr) => format!("tlv 102 (lma address): {addr}"),
            Err(e) => format!("tlv 102 (lma address): invalid ({e})"),
        },
        TlvCode::HOME_NETWORK_PREFIX => match HomeNetworkPrefix::list_from_value(&tlv.value, 0) {
            Ok(list) => {
                let items: Vec<String> = list.iter().map(|h| h.to_string()).collect();
                format!("tlv 103 (home network prefixes): [{}]", items.join(", "))
            }
            Err(e) => format!("tlv 103 (home network prefixes): invalid ({e})"),
        },
        TlvCode(code) => {
            let hex: Vec<String> = tlv.value.iter().map(|b| format!("{b:02x}")).collect();
            format!("tlv {code}: {}", hex.join(" "))
        }
    }
}

fn render_message(msg: &MihMessage) -> String {
    let h = &msg.header;
    let mut out = format!(
        "kind: {}\nversion: {}\nsid/opcode/aid: {}/{}/{}\ntransaction_id: {}\npayload_len: {}\n",
        msg.kind, h.version, h.sid, h.opcode, h.aid, h.transaction_id, h.payload_len
    );
    for tlv in &msg.tlvs {
        out.push_str(&render_tlv(tlv));
        out.push('\n');
    }
    out
}

pub fn encode(input: &Path, out: Option<&Path>) -> Result<(), CmdError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| bad(format!("cannot read {}: {e}", input.display())))?;
    let msg = build_message(parse_field_spec(&text)?)?;
    let bytes = encode_message(&msg).map_err(|e| bad(e.to_string()))?;
    write_output(out, &hexdump(&bytes))
}

pub fn decode(input: &Path, out: Option<&Path>) -> Result<(), CmdError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| bad(format!("cannot read {}: {e}", input.display())))?;
    let bytes = parse_hex_octets(&text)?;
    let msg = decode_message(&bytes).map_err(|e| bad(e.to_string()))?;
    write_output(out, &render_message(&msg))
}
