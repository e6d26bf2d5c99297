//! Wire-format checks against golden byte vectors (hex-dump text files
//! assembled independently of the encoder) plus randomized roundtrips.

use std::net::Ipv6Addr;

use mihsim_core::codec::{
    build_commit_request_ext, build_commit_response_ext, decode_message, decode_tlv,
    encode_message, encode_tlv, registry, HomeNetworkPrefix, LinkAddr, MessageKind, MihMessage,
    StatusCode, Tlv, TlvCode, TransportAddr,
};

fn read_golden(name: &str) -> Vec<u8> {
    let path = format!("{}/testdata/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("read {path}: {e}"));
    text.split_whitespace()
        .map(|tok| u8::from_str_radix(tok, 16).expect("two hex digits per octet"))
        .collect()
}

#[test]
fn golden_tlv_iid() {
    let golden = read_golden("tlv_101_iid.hex");
    let tlv = LinkAddr::Iid64([0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77]).to_tlv();
    assert_eq!(encode_tlv(&tlv).unwrap(), golden);
    let (decoded, rest) = decode_tlv(&golden).unwrap();
    assert_eq!(decoded, tlv);
    assert!(rest.is_empty());
}

#[test]
fn golden_tlv_lmaa() {
    let golden = read_golden("tlv_102_lmaa_v6.hex");
    let addr: Ipv6Addr = "2001:db8::1".parse().unwrap();
    let tlv = TransportAddr::V6(addr).to_tlv();
    assert_eq!(encode_tlv(&tlv).unwrap(), golden);
    assert_eq!(golden.len(), 19);
    assert_eq!(&golden[..3], &[0x66, 0x11, 0x02]);
}

#[test]
fn golden_tlv_hnp_list() {
    let golden = read_golden("tlv_103_single_hnp.hex");
    let hnp = HomeNetworkPrefix::new(64, "2001:db8::".parse().unwrap());
    let tlv = HomeNetworkPrefix::list_to_tlv(&[hnp]).unwrap();
    assert_eq!(encode_tlv(&tlv).unwrap(), golden);
    assert_eq!(&golden[..4], &[0x67, 0x12, 0x01, 0x40]);
}

#[test]
fn golden_commit_request() {
    let golden = read_golden("commit_request_ext.hex");
    let msg = build_commit_request_ext(
        "mn1@example",
        LinkAddr::Iid64([0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77]),
        TransportAddr::V6("2001:db8::1".parse().unwrap()),
        &[HomeNetworkPrefix::new(64, "2001:db8:1::".parse().unwrap())],
        7,
    )
    .unwrap();
    assert_eq!(encode_message(&msg).unwrap(), golden);
    let decoded = decode_message(&golden).unwrap();
    assert_eq!(decoded, msg);
    assert_eq!(decoded.kind, MessageKind::N2nHoCommitRequestExt);
}

#[test]
fn golden_commit_response_status130() {
    let golden = read_golden("commit_response_ext_status130.hex");
    let msg = build_commit_response_ext(StatusCode(130), 7).unwrap();
    assert_eq!(encode_message(&msg).unwrap(), golden);
    let decoded = decode_message(&golden).unwrap();
    assert_eq!(
        decoded.status().unwrap().meaning(),
        "Insufficient resources"
    );
}

#[test]
fn golden_empty_event_message() {
    let golden = read_golden("link_up_empty.hex");
    assert_eq!(golden.len(), 8);
    let msg = MihMessage::new(MessageKind::LinkUp, 3, vec![]).unwrap();
    assert_eq!(encode_message(&msg).unwrap(), golden);
}

mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_link_addr() -> impl Strategy<Value = LinkAddr> {
        prop_oneof![
            any::<[u8; 6]>().prop_map(LinkAddr::Mac48),
            any::<[u8; 8]>().prop_map(LinkAddr::Iid64),
        ]
    }

    fn arb_transport_addr() -> impl Strategy<Value = TransportAddr> {
        prop_oneof![
            any::<[u8; 4]>().prop_map(|a| TransportAddr::V4(a.into())),
            any::<[u8; 16]>().prop_map(|a| TransportAddr::V6(a.into())),
        ]
    }

    fn arb_hnps() -> impl Strategy<Value = Vec<HomeNetworkPrefix>> {
        prop::collection::vec(
            (0u8..=128, any::<[u8; 16]>())
                .prop_map(|(len, p)| HomeNetworkPrefix::new(len, p.into())),
            1..5,
        )
    }

    /// Opaque TLVs avoid the reserved extended codes, whose value shapes
    /// are validated.
    fn arb_opaque_tlv() -> impl Strategy<Value = Tlv> {
        (any::<u8>(), prop::collection::vec(any::<u8>(), 0..200)).prop_map(|(code, value)| {
            let code = if (101..=103).contains(&code) { 1 } else { code };
            Tlv::new(TlvCode(code), value)
        })
    }

    fn arb_message() -> impl Strategy<Value = MihMessage> {
        let kinds: Vec<MessageKind> = registry()
            .kinds()
            .filter(|k| registry().info(*k).mandatory.is_empty())
            .collect();
        let plain = (
            prop::sample::select(kinds),
            0u16..=0xFFF,
            prop::collection::vec(arb_opaque_tlv(), 0..4),
        )
            .prop_map(|(kind, tid, tlvs)| MihMessage::new(kind, tid, tlvs).unwrap());
        let commit_req = (
            "[a-z0-9@.]{1,24}",
            arb_link_addr(),
            arb_transport_addr(),
            arb_hnps(),
            0u16..=0xFFF,
        )
            .prop_map(|(mn, lla, lmaa, hnps, tid)| {
                build_commit_request_ext(&mn, lla, lmaa, &hnps, tid).unwrap()
            });
        let commit_resp = (any::<u8>(), 0u16..=0xFFF)
            .prop_map(|(status, tid)| build_commit_response_ext(StatusCode(status), tid).unwrap());
        prop_oneof![plain, commit_req, commit_resp]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn tlv_roundtrip(tlv in arb_opaque_tlv()) {
            let enc = encode_tlv(&tlv).unwrap();
            let (back, rest) = decode_tlv(&enc).unwrap();
            prop_assert_eq!(back, tlv);
            prop_assert!(rest.is_empty());
        }

        #[test]
        fn message_roundtrip(msg in arb_message()) {
            let enc = encode_message(&msg).unwrap();
            prop_assert_eq!(enc.len(), 8 + msg.tlvs.iter().map(Tlv::encoded_len).sum::<usize>());
            let back = decode_message(&enc).unwrap();
            prop_assert_eq!(back, msg);
        }

        #[test]
        fn truncation_never_panics(msg in arb_message(), cut in 0usize..64) {
            let enc = encode_message(&msg).unwrap();
            let cut = cut.min(enc.len());
            let _ = decode_message(&enc[..enc.len() - cut]);
        }
    }
}
