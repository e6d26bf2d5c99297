use super::CodecError;

/// One-octet TLV type code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TlvCode(pub u8);

impl TlvCode {
    /// Mobile node identifier (NAI).
    pub const MN_ID: TlvCode = TlvCode(1);
    /// Handover status code.
    pub const STATUS: TlvCode = TlvCode(3);
    /// Extended: MN link-local address interface identifier.
    pub const MN_LLA_IID: TlvCode = TlvCode(101);
    /// Extended: LMA transport address.
    pub const LMA_ADDRESS: TlvCode = TlvCode(102);
    /// Extended: home network prefix list.
    pub const HOME_NETWORK_PREFIX: TlvCode = TlvCode(103);
}

impl std::fmt::Display for TlvCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A raw type-length-value element.
///
/// The length field is one octet `L` when `L <= 128`; longer values use one
/// octet `128 + k` followed by `k` big-endian length octets with `k` minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tlv {
    pub code: TlvCode,
    pub value: Vec<u8>,
}

impl Tlv {
    pub fn new(code: TlvCode, value: Vec<u8>) -> Self {
        Tlv { code, value }
    }

    /// Octets this TLV occupies on the wire.
    pub fn encoded_len(&self) -> usize {
        let l = self.value.len();
        let len_field = if l <= 128 {
            1
        } else if l <= 0xFF {
            2
        } else {
            3
        };
        1 + len_field + l
    }

    pub fn encode_into(&self, out: &mut Vec<u8>) -> Result<(), CodecError> {
        let l = self.value.len();
        if l >= 1 << 16 {
            return Err(CodecError::ValueTooLong { len: l });
        }
        out.push(self.code.0);
        if l <= 128 {
            out.push(l as u8);
        } else if l <= 0xFF {
            out.push(0x81);
            out.push(l as u8);
        } else {
            out.push(0x82);
            out.push((l >> 8) as u8);
            out.push(l as u8);
        }
        out.extend_from_slice(&self.value);
        Ok(())
    }

    /// Decodes one TLV starting at absolute `offset` within the original
    /// buffer (offsets are only used for error reporting).
    pub fn decode_at(buf: &[u8], offset: usize) -> Result<(Tlv, usize), CodecError> {
        if buf.is_empty() {
            return Err(CodecError::Truncated { offset, needed: 2 });
        }
        let code = TlvCode(buf[0]);
        if buf.len() < 2 {
            return Err(CodecError::Truncated {
                offset: offset + 1,
                needed: 1,
            });
        }
        let first = buf[1];
        let (len, len_octets) = if first <= 0x80 {
            (first as usize, 1)
        } else {
            let k = (first - 0x80) as usize;
            if k > 2 {
                return Err(CodecError::MalformedLength {
                    offset: offset + 1,
                    reason: "length-of-length exceeds two octets",
                });
            }
            if buf.len() < 2 + k {
                return Err(CodecError::Truncated {
                    offset: offset + 2,
                    needed: 2 + k - buf.len(),
                });
            }
            let mut v = 0usize;
            for &b in &buf[2..2 + k] {
                v = (v << 8) | b as usize;
            }
            // Minimal form: multi-octet lengths must exceed the direct range
            // and must not carry a leading zero octet.
            if v <= 128 || (k == 2 && v <= 0xFF) {
                return Err(CodecError::MalformedLength {
                    offset: offset + 1,
                    reason: "non-minimal length encoding",
                });
            }
            (v, 1 + k)
        };
        let value_start = 1 + len_octets;
        if buf.len() < value_start + len {
            return Err(CodecError::Truncated {
                offset: offset + value_start,
                needed: value_start + len - buf.len(),
            });
        }
        let value = buf[value_start..value_start + len].to_vec();
        Ok((Tlv { code, value }, value_start + len))
    }
}

/// Encodes a single TLV to its wire form.
pub fn encode_tlv(tlv: &Tlv) -> Result<Vec<u8>, CodecError> {
    let mut out = Vec::with_capacity(tlv.encoded_len());
    tlv.encode_into(&mut out)?;
    Ok(out)
}

/// Decodes exactly one TLV, returning it and the unconsumed remainder.
pub fn decode_tlv(buf: &[u8]) -> Result<(Tlv, &[u8]), CodecError> {
    let (tlv, used) = Tlv::decode_at(buf, 0)?;
    Ok((tlv, &buf[used..]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extended_iid_layout() {
        // kind octet 0x02 + 8-octet interface identifier
        let tlv = Tlv::new(
            TlvCode::MN_LLA_IID,
            vec![0x02, 0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77],
        );
        let enc = encode_tlv(&tlv).unwrap();
        assert_eq!(
            enc,
            vec![0x65, 0x09, 0x02, 0x00, 0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77]
        );
        let (back, rest) = decode_tlv(&enc).unwrap();
        assert_eq!(back, tlv);
        assert!(rest.is_empty());
    }

    #[test]
    fn direct_length_boundary() {
        let tlv = Tlv::new(TlvCode(7), vec![0xAA; 128]);
        let enc = encode_tlv(&tlv).unwrap();
        assert_eq!(enc[1], 128);
        assert_eq!(enc.len(), 2 + 128);

        let tlv = Tlv::new(TlvCode(7), vec![0xAA; 129]);
        let enc = encode_tlv(&tlv).unwrap();
        assert_eq!(&enc[1..3], &[0x81, 129]);
        assert_eq!(enc.len(), 3 + 129);
    }

    #[test]
    fn two_octet_length() {
        let tlv = Tlv::new(TlvCode(7), vec![0x55; 300]);
        let enc = encode_tlv(&tlv).unwrap();
        assert_eq!(&enc[1..4], &[0x82, 0x01, 0x2C]);
        let (back, _) = decode_tlv(&enc).unwrap();
        assert_eq!(back.value.len(), 300);
    }

    #[test]
    fn value_too_long() {
        let tlv = Tlv::new(TlvCode(7), vec![0; 1 << 16]);
        assert_eq!(
            encode_tlv(&tlv),
            Err(CodecError::ValueTooLong { len: 1 << 16 })
        );
    }

    #[test]
    fn truncated_value() {
        // declared length 9, only 5 value octets present
        let buf = [0x65, 0x09, 0x02, 0x00, 0x11, 0x22, 0x33];
        assert!(matches!(
            decode_tlv(&buf),
            Err(CodecError::Truncated { .. })
        ));
    }

    #[test]
    fn non_minimal_length_rejected() {
        let buf = [0x07, 0x81, 0x05, 1, 2, 3, 4, 5];
        assert!(matches!(
            decode_tlv(&buf),
            Err(CodecError::MalformedLength { .. })
        ));
        let mut buf = vec![0x07, 0x82, 0x00, 0x90];
        buf.extend_from_slice(&[0u8; 0x90]);
        assert!(matches!(
            decode_tlv(&buf),
            Err(CodecError::MalformedLength { .. })
        ));
    }

    #[test]
    fn decode_leaves_remainder() {
        let mut buf = encode_tlv(&Tlv::new(TlvCode(1), vec![1, 2])).unwrap();
        buf.extend_from_slice(&[0xFF, 0xEE]);
        let (_, rest) = decode_tlv(&buf).unwrap();
        assert_eq!(rest, &[0xFF, 0xEE]);
    }
}
