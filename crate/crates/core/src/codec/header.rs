use super::CodecError;

/// Fixed 8-octet frame header.
///
/// Layout (big-endian bit order):
///
/// ```text
/// octet 0:    version(4) ack_req ack_rsp uir more
/// octet 1:    fragment_no(7) reserved(1)
/// octets 2-3: sid(4) opcode(2) aid(10)
/// octets 4-5: reserved(4) transaction_id(12)
/// octets 6-7: payload_len(16)
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MihHeader {
    pub version: u8,
    pub ack_req: bool,
    pub ack_rsp: bool,
    pub uir: bool,
    pub more: bool,
    pub fragment_no: u8,
    pub sid: u8,
    pub opcode: u8,
    pub aid: u16,
    pub transaction_id: u16,
    pub payload_len: u16,
}

impl MihHeader {
    pub const LEN: usize = 8;
    pub const VERSION: u8 = 1;

    pub fn new(sid: u8, opcode: u8, aid: u16, transaction_id: u16) -> Result<Self, CodecError> {
        let h = MihHeader {
            version: Self::VERSION,
            ack_req: false,
            ack_rsp: false,
            uir: false,
            more: false,
            fragment_no: 0,
            sid,
            opcode,
            aid,
            transaction_id,
            payload_len: 0,
        };
        h.check_ranges()?;
        Ok(h)
    }

    fn check_ranges(&self) -> Result<(), CodecError> {
        if self.version > 0xF {
            return Err(CodecError::FieldRange { field: "version" });
        }
        if self.fragment_no > 0x7F {
            return Err(CodecError::FieldRange {
                field: "fragment_no",
            });
        }
        if self.sid > 0xF {
            return Err(CodecError::FieldRange { field: "sid" });
        }
        if self.opcode > 0x3 {
            return Err(CodecError::FieldRange { field: "opcode" });
        }
        if self.aid > 0x3FF {
            return Err(CodecError::FieldRange { field: "aid" });
        }
        if self.transaction_id > 0xFFF {
            return Err(CodecError::FieldRange {
                field: "transaction_id",
            });
        }
        Ok(())
    }

    pub fn encode(&self) -> Result<[u8; Self::LEN], CodecError> {
        self.check_ranges()?;
        let mut b = [0u8; Self::LEN];
        b[0] = (self.version << 4)
            | (u8::from(self.ack_req) << 3)
            | (u8::from(self.ack_rsp) << 2)
            | (u8::from(self.uir) << 1)
            | u8::from(self.more);
        b[1] = self.fragment_no << 1;
        let sid_op_aid = ((self.sid as u16) << 12) | ((self.opcode as u16) << 10) | self.aid;
        b[2..4].copy_from_slice(&sid_op_aid.to_be_bytes());
        b[4..6].copy_from_slice(&self.transaction_id.to_be_bytes());
        b[6..8].copy_from_slice(&self.payload_len.to_be_bytes());
        Ok(b)
    }

    pub fn decode(buf: &[u8]) -> Result<Self, CodecError> {
        if buf.len() < Self::LEN {
            return Err(CodecError::Truncated {
                offset: buf.len(),
                needed: Self::LEN - buf.len(),
            });
        }
        let sid_op_aid = u16::from_be_bytes([buf[2], buf[3]]);
        Ok(MihHeader {
            version: buf[0] >> 4,
            ack_req: buf[0] & 0x08 != 0,
            ack_rsp: buf[0] & 0x04 != 0,
            uir: buf[0] & 0x02 != 0,
            more: buf[0] & 0x01 != 0,
            fragment_no: buf[1] >> 1,
            sid: (sid_op_aid >> 12) as u8,
            opcode: ((sid_op_aid >> 10) & 0x3) as u8,
            aid: sid_op_aid & 0x3FF,
            transaction_id: u16::from_be_bytes([buf[4], buf[5]]) & 0x0FFF,
            payload_len: u16::from_be_bytes([buf[6], buf[7]]),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_octets_exactly() {
        let mut h = MihHeader::new(3, 1, 521, 0xABC).unwrap();
        h.payload_len = 42;
        let enc = h.encode().unwrap();
        assert_eq!(enc.len(), 8);
        assert_eq!(MihHeader::decode(&enc).unwrap(), h);
    }

    #[test]
    fn bit_packing() {
        let mut h = MihHeader::new(0xF, 0x3, 0x3FF, 0xFFF).unwrap();
        h.ack_req = true;
        h.uir = true;
        h.fragment_no = 0x7F;
        h.payload_len = 0xFFFF;
        let enc = h.encode().unwrap();
        // version=1, ack_req=1, uir=1
        assert_eq!(enc[0], 0x1A);
        assert_eq!(enc[1], 0xFE);
        assert_eq!(&enc[2..4], &[0xFF, 0xFF]);
        assert_eq!(&enc[4..6], &[0x0F, 0xFF]);
        assert_eq!(MihHeader::decode(&enc).unwrap(), h);
    }

    #[test]
    fn field_range_enforced() {
        assert!(matches!(
            MihHeader::new(16, 0, 0, 0),
            Err(CodecError::FieldRange { field: "sid" })
        ));
        assert!(matches!(
            MihHeader::new(1, 0, 1024, 0),
            Err(CodecError::FieldRange { field: "aid" })
        ));
    }

    #[test]
    fn short_input_truncated() {
        assert!(matches!(
            MihHeader::decode(&[0; 7]),
            Err(CodecError::Truncated { .. })
        ));
    }
}
