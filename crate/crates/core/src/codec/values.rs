//! Typed values carried by the extended TLVs, with their wire grammars.

use std::net::{Ipv4Addr, Ipv6Addr};

use super::tlv::{Tlv, TlvCode};
use super::CodecError;

/// Link-layer address: one kind octet followed by the address octets.
/// Kind 1 is a 48-bit MAC, kind 2 an 8-octet interface identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkAddr {
    Mac48([u8; 6]),
    Iid64([u8; 8]),
}

impl LinkAddr {
    pub fn to_tlv(self) -> Tlv {
        let mut v = Vec::with_capacity(9);
        match self {
            LinkAddr::Mac48(a) => {
                v.push(1);
                v.extend_from_slice(&a);
            }
            LinkAddr::Iid64(a) => {
                v.push(2);
                v.extend_from_slice(&a);
            }
        }
        Tlv::new(TlvCode::MN_LLA_IID, v)
    }

    pub fn from_value(value: &[u8], offset: usize) -> Result<Self, CodecError> {
        let err = |reason| CodecError::InvalidTlvValue {
            code: TlvCode::MN_LLA_IID.0,
            offset,
            reason,
        };
        match value.split_first() {
            Some((1, rest)) if rest.len() == 6 => {
                let mut a = [0u8; 6];
                a.copy_from_slice(rest);
                Ok(LinkAddr::Mac48(a))
            }
            Some((2, rest)) if rest.len() == 8 => {
                let mut a = [0u8; 8];
                a.copy_from_slice(rest);
                Ok(LinkAddr::Iid64(a))
            }
            Some((1, _)) => Err(err("MAC link address must be 6 octets")),
            Some((2, _)) => Err(err("interface identifier must be 8 octets")),
            Some(_) => Err(err("unknown link-address kind octet")),
            None => Err(err("empty link-address value")),
        }
    }
}

impl std::fmt::Display for LinkAddr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let octets: &[u8] = match self {
            LinkAddr::Mac48(a) => a,
            LinkAddr::Iid64(a) => a,
        };
        let parts: Vec<String> = octets.iter().map(|b| format!("{b:02x}")).collect();
        write!(f, "{}", parts.join("-"))
    }
}

/// Transport address: one family octet (1 = IPv4, 2 = IPv6) plus the address.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransportAddr {
    V4(Ipv4Addr),
    V6(Ipv6Addr),
}

impl TransportAddr {
    pub fn to_tlv(self) -> Tlv {
        let mut v = Vec::with_capacity(17);
        match self {
            TransportAddr::V4(a) => {
                v.push(1);
                v.extend_from_slice(&a.octets());
            }
            TransportAddr::V6(a) => {
                v.push(2);
                v.extend_from_slice(&a.octets());
            }
        }
        Tlv::new(TlvCode::LMA_ADDRESS, v)
    }

    pub fn from_value(value: &[u8], offset: usize) -> Result<Self, CodecError> {
        let err = |reason| CodecError::InvalidTlvValue {
            code: TlvCode::LMA_ADDRESS.0,
            offset,
            reason,
        };
        match value.split_first() {
            Some((1, rest)) if rest.len() == 4 => {
                let mut a = [0u8; 4];
                a.copy_from_slice(rest);
                Ok(TransportAddr::V4(Ipv4Addr::from(a)))
            }
            Some((2, rest)) if rest.len() == 16 => {
                let mut a = [0u8; 16];
                a.copy_from_slice(rest);
                Ok(TransportAddr::V6(Ipv6Addr::from(a)))
            }
            Some((1, _)) => Err(err("IPv4 address must be 4 octets")),
            Some((2, _)) => Err(err("IPv6 address must be 16 octets")),
            Some(_) => Err(err("unknown address family octet")),
            None => Err(err("empty transport-address value")),
        }
    }
}

impl std::fmt::Display for TransportAddr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransportAddr::V4(a) => write!(f, "{a}"),
            TransportAddr::V6(a) => write!(f, "{a}"),
        }
    }
}

/// One IPv6 home network prefix: prefix length (<= 128) plus 16 prefix octets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomeNetworkPrefix {
    pub prefix_len: u8,
    pub prefix: Ipv6Addr,
}

impl HomeNetworkPrefix {
    pub fn new(prefix_len: u8, prefix: Ipv6Addr) -> Self {
        HomeNetworkPrefix { prefix_len, prefix }
    }

    /// Builds the list TLV: one count octet followed by the elements.
    pub fn list_to_tlv(list: &[HomeNetworkPrefix]) -> Result<Tlv, CodecError> {
        if list.is_empty() {
            return Err(CodecError::EmptyHnpList);
        }
        debug_assert!(list.len() <= 255);
        let mut v = Vec::with_capacity(1 + list.len() * 17);
        v.push(list.len() as u8);
        for hnp in list {
            v.push(hnp.prefix_len);
            v.extend_from_slice(&hnp.prefix.octets());
        }
        Ok(Tlv::new(TlvCode::HOME_NETWORK_PREFIX, v))
    }

    pub fn list_from_value(
        value: &[u8],
        offset: usize,
    ) -> Result<Vec<HomeNetworkPrefix>, CodecError> {
        let err = |reason| CodecError::InvalidTlvValue {
            code: TlvCode::HOME_NETWORK_PREFIX.0,
            offset,
            reason,
        };
        let (&count, rest) = value
            .split_first()
            .ok_or_else(|| err("empty prefix list"))?;
        if rest.len() != count as usize * 17 {
            return Err(err("prefix count does not match value length"));
        }
        let mut out = Vec::with_capacity(count as usize);
        for chunk in rest.chunks_exact(17) {
            let prefix_len = chunk[0];
            if prefix_len > 128 {
                return Err(err("prefix length exceeds 128"));
            }
            let mut a = [0u8; 16];
            a.copy_from_slice(&chunk[1..]);
            out.push(HomeNetworkPrefix::new(prefix_len, Ipv6Addr::from(a)));
        }
        Ok(out)
    }
}

impl std::fmt::Display for HomeNetworkPrefix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.prefix, self.prefix_len)
    }
}

/// Shape check for the three extended TLV codes; other codes are opaque.
pub(super) fn validate_extended_shape(tlv: &Tlv, offset: usize) -> Result<(), CodecError> {
    match tlv.code {
        TlvCode::MN_LLA_IID => LinkAddr::from_value(&tlv.value, offset).map(|_| ()),
        TlvCode::LMA_ADDRESS => TransportAddr::from_value(&tlv.value, offset).map(|_| ()),
        TlvCode::HOME_NETWORK_PREFIX => {
            HomeNetworkPrefix::list_from_value(&tlv.value, offset).map(|_| ())
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnp_list_roundtrip() {
        let list = vec![
            HomeNetworkPrefix::new(64, "2001:db8:1::".parse().unwrap()),
            HomeNetworkPrefix::new(56, "2001:db8:2::".parse().unwrap()),
        ];
        let tlv = HomeNetworkPrefix::list_to_tlv(&list).unwrap();
        assert_eq!(tlv.value[0], 0x02);
        assert_eq!(tlv.value.len(), 1 + 2 * 17);
        let back = HomeNetworkPrefix::list_from_value(&tlv.value, 0).unwrap();
        assert_eq!(back, list);
    }

    #[test]
    fn empty_hnp_list_rejected() {
        assert_eq!(
            HomeNetworkPrefix::list_to_tlv(&[]),
            Err(CodecError::EmptyHnpList)
        );
    }

    #[test]
    fn hnp_count_mismatch_rejected() {
        // count says two elements, only one present
        let one = HomeNetworkPrefix::new(64, "2001:db8::".parse().unwrap());
        let mut v = HomeNetworkPrefix::list_to_tlv(&[one]).unwrap().value;
        v[0] = 2;
        assert!(matches!(
            HomeNetworkPrefix::list_from_value(&v, 0),
            Err(CodecError::InvalidTlvValue { code: 103, .. })
        ));
    }

    #[test]
    fn link_addr_shapes() {
        let mac = LinkAddr::Mac48([0xAA; 6]);
        let tlv = mac.to_tlv();
        assert_eq!(tlv.value.len(), 7);
        assert_eq!(LinkAddr::from_value(&tlv.value, 0).unwrap(), mac);

        assert!(LinkAddr::from_value(&[3, 0, 0, 0, 0, 0, 0], 0).is_err());
        assert!(LinkAddr::from_value(&[1, 0, 0], 0).is_err());
    }

    #[test]
    fn transport_addr_shapes() {
        let v6 = TransportAddr::V6("2001:db8::1".parse().unwrap());
        let tlv = v6.to_tlv();
        assert_eq!(tlv.value.len(), 17);
        assert_eq!(tlv.value[0], 2);
        assert_eq!(TransportAddr::from_value(&tlv.value, 0).unwrap(), v6);

        let v4 = TransportAddr::V4(Ipv4Addr::new(10, 0, 0, 1));
        assert_eq!(v4.to_tlv().value.len(), 5);
    }
}
