//! The local mobility anchor's binding cache.

use std::collections::HashMap;

use super::entity::EntityId;
use super::ProtocolError;

/// Binding state for one mobile node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BceState {
    /// Downlink is forwarded to a single serving gateway.
    Active,
    /// Transient bicast: downlink is duplicated toward both gateways
    /// while the handover completes.
    TransientBicast { previous: EntityId, next: EntityId },
}

/// One binding cache entry.
#[derive(Debug, Clone, PartialEq)]
pub struct BindingCacheEntry {
    pub mn_id: String,
    pub hnps: Vec<String>,
    pub serving_mag: EntityId,
    pub state: BceState,
    pub lifetime_s: u32,
}

impl BindingCacheEntry {
    /// Gateways the anchor currently forwards downlink to.
    pub fn downlink_targets(&self) -> Vec<EntityId> {
        match self.state {
            BceState::Active => vec![self.serving_mag],
            BceState::TransientBicast { previous, next } => vec![previous, next],
        }
    }
}

/// A proxy binding update as seen by the anchor.
#[derive(Debug, Clone)]
pub struct PbuRequest {
    pub mn_id: String,
    pub mag: EntityId,
    pub transient: bool,
    pub dereg: bool,
}

/// Acknowledgement data returned to the sending gateway.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbaInfo {
    pub status: u8,
    pub to_mag: EntityId,
}

/// Binding cache table: at most one entry per mobile node.
#[derive(Debug, Clone, Default)]
pub struct BceTable {
    entries: HashMap<String, BindingCacheEntry>,
}

impl BceTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, mn_id: &str) -> Option<&BindingCacheEntry> {
        self.entries.get(mn_id)
    }

    pub fn entries(&self) -> impl Iterator<Item = &BindingCacheEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Installs an initial binding (attachment registration).
    pub fn register(&mut self, mn_id: &str, hnps: Vec<String>, mag: EntityId) {
        self.entries.insert(
            mn_id.to_string(),
            BindingCacheEntry {
                mn_id: mn_id.to_string(),
                hnps,
                serving_mag: mag,
                state: BceState::Active,
                lifetime_s: 3600,
            },
        );
    }

    /// Applies one proxy binding update and produces the acknowledgement.
    ///
    /// - transient: the entry enters bicast toward the current serving
    ///   gateway and the sender;
    /// - plain: the sender becomes the active serving gateway;
    /// - dereg: the sender's binding is removed, or a bicast collapses to
    ///   the surviving gateway.
    pub fn process_pbu(&mut self, pbu: &PbuRequest) -> Result<PbaInfo, ProtocolError> {
        let ack = PbaInfo {
            status: 0,
            to_mag: pbu.mag,
        };
        if pbu.dereg {
            let entry =
                self.entries
                    .get_mut(&pbu.mn_id)
                    .ok_or(ProtocolError::DeregUnknownBinding {
                        mn_id: pbu.mn_id.clone(),
                    })?;
            match entry.state {
                BceState::TransientBicast { previous, next } => {
                    let survivor = if pbu.mag == previous { next } else { previous };
                    entry.state = BceState::Active;
                    entry.serving_mag = survivor;
                }
                BceState::Active if entry.serving_mag == pbu.mag => {
                    self.entries.remove(&pbu.mn_id);
                }
                // stale deregistration from a gateway that no longer serves
                BceState::Active => {}
            }
            return Ok(ack);
        }
        match self.entries.get_mut(&pbu.mn_id) {
            Some(entry) if pbu.transient => {
                let previous = match entry.state {
                    BceState::Active => entry.serving_mag,
                    BceState::TransientBicast { previous, .. } => previous,
                };
                entry.state = BceState::TransientBicast {
                    previous,
                    next: pbu.mag,
                };
            }
            Some(entry) => {
                entry.state = BceState::Active;
                entry.serving_mag = pbu.mag;
            }
            None => {
                // initial registration (transient with nothing to bicast
                // from degenerates to a plain registration)
                self.register(&pbu.mn_id, Vec::new(), pbu.mag);
            }
        }
        Ok(ack)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MN: &str = "mn1@example";
    const PMAG: EntityId = EntityId::mag(0);
    const NMAG: EntityId = EntityId::mag(1);

    fn table_with_active() -> BceTable {
        let mut t = BceTable::new();
        t.register(MN, vec!["2001:db8:1::/64".into()], PMAG);
        t
    }

    #[test]
    fn transient_pbu_enters_bicast() {
        let mut t = table_with_active();
        t.process_pbu(&PbuRequest {
            mn_id: MN.into(),
            mag: NMAG,
            transient: true,
            dereg: false,
        })
        .unwrap();
        let e = t.get(MN).unwrap();
        assert_eq!(
            e.state,
            BceState::TransientBicast {
                previous: PMAG,
                next: NMAG
            }
        );
        assert_eq!(e.downlink_targets(), vec![PMAG, NMAG]);
    }

    #[test]
    fn plain_pbu_completes_handover() {
        let mut t = table_with_active();
        t.process_pbu(&PbuRequest {
            mn_id: MN.into(),
            mag: NMAG,
            transient: true,
            dereg: false,
        })
        .unwrap();
        t.process_pbu(&PbuRequest {
            mn_id: MN.into(),
            mag: NMAG,
            transient: false,
            dereg: false,
        })
        .unwrap();
        let e = t.get(MN).unwrap();
        assert_eq!(e.state, BceState::Active);
        assert_eq!(e.serving_mag, NMAG);
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn dereg_unknown_binding() {
        let mut t = BceTable::new();
        let err = t
            .process_pbu(&PbuRequest {
                mn_id: "ghost".into(),
                mag: PMAG,
                transient: false,
                dereg: true,
            })
            .unwrap_err();
        assert_eq!(
            err,
            ProtocolError::DeregUnknownBinding {
                mn_id: "ghost".into()
            }
        );
    }

    #[test]
    fn dereg_collapses_bicast() {
        let mut t = table_with_active();
        t.process_pbu(&PbuRequest {
            mn_id: MN.into(),
            mag: NMAG,
            transient: true,
            dereg: false,
        })
        .unwrap();
        t.process_pbu(&PbuRequest {
            mn_id: MN.into(),
            mag: PMAG,
            transient: false,
            dereg: true,
        })
        .unwrap();
        let e = t.get(MN).unwrap();
        assert_eq!(e.state, BceState::Active);
        assert_eq!(e.serving_mag, NMAG);
    }

    #[test]
    fn dereg_from_serving_removes_entry() {
        let mut t = table_with_active();
        t.process_pbu(&PbuRequest {
            mn_id: MN.into(),
            mag: PMAG,
            transient: false,
            dereg: true,
        })
        .unwrap();
        assert!(t.get(MN).is_none());
    }

    #[test]
    fn stale_dereg_ignored() {
        let mut t = table_with_active();
        t.process_pbu(&PbuRequest {
            mn_id: MN.into(),
            mag: NMAG,
            transient: false,
            dereg: true,
        })
        .unwrap();
        assert_eq!(t.get(MN).unwrap().serving_mag, PMAG);
    }
}
