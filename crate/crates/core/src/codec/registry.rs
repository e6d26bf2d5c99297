use std::collections::HashMap;

use once_cell::sync::Lazy;

use super::message::MessageKind;
use super::tlv::TlvCode;

/// Registry row: wire identification and mandatory TLVs for one kind.
#[derive(Debug, Clone)]
pub struct KindInfo {
    pub kind: MessageKind,
    pub sid: u8,
    pub opcode: u8,
    pub aid: u16,
    pub mandatory: Vec<TlvCode>,
}

/// Bidirectional kind <-> (sid, opcode, aid) registry, loaded from the
/// bundled data file.
#[derive(Debug)]
pub struct Registry {
    rows: Vec<KindInfo>,
    by_kind: HashMap<MessageKind, usize>,
    by_triple: HashMap<(u8, u8, u16), usize>,
}

impl Registry {
    fn load(text: &str) -> Registry {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = || {
                fields
                    .next()
                    .unwrap_or_else(|| panic!("registry line {}: missing field", lineno + 1))
            };
            let name = next();
            let kind = MessageKind::from_name(name)
                .unwrap_or_else(|| panic!("registry line {}: unknown kind {name}", lineno + 1));
            let sid: u8 = next().parse().expect("registry sid");
            let opcode: u8 = next().parse().expect("registry opcode");
            let aid: u16 = next().parse().expect("registry aid");
            let mandatory = match next() {
                "-" => Vec::new(),
                list => list
                    .split(',')
                    .map(|c| TlvCode(c.parse().expect("registry tlv code")))
                    .collect(),
            };
            rows.push(KindInfo {
                kind,
                sid,
                opcode,
                aid,
                mandatory,
            });
        }
        let mut by_kind = HashMap::new();
        let mut by_triple = HashMap::new();
        for (i, row) in rows.iter().enumerate() {
            if by_kind.insert(row.kind, i).is_some() {
                panic!("registry: duplicate kind {:?}", row.kind);
            }
            if by_triple
                .insert((row.sid, row.opcode, row.aid), i)
                .is_some()
            {
                panic!(
                    "registry: duplicate triple ({}, {}, {})",
                    row.sid, row.opcode, row.aid
                );
            }
        }
        Registry {
            rows,
            by_kind,
            by_triple,
        }
    }

    pub fn info(&self, kind: MessageKind) -> &KindInfo {
        &self.rows[self.by_kind[&kind]]
    }

    pub fn lookup(&self, sid: u8, opcode: u8, aid: u16) -> Option<&KindInfo> {
        self.by_triple
            .get(&(sid, opcode, aid))
            .map(|&i| &self.rows[i])
    }

    pub fn kinds(&self) -> impl Iterator<Item = MessageKind> + '_ {
        self.rows.iter().map(|r| r.kind)
    }
}

static REGISTRY: Lazy<Registry> =
    Lazy::new(|| Registry::load(include_str!("../../data/mih_registry.txt")));

/// The process-wide message-kind registry.
pub fn registry() -> &'static Registry {
    &REGISTRY
}
