//! Timed event transcripts of scheme runs.
//!
//! Export format is line oriented, one event per line:
//!
//! ```text
//! t_ms | src | dst | message_kind | size_octets | link_kind | note
//! ```

use super::entity::EntityId;

/// Which link an event traversed. Only `Wireless` and `Wired` events are
/// control messages that count toward signaling tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinkClass {
    Wireless,
    Wired {
        hops: u32,
    },
    /// Node-local event (L2 indications, buffer operations, markers).
    Local,
}

impl LinkClass {
    pub fn label(self) -> String {
        match self {
            LinkClass::Wireless => "wireless".into(),
            LinkClass::Wired { hops } => format!("wired[{hops}]"),
            LinkClass::Local => "local".into(),
        }
    }
}

/// Whether an event is control signaling or user data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventClass {
    Signaling,
    Data,
    Marker,
}

/// One transcript line, stamped at the time its effect occurs (message
/// arrival for transmitted events).
#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptEvent {
    pub t_ms: f64,
    pub src: EntityId,
    pub dst: EntityId,
    pub kind: String,
    pub size_octets: u32,
    pub link: LinkClass,
    pub class: EventClass,
    pub note: String,
}

impl TranscriptEvent {
    pub fn line(&self) -> String {
        format!(
            "{:.4} | {} | {} | {} | {} | {} | {}",
            self.t_ms,
            self.src,
            self.dst,
            self.kind,
            self.size_octets,
            self.link.label(),
            self.note
        )
    }
}

/// Ordered run transcript.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Transcript {
    pub events: Vec<TranscriptEvent>,
}

impl Transcript {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn push(&mut self, ev: TranscriptEvent) {
        debug_assert!(
            self.events.last().is_none_or(|last| ev.t_ms >= last.t_ms),
            "transcript timestamps must be nondecreasing"
        );
        self.events.push(ev);
    }

    /// Signaling events only.
    pub fn signaling(&self) -> impl Iterator<Item = &TranscriptEvent> {
        self.events
            .iter()
            .filter(|e| e.class == EventClass::Signaling)
    }

    /// Count of events whose kind equals `kind`.
    pub fn count_kind(&self, kind: &str) -> usize {
        self.events.iter().filter(|e| e.kind == kind).count()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.events.len() * 64);
        for ev in &self.events {
            s.push_str(&ev.line());
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_format() {
        let ev = TranscriptEvent {
            t_ms: 12.25,
            src: EntityId::mag(0),
            dst: EntityId::lma(),
            kind: "PBU".into(),
            size_octets: 76,
            link: LinkClass::Wired { hops: 10 },
            class: EventClass::Signaling,
            note: "plain".into(),
        };
        assert_eq!(
            ev.line(),
            "12.2500 | MAG0 | LMA0 | PBU | 76 | wired[10] | plain"
        );
    }
}
