/// Handover status code carried by commit responses.
///
/// Values 0-6 and 128-132 carry IANA handover-status semantics; everything
/// else decodes as `Unassigned` without error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StatusCode(pub u8);

impl StatusCode {
    pub const SUCCESS: StatusCode = StatusCode(0);
    pub const NOT_ACCEPTED: StatusCode = StatusCode(128);
    pub const ADMIN_PROHIBITED: StatusCode = StatusCode(129);
    pub const INSUFFICIENT_RESOURCES: StatusCode = StatusCode(130);

    /// Human-readable meaning of this status value.
    pub fn meaning(self) -> &'static str {
        match self.0 {
            0 => "Handover accept or success",
            1 => "Handover Accepted, NCoA not valid",
            2 => "Handover Accepted, NCoA assigned",
            3 => "Handover Accepted, use PCoA",
            4 => "Message sent unsolicited",
            5 => "Context Transfer Accepted or Successful",
            6 => "All available Context Transferred",
            128 => "Handover Not Accepted, reason unspecified",
            129 => "Administratively prohibited",
            130 => "Insufficient resources",
            131 => "Requested Context Not Available",
            132 => "Forwarding Not Available",
            _ => "Unassigned",
        }
    }

    /// True for the rejection band used by the handover-commit flows.
    pub fn is_rejection(self) -> bool {
        (128..=132).contains(&self.0)
    }

    /// True when the value carries an assigned meaning.
    pub fn is_assigned(self) -> bool {
        self.0 <= 6 || self.is_rejection()
    }
}

impl std::fmt::Display for StatusCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} \"{}\"", self.0, self.meaning())
    }
}
