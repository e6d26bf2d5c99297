/// Role of a network entity in a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityRole {
    Mn,
    Poa,
    Mag,
    Lma,
    Miis,
    Cn,
}

impl EntityRole {
    pub fn label(self) -> &'static str {
        match self {
            EntityRole::Mn => "MN",
            EntityRole::Poa => "POA",
            EntityRole::Mag => "MAG",
            EntityRole::Lma => "LMA",
            EntityRole::Miis => "MIIS",
            EntityRole::Cn => "CN",
        }
    }
}

/// Identifier of one entity, unique within a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntityId {
    pub role: EntityRole,
    pub index: u32,
}

impl EntityId {
    pub const fn new(role: EntityRole, index: u32) -> Self {
        EntityId { role, index }
    }

    pub const fn mn() -> Self {
        EntityId::new(EntityRole::Mn, 0)
    }

    pub const fn mag(index: u32) -> Self {
        EntityId::new(EntityRole::Mag, index)
    }

    pub const fn lma() -> Self {
        EntityId::new(EntityRole::Lma, 0)
    }

    pub const fn miis() -> Self {
        EntityId::new(EntityRole::Miis, 0)
    }

    pub const fn poa(index: u32) -> Self {
        EntityId::new(EntityRole::Poa, index)
    }
}

impl std::fmt::Display for EntityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.role.label(), self.index)
    }
}
