//! The seventeen constituent schemes and their static descriptions.
//!
//! A scheme runs over a fixed number of slots, each with a required CSIT
//! state, and delivers `m1` symbols to receiver 1 and `m2` to receiver 2.
//! Mirror schemes are not described independently: they are their partner
//! with the receivers exchanged (see [`Role`]).

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::rational::{int, Rational};
use crate::region::DofPoint;
use crate::state::CsitState;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SchemeId {
    /// NN, one symbol to receiver 1.
    S1,
    /// PP, zero-forcing.
    S2,
    /// DD x3, the retrospective alignment scheme.
    S43_1,
    /// DD, NN, NN.
    S43_2,
    /// DN/ND only, two 3-slot retrospective blocks.
    S43_3,
    /// DN, ND, NN.
    S43_4,
    S32_1,
    S32_2,
    S32_3,
    S32_4,
    S32_5,
    S32_6,
    S53_1,
    S53_2,
    S53_3,
    S53_4,
    S85,
}

impl SchemeId {
    pub const ALL: [SchemeId; 17] = [
        SchemeId::S1,
        SchemeId::S2,
        SchemeId::S43_1,
        SchemeId::S43_2,
        SchemeId::S43_3,
        SchemeId::S43_4,
        SchemeId::S32_1,
        SchemeId::S32_2,
        SchemeId::S32_3,
        SchemeId::S32_4,
        SchemeId::S32_5,
        SchemeId::S32_6,
        SchemeId::S53_1,
        SchemeId::S53_2,
        SchemeId::S53_3,
        SchemeId::S53_4,
        SchemeId::S85,
    ];

    pub fn label(self) -> &'static str {
        use SchemeId::*;
        match self {
            S1 => "S1",
            S2 => "S2",
            S43_1 => "S4/3-1",
            S43_2 => "S4/3-2",
            S43_3 => "S4/3-3",
            S43_4 => "S4/3-4",
            S32_1 => "S3/2-1",
            S32_2 => "S3/2-2",
            S32_3 => "S3/2-3",
            S32_4 => "S3/2-4",
            S32_5 => "S3/2-5",
            S32_6 => "S3/2-6",
            S53_1 => "S5/3-1",
            S53_2 => "S5/3-2",
            S53_3 => "S5/3-3",
            S53_4 => "S5/3-4",
            S85 => "S8/5",
        }
    }

    /// The partner this scheme is derived from by exchanging receivers, if any.
    pub(crate) fn mirror_of(self) -> Option<SchemeId> {
        use SchemeId::*;
        match self {
            S32_2 => Some(S32_1),
            S32_4 => Some(S32_3),
            S32_6 => Some(S32_5),
            S53_2 => Some(S53_1),
            S53_4 => Some(S53_3),
            _ => None,
        }
    }

    /// Catalog entry with the receivers exchanged; `None` for schemes whose
    /// state usage and DoF pair are already symmetric, and for `S1`.
    fn catalog_mirror(self) -> Option<SchemeId> {
        use SchemeId::*;
        match self {
            S32_1 => Some(S32_2),
            S32_3 => Some(S32_4),
            S32_5 => Some(S32_6),
            S53_1 => Some(S53_2),
            S53_3 => Some(S53_4),
            other => other.mirror_of(),
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        SchemeId::ALL
            .iter()
            .copied()
            .find(|id| id.label().eq_ignore_ascii_case(t))
            .ok_or_else(|| Error::UnknownScheme(s.to_string()))
    }
}

/// Whether a scheme runs as written or with the two receivers exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Role {
    #[default]
    Normal,
    Swapped,
}

impl Role {
    pub fn flipped(self) -> Role {
        match self {
            Role::Normal => Role::Swapped,
            Role::Swapped => Role::Normal,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Role::Normal => "normal",
            Role::Swapped => "swapped",
        }
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "normal" => Ok(Role::Normal),
            "swapped" => Ok(Role::Swapped),
            other => Err(Error::Parse(format!("unknown role {other:?}"))),
        }
    }
}

/// A scheme together with the role it is run in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchemeRef {
    pub id: SchemeId,
    pub role: Role,
}

impl SchemeRef {
    pub fn new(id: SchemeId, role: Role) -> Self {
        SchemeRef { id, role }
    }

    pub fn spec(self) -> SchemeSpec {
        let base = spec_of(self.id).clone();
        match self.role {
            Role::Normal => base,
            Role::Swapped => base.swapped(),
        }
    }
}

impl From<SchemeId> for SchemeRef {
    fn from(id: SchemeId) -> Self {
        SchemeRef::new(id, Role::Normal)
    }
}

impl fmt::Display for SchemeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.role {
            Role::Normal => write!(f, "{}", self.id),
            Role::Swapped => write!(f, "{}~", self.id),
        }
    }
}

/// Maps a scheme to its mirror image, slot by slot: the mirror catalog entry
/// where one exists, the scheme itself when exchanging receivers changes
/// nothing, and otherwise the same id with its role flipped (for `S1`, the
/// one-symbol-to-receiver-2 variant). An involution.
pub fn swap_roles(scheme: impl Into<SchemeRef>) -> SchemeRef {
    let s = scheme.into();
    if let Some(m) = s.id.catalog_mirror() {
        return SchemeRef::new(m, s.role);
    }
    let spec = s.spec();
    if spec.swapped().state_per_slot == spec.state_per_slot && spec.m1 == spec.m2 {
        s
    } else {
        SchemeRef::new(s.id, s.role.flipped())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeSpec {
    pub id: SchemeId,
    pub role: Role,
    pub state_per_slot: Vec<CsitState>,
    pub m1: usize,
    pub m2: usize,
}

impl SchemeSpec {
    pub fn slots(&self) -> usize {
        self.state_per_slot.len()
    }

    pub fn scheme_ref(&self) -> SchemeRef {
        SchemeRef::new(self.id, self.role)
    }

    /// `(m1/slots, m2/slots)`.
    pub fn dof_pair(&self) -> DofPoint {
        let n = self.slots() as i64;
        DofPoint::new(
            Rational::new((self.m1 as i64).into(), n.into()),
            Rational::new((self.m2 as i64).into(), n.into()),
        )
    }

    /// Fraction of slots spent in each state, indexed by [`CsitState::index`].
    pub fn state_usage(&self) -> [Rational; 9] {
        let mut usage: [Rational; 9] = Default::default();
        let n = int(self.slots() as i64);
        for st in &self.state_per_slot {
            usage[st.index()] += int(1) / &n;
        }
        usage
    }

    fn swapped(&self) -> SchemeSpec {
        SchemeSpec {
            id: self.id,
            role: self.role.flipped(),
            state_per_slot: self.state_per_slot.iter().map(|s| s.swap()).collect(),
            m1: self.m2,
            m2: self.m1,
        }
    }
}

fn native(id: SchemeId, states: &[CsitState], m1: usize, m2: usize) -> SchemeSpec {
    SchemeSpec {
        id,
        role: Role::Normal,
        state_per_slot: states.to_vec(),
        m1,
        m2,
    }
}

fn build_catalog() -> Vec<SchemeSpec> {
    use CsitState::*;
    use SchemeId::*;
    let mut out = vec![
        native(S1, &[NN], 1, 0),
        native(S2, &[PP], 1, 1),
        native(S43_1, &[DD, DD, DD], 2, 2),
        native(S43_2, &[DD, NN, NN], 2, 2),
        native(S43_3, &[DN, ND, DN, ND, DN, ND], 4, 4),
        native(S43_4, &[DN, ND, NN], 2, 2),
        native(S32_1, &[PD, NN], 2, 1),
        native(S32_3, &[PN, NP], 2, 1),
        native(S32_5, &[ND, PN], 2, 1),
        // the PD/DP slots stand in for the PN/NP slots of S5/3-3
        native(S53_1, &[PD, PD, DP], 3, 2),
        native(S53_3, &[PD, PN, NP], 3, 2),
        native(S85, &[DD, PN, NP, PN, NP], 4, 4),
    ];
    for id in SchemeId::ALL {
        if let Some(base) = id.mirror_of() {
            let b = out.iter().find(|s| s.id == base).unwrap().swapped();
            out.push(SchemeSpec {
                id,
                role: Role::Normal,
                ..b
            });
        }
    }
    out.sort_by_key(|s| s.id);
    out
}

/// All seventeen constituent schemes, in [`SchemeId::ALL`] order.
pub fn catalog() -> &'static [SchemeSpec] {
    static CATALOG: OnceLock<Vec<SchemeSpec>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn spec_of(id: SchemeId) -> &'static SchemeSpec {
    &catalog()[SchemeId::ALL.iter().position(|x| *x == id).unwrap()]
}

pub fn lookup(label: &str) -> Result<&'static SchemeSpec, Error> {
    Ok(spec_of(label.parse()?))
}
