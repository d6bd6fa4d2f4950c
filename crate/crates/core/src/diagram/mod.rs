//! Oriented virtual link diagrams as cyclic words of crossing passages.
//!
//! A [`Diagram`] is an ordered list of components, each a cyclic sequence of
//! [`Passage`]s read from a basepoint. Every real crossing is passed once as
//! over and once as under; every virtual crossing is passed twice.
//!
//! Sign conventions: a real crossing is positive iff the frame
//! (over direction, under direction) is positively oriented. A virtual
//! crossing carries the orientation of the frame (first direction, second
//! direction), where "first" is the passage that comes first in
//! (component, position) order. Rotating basepoints can swap which passage is
//! first, so every code path that rearranges passages goes through
//! [`RawDiagram`], whose tokens remember the frame's leading strand.

mod realize;
mod segment;
mod surface;
mod vgc;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use realize::{rail_layout, realize};
pub use segment::{Granularity, Piece, Segmentation};
pub use surface::{EdgeRef, EdgeSide, Face, Side, Surface};
pub use vgc::{canonical_form, parse_vgc, serialize_vgc};

pub type CrossingId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    /// Sign of a nonzero integer (typically a determinant).
    pub fn of(v: i64) -> Option<Sign> {
        match v.signum() {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Over,
    Under,
    Through,
}

impl Role {
    pub fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
            Role::Through => 'V',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Passage {
    pub crossing: CrossingId,
    pub role: Role,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingKind {
    Real(Sign),
    Virtual(Sign),
}

impl CrossingKind {
    pub fn is_real(self) -> bool {
        matches!(self, CrossingKind::Real(_))
    }

    pub fn sign(self) -> Sign {
        match self {
            CrossingKind::Real(s) | CrossingKind::Virtual(s) => s,
        }
    }
}

/// Position of a passage: component index and offset from its basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Loc {
    pub component: usize,
    pub index: usize,
}

impl Loc {
    pub fn new(component: usize, index: usize) -> Self {
        Loc { component, index }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    components: Vec<Vec<Passage>>,
    crossings: BTreeMap<CrossingId, CrossingKind>,
    // real: [over, under]; virtual: [first, second]
    locations: BTreeMap<CrossingId, [Loc; 2]>,
}

impl Diagram {
    /// A single crossing-free circle.
    pub fn unknot() -> Self {
        Self::trivial(1)
    }

    /// `n` crossing-free circles.
    pub fn trivial(n: usize) -> Self {
        Diagram {
            components: vec![Vec::new(); n],
            crossings: BTreeMap::new(),
            locations: BTreeMap::new(),
        }
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &[Passage] {
        &self.components[i]
    }

    pub fn passage(&self, loc: Loc) -> Passage {
        self.components[loc.component][loc.index]
    }

    pub fn crossings(&self) -> impl Iterator<Item = (CrossingId, CrossingKind)> + '_ {
        self.crossings.iter().map(|(&id, &k)| (id, k))
    }

    pub fn real_crossings(&self) -> impl Iterator<Item = (CrossingId, Sign)> + '_ {
        self.crossings.iter().filter_map(|(&id, &k)| match k {
            CrossingKind::Real(s) => Some((id, s)),
            CrossingKind::Virtual(_) => None,
        })
    }

    pub fn kind(&self, id: CrossingId) -> Option<CrossingKind> {
        self.crossings.get(&id).copied()
    }

    /// `[over, under]` for real crossings, `[first, second]` for virtual ones.
    pub fn locations(&self, id: CrossingId) -> Option<[Loc; 2]> {
        self.locations.get(&id).copied()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn num_real(&self) -> usize {
        self.crossings.values().filter(|k| k.is_real()).count()
    }

    pub fn num_virtual(&self) -> usize {
        self.num_crossings() - self.num_real()
    }

    pub fn num_passages(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn max_id(&self) -> CrossingId {
        self.crossings.keys().next_back().copied().unwrap_or(0)
    }

    /// True iff both passages of `id` lie on one component.
    pub fn is_self_crossing(&self, id: CrossingId) -> bool {
        self.locations(id)
            .map(|[a, b]| a.component == b.component)
            .unwrap_or(false)
    }

    pub fn next(&self, loc: Loc) -> Loc {
        let len = self.components[loc.component].len();
        Loc::new(loc.component, (loc.index + 1) % len)
    }

    pub fn prev(&self, loc: Loc) -> Loc {
        let len = self.components[loc.component].len();
        Loc::new(loc.component, (loc.index + len - 1) % len)
    }

    /// Frame orientation of a virtual crossing relative to the strand through
    /// `lead`, which must be one of its two passages.
    pub(crate) fn frame_from(&self, id: CrossingId, lead: Loc) -> Sign {
        let [first, _] = self.locations[&id];
        let s = self.crossings[&id].sign();
        if lead == first {
            s
        } else {
            -s
        }
    }

    pub(crate) fn to_raw(&self) -> RawDiagram {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                comp.iter()
                    .enumerate()
                    .map(|(i, p)| match p.role {
                        Role::Over => Tok::Over(p.crossing),
                        Role::Under => Tok::Under(p.crossing),
                        Role::Through => Tok::Virtual {
                            id: p.crossing,
                            lead: self.locations[&p.crossing][0] == Loc::new(c, i),
                        },
                    })
                    .collect()
            })
            .collect();
        let signs = self.crossings.iter().map(|(&id, k)| (id, k.sign())).collect();
        RawDiagram { components, signs }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_vgc(self))
    }
}

/// Passage token used while a diagram is being rewritten. Virtual tokens
/// carry `lead`, marking the strand the stored frame sign is measured from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Over(CrossingId),
    Under(CrossingId),
    Virtual { id: CrossingId, lead: bool },
}

impl Tok {
    pub(crate) fn id(self) -> CrossingId {
        match self {
            Tok::Over(id) | Tok::Under(id) | Tok::Virtual { id, .. } => id,
        }
    }

    pub(crate) fn is_virtual(self) -> bool {
        matches!(self, Tok::Virtual { .. })
    }
}

/// Unnormalized diagram: signs are real ε, or the virtual frame measured from
/// the `lead` token.
#[derive(Clone, Debug, Default)]
pub(crate) struct RawDiagram {
    pub components: Vec<Vec<Tok>>,
    pub signs: BTreeMap<CrossingId, Sign>,
}

impl RawDiagram {
    pub(crate) fn build(self) -> Result<Diagram> {
        let RawDiagram { components, signs } = self;
        #[derive(Default)]
        struct Seen {
            over: Vec<Loc>,
            under: Vec<Loc>,
            virt: Vec<(Loc, bool)>,
        }
        let mut seen: BTreeMap<CrossingId, Seen> = BTreeMap::new();
        for (c, comp) in components.iter().enumerate() {
            for (i, t) in comp.iter().enumerate() {
                let loc = Loc::new(c, i);
                if t.id() == 0 {
                    return Err(Error::Validation("crossing ids start at 1".into()));
                }
                let e = seen.entry(t.id()).or_default();
                match *t {
                    Tok::Over(_) => e.over.push(loc),
                    Tok::Under(_) => e.under.push(loc),
                    Tok::Virtual { lead, .. } => e.virt.push((loc, lead)),
                }
            }
        }

        let mut crossings = BTreeMap::new();
        let mut locations = BTreeMap::new();
        for (id, s) in &seen {
            let sign = *signs.get(id).ok_or_else(|| {
                Error::Validation(format!("crossing {id} has no sign"))
            })?;
            match (s.over.len(), s.under.len(), s.virt.len()) {
                (1, 1, 0) => {
                    crossings.insert(*id, CrossingKind::Real(sign));
                    locations.insert(*id, [s.over[0], s.under[0]]);
                }
                (0, 0, 2) => {
                    let (a, lead_a) = s.virt[0];
                    let (b, lead_b) = s.virt[1];
                    if lead_a == lead_b {
                        return Err(Error::Validation(format!(
                            "virtual crossing {id} needs exactly one leading strand"
                        )));
                    }
                    // a precedes b in (component, index) order
                    let sign = if lead_a { sign } else { -sign };
                    crossings.insert(*id, CrossingKind::Virtual(sign));
                    locations.insert(*id, [a, b]);
                }
                (o, u, v) => {
                    return Err(Error::Validation(format!(
                        "crossing {id} passed {o} times over, {u} times under, {v} times virtually"
                    )));
                }
            }
        }
        if let Some(id) = signs.keys().find(|id| !seen.contains_key(id)) {
            return Err(Error::Validation(format!("crossing {id} is never passed")));
        }

        let components = components
            .into_iter()
            .map(|comp| {
                comp.into_iter()
                    .map(|t| match t {
                        Tok::Over(id) => Passage { crossing: id, role: Role::Over },
                        Tok::Under(id) => Passage { crossing: id, role: Role::Under },
                        Tok::Virtual { id, .. } => Passage { crossing: id, role: Role::Through },
                    })
                    .collect()
            })
            .collect();
        Ok(Diagram { components, crossings, locations })
    }

    #[cfg(test)]
    /// Renumber crossings 1.. in first-appearance order.
    pub(crate) fn compact_ids(mut self) -> Self {
        let mut map = BTreeMap::new();
        let mut next = 1;
        for comp in &self.components {
            for t in comp {
                map.entry(t.id()).or_insert_with(|| {
                    let n = next;
                    next += 1;
                    n
                });
            }
        }
        for comp in &mut self.components {
            for t in comp.iter_mut() {
                let id = map[&t.id()];
                *t = match *t {
                    Tok::Over(_) => Tok::Over(id),
                    Tok::Under(_) => Tok::Under(id),
                    Tok::Virtual { lead, .. } => Tok::Virtual { id, lead },
                };
            }
        }
        self.signs = self.signs.into_iter().map(|(id, s)| (map[&id], s)).collect();
        self
    }
}
