//! Rotation system of the underlying 4-valent graph, face tracing and genus.
//!
//! Ports around each crossing, listed counterclockwise:
//!
//! | crossing          | ports                                          |
//! |-------------------|------------------------------------------------|
//! | real, ε = +1      | out-over, out-under, in-over, in-under         |
//! | real, ε = −1      | out-over, in-under, in-over, out-under         |
//! | virtual, ε_v = +1 | out-first, out-second, in-first, in-second     |
//! | virtual, ε_v = −1 | out-first, in-second, in-first, out-second     |

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CrossingId, Diagram, Loc, Sign};

/// The edge of a component leaving the passage `after`, or the whole circle
/// of a crossing-free component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub component: usize,
    pub after: Option<usize>,
}

impl EdgeRef {
    pub fn after(component: usize, index: usize) -> Self {
        EdgeRef { component, after: Some(index) }
    }

    pub fn closed(component: usize) -> Self {
        EdgeRef { component, after: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// One side of an edge, relative to the edge's orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeSide {
    pub edge: EdgeRef,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Connected piece of the diagram this face belongs to.
    pub piece: usize,
    pub boundary: Vec<EdgeSide>,
}

/// Slot 0 is the over (or first) strand, slot 1 the under (or second) strand.
fn port(sign: Sign, slot: usize, out: bool) -> usize {
    match (sign, slot, out) {
        (_, 0, true) => 0,
        (_, 0, false) => 2,
        (Sign::Pos, _, true) => 1,
        (Sign::Pos, _, false) => 3,
        (Sign::Neg, _, true) => 3,
        (Sign::Neg, _, false) => 1,
    }
}

#[derive(Clone, Debug)]
pub struct Surface {
    pub faces: Vec<Face>,
    /// Crossings of each connected piece; empty for crossing-free circles.
    pub pieces: Vec<Vec<CrossingId>>,
    genus: usize,
}

impl Surface {
    pub fn new(d: &Diagram) -> Self {
        let ids: Vec<CrossingId> = d.crossings().map(|(id, _)| id).collect();
        let index: BTreeMap<CrossingId, usize> =
            ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let n = ids.len();
        let slot = |loc: Loc| {
            let id = d.passage(loc).crossing;
            let [a, _] = d.locations(id).unwrap();
            usize::from(a != loc)
        };
        let dart = |loc: Loc, out: bool| {
            let id = d.passage(loc).crossing;
            4 * index[&id] + port(d.kind(id).unwrap().sign(), slot(loc), out)
        };

        // alpha: the opposite end of each dart's edge
        let mut alpha = vec![usize::MAX; 4 * n];
        // edge carried by a dart, and whether the dart is the edge's tail
        let mut carried = vec![(EdgeRef::closed(0), false); 4 * n];
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (c, comp) in d.components().iter().enumerate() {
            for i in 0..comp.len() {
                let from = Loc::new(c, i);
                let to = d.next(from);
                let (t, h) = (dart(from, true), dart(to, false));
                alpha[t] = h;
                alpha[h] = t;
                let e = EdgeRef::after(c, i);
                carried[t] = (e, true);
                carried[h] = (e, false);
                let (a, b) = (find(&mut parent, t / 4), find(&mut parent, h / 4));
                parent[a] = b;
            }
        }

        let mut piece_of_root = BTreeMap::new();
        let mut pieces: Vec<Vec<CrossingId>> = Vec::new();
        let mut piece_of = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            let p = *piece_of_root.entry(r).or_insert_with(|| {
                pieces.push(Vec::new());
                pieces.len() - 1
            });
            pieces[p].push(ids[v]);
            piece_of[v] = p;
        }

        let mut faces = Vec::new();
        let mut seen = vec![false; 4 * n];
        for start in 0..4 * n {
            if seen[start] {
                continue;
            }
            let mut boundary = Vec::new();
            let mut d0 = start;
            while !seen[d0] {
                seen[d0] = true;
                let (edge, tail) = carried[d0];
                // faces are traced with the face on the right of the walk
                boundary.push(EdgeSide { edge, side: if tail { Side::Right } else { Side::Left } });
                let h = alpha[d0];
                d0 = h - h % 4 + (h % 4 + 1) % 4;
            }
            faces.push(Face { piece: piece_of[start / 4], boundary });
        }

        let mut genus = 0;
        for (p, members) in pieces.iter().enumerate() {
            let f = faces.iter().filter(|f| f.piece == p).count();
            // V - E + F = 2 - 2g with E = 2V
            genus += (2 + members.len() - f) / 2;
        }

        for (c, comp) in d.components().iter().enumerate() {
            if comp.is_empty() {
                let p = pieces.len();
                pieces.push(Vec::new());
                for side in [Side::Left, Side::Right] {
                    faces.push(Face {
                        piece: p,
                        boundary: vec![EdgeSide { edge: EdgeRef::closed(c), side }],
                    });
                }
            }
        }
        Surface { faces, pieces, genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }
}

impl Diagram {
    pub fn genus(&self) -> usize {
        Surface::new(self).genus()
    }

    pub fn surface(&self) -> Surface {
        Surface::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_vgc;
    use proptest::prelude::*;

    fn genus(code: &str) -> usize {
        parse_vgc(code).unwrap().genus()
    }

    #[test]
    fn documented_genera() {
        assert_eq!(genus("O1+ U2+ O3+ U1+ O2+ U3+"), 0);
        assert_eq!(genus("O1+ O2+ U1+ U2+"), 1);
        assert_eq!(genus("."), 0);
        assert_eq!(genus(". ; ."), 0);
    }

    #[test]
    fn face_counts() {
        // V - E + F = 2 with V = 3, E = 6
        let d = parse_vgc("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(d.surface().faces.len(), 5);
        // flat virtual trefoil on the torus: V = 2, E = 4, F = 2
        let d = parse_vgc("O1+ O2+ U1+ U2+").unwrap();
        assert_eq!(d.surface().faces.len(), 2);
    }

    #[test]
    fn kinks_of_every_kind_are_planar() {
        for code in ["O1+ U1+", "O1- U1-", "U1+ O1+", "U1- O1-", "V1+ V1+", "V1- V1-"] {
            assert_eq!(genus(code), 0, "{code}");
        }
    }

    #[test]
    fn mirrored_trefoil_needs_matching_signs() {
        assert_eq!(genus("O1- U2- O3- U1- O2- U3-"), 0);
        // mixed signs on the alternating code are not drawable in the plane
        assert!(genus("O1+ U2+ O3- U1+ O2+ U3-") > 0);
    }

    #[test]
    fn every_edge_side_bounds_one_face() {
        let d = parse_vgc("O1+ V3- U2+ ; U1+ O2+ V3-").unwrap();
        let s = d.surface();
        let mut all: Vec<_> = s.faces.iter().flat_map(|f| f.boundary.iter().copied()).collect();
        all.sort();
        let before = all.len();
        all.dedup();
        assert_eq!(before, all.len());
        assert_eq!(all.len(), 2 * d.num_passages());
    }

    fn rotate(d: &Diagram, k: usize) -> Diagram {
        let mut raw = d.to_raw();
        for comp in raw.components.iter_mut().filter(|c| !c.is_empty()) {
            let n = k % comp.len();
            comp.rotate_left(n);
        }
        raw.build().unwrap()
    }

    proptest! {
        #[test]
        fn genus_invariant_under_rotation_and_relabel(code in crate::testing::arb_code(6, 2), k in 0usize..12) {
            let d = parse_vgc(&code).unwrap();
            prop_assert_eq!(d.genus(), rotate(&d, k).genus());
            let relabeled = d.to_raw().compact_ids().build().unwrap();
            prop_assert_eq!(d.genus(), relabeled.genus());
            prop_assert_eq!(d.genus(), parse_vgc(&crate::diagram::canonical_form(&d)).unwrap().genus());
        }
    }
}
