//! r-multiplexing L(D;r), the r-th covering D^(r), and component extraction.
//!
//! L(D;r) takes r parallel copies of a knot diagram D, numbered 1..r from
//! left to right across the strand direction, and replaces every crossing of
//! D by a tile:
//!
//! * real crossing of sign ε: copy a of the over bundle meets copy b of the
//!   under bundle once, in a real crossing of sign ε when a = b and a virtual
//!   crossing otherwise;
//! * virtual crossing: all r² bundle intersections are virtual, and right
//!   after the grid each bundle runs through a cyclic relabeling braid of
//!   r − 1 virtual crossings.
//!
//! Every crossing inside a tile has the frame orientation of the two source
//! strands at the source crossing. Component i of the output is the circle
//! occupying copy position i at the basepoint of D.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagram::{CrossingId, CrossingKind, Diagram, EdgeRef, Loc, RawDiagram, Role, Sign, Tok};
use crate::error::{Error, Result};
use crate::invariants::crossing_indices;

/// Direction of the relabeling braid on the bundle that the other bundle
/// crosses from right to left; the bundle crossed from left to right shifts
/// the opposite way. A bundle shifting by +1 sends copy m to copy m + 1
/// (mod r). With the frame conventions in use this choice makes copy l pass
/// over copy l + ind_v(c) at every real crossing c, which is what yields
/// Lk(K_i, K_j) = Σ_{n ≡ i−j (mod r)} J_n; flipping it mirrors the congruence.
const RIGHT_TO_LEFT_SHIFT: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bundle {
    /// Over strand of a real crossing, first strand of a virtual one.
    First,
    /// Under strand of a real crossing, second strand of a virtual one.
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "tile")]
pub enum TileRole {
    /// Real crossing between copy `copy` of both bundles.
    DiagonalReal { copy: usize },
    /// Virtual crossing between copy `first` of the first bundle and copy
    /// `second` of the second bundle.
    OffDiagonal { first: usize, second: usize },
    /// Relabeling-braid crossing on `bundle`, met by the copy entering the
    /// braid at `position`.
    BundleShift { bundle: Bundle, position: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingOrigin {
    pub crossing: CrossingId,
    pub source: CrossingId,
    #[serde(flatten)]
    pub role: TileRole,
}

/// An output edge running parallel to a source edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOrigin {
    pub edge: EdgeRef,
    pub source: EdgeRef,
    /// Copy position 1..r, counted left to right along the source edge.
    pub copy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub r: usize,
    pub crossing_map: Vec<CrossingOrigin>,
    pub edge_map: Vec<EdgeOrigin>,
    /// Copy position of each output component at the source basepoint.
    pub component_map: Vec<usize>,
    /// Genus of the source diagram; the multiplexing identities need 0.
    pub source_genus: usize,
}

impl Provenance {
    pub fn origin(&self, id: CrossingId) -> Option<&CrossingOrigin> {
        self.crossing_map.iter().find(|o| o.crossing == id)
    }

    /// Output edge carrying copy `copy` of `source`.
    pub fn copy_of(&self, source: EdgeRef, copy: usize) -> Option<EdgeRef> {
        self.edge_map
            .iter()
            .find(|e| e.source == source && e.copy == copy)
            .map(|e| e.edge)
    }

    /// Source edges in order, each with its r parallel copies.
    pub fn parallel_edges(&self) -> BTreeMap<EdgeRef, Vec<EdgeRef>> {
        let mut m: BTreeMap<EdgeRef, Vec<(usize, EdgeRef)>> = BTreeMap::new();
        for e in &self.edge_map {
            m.entry(e.source).or_default().push((e.copy, e.edge));
        }
        m.into_iter()
            .map(|(k, mut v)| {
                v.sort();
                (k, v.into_iter().map(|(_, e)| e).collect())
            })
            .collect()
    }
}

/// Number of real and virtual crossings in the image of one source crossing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TileCensus {
    pub real: usize,
    pub virtual_: usize,
}

impl Provenance {
    pub fn census(&self, out: &Diagram) -> BTreeMap<CrossingId, TileCensus> {
        let mut m: BTreeMap<CrossingId, TileCensus> = BTreeMap::new();
        for o in &self.crossing_map {
            let c = m.entry(o.source).or_default();
            if out.kind(o.crossing).is_some_and(|k| k.is_real()) {
                c.real += 1;
            } else {
                c.virtual_ += 1;
            }
        }
        m
    }
}

struct Builder {
    ids: BTreeMap<(CrossingId, TileRole), CrossingId>,
    signs: BTreeMap<CrossingId, Sign>,
    origins: Vec<CrossingOrigin>,
}

impl Builder {
    fn id(&mut self, source: CrossingId, role: TileRole, sign: Sign) -> CrossingId {
        let next = self.ids.len() as CrossingId + 1;
        let id = *self.ids.entry((source, role)).or_insert(next);
        if id == next {
            self.signs.insert(id, sign);
            self.origins.push(CrossingOrigin { crossing: id, source, role });
        }
        id
    }
}

/// Copies of the other bundle met, in order, by a copy of `bundle` when the
/// source frame (first, second) has orientation `frame`.
fn grid_order(bundle: Bundle, frame: Sign, r: usize) -> Vec<usize> {
    let ascending = matches!((bundle, frame), (Bundle::First, Sign::Pos) | (Bundle::Second, Sign::Neg));
    if ascending {
        (1..=r).collect()
    } else {
        (1..=r).rev().collect()
    }
}

pub fn multiplex(d: &Diagram, r: usize) -> Result<(Diagram, Provenance)> {
    if d.num_components() != 1 {
        return Err(Error::NotAKnot(d.num_components()));
    }
    if r < 2 {
        return Err(Error::BadR(r as i64));
    }
    let word = d.component(0);
    let mut b = Builder { ids: BTreeMap::new(), signs: BTreeMap::new(), origins: Vec::new() };
    let mut components: Vec<Vec<Tok>> = Vec::with_capacity(r);
    let mut edge_map = Vec::new();

    for label in 1..=r {
        let comp = label - 1;
        let mut toks: Vec<Tok> = Vec::new();
        let mut pos = label;
        if word.is_empty() {
            edge_map.push(EdgeOrigin {
                edge: EdgeRef::closed(comp),
                source: EdgeRef::closed(0),
                copy: pos,
            });
        }
        for (k, p) in word.iter().enumerate() {
            let loc = Loc::new(0, k);
            let kind = d.kind(p.crossing).unwrap();
            let x = p.crossing;
            match kind {
                CrossingKind::Real(eps) => {
                    let bundle = if p.role == Role::Over { Bundle::First } else { Bundle::Second };
                    for q in grid_order(bundle, eps, r) {
                        let tok = match (bundle, q == pos) {
                            (Bundle::First, true) => {
                                Tok::Over(b.id(x, TileRole::DiagonalReal { copy: pos }, eps))
                            }
                            (Bundle::Second, true) => {
                                Tok::Under(b.id(x, TileRole::DiagonalReal { copy: pos }, eps))
                            }
                            (Bundle::First, false) => Tok::Virtual {
                                id: b.id(x, TileRole::OffDiagonal { first: pos, second: q }, eps),
                                lead: true,
                            },
                            (Bundle::Second, false) => Tok::Virtual {
                                id: b.id(x, TileRole::OffDiagonal { first: q, second: pos }, eps),
                                lead: false,
                            },
                        };
                        toks.push(tok);
                    }
                }
                CrossingKind::Virtual(frame) => {
                    let [first, _] = d.locations(x).unwrap();
                    let bundle = if first == loc { Bundle::First } else { Bundle::Second };
                    for q in grid_order(bundle, frame, r) {
                        let (role, lead) = match bundle {
                            Bundle::First => (TileRole::OffDiagonal { first: pos, second: q }, true),
                            Bundle::Second => (TileRole::OffDiagonal { first: q, second: pos }, false),
                        };
                        toks.push(Tok::Virtual { id: b.id(x, role, frame), lead });
                    }
                    // the second strand crosses the first from left to right
                    // iff the frame (first, second) is negative
                    let crossed_left_to_right = match bundle {
                        Bundle::First => frame == Sign::Neg,
                        Bundle::Second => frame == Sign::Pos,
                    };
                    let shift = if crossed_left_to_right { -RIGHT_TO_LEFT_SHIFT } else { RIGHT_TO_LEFT_SHIFT };
                    pos = braid(&mut b, &mut toks, x, bundle, shift, pos, r);
                }
            }
            edge_map.push(EdgeOrigin {
                edge: EdgeRef::after(comp, toks.len() - 1),
                source: EdgeRef::after(0, k),
                copy: pos,
            });
        }
        debug_assert_eq!(pos, label, "copies return to their starting position");
        components.push(toks);
    }

    let Builder { signs, origins, .. } = b;
    let out = RawDiagram { components, signs }.build()?;
    let prov = Provenance {
        r,
        crossing_map: origins,
        edge_map,
        component_map: (1..=r).collect(),
        source_genus: d.genus(),
    };
    Ok((out, prov))
}

/// Cyclic relabeling braid. With shift +1 the copy at position r sweeps to
/// position 1 across copies r−1, …, 1; with shift −1 the copy at position 1
/// sweeps to position r across copies 2, …, r. Returns the new position.
fn braid(
    b: &mut Builder,
    toks: &mut Vec<Tok>,
    source: CrossingId,
    bundle: Bundle,
    shift: i64,
    pos: usize,
    r: usize,
) -> usize {
    // frame (sweeping copy, crossed copy): the sweep heads toward the left
    // for shift +1, toward the right for shift −1
    let (mover, frame, crossed): (usize, Sign, Vec<usize>) = if shift > 0 {
        (r, Sign::Neg, (1..r).rev().collect())
    } else {
        (1, Sign::Pos, (2..=r).collect())
    };
    if pos == mover {
        for k in crossed {
            let id = b.id(source, TileRole::BundleShift { bundle, position: k }, frame);
            toks.push(Tok::Virtual { id, lead: true });
        }
        if shift > 0 { 1 } else { r }
    } else {
        let id = b.id(source, TileRole::BundleShift { bundle, position: pos }, frame);
        toks.push(Tok::Virtual { id, lead: false });
        if shift > 0 { pos + 1 } else { pos - 1 }
    }
}

/// D^(r): real crossings whose index is not divisible by r become virtual,
/// with the frame orientation (over, under) = ε.
pub fn covering(d: &Diagram, r: usize) -> Result<Diagram> {
    if d.num_components() != 1 {
        return Err(Error::NotAKnot(d.num_components()));
    }
    if r < 1 {
        return Err(Error::BadR(r as i64));
    }
    let mut virtualize = Vec::new();
    for (id, _) in d.real_crossings() {
        if crossing_indices(d, id)?.ind.rem_euclid(r as i64) != 0 {
            virtualize.push(id);
        }
    }
    let mut raw = d.to_raw();
    for t in raw.components.iter_mut().flatten() {
        *t = match *t {
            Tok::Over(id) if virtualize.contains(&id) => Tok::Virtual { id, lead: true },
            Tok::Under(id) if virtualize.contains(&id) => Tok::Virtual { id, lead: false },
            other => other,
        };
    }
    raw.build()
}

/// Component `i` (1-based) alone, with only its self-crossings.
pub fn extract_component(d: &Diagram, i: usize) -> Result<Diagram> {
    if i == 0 || i > d.num_components() {
        return Err(Error::BadComponent(i));
    }
    let c = i - 1;
    let mut raw = d.to_raw();
    let mut word = std::mem::take(&mut raw.components[c]);
    word.retain(|t| {
        let [a, b] = d.locations(t.id()).unwrap();
        a.component == c && b.component == c
    });
    raw.signs.retain(|id, _| word.iter().any(|t| t.id() == *id));
    raw.components = vec![word];
    raw.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{canonical_form, parse_vgc, realize};
    use crate::invariants::{crossing_indices, linking_matrix, n_writhes};

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

    fn d(code: &str) -> Diagram {
        parse_vgc(code).unwrap()
    }

    fn vtrefoil() -> Diagram {
        realize(&d("O1+ O2+ U1+ U2+"))
    }

    #[test]
    fn kink_counts() {
        let (l, prov) = multiplex(&d("O1+ U1+"), 2).unwrap();
        assert_eq!(l.num_components(), 2);
        assert_eq!((l.num_real(), l.num_virtual()), (2, 2));
        assert_eq!(prov.census(&l)[&1], TileCensus { real: 2, virtual_: 2 });
    }

    #[test]
    fn virtual_trefoil_counts() {
        let vt = vtrefoil();
        assert_eq!((vt.num_real(), vt.num_virtual()), (2, 1));
        let (l, _) = multiplex(&vt, 2).unwrap();
        assert_eq!((l.num_real(), l.num_virtual()), (4, 10));
    }

    #[test]
    fn classical_trefoil_splits_into_copies() {
        let (l, _) = multiplex(&d(TREFOIL), 3).unwrap();
        assert_eq!(l.num_components(), 3);
        for i in 1..=3 {
            let reals = l
                .real_crossings()
                .filter(|(id, _)| {
                    let [o, u] = l.locations(*id).unwrap();
                    o.component == i - 1 && u.component == i - 1
                })
                .count();
            assert_eq!(reals, 3);
            let k = extract_component(&l, i).unwrap();
            assert_eq!(canonical_form(&k), canonical_form(&d(TREFOIL)));
        }
        assert!(linking_matrix(&l).iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn errors() {
        assert_eq!(multiplex(&d("O1+ ; U1+"), 2).unwrap_err(), Error::NotAKnot(2));
        assert_eq!(multiplex(&d("O1+ U1+"), 1).unwrap_err(), Error::BadR(1));
        assert_eq!(covering(&d("O1+ U1+"), 0).unwrap_err(), Error::BadR(0));
        assert_eq!(extract_component(&d("O1+ U1+"), 2).unwrap_err(), Error::BadComponent(2));
    }

    #[test]
    fn unknot_multiplex() {
        let (l, prov) = multiplex(&d("."), 3).unwrap();
        assert_eq!(l.to_string(), ". ; . ; .");
        assert_eq!(prov.parallel_edges()[&EdgeRef::closed(0)].len(), 3);
    }

    #[test]
    fn coverings() {
        let vt = vtrefoil();
        assert_eq!(covering(&vt, 1).unwrap(), vt);
        let c2 = covering(&vt, 2).unwrap();
        assert_eq!(c2.num_real(), 0);
        assert_eq!(c2.num_virtual(), 3);
        let t = d(TREFOIL);
        assert_eq!(covering(&t, 5).unwrap(), t);
    }

    #[test]
    fn extract_drops_mixed_crossings() {
        let out = extract_component(&d("O1+ ; U1+"), 2).unwrap();
        assert_eq!(out.to_string(), ".");
    }

    #[test]
    fn component_equals_covering() {
        let vt = vtrefoil();
        for r in 2..=4 {
            let (l, _) = multiplex(&vt, r).unwrap();
            let cov = canonical_form(&covering(&vt, r).unwrap());
            for i in 1..=r {
                assert_eq!(canonical_form(&extract_component(&l, i).unwrap()), cov, "r={r} i={i}");
            }
        }
    }

    #[test]
    fn multiplex_is_planar_with_index_identity() {
        for r in 2..=4 {
            let (l, _) = multiplex(&vtrefoil(), r).unwrap();
            assert_eq!(l.genus(), 0);
            for (id, _) in l.real_crossings() {
                if l.is_self_crossing(id) {
                    let ip = crossing_indices(&l, id).unwrap();
                    assert_eq!(ip.ind + ip.ind_v, 0);
                }
            }
        }
    }

    #[test]
    fn linking_congruence_on_virtual_trefoil() {
        let vt = vtrefoil();
        let jn = n_writhes(&vt).unwrap();
        for r in 2..=5 {
            let (l, _) = multiplex(&vt, r).unwrap();
            let lk = linking_matrix(&l);
            for i in 1..=r {
                for j in 1..=r {
                    if i == j {
                        continue;
                    }
                    let expect: i64 = jn
                        .iter()
                        .filter(|(n, _)| (n - (i as i64 - j as i64)).rem_euclid(r as i64) == 0)
                        .map(|(_, v)| v)
                        .sum();
                    assert_eq!(lk[i - 1][j - 1], expect, "r={r} i={i} j={j}");
                }
            }
        }
    }

    fn congruence_holds(k: &Diagram, r: usize) -> std::result::Result<(), String> {
        let jn = n_writhes(k).unwrap();
        let (l, _) = multiplex(k, r).unwrap();
        let lk = linking_matrix(&l);
        for i in 1..=r {
            for j in 1..=r {
                if i == j {
                    continue;
                }
                let expect: i64 = jn
                    .iter()
                    .filter(|(n, _)| (n - (i as i64 - j as i64)).rem_euclid(r as i64) == 0)
                    .map(|(_, v)| v)
                    .sum();
                if lk[i - 1][j - 1] != expect {
                    return Err(format!("{k} r={r} i={i} j={j}: {} != {expect}", lk[i - 1][j - 1]));
                }
            }
        }
        Ok(())
    }

    #[test]
    fn linking_congruence_on_asymmetric_knot() {
        // J_2 = 1 and J_-1 = 2, so i - j and j - i give different sums
        let k = realize(&d("O1+ O2+ O3+ U2+ U1+ U3+"));
        let jn = n_writhes(&k).unwrap();
        assert!(jn.iter().any(|(n, v)| jn.get(-n) != v), "{jn:?}");
        for r in 2..=5 {
            congruence_holds(&k, r).unwrap();
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

        #[test]
        fn multiplex_properties(code in crate::testing::arb_real_knot(5), r in 2usize..=4) {
            let k = realize(&d(&code));
            let (l, prov) = multiplex(&k, r).unwrap();
            proptest::prop_assert_eq!(l.genus(), 0);
            proptest::prop_assert_eq!(l.num_real(), r * k.num_real());
            proptest::prop_assert_eq!(
                l.num_virtual(),
                (r * r - r) * k.num_real() + (r * r + 2 * (r - 1)) * k.num_virtual()
            );
            for (x, kind) in k.crossings() {
                let c = prov.census(&l)[&x];
                let want = if kind.is_real() { (r, r * r - r) } else { (0, r * r + 2 * (r - 1)) };
                proptest::prop_assert_eq!((c.real, c.virtual_), want);
            }
            for copies in prov.parallel_edges().values() {
                proptest::prop_assert_eq!(copies.len(), r);
            }
            congruence_holds(&k, r).map_err(proptest::test_runner::TestCaseError::fail)?;
            let cov = canonical_form(&covering(&k, r).unwrap());
            for i in 1..=r {
                proptest::prop_assert_eq!(&canonical_form(&extract_component(&l, i).unwrap()), &cov);
            }
        }
    }
}
