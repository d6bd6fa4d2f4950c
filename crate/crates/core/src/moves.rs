//! Generalized Reidemeister rewrites, detected as local patches of the
//! diagram's surface: kinks, bigon and triangle faces, and pairs of edges
//! bounding a common face.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::diagram::{CrossingId, Diagram, EdgeRef, EdgeSide, Loc, RawDiagram, Role, Side, Sign, Tok};
use crate::error::{Error, Result};

pub const DEFAULT_SIZE_CAP: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1+ins")]
    R1PosIns,
    #[serde(rename = "R1-ins")]
    R1NegIns,
    #[serde(rename = "R1del")]
    R1Del,
    #[serde(rename = "R2ins")]
    R2Ins,
    #[serde(rename = "R2del")]
    R2Del,
    R3,
    #[serde(rename = "VR1ins")]
    VR1Ins,
    #[serde(rename = "VR1del")]
    VR1Del,
    #[serde(rename = "VR2ins")]
    VR2Ins,
    #[serde(rename = "VR2del")]
    VR2Del,
    VR3,
    VR4,
    FU,
}

impl MoveKind {
    pub const ALL: [MoveKind; 13] = [
        MoveKind::R1PosIns,
        MoveKind::R1NegIns,
        MoveKind::R1Del,
        MoveKind::R2Ins,
        MoveKind::R2Del,
        MoveKind::R3,
        MoveKind::VR1Ins,
        MoveKind::VR1Del,
        MoveKind::VR2Ins,
        MoveKind::VR2Del,
        MoveKind::VR3,
        MoveKind::VR4,
        MoveKind::FU,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1PosIns => "R1+ins",
            MoveKind::R1NegIns => "R1-ins",
            MoveKind::R1Del => "R1del",
            MoveKind::R2Ins => "R2ins",
            MoveKind::R2Del => "R2del",
            MoveKind::R3 => "R3",
            MoveKind::VR1Ins => "VR1ins",
            MoveKind::VR1Del => "VR1del",
            MoveKind::VR2Ins => "VR2ins",
            MoveKind::VR2Del => "VR2del",
            MoveKind::VR3 => "VR3",
            MoveKind::VR4 => "VR4",
            MoveKind::FU => "FU",
        }
    }

    /// Crossings added by one application.
    pub fn growth(self) -> usize {
        match self {
            MoveKind::R1PosIns | MoveKind::R1NegIns | MoveKind::VR1Ins => 1,
            MoveKind::R2Ins | MoveKind::VR2Ins => 2,
            _ => 0,
        }
    }

    pub fn classical() -> BTreeSet<MoveKind> {
        Self::ALL[..6].iter().copied().collect()
    }

    /// Classical and virtual Reidemeister moves, without the forbidden move.
    pub fn generalized() -> BTreeSet<MoveKind> {
        Self::ALL[..12].iter().copied().collect()
    }

    pub fn all() -> BTreeSet<MoveKind> {
        Self::ALL.iter().copied().collect()
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), reason: "unknown move kind".into() })
    }
}

/// A rewrite template bound to a place in a diagram.
///
/// Loci by kind:
/// * kink insertion: `[component, edge]`, the edge leaving passage `edge`
///   (0 on a crossing-free component);
/// * kink deletion: `[component, position]` of the first kink passage;
/// * bigon insertion and deletion: `[c1, e1, c2, e2]`, two edges;
/// * triangle moves: `[c1, e1, c2, e2, c3, e3]`, the three sides.
///
/// Variants: kink insertion 0 = over first, 1 = under first. Bigon
/// insertion bit 0 = face on the left of the first edge, bit 1 = face on the
/// left of the second edge, bit 2 = second edge passes over. Other kinds use 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub variant: u8,
    pub locus: Vec<usize>,
}

fn edge_locus(e: EdgeRef) -> [usize; 2] {
    [e.component, e.after.unwrap_or(0)]
}

fn edge_at(d: &Diagram, c: usize, i: usize) -> EdgeRef {
    if d.component(c).is_empty() {
        EdgeRef::closed(c)
    } else {
        EdgeRef::after(c, i)
    }
}

pub fn find_moves(d: &Diagram, kinds: &BTreeSet<MoveKind>) -> Vec<MoveSite> {
    let mut out = Vec::new();
    let want = |k: MoveKind| kinds.contains(&k);
    let surface = d.surface();

    // kinks
    for (c, comp) in d.components().iter().enumerate() {
        let edges: Vec<usize> = if comp.is_empty() { vec![0] } else { (0..comp.len()).collect() };
        for &i in &edges {
            for (k, variants) in [(MoveKind::R1PosIns, 2), (MoveKind::R1NegIns, 2), (MoveKind::VR1Ins, 1)] {
                if want(k) {
                    for v in 0..variants {
                        out.push(MoveSite { kind: k, variant: v, locus: vec![c, i] });
                    }
                }
            }
        }
        if comp.len() >= 2 {
            for i in 0..comp.len() {
                let (p, q) = (comp[i], comp[(i + 1) % comp.len()]);
                if p.crossing != q.crossing {
                    continue;
                }
                let k = if p.role == Role::Through { MoveKind::VR1Del } else { MoveKind::R1Del };
                if want(k) && (comp.len() > 2 || i == 0) {
                    out.push(MoveSite { kind: k, variant: 0, locus: vec![c, i] });
                }
            }
        }
    }

    // bigon insertions: two edge sides on a common face, or in different pieces
    if want(MoveKind::R2Ins) || want(MoveKind::VR2Ins) {
        let piece_of_edge = |e: EdgeRef| -> usize {
            surface.faces.iter().find(|f| f.boundary.iter().any(|s| s.edge == e)).unwrap().piece
        };
        let mut pairs: BTreeSet<(EdgeSide, EdgeSide)> = BTreeSet::new();
        for f in &surface.faces {
            for (i, a) in f.boundary.iter().enumerate() {
                for b in &f.boundary[i + 1..] {
                    if a.edge != b.edge {
                        pairs.insert((*a.min(b), *a.max(b)));
                    }
                }
            }
        }
        let all_sides: Vec<EdgeSide> =
            surface.faces.iter().flat_map(|f| f.boundary.iter().copied()).collect();
        for a in &all_sides {
            for b in &all_sides {
                if a < b && a.edge != b.edge && piece_of_edge(a.edge) != piece_of_edge(b.edge) {
                    pairs.insert((*a, *b));
                }
            }
        }
        for (a, b) in pairs {
            let bits = u8::from(a.side == Side::Left) | (u8::from(b.side == Side::Left) << 1);
            let locus: Vec<usize> = edge_locus(a.edge).into_iter().chain(edge_locus(b.edge)).collect();
            if want(MoveKind::R2Ins) {
                for over in [0, 4] {
                    out.push(MoveSite { kind: MoveKind::R2Ins, variant: bits | over, locus: locus.clone() });
                }
            }
            if want(MoveKind::VR2Ins) {
                out.push(MoveSite { kind: MoveKind::VR2Ins, variant: bits, locus });
            }
        }
    }

    let ends = |e: &EdgeSide| -> Option<(Loc, Loc)> {
        let i = e.edge.after?;
        let a = Loc::new(e.edge.component, i);
        Some((a, d.next(a)))
    };

    // bigon faces
    if want(MoveKind::R2Del) || want(MoveKind::VR2Del) {
        for f in surface.faces.iter().filter(|f| f.boundary.len() == 2) {
            let (Some((a1, b1)), Some((a2, b2))) = (ends(&f.boundary[0]), ends(&f.boundary[1])) else {
                continue;
            };
            let (x, y) = (d.passage(a1).crossing, d.passage(b1).crossing);
            if x == y {
                continue;
            }
            let (p, q) = (d.passage(a2).crossing, d.passage(b2).crossing);
            if !((p == x && q == y) || (p == y && q == x)) {
                continue;
            }
            let (kx, ky) = (d.kind(x).unwrap(), d.kind(y).unwrap());
            let kind = if kx.is_real() && ky.is_real() {
                let same_role = d.passage(a1).role == d.passage(b1).role;
                if !same_role || kx.sign() == ky.sign() {
                    continue;
                }
                MoveKind::R2Del
            } else if !kx.is_real() && !ky.is_real() {
                MoveKind::VR2Del
            } else {
                continue;
            };
            if want(kind) {
                let mut locus: Vec<usize> = edge_locus(f.boundary[0].edge).to_vec();
                locus.extend(edge_locus(f.boundary[1].edge));
                let mut l2 = edge_locus(f.boundary[1].edge).to_vec();
                l2.extend(edge_locus(f.boundary[0].edge));
                out.push(MoveSite { kind, variant: 0, locus: locus.min(l2) });
            }
        }
    }

    // triangle faces
    let tri_kinds = [MoveKind::R3, MoveKind::VR3, MoveKind::VR4, MoveKind::FU];
    if tri_kinds.iter().any(|&k| want(k)) {
        for f in surface.faces.iter().filter(|f| f.boundary.len() == 3) {
            let Some(sides) = f.boundary.iter().map(ends).collect::<Option<Vec<_>>>() else {
                continue;
            };
            if let Some(kind) = classify_triangle(d, &sides) {
                if want(kind) {
                    let mut edges: Vec<[usize; 2]> = f.boundary.iter().map(|s| edge_locus(s.edge)).collect();
                    edges.sort();
                    out.push(MoveSite { kind, variant: 0, locus: edges.concat() });
                }
            }
        }
    }

    out.sort();
    out.dedup();
    out
}

fn classify_triangle(d: &Diagram, sides: &[(Loc, Loc)]) -> Option<MoveKind> {
    let mut ids: Vec<CrossingId> = Vec::new();
    for &(a, b) in sides {
        let (x, y) = (d.passage(a).crossing, d.passage(b).crossing);
        if x == y {
            return None;
        }
        ids.push(x);
        ids.push(y);
    }
    let distinct: BTreeSet<CrossingId> = ids.iter().copied().collect();
    if distinct.len() != 3 || distinct.iter().any(|x| ids.iter().filter(|y| *y == x).count() != 2) {
        return None;
    }
    let reals = distinct.iter().filter(|&&x| d.kind(x).unwrap().is_real()).count();
    let roles: Vec<(Role, Role)> = sides.iter().map(|&(a, b)| (d.passage(a).role, d.passage(b).role)).collect();
    match reals {
        0 => Some(MoveKind::VR3),
        1 => Some(MoveKind::VR4),
        2 => {
            // the strand meeting both real crossings
            let s = roles.iter().find(|(p, q)| *p != Role::Through && *q != Role::Through)?;
            (*s == (Role::Under, Role::Under)).then_some(MoveKind::FU)
        }
        _ => {
            let top = roles.iter().filter(|r| **r == (Role::Over, Role::Over)).count();
            let bottom = roles.iter().filter(|r| **r == (Role::Under, Role::Under)).count();
            (top == 1 && bottom == 1).then_some(MoveKind::R3)
        }
    }
}

/// Applies `site` after checking that `find_moves` still offers it.
pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    let offered = find_moves(d, &BTreeSet::from([site.kind]));
    if !offered.contains(site) {
        return Err(Error::StaleSite);
    }
    rewrite(d, site)
}

type TokFn = fn(CrossingId) -> Tok;

fn rewrite(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    let l = &site.locus;
    let mut raw = d.to_raw();
    let fresh = d.max_id() + 1;
    match site.kind {
        MoveKind::R1PosIns | MoveKind::R1NegIns | MoveKind::VR1Ins => {
            let toks = match (site.kind, site.variant) {
                (MoveKind::VR1Ins, _) => {
                    [Tok::Virtual { id: fresh, lead: true }, Tok::Virtual { id: fresh, lead: false }]
                }
                (_, 0) => [Tok::Over(fresh), Tok::Under(fresh)],
                _ => [Tok::Under(fresh), Tok::Over(fresh)],
            };
            let sign = if site.kind == MoveKind::R1NegIns { Sign::Neg } else { Sign::Pos };
            raw.signs.insert(fresh, sign);
            insert_on_edges(&mut raw, vec![(edge_at(d, l[0], l[1]), toks.to_vec())]);
        }
        MoveKind::R2Ins | MoveKind::VR2Ins => {
            let (e1, e2) = (edge_at(d, l[0], l[1]), edge_at(d, l[2], l[3]));
            let s1: i64 = if site.variant & 1 != 0 { 1 } else { -1 };
            let s2: i64 = if site.variant & 2 != 0 { -1 } else { 1 };
            let second_over = site.variant & 4 != 0;
            let (a, b) = (fresh, fresh + 1);
            let (ea, eb) = if second_over { (s2, -s2) } else { (-s2, s2) };
            raw.signs.insert(a, Sign::of(ea).unwrap());
            raw.signs.insert(b, Sign::of(eb).unwrap());
            let (t1, t2): (TokFn, TokFn) = match (site.kind, second_over) {
                (MoveKind::VR2Ins, _) => (
                    |id| Tok::Virtual { id, lead: true },
                    |id| Tok::Virtual { id, lead: false },
                ),
                (_, false) => (Tok::Over, Tok::Under),
                (_, true) => (Tok::Under, Tok::Over),
            };
            let on_second = if s1 == s2 { vec![t2(a), t2(b)] } else { vec![t2(b), t2(a)] };
            insert_on_edges(&mut raw, vec![(e1, vec![t1(a), t1(b)]), (e2, on_second)]);
        }
        MoveKind::R1Del | MoveKind::VR1Del => {
            let id = d.passage(Loc::new(l[0], l[1])).crossing;
            remove(&mut raw, &[id]);
        }
        MoveKind::R2Del | MoveKind::VR2Del => {
            let x = d.passage(Loc::new(l[0], l[1])).crossing;
            let y = d.passage(d.next(Loc::new(l[0], l[1]))).crossing;
            remove(&mut raw, &[x, y]);
        }
        MoveKind::R3 | MoveKind::VR3 | MoveKind::VR4 | MoveKind::FU => {
            for side in l.chunks(2) {
                let comp = &mut raw.components[side[0]];
                let j = (side[1] + 1) % comp.len();
                comp.swap(side[1], j);
            }
        }
    }
    raw.build()
}

fn insert_on_edges(raw: &mut RawDiagram, inserts: Vec<(EdgeRef, Vec<Tok>)>) {
    let mut by_edge: BTreeMap<EdgeRef, Vec<Tok>> = BTreeMap::new();
    for (e, toks) in inserts {
        by_edge.entry(e).or_default().extend(toks);
    }
    for (c, comp) in raw.components.iter_mut().enumerate() {
        if comp.is_empty() {
            if let Some(t) = by_edge.remove(&EdgeRef::closed(c)) {
                *comp = t;
            }
            continue;
        }
        let old = std::mem::take(comp);
        for (i, t) in old.into_iter().enumerate() {
            comp.push(t);
            if let Some(extra) = by_edge.remove(&EdgeRef::after(c, i)) {
                comp.extend(extra);
            }
        }
    }
}

fn remove(raw: &mut RawDiagram, ids: &[CrossingId]) {
    for comp in &mut raw.components {
        comp.retain(|t| !ids.contains(&t.id()));
    }
    raw.signs.retain(|id, _| !ids.contains(id));
}

/// Size cap for random walks, overridable through `MULTIVIRT_SIZE_CAP`.
pub fn size_cap() -> usize {
    std::env::var("MULTIVIRT_SIZE_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SIZE_CAP)
}

/// Seeded walk: each step picks a kind uniformly among the kinds with an
/// available site, then a site of that kind uniformly. Insertions that would
/// push the crossing count past `cap` are not offered.
pub fn random_walk(
    d: &Diagram,
    steps: usize,
    seed: u64,
    kinds: &BTreeSet<MoveKind>,
    cap: usize,
) -> (Diagram, Vec<MoveSite>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let allowed: BTreeSet<MoveKind> = kinds
            .iter()
            .copied()
            .filter(|k| current.num_crossings() + k.growth() <= cap)
            .collect();
        let mut by_kind: BTreeMap<MoveKind, Vec<MoveSite>> = BTreeMap::new();
        for s in find_moves(&current, &allowed) {
            by_kind.entry(s.kind).or_default().push(s);
        }
        let groups: Vec<&Vec<MoveSite>> = by_kind.values().collect();
        let Some(group) = groups.choose(&mut rng) else { break };
        let site = group.choose(&mut rng).unwrap().clone();
        current = rewrite(&current, &site).expect("offered sites apply");
        trace.push(site);
    }
    (current, trace)
}

/// Re-applies a recorded trace, checking every site.
pub fn replay(d: &Diagram, trace: &[MoveSite]) -> Result<Diagram> {
    trace.iter().try_fold(d.clone(), |cur, s| apply_move(&cur, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{build_system, count_colorings, ColoringMode};
    use crate::diagram::{canonical_form, parse_vgc, realize};
    use crate::invariants::report;
    use proptest::prelude::*;

    fn d(code: &str) -> Diagram {
        parse_vgc(code).unwrap()
    }

    fn kinds(ks: &[MoveKind]) -> BTreeSet<MoveKind> {
        ks.iter().copied().collect()
    }

    #[test]
    fn kink_deletions() {
        let k = d("O1+ U1+");
        let sites = find_moves(&k, &kinds(&[MoveKind::R1Del]));
        assert_eq!(sites, vec![MoveSite { kind: MoveKind::R1Del, variant: 0, locus: vec![0, 0] }]);
        assert_eq!(apply_move(&k, &sites[0]).unwrap().to_string(), ".");
        let v = d("V1+ V1+");
        assert_eq!(find_moves(&v, &kinds(&[MoveKind::VR1Del])).len(), 1);
    }

    #[test]
    fn unknot_has_only_insertions() {
        let sites = find_moves(&d("."), &MoveKind::all());
        assert!(!sites.is_empty());
        assert!(sites.iter().all(|s| s.kind.growth() > 0));
    }

    #[test]
    fn bigon_deletion() {
        let k = d("O1+ O2- U2- U1+");
        let sites = find_moves(&k, &kinds(&[MoveKind::R2Del]));
        assert_eq!(sites.len(), 1);
        assert_eq!(apply_move(&k, &sites[0]).unwrap().to_string(), ".");
    }

    #[test]
    fn stale_sites_are_rejected() {
        let site = MoveSite { kind: MoveKind::R1Del, variant: 0, locus: vec![0, 0] };
        assert_eq!(apply_move(&d("O1+ U2+ O3+ U1+ O2+ U3+"), &site).unwrap_err(), Error::StaleSite);
    }

    #[test]
    fn kink_insert_then_delete() {
        let t = d("O1+ U2+ O3+ U1+ O2+ U3+");
        for kind in [MoveKind::R1PosIns, MoveKind::R1NegIns, MoveKind::VR1Ins] {
            for site in find_moves(&t, &kinds(&[kind])) {
                let grown = apply_move(&t, &site).unwrap();
                let back = find_moves(&grown, &kinds(&[MoveKind::R1Del, MoveKind::VR1Del]))
                    .into_iter()
                    .find(|s| grown.passage(Loc::new(s.locus[0], s.locus[1])).crossing == 4)
                    .unwrap();
                assert_eq!(canonical_form(&apply_move(&grown, &back).unwrap()), canonical_form(&t));
            }
        }
    }

    #[test]
    fn triangle_moves_on_trefoil_family() {
        // the standard R3 picture: three strands, one on top, one at the bottom
        let k = realize(&d("O1+ O2+ U1+ O3- U2+ U3-"));
        let sites = find_moves(&k, &MoveKind::all());
        for s in sites.iter().filter(|s| s.locus.len() == 6) {
            let out = apply_move(&k, s).unwrap();
            assert_eq!(out.genus(), k.genus());
        }
    }

    #[test]
    fn walk_is_deterministic() {
        let t = d("O1+ U2+ O3+ U1+ O2+ U3+");
        let (a, ta) = random_walk(&t, 30, 7, &MoveKind::generalized(), 24);
        let (b, tb) = random_walk(&t, 30, 7, &MoveKind::generalized(), 24);
        assert_eq!((a.clone(), ta.clone()), (b, tb));
        assert_eq!(replay(&t, &ta).unwrap(), a);
        assert_eq!(random_walk(&t, 0, 7, &MoveKind::all(), 24).0, t);
        let json = serde_json::to_string(&ta[0]).unwrap();
        let back: MoveSite = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ta[0]);
    }

    /// Move invariants: J_n (n ≠ 0), Lk, λ, J_n^i (n ∉ {0, λ_i}), Fox and
    /// virtual coloring counts; only the latter when `virtual_only`.
    fn fingerprint(k: &Diagram, virtual_only: bool) -> Vec<String> {
        let mut f = Vec::new();
        if !virtual_only {
            let rep = report(k);
            f.push(format!("{:?}", rep.jn.map(|t| t.restricted(&[]))));
            f.push(format!("{:?} {:?}", rep.lk, rep.lambda));
            for c in &rep.jni {
                f.push(format!("{:?}", c.table.restricted(&[c.lambda])));
            }
        }
        for n in 2..=5 {
            if !virtual_only {
                let fox = build_system(k, ColoringMode::Fox, None).unwrap();
                f.push(count_colorings(&fox, n).unwrap().to_string());
            }
            let vf = build_system(k, ColoringMode::VirtualFox, None).unwrap();
            f.push(count_colorings(&vf, n).unwrap().to_string());
        }
        f
    }

    #[test]
    fn every_site_preserves_invariants_on_fixtures() {
        for code in ["O1+ U2+ O3+ U1+ O2+ U3+", "O1+ O2+ U1+ U2+", "O1+ ; U1+", "O1+ O2+ O3+ U2+ U1+ U3+"] {
            let k = realize(&d(code));
            let base = fingerprint(&k, false);
            let base_v = fingerprint(&k, true);
            for s in find_moves(&k, &MoveKind::all()) {
                let out = apply_move(&k, &s).unwrap();
                assert_eq!(out.genus(), 0, "{code} {s:?}");
                if s.kind == MoveKind::FU {
                    assert_eq!(fingerprint(&out, true), base_v, "{code} {s:?}");
                } else {
                    assert_eq!(fingerprint(&out, false), base, "{code} {s:?}");
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn moves_preserve_genus_and_invert(code in crate::testing::arb_code(4, 2), pick in any::<prop::sample::Index>()) {
            let k = realize(&d(&code));
            let sites = find_moves(&k, &MoveKind::all());
            prop_assume!(!sites.is_empty());
            let s = pick.get(&sites);
            let out = apply_move(&k, s).unwrap();
            prop_assert_eq!(out.genus(), 0);
            if s.kind.growth() > 0 {
                let new_ids: Vec<CrossingId> = out.crossings().map(|(id, _)| id).filter(|&id| k.kind(id).is_none()).collect();
                let undo = find_moves(&out, &kinds(&[MoveKind::R1Del, MoveKind::VR1Del, MoveKind::R2Del, MoveKind::VR2Del]))
                    .into_iter()
                    .find(|u| {
                        let at = Loc::new(u.locus[0], u.locus[1]);
                        new_ids.contains(&out.passage(at).crossing) && new_ids.contains(&out.passage(out.next(at)).crossing)
                    });
                let undo = undo.expect("created site is offered for deletion");
                prop_assert_eq!(canonical_form(&apply_move(&out, &undo).unwrap()), canonical_form(&k));
            }
        }
    }

    #[test]
    fn walks_reach_every_kind_and_keep_invariants() {
        let t = d("O1+ U2+ O3+ U1+ O2+ U3+");
        let mut seen = BTreeSet::new();
        for seed in 0..12 {
            let (_, trace) = random_walk(&t, 60, seed, &MoveKind::all(), 16);
            let mut cur = t.clone();
            let mut prev = fingerprint(&cur, false);
            for s in trace {
                let next = apply_move(&cur, &s).unwrap();
                assert_eq!(next.genus(), 0);
                let virtual_only = s.kind == MoveKind::FU;
                let after = fingerprint(&next, false);
                if virtual_only {
                    assert_eq!(fingerprint(&next, true), fingerprint(&cur, true));
                } else {
                    assert_eq!(after, prev, "seed {seed} {s:?}");
                }
                seen.insert(s.kind);
                prev = after;
                cur = next;
            }
        }
        assert_eq!(seen, MoveKind::all());
    }
}
