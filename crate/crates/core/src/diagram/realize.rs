//! Planarization: turning an arbitrary code into a genus-0 code by adding
//! virtual crossings, without touching the real passages.

use std::collections::BTreeMap;

use super::{CrossingId, Diagram, Sign, Tok};

/// Upper bound on genus evaluations spent by the greedy stage.
const GREEDY_BUDGET: usize = 200_000;

/// Returns a genus-0 diagram whose real passages, read per component with all
/// virtual passages deleted, coincide with those of `d`.
///
/// Planar inputs are returned unchanged. Otherwise the existing virtual
/// crossings are dropped and new ones are inserted, first greedily (one
/// crossing at a time, each lowering the genus) and, if that stalls, by
/// [`rail_layout`].
pub fn realize(d: &Diagram) -> Diagram {
    if d.genus() == 0 {
        return d.clone();
    }
    let stripped = strip_virtual(d);
    if stripped.genus() == 0 {
        return stripped;
    }
    greedy(&stripped).unwrap_or_else(|| rail_layout(&stripped))
}

fn strip_virtual(d: &Diagram) -> Diagram {
    let mut raw = d.to_raw();
    for comp in &mut raw.components {
        comp.retain(|t| !t.is_virtual());
    }
    raw.signs.retain(|id, _| d.kind(*id).unwrap().is_real());
    raw.build().expect("removing virtual crossings keeps a valid diagram")
}

fn greedy(d: &Diagram) -> Option<Diagram> {
    let mut current = d.clone();
    let mut genus = current.genus();
    let mut spent = 0;
    while genus > 0 {
        let (lower, level) = insertions(&current, genus, &mut spent)?;
        if let Some(next) = lower {
            current = next;
            genus -= 1;
            continue;
        }
        // no single crossing helps: look one insertion further from every
        // genus-neutral candidate
        let mut found = None;
        for mid in level {
            if let (Some(next), _) = insertions(&mid, genus, &mut spent)? {
                found = Some(next);
                break;
            }
        }
        current = found?;
        genus -= 1;
    }
    Some(current)
}

/// One virtual crossing added to `d` in every possible way: the first
/// candidate of lower genus, else all candidates of equal genus. `None` once
/// the evaluation budget is exhausted.
fn insertions(d: &Diagram, genus: usize, spent: &mut usize) -> Option<(Option<Diagram>, Vec<Diagram>)> {
    let raw = d.to_raw();
    let id = d.max_id() + 1;
    let mut level = Vec::new();
    for c1 in 0..raw.components.len() {
        for j1 in 0..raw.components[c1].len().max(1) {
            let mut once = raw.clone();
            once.components[c1].insert(j1, Tok::Virtual { id, lead: true });
            for c2 in 0..once.components.len() {
                for j2 in 0..=once.components[c2].len() {
                    for sign in [Sign::Pos, Sign::Neg] {
                        *spent += 1;
                        if *spent > GREEDY_BUDGET {
                            return None;
                        }
                        let mut twice = once.clone();
                        twice.components[c2].insert(j2, Tok::Virtual { id, lead: false });
                        twice.signs.insert(id, sign);
                        let cand = twice.build().expect("inserted crossing is well formed");
                        match cand.genus() {
                            g if g < genus => return Some((Some(cand), level)),
                            g if g == genus => level.push(cand),
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    Some((None, level))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pt {
    x: i64,
    y: i64,
}

fn pt(x: i64, y: i64) -> Pt {
    Pt { x, y }
}

/// Deterministic planar drawing of the real crossings of `d`.
///
/// Real crossings sit on the x-axis in first-appearance order, each drawn as
/// an X whose four corner ports follow the rotation convention. Every edge
/// leaves its port vertically, runs along its own horizontal lane (upper
/// lanes for upper ports, lower lanes for lower ports, and around a private
/// column on the far right when it must switch between them), and every
/// intersection of two lanes becomes a virtual crossing whose sign is read
/// off the drawing. Virtual crossings of `d` are ignored.
pub fn rail_layout(d: &Diagram) -> Diagram {
    let d = strip_virtual(d);
    let mut order: BTreeMap<CrossingId, i64> = BTreeMap::new();
    for comp in d.components() {
        for p in comp {
            let n = order.len() as i64;
            order.entry(p.crossing).or_insert(n);
        }
    }
    let center = |id: CrossingId| 10 + 4 * order[&id];
    let x_max = 10 + 4 * order.len() as i64;

    // port corner for the strand of `slot` (0 over, 1 under)
    let corner = |id: CrossingId, over: bool, out: bool| -> Pt {
        let s = d.kind(id).unwrap().sign();
        let (dx, dy) = match (over, out, s) {
            (true, true, _) => (1, 1),
            (true, false, _) => (-1, -1),
            (false, true, Sign::Pos) => (-1, 1),
            (false, false, Sign::Pos) => (1, -1),
            (false, true, Sign::Neg) => (1, -1),
            (false, false, Sign::Neg) => (-1, 1),
        };
        pt(center(id) + dx, dy)
    };

    // polylines, one per edge, indexed like (component, passage)
    let mut edges: Vec<(usize, usize, Vec<Pt>)> = Vec::new();
    for (c, comp) in d.components().iter().enumerate() {
        for i in 0..comp.len() {
            let k = edges.len() as i64;
            let a = comp[i];
            let b = comp[(i + 1) % comp.len()];
            let p = corner(a.crossing, a.role == super::Role::Over, true);
            let q = corner(b.crossing, b.role == super::Role::Over, false);
            let h = 2 + k;
            let xr = x_max + 10 + k;
            let line = match (p.y > 0, q.y > 0) {
                (true, true) => vec![p, pt(p.x, h), pt(q.x, h), q],
                (false, false) => vec![p, pt(p.x, -h), pt(q.x, -h), q],
                (true, false) => vec![p, pt(p.x, h), pt(xr, h), pt(xr, -h), pt(q.x, -h), q],
                (false, true) => vec![p, pt(p.x, -h), pt(xr, -h), pt(xr, h), pt(q.x, h), q],
            };
            edges.push((c, i, line));
        }
    }

    // (edge, segment, offset along segment) of each intersection point
    struct Hit {
        edge: usize,
        seg: usize,
        along: i64,
        id: CrossingId,
        lead: bool,
    }
    let mut hits: Vec<Hit> = Vec::new();
    let mut signs = BTreeMap::new();
    let mut next_id = d.max_id() + 1;
    let segs: Vec<(usize, usize, Pt, Pt)> = edges
        .iter()
        .enumerate()
        .flat_map(|(e, (_, _, line))| {
            line.windows(2).enumerate().map(move |(s, w)| (e, s, w[0], w[1]))
        })
        .collect();
    for (i, &(e1, s1, a1, b1)) in segs.iter().enumerate() {
        for &(e2, s2, a2, b2) in &segs[i + 1..] {
            if e1 == e2 && s1.abs_diff(s2) <= 1 {
                continue;
            }
            let Some(p) = cross(a1, b1, a2, b2) else { continue };
            let dir1 = pt((b1.x - a1.x).signum(), (b1.y - a1.y).signum());
            let dir2 = pt((b2.x - a2.x).signum(), (b2.y - a2.y).signum());
            let frame = Sign::of(dir1.x * dir2.y - dir1.y * dir2.x).expect("transverse segments");
            let id = next_id;
            next_id += 1;
            signs.insert(id, frame);
            let along = |a: Pt, q: Pt| (q.x - a.x).abs() + (q.y - a.y).abs();
            hits.push(Hit { edge: e1, seg: s1, along: along(a1, p), id, lead: true });
            hits.push(Hit { edge: e2, seg: s2, along: along(a2, p), id, lead: false });
        }
    }
    hits.sort_by_key(|h| (h.edge, h.seg, h.along));

    let mut raw = d.to_raw();
    raw.signs.extend(signs);
    let mut per_edge: Vec<Vec<Tok>> = vec![Vec::new(); edges.len()];
    for h in &hits {
        per_edge[h.edge].push(Tok::Virtual { id: h.id, lead: h.lead });
    }
    let mut k = 0;
    for comp in raw.components.iter_mut() {
        let old = std::mem::take(comp);
        for t in old {
            comp.push(t);
            comp.append(&mut per_edge[k]);
            k += 1;
        }
    }
    raw.build().expect("layout produces a well-formed diagram")
}

/// Proper crossing of an axis-parallel vertical and horizontal segment.
fn cross(a1: Pt, b1: Pt, a2: Pt, b2: Pt) -> Option<Pt> {
    let (v, h) = if a1.x == b1.x && a2.y == b2.y {
        ((a1, b1), (a2, b2))
    } else if a2.x == b2.x && a1.y == b1.y {
        ((a2, b2), (a1, b1))
    } else {
        return None;
    };
    let x = v.0.x;
    let y = h.0.y;
    let within = |t: i64, u: i64, w: i64| t.min(u) < w && w < t.max(u);
    (within(h.0.x, h.1.x, x) && within(v.0.y, v.1.y, y)).then_some(pt(x, y))
}
