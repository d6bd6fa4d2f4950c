//! Fox n-colorings, virtual n-colorings, and the constrained colorings of a
//! 2-multiplexed knot, as integer linear systems.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};

use crate::constructions::Provenance;
use crate::diagram::{CrossingKind, Diagram, EdgeRef, Granularity, Piece, Segmentation};
use crate::error::{Error, Result};
use crate::snf::{smith_normal_form, Snf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ColoringMode {
    /// x + z = 2y at every real crossing; virtual crossings are transparent.
    Fox,
    /// Fox rows plus z = −x, w = −y at every virtual crossing.
    VirtualFox,
    /// Fox rows on L(D;2) plus α + α′ = 0 for the two copies of each edge.
    FoxConstrained,
}

#[derive(Clone, Debug)]
pub struct ColoringSystem {
    pub mode: ColoringMode,
    /// Ordered by (component, start of piece).
    pub unknowns: Vec<Piece>,
    pub relations: Vec<Vec<i64>>,
    segments: Segmentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coloring {
    pub n: u64,
    /// Residue of each unknown, in system order.
    pub values: Vec<u64>,
}

impl ColoringSystem {
    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    /// Index of the unknown containing edge `e`.
    pub fn unknown_of(&self, e: EdgeRef) -> usize {
        self.segments.piece_of_edge(e)
    }

    pub fn snf(&self) -> Snf {
        smith_normal_form(&self.relations)
    }

    pub fn is_solution(&self, c: &Coloring) -> bool {
        c.values.len() == self.num_unknowns()
            && self.relations.iter().all(|row| eval(row, &c.values, c.n) == 0)
    }
}

fn eval(row: &[i64], values: &[u64], n: u64) -> u64 {
    let n = i128::from(n);
    let s: i128 = row.iter().zip(values).map(|(&a, &v)| i128::from(a) * i128::from(v)).sum();
    s.rem_euclid(n) as u64
}

pub fn build_system(d: &Diagram, mode: ColoringMode, provenance: Option<&Provenance>) -> Result<ColoringSystem> {
    let granularity = match mode {
        ColoringMode::VirtualFox => Granularity::VirtualArc,
        _ => Granularity::Arc,
    };
    let segments = d.segments(granularity);
    let k = segments.len();
    let mut relations = Vec::new();
    let row = |entries: &[(usize, i64)]| {
        let mut r = vec![0i64; k];
        for &(i, a) in entries {
            r[i] += a;
        }
        r
    };
    for (id, kind) in d.crossings() {
        let [a, b] = d.locations(id).unwrap();
        match kind {
            CrossingKind::Real(_) => {
                let (over, under) = (a, b);
                let x = segments.incoming(d, under);
                let z = segments.outgoing(under);
                let y = segments.outgoing(over);
                relations.push(row(&[(x, 1), (z, 1), (y, -2)]));
            }
            CrossingKind::Virtual(_) if mode == ColoringMode::VirtualFox => {
                for loc in [a, b] {
                    relations.push(row(&[(segments.incoming(d, loc), 1), (segments.outgoing(loc), 1)]));
                }
            }
            CrossingKind::Virtual(_) => {}
        }
    }
    if mode == ColoringMode::FoxConstrained {
        let prov = provenance.ok_or(Error::MissingProvenance)?;
        if prov.r != 2 || d.num_components() != 2 {
            return Err(Error::Validation("constrained colorings need L(D;2) and its provenance".into()));
        }
        for copies in prov.parallel_edges().values() {
            let ends: Vec<(usize, i64)> = copies.iter().map(|&e| (segments.piece_of_edge(e), 1)).collect();
            relations.push(row(&ends));
        }
    }
    Ok(ColoringSystem { mode, unknowns: segments.pieces.clone(), relations, segments })
}

pub fn count_colorings(sys: &ColoringSystem, n: u64) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::BadModulus(n));
    }
    Ok(sys.snf().solutions_mod(sys.num_unknowns(), n))
}

/// Every solution mod n, found by exhaustive search; the search space
/// n^#unknowns must not exceed `limit`.
pub fn enumerate_colorings(sys: &ColoringSystem, n: u64, limit: u128) -> Result<Vec<Coloring>> {
    if n < 1 {
        return Err(Error::BadModulus(n));
    }
    let k = sys.num_unknowns();
    let space = (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if space > limit {
        return Err(Error::TooLarge(space, limit));
    }
    // rows are checked as soon as their last unknown is assigned
    let mut due: Vec<Vec<&[i64]>> = vec![Vec::new(); k];
    for r in &sys.relations {
        if let Some(last) = r.iter().rposition(|&a| a != 0) {
            due[last].push(r);
        }
    }
    let mut out = Vec::new();
    let mut values = vec![0u64; k];
    search(&due, n, 0, &mut values, &mut out);
    Ok(out)
}

fn search(due: &[Vec<&[i64]>], n: u64, depth: usize, values: &mut Vec<u64>, out: &mut Vec<Coloring>) {
    if depth == values.len() {
        out.push(Coloring { n, values: values.clone() });
        return;
    }
    for v in 0..n {
        values[depth] = v;
        if due[depth].iter().all(|r| eval(&r[..=depth], &values[..=depth], n) == 0) {
            search(due, n, depth + 1, values, out);
        }
    }
    values[depth] = 0;
}

/// Sends a virtual n-coloring of a knot diagram `d` to a constrained coloring
/// of L(d;2): the right copy of every edge gets the edge's color x, the left
/// copy gets −x.
pub fn psi(d: &Diagram, c: &Coloring, l2: &Diagram, prov: &Provenance) -> Result<Coloring> {
    let source = build_system(d, ColoringMode::VirtualFox, None)?;
    if !source.is_solution(c) {
        return Err(Error::InvalidColoring("not a virtual coloring of the source diagram".into()));
    }
    let target = build_system(l2, ColoringMode::FoxConstrained, Some(prov))?;
    let n = c.n;
    let mut assigned: BTreeMap<usize, u64> = BTreeMap::new();
    for (edge, copies) in prov.parallel_edges() {
        let x = c.values[source.unknown_of(edge)];
        // copies are listed left to right
        for (copy, value) in copies.iter().zip([(n - x) % n, x]) {
            let arc = target.unknown_of(*copy);
            if *assigned.entry(arc).or_insert(value) != value {
                return Err(Error::InvalidColoring(format!("arc {arc} receives two colors")));
            }
        }
    }
    let values = (0..target.num_unknowns())
        .map(|i| assigned.get(&i).copied().ok_or_else(|| Error::InvalidColoring(format!("arc {i} is not colored"))))
        .collect::<Result<Vec<_>>>()?;
    let out = Coloring { n, values };
    if !target.is_solution(&out) {
        return Err(Error::InvalidColoring("image violates a relation".into()));
    }
    Ok(out)
}

/// Serializable summary: unknown count, SNF divisors and counts per modulus.
#[derive(Clone, Debug, Serialize)]
pub struct ColoringSummary {
    pub mode: ColoringMode,
    pub unknowns: usize,
    pub relations: usize,
    #[serde(serialize_with = "ser_divisors")]
    pub divisors: Vec<BigInt>,
    pub count_mod_n: BTreeMap<String, serde_json::Value>,
}

fn ser_divisors<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| big_json(&d.to_string())))
}

fn big_json(digits: &str) -> serde_json::Value {
    match digits.parse::<u64>() {
        Ok(v) => v.into(),
        Err(_) => digits.into(),
    }
}

pub fn summarize(sys: &ColoringSystem, moduli: &[u64]) -> Result<ColoringSummary> {
    let snf = sys.snf();
    let mut count_mod_n = BTreeMap::new();
    for &n in moduli {
        count_mod_n.insert(n.to_string(), big_json(&count_colorings(sys, n)?.to_string()));
    }
    Ok(ColoringSummary {
        mode: sys.mode,
        unknowns: sys.num_unknowns(),
        relations: sys.relations.len(),
        divisors: snf.diagonal,
        count_mod_n,
    })
}
