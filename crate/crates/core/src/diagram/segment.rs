use serde::{Deserialize, Serialize};

use super::{Diagram, EdgeRef, Loc, Role};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Granularity {
    /// Cut at every passage.
    Edge,
    /// Cut at undercrossings only.
    Arc,
    /// Cut at undercrossings and virtual crossings.
    VirtualArc,
}

impl Granularity {
    fn cuts(self, role: Role) -> bool {
        match self {
            Granularity::Edge => true,
            Granularity::Arc => role == Role::Under,
            Granularity::VirtualArc => role != Role::Over,
        }
    }
}

/// Interval of one component between two consecutive cut passages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub component: usize,
    /// Index of the cut passage the piece leaves from, `None` when closed.
    pub start: Option<usize>,
    /// Index of the cut passage the piece runs into, `None` when closed.
    pub end: Option<usize>,
}

impl Piece {
    pub fn is_closed(&self) -> bool {
        self.start.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct Segmentation {
    pub granularity: Granularity,
    /// Ordered by (component, start).
    pub pieces: Vec<Piece>,
    // per component, per passage index p: piece holding the edge after p
    edge_piece: Vec<Vec<usize>>,
    closed: Vec<Option<usize>>,
}

impl Segmentation {
    pub fn new(d: &Diagram, granularity: Granularity) -> Self {
        let mut pieces = Vec::new();
        let mut edge_piece = Vec::with_capacity(d.num_components());
        let mut closed = Vec::with_capacity(d.num_components());
        for (c, comp) in d.components().iter().enumerate() {
            let cuts: Vec<usize> = comp
                .iter()
                .enumerate()
                .filter(|(_, p)| granularity.cuts(p.role))
                .map(|(i, _)| i)
                .collect();
            if cuts.is_empty() {
                closed.push(Some(pieces.len()));
                edge_piece.push(vec![pieces.len(); comp.len()]);
                pieces.push(Piece { component: c, start: None, end: None });
                continue;
            }
            closed.push(None);
            let base = pieces.len();
            let len = comp.len();
            let mut table = vec![0; len];
            for (k, &start) in cuts.iter().enumerate() {
                let end = cuts[(k + 1) % cuts.len()];
                pieces.push(Piece { component: c, start: Some(start), end: Some(end) });
                let mut i = start;
                loop {
                    table[i] = base + k;
                    i = (i + 1) % len;
                    if i == end {
                        break;
                    }
                }
            }
            edge_piece.push(table);
        }
        Segmentation { granularity, pieces, edge_piece, closed }
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn piece_of_edge(&self, e: EdgeRef) -> usize {
        match e.after {
            Some(p) => self.edge_piece[e.component][p],
            None => self.closed[e.component].expect("closed edge on a crossing-free component"),
        }
    }

    /// Piece running into the passage at `loc`.
    pub fn incoming(&self, d: &Diagram, loc: Loc) -> usize {
        let prev = d.prev(loc);
        self.edge_piece[prev.component][prev.index]
    }

    /// Piece leaving the passage at `loc`.
    pub fn outgoing(&self, loc: Loc) -> usize {
        self.edge_piece[loc.component][loc.index]
    }
}

impl Diagram {
    pub fn segments(&self, granularity: Granularity) -> Segmentation {
        Segmentation::new(self, granularity)
    }
}
