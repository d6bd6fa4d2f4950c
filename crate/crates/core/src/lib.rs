//! Exact combinatorics of oriented virtual link diagrams: r-multiplexing,
//! r-th coverings, n-writhes, linking numbers and (virtual) n-colorings.

pub mod catalog;
pub mod colorings;
pub mod constructions;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod moves;
pub mod snf;
pub mod verify;

#[cfg(test)]
mod testing;

pub use diagram::{
    canonical_form, parse_vgc, realize, serialize_vgc, CrossingId, CrossingKind, Diagram,
    EdgeRef, Granularity, Loc, Passage, Role, Segmentation, Sign,
};
pub use error::{Error, Result};
