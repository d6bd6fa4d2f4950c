//! Named fixture diagrams.

use serde::Serialize;

use crate::diagram::{parse_vgc, Diagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub code: &'static str,
    pub notes: &'static str,
    pub genus: usize,
    pub components: usize,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "unknot", code: ".", notes: "crossing-free circle", genus: 0, components: 1 },
    CatalogEntry { name: "kink", code: "O1+ U1+", notes: "unknot with one positive curl", genus: 0, components: 1 },
    CatalogEntry {
        name: "trefoil",
        code: "O1+ U2+ O3+ U1+ O2+ U3+",
        notes: "classical trefoil; all indices 0, writhe 3",
        genus: 0,
        components: 1,
    },
    CatalogEntry {
        name: "figure8",
        code: "O1- U2- O3+ U4+ O2- U1- O4+ U3+",
        notes: "reduced alternating 4-crossing diagram; writhe 0, determinant 5",
        genus: 0,
        components: 1,
    },
    CatalogEntry {
        name: "vtrefoil",
        code: "O1+ V3- O2+ U1+ V3- U2+",
        notes: "realization of O1+ O2+ U1+ U2+; J_1 = J_-1 = 1",
        genus: 0,
        components: 1,
    },
    CatalogEntry {
        name: "kishino",
        code: "V6- V5+ O1- O2+ V5+ U1- U2+ O3+ O4- V6- U3+ U4-",
        notes: "realization of O1- O2+ U1- U2+ O3+ O4- U3+ U4-, a sum of two virtual unknot diagrams",
        genus: 0,
        components: 1,
    },
    CatalogEntry {
        name: "index2",
        code: "O1+ V4- O2+ V5- O3+ U1+ V4- U2+ V5- U3+",
        notes: "realization of O1+ O2+ O3+ U1+ U2+ U3+; J_2 = J_-2 = 1",
        genus: 0,
        components: 1,
    },
    CatalogEntry {
        name: "vhopf",
        code: "V2- O1+ ; V2- U1+",
        notes: "realization of O1+ ; U1+; lk = [[0,1],[0,0]]",
        genus: 0,
        components: 2,
    },
];

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownFixture(name.to_string()))
}

pub fn fixture(name: &str) -> Result<Diagram> {
    parse_vgc(entry(name)?.code)
}

/// Names of the one-component entries.
pub fn knot_names() -> Vec<&'static str> {
    CATALOG.iter().filter(|e| e.components == 1).map(|e| e.name).collect()
}
