//! Crossing indices, n-writhes, i-th n-writhes, linking numbers and λ.
//!
//! Walking along the specified path of a real crossing (from its over passage
//! to its under passage), every crossing strand contributes +1 when it
//! crosses the path from left to right and −1 otherwise. With the frame
//! conventions of [`crate::diagram`] that is `+ε` at an under passage, `−ε`
//! at an over passage, `+ε_v` at the second passage of a virtual crossing and
//! `−ε_v` at the first.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::diagram::{CrossingId, CrossingKind, Diagram, Loc, Passage, Role};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexPair {
    pub ind: i64,
    pub ind_v: i64,
}

/// Finite-support map n ↦ J_n over nonzero n, with J_0 kept apart: it is not
/// an invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WritheTable {
    values: BTreeMap<i64, i64>,
    pub j0: i64,
}

impl WritheTable {
    fn add(&mut self, n: i64, sign: i64) {
        if n == 0 {
            self.j0 += sign;
            return;
        }
        let v = self.values.entry(n).or_insert(0);
        *v += sign;
        if *v == 0 {
            self.values.remove(&n);
        }
    }

    pub fn get(&self, n: i64) -> i64 {
        if n == 0 {
            self.j0
        } else {
            self.values.get(&n).copied().unwrap_or(0)
        }
    }

    /// Nonzero entries with n ≠ 0, ascending in n.
    pub fn iter(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.values.iter().map(|(&n, &v)| (n, v))
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut t = WritheTable::default();
        for (n, v) in entries {
            t.add(n, v);
        }
        t
    }

    /// Entries with n ∉ `excluded`, for invariance comparisons.
    pub fn restricted(&self, excluded: &[i64]) -> BTreeMap<i64, i64> {
        self.iter().filter(|(n, _)| !excluded.contains(n)).collect()
    }
}

impl Serialize for WritheTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.values.len()))?;
        for (n, v) in &self.values {
            m.serialize_entry(&n.to_string(), v)?;
        }
        m.end()
    }
}

/// i-th n-writhes of one component, with λ_i (the one nonzero n at which the
/// table is not an invariant).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentWrithes {
    pub component: usize,
    pub table: WritheTable,
    pub lambda: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Linking {
    /// `lk[i][j]`: sum of signs of real crossings where component i passes
    /// over component j (0-based, diagonal zero).
    pub lk: Vec<Vec<i64>>,
    pub lambda: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub writhe: i64,
    /// n-writhes, present for knot diagrams only.
    pub jn: Option<WritheTable>,
    pub jni: Vec<ComponentWrithes>,
    pub lk: Vec<Vec<i64>>,
    pub lambda: Vec<i64>,
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(6))?;
        m.serialize_entry("writhe", &self.writhe)?;
        m.serialize_entry("jn", &self.jn)?;
        m.serialize_entry("j0", &self.jn.as_ref().map(|t| t.j0))?;
        let jni: Vec<&WritheTable> = self.jni.iter().map(|c| &c.table).collect();
        m.serialize_entry("jni", &jni)?;
        m.serialize_entry("lk", &self.lk)?;
        m.serialize_entry("lambda", &self.lambda)?;
        m.end()
    }
}

fn real_locations(d: &Diagram, c: CrossingId) -> Result<(Loc, Loc)> {
    match d.kind(c) {
        None => Err(Error::UnknownCrossing(c)),
        Some(CrossingKind::Virtual(_)) => Err(Error::NotReal(c)),
        Some(CrossingKind::Real(_)) => {
            let [o, u] = d.locations(c).unwrap();
            if o.component != u.component {
                return Err(Error::MixedCrossing(c));
            }
            Ok((o, u))
        }
    }
}

fn path_locations(d: &Diagram, c: CrossingId) -> Result<Vec<Loc>> {
    let (o, u) = real_locations(d, c)?;
    let mut out = Vec::new();
    let mut l = d.next(o);
    while l != u {
        out.push(l);
        l = d.next(l);
    }
    Ok(out)
}

/// Passages strictly between the over and the under passage of `c`.
pub fn specified_path(d: &Diagram, c: CrossingId) -> Result<Vec<Passage>> {
    Ok(path_locations(d, c)?.into_iter().map(|l| d.passage(l)).collect())
}

pub fn crossing_indices(d: &Diagram, c: CrossingId) -> Result<IndexPair> {
    let mut ind = 0;
    let mut ind_v = 0;
    for loc in path_locations(d, c)? {
        let p = d.passage(loc);
        let kind = d.kind(p.crossing).unwrap();
        let e = kind.sign().value();
        match p.role {
            Role::Under => ind += e,
            Role::Over => ind -= e,
            Role::Through => {
                let [first, _] = d.locations(p.crossing).unwrap();
                ind_v += if loc == first { -e } else { e };
            }
        }
    }
    Ok(IndexPair { ind, ind_v })
}

pub fn writhe(d: &Diagram) -> i64 {
    d.real_crossings().map(|(_, s)| s.value()).sum()
}

pub fn n_writhes(d: &Diagram) -> Result<WritheTable> {
    if d.num_components() != 1 {
        return Err(Error::NotAKnot(d.num_components()));
    }
    let mut t = WritheTable::default();
    for (id, s) in d.real_crossings() {
        t.add(crossing_indices(d, id)?.ind, s.value());
    }
    Ok(t)
}

/// Writhe table over the real self-crossings of component `i` (1-based).
/// Indices count every real passage on the path, including those with other
/// components.
pub fn ith_n_writhes(d: &Diagram, i: usize) -> Result<ComponentWrithes> {
    if i == 0 || i > d.num_components() {
        return Err(Error::BadComponent(i));
    }
    let c = i - 1;
    let mut t = WritheTable::default();
    for (id, s) in d.real_crossings() {
        let [o, u] = d.locations(id).unwrap();
        if o.component == c && u.component == c {
            t.add(crossing_indices(d, id)?.ind, s.value());
        }
    }
    let lambda = lambda_direct(d)[c];
    Ok(ComponentWrithes { component: i, table: t, lambda })
}

pub fn linking_matrix(d: &Diagram) -> Vec<Vec<i64>> {
    let n = d.num_components();
    let mut lk = vec![vec![0; n]; n];
    for (id, s) in d.real_crossings() {
        let [o, u] = d.locations(id).unwrap();
        if o.component != u.component {
            lk[o.component][u.component] += s.value();
        }
    }
    lk
}

/// λ_i = Σ_{j≠i} (Lk(j,i) − Lk(i,j)).
pub fn lambda_from_lk(lk: &[Vec<i64>]) -> Vec<i64> {
    (0..lk.len())
        .map(|i| (0..lk.len()).filter(|&j| j != i).map(|j| lk[j][i] - lk[i][j]).sum())
        .collect()
}

/// λ accumulated crossing by crossing: +ε on the under component, −ε on the
/// over component of every mixed real crossing.
pub fn lambda_direct(d: &Diagram) -> Vec<i64> {
    let mut lambda = vec![0; d.num_components()];
    for (id, s) in d.real_crossings() {
        let [o, u] = d.locations(id).unwrap();
        if o.component != u.component {
            lambda[u.component] += s.value();
            lambda[o.component] -= s.value();
        }
    }
    lambda
}

pub fn linking_and_lambda(d: &Diagram) -> Linking {
    let lk = linking_matrix(d);
    let lambda = lambda_direct(d);
    debug_assert_eq!(lambda, lambda_from_lk(&lk));
    Linking { lk, lambda }
}

pub fn report(d: &Diagram) -> InvariantReport {
    let Linking { lk, lambda } = linking_and_lambda(d);
    let jni = (1..=d.num_components())
        .map(|i| ith_n_writhes(d, i).expect("component index in range"))
        .collect();
    InvariantReport {
        writhe: writhe(d),
        jn: n_writhes(d).ok(),
        jni,
        lk,
        lambda,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_vgc, realize, Role};
    use proptest::prelude::*;

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

    fn d(code: &str) -> Diagram {
        parse_vgc(code).unwrap()
    }

    fn vtrefoil() -> Diagram {
        realize(&d("O1+ O2+ U1+ U2+"))
    }

    #[test]
    fn specified_paths() {
        assert!(specified_path(&d("O1+ U1+"), 1).unwrap().is_empty());
        let flat = d("O1+ O2+ U1+ U2+");
        assert_eq!(
            specified_path(&flat, 1).unwrap(),
            vec![Passage { crossing: 2, role: Role::Over }]
        );
        assert_eq!(
            specified_path(&flat, 2).unwrap(),
            vec![Passage { crossing: 1, role: Role::Under }]
        );
    }

    #[test]
    fn path_errors() {
        let k = d("O1+ U1+ V2+ V2+");
        assert_eq!(specified_path(&k, 9), Err(Error::UnknownCrossing(9)));
        assert_eq!(specified_path(&k, 2), Err(Error::NotReal(2)));
        assert_eq!(specified_path(&d("O1+ ; U1+"), 1), Err(Error::MixedCrossing(1)));
    }

    #[test]
    fn trefoil_indices_vanish() {
        let t = d(TREFOIL);
        for c in 1..=3 {
            assert_eq!(crossing_indices(&t, c).unwrap(), IndexPair { ind: 0, ind_v: 0 });
        }
        assert!(n_writhes(&t).unwrap().is_empty());
        assert_eq!(n_writhes(&t).unwrap().j0, 3);
    }

    #[test]
    fn virtual_trefoil_indices() {
        let vt = vtrefoil();
        let a = crossing_indices(&vt, 1).unwrap();
        let b = crossing_indices(&vt, 2).unwrap();
        assert_eq!(a.ind, -1);
        assert_eq!(b.ind, 1);
        assert_eq!(a.ind + a.ind_v, 0);
        assert_eq!(b.ind + b.ind_v, 0);
        assert_eq!(n_writhes(&vt).unwrap(), WritheTable::from_entries([(1, 1), (-1, 1)]));
    }

    #[test]
    fn writhes() {
        assert_eq!(writhe(&d(".")), 0);
        assert_eq!(writhe(&d(TREFOIL)), 3);
        assert_eq!(writhe(&d("O1+ U1+ O2- U2-")), 0);
        assert!(n_writhes(&d("O1+ U1+")).unwrap().is_empty());
        assert_eq!(n_writhes(&d("O1+ ; U1+")), Err(Error::NotAKnot(2)));
    }

    #[test]
    fn ith_writhes() {
        let vt = vtrefoil();
        assert_eq!(ith_n_writhes(&vt, 1).unwrap().table, n_writhes(&vt).unwrap());
        let hopf = d("O1+ ; U1+");
        assert!(ith_n_writhes(&hopf, 1).unwrap().table.is_empty());
        assert_eq!(ith_n_writhes(&hopf, 3), Err(Error::BadComponent(3)));
        assert_eq!(ith_n_writhes(&hopf, 0), Err(Error::BadComponent(0)));
    }

    #[test]
    fn virtual_hopf_linking() {
        let h = realize(&d("O1+ ; U1+"));
        let l = linking_and_lambda(&h);
        assert_eq!(l.lk, vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(l.lambda, vec![-1, 1]);
        let k = linking_and_lambda(&d(TREFOIL));
        assert_eq!(k.lk, vec![vec![0]]);
        assert_eq!(k.lambda, vec![0]);
    }

    #[test]
    fn report_json_shape() {
        let r = report(&vtrefoil());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"writhe":2,"jn":{"-1":1,"1":1},"j0":0,"jni":[{"-1":1,"1":1}],"lk":[[0]],"lambda":[0]}"#
        );
        let t = WritheTable::from_entries([(-10, 1), (-2, 1), (3, -1)]);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"-10":1,"-2":1,"3":-1}"#);
    }

    proptest! {
        #[test]
        fn planar_index_identity(code in crate::testing::arb_code(5, 2)) {
            let p = realize(&parse_vgc(&code).unwrap());
            for (id, _) in p.real_crossings() {
                if p.is_self_crossing(id) {
                    let ip = crossing_indices(&p, id).unwrap();
                    prop_assert_eq!(ip.ind + ip.ind_v, 0);
                }
            }
        }

        #[test]
        fn classical_planar_indices_vanish(code in crate::testing::arb_real_knot(5)) {
            let k = parse_vgc(&code).unwrap();
            prop_assume!(k.genus() == 0);
            prop_assert!(n_writhes(&k).unwrap().is_empty());
        }

        #[test]
        fn lambda_routes_agree(code in crate::testing::arb_code(6, 4)) {
            let k = parse_vgc(&code).unwrap();
            prop_assert_eq!(lambda_direct(&k), lambda_from_lk(&linking_matrix(&k)));
        }
    }
}
