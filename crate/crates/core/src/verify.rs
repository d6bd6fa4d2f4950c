//! End-to-end checks of the multiplexing identities on knot diagrams.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::fixture;
use crate::colorings::{build_system, count_colorings, enumerate_colorings, psi, Coloring, ColoringMode};
use crate::constructions::{covering, extract_component, multiplex};
use crate::diagram::{canonical_form, Diagram};
use crate::error::{Error, Result};
use crate::invariants::{ith_n_writhes, linking_matrix, n_writhes};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Identity {
    /// Lk(K_i, K_j) = Σ_{n ≡ i−j (mod r)} J_n.
    #[serde(rename = "linking")]
    Linking,
    /// J_n^i = J_n when r | n, else 0.
    #[serde(rename = "writhes")]
    Writhes,
    /// Every component of L(D;r) is the r-th covering of D.
    #[serde(rename = "covering")]
    Covering,
    /// Virtual colorings of D correspond to constrained colorings of L(D;2).
    #[serde(rename = "colorings")]
    Colorings,
}

impl Identity {
    pub const ALL: [Identity; 4] = [Identity::Linking, Identity::Writhes, Identity::Covering, Identity::Colorings];

    pub fn label(self) -> &'static str {
        match self {
            Identity::Linking => "1.2",
            Identity::Writhes => "1.3",
            Identity::Covering => "1.4",
            Identity::Colorings => "1.5",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::Parse { token: s.to_string(), reason: "expected 1.2, 1.3, 1.4 or 1.5".into() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub fixture: String,
    pub identity: Identity,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifyReport {
    fn push(&mut self, c: Check) {
        if c.passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.checks.push(c);
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub struct VerifyConfig {
    pub identities: BTreeSet<Identity>,
    pub r_range: Vec<usize>,
    pub n_range: Vec<u64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { identities: Identity::ALL.into_iter().collect(), r_range: vec![2, 3], n_range: (2..=6).collect() }
    }
}

pub fn verify_theorems(names: &[&str], cfg: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for &name in names {
        let d = fixture(name)?;
        verify_diagram(name, &d, cfg, &mut report)?;
    }
    Ok(report)
}

pub fn verify_diagram(name: &str, d: &Diagram, cfg: &VerifyConfig, report: &mut VerifyReport) -> Result<()> {
    if d.num_components() != 1 {
        return Err(Error::NotAKnot(d.num_components()));
    }
    let jn = n_writhes(d)?;
    let check = |identity, r, n, failure: Option<String>| Check {
        fixture: name.to_string(),
        identity,
        r,
        n,
        passed: failure.is_none(),
        detail: failure.unwrap_or_default(),
    };
    for &r in &cfg.r_range {
        let (l, prov) = multiplex(d, r)?;
        let ri = r as i64;
        if cfg.identities.contains(&Identity::Linking) {
            let lk = linking_matrix(&l);
            let mut failure = None;
            'pairs: for i in 1..=r {
                for j in (1..=r).filter(|&j| j != i) {
                    let want: i64 =
                        jn.iter().filter(|(n, _)| (n - (i as i64 - j as i64)).rem_euclid(ri) == 0).map(|(_, v)| v).sum();
                    if lk[i - 1][j - 1] != want {
                        failure = Some(format!("Lk({i},{j}) = {}, expected {want}", lk[i - 1][j - 1]));
                        break 'pairs;
                    }
                }
            }
            report.push(check(Identity::Linking, r, None, failure));
        }
        if cfg.identities.contains(&Identity::Writhes) {
            let mut failure = None;
            for i in 1..=r {
                let t = ith_n_writhes(&l, i)?.table;
                let ns: BTreeSet<i64> = t.iter().chain(jn.iter()).map(|(n, _)| n).collect();
                if let Some(n) = ns.into_iter().find(|&n| t.get(n) != if n % ri == 0 { jn.get(n) } else { 0 }) {
                    failure = Some(format!("J_{n}^{i} = {}", t.get(n)));
                    break;
                }
            }
            report.push(check(Identity::Writhes, r, None, failure));
        }
        if cfg.identities.contains(&Identity::Covering) {
            let cov = canonical_form(&covering(d, r)?);
            let mut failure = None;
            for i in 1..=r {
                if canonical_form(&extract_component(&l, i)?) != cov {
                    failure = Some(format!("component {i} differs from the covering"));
                    break;
                }
            }
            report.push(check(Identity::Covering, r, None, failure));
        }
        if r == 2 && cfg.identities.contains(&Identity::Colorings) {
            let vf = build_system(d, ColoringMode::VirtualFox, None)?;
            let fc = build_system(&l, ColoringMode::FoxConstrained, Some(&prov))?;
            for &n in &cfg.n_range {
                let failure = coloring_failure(d, &l, &prov, &vf, &fc, n)?;
                report.push(check(Identity::Colorings, r, Some(n), failure));
            }
        }
    }
    Ok(())
}

fn coloring_failure(
    d: &Diagram,
    l: &Diagram,
    prov: &crate::constructions::Provenance,
    vf: &crate::colorings::ColoringSystem,
    fc: &crate::colorings::ColoringSystem,
    n: u64,
) -> Result<Option<String>> {
    let (a, b) = (count_colorings(vf, n)?, count_colorings(fc, n)?);
    if a != b {
        return Ok(Some(format!("{a} virtual colorings, {b} constrained colorings")));
    }
    let sols = enumerate_colorings(vf, n, u128::MAX)?;
    let mut images: Vec<Coloring> = Vec::with_capacity(sols.len());
    for c in &sols {
        match psi(d, c, l, prov) {
            Ok(img) => images.push(img),
            Err(e) => return Ok(Some(e.to_string())),
        }
    }
    images.sort();
    images.dedup();
    if images.len() != sols.len() {
        return Ok(Some("psi is not injective".into()));
    }
    if num_bigint::BigUint::from(images.len()) != b {
        return Ok(Some("psi is not onto".into()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::knot_names;

    #[test]
    fn catalog_passes() {
        let report = verify_theorems(&knot_names(), &VerifyConfig::default()).unwrap();
        let failures: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert!(failures.is_empty(), "{failures:?}");
        assert!(report.passed > 0);
    }

    #[test]
    fn vtrefoil_linking_at_three() {
        let (l, _) = multiplex(&fixture("vtrefoil").unwrap(), 3).unwrap();
        let lk = linking_matrix(&l);
        for (i, row) in lk.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, i64::from(i != j));
            }
        }
    }

    #[test]
    fn unknot_is_boring() {
        for r in 2..=5 {
            let (l, _) = multiplex(&fixture("unknot").unwrap(), r).unwrap();
            assert!(linking_matrix(&l).iter().flatten().all(|&v| v == 0));
        }
    }

    #[test]
    fn links_are_rejected() {
        assert_eq!(verify_theorems(&["vhopf"], &VerifyConfig::default()).unwrap_err(), Error::NotAKnot(2));
        assert_eq!("1.6".parse::<Identity>().unwrap_err(), Error::Parse { token: "1.6".into(), reason: "expected 1.2, 1.3, 1.4 or 1.5".into() });
    }
}
