//! The VGC text format.
//!
//! ```text
//! diagram   := component (";" component)*
//! component := "." | passage (" " passage)*
//! passage   := ("O" | "U" | "V") id ("+" | "-")
//! ```
//!
//! Serialization joins components with `" ; "`. The sign on a `V` token is the
//! frame orientation measured from whichever of its two tokens is written
//! first.

use std::collections::BTreeMap;

use super::{CrossingId, CrossingKind, Diagram, Loc, RawDiagram, Role, Sign, Tok};
use crate::error::{Error, Result};

fn parse_token(tok: &str) -> Result<(char, CrossingId, Sign)> {
    let err = |reason: &str| Error::Parse { token: tok.to_string(), reason: reason.to_string() };
    let mut chars = tok.chars();
    let role = chars.next().ok_or_else(|| err("empty token"))?;
    if !matches!(role, 'O' | 'U' | 'V') {
        return Err(err("expected O, U or V"));
    }
    let rest = chars.as_str();
    let (digits, sign) = match rest.char_indices().last() {
        Some((i, '+')) => (&rest[..i], Sign::Pos),
        Some((i, '-')) => (&rest[..i], Sign::Neg),
        _ => return Err(err("expected a trailing + or -")),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err("expected a decimal crossing id"));
    }
    if digits.starts_with('0') {
        return Err(err("crossing ids are positive without leading zeros"));
    }
    let id: CrossingId = digits.parse().map_err(|_| err("crossing id out of range"))?;
    Ok((role, id, sign))
}

pub fn parse_vgc(text: &str) -> Result<Diagram> {
    let mut raw = RawDiagram::default();
    let mut signs: BTreeMap<CrossingId, Sign> = BTreeMap::new();
    for comp_text in text.split(';') {
        let comp_text = comp_text.trim();
        if comp_text.is_empty() {
            return Err(Error::Parse {
                token: comp_text.into(),
                reason: "empty component, use '.' for a crossing-free circle".into(),
            });
        }
        let mut comp = Vec::new();
        if comp_text != "." {
            for tok in comp_text.split_whitespace() {
                let (role, id, sign) = parse_token(tok)?;
                if let Some(prev) = signs.insert(id, sign) {
                    if prev != sign {
                        return Err(Error::Validation(format!(
                            "crossing {id} carries both signs"
                        )));
                    }
                }
                comp.push(match role {
                    'O' => Tok::Over(id),
                    'U' => Tok::Under(id),
                    _ => Tok::Virtual { id, lead: false },
                });
            }
        }
        raw.components.push(comp);
    }
    // the first written V token of each crossing is the reference strand
    let mut led = std::collections::BTreeSet::new();
    for comp in &mut raw.components {
        for t in comp.iter_mut() {
            if let Tok::Virtual { id, lead } = t {
                *lead = led.insert(*id);
            }
        }
    }
    raw.signs = signs;
    raw.build()
}

pub fn serialize_vgc(d: &Diagram) -> String {
    d.components()
        .iter()
        .map(|comp| {
            if comp.is_empty() {
                ".".to_string()
            } else {
                comp.iter()
                    .map(|p| {
                        let s = d.kind(p.crossing).expect("passage of a known crossing").sign();
                        format!("{}{}{}", p.role.letter(), p.crossing, s.symbol())
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}

type Key = (Role, u32, Sign);

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Partial {
    relabel: BTreeMap<CrossingId, u32>,
    tokens: Vec<Vec<Key>>,
}

impl Partial {
    fn extend(&self, d: &Diagram, c: usize, rot: usize) -> Partial {
        let comp = d.component(c);
        let len = comp.len();
        let mut next = self.relabel.len() as u32 + 1;
        let mut relabel = self.relabel.clone();
        let mut keys = Vec::with_capacity(len);
        for k in 0..len {
            let i = (k + rot) % len;
            let p = comp[i];
            let id = *relabel.entry(p.crossing).or_insert_with(|| {
                next += 1;
                next - 1
            });
            let sign = match d.kind(p.crossing).unwrap() {
                CrossingKind::Real(s) => s,
                CrossingKind::Virtual(_) => {
                    let [first, second] = d.locations(p.crossing).unwrap();
                    let lead = if first.component == second.component {
                        // after rotation, the smaller rotated offset comes first
                        let off = |l: Loc| (l.index + len - rot) % len;
                        if off(first) < off(second) { first } else { second }
                    } else {
                        first
                    };
                    d.frame_from(p.crossing, lead)
                }
            };
            keys.push((p.role, id, sign));
        }
        let mut tokens = self.tokens.clone();
        tokens.push(keys);
        Partial { relabel, tokens }
    }
}

/// Serialization minimized over basepoint rotations of every component and
/// first-appearance relabeling of crossing ids. Component order is kept.
pub fn canonical_form(d: &Diagram) -> String {
    let mut states = vec![Partial { relabel: BTreeMap::new(), tokens: Vec::new() }];
    for c in 0..d.num_components() {
        let rotations = d.component(c).len().max(1);
        let mut best: Vec<Partial> = Vec::new();
        for st in &states {
            for rot in 0..rotations {
                let cand = st.extend(d, c, rot);
                let ord = best
                    .first()
                    .map(|b| cand.tokens[c].cmp(&b.tokens[c]))
                    .unwrap_or(std::cmp::Ordering::Less);
                match ord {
                    std::cmp::Ordering::Less => best = vec![cand],
                    std::cmp::Ordering::Equal => best.push(cand),
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        best.sort();
        best.dedup();
        states = best;
    }
    let st = &states[0];
    st.tokens
        .iter()
        .map(|comp| {
            if comp.is_empty() {
                ".".to_string()
            } else {
                comp.iter()
                    .map(|(r, id, s)| format!("{}{}{}", r.letter(), id, s.symbol()))
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        })
        .collect::<Vec<_>>()
        .join(" ; ")
}
