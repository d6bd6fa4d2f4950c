//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

/// Random valid VGC codes (no planarity guarantee).
pub fn arb_code(max_crossings: usize, max_components: usize) -> impl Strategy<Value = String> {
    (0..=max_crossings, 1..=max_components)
        .prop_flat_map(|(k, m)| {
            (
                proptest::collection::vec((any::<bool>(), any::<bool>()), k),
                proptest::collection::vec(0..=2 * k, m - 1),
            )
        })
        .prop_flat_map(|(kinds, cuts)| {
            let mut toks = Vec::new();
            for (i, (real, pos)) in kinds.iter().enumerate() {
                let s = if *pos { '+' } else { '-' };
                let id = i + 1;
                if *real {
                    toks.push(format!("O{id}{s}"));
                    toks.push(format!("U{id}{s}"));
                } else {
                    toks.push(format!("V{id}{s}"));
                    toks.push(format!("V{id}{s}"));
                }
            }
            (Just(toks).prop_shuffle(), Just(cuts))
        })
        .prop_map(|(toks, mut cuts)| split_code(&toks, &mut cuts))
}

/// Random knot codes with real crossings only.
pub fn arb_real_knot(max_crossings: usize) -> impl Strategy<Value = String> {
    (0..=max_crossings)
        .prop_flat_map(|k| proptest::collection::vec(any::<bool>(), k))
        .prop_flat_map(|signs| {
            let mut toks = Vec::new();
            for (i, pos) in signs.iter().enumerate() {
                let s = if *pos { '+' } else { '-' };
                toks.push(format!("O{}{s}", i + 1));
                toks.push(format!("U{}{s}", i + 1));
            }
            Just(toks).prop_shuffle()
        })
        .prop_map(|toks| split_code(&toks, &mut Vec::new()))
}

fn split_code(toks: &[String], cuts: &mut [usize]) -> String {
    cuts.sort_unstable();
    let mut comps = Vec::new();
    let mut start = 0;
    for &c in cuts.iter() {
        comps.push(&toks[start..c.max(start)]);
        start = c.max(start);
    }
    comps.push(&toks[start..]);
    comps
        .iter()
        .map(|c| if c.is_empty() { ".".to_string() } else { c.join(" ") })
        .collect::<Vec<_>>()
        .join(" ; ")
}
