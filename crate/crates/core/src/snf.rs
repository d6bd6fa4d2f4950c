//! Smith normal form over the integers, in exact arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Snf {
    /// Nonzero invariant factors d_1 | d_2 | … | d_rank, all positive.
    #[serde(serialize_with = "ser_big")]
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

fn ser_big<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

pub fn smith_normal_form<T: Clone + Into<BigInt>>(m: &[Vec<T>]) -> Snf {
    let mut a: Vec<Vec<BigInt>> =
        m.iter().map(|row| row.iter().cloned().map(Into::into).collect()).collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let Some((pi, pj)) = min_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut again = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                sub_row(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    again = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    again = true;
                }
            }
            if again {
                continue;
            }
            // pivot must divide the whole remaining block
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t].iter_mut().zip(&tail[0]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    let rank = diagonal.len();
    Snf { diagonal, rank }
}

fn min_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.as_ref().is_none_or(|(_, _, b)| x.abs() < *b) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn sub_row(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    let pivot_row = a[t].clone();
    for (x, p) in a[i].iter_mut().zip(&pivot_row) {
        *x -= p * q;
    }
}

impl Snf {
    /// Number of solutions of A·x ≡ 0 (mod n) with `unknowns` entries in x.
    pub fn solutions_mod(&self, unknowns: usize, n: u64) -> BigUint {
        let n_big = BigInt::from(n);
        let mut count = BigUint::from(n).pow((unknowns - self.rank) as u32);
        for d in &self.diagonal {
            count *= d.gcd(&n_big).magnitude();
        }
        count
    }
}
