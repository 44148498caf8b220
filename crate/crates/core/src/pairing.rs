//! Pairings of word positions: validation, exhaustive enumeration, a naive
//! counting oracle and the first-return pairing.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use itertools::Itertools;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::bitstring::{heights, Word};
use crate::error::{Error, Result};
use crate::Count;

/// Longest word the naive oracle will accept.
pub const ORACLE_LIMIT: usize = 16;

/// A perfect matching of the positions `1..=len`.
///
/// Pairs are stored 1-based as `(smaller, larger)` and sorted by the smaller
/// endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pairing {
    pairs: Vec<(usize, usize)>,
    len: usize,
}

impl Pairing {
    /// Builds a pairing on `1..=len`, checking that every position occurs once.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>, len: usize) -> Result<Self> {
        let mut seen = vec![false; len + 1];
        let mut normalized = Vec::new();
        for (a, b) in pairs {
            let (lo, hi) = (a.min(b), a.max(b));
            if lo == 0 || hi > len || lo == hi {
                return Err(Error::InvalidPairing(format!(
                    "pair ({a},{b}) is not two distinct positions in 1..={len}"
                )));
            }
            for p in [lo, hi] {
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidPairing(format!("position {p} used twice")));
                }
            }
            normalized.push((lo, hi));
        }
        if let Some(p) = (1..=len).find(|&p| !seen[p]) {
            return Err(Error::InvalidPairing(format!("position {p} is unpaired")));
        }
        normalized.sort_unstable();
        Ok(Pairing {
            pairs: normalized,
            len,
        })
    }

    fn from_sorted_unchecked(mut pairs: Vec<(usize, usize)>, len: usize) -> Self {
        pairs.sort_unstable();
        Pairing { pairs, len }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn word_length(&self) -> usize {
        self.len
    }

    /// Partner of a 1-based position.
    pub fn partner(&self, pos: usize) -> Option<usize> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == pos {
                Some(b)
            } else if b == pos {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Partner table indexed by 1-based position (entry 0 unused).
    pub fn partner_table(&self) -> Vec<usize> {
        let mut table = vec![0; self.len + 1];
        for &(a, b) in &self.pairs {
            table[a] = b;
            table[b] = a;
        }
        table
    }

    pub fn is_noncrossing(&self) -> bool {
        is_noncrossing(self)
    }
}

/// True iff no two pairs `(a, b)`, `(c, d)` satisfy `a < c < b < d`.
pub fn is_noncrossing(p: &Pairing) -> bool {
    // Scan left to right with a stack of open pairs: a closing endpoint must
    // match the most recently opened pair.
    let table = p.partner_table();
    let mut open = Vec::new();
    for (pos, &other) in table.iter().enumerate().skip(1) {
        if other > pos {
            open.push(pos);
        } else if open.pop() != Some(other) {
            return false;
        }
    }
    true
}

/// True iff every pair joins a 1 and a 0 of `w`.
pub fn is_word_pairing(p: &Pairing, w: &Word) -> Result<bool> {
    if p.len != w.len() {
        return Err(Error::LengthMismatch {
            left: p.len,
            right: w.len(),
        });
    }
    let bits = w.bits();
    Ok(p.pairs.iter().all(|&(a, b)| bits[a - 1] != bits[b - 1]))
}

/// True iff `p` is a non-crossing word pairing of `w` and each pair joins
/// positions of equal height.
pub fn respects_heights(p: &Pairing, w: &Word) -> bool {
    let h = heights(w);
    p.len == w.len() && p.pairs.iter().all(|&(a, b)| h.heights[a - 1] == h.heights[b - 1])
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.pairs.iter().map(|(a, b)| format!("{a}-{b}")).join(",");
        f.write_str(&text)
    }
}

impl FromStr for Pairing {
    type Err = Error;

    /// Parses `"1-4,2-3"`; the word length is twice the number of pairs.
    fn from_str(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut offset = 1;
        for field in s.split(',').filter(|f| !f.trim().is_empty()) {
            let parsed = field
                .trim()
                .split_once('-')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
            match parsed {
                Some(pair) => pairs.push(pair),
                None => {
                    return Err(Error::Parse {
                        position: offset,
                        message: format!("expected a pair like 1-4, found {:?}", field.trim()),
                    })
                }
            }
            offset += field.len() + 1;
        }
        let len = 2 * pairs.len();
        Pairing::new(pairs, len)
    }
}

impl Serialize for Pairing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.pairs.len()))?;
        for &(a, b) in &self.pairs {
            seq.serialize_element(&[a, b])?;
        }
        seq.end()
    }
}

/// Visits every non-crossing pairing of `w` until `visit` breaks.
///
/// Position `lo` of the current interval is tried against partners from left
/// to right; the enclosed interval is then filled before the one to the
/// right. Unbalanced words have no pairings.
pub fn for_each_pairing<F>(w: &Word, mut visit: F)
where
    F: FnMut(&Pairing) -> ControlFlow<()>,
{
    if !w.is_balanced() {
        return;
    }
    let bits = w.bits();
    let mut prefix = vec![0i64; bits.len() + 1];
    for (i, &b) in bits.iter().enumerate() {
        prefix[i + 1] = prefix[i] + if b { 1 } else { -1 };
    }
    let mut pending = vec![(0usize, bits.len())];
    let mut pairs = Vec::with_capacity(bits.len() / 2);
    let _ = fill(bits, &prefix, &mut pending, &mut pairs, &mut visit);
}

fn fill<F>(
    bits: &[bool],
    prefix: &[i64],
    pending: &mut Vec<(usize, usize)>,
    pairs: &mut Vec<(usize, usize)>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&Pairing) -> ControlFlow<()>,
{
    let Some((lo, hi)) = pending.pop() else {
        let p = Pairing::from_sorted_unchecked(pairs.clone(), bits.len());
        return visit(&p);
    };
    if lo == hi {
        let flow = fill(bits, prefix, pending, pairs, visit);
        pending.push((lo, hi));
        return flow;
    }
    // Partner j of lo (0-based, half-open [lo, hi)): opposite bit and the
    // enclosed stretch lo+1..j balanced.
    let mut flow = ControlFlow::Continue(());
    for j in (lo + 1..hi).step_by(2) {
        if bits[j] == bits[lo] || prefix[j] != prefix[lo + 1] {
            continue;
        }
        pairs.push((lo + 1, j + 1));
        pending.push((j + 1, hi));
        pending.push((lo + 1, j));
        flow = fill(bits, prefix, pending, pairs, visit);
        pending.pop();
        pending.pop();
        pairs.pop();
        if flow.is_break() {
            break;
        }
    }
    pending.push((lo, hi));
    flow
}

/// All of `NC_2(w)` in enumeration order.
pub fn enumerate_pairings(w: &Word) -> Vec<Pairing> {
    let mut out = Vec::new();
    for_each_pairing(w, |p| {
        out.push(p.clone());
        ControlFlow::Continue(())
    });
    out
}

/// Counts `NC_2(w)` by trying every bijection from 1-positions to 0-positions
/// and discarding the crossing ones. Refuses words longer than
/// [`ORACLE_LIMIT`].
pub fn oracle_count(w: &Word) -> Result<Count> {
    if w.len() > ORACLE_LIMIT {
        return Err(Error::OracleLimit {
            len: w.len(),
            limit: ORACLE_LIMIT,
        });
    }
    if !w.is_balanced() {
        return Ok(Count::from(0u32));
    }
    let ones: Vec<usize> = (1..=w.len()).filter(|&i| w.bits()[i - 1]).collect();
    let zeros: Vec<usize> = (1..=w.len()).filter(|&i| !w.bits()[i - 1]).collect();
    let mut count = 0u64;
    for image in zeros.iter().copied().permutations(zeros.len()) {
        let pairs: Vec<(usize, usize)> = ones
            .iter()
            .zip(&image)
            .map(|(&a, &b)| (a.min(b), a.max(b)))
            .collect();
        let crossing = pairs.iter().tuple_combinations().any(|(&(a, b), &(c, d))| {
            (a < c && c < b && b < d) || (c < a && a < d && d < b)
        });
        if !crossing {
            count += 1;
        }
    }
    Ok(Count::from(count))
}

/// Checks that every prefix of `w` has at least as many 1s as 0s and that the
/// totals agree.
pub fn check_catalan(w: &Word) -> Result<()> {
    let (mut ones, mut zeros) = (0, 0);
    for (i, &b) in w.bits().iter().enumerate() {
        if b {
            ones += 1;
        } else {
            zeros += 1;
        }
        if zeros > ones {
            return Err(Error::NotCatalan {
                position: i + 1,
                ones,
                zeros,
            });
        }
    }
    if ones != zeros {
        return Err(Error::Unbalanced { ones, zeros });
    }
    Ok(())
}

/// Pairs each 1 with the first later position of the same height.
pub fn first_return(w: &Word) -> Result<Pairing> {
    check_catalan(w)?;
    let h = heights(w).heights;
    let mut pairs = Vec::with_capacity(w.len() / 2);
    for i in 0..w.len() {
        if !w.bits()[i] {
            continue;
        }
        let j = (i + 1..w.len())
            .find(|&j| h[j] == h[i])
            .expect("a Catalan word returns to every level it leaves");
        debug_assert!(!w.bits()[j]);
        pairs.push((i + 1, j + 1));
    }
    Pairing::new(pairs, w.len())
}
