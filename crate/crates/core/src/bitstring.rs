//! Bitstrings, run decompositions, symmetry actions and lattice-path heights.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`.
///
/// `Ord` is lexicographic with `0 < 1`; shorter prefixes sort first.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: Vec<bool>,
}

impl Word {
    pub fn new(bits: Vec<bool>) -> Self {
        Word { bits }
    }

    pub fn empty() -> Self {
        Word { bits: Vec::new() }
    }

    /// `bit^count`.
    pub fn block(bit: bool, count: usize) -> Self {
        Word {
            bits: vec![bit; count],
        }
    }

    /// Parses a literal such as `"110100"`.
    pub fn from_bitstring(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, c) in s.trim().chars().enumerate() {
            match c {
                '1' => bits.push(true),
                '0' => bits.push(false),
                other => {
                    return Err(Error::Parse {
                        position: i + 1,
                        message: format!("expected '0' or '1', found {other:?}"),
                    })
                }
            }
        }
        Ok(Word { bits })
    }

    /// Parses run notation `n_1,m_1,n_2,m_2,...` (an odd-length list ends
    /// with a run of ones). Exponents may be zero.
    pub fn from_run_notation(s: &str) -> Result<Self> {
        let mut runs = Vec::new();
        let mut offset = 0;
        for field in s.split(',') {
            let trimmed = field.trim();
            let lead = field.len() - field.trim_start().len();
            let value = trimmed.parse::<usize>().map_err(|_| Error::Parse {
                position: offset + lead + 1,
                message: format!("expected a nonnegative integer, found {trimmed:?}"),
            })?;
            runs.push(value);
            offset += field.len() + 1;
        }
        Ok(Word::from_runs(&runs))
    }

    /// Accepts either a literal bitstring or run notation (anything with a comma).
    pub fn parse(s: &str) -> Result<Self> {
        if s.contains(',') {
            Word::from_run_notation(s)
        } else {
            Word::from_bitstring(s)
        }
    }

    /// `1^{runs[0]} 0^{runs[1]} 1^{runs[2]} ...`
    pub fn from_runs(runs: &[usize]) -> Self {
        let mut bits = Vec::with_capacity(runs.iter().sum());
        for (i, &len) in runs.iter().enumerate() {
            bits.extend(std::iter::repeat_n(i % 2 == 0, len));
        }
        Word { bits }
    }

    /// Alternating runs starting with `first` (true = ones). Any negative
    /// exponent yields `None`, the "vanishing" convention for integer arguments.
    pub fn from_signed_runs(first: bool, runs: &[i64]) -> Option<Self> {
        let mut bits = Vec::new();
        for (i, &len) in runs.iter().enumerate() {
            if len < 0 {
                return None;
            }
            let bit = if i % 2 == 0 { first } else { !first };
            bits.extend(std::iter::repeat_n(bit, len as usize));
        }
        Some(Word { bits })
    }

    /// `(1^n 0^n)^r`
    pub fn regular(n: usize, r: usize) -> Self {
        Word::from_runs(&vec![n; 2 * r])
    }

    /// `1^{n_1} 0^{n_1} ... 1^{n_r} 0^{n_r}`
    pub fn doubled(ns: &[usize]) -> Self {
        let runs: Vec<usize> = ns.iter().flat_map(|&n| [n, n]).collect();
        Word::from_runs(&runs)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn zeros(&self) -> usize {
        self.len() - self.ones()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.ones() == self.len()
    }

    /// Starts with 1 and ends with 0.
    pub fn is_strict(&self) -> bool {
        self.bits.first() == Some(&true) && self.bits.last() == Some(&false)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut bits = self.bits.clone();
        bits.extend_from_slice(&other.bits);
        Word { bits }
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word {
            bits: self.bits[start..end].to_vec(),
        }
    }

    /// Moves the first `shift` bits to the end.
    pub fn rotated_left(&self, shift: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let mut bits = self.bits.clone();
        bits.rotate_left(shift % self.len());
        Word { bits }
    }

    /// `Rot_k(S) = s_k s_{k+1} ... s_{2n} s_1 ... s_{k-1}` for `1 <= k <= len`.
    pub fn rotate(&self, k: usize) -> Result<Word> {
        if k == 0 || k > self.len() {
            return Err(Error::RotationOutOfRange { k, len: self.len() });
        }
        Ok(self.rotated_left(k - 1))
    }

    pub fn reflect(&self) -> Word {
        let mut bits = self.bits.clone();
        bits.reverse();
        Word { bits }
    }

    pub fn negate(&self) -> Word {
        Word {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn leading_zeros(&self) -> usize {
        self.bits.iter().take_while(|&&b| !b).count()
    }

    /// Rotates leading zeros to the end. A balanced nonempty word comes out
    /// strict. Returns the rotated word and the shift used.
    pub fn to_strict(&self) -> (Word, usize) {
        let shift = if self.bits.iter().any(|&b| b) {
            self.leading_zeros()
        } else {
            0
        };
        (self.rotated_left(shift), shift)
    }

    pub fn profile(&self) -> RunProfile {
        decompose(self)
    }

    /// Run notation `n_1,m_1,...`; a word starting with 0 gets `n_1 = 0`.
    pub fn run_notation(&self) -> String {
        let p = decompose(self);
        let mut fields = Vec::new();
        if p.leading_zeros > 0 {
            fields.push(0);
            fields.push(p.leading_zeros);
        }
        for (n, m) in p.ones.iter().zip(&p.zeros) {
            fields.push(*n);
            fields.push(*m);
        }
        fields
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(\"{self}\")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Word::from_bitstring(&text).map_err(serde::de::Error::custom)
    }
}

/// Run decomposition `0^{m_0} 1^{n_1} 0^{m_1} ... 1^{n_r} 0^{m_r}`.
///
/// Only `m_0` and `m_r` may be zero in a decomposition produced by
/// [`decompose`]; hand-built profiles may contain interior zeros, which
/// [`RunProfile::to_word`] merges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunProfile {
    pub leading_zeros: usize,
    pub ones: Vec<usize>,
    pub zeros: Vec<usize>,
}

impl RunProfile {
    pub fn new(ones: Vec<usize>, zeros: Vec<usize>) -> Self {
        RunProfile {
            leading_zeros: 0,
            ones,
            zeros,
        }
    }

    /// From interleaved run notation `n_1, m_1, ..., n_r, m_r`.
    pub fn from_interleaved(runs: &[usize]) -> Self {
        let ones = runs.iter().step_by(2).copied().collect::<Vec<_>>();
        let mut zeros = runs.iter().skip(1).step_by(2).copied().collect::<Vec<_>>();
        zeros.resize(ones.len(), 0);
        RunProfile::new(ones, zeros)
    }

    pub fn runs(&self) -> usize {
        self.ones.len()
    }

    /// Half-length `n` when balanced.
    pub fn total_ones(&self) -> usize {
        self.ones.iter().sum()
    }

    pub fn total_zeros(&self) -> usize {
        self.leading_zeros + self.zeros.iter().sum::<usize>()
    }

    pub fn is_balanced(&self) -> bool {
        self.total_ones() == self.total_zeros()
    }

    pub fn is_strict(&self) -> bool {
        self.leading_zeros == 0
            && !self.ones.is_empty()
            && self.ones.iter().all(|&n| n > 0)
            && self.zeros.iter().all(|&m| m > 0)
    }

    pub fn interleaved(&self) -> Vec<usize> {
        self.ones
            .iter()
            .zip(&self.zeros)
            .flat_map(|(&n, &m)| [n, m])
            .collect()
    }

    pub fn to_word(&self) -> Word {
        let mut w = Word::block(false, self.leading_zeros);
        w = w.concat(&Word::from_runs(&self.interleaved()));
        w
    }
}

/// Reads off the run decomposition of `w`.
pub fn decompose(w: &Word) -> RunProfile {
    let bits = w.bits();
    let leading_zeros = w.leading_zeros();
    let mut ones = Vec::new();
    let mut zeros = Vec::new();
    let mut i = leading_zeros;
    while i < bits.len() {
        let start = i;
        while i < bits.len() && bits[i] {
            i += 1;
        }
        ones.push(i - start);
        let start = i;
        while i < bits.len() && !bits[i] {
            i += 1;
        }
        zeros.push(i - start);
    }
    RunProfile {
        leading_zeros,
        ones,
        zeros,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    /// `Rot_k`, `1 <= k <= len`.
    Rotate(usize),
    Reflect,
    Negate,
}

pub fn apply_symmetry(w: &Word, sym: Symmetry) -> Result<Word> {
    match sym {
        Symmetry::Rotate(k) => w.rotate(k),
        Symmetry::Reflect => Ok(w.reflect()),
        Symmetry::Negate => Ok(w.negate()),
    }
}

/// All `4 * len` images of `w` under rotations, reflection and negation
/// (with repetitions when the word has internal symmetry).
pub fn orbit(w: &Word) -> Vec<Word> {
    let bases = [w.clone(), w.reflect(), w.negate(), w.reflect().negate()];
    let mut out = Vec::with_capacity(4 * w.len().max(1));
    for base in &bases {
        if base.is_empty() {
            out.push(base.clone());
            continue;
        }
        for shift in 0..base.len() {
            out.push(base.rotated_left(shift));
        }
    }
    out
}

/// Lattice-path heights of a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightProfile {
    pub heights: Vec<usize>,
    pub max_height: usize,
    /// The minimum `m` of the partial sums `Y_0 = 0, Y_1, ..., Y_len`.
    pub min_shift: i64,
}

/// `h_i = Y_i - m` on a 1 and `Y_i - m + 1` on a 0, where `Y` is the lattice
/// path (`1` up, `0` down).
///
/// The minimum includes `Y_0 = 0`, which changes nothing for balanced words
/// and keeps the lowest height at 1 for unbalanced ones.
pub fn heights(w: &Word) -> HeightProfile {
    if w.is_empty() {
        return HeightProfile {
            heights: Vec::new(),
            max_height: 0,
            min_shift: 0,
        };
    }
    let mut y = 0i64;
    let mut path = Vec::with_capacity(w.len());
    let mut min = 0i64;
    for &b in w.bits() {
        y += if b { 1 } else { -1 };
        min = min.min(y);
        path.push(y);
    }
    let heights: Vec<usize> = path
        .iter()
        .zip(w.bits())
        .map(|(&y, &b)| (if b { y - min } else { y - min + 1 }) as usize)
        .collect();
    let max_height = heights.iter().copied().max().unwrap_or(0);
    HeightProfile {
        heights,
        max_height,
        min_shift: min,
    }
}

/// Compares rotation `shift` of `bits` with rotation `best` without allocating.
fn cmp_rotations(bits: &[bool], a: usize, b: usize) -> Ordering {
    let n = bits.len();
    for i in 0..n {
        let x = bits[(a + i) % n];
        let y = bits[(b + i) % n];
        match x.cmp(&y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn min_rotation(w: &Word) -> Word {
    if w.is_empty() {
        return w.clone();
    }
    let bits = w.bits();
    let mut best = 0;
    for shift in 1..bits.len() {
        if cmp_rotations(bits, shift, best) == Ordering::Less {
            best = shift;
        }
    }
    w.rotated_left(best)
}

/// Lexicographically minimal word in the symmetry orbit of `w`.
pub fn canonical_form(w: &Word) -> Word {
    let reflected = w.reflect();
    [
        min_rotation(w),
        min_rotation(&reflected),
        min_rotation(&w.negate()),
        min_rotation(&reflected.negate()),
    ]
    .into_iter()
    .min()
    .expect("four candidates")
}

/// Levels the unique tallest peak down to the second-tallest one, and the
/// unique lowest valley up to the second-lowest one, deleting equally many
/// 1s and 0s at the extremum. Ties leave that side untouched.
///
/// Works on the cyclic word: the result is returned in strict form
/// (leading zeros of the input rotated to the end).
pub fn peak_reduce(w: &Word) -> Result<Word> {
    if !w.is_balanced() {
        return Err(Error::Unbalanced {
            ones: w.ones(),
            zeros: w.zeros(),
        });
    }
    if w.is_empty() {
        return Ok(w.clone());
    }
    let (strict, _) = w.to_strict();
    let profile = decompose(&strict);
    let mut ones = profile.ones.clone();
    let mut zeros = profile.zeros.clone();
    let r = ones.len();
    if r < 2 {
        return Ok(strict);
    }

    // Y after each 1-run (peaks) and after each 0-run (valleys).
    let mut peaks = Vec::with_capacity(r);
    let mut valleys = Vec::with_capacity(r);
    let mut y = 0i64;
    for k in 0..r {
        y += ones[k] as i64;
        peaks.push(y);
        y -= zeros[k] as i64;
        valleys.push(y);
    }

    if let Some((k, excess)) = unique_extreme(&peaks, true) {
        ones[k] -= excess;
        zeros[k] -= excess;
    }
    if let Some((k, excess)) = unique_extreme(&valleys, false) {
        // Valley k sits between 0-run k and 1-run k+1 (cyclically).
        zeros[k] -= excess;
        ones[(k + 1) % r] -= excess;
    }
    let runs: Vec<usize> = ones.iter().zip(&zeros).flat_map(|(&n, &m)| [n, m]).collect();
    Ok(Word::from_runs(&runs))
}

/// Index of the unique maximum (or minimum) and its gap to the runner-up.
fn unique_extreme(levels: &[i64], highest: bool) -> Option<(usize, usize)> {
    let key = |v: i64| if highest { v } else { -v };
    let best = levels.iter().copied().map(key).max()?;
    let holders: Vec<usize> = (0..levels.len())
        .filter(|&i| key(levels[i]) == best)
        .collect();
    if holders.len() != 1 {
        return None;
    }
    let second = levels
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != holders[0])
        .map(|(_, &v)| key(v))
        .max()?;
    Some((holders[0], (best - second) as usize))
}

/// Compositions of `n` into `parts` positive parts, in lexicographic order.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if remaining < parts {
            return;
        }
        let max_first = remaining - (parts - 1);
        for first in 1..=max_first {
            prefix.push(first);
            rec(remaining - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 && n != 0 {
        return out;
    }
    rec(n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Weak compositions of `n` into `parts` nonnegative parts, lexicographic.
pub fn weak_compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    compositions(n + parts, parts)
        .into_iter()
        .map(|c| c.into_iter().map(|x| x - 1).collect())
        .collect()
}

/// All strict words `1^{n_1} 0^{m_1} ... 1^{n_r} 0^{m_r}` of half-length `n`
/// with exactly `r` runs: `C(n-1, r-1)^2` of them. Ones-composition varies
/// slowest.
pub fn generate_balanced(n: usize, r: usize) -> impl Iterator<Item = Word> {
    let parts = if r == 0 || r > n {
        Vec::new()
    } else {
        compositions(n, r)
    };
    let zero_parts = parts.clone();
    parts.into_iter().flat_map(move |ones| {
        zero_parts.clone().into_iter().map(move |zeros| {
            Word::from_runs(&RunProfile::new(ones.clone(), zeros).interleaved())
        })
    })
}

/// Every word of length `len`, in increasing binary order.
pub fn all_words(len: usize) -> impl Iterator<Item = Word> {
    assert!(len < 64, "word length {len} too large to enumerate");
    (0u64..(1u64 << len)).map(move |code| {
        Word::new((0..len).rev().map(|i| code >> i & 1 == 1).collect())
    })
}

/// Every balanced word of length `2n`.
pub fn balanced_words(n: usize) -> impl Iterator<Item = Word> {
    all_words(2 * n).filter(Word::is_balanced)
}
