//! Exact counts of non-crossing pairings: the run recurrence with a shared
//! memo table, the symmetrized count, closed forms and the generating-function
//! fixpoint.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bitstring::{canonical_form, decompose, RunProfile, Word};
use crate::error::{Error, Result};
use crate::Count;

/// One summand of the run recurrence: the first 1 paired into zero-run `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitTerm {
    /// 1-based run index.
    pub k: usize,
    /// `(m_1 + ... + m_k) - (n_1 + ... + n_k)`.
    pub offset: i64,
    /// Integer arguments of the enclosed factor, starting with a run of ones.
    pub left_args: Vec<i64>,
    /// Integer arguments of the trailing factor, starting with a run of zeros.
    pub right_args: Vec<i64>,
}

impl SplitTerm {
    /// A term vanishes when the zero-run never reaches the first 1's height.
    pub fn vanishes(&self) -> bool {
        self.left_args.iter().chain(&self.right_args).any(|&a| a < 0)
    }
}

/// The summands of the recurrence for a strict balanced profile.
pub fn split_terms(profile: &RunProfile) -> Vec<SplitTerm> {
    let ones: Vec<i64> = profile.ones.iter().map(|&x| x as i64).collect();
    let zeros: Vec<i64> = profile.zeros.iter().map(|&x| x as i64).collect();
    let r = ones.len();
    let mut offset = 0i64;
    let mut terms = Vec::with_capacity(r);
    for k in 0..r {
        offset += zeros[k] - ones[k];
        let mut left_args = Vec::with_capacity(2 * (k + 1));
        for j in 0..=k {
            left_args.push(ones[j]);
            left_args.push(zeros[j]);
        }
        left_args[0] -= 1;
        left_args[2 * k + 1] -= offset + 1;
        let mut right_args = vec![offset];
        for j in k + 1..r {
            right_args.push(ones[j]);
            right_args.push(zeros[j]);
        }
        terms.push(SplitTerm {
            k: k + 1,
            offset,
            left_args,
            right_args,
        });
    }
    terms
}

/// Builds the word named by integer arguments. An even-length list reads
/// `n_1, m_1, ...`; an odd-length list starts with a run of zeros. Returns
/// `None` when an argument is negative.
pub fn word_from_args(args: &[i64]) -> Option<Word> {
    Word::from_signed_runs(args.len().is_multiple_of(2), args)
}

/// Moves the smallest run to the front as a run of ones, using rotation and
/// the reflect-negate symmetry. Input and output are interleaved
/// `n_1, m_1, ..., n_r, m_r`.
pub fn min_run_first(interleaved: &[usize]) -> Vec<usize> {
    if interleaved.is_empty() {
        return Vec::new();
    }
    let pos = (0..interleaved.len())
        .min_by_key(|&i| interleaved[i])
        .expect("nonempty");
    let mut seq = interleaved.to_vec();
    let mut start = pos;
    if pos % 2 == 1 {
        seq.reverse();
        start = seq.len() - 1 - pos;
    }
    seq.rotate_left(start);
    seq
}

/// Memoized evaluator for the pairing count and its symmetrized form.
///
/// The table is keyed on orbit representatives, so it is shared by all
/// rotations, reflections and negations of a word.
#[derive(Default)]
pub struct PhiEngine {
    memo: RwLock<HashMap<Word, Count>>,
    star_memo: RwLock<HashMap<Vec<usize>, Count>>,
}

static GLOBAL: LazyLock<PhiEngine> = LazyLock::new(PhiEngine::new);

impl PhiEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide engine used by the free functions.
    pub fn global() -> &'static PhiEngine {
        &GLOBAL
    }

    pub fn cached_words(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn phi(&self, w: &Word) -> Count {
        if !w.is_balanced() {
            return Count::zero();
        }
        if w.len() <= 2 {
            return Count::one();
        }
        let key = canonical_form(w);
        if let Some(hit) = self.memo.read().expect("memo lock").get(&key) {
            return hit.clone();
        }
        let value = self.expand(&key);
        self.memo
            .write()
            .expect("memo lock")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    fn expand(&self, w: &Word) -> Count {
        let (strict, _) = w.to_strict();
        let profile = decompose(&strict);
        let mut total = Count::zero();
        for term in split_terms(&profile) {
            let (Some(left), Some(right)) =
                (word_from_args(&term.left_args), word_from_args(&term.right_args))
            else {
                continue;
            };
            let left_count = self.phi(&left);
            if left_count.is_zero() {
                continue;
            }
            total += left_count * self.phi(&right);
        }
        total
    }

    pub fn phi_profile(&self, profile: &RunProfile) -> Count {
        self.phi(&profile.to_word())
    }

    /// Count for integer arguments (see [`word_from_args`]); negative
    /// arguments give 0.
    pub fn phi_args(&self, args: &[i64]) -> Count {
        match word_from_args(args) {
            Some(w) => self.phi(&w),
            None => Count::zero(),
        }
    }

    /// `phi(1^{n_1} 0^{n_1} ... 1^{n_r} 0^{n_r})` via its own recurrence.
    /// Zero entries are dropped; the empty sequence gives 1.
    pub fn phi_star(&self, ns: &[usize]) -> Count {
        let seq = star_key(ns);
        match seq.len() {
            0 | 1 => return Count::one(),
            2 => return Count::from(1 + seq[0].min(seq[1])),
            _ => {}
        }
        if let Some(hit) = self.star_memo.read().expect("memo lock").get(&seq) {
            return hit.clone();
        }
        let mut first_reduced = seq.clone();
        first_reduced[0] -= 1;
        let mut total = Count::zero();
        for i in 1..=seq.len() {
            total += self.phi_star(&first_reduced[..i]) * self.phi_star(&seq[i..]);
        }
        self.star_memo
            .write()
            .expect("memo lock")
            .entry(seq)
            .or_insert(total)
            .clone()
    }
}

/// Drops zeros and picks the smallest rotation of the sequence or its
/// reverse that starts with a minimal entry.
fn star_key(ns: &[usize]) -> Vec<usize> {
    let seq: Vec<usize> = ns.iter().copied().filter(|&x| x > 0).collect();
    if seq.len() < 2 {
        return seq;
    }
    let mut reversed = seq.clone();
    reversed.reverse();
    let min = *seq.iter().min().expect("nonempty");
    let mut best: Option<Vec<usize>> = None;
    for base in [&seq, &reversed] {
        for shift in 0..base.len() {
            if base[shift] != min {
                continue;
            }
            let mut candidate = base.to_vec();
            candidate.rotate_left(shift);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.expect("a minimal entry exists")
}

/// `phi(w)` on the shared engine.
pub fn phi(w: &Word) -> Count {
    PhiEngine::global().phi(w)
}

/// `phi` of integer arguments on the shared engine.
pub fn phi_args(args: &[i64]) -> Count {
    PhiEngine::global().phi_args(args)
}

/// Symmetrized count on the shared engine.
pub fn phi_star(ns: &[usize]) -> Count {
    PhiEngine::global().phi_star(ns)
}

/// Evaluates the symmetrized count by the subset expansion, recursing into
/// itself only (no memo, no run recurrence).
pub fn phi_star_subset_expansion(ns: &[usize]) -> Count {
    let seq = star_key(ns);
    let r = seq.len();
    match r {
        0 | 1 => return Count::one(),
        2 => return Count::from(1 + seq[0]),
        _ => {}
    }
    let first = seq[0];
    let rest = &seq[1..];
    // Split points i_1 = 1 < i_2 < ... inside [2, r-1]; segment boundaries are
    // indices into `seq` (1-based positions map to 0-based cut points).
    let inner = r - 2;
    let mut total = Count::zero();
    for mask in 0u32..(1 << inner) {
        let mut cuts = vec![1usize];
        cuts.extend((0..inner).filter(|b| mask >> b & 1 == 1).map(|b| b + 2));
        let weight = binomial(first as u64 + 1, cuts.len() as u64);
        if weight.is_zero() {
            continue;
        }
        let mut product = weight;
        for (s, &cut) in cuts.iter().enumerate() {
            let end = cuts.get(s + 1).copied().unwrap_or(r);
            product *= phi_star_subset_expansion(&rest[cut - 1..end - 1]);
        }
        total += product;
    }
    total
}

/// `1 + min{n_1, m_1, n_2, m_2}` for a balanced two-run word.
pub fn closed_form_2run(n1: u64, m1: u64, n2: u64, m2: u64) -> Result<Count> {
    if [n1, m1, n2, m2].contains(&0) {
        return Err(Error::Precondition("all run lengths must be positive".into()));
    }
    if n1 + n2 != m1 + m2 {
        return Err(Error::Unbalanced {
            ones: (n1 + n2) as usize,
            zeros: (m1 + m2) as usize,
        });
    }
    Ok(Count::from(1 + n1.min(m1).min(n2).min(m2)))
}

/// Count for `1^{n_1}0^{n_1}1^{n_2}0^{n_2}1^{n_3}0^{n_3}` from the smallest
/// two entries `i <= j`: `(i^2 + 2ij + 3i + 2j + 2) / 2`.
pub fn closed_form_3run_sym(n1: u64, n2: u64, n3: u64) -> Result<Count> {
    if [n1, n2, n3].contains(&0) {
        return Err(Error::Precondition("all run lengths must be positive".into()));
    }
    let mut sorted = [n1, n2, n3];
    sorted.sort_unstable();
    let (i, j) = (Count::from(sorted[0]), Count::from(sorted[1]));
    let twice = &i * &i + 2u32 * &i * &j + 3u32 * &i + 2u32 * &j + 2u32;
    let (value, rem) = twice.div_rem(&Count::from(2u32));
    debug_assert!(rem.is_zero());
    Ok(value)
}

pub fn binomial(n: u64, k: u64) -> Count {
    if k > n {
        return Count::zero();
    }
    num_integer::binomial(Count::from(n), Count::from(k))
}

/// `C^{(n)}_r = binom((n+1) r, r) / (n r + 1)`.
///
/// Panics if the division is not exact, which would be an arithmetic bug.
pub fn fuss_catalan(n: u64, r: u64) -> Count {
    let numerator = binomial((n + 1) * r, r);
    let (value, rem) = numerator.div_rem(&Count::from(n * r + 1));
    assert!(rem.is_zero(), "inexact Fuss-Catalan division for n={n}, r={r}");
    value
}

pub const SERIES_MAX_LEN: usize = 14;

/// Coefficients of the solution of `F = 1 + x0 F x1 F + x1 F x0 F` on every
/// word up to a fixed length.
#[derive(Clone, Debug)]
pub struct SeriesTable {
    max_len: usize,
    /// `by_len[len][code]`, where the first letter is the most significant bit.
    by_len: Vec<Vec<Count>>,
}

impl SeriesTable {
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn coefficient(&self, w: &Word) -> Option<&Count> {
        let row = self.by_len.get(w.len())?;
        Some(&row[word_code(w)])
    }
}

fn word_code(w: &Word) -> usize {
    w.bits().iter().fold(0, |acc, &b| acc << 1 | b as usize)
}

/// Solves the quadratic equation degree by degree: the coefficient of
/// `b R (1-b) T` sums products over every such factorization.
pub fn series_fixpoint(max_len: usize) -> Result<SeriesTable> {
    if max_len > SERIES_MAX_LEN {
        return Err(Error::Budget(format!(
            "series table limited to words of length {SERIES_MAX_LEN}, asked for {max_len}"
        )));
    }
    let mut by_len: Vec<Vec<Count>> = vec![vec![Count::one()]];
    for len in 1..=max_len {
        let mut row = vec![Count::zero(); 1 << len];
        for (code, slot) in row.iter_mut().enumerate() {
            let bit = |i: usize| code >> (len - 1 - i) & 1;
            let first = bit(0);
            // Split position p (0-based) holds the opposite letter; R is
            // positions 1..p and T is p+1..len.
            for p in (1..len).step_by(2) {
                if bit(p) == first {
                    continue;
                }
                let r_len = p - 1;
                let t_len = len - p - 1;
                let r_code = (code >> (len - p)) & ((1 << r_len) - 1);
                let t_code = code & ((1 << t_len) - 1);
                let (rv, tv) = (&by_len[r_len][r_code], &by_len[t_len][t_code]);
                if !rv.is_zero() && !tv.is_zero() {
                    *slot += rv * tv;
                }
            }
        }
        by_len.push(row);
    }
    Ok(SeriesTable { max_len, by_len })
}

/// Both sides of the shifted-argument identity for `ns` (first entry
/// minimal) and shift `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AphiCheck {
    #[serde(with = "crate::count_serde")]
    pub left: Count,
    #[serde(with = "crate::count_serde")]
    pub right: Count,
}

impl AphiCheck {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

pub fn aphi_sides(ns: &[usize], a: usize) -> Result<AphiCheck> {
    let Some(&first) = ns.first() else {
        return Err(Error::Precondition("empty sequence".into()));
    };
    if ns.iter().any(|&x| x < first) {
        return Err(Error::Precondition(format!("{ns:?} does not start with a minimal entry")));
    }
    if a > first {
        return Err(Error::Precondition(format!("shift {a} exceeds first entry {first}")));
    }
    let doubled: Vec<i64> = ns.iter().flat_map(|&n| [n as i64, n as i64]).collect();
    let last = doubled.len() - 1;
    let (a, n1) = (a as i64, first as i64);

    let mut left = doubled.clone();
    left[0] = n1 - a;
    left[1] = n1 - 1;
    left[last] -= a - 1;

    let mut right = doubled;
    right[0] = n1 - a;
    right[last] -= a;

    Ok(AphiCheck {
        left: phi_args(&left),
        right: phi_args(&right),
    })
}

pub fn check_aphi_identity(ns: &[usize], a: usize) -> Result<bool> {
    Ok(aphi_sides(ns, a)?.holds())
}
