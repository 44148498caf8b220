//! Catalan words, domination, and the maps between non-crossing pairings,
//! labeled trees and Catalan words.

use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::bitstring::{weak_compositions, Word};
use crate::error::{Error, Result};
use crate::pairing::{first_return, is_noncrossing, is_word_pairing, Pairing};
use crate::trees::{is_weakly_increasing, DegreeSequence, Label, LabeledTree, PlaneTree};
use crate::Count;

/// The word `1^{n_1} 0^{m_1} ... 1^{n_r} 0^{m_r}` with `ones` dominating
/// `zeros` and equal totals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalanWord {
    ones: Vec<usize>,
    zeros: Vec<usize>,
}

impl CatalanWord {
    pub fn new(ones: Vec<usize>, zeros: Vec<usize>) -> Result<Self> {
        if ones.len() != zeros.len() {
            return Err(Error::LengthMismatch {
                left: ones.len(),
                right: zeros.len(),
            });
        }
        if ones.contains(&0) {
            return Err(Error::Precondition("ones exponents must be positive".into()));
        }
        let (mut a, mut b) = (0, 0);
        for (i, (&n, &m)) in ones.iter().zip(&zeros).enumerate() {
            a += n;
            b += m;
            if b > a {
                return Err(Error::NotCatalan {
                    position: i + 1,
                    ones: a,
                    zeros: b,
                });
            }
        }
        if a != b {
            return Err(Error::Unbalanced { ones: a, zeros: b });
        }
        Ok(CatalanWord { ones, zeros })
    }

    /// Reads the zero exponents of `word` against the block sizes `ones`.
    pub fn from_word(word: &Word, ones: &[usize]) -> Result<Self> {
        let (lead, zeros) = split_zeros(word, ones)?;
        if lead > 0 {
            return Err(Error::NotCatalan {
                position: 1,
                ones: 0,
                zeros: 1,
            });
        }
        CatalanWord::new(ones.to_vec(), zeros)
    }

    pub fn ones(&self) -> &[usize] {
        &self.ones
    }

    pub fn zeros(&self) -> &[usize] {
        &self.zeros
    }

    pub fn word(&self) -> Word {
        let runs: Vec<usize> = self.ones.iter().zip(&self.zeros).flat_map(|(&n, &m)| [n, m]).collect();
        Word::from_runs(&runs)
    }
}

impl fmt::Display for CatalanWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields: Vec<String> = self
            .ones
            .iter()
            .zip(&self.zeros)
            .flat_map(|(n, m)| [n.to_string(), m.to_string()])
            .collect();
        f.write_str(&fields.join(","))
    }
}

impl Serialize for CatalanWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Splits `word` as `0^{m_0} 1^{n_1} 0^{m_1} ... 1^{n_r} 0^{m_r}` for the
/// given block sizes. Fails when the 1s cannot be cut into those blocks.
pub fn split_zeros(word: &Word, ones: &[usize]) -> Result<(usize, Vec<usize>)> {
    let bits = word.bits();
    let mut pos = 0;
    let mut count_zeros = || {
        let start = pos;
        while pos < bits.len() && !bits[pos] {
            pos += 1;
        }
        pos - start
    };
    let lead = count_zeros();
    let mut zeros = Vec::with_capacity(ones.len());
    for (i, &n) in ones.iter().enumerate() {
        for _ in 0..n {
            if pos >= bits.len() || !bits[pos] {
                return Err(Error::Precondition(format!(
                    "{word} does not contain block {} of {ones:?} as a run of 1s",
                    i + 1
                )));
            }
            pos += 1;
        }
        let start = pos;
        while pos < bits.len() && !bits[pos] {
            pos += 1;
        }
        zeros.push(pos - start);
    }
    if pos != bits.len() {
        return Err(Error::Precondition(format!("{word} has more 1s than {ones:?}")));
    }
    Ok((lead, zeros))
}

/// Which words over fixed block sizes `n` a family holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyKind {
    /// `0^{m_0} 1^{n_1} 0^{m_1} ... 1^{n_r} 0^{m_r}`, balanced, `m_i >= 0`.
    Free,
    /// `0^a 1^{n_1} 0^{n_1} ... 1^{n_r} 0^{n_r - a}`, `0 <= a <= n_r`.
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WordFamily {
    pub base: Vec<usize>,
    pub kind: FamilyKind,
}

impl WordFamily {
    pub fn free(base: &[usize]) -> Self {
        WordFamily {
            base: base.to_vec(),
            kind: FamilyKind::Free,
        }
    }

    pub fn symmetric(base: &[usize]) -> Self {
        WordFamily {
            base: base.to_vec(),
            kind: FamilyKind::Symmetric,
        }
    }

    /// Members in a fixed order; `max_leading` caps `m_0` for the free family.
    pub fn members(&self, max_leading: Option<usize>) -> Vec<Word> {
        let total: usize = self.base.iter().sum();
        match self.kind {
            FamilyKind::Free => weak_compositions(total, self.base.len() + 1)
                .into_iter()
                .filter(|m| max_leading.is_none_or(|cap| m[0] <= cap))
                .map(|m| {
                    let mut word = Word::block(false, m[0]);
                    for (n, z) in self.base.iter().zip(&m[1..]) {
                        word = word.concat(&Word::block(true, *n)).concat(&Word::block(false, *z));
                    }
                    word
                })
                .collect(),
            FamilyKind::Symmetric => {
                let last = self.base.last().copied().unwrap_or(0);
                (0..=last)
                    .map(|a| Word::block(false, a).concat(&Word::doubled(&self.base)).slice(0, 2 * total))
                    .collect()
            }
        }
    }

    pub fn contains(&self, word: &Word) -> bool {
        match self.kind {
            FamilyKind::Free => word.is_balanced() && split_zeros(word, &self.base).is_ok(),
            FamilyKind::Symmetric => self.members(None).contains(word),
        }
    }
}

/// Every prefix sum of `a` is at least the matching prefix sum of `b`.
pub fn dominates(a: &[i64], b: &[i64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let (mut sa, mut sb) = (0i64, 0i64);
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa < sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Rot_i` of a sequence: `(a_i, ..., a_r, a_1, ..., a_{i-1})`.
pub fn rotate_seq<T: Clone>(seq: &[T], i: usize) -> Vec<T> {
    let mut out = seq.to_vec();
    if !out.is_empty() {
        out.rotate_left((i - 1) % seq.len());
    }
    out
}

/// A 1-based rotation index `i` with `Rot_i(g)` dominating `Rot_i(f)`,
/// found as the first minimum of the partial sums of
/// `r (g - f) - (sum g - sum f)`.
pub fn cyclic_dom_rotation(f: &[i64], g: &[i64]) -> Result<usize> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    if f.is_empty() {
        return Ok(1);
    }
    let slack = g.iter().sum::<i64>() - f.iter().sum::<i64>();
    if slack < 0 {
        return Err(Error::Precondition(format!(
            "sum of {f:?} exceeds sum of {g:?}"
        )));
    }
    let r = f.len() as i64;
    let mut partial = 0i64;
    let mut best = (0i64, 1usize);
    for i in 1..f.len() {
        partial += r * (g[i - 1] - f[i - 1]) - slack;
        if partial < best.0 {
            best = (partial, i + 1);
        }
    }
    Ok(best.1)
}

/// `|CF(n)|` by a dynamic program over the running total of zeros.
pub fn count_cf(ns: &[usize]) -> Count {
    let total: usize = ns.iter().sum();
    if ns.is_empty() {
        return Count::from(1u32);
    }
    // ways[s]: zero totals s reachable so far.
    let mut ways = vec![Count::zero(); total + 1];
    ways[0] = Count::from(1u32);
    let mut ones = 0;
    for (i, &n) in ns.iter().enumerate() {
        ones += n;
        let cap = if i + 1 == ns.len() { total } else { ones };
        let mut next = vec![Count::zero(); total + 1];
        // next[t] = sum of ways[s] for s <= t, restricted to t <= cap.
        let mut running = Count::zero();
        for t in 0..=cap {
            running += &ways[t];
            next[t] = running.clone();
        }
        ways = next;
    }
    ways[total].clone()
}

/// All of `CF(n)`, zero exponents in lexicographic order.
pub fn enumerate_cf(ns: &[usize]) -> Vec<CatalanWord> {
    fn rec(ns: &[usize], ones: usize, zeros: usize, prefix: &mut Vec<usize>, out: &mut Vec<CatalanWord>) {
        let i = prefix.len();
        let total: usize = ns.iter().sum();
        if i == ns.len() {
            out.push(CatalanWord {
                ones: ns.to_vec(),
                zeros: prefix.clone(),
            });
            return;
        }
        let ones = ones + ns[i];
        let range = if i + 1 == ns.len() {
            (total - zeros)..=(total - zeros)
        } else {
            0..=(ones - zeros)
        };
        for m in range {
            prefix.push(m);
            rec(ns, ones, zeros + m, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(ns, 0, 0, &mut Vec::with_capacity(ns.len()), &mut out);
    out
}

/// Builds a labeled tree from depth-first degrees and labels.
fn assemble(degrees: Vec<usize>, labels: Vec<Label>) -> Result<LabeledTree> {
    let tree = PlaneTree::from_degrees(&DegreeSequence::new(degrees)?);
    Ok(LabeledTree { tree, labels })
}

/// The injection from `NC_2(w)` into labeled trees with weights `n`, for
/// `w` in the free family over `n`.
pub fn pairing_to_labeled_tree(w: &Word, ns: &[usize], pairing: &Pairing) -> Result<LabeledTree> {
    if !w.is_balanced() || split_zeros(w, ns).is_err() {
        return Err(Error::Precondition(format!("{w} is not a balanced word over blocks {ns:?}")));
    }
    if !is_noncrossing(pairing) {
        return Err(Error::InvalidPairing(format!("{pairing} is crossing")));
    }
    if !is_word_pairing(pairing, w)? {
        return Err(Error::InvalidPairing(format!("{pairing} pairs equal letters of {w}")));
    }
    let partner: Vec<usize> = pairing.partner_table()[1..].iter().map(|&p| p - 1).collect();
    let (degrees, labels) = forward(w.bits(), ns, &partner);
    assemble(degrees, labels)
}

/// `partner[p]` is the 0-based partner of position `p` within `bits`.
fn forward(bits: &[bool], ns: &[usize], partner: &[usize]) -> (Vec<usize>, Vec<Label>) {
    let len = bits.len();
    let shift = bits.iter().take_while(|&&b| !b).count();
    let to_rotated = |p: usize| (p + len - shift) % len;
    let rotated_bits: Vec<bool> = (0..len).map(|p| bits[(p + shift) % len]).collect();
    let rotated_partner: Vec<usize> = (0..len).map(|p| to_rotated(partner[(p + shift) % len])).collect();

    let n1 = ns[0];
    let mut in_y = vec![false; len];
    for x in 0..n1 {
        in_y[rotated_partner[x]] = true;
    }
    let mut root = vec![0usize];
    let mut gaps: Vec<(usize, usize)> = Vec::new();
    let mut p = n1;
    while p < len {
        if in_y[p] {
            *root.last_mut().expect("root label") += 1;
            p += 1;
        } else {
            let start = p;
            while p < len && !in_y[p] {
                p += 1;
            }
            gaps.push((start, p));
            root.push(0);
        }
    }

    let mut degrees = vec![gaps.len()];
    let mut labels = vec![Label(root)];
    let mut next_block = 1;
    for (start, end) in gaps {
        let sub_bits = &rotated_bits[start..end];
        let ones = sub_bits.iter().filter(|&&b| b).count();
        let first_block = next_block;
        let mut taken = 0;
        while taken < ones {
            taken += ns[next_block];
            next_block += 1;
        }
        debug_assert_eq!(taken, ones, "gaps hold whole blocks");
        let sub_partner: Vec<usize> = (start..end).map(|q| rotated_partner[q] - start).collect();
        let (d, l) = forward(sub_bits, &ns[first_block..next_block], &sub_partner);
        degrees.extend(d);
        labels.extend(l);
    }
    (degrees, labels)
}

/// Rebuilds the pairing of `w` whose labeled tree is `tree`. Requires `n`
/// weakly increasing and `w` in the symmetric family over `n`, where the
/// map is a bijection.
pub fn labeled_tree_to_pairing(w: &Word, ns: &[usize], tree: &LabeledTree) -> Result<Pairing> {
    if !is_weakly_increasing(ns) {
        return Err(Error::Precondition(format!("{ns:?} is not weakly increasing")));
    }
    if !WordFamily::symmetric(ns).contains(w) {
        return Err(Error::Precondition(format!("{w} is not a symmetric word over {ns:?}")));
    }
    if !tree.is_consistent() || tree.weights() != ns {
        return Err(Error::Precondition("tree labels do not match the weights".into()));
    }
    let mut pairs = Vec::with_capacity(w.len() / 2);
    backward(w.bits(), ns, tree.tree.degrees(), &tree.labels, 0, &mut pairs)?;
    let pairing = Pairing::new(pairs.into_iter().map(|(a, b)| (a + 1, b + 1)), w.len())?;
    if pairing_to_labeled_tree(w, ns, &pairing)? != *tree {
        return Err(Error::IdentityViolation(format!(
            "reconstructed pairing {pairing} of {w} does not map back to its tree"
        )));
    }
    Ok(pairing)
}

/// Appends 0-based pairs (offset by `base`) for the sub-word `bits`.
fn backward(
    bits: &[bool],
    ns: &[usize],
    degrees: &[usize],
    labels: &[Label],
    base: usize,
    pairs: &mut Vec<(usize, usize)>,
) -> Result<()> {
    let len = bits.len();
    let shift = bits.iter().take_while(|&&b| !b).count();
    let original = |p: usize| base + (p + shift) % len;
    let rotated_bits: Vec<bool> = (0..len).map(|p| bits[(p + shift) % len]).collect();

    let tree = PlaneTree::from_degrees(&DegreeSequence::new(degrees.to_vec())?);
    let root = labels[0].entries();
    let n1 = ns[0];
    let mut y_positions = Vec::with_capacity(n1);
    let mut p = n1;
    for (j, &ell) in root.iter().enumerate() {
        y_positions.extend(p..p + ell);
        p += ell;
        if j + 1 < root.len() {
            let (lo, hi) = (tree.boundaries()[j], tree.boundaries()[j + 1]);
            let size = 2 * ns[lo..hi].iter().sum::<usize>();
            let sub: Vec<bool> = rotated_bits[p..p + size].to_vec();
            let sub_ns = &ns[lo..hi];
            if !WordFamily::symmetric(sub_ns).contains(&Word::new(sub.clone())) {
                return Err(Error::IdentityViolation(format!(
                    "sub-word {} is not symmetric over {sub_ns:?}",
                    Word::new(sub)
                )));
            }
            // Positions inside `sub` are relative to the rotated word; map them back.
            let mut inner = Vec::new();
            backward(&sub, sub_ns, &degrees[lo..hi], &labels[lo..hi], 0, &mut inner)?;
            for (a, b) in inner {
                pairs.push((original(p + a), original(p + b)));
            }
            p += size;
        }
    }
    if p != len || y_positions.len() != n1 {
        return Err(Error::IdentityViolation("label layout does not fill the word".into()));
    }
    // The last 1 of the first block takes the first Y zero, and so on outward.
    for (k, &y) in y_positions.iter().enumerate() {
        let x = n1 - 1 - k;
        if rotated_bits[y] {
            return Err(Error::IdentityViolation(format!("position {y} of the layout is a 1")));
        }
        pairs.push((original(x).min(original(y)), original(x).max(original(y))));
    }
    Ok(())
}

/// `f_n`: the labeled tree of the first-return pairing.
pub fn word_to_tree(w: &CatalanWord) -> Result<LabeledTree> {
    let word = w.word();
    let pairing = first_return(&word)?;
    pairing_to_labeled_tree(&word, w.ones(), &pairing)
}

/// `g_n(T) = 1^{n_1} 0^{l_0} g(T_1) 0^{l_1} ... g(T_d) 0^{l_d}`.
pub fn tree_to_word(tree: &LabeledTree) -> Result<CatalanWord> {
    if !tree.is_consistent() {
        return Err(Error::Precondition("label degrees do not match the tree".into()));
    }
    let bits = tree_bits(&tree.tree, &tree.labels);
    CatalanWord::from_word(&Word::new(bits), &tree.weights())
}

fn tree_bits(tree: &PlaneTree, labels: &[Label]) -> Vec<bool> {
    let root = labels[0].entries();
    let mut bits = vec![true; labels[0].weight()];
    for (j, &ell) in root.iter().enumerate() {
        bits.extend(std::iter::repeat_n(false, ell));
        if j + 1 < root.len() {
            let (lo, hi) = (tree.boundaries()[j], tree.boundaries()[j + 1]);
            bits.extend(tree_bits(&tree.subtree(j + 1), &labels[lo..hi]));
        }
    }
    bits
}

/// `|CF(n')| - |CF(n)|` for `n'` moving one unit from entry `i + 1` to entry
/// `i` (1-based), checked against `|CF(n_1..n_{i-1}, n_i + 1)| *
/// |CF(n_{i+1} - 1, n_{i+2}..n_r)|`.
pub fn shift_difference(ns: &[usize], i: usize) -> Result<Count> {
    if i == 0 || i >= ns.len() {
        return Err(Error::Precondition(format!("index {i} out of range 1..{}", ns.len())));
    }
    if ns[i] < 2 {
        return Err(Error::Precondition(format!("entry {} must be at least 2", i + 1)));
    }
    let mut shifted = ns.to_vec();
    shifted[i - 1] += 1;
    shifted[i] -= 1;
    let (before, after) = (count_cf(ns), count_cf(&shifted));
    if after < before {
        return Err(Error::IdentityViolation(format!("|CF({shifted:?})| < |CF({ns:?})|")));
    }
    let difference = after - before;
    let product = count_cf(&shifted[..i]) * count_cf(&shifted[i..]);
    if product != difference {
        return Err(Error::IdentityViolation(format!(
            "shift of {ns:?} at {i}: difference {difference} but product {product}"
        )));
    }
    Ok(difference)
}

/// The rotation found by cyclic domination of `n` by `n'`, and `|CF|` of the
/// rotated `n'`, an upper bound for `phi(w(n, m))`.
pub fn cf_bound(ns: &[usize], ms: &[usize], nprime: &[usize]) -> Result<(usize, Count)> {
    if ns.len() != ms.len() || ns.len() != nprime.len() {
        return Err(Error::LengthMismatch {
            left: ns.len(),
            right: ms.len().max(nprime.len()),
        });
    }
    if ns.iter().sum::<usize>() != ms.iter().sum::<usize>() {
        return Err(Error::Unbalanced {
            ones: ns.iter().sum(),
            zeros: ms.iter().sum(),
        });
    }
    let f: Vec<i64> = ns.iter().map(|&x| x as i64).collect();
    let g: Vec<i64> = nprime.iter().map(|&x| x as i64).collect();
    let i = cyclic_dom_rotation(&f, &g)?;
    Ok((i, count_cf(&rotate_seq(nprime, i))))
}
