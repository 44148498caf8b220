//! Rooted plane trees, Catalan degree sequences, vertex labels, labelings by
//! permutations and tree polynomials.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::phi::binomial;
use crate::Count;

/// True iff `d_1 + ... + d_i >= i` for `i < r` and the total is `r - 1`.
pub fn is_catalan(degrees: &[usize]) -> bool {
    let r = degrees.len();
    if r == 0 {
        return false;
    }
    let mut sum = 0;
    for (i, &d) in degrees.iter().enumerate() {
        sum += d;
        if i + 1 < r && sum < i + 1 {
            return false;
        }
    }
    sum == r - 1
}

/// Degree sequence of a rooted plane tree read in depth-first order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DegreeSequence(Vec<usize>);

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if is_catalan(&degrees) {
            Ok(DegreeSequence(degrees))
        } else {
            Err(Error::Precondition(format!("{degrees:?} is not a Catalan degree sequence")))
        }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// All Catalan degree sequences with `r` entries, in lexicographic order.
pub fn catalan_sequences(r: usize) -> Vec<DegreeSequence> {
    fn rec(r: usize, sum: usize, prefix: &mut Vec<usize>, out: &mut Vec<DegreeSequence>) {
        let i = prefix.len();
        if i == r {
            if sum == r - 1 {
                out.push(DegreeSequence(prefix.clone()));
            }
            return;
        }
        let need = if i + 1 < r { i + 1 } else { r - 1 };
        for d in 0..=(r - 1 - sum) {
            if sum + d < need {
                continue;
            }
            prefix.push(d);
            rec(r, sum + d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 {
        rec(r, 0, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// A rooted plane tree with vertices numbered `1..=r` depth first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PlaneTree {
    degrees: Vec<usize>,
    /// Children of each vertex, 1-based, left to right (index 0 is vertex 1).
    children: Vec<Vec<usize>>,
    /// `1 = i_0 < i_1 < ... < i_{d_1} = r`: subtree `j` holds vertices
    /// `i_{j-1}+1 ..= i_j`.
    boundaries: Vec<usize>,
}

impl PlaneTree {
    pub fn from_degrees(seq: &DegreeSequence) -> Self {
        let degrees = seq.degrees().to_vec();
        let r = degrees.len();
        let mut children = vec![Vec::new(); r];
        let mut open: Vec<(usize, usize)> = vec![(0, degrees[0])];
        for (v, &degree) in degrees.iter().enumerate().skip(1) {
            while open.last().is_some_and(|&(_, left)| left == 0) {
                open.pop();
            }
            let top = open.last_mut().expect("Catalan sequences leave an open slot");
            top.1 -= 1;
            children[top.0].push(v + 1);
            open.push((v, degree));
        }
        let mut boundaries = vec![1];
        let roots = &children[0];
        for (j, _) in roots.iter().enumerate() {
            let end = roots.get(j + 1).map(|&next| next - 1).unwrap_or(r);
            boundaries.push(end);
        }
        PlaneTree {
            degrees,
            children,
            boundaries,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Children of 1-based vertex `v`.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v - 1]
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn root_degree(&self) -> usize {
        self.degrees[0]
    }

    /// Subtree `j` (1-based) of the root, renumbered from 1.
    pub fn subtree(&self, j: usize) -> PlaneTree {
        let (lo, hi) = (self.boundaries[j - 1], self.boundaries[j]);
        PlaneTree::from_degrees(&DegreeSequence(self.degrees[lo..hi].to_vec()))
    }

    /// Sorted multiset of vertex degrees.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }
}

/// One tree per Catalan degree sequence, in the same order.
pub fn plane_trees(r: usize) -> Vec<PlaneTree> {
    catalan_sequences(r).iter().map(PlaneTree::from_degrees).collect()
}

/// Entries `(l_0, ..., l_d)` with interior entries positive; degree `d`,
/// weight `l_0 + ... + l_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label(pub Vec<usize>);

impl Label {
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

/// `binom(n + 1, d)`.
pub fn count_labels(n: usize, d: usize) -> Count {
    binomial(n as u64 + 1, d as u64)
}

/// All labels of weight `n` and degree `d`, lexicographic.
pub fn enumerate_labels(n: usize, d: usize) -> Vec<Label> {
    fn rec(remaining: usize, floors: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<Label>) {
        let i = prefix.len();
        if i + 1 == floors.len() {
            prefix.push(remaining);
            out.push(Label(prefix.clone()));
            prefix.pop();
            return;
        }
        let reserve: usize = floors[i + 1..].iter().sum();
        for v in floors[i]..=(remaining - reserve) {
            prefix.push(v);
            rec(remaining - v, floors, prefix, out);
            prefix.pop();
        }
    }
    let floors: Vec<usize> = (0..=d).map(|i| usize::from(i > 0 && i < d)).collect();
    let mut out = Vec::new();
    if n >= floors.iter().sum() {
        rec(n, &floors, &mut Vec::with_capacity(d + 1), &mut out);
    }
    out
}

/// A plane tree whose vertex `i` carries a label of degree `d_i` and weight `n_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LabeledTree {
    pub tree: PlaneTree,
    pub labels: Vec<Label>,
}

impl LabeledTree {
    pub fn weights(&self) -> Vec<usize> {
        self.labels.iter().map(Label::weight).collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.labels.len() == self.tree.vertex_count()
            && self
                .labels
                .iter()
                .zip(self.tree.degrees())
                .all(|(l, &d)| l.degree() == d)
    }
}

/// `sum over trees of prod binom(n_i + 1, d_i)`.
pub fn count_labeled_trees(ns: &[usize]) -> Count {
    plane_trees(ns.len())
        .iter()
        .map(|t| {
            t.degrees()
                .iter()
                .zip(ns)
                .map(|(&d, &n)| count_labels(n, d))
                .product::<Count>()
        })
        .sum()
}

/// Every labeled tree with vertex weights `ns`, trees in degree-sequence
/// order and labels lexicographic within each tree.
pub fn enumerate_labeled_trees(ns: &[usize]) -> Vec<LabeledTree> {
    let mut out = Vec::new();
    for tree in plane_trees(ns.len()) {
        let choices: Vec<Vec<Label>> = tree
            .degrees()
            .iter()
            .zip(ns)
            .map(|(&d, &n)| enumerate_labels(n, d))
            .collect();
        for labels in choices.into_iter().multi_cartesian_product() {
            out.push(LabeledTree {
                tree: tree.clone(),
                labels,
            });
        }
    }
    out
}

/// A bijection of `1..=r`, stored as its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let r = images.len();
        let mut seen = vec![false; r + 1];
        for &x in &images {
            if x == 0 || x > r || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Precondition(format!("{images:?} is not a permutation of 1..={r}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(r: usize) -> Self {
        Permutation((1..=r).collect())
    }

    /// All of `S_r` in lexicographic order.
    pub fn all(r: usize) -> Vec<Permutation> {
        (1..=r).permutations(r).map(Permutation).collect()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `(values[sigma(1)], ..., values[sigma(r)])` for 1-based `values`.
    pub fn permute<T: Clone>(&self, values: &[T]) -> Vec<T> {
        self.0.iter().map(|&x| values[x - 1].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// Labels each vertex from `seq`: rotate so the minimum comes first, give it
/// to the root, and hand subtree `j` the entries `i_{j-1}+1 ..= i_j` of the
/// rotated sequence. Returns the label of each vertex in depth-first order.
pub fn label_by_sequence(tree: &PlaneTree, seq: &[usize]) -> Vec<usize> {
    assert_eq!(tree.vertex_count(), seq.len(), "sequence length must match the tree");
    let start = (0..seq.len()).min_by_key(|&i| seq[i]).expect("nonempty tree");
    let mut rotated = seq.to_vec();
    rotated.rotate_left(start);
    let mut labels = Vec::with_capacity(seq.len());
    labels.push(rotated[0]);
    for j in 1..tree.boundaries().len() {
        let (lo, hi) = (tree.boundaries()[j - 1], tree.boundaries()[j]);
        labels.extend(label_by_sequence(&tree.subtree(j), &rotated[lo..hi]));
    }
    labels
}

/// The labeling of `tree` by `sigma`, and `sigma_T` with `sigma_T(i)` the
/// label of vertex `i`.
pub fn label_by_permutation(tree: &PlaneTree, sigma: &Permutation) -> Result<(Vec<usize>, Permutation)> {
    if sigma.len() != tree.vertex_count() {
        return Err(Error::LengthMismatch {
            left: sigma.len(),
            right: tree.vertex_count(),
        });
    }
    let labels = label_by_sequence(tree, sigma.images());
    let induced = Permutation::new(labels.clone())?;
    Ok((labels, induced))
}

/// Product of factors `[n'_j]^k = binom(n'_j + 1, k)`, kept as a sorted
/// multiset of `(j, k)` with `k > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TreePolynomial {
    factors: Vec<(usize, usize)>,
}

impl TreePolynomial {
    pub fn new(factors: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut factors: Vec<(usize, usize)> = factors.into_iter().filter(|&(_, k)| k > 0).collect();
        factors.sort_unstable();
        TreePolynomial { factors }
    }

    pub fn factors(&self) -> &[(usize, usize)] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|&(_, k)| k).sum()
    }

    /// Sorted exponents.
    pub fn exponent_multiset(&self) -> Vec<usize> {
        let mut e: Vec<usize> = self.factors.iter().map(|&(_, k)| k).collect();
        e.sort_unstable();
        e
    }

    /// Value at `n'` (1-based subscripts into `nprime`).
    pub fn evaluate(&self, nprime: &[usize]) -> Count {
        self.factors
            .iter()
            .map(|&(j, k)| binomial(nprime[j - 1] as u64 + 1, k as u64))
            .product()
    }
}

impl fmt::Display for TreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let text = self.factors.iter().map(|(j, k)| format!("[n{j}]^{k}")).join(" ");
        f.write_str(&text)
    }
}

/// `prod_i [n'_{sigma_T(i)}]^{d_i}`.
pub fn tree_polynomial(tree: &PlaneTree, sigma: &Permutation) -> Result<TreePolynomial> {
    let (labels, _) = label_by_permutation(tree, sigma)?;
    Ok(TreePolynomial::new(labels.into_iter().zip(tree.degrees().iter().copied())))
}

/// All tree polynomials of `sigma`, one per tree in degree-sequence order.
pub fn tree_polynomials(sigma: &Permutation) -> Vec<TreePolynomial> {
    plane_trees(sigma.len())
        .iter()
        .map(|t| tree_polynomial(t, sigma).expect("sizes agree"))
        .collect()
}

pub fn is_weakly_increasing(values: &[usize]) -> bool {
    values.windows(2).all(|w| w[0] <= w[1])
}

/// `sum over trees of prod binom(n'_{sigma_T(i)} + 1, d_i)` for weakly
/// increasing `n'`.
pub fn phi_star_tree_formula(nprime: &[usize], sigma: &Permutation) -> Result<Count> {
    if !is_weakly_increasing(nprime) {
        return Err(Error::Precondition(format!("{nprime:?} is not weakly increasing")));
    }
    if sigma.len() != nprime.len() {
        return Err(Error::LengthMismatch {
            left: sigma.len(),
            right: nprime.len(),
        });
    }
    if nprime.is_empty() {
        return Ok(Count::one());
    }
    let mut total = Count::zero();
    for p in tree_polynomials(sigma) {
        total += p.evaluate(nprime);
    }
    Ok(total)
}

/// Rises weakly to a peak, then falls weakly.
pub fn is_unimodal(values: &[usize]) -> bool {
    let mut i = 0;
    while i + 1 < values.len() && values[i] <= values[i + 1] {
        i += 1;
    }
    values[i.min(values.len())..].windows(2).all(|w| w[0] >= w[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Comparison {
    Leq,
    Geq,
    Both,
    Incomparable,
}

/// Decides whether a chain of the two elementary inequalities leads from
/// `p` to `q` (`Leq`), from `q` to `p` (`Geq`), both, or neither. Subscripts
/// range over `1..=r`.
///
/// The moves are: raise the subscript of one factor; and for factors at
/// subscripts `a < b` with the larger exponent at `a`, swap the exponents.
pub fn comparable_leq(p: &TreePolynomial, q: &TreePolynomial, r: usize) -> Comparison {
    if p.exponent_multiset() != q.exponent_multiset() {
        return Comparison::Incomparable;
    }
    match (reaches(p, q, r), reaches(q, p, r)) {
        (true, true) => Comparison::Both,
        (true, false) => Comparison::Leq,
        (false, true) => Comparison::Geq,
        (false, false) => Comparison::Incomparable,
    }
}

fn sorted_subscripts(factors: &[(usize, usize)]) -> Vec<usize> {
    let mut s: Vec<usize> = factors.iter().map(|&(j, _)| j).collect();
    s.sort_unstable();
    s
}

/// Breadth-first search over factor multisets. Both moves keep the sorted
/// subscript vector weakly below the target's, which prunes the search.
fn reaches(from: &TreePolynomial, to: &TreePolynomial, r: usize) -> bool {
    if from == to {
        return true;
    }
    let bound = sorted_subscripts(&to.factors);
    let within = |f: &[(usize, usize)]| sorted_subscripts(f).iter().zip(&bound).all(|(a, b)| a <= b);
    if !within(&from.factors) {
        return false;
    }
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(from.factors.clone());
    queue.push_back(from.factors.clone());
    while let Some(state) = queue.pop_front() {
        let mut next_states = Vec::new();
        for i in 0..state.len() {
            let (j, k) = state[i];
            for raised in j + 1..=r {
                let mut next = state.clone();
                next[i] = (raised, k);
                next_states.push(next);
            }
            for m in 0..state.len() {
                let (j2, k2) = state[m];
                if j < j2 && k > k2 {
                    let mut next = state.clone();
                    next[i] = (j, k2);
                    next[m] = (j2, k);
                    next_states.push(next);
                }
            }
        }
        for mut next in next_states {
            next.sort_unstable();
            if next == to.factors {
                return true;
            }
            if within(&next) && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phi::{fuss_catalan, phi_star};
    use proptest::prelude::*;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::new(images.to_vec()).unwrap()
    }

    fn poly(factors: &[(usize, usize)]) -> TreePolynomial {
        TreePolynomial::new(factors.iter().copied())
    }

    #[test]
    fn catalan_sequence_examples() {
        let seqs = |r| -> Vec<Vec<usize>> {
            catalan_sequences(r).into_iter().map(|d| d.degrees().to_vec()).collect()
        };
        assert_eq!(seqs(1), vec![vec![0]]);
        assert_eq!(seqs(3), vec![vec![1, 1, 0], vec![2, 0, 0]]);
        let four: HashSet<Vec<usize>> = seqs(4).into_iter().collect();
        let expected: HashSet<Vec<usize>> = [
            vec![1, 1, 1, 0],
            vec![1, 2, 0, 0],
            vec![2, 1, 0, 0],
            vec![2, 0, 1, 0],
            vec![3, 0, 0, 0],
        ]
        .into_iter()
        .collect();
        assert_eq!(four, expected);
        assert!(seqs(4).windows(2).all(|w| w[0] < w[1]));
        for r in 1..=8 {
            assert_eq!(Count::from(catalan_sequences(r).len()), fuss_catalan(1, r as u64 - 1));
            assert_eq!(plane_trees(r).len(), catalan_sequences(r).len());
        }
        assert!(DegreeSequence::new(vec![0, 1]).is_err());
    }

    #[test]
    fn plane_tree_structure() {
        assert_eq!(plane_trees(2).len(), 1);
        let tree = PlaneTree::from_degrees(&DegreeSequence::new(vec![2, 0, 1, 0]).unwrap());
        assert_eq!(tree.boundaries(), &[1, 2, 4]);
        assert_eq!(tree.children(1), &[2, 3]);
        assert_eq!(tree.children(3), &[4]);
        assert_eq!(tree.subtree(2).degrees(), &[1, 0]);
        let chain = PlaneTree::from_degrees(&DegreeSequence::new(vec![1, 1, 1, 0]).unwrap());
        assert_eq!(chain.boundaries(), &[1, 4]);
    }

    #[test]
    fn label_examples() {
        assert_eq!(
            enumerate_labels(2, 1),
            vec![Label(vec![0, 2]), Label(vec![1, 1]), Label(vec![2, 0])]
        );
        assert_eq!(enumerate_labels(5, 0), vec![Label(vec![5])]);
        assert!(enumerate_labels(1, 3).is_empty());
        assert_eq!(count_labels(1, 3), Count::zero());
        for n in 0..=6 {
            for d in 0..=5 {
                let labels = enumerate_labels(n, d);
                assert_eq!(Count::from(labels.len()), count_labels(n, d), "n={n} d={d}");
                for l in &labels {
                    assert_eq!((l.weight(), l.degree()), (n, d));
                    assert!(l.entries()[1..d.max(1)].iter().all(|&x| x >= 1));
                }
            }
        }
    }

    #[test]
    fn labeled_tree_counts() {
        assert_eq!(count_labeled_trees(&[1, 1, 1]), Count::from(5u32));
        assert_eq!(count_labeled_trees(&[2, 2]), Count::from(3u32));
        assert_eq!(count_labeled_trees(&[7]), Count::one());
        let all = enumerate_labeled_trees(&[1, 2, 2]);
        assert_eq!(Count::from(all.len()), count_labeled_trees(&[1, 2, 2]));
        assert!(all.iter().all(LabeledTree::is_consistent));
    }

    #[test]
    fn labeled_trees_count_phi_star() {
        for r in 1..=4 {
            for ns in (0..r).map(|_| 1..=4usize).multi_cartesian_product() {
                if is_weakly_increasing(&ns) {
                    assert_eq!(count_labeled_trees(&ns), phi_star(&ns), "{ns:?}");
                }
            }
        }
    }

    #[test]
    fn identity_labeling_is_depth_first() {
        for r in 1..=7 {
            for tree in plane_trees(r) {
                let (_, induced) = label_by_permutation(&tree, &Permutation::identity(r)).unwrap();
                assert!(induced.is_identity());
            }
        }
    }

    #[test]
    fn labeling_by_4132() {
        let sigma = perm(&[4, 1, 3, 2]);
        let polys: Vec<String> = tree_polynomials(&sigma).iter().map(|p| p.to_string()).sorted().collect();
        let expected: Vec<String> = [
            "[n1]^1 [n2]^1 [n3]^1",
            "[n1]^1 [n2]^2",
            "[n1]^2 [n2]^1",
            "[n1]^2 [n2]^1",
            "[n1]^3",
        ]
        .iter()
        .map(|s| s.to_string())
        .sorted()
        .collect();
        assert_eq!(polys, expected);

        let star = PlaneTree::from_degrees(&DegreeSequence::new(vec![3, 0, 0, 0]).unwrap());
        assert_eq!(tree_polynomial(&star, &sigma).unwrap(), poly(&[(1, 3)]));
        let path = PlaneTree::from_degrees(&DegreeSequence::new(vec![1, 0]).unwrap());
        assert_eq!(tree_polynomial(&path, &Permutation::identity(2)).unwrap(), poly(&[(1, 1)]));
    }

    #[test]
    fn tree_formula_examples() {
        let nprime = [1, 2, 3, 4];
        assert_eq!(phi_star_tree_formula(&nprime, &Permutation::identity(4)).unwrap(), Count::from(37u32));
        assert_eq!(phi_star_tree_formula(&nprime, &perm(&[4, 1, 3, 2])).unwrap(), Count::from(36u32));
        assert_eq!(phi_star(&[1, 2, 3, 4]), Count::from(37u32));
        assert_eq!(phi_star(&[4, 1, 3, 2]), Count::from(36u32));
        for n in 1..=4 {
            for r in 1..=5 {
                assert_eq!(
                    phi_star_tree_formula(&vec![n; r], &Permutation::identity(r)).unwrap(),
                    fuss_catalan(n as u64, r as u64)
                );
            }
        }
        assert!(phi_star_tree_formula(&[2, 1], &Permutation::identity(2)).is_err());
    }

    #[test]
    fn unimodal_examples() {
        assert!(is_unimodal(&[1, 3, 4, 2]));
        assert!(!is_unimodal(&[2, 1, 3]));
        assert!(is_unimodal(&[1, 2, 3, 4, 5]));
        assert!(is_unimodal(&[5, 4, 1]));
        assert!(is_unimodal(&[]));
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(comparable_leq(&poly(&[(1, 2), (2, 1)]), &poly(&[(1, 1), (2, 2)]), 2), Comparison::Leq);
        assert_eq!(comparable_leq(&poly(&[(1, 1), (4, 1)]), &poly(&[(2, 1), (3, 1)]), 4), Comparison::Incomparable);
        assert_eq!(comparable_leq(&poly(&[(1, 1)]), &poly(&[(2, 1)]), 2), Comparison::Leq);
        assert_eq!(comparable_leq(&poly(&[(2, 1)]), &poly(&[(1, 1)]), 2), Comparison::Geq);
        assert_eq!(comparable_leq(&poly(&[(1, 3)]), &poly(&[(1, 3)]), 4), Comparison::Both);
        assert_eq!(comparable_leq(&poly(&[(1, 2)]), &poly(&[(1, 1), (2, 1)]), 2), Comparison::Incomparable);
    }

    #[test]
    fn tree_formula_matches_phi_star_for_every_permutation() {
        for r in 1..=5 {
            let perms = Permutation::all(r);
            for nprime in (0..r).map(|_| 1..=4usize).multi_cartesian_product() {
                if !is_weakly_increasing(&nprime) {
                    continue;
                }
                for sigma in &perms {
                    assert_eq!(
                        phi_star_tree_formula(&nprime, sigma).unwrap(),
                        phi_star(&sigma.permute(&nprime)),
                        "{nprime:?} {sigma}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn labeling_of_ten_vertex_trees_is_a_permutation(
            tree_index in 0usize..4862,
            images in Just((1..=10usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let seqs = catalan_sequences(10);
            let tree = PlaneTree::from_degrees(&seqs[tree_index % seqs.len()]);
            let sigma = Permutation::new(images).unwrap();
            let (labels, induced) = label_by_permutation(&tree, &sigma).unwrap();
            prop_assert_eq!(induced.images(), &labels[..]);
            prop_assert_eq!(labels[0], 1);
        }

        #[test]
        fn leq_is_sound(
            a in prop::collection::vec((1usize..=4, 1usize..=3), 1..=3),
            b in prop::collection::vec(1usize..=4, 3),
            values in prop::collection::vec(0usize..=5, 4),
        ) {
            let p = TreePolynomial::new(a.iter().copied());
            let q = TreePolynomial::new(a.iter().zip(&b).map(|(&(_, k), &j)| (j, k)));
            let mut nprime = values.clone();
            nprime.sort_unstable();
            match comparable_leq(&p, &q, 4) {
                Comparison::Leq => prop_assert!(p.evaluate(&nprime) <= q.evaluate(&nprime)),
                Comparison::Geq => prop_assert!(p.evaluate(&nprime) >= q.evaluate(&nprime)),
                Comparison::Both => prop_assert_eq!(p.evaluate(&nprime), q.evaluate(&nprime)),
                Comparison::Incomparable => {}
            }
        }
    }
}
