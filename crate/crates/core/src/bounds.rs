//! Closed-form bounds on the pairing count, the Fuss-Catalan maximality
//! check, and searches for the two open conjectures.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitstring::{canonical_form, generate_balanced, heights, RunProfile, Word};
use crate::count_serde;
use crate::error::{Error, Result};
use crate::matching::maximum_matching;
use crate::pairing::{for_each_pairing, oracle_count, ORACLE_LIMIT};
use crate::phi::{fuss_catalan, min_run_first, PhiEngine};
use crate::trees::{comparable_leq, is_unimodal, plane_trees, tree_polynomial, Comparison, Permutation};
use crate::Count;

/// Run profile of the strict rotation of a balanced word.
fn strict_profile(w: &Word) -> Result<RunProfile> {
    if !w.is_balanced() {
        return Err(Error::Unbalanced {
            ones: w.ones(),
            zeros: w.zeros(),
        });
    }
    Ok(w.to_strict().0.profile())
}

/// `(1 + i)^{r-1}` with `i` the smallest run.
pub fn lower_bound_simple(w: &Word) -> Result<Count> {
    let profile = strict_profile(w)?;
    let r = profile.runs();
    let Some(&i) = profile.interleaved().iter().min() else {
        return Ok(Count::one());
    };
    Ok(Count::from(1 + i).pow(r.saturating_sub(1) as u32))
}

/// Stage minima of the reduction that pairs the smallest block across and
/// merges its neighbours, one entry per stage (`r - 1` entries).
pub fn iterated_minima(w: &Word) -> Result<Vec<usize>> {
    let profile = strict_profile(w)?;
    let mut runs = min_run_first(&profile.interleaved());
    let mut minima = Vec::new();
    while runs.len() > 2 {
        let i = runs[0];
        minima.push(i);
        let mut rest = runs[2..].to_vec();
        *rest.last_mut().expect("at least one run left") += runs[1] - i;
        runs = min_run_first(&rest);
    }
    Ok(minima)
}

/// `prod (1 + i_k)` over the stage minima.
pub fn lower_bound_iterated(w: &Word) -> Result<Count> {
    Ok(iterated_minima(w)?.into_iter().map(|i| Count::from(1 + i)).product())
}

/// A rational `numerator / denominator`, both exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    #[serde(with = "count_serde")]
    pub numerator: Count,
    #[serde(with = "count_serde")]
    pub denominator: Count,
}

impl Ratio {
    /// `value <= self`.
    pub fn bounds(&self, value: &Count) -> bool {
        value * &self.denominator <= self.numerator
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeightBound {
    pub height: usize,
    pub runs: usize,
    /// `C^{(h)}_r`.
    #[serde(with = "count_serde")]
    pub fuss_catalan: Count,
    /// `r^{r-1} (1 + h)^{r-1} / r!`.
    pub crude: Ratio,
}

pub fn upper_bound_height(w: &Word) -> Result<HeightBound> {
    let profile = strict_profile(w)?;
    let r = profile.runs();
    let h = heights(w).max_height;
    let e = r.saturating_sub(1) as u32;
    let crude = Ratio {
        numerator: Count::from(r).pow(e) * Count::from(1 + h).pow(e),
        denominator: (1..=r).map(Count::from).product(),
    };
    Ok(HeightBound {
        height: h,
        runs: r,
        fuss_catalan: fuss_catalan(h as u64, r as u64),
        crude,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub lower_simple: bool,
    pub lower_iterated: bool,
    pub upper_main: bool,
    pub upper_height: bool,
    pub crude: bool,
    /// `upper_main <= upper_height`, required only when `h >= ceil(n / r)`.
    pub main_below_height: bool,
}

impl Verdicts {
    pub fn all(&self) -> bool {
        self.lower_simple
            && self.lower_iterated
            && self.upper_main
            && self.upper_height
            && self.crude
            && self.main_below_height
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub word: String,
    pub half_length: usize,
    pub runs: usize,
    pub height: usize,
    /// `ceil(n / r)`.
    pub block: usize,
    #[serde(with = "count_serde")]
    pub phi: Count,
    #[serde(with = "count_serde")]
    pub lower_simple: Count,
    #[serde(with = "count_serde")]
    pub lower_iterated: Count,
    pub stage_minima: Vec<usize>,
    #[serde(with = "count_serde")]
    pub upper_main: Count,
    #[serde(with = "count_serde")]
    pub upper_height: Count,
    pub crude: Ratio,
    pub verdicts: Verdicts,
}

/// Evaluates every bound on `w` and checks `phi(w) <= C^{(ceil(n/r))}_r`.
pub fn main_theorem_check(w: &Word) -> Result<BoundReport> {
    main_theorem_check_with(PhiEngine::global(), w)
}

pub fn main_theorem_check_with(engine: &PhiEngine, w: &Word) -> Result<BoundReport> {
    let profile = strict_profile(w)?;
    let r = profile.runs();
    if r == 0 {
        return Err(Error::Precondition("the empty word has no runs".into()));
    }
    let n = w.ones();
    let block = n.div_ceil(r);
    let phi = engine.phi(w);
    let lower_simple = lower_bound_simple(w)?;
    let stage_minima = iterated_minima(w)?;
    let lower_iterated: Count = stage_minima.iter().map(|&i| Count::from(1 + i)).product();
    let upper_main = fuss_catalan(block as u64, r as u64);
    let height = upper_bound_height(w)?;
    let verdicts = Verdicts {
        lower_simple: lower_simple <= lower_iterated,
        lower_iterated: lower_iterated <= phi,
        upper_main: phi <= upper_main,
        upper_height: phi <= height.fuss_catalan,
        crude: height.crude.bounds(&height.fuss_catalan),
        main_below_height: height.height < block || upper_main <= height.fuss_catalan,
    };
    Ok(BoundReport {
        word: w.run_notation(),
        half_length: n,
        runs: r,
        height: height.height,
        block,
        phi,
        lower_simple,
        lower_iterated,
        stage_minima,
        upper_main,
        upper_height: height.fuss_catalan,
        crude: height.crude,
        verdicts,
    })
}

/// `(1^{l+1} 0^{l+1})^a (1^l 0^l)^{r-a}` for `n = l r + a`.
pub fn most_symmetric_word(n: usize, r: usize) -> Result<Word> {
    if r == 0 || r > n {
        return Err(Error::Precondition(format!("need 1 <= r <= n, got n={n}, r={r}")));
    }
    let (ell, a) = (n / r, n % r);
    let blocks: Vec<usize> = std::iter::repeat_n(ell + 1, a).chain(std::iter::repeat_n(ell, r - a)).collect();
    Ok(Word::doubled(&blocks))
}

/// `1^{a_1+a_2} 0^{a_2} ... 1^{a_r+a_{r+1}} 0^{a_1+...+a_{r+1}}`, where the
/// iterated lower bound is attained.
pub fn sharp_family(a: &[usize]) -> Word {
    let r = a.len() - 1;
    let runs: Vec<usize> = (0..r)
        .flat_map(|k| [a[k] + a[k + 1], if k + 1 == r { a.iter().sum() } else { a[k + 1] }])
        .collect();
    Word::from_runs(&runs)
}

/// Counts pairings by walking them one by one; independent of the recurrence.
pub fn enumerated_count(w: &Word) -> Count {
    let mut count = 0u64;
    for_each_pairing(w, |_| {
        count += 1;
        std::ops::ControlFlow::Continue(())
    });
    Count::from(count)
}

/// Recomputes a count without the recurrence: the permutation oracle when
/// the word is short enough, pairing enumeration otherwise.
pub fn independent_count(w: &Word) -> Count {
    if w.len() <= ORACLE_LIMIT {
        oracle_count(w).expect("length checked")
    } else {
        enumerated_count(w)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub word: String,
    #[serde(with = "count_serde")]
    pub phi: Count,
    /// The count recomputed without the recurrence.
    #[serde(with = "count_serde")]
    pub confirmed: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub r: usize,
    pub quotient: usize,
    pub remainder: usize,
    pub reference_word: String,
    #[serde(with = "count_serde")]
    pub reference_phi: Count,
    pub words_scanned: usize,
    pub orbits_scanned: usize,
    #[serde(with = "count_serde")]
    pub max_phi: Count,
    /// Every swept word attaining `max_phi`, in sweep order.
    pub witnesses: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

/// Sweeps every strict word of length `2n` with `r` runs and compares each
/// count with the most symmetric word's. Words beating it are recounted
/// independently and reported, never raised as errors.
pub fn verify_conjecture_refined(n: usize, r: usize) -> Result<ConjectureReport> {
    let engine = PhiEngine::global();
    let reference = most_symmetric_word(n, r)?;
    let reference_phi = engine.phi(&reference);

    let words: Vec<Word> = generate_balanced(n, r).collect();
    let mut orbits: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (idx, w) in words.iter().enumerate() {
        orbits.entry(canonical_form(w)).or_default().push(idx);
    }
    let orbit_list: Vec<(&Word, &Vec<usize>)> = orbits.iter().collect();
    let values: Vec<Count> = orbit_list.par_iter().map(|(rep, _)| engine.phi(rep)).collect();

    let mut per_word = vec![Count::default(); words.len()];
    for ((_, members), value) in orbit_list.iter().zip(&values) {
        for &idx in members.iter() {
            per_word[idx] = value.clone();
        }
    }
    let max_phi = per_word.iter().max().cloned().unwrap_or_default();
    let witnesses = words
        .iter()
        .zip(&per_word)
        .filter(|(_, v)| **v == max_phi)
        .map(|(w, _)| w.run_notation())
        .collect();
    let counterexamples = words
        .iter()
        .zip(&per_word)
        .filter(|(_, v)| **v > reference_phi)
        .filter_map(|(w, v)| {
            let confirmed = independent_count(w);
            (confirmed > reference_phi).then(|| Counterexample {
                word: w.run_notation(),
                phi: v.clone(),
                confirmed,
            })
        })
        .collect();

    Ok(ConjectureReport {
        n,
        r,
        quotient: n / r,
        remainder: n % r,
        reference_word: reference.run_notation(),
        reference_phi,
        words_scanned: words.len(),
        orbits_scanned: orbit_list.len(),
        max_phi,
        witnesses,
        counterexamples,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeViolation {
    /// 1-based tree indices in degree-sequence order.
    pub tree: usize,
    pub image: usize,
    pub arguments: Vec<usize>,
    #[serde(with = "count_serde")]
    pub permuted: Count,
    #[serde(with = "count_serde")]
    pub increasing: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeConjectureReport {
    pub sigma: String,
    pub r: usize,
    pub trees: usize,
    /// Classes of trees sharing a degree multiset.
    pub groups: usize,
    pub edges: usize,
    pub unimodal: bool,
    /// `tau[i]` is the 1-based image of tree `i + 1`, when a perfect matching exists.
    pub tau: Option<Vec<usize>>,
    pub tau_is_identity: bool,
    /// Trees left unmatched by a maximum matching.
    pub unmatched: Vec<usize>,
    /// Number of weakly increasing argument vectors each matched pair was evaluated at.
    pub numeric_points: usize,
    pub violations: Vec<TreeViolation>,
}

impl TreeConjectureReport {
    pub fn holds(&self) -> bool {
        self.tau.is_some() && self.violations.is_empty()
    }
}

/// Searches for a re-ordering `tau` of plane trees with
/// `p_{T, sigma} <= p_{tau(T), id}` deduced symbolically for every tree,
/// then evaluates each matched pair at all weakly increasing arguments with
/// entries up to `argument_bound`.
pub fn verify_tree_conjecture(sigma: &Permutation, argument_bound: usize) -> Result<TreeConjectureReport> {
    let r = sigma.len();
    if r == 0 || r > 7 {
        return Err(Error::Precondition(format!("permutation size {r} outside 1..=7")));
    }
    let trees = plane_trees(r);
    let identity = Permutation::identity(r);
    let permuted = trees.iter().map(|t| tree_polynomial(t, sigma)).collect::<Result<Vec<_>>>()?;
    let increasing = trees.iter().map(|t| tree_polynomial(t, &identity)).collect::<Result<Vec<_>>>()?;

    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, t) in trees.iter().enumerate() {
        groups.entry(t.degree_multiset()).or_default().push(i);
    }
    let mut adjacency = vec![Vec::new(); trees.len()];
    for members in groups.values() {
        for &i in members {
            // Same-index candidate first so tau = id is found whenever it works.
            let order = std::iter::once(i).chain(members.iter().copied().filter(|&j| j != i));
            for j in order {
                if matches!(
                    comparable_leq(&permuted[i], &increasing[j], r),
                    Comparison::Leq | Comparison::Both
                ) {
                    adjacency[i].push(j);
                }
            }
        }
    }
    let edges = adjacency.iter().map(Vec::len).sum();
    let assignment = maximum_matching(&adjacency, trees.len());
    let unmatched: Vec<usize> = assignment
        .iter()
        .enumerate()
        .filter(|(_, a)| a.is_none())
        .map(|(i, _)| i + 1)
        .collect();
    let tau: Option<Vec<usize>> = assignment.iter().map(|a| a.map(|j| j + 1)).collect();

    let points: Vec<Vec<usize>> = (0..=argument_bound).combinations_with_replacement(r).collect();
    let mut violations = Vec::new();
    for (i, image) in assignment.iter().enumerate() {
        let Some(j) = *image else { continue };
        for args in &points {
            let lhs = permuted[i].evaluate(args);
            let rhs = increasing[j].evaluate(args);
            if lhs > rhs {
                violations.push(TreeViolation {
                    tree: i + 1,
                    image: j + 1,
                    arguments: args.clone(),
                    permuted: lhs,
                    increasing: rhs,
                });
            }
        }
    }

    Ok(TreeConjectureReport {
        sigma: sigma.to_string(),
        r,
        trees: trees.len(),
        groups: groups.len(),
        edges,
        unimodal: is_unimodal(sigma.images()),
        tau_is_identity: tau.as_ref().is_some_and(|t| t.iter().enumerate().all(|(i, &j)| j == i + 1)),
        tau,
        unmatched,
        numeric_points: points.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::balanced_words;
    use crate::phi::phi;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn simple_lower_bound_examples() {
        assert_eq!(lower_bound_simple(&w("2,1,2,3")).unwrap(), c(2));
        assert_eq!(lower_bound_simple(&w("5,5")).unwrap(), c(1));
        assert_eq!(lower_bound_simple(&w("2,2,2,2")).unwrap(), c(3));
        assert_eq!(phi(&w("2,2,2,2")), c(3));
        assert!(lower_bound_simple(&w("110")).is_err());
    }

    #[test]
    fn iterated_lower_bound_examples() {
        assert_eq!(sharp_family(&[1, 1, 1]), w("2,1,2,3"));
        assert_eq!(sharp_family(&[2, 1]), w("3,3"));
        assert_eq!(lower_bound_iterated(&w("2,1,2,3")).unwrap(), c(2));
        assert_eq!(phi(&w("2,1,2,3")), c(2));
        assert_eq!(lower_bound_iterated(&w("4,4")).unwrap(), c(1));
        assert_eq!(lower_bound_iterated(&w("1,1,3,3")).unwrap(), c(2));
        assert_eq!(phi(&w("1,1,3,3")), c(2));
        assert_eq!(iterated_minima(&w("1,1,1,1,1,1")).unwrap(), vec![1, 1]);
    }

    #[test]
    fn iterated_bound_is_sharp_on_family() {
        for r in 1..=3 {
            for a in (0..=r).map(|_| 1..=2usize).multi_cartesian_product() {
                let word = sharp_family(&a);
                assert_eq!(lower_bound_iterated(&word).unwrap(), phi(&word), "{a:?}");
            }
        }
    }

    #[test]
    fn height_bound_examples() {
        let b = upper_bound_height(&w("1010")).unwrap();
        assert_eq!((b.height, b.runs, b.fuss_catalan.clone()), (1, 2, c(2)));
        assert_eq!(phi(&w("1010")), c(2));
        let b = upper_bound_height(&w("110100")).unwrap();
        assert_eq!((b.height, b.fuss_catalan.clone()), (2, c(3)));
        assert_eq!(phi(&w("110100")), c(2));
        // (1^k 0)^l (1 0^k)^l has height (k - 1) l + 1.
        for (k, ell) in [(2, 2), (3, 2), (2, 3), (4, 1)] {
            let mut word = Word::empty();
            for _ in 0..ell {
                word = word.concat(&Word::from_runs(&[k, 1]));
            }
            for _ in 0..ell {
                word = word.concat(&Word::from_runs(&[1, k]));
            }
            assert_eq!(upper_bound_height(&word).unwrap().height, (k - 1) * ell + 1);
        }
    }

    #[test]
    fn main_theorem_examples() {
        let report = main_theorem_check(&w("3,1,1,3")).unwrap();
        assert_eq!((report.half_length, report.runs, report.block), (4, 2, 2));
        assert_eq!((report.phi.clone(), report.upper_main.clone()), (c(2), c(3)));
        assert!(report.verdicts.all());
        for k in 1..=4 {
            for r in 1..=4 {
                let report = main_theorem_check(&Word::regular(k, r)).unwrap();
                assert_eq!(report.phi, report.upper_main);
            }
        }
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["phi"], "2");
        assert_eq!(json["word"], "3,1,1,3");
    }

    #[test]
    fn bound_chain_holds_on_small_words() {
        for n in 1..=6 {
            for word in balanced_words(n).filter(Word::is_strict) {
                let report = main_theorem_check(&word).unwrap();
                assert!(report.verdicts.all(), "{word}: {report:?}");
            }
        }
    }

    #[test]
    fn refined_conjecture_examples() {
        let report = verify_conjecture_refined(3, 2).unwrap();
        assert_eq!(report.reference_word, "2,2,1,1");
        assert_eq!(report.reference_phi, c(2));
        assert_eq!(report.words_scanned, 4);
        assert!(report.counterexamples.is_empty());
        for (n, r) in [(4, 2), (6, 3), (6, 2), (5, 2), (7, 3)] {
            let report = verify_conjecture_refined(n, r).unwrap();
            assert!(report.counterexamples.is_empty(), "{report:?}");
            assert_eq!(report.max_phi, report.reference_phi);
            assert!(report.witnesses.contains(&report.reference_word));
        }
        assert!(verify_conjecture_refined(2, 3).is_err());
    }

    #[test]
    fn independent_count_matches() {
        for s in ["1010", "2,1,2,3", "3,3,3,3,3,3"] {
            assert_eq!(independent_count(&w(s)), phi(&w(s)));
        }
    }

    #[test]
    fn tree_conjecture_examples() {
        let sigma = Permutation::new(vec![4, 1, 3, 2]).unwrap();
        let report = verify_tree_conjecture(&sigma, 3).unwrap();
        assert!(report.holds());
        assert!(report.tau_is_identity);
        let id = verify_tree_conjecture(&Permutation::identity(5), 2).unwrap();
        assert!(id.tau_is_identity && id.holds());
        for sigma in Permutation::all(5) {
            let report = verify_tree_conjecture(&sigma, 2).unwrap();
            assert!(report.holds(), "{sigma}: {report:?}");
        }
        assert!(verify_tree_conjecture(&Permutation::identity(8), 1).is_err());
    }

    proptest! {
        #[test]
        fn lower_bounds_are_ordered(runs in proptest::collection::vec(1usize..4, 1..4), shift in 0usize..12) {
            let ones: usize = runs.iter().sum();
            let mut interleaved = Vec::new();
            for (k, &n) in runs.iter().enumerate() {
                interleaved.push(n);
                interleaved.push(if k + 1 == runs.len() { ones - (runs.len() - 1) } else { 1 });
            }
            prop_assume!(interleaved.iter().all(|&x| x > 0));
            let word = Word::from_runs(&interleaved);
            let rotated = word.rotated_left(shift % word.len());
            let simple = lower_bound_simple(&rotated).unwrap();
            let iterated = lower_bound_iterated(&rotated).unwrap();
            prop_assert!(simple <= iterated);
            prop_assert!(iterated <= phi(&word));
        }
    }
}
