//! Sweep suites: each checks one family of identities or bounds over a
//! bounded range and reports violations (theorem failures) separately from
//! findings (conjecture search results, never failures).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::{all_words, balanced_words, canonical_form, decompose, generate_balanced, orbit, peak_reduce, Word};
use crate::bounds::{independent_count, iterated_minima, main_theorem_check, sharp_family, verify_conjecture_refined, verify_tree_conjecture};
use crate::catalan_words::{
    cf_bound, count_cf, enumerate_cf, labeled_tree_to_pairing, pairing_to_labeled_tree, shift_difference, tree_to_word,
    word_to_tree, WordFamily,
};
use crate::error::{Error, Result};
use crate::ginibre::{estimate_words, GinibreReport, Verdict};
use crate::pairing::enumerate_pairings;
use crate::phi::{
    check_aphi_identity, closed_form_2run, closed_form_3run_sym, fuss_catalan, min_run_first, series_fixpoint, PhiEngine,
};
use crate::trees::{
    count_labeled_trees, enumerate_labeled_trees, is_unimodal, is_weakly_increasing, phi_star_tree_formula, Permutation,
};
use crate::{Count, RunProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Oracle,
    Symmetry,
    Bounds,
    MainTheorem,
    Bijections,
    TreeFormula,
    RefinedConjecture,
    TreeConjecture,
    Ginibre,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Oracle,
        Suite::Symmetry,
        Suite::Bounds,
        Suite::MainTheorem,
        Suite::Bijections,
        Suite::TreeFormula,
        Suite::RefinedConjecture,
        Suite::TreeConjecture,
        Suite::Ginibre,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Symmetry => "symmetry",
            Suite::Bounds => "bounds",
            Suite::MainTheorem => "main-theorem",
            Suite::Bijections => "bijections",
            Suite::TreeFormula => "tree-formula",
            Suite::RefinedConjecture => "refined-conjecture",
            Suite::TreeConjecture => "tree-conjecture",
            Suite::Ginibre => "ginibre",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Unknown(format!("unknown suite {s:?}; expected one of {}", Suite::ALL.iter().join(", "))))
    }
}

/// Sweep limits. `None` picks the suite's default scale.
#[derive(Clone, Debug, PartialEq)]
pub struct Caps {
    /// Largest half-length `n` of swept words.
    pub max_n: Option<usize>,
    /// Largest number of runs, tree vertices or permutation size.
    pub r: Option<usize>,
    /// Largest entry of swept sequences.
    pub entries: Option<usize>,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_n: None,
            r: None,
            entries: None,
            dim: 128,
            samples: 400,
            seed: 42,
            tolerance: crate::ginibre::DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub subject: String,
    pub detail: String,
}

impl Record {
    fn new(subject: impl fmt::Display, detail: impl Into<String>) -> Self {
        Record {
            subject: subject.to_string(),
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub scope: BTreeMap<String, String>,
    pub checked: usize,
    pub violations: Vec<Record>,
    pub findings: Vec<Record>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            scope: BTreeMap::new(),
            checked: 0,
            violations: Vec::new(),
            findings: Vec::new(),
        }
    }

    fn scope(&mut self, key: &str, value: impl fmt::Display) {
        self.scope.insert(key.to_string(), value.to_string());
    }

    /// Folds per-item results in item order.
    fn absorb(&mut self, items: Vec<(usize, Vec<Record>)>) {
        for (checked, violations) in items {
            self.checked += checked;
            self.violations.extend(violations);
        }
    }

    fn check(&mut self, ok: bool, subject: impl fmt::Display, detail: impl Into<String>) {
        self.checked += 1;
        if !ok {
            self.violations.push(Record::new(subject, detail));
        }
    }

    /// No theorem was violated. Findings do not count.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn run(suite: Suite, caps: &Caps) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(suite);
    match suite {
        Suite::Oracle => oracle(&mut report, caps.max_n.unwrap_or(6)),
        Suite::Symmetry => symmetry(&mut report, caps.max_n.unwrap_or(6)),
        Suite::Bounds => bounds(&mut report, caps.max_n.unwrap_or(7), caps.entries.unwrap_or(4)),
        Suite::MainTheorem => main_theorem(&mut report, caps.max_n.unwrap_or(7)),
        Suite::Bijections => bijections(&mut report, caps.r.unwrap_or(4), caps.entries.unwrap_or(4)),
        Suite::TreeFormula => tree_formula(&mut report, caps.r.unwrap_or(5), caps.entries.unwrap_or(4)),
        Suite::RefinedConjecture => refined_conjecture(&mut report, caps.max_n.unwrap_or(6))?,
        Suite::TreeConjecture => tree_conjecture(&mut report, caps.r.unwrap_or(5), caps.entries.unwrap_or(3))?,
        Suite::Ginibre => ginibre(&mut report, caps.max_n.unwrap_or(4), caps)?,
    }
    Ok(report)
}

fn words_up_to(max_n: usize) -> Vec<Word> {
    (1..=max_n).flat_map(balanced_words).collect()
}

fn strict_words_up_to(max_n: usize) -> Vec<Word> {
    (1..=max_n).flat_map(|n| (1..=n).flat_map(move |r| generate_balanced(n, r))).collect()
}

/// Recurrence against the permutation oracle and exhaustive enumeration,
/// closed forms, Fuss-Catalan values and the generating function.
fn oracle(report: &mut SuiteReport, max_n: usize) {
    let engine = PhiEngine::global();
    report.scope("max_n", max_n);
    let items = words_up_to(max_n)
        .par_iter()
        .map(|w| {
            let phi = engine.phi(w);
            let oracle = independent_count(w);
            let listed = Count::from(enumerate_pairings(w).len());
            let bad = (phi != oracle || phi != listed)
                .then(|| Record::new(w, format!("recurrence {phi}, oracle {oracle}, enumeration {listed}")));
            (1, bad.into_iter().collect())
        })
        .collect();
    report.absorb(items);

    report.scope("two_run_max_n", 10);
    for n in 2..=10u64 {
        for (n1, m1) in (1..n).cartesian_product(1..n) {
            let (n2, m2) = (n - n1, n - m1);
            let w = Word::from_runs(&[n1, m1, n2, m2].map(|x| x as usize));
            let closed = closed_form_2run(n1, m1, n2, m2).expect("balanced positive runs");
            let phi = engine.phi(&w);
            report.check(phi == closed, &w, format!("recurrence {phi}, closed form {closed}"));
        }
    }

    report.scope("three_run_max_entry", 6);
    for ns in (0..3).map(|_| 1..=6u64).multi_cartesian_product() {
        let w = Word::doubled(&ns.iter().map(|&x| x as usize).collect_vec());
        let closed = closed_form_3run_sym(ns[0], ns[1], ns[2]).expect("positive runs");
        let phi = engine.phi(&w);
        report.check(phi == closed, &w, format!("recurrence {phi}, closed form {closed}"));
    }

    report.scope("fuss_catalan_max", 5);
    for (n, r) in (1..=5usize).cartesian_product(1..=5usize) {
        let phi = engine.phi(&Word::regular(n, r));
        let closed = fuss_catalan(n as u64, r as u64);
        report.check(phi == closed, format!("(1^{n} 0^{n})^{r}"), format!("recurrence {phi}, formula {closed}"));
    }

    report.scope("series_max_len", 10);
    match series_fixpoint(10) {
        Ok(table) => {
            for len in 1..=10 {
                for w in all_words(len) {
                    let series = table.coefficient(&w).cloned().unwrap_or_default();
                    let phi = engine.phi(&w);
                    report.check(series == phi, &w, format!("series {series}, recurrence {phi}"));
                }
            }
        }
        Err(e) => report.violations.push(Record::new("series", e.to_string())),
    }
}

/// Rotation, reflection and negation invariance, and peak reduction.
fn symmetry(report: &mut SuiteReport, max_n: usize) {
    let engine = PhiEngine::global();
    report.scope("max_n", max_n);
    let items = words_up_to(max_n)
        .par_iter()
        .map(|w| {
            let phi = engine.phi(w);
            let mut bad = Vec::new();
            let images = orbit(w);
            for image in &images {
                if independent_count(image) != phi {
                    bad.push(Record::new(w, format!("image {image} has a different count")));
                }
            }
            if engine.phi(&canonical_form(w)) != phi {
                bad.push(Record::new(w, "canonical form changes the count"));
            }
            match peak_reduce(w) {
                Ok(reduced) if independent_count(&reduced) != phi => {
                    bad.push(Record::new(w, format!("peak reduction {reduced} changes the count")))
                }
                Ok(_) => {}
                Err(e) => bad.push(Record::new(w, e.to_string())),
            }
            (images.len() + 2, bad)
        })
        .collect();
    report.absorb(items);
}

/// The lower and upper bounds, sharpness of the iterated bound, and
/// `phi <= phi*` after moving the smallest run to the front.
fn bounds(report: &mut SuiteReport, max_n: usize, entries: usize) {
    report.scope("max_n", max_n);
    let items = strict_words_up_to(max_n)
        .par_iter()
        .map(|w| match main_theorem_check(w) {
            Ok(b) => {
                let v = b.verdicts;
                let ok = v.lower_simple && v.lower_iterated && v.upper_height && v.crude && v.main_below_height;
                let detail = format!(
                    "simple {} iterated {} phi {} height bound {} (h = {})",
                    b.lower_simple, b.lower_iterated, b.phi, b.upper_height, b.height
                );
                (1, (!ok).then(|| Record::new(w, detail)).into_iter().collect())
            }
            Err(e) => (1, vec![Record::new(w, e.to_string())]),
        })
        .collect();
    report.absorb(items);

    report.scope("sharp_family", "a_i <= 2, r <= 3");
    let engine = PhiEngine::global();
    for r in 1..=3 {
        for a in (0..=r).map(|_| 1..=2usize).multi_cartesian_product() {
            let w = sharp_family(&a);
            let bound: Count = iterated_minima(&w)
                .expect("balanced")
                .into_iter()
                .map(|i| Count::from(1 + i))
                .product();
            let phi = engine.phi(&w);
            report.check(bound == phi, &w, format!("a = {a:?}: iterated bound {bound}, phi {phi}"));
        }
    }

    report.scope("phi_star_entries", entries);
    for n in 1..=3 * entries {
        for r in 1..=3.min(n) {
            for w in generate_balanced(n, r) {
                let runs = decompose(&w).interleaved();
                if runs.iter().any(|&x| x > entries) {
                    continue;
                }
                let front = min_run_first(&runs);
                let ones: Vec<usize> = front.iter().step_by(2).copied().collect();
                let (phi, star) = (engine.phi(&w), engine.phi_star(&ones));
                report.check(phi <= star, &w, format!("phi {phi} exceeds phi* {star} of {ones:?}"));
            }
        }
    }
}

/// `phi(w) <= C^{(ceil(n/r))}_r` on every strict word, equality on regular
/// words, and the bound through cyclic domination and Catalan words.
fn main_theorem(report: &mut SuiteReport, max_n: usize) {
    report.scope("max_n", max_n);
    let items = strict_words_up_to(max_n)
        .par_iter()
        .map(|w| {
            let mut bad = Vec::new();
            match main_theorem_check(w) {
                Ok(b) if !b.verdicts.upper_main => bad.push(Record::new(
                    w,
                    format!("phi {} exceeds C^({})_{} = {}", b.phi, b.block, b.runs, b.upper_main),
                )),
                Ok(b) => {
                    let profile = decompose(w);
                    let nprime = vec![b.block; b.runs];
                    match cf_bound(&profile.ones, &profile.zeros, &nprime) {
                        Ok((_, bound)) if bound < b.phi => {
                            bad.push(Record::new(w, format!("Catalan word bound {bound} below phi {}", b.phi)))
                        }
                        Ok(_) => {}
                        Err(e) => bad.push(Record::new(w, e.to_string())),
                    }
                }
                Err(e) => bad.push(Record::new(w, e.to_string())),
            }
            (2, bad)
        })
        .collect();
    report.absorb(items);
    for (k, r) in (1..=5usize).cartesian_product(1..=5usize) {
        match main_theorem_check(&Word::regular(k, r)) {
            Ok(b) => report.check(b.phi == b.upper_main, format!("(1^{k} 0^{k})^{r}"), "regular word is not extremal"),
            Err(e) => report.violations.push(Record::new(format!("(1^{k} 0^{k})^{r}"), e.to_string())),
        }
    }
}

fn sequences(r: usize, entries: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=r).flat_map(move |len| (0..len).map(|_| 1..=entries).multi_cartesian_product())
}

/// Catalan words against labeled trees, the symmetric-word bijection, the
/// shift identity and the `phi*` shift inequality.
fn bijections(report: &mut SuiteReport, r: usize, entries: usize) {
    report.scope("r", r);
    report.scope("entries", entries);
    let all: Vec<Vec<usize>> = sequences(r, entries).collect();
    let items = all
        .par_iter()
        .map(|ns| {
            let mut checked = 0;
            let mut bad = Vec::new();
            let subject = format!("{ns:?}");
            let (cf, lt) = (count_cf(ns), count_labeled_trees(ns));
            checked += 1;
            if cf != lt {
                bad.push(Record::new(&subject, format!("|CF| = {cf}, |LT| = {lt}")));
            }
            for word in enumerate_cf(ns) {
                checked += 1;
                let back = word_to_tree(&word).and_then(|t| tree_to_word(&t));
                if !matches!(back, Ok(ref b) if *b == word) {
                    bad.push(Record::new(&subject, format!("Catalan word {word} does not round-trip")));
                }
            }
            let trees = enumerate_labeled_trees(ns);
            for tree in &trees {
                checked += 1;
                let back = tree_to_word(tree).and_then(|w| word_to_tree(&w));
                if !matches!(back, Ok(ref t) if t == tree) {
                    bad.push(Record::new(&subject, "labeled tree does not round-trip"));
                }
            }
            if is_weakly_increasing(ns) {
                for w in WordFamily::symmetric(ns).members(None) {
                    checked += 1;
                    let pairings = enumerate_pairings(&w);
                    let images: Result<HashSet<_>> =
                        pairings.iter().map(|p| pairing_to_labeled_tree(&w, ns, p)).collect();
                    let ok = pairings.len() == trees.len()
                        && images.is_ok_and(|set| set.len() == trees.len())
                        && trees
                            .iter()
                            .all(|t| labeled_tree_to_pairing(&w, ns, t).is_ok_and(|p| pairings.contains(&p)));
                    if !ok {
                        bad.push(Record::new(&subject, format!("{w}: pairings and labeled trees not in bijection")));
                    }
                }
            }
            for i in 1..ns.len() {
                if ns[i] >= 2 {
                    checked += 1;
                    if let Err(e) = shift_difference(ns, i) {
                        bad.push(Record::new(&subject, e.to_string()));
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    report.absorb(items);

    // phi*(n') <= phi*(.., n'_i + 1, .., n'_j - 1, ..) when n'_i < n'_{i+1},
    // n'_{j-1} < n'_j and the shifted sequence is still weakly increasing.
    // Labeled-tree counts obey the inequality without the last condition.
    let engine = PhiEngine::global();
    for ns in sequences(r, entries + 1).filter(|ns| is_weakly_increasing(ns)) {
        for (i, j) in (0..ns.len()).tuple_combinations() {
            if ns[i] < ns[i + 1] && ns[j - 1] < ns[j] {
                let mut moved = ns.clone();
                moved[i] += 1;
                moved[j] -= 1;
                let (lt_before, lt_after) = (count_labeled_trees(&ns), count_labeled_trees(&moved));
                report.check(lt_before <= lt_after, format!("{ns:?}"), format!("|LT| drops on shift to {moved:?}"));
                if is_weakly_increasing(&moved) {
                    let (before, after) = (engine.phi_star(&ns), engine.phi_star(&moved));
                    report.check(before <= after, format!("{ns:?}"), format!("shift to {moved:?}: {before} > {after}"));
                }
            }
        }
    }
}

/// Unimodal after rotating the value 1 to the front. `phi*` is invariant
/// under rotation, so this is the class of orderings tied with the
/// increasing one.
pub fn cyclically_unimodal(sigma: &Permutation) -> bool {
    let mut images = sigma.images().to_vec();
    if let Some(start) = images.iter().position(|&x| x == 1) {
        images.rotate_left(start);
    }
    is_unimodal(&images)
}

/// The tree formula against `phi*`, the unimodal equality, the strict drop
/// for other permutations, and the shifted-argument identity.
fn tree_formula(report: &mut SuiteReport, r: usize, entries: usize) {
    let engine = PhiEngine::global();
    report.scope("r", r);
    report.scope("entries", entries);
    for size in 1..=r {
        let increasing: Vec<Vec<usize>> = (1..=entries).combinations_with_replacement(size).collect();
        let items = Permutation::all(size)
            .par_iter()
            .map(|sigma| {
                let mut bad = Vec::new();
                for nprime in &increasing {
                    match phi_star_tree_formula(nprime, sigma) {
                        Ok(formula) => {
                            let direct = engine.phi_star(&sigma.permute(nprime));
                            if formula != direct {
                                bad.push(Record::new(sigma, format!("{nprime:?}: formula {formula}, phi* {direct}")));
                            }
                            let distinct = nprime.windows(2).all(|w| w[0] < w[1]);
                            if distinct && !cyclically_unimodal(sigma) && formula >= engine.phi_star(nprime) {
                                bad.push(Record::new(sigma, format!("{nprime:?}: no drop below the increasing order")));
                            }
                        }
                        Err(e) => bad.push(Record::new(sigma, e.to_string())),
                    }
                }
                (2 * increasing.len(), bad)
            })
            .collect();
        report.absorb(items);
    }

    let unimodal_r = r.max(6);
    report.scope("unimodal_r", unimodal_r);
    for size in 1..=unimodal_r {
        for sigma in Permutation::all(size).into_iter().filter(|s| is_unimodal(s.images())) {
            for nprime in (1..=3usize).combinations_with_replacement(size) {
                let formula = phi_star_tree_formula(&nprime, &sigma).expect("increasing arguments");
                let star = engine.phi_star(&nprime);
                report.check(formula == star, &sigma, format!("{nprime:?}: {formula} vs {star}"));
            }
        }
    }

    report.scope("shift_identity", "r <= 3, entries <= 4, 1 <= a <= n_1");
    for ns in sequences(3, 4) {
        if ns.iter().any(|&x| x < ns[0]) {
            continue;
        }
        for a in 1..=ns[0] {
            let ok = check_aphi_identity(&ns, a).unwrap_or(false);
            report.check(ok, format!("{ns:?}"), format!("identity fails at a = {a}"));
        }
    }
}

fn refined_conjecture(report: &mut SuiteReport, max_n: usize) -> Result<()> {
    report.scope("max_n", max_n);
    for n in 1..=max_n {
        for r in 1..=n {
            let found = verify_conjecture_refined(n, r)?;
            report.checked += found.words_scanned;
            for ce in found.counterexamples {
                report.findings.push(Record::new(
                    ce.word,
                    format!(
                        "FINDING: count {} (confirmed {}) exceeds {} of {}",
                        ce.phi, ce.confirmed, found.reference_phi, found.reference_word
                    ),
                ));
            }
        }
    }
    Ok(())
}

fn tree_conjecture(report: &mut SuiteReport, r: usize, argument_bound: usize) -> Result<()> {
    report.scope("r", r);
    report.scope("argument_bound", argument_bound);
    let sigmas = Permutation::all(r);
    let results: Vec<_> = sigmas
        .par_iter()
        .map(|sigma| verify_tree_conjecture(sigma, argument_bound))
        .collect::<Result<_>>()?;
    for found in results {
        report.checked += 1;
        if found.tau.is_none() {
            report.findings.push(Record::new(
                &found.sigma,
                format!("FINDING: no perfect matching; unmatched trees {:?}", found.unmatched),
            ));
        }
        for v in &found.violations {
            report.violations.push(Record::new(
                &found.sigma,
                format!(
                    "tree {} -> {} at {:?}: {} > {}",
                    v.tree, v.image, v.arguments, v.permuted, v.increasing
                ),
            ));
        }
    }
    Ok(())
}

fn ginibre(report: &mut SuiteReport, max_n: usize, caps: &Caps) -> Result<()> {
    report.scope("max_n", max_n);
    report.scope("dim", caps.dim);
    report.scope("samples", caps.samples);
    report.scope("seed", caps.seed);
    report.scope("tolerance", caps.tolerance);
    let words = words_up_to(max_n);
    for estimate in estimate_words(&words, caps.dim, caps.samples, caps.seed)? {
        let result = GinibreReport::from_estimate(&estimate, caps.tolerance);
        report.check(
            result.verdict == Verdict::Pass,
            &estimate.word,
            format!("mean {:.4} (se {:.4}) vs {}: relative error {:.4}", result.mean, result.stderr, result.phi, result.rel_error),
        );
    }
    let profile = RunProfile::from_interleaved(&[1, 1]);
    let exact = estimate_words(&[profile.to_word()], caps.dim, caps.samples, caps.seed)?.remove(0);
    report.check(
        (exact.mean - 1.0).abs() <= 3.0 * exact.standard_error,
        "10",
        format!("mean {} not within 3 standard errors ({}) of 1", exact.mean, exact.standard_error),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max_n: usize, r: usize, entries: usize) -> Caps {
        Caps {
            max_n: Some(max_n),
            r: Some(r),
            entries: Some(entries),
            dim: 24,
            samples: 20,
            seed: 1,
            ..Caps::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
            assert_eq!(serde_json::to_string(&suite).unwrap(), format!("\"{}\"", suite.name()));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_at_small_scale() {
        let caps = small(3, 3, 2);
        for suite in Suite::ALL {
            let report = run(suite, &caps).unwrap();
            assert!(report.passed(), "{suite}: {:?}", report.violations);
            assert!(report.checked > 0, "{suite}");
            assert!(report.findings.is_empty(), "{suite}");
        }
    }

    #[test]
    fn reports_round_trip_through_json() {
        let report = run(Suite::MainTheorem, &small(4, 3, 2)).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn tight_tolerance_is_a_violation() {
        let caps = Caps {
            tolerance: 0.0,
            ..small(1, 1, 1)
        };
        let report = run(Suite::Ginibre, &caps).unwrap();
        assert!(!report.passed());
    }
}
