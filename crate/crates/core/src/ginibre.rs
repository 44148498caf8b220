//! Monte-Carlo mixed moments of complex Ginibre matrices.
//!
//! A sample is an `N x N` matrix whose entries are `a + ib` with `a`, `b`
//! independent centered normals of variance `1/(2N)`. A word's moment is the
//! normalized trace `(1/N) Tr` of the product that reads `1` as `X` and `0`
//! as `X*`, averaged over independent samples. As `N` grows the expectation
//! tends to the pairing count of the word.
//!
//! Randomness: ChaCha20 seeded with `seed`, one stream per sample index, so
//! sample `k` is the same no matter how samples are scheduled. Normals come
//! from `rand_distr::Normal` (ziggurat) fed by that stream.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::bitstring::{RunProfile, Word};
use crate::count_serde;
use crate::error::{Error, Result};
use crate::phi::PhiEngine;
use crate::Count;

/// Largest allowed `N * degree` for one moment.
pub const MOMENT_BUDGET: usize = 16384;

/// Default relative tolerance of [`compare`].
pub const DEFAULT_TOLERANCE: f64 = 0.15;

pub const NORMALIZATION: &str = "(1/N) Tr";

/// Dense row-major complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Matrix { dim, data }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j].conj();
            }
        }
        Matrix { dim: n, data }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            let out = &mut data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out.iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Matrix { dim: n, data }
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Complex64 {
        let n = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GinibreSample {
    pub seed: u64,
    pub stream: u64,
    pub matrix: Matrix,
}

/// Sample number `stream` of the sequence selected by `seed`.
pub fn sample_stream(dim: usize, seed: u64, stream: u64) -> Result<GinibreSample> {
    if dim == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let normal = Normal::new(0.0, (0.5 / dim as f64).sqrt()).expect("positive deviation");
    let data = (0..dim * dim)
        .map(|_| {
            let re = normal.sample(&mut rng);
            let im = normal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    Ok(GinibreSample {
        seed,
        stream,
        matrix: Matrix { dim, data },
    })
}

pub fn sample(dim: usize, seed: u64) -> Result<GinibreSample> {
    sample_stream(dim, seed, 0)
}

/// Products of `X` and `X*` along words, memoized per sample. Uses
/// `M(reverse(negate(w))) = M(w)*` to halve the multiplications.
struct ProductCache {
    x: Matrix,
    products: HashMap<Vec<bool>, Matrix>,
}

impl ProductCache {
    fn new(x: Matrix) -> Self {
        let mut products = HashMap::new();
        products.insert(vec![false], x.adjoint());
        products.insert(vec![true], x.clone());
        ProductCache { x, products }
    }

    fn product(&mut self, word: &[bool]) -> Matrix {
        if word.is_empty() {
            return Matrix::identity(self.x.dim);
        }
        if let Some(m) = self.products.get(word) {
            return m.clone();
        }
        let mirror: Vec<bool> = word.iter().rev().map(|b| !b).collect();
        let result = if let Some(m) = self.products.get(&mirror) {
            m.adjoint()
        } else {
            let head = self.product(&word[..word.len() - 1]);
            let last = self.product(&word[word.len() - 1..]);
            head.mul(&last)
        };
        self.products.insert(word.to_vec(), result.clone());
        result
    }

    /// `(1/N) Tr M(word)`, splitting the word in half.
    fn normalized_trace(&mut self, word: &[bool]) -> Complex64 {
        let n = self.x.dim as f64;
        if word.is_empty() {
            return Complex64::new(1.0, 0.0);
        }
        let mid = word.len() / 2;
        let left = self.product(&word[..mid]);
        let right = self.product(&word[mid..]);
        left.trace_of_product(&right) / n
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub word: String,
    pub dimension: usize,
    pub samples: usize,
    pub seed: u64,
    /// Mean of the real parts.
    pub mean: f64,
    pub mean_imaginary: f64,
    pub standard_error: f64,
    #[serde(with = "count_serde")]
    pub phi: Count,
    pub normalization: &'static str,
}

fn check_budget(words: &[Word], dim: usize, samples: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::Precondition("dimension must be at least 1".into()));
    }
    if samples == 0 {
        return Err(Error::Precondition("need at least one sample".into()));
    }
    for w in words {
        if dim * w.len() > MOMENT_BUDGET {
            return Err(Error::Budget(format!(
                "N * degree = {} * {} exceeds {MOMENT_BUDGET}",
                dim,
                w.len()
            )));
        }
    }
    Ok(())
}

/// Estimates the moments of several words from the same samples.
pub fn estimate_words(words: &[Word], dim: usize, samples: usize, seed: u64) -> Result<Vec<MomentEstimate>> {
    check_budget(words, dim, samples)?;
    let per_sample: Vec<Vec<Complex64>> = (0..samples as u64)
        .into_par_iter()
        .map(|stream| {
            let x = sample_stream(dim, seed, stream).expect("dimension checked").matrix;
            let mut cache = ProductCache::new(x);
            words.iter().map(|w| cache.normalized_trace(w.bits())).collect()
        })
        .collect();

    let engine = PhiEngine::global();
    Ok(words
        .iter()
        .enumerate()
        .map(|(idx, w)| {
            let values: Vec<Complex64> = per_sample.iter().map(|row| row[idx]).collect();
            let count = values.len() as f64;
            let mean = values.iter().map(|v| v.re).sum::<f64>() / count;
            let mean_imaginary = values.iter().map(|v| v.im).sum::<f64>() / count;
            let standard_error = if values.len() >= 2 {
                let var = values.iter().map(|v| (v.re - mean).powi(2)).sum::<f64>() / (count - 1.0);
                (var / count).sqrt()
            } else {
                f64::NAN
            };
            MomentEstimate {
                word: w.to_string(),
                dimension: dim,
                samples,
                seed,
                mean,
                mean_imaginary,
                standard_error,
                phi: engine.phi(w),
                normalization: NORMALIZATION,
            }
        })
        .collect())
}

pub fn moment_estimate(profile: &RunProfile, dim: usize, samples: usize, seed: u64) -> Result<MomentEstimate> {
    let word = profile.to_word();
    Ok(estimate_words(&[word], dim, samples, seed)?.pop().expect("one word"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Flag,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GinibreReport {
    pub word: String,
    #[serde(rename = "N")]
    pub dimension: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    #[serde(with = "count_serde")]
    pub phi: Count,
    #[serde(rename = "relError")]
    pub rel_error: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub normalization: &'static str,
}

impl GinibreReport {
    /// `|mean - phi| / max(phi, 1)`; passes only when strictly below `tolerance`.
    pub fn from_estimate(estimate: &MomentEstimate, tolerance: f64) -> Self {
        let phi = count_to_f64(&estimate.phi);
        let rel_error = (estimate.mean - phi).abs() / phi.max(1.0);
        GinibreReport {
            word: estimate.word.clone(),
            dimension: estimate.dimension,
            samples: estimate.samples,
            seed: estimate.seed,
            mean: estimate.mean,
            stderr: estimate.standard_error,
            phi: estimate.phi.clone(),
            rel_error,
            tolerance,
            verdict: if rel_error < tolerance { Verdict::Pass } else { Verdict::Flag },
            normalization: NORMALIZATION,
        }
    }
}

fn count_to_f64(c: &Count) -> f64 {
    c.to_string().parse().unwrap_or(f64::INFINITY)
}

pub fn compare(profile: &RunProfile, dim: usize, samples: usize, seed: u64, tolerance: f64) -> Result<GinibreReport> {
    let estimate = moment_estimate(profile, dim, samples, seed)?;
    Ok(GinibreReport::from_estimate(&estimate, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitstring::balanced_words;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn estimate(s: &str, dim: usize, samples: usize, seed: u64) -> MomentEstimate {
        estimate_words(&[w(s)], dim, samples, seed).unwrap().pop().unwrap()
    }

    #[test]
    fn samples_are_deterministic() {
        let a = sample(16, 7).unwrap();
        let b = sample(16, 7).unwrap();
        let bits = |s: &GinibreSample| -> Vec<(u64, u64)> {
            s.matrix.entries().iter().map(|z| (z.re.to_bits(), z.im.to_bits())).collect()
        };
        assert_eq!(bits(&a), bits(&b));
        assert_ne!(bits(&a), bits(&sample(16, 8).unwrap()));
        assert_ne!(bits(&a), bits(&sample_stream(16, 7, 1).unwrap()));
        assert!(sample(0, 1).is_err());
    }

    #[test]
    fn entries_are_centered() {
        let dim = 64;
        let mut sum = Complex64::new(0.0, 0.0);
        let mut count = 0.0;
        for s in 0..100 {
            for z in sample_stream(dim, 3, s).unwrap().matrix.entries() {
                sum += z;
                count += 1.0;
            }
        }
        let mean = sum / count;
        // Each real part has variance 1/(2N).
        let se = (0.5 / dim as f64 / count).sqrt();
        assert!(mean.re.abs() < 4.0 * se && mean.im.abs() < 4.0 * se, "{mean}");
    }

    #[test]
    fn entry_variance_is_one_over_n() {
        let dim = 100;
        let m = sample(dim, 11).unwrap().matrix;
        let second_moment = m.entries().iter().map(|z| z.norm_sqr()).sum::<f64>() / (dim * dim) as f64;
        assert!((second_moment * dim as f64 - 1.0).abs() < 0.05, "{second_moment}");
    }

    #[test]
    fn matrix_algebra() {
        let x = sample(5, 1).unwrap().matrix;
        let y = sample_stream(5, 1, 2).unwrap().matrix;
        let product = x.mul(&y);
        let trace: Complex64 = (0..5).map(|i| product.get(i, i)).sum();
        assert!((trace - x.trace_of_product(&y)).norm() < 1e-12);
        let lhs = product.adjoint();
        let rhs = y.adjoint().mul(&x.adjoint());
        assert!(lhs.entries().iter().zip(rhs.entries()).all(|(a, b)| (a - b).norm() < 1e-12));
        assert_eq!(x.mul(&Matrix::identity(5)), x);
    }

    #[test]
    fn cached_products_match_direct_products() {
        let x = sample(6, 5).unwrap().matrix;
        let xs = x.adjoint();
        let mut cache = ProductCache::new(x.clone());
        for word in ["110100", "0011", "1", "010", "1100"] {
            let bits = w(word).bits().to_vec();
            let direct = bits
                .iter()
                .fold(Matrix::identity(6), |acc, &b| acc.mul(if b { &x } else { &xs }));
            let cached = cache.product(&bits);
            assert!(direct.entries().iter().zip(cached.entries()).all(|(a, b)| (a - b).norm() < 1e-10));
        }
    }

    #[test]
    fn trace_of_x_x_adjoint_is_one() {
        let e = estimate("1,1", 32, 200, 42);
        assert!((e.mean - 1.0).abs() <= 3.0 * e.standard_error, "{e:?}");
        assert_eq!(e.phi, Count::from(1u32));
    }

    #[test]
    fn moments_approach_phi() {
        for (word, target) in [("1010", 2.0), ("1,1,1,1", 2.0), ("2,2", 1.0), ("101010", 5.0)] {
            let e = estimate(word, 64, 40, 1);
            assert!((e.mean - target).abs() / target < 0.15, "{word}: {e:?}");
        }
    }

    #[test]
    fn unbalanced_moments_vanish() {
        for word in ["11", "110", "1110"] {
            let e = estimate(word, 32, 100, 9);
            assert!(e.mean.abs() <= 4.0 * e.standard_error + 1e-12, "{word}: {e:?}");
            assert_eq!(e.phi, Count::default());
        }
    }

    #[test]
    fn estimates_are_reproducible() {
        let words: Vec<Word> = balanced_words(2).collect();
        let a = estimate_words(&words, 16, 8, 5).unwrap();
        let b = estimate_words(&words, 16, 8, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn finite_dimension_bias_shrinks() {
        for word in ["1010", "110100", "101010"] {
            let small = estimate(word, 8, 400, 2);
            let large = estimate(word, 32, 100, 2);
            let target = count_to_f64(&small.phi);
            let slack = 3.0 * (small.standard_error + large.standard_error);
            assert!((large.mean - target).abs() <= (small.mean - target).abs() + slack, "{word}");
        }
    }

    #[test]
    fn compare_verdicts() {
        let profile = RunProfile::from_interleaved(&[2, 2]);
        let pass = compare(&profile, 32, 20, 4, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(pass.verdict, Verdict::Pass);
        let strict = compare(&profile, 32, 20, 4, 0.0).unwrap();
        assert_eq!(strict.verdict, Verdict::Flag);
        let json = serde_json::to_value(&pass).unwrap();
        assert_eq!(json["phi"], "1");
        assert!(json.get("relError").is_some() && json.get("N").is_some());
    }

    #[test]
    fn budget_is_enforced() {
        let profile = RunProfile::from_interleaved(&[100, 100]);
        assert!(matches!(moment_estimate(&profile, 128, 2, 0), Err(Error::Budget(_))));
        assert!(moment_estimate(&RunProfile::from_interleaved(&[1, 1]), 4, 0, 0).is_err());
    }
}
