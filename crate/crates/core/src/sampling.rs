//! Exact sampling from a computed output distribution, and a Pearson
//! goodness-of-fit check of the samples against it.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::bosonic::{OutputDistribution, NORMALIZATION_TOL};
use crate::error::{Error, Result};

/// Minimum expected count per bin before pooling kicks in.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleRun {
    pub seed: u64,
    pub count: u64,
    /// Basis index -> number of draws. Only observed outcomes are present.
    pub counts: BTreeMap<usize, u64>,
}

impl SampleRun {
    pub fn frequency(&self, index: usize) -> f64 {
        self.counts.get(&index).copied().unwrap_or(0) as f64 / self.count as f64
    }
}

/// Draws `count` i.i.d. outcomes by inverse CDF over the canonical order.
pub fn sample(dist: &OutputDistribution, count: u64, seed: u64) -> Result<SampleRun> {
    dist.check_normalized(NORMALIZATION_TOL)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let cdf: Vec<f64> = dist
        .clamped_probabilities()
        .iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let total = *cdf.last().expect("normalized distribution is non-empty");
    let last = cdf.len() - 1;
    let mut counts = BTreeMap::new();
    for _ in 0..count {
        let u = rng.random::<f64>() * total;
        let idx = cdf.partition_point(|&c| c <= u).min(last);
        *counts.entry(idx).or_insert(0) += 1;
    }
    Ok(SampleRun {
        seed,
        count,
        counts,
    })
}

/// Pearson chi-square statistic with its tail probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GofResult {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    /// Number of bins after pooling.
    pub bins: usize,
}

/// Chi-square goodness of fit of `run` against `dist`.
///
/// Adjacent outcomes (canonical order) are pooled until each bin expects at
/// least [`MIN_EXPECTED`] draws; a short tail joins the last full bin.
pub fn chi_square_gof(run: &SampleRun, dist: &OutputDistribution) -> Result<GofResult> {
    let n = run.count as f64;
    let probs = dist.clamped_probabilities();
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut exp_acc, mut obs_acc) = (0.0, 0.0);
    for (i, p) in probs.iter().enumerate() {
        exp_acc += p * n;
        obs_acc += run.counts.get(&i).copied().unwrap_or(0) as f64;
        if exp_acc >= MIN_EXPECTED {
            bins.push((exp_acc, obs_acc));
            exp_acc = 0.0;
            obs_acc = 0.0;
        }
    }
    if exp_acc > 0.0 || obs_acc > 0.0 {
        match bins.last_mut() {
            Some(last) => {
                last.0 += exp_acc;
                last.1 += obs_acc;
            }
            None => bins.push((exp_acc, obs_acc)),
        }
    }
    if bins.len() < 2 {
        return Err(Error::TooFewBins(bins.len()));
    }
    let statistic: f64 = bins.iter().map(|(e, o)| (o - e).powi(2) / e).sum();
    let dof = bins.len() - 1;
    let chi2 = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Ok(GofResult {
        statistic,
        degrees_of_freedom: dof,
        p_value: chi2.sf(statistic),
        bins: bins.len(),
    })
}
