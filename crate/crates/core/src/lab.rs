//! Exact distributions of the statistics over a domain, descent-set tables,
//! closed-form moments, and Monte-Carlo normality diagnostics.
//!
//! Exact paths use big integers and rationals only. Counting splits the index
//! range into fixed chunks, and sampling splits the draws into fixed blocks
//! with one random stream per block. Results therefore do not depend on the
//! number of threads.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use statrs::function::erf::erfc;

use crate::enumerate::{iterate, iterate_range, sample, DomainKind, DomainSpec, Element, SAMPLE_BLOCK};
use crate::error::{Error, Result};
use crate::rng::Sampler;
use crate::stats::{descent_bits, DescentSet, StatRecord, Statistic, DESCENT_SET_MAX_DEGREE};

const CHUNK: u128 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub domain: DomainSpec,
    pub stat: Statistic,
    pub counts: BTreeMap<u64, BigUint>,
}

impl DistributionTable {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedTable {
    pub domain: DomainSpec,
    pub counts: BTreeMap<DescentSet, BigUint>,
}

impl RefinedTable {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub mean: BigRational,
    pub variance: BigRational,
}

impl fmt::Display for MomentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mean={} variance={}", self.mean, self.variance)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalityReport {
    pub n: usize,
    pub domain: DomainSpec,
    pub stat: Statistic,
    pub sample_count: usize,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    pub theoretical_mean: f64,
    pub theoretical_variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    /// Kolmogorov-Smirnov distance of the standardized samples from N(0, 1).
    pub ks: f64,
    /// Same distance with the normal CDF evaluated half a unit above each
    /// attained value, which removes the lattice jump.
    pub ks_continuity: f64,
}

/// Counts elements of `d` by `key`, in parallel over fixed index chunks.
fn count_by<K, F>(d: &DomainSpec, allow_big: bool, key: F) -> Result<BTreeMap<K, BigUint>>
where
    K: Ord + Send,
    F: Fn(&Element) -> K + Sync,
{
    let size = iterate(d, allow_big)?.size_hint().0 as u128;
    let chunks = size.div_ceil(CHUNK) as u64;
    let merged = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c as u128 * CHUNK;
            let range = lo..(lo + CHUNK).min(size);
            let mut local = BTreeMap::<K, u128>::new();
            for e in iterate_range(d, range, true).expect("chunk lies inside the domain") {
                *local.entry(key(&e)).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(merged.into_iter().map(|(k, v)| (k, BigUint::from(v))).collect())
}

pub fn exact_distribution(d: &DomainSpec, stat: Statistic, allow_big: bool) -> Result<DistributionTable> {
    let counts = count_by(d, allow_big, |e| stat.of(&e.stats()))?;
    Ok(DistributionTable { domain: *d, stat, counts })
}

/// Tables for all four statistics from a single pass.
pub fn exact_distributions(d: &DomainSpec, allow_big: bool) -> Result<Vec<DistributionTable>> {
    let joint = count_by(d, allow_big, |e| {
        let r = e.stats();
        (r.des, r.maj, r.neg, r.fmaj)
    })?;
    Ok(Statistic::ALL
        .iter()
        .map(|&stat| {
            let mut counts = BTreeMap::<u64, BigUint>::new();
            for (&(des, maj, neg, fmaj), c) in &joint {
                let v = stat.of(&StatRecord { des, maj, neg, fmaj });
                *counts.entry(v).or_default() += c;
            }
            DistributionTable { domain: *d, stat, counts }
        })
        .collect())
}

/// Counts by descent set. Cyclic domains of degree `n` key on the descent
/// set intersected with `{0, ..., n-2}`.
pub fn refined_descent_table(d: &DomainSpec, allow_big: bool) -> Result<RefinedTable> {
    let n = d.n;
    if d.kind == DomainKind::CSnr {
        return Err(Error::Unsupported("descent-set tables of colored domains".into()));
    }
    if n > DESCENT_SET_MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree: n, cap: DESCENT_SET_MAX_DEGREE });
    }
    let (degree, mask) = if d.kind.is_cyclic() {
        let k = n.saturating_sub(1);
        (k, (1u64 << k) - 1)
    } else {
        (n, u64::MAX)
    };
    let bits = count_by(d, allow_big, |e| {
        descent_bits(e.as_signed().expect("signed domain").images()) & mask
    })?;
    let counts = bits
        .into_iter()
        .map(|(b, c)| Ok((DescentSet::from_bits(degree, b)?, c)))
        .collect::<Result<_>>()?;
    Ok(RefinedTable { domain: *d, counts })
}

pub fn exact_moments(t: &DistributionTable) -> Result<MomentReport> {
    let total = BigInt::from(t.total());
    if total.is_zero() {
        return Err(Error::Domain(format!("empty table for {} on {}", t.stat, t.domain)));
    }
    let (mut s1, mut s2) = (BigInt::zero(), BigInt::zero());
    for (&v, c) in &t.counts {
        let c = BigInt::from(c.clone());
        let v = BigInt::from(v);
        s2 += &c * &v * &v;
        s1 += c * v;
    }
    let mean = BigRational::new(s1, total.clone());
    let variance = BigRational::new(s2, total) - &mean * &mean;
    Ok(MomentReport { mean, variance })
}

fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Mean and variance of `des` or `fmaj` under the uniform law on `B_n`.
/// For cyclic domains of degree `n >= 5` these are also the exact moments.
pub fn theoretical_moments(stat: Statistic, n: usize) -> Result<MomentReport> {
    if n == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    let n = i64::try_from(n).map_err(|_| Error::Domain("degree too large".into()))?;
    match stat {
        Statistic::Des => Ok(MomentReport { mean: ratio(n, 2), variance: ratio(n + 1, 12) }),
        Statistic::Fmaj => Ok(MomentReport {
            mean: ratio(n * n, 2),
            variance: ratio(4 * n * n * n + 6 * n * n - n, 36),
        }),
        other => Err(Error::Unsupported(format!("closed-form moments of {other}"))),
    }
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Values of `stat` on `samples` uniform draws from `d`, drawn exactly as
/// [`crate::enumerate::sample_many`] draws them.
pub fn sample_values(d: &DomainSpec, stat: Statistic, samples: usize, seed: u64) -> Result<Vec<u64>> {
    let blocks = samples.div_ceil(SAMPLE_BLOCK);
    let parts = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = Sampler::new(seed, b as u64);
            let count = SAMPLE_BLOCK.min(samples - b * SAMPLE_BLOCK);
            (0..count).map(|_| Ok(stat.of(&sample(d, &mut rng)?.stats()))).collect::<Result<Vec<u64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.concat())
}

pub fn normality_diagnostics(
    d: &DomainSpec,
    stat: Statistic,
    samples: usize,
    seed: u64,
) -> Result<NormalityReport> {
    if !matches!(d.kind, DomainKind::CB | DomainKind::CD | DomainKind::CDbar) {
        return Err(Error::Unsupported(format!("normality diagnostics on {}", d.kind)));
    }
    if !matches!(stat, Statistic::Des | Statistic::Fmaj) {
        return Err(Error::Unsupported(format!("normality diagnostics for {stat}")));
    }
    if d.n < 5 {
        return Err(Error::Domain(format!(
            "degree {} is below 5, where the closed-form moments are not known to hold",
            d.n
        )));
    }
    if samples < 1000 {
        return Err(Error::Domain(format!("{samples} samples; at least 1000 are required")));
    }
    let theory = theoretical_moments(stat, d.n)?;
    let mu = theory.mean.to_f64().unwrap_or(f64::NAN);
    let var = theory.variance.to_f64().unwrap_or(f64::NAN);
    let sd = var.sqrt();

    let mut values = sample_values(d, stat, samples, seed)?;
    values.sort_unstable();
    let count = values.len() as f64;

    let mean = values.iter().map(|&v| v as f64).sum::<f64>() / count;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in &values {
        let x = v as f64 - mean;
        let x2 = x * x;
        m2 += x2;
        m3 += x2 * x;
        m4 += x2 * x2;
    }
    m2 /= count;
    m3 /= count;
    m4 /= count;

    let (mut ks, mut ks_continuity) = (0.0f64, 0.0f64);
    let mut i = 0;
    while i < values.len() {
        let v = values[i];
        let mut j = i;
        while j < values.len() && values[j] == v {
            j += 1;
        }
        let below = i as f64 / count;
        let upto = j as f64 / count;
        let f = normal_cdf((v as f64 - mu) / sd);
        ks = ks.max((upto - f).abs()).max((f - below).abs());
        let fc = normal_cdf((v as f64 + 0.5 - mu) / sd);
        ks_continuity = ks_continuity.max((upto - fc).abs());
        i = j;
    }

    Ok(NormalityReport {
        n: d.n,
        domain: *d,
        stat,
        sample_count: samples,
        seed,
        mean,
        variance: m2,
        theoretical_mean: mu,
        theoretical_variance: var,
        skewness: m3 / m2.powf(1.5),
        excess_kurtosis: m4 / (m2 * m2) - 3.0,
        ks,
        ks_continuity,
    })
}
