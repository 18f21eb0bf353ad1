//! Exhaustive and sampled checks behind `cycdes verify`.

use std::collections::HashSet;
use std::ops::Range;

use cyclic_descents::enumerate::{cardinality_u128, SAMPLE_BLOCK};
use cyclic_descents::stats::stats_of_images;
use cyclic_descents::transfer::{capital_phi_unchecked, has_positive_top};
use cyclic_descents::{
    capital_psi_d, capital_psi_dbar, cardinality, check_order_swap_properties, colored_phi,
    colored_psi, descent_set, exact_distribution, exact_moments, iterate, iterate_range, phi_classic,
    phi_classic_instrumented, phi_plus, psi_plus, rank, refined_descent_table, sample,
    shard_range, theoretical_moments, truncated_descent_set, ColoredPermutation, DomainKind,
    DomainSpec, Element, Error, Sampler, SignedPermutation, Statistic, TransferTrace,
};
use num_bigint::BigUint;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

const CHUNK: u128 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Claim {
    PhiDescents,
    #[value(name = "bijection-D")]
    BijectionD,
    #[value(name = "bijection-Dbar")]
    BijectionDbar,
    Inverses,
    CorollaryCounts,
    ElizaldeEquivalence,
    Colored,
    Moments,
    OrderSwapProperties,
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::PhiDescents => "phi-descents",
            Claim::BijectionD => "bijection-D",
            Claim::BijectionDbar => "bijection-Dbar",
            Claim::Inverses => "inverses",
            Claim::CorollaryCounts => "corollary-counts",
            Claim::ElizaldeEquivalence => "elizalde-equivalence",
            Claim::Colored => "colored",
            Claim::Moments => "moments",
            Claim::OrderSwapProperties => "order-swap-properties",
        }
    }

    fn shardable(self) -> bool {
        matches!(
            self,
            Claim::PhiDescents | Claim::Inverses | Claim::ElizaldeEquivalence | Claim::OrderSwapProperties
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub index: usize,
    pub total: usize,
}

impl Shard {
    pub const WHOLE: Shard = Shard { index: 0, total: 1 };
}

pub fn parse_shard(s: &str) -> Result<Shard, String> {
    let (i, t) = s.split_once('/').ok_or_else(|| format!("shard '{s}' is not of the form i/t"))?;
    let index: usize = i.trim().parse().map_err(|_| format!("bad shard index '{i}'"))?;
    let total: usize = t.trim().parse().map_err(|_| format!("bad shard total '{t}'"))?;
    if total == 0 || index >= total {
        return Err(format!("shard index {index} must be below the total {total}"));
    }
    Ok(Shard { index, total })
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub claim: Claim,
    pub n: usize,
    pub r: u32,
    pub shard: Shard,
    pub instrument: bool,
    pub allow_big: bool,
    pub samples: Option<usize>,
    pub seed: u64,
}

/// Outcome of one claim. `details` are extra key/value lines in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub claim: Claim,
    pub n: usize,
    pub shard: Shard,
    pub checked: u128,
    pub counterexample: Option<String>,
    pub details: Vec<(String, String)>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks every element of `d` in `range`, in parallel chunks, and returns
/// the number checked and the failure with the smallest index.
fn check_range<F>(d: &DomainSpec, range: Range<u128>, allow_big: bool, check: F) -> Result<(u128, Option<String>), Error>
where
    F: Fn(&Element) -> Option<String> + Sync,
{
    iterate_range(d, range.clone(), allow_big)?;
    let len = range.end - range.start;
    let chunks = len.div_ceil(CHUNK) as u64;
    let first = (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let lo = range.start + c as u128 * CHUNK;
            let hi = (lo + CHUNK).min(range.end);
            let it = iterate_range(d, lo..hi, true).expect("chunk lies inside the range");
            it.zip(lo..hi).find_map(|(e, i)| check(&e).map(|why| (i, format!("{e}: {why}"))))
        })
        .min_by_key(|(i, _)| *i);
    Ok((len, first.map(|(_, s)| s)))
}

fn whole_or_shard(d: &DomainSpec, shard: Shard) -> Result<Range<u128>, Error> {
    let size = cardinality_u128(d)
        .ok_or_else(|| Error::BudgetExceeded { size: cardinality(d).to_string(), budget: u64::MAX })?;
    shard_range(size, shard.index, shard.total)
}

fn signed(e: &Element) -> &SignedPermutation {
    e.as_signed().expect("signed domain")
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport, Error> {
    if cfg.shard != Shard::WHOLE && !cfg.claim.shardable() {
        return Err(Error::Unsupported(format!("claim {} cannot be sharded", cfg.claim.name())));
    }
    let n = cfg.n;
    let mut report = VerifyReport {
        claim: cfg.claim,
        n,
        shard: cfg.shard,
        checked: 0,
        counterexample: None,
        details: Vec::new(),
    };
    match cfg.claim {
        Claim::PhiDescents => {
            let d = DomainSpec::cb(n + 1);
            let range = whole_or_shard(&d, cfg.shard)?;
            let bound = 2 * n as u64 + 1;
            let (checked, bad) = check_range(&d, range, cfg.allow_big, |e| {
                let pi = signed(e);
                let sigma = capital_phi_unchecked(pi);
                let (a, b) = (stats_of_images(pi.images()), stats_of_images(sigma.images()));
                if n < 64 {
                    let left = truncated_descent_set(pi, n).expect("degree below the cap");
                    let right = descent_set(&sigma).expect("degree below the cap");
                    if left != right {
                        return Some(format!("descents {left} but image {sigma} has {right}"));
                    }
                }
                if !(a.des == b.des || a.des == b.des + 1) {
                    return Some(format!("des gap {} - {}", a.des, b.des));
                }
                if !(b.fmaj <= a.fmaj && a.fmaj - b.fmaj <= bound) {
                    return Some(format!("fmaj gap {} - {}", a.fmaj, b.fmaj));
                }
                None
            })?;
            report.checked = checked;
            report.counterexample = bad;
        }
        Claim::BijectionD | Claim::BijectionDbar => {
            let d = if cfg.claim == Claim::BijectionD { DomainSpec::cd(n + 1) } else { DomainSpec::cdbar(n + 1) };
            let target = DomainSpec::b(n);
            let size = iterate(&target, cfg.allow_big)?.size_hint().0;
            let mut seen = vec![false; size];
            let mut bad = None;
            let mut checked = 0u128;
            for pi in iterate(&d, cfg.allow_big)? {
                checked += 1;
                let sigma = Element::Signed(capital_phi_unchecked(signed(&pi)));
                let idx = usize::try_from(rank(&target, &sigma)?).expect("index below the budget");
                if std::mem::replace(&mut seen[idx], true) {
                    bad = Some(format!("{pi}: image {sigma} is hit twice"));
                    break;
                }
            }
            let hit = seen.iter().filter(|&&b| b).count();
            if bad.is_none() && hit != size {
                bad = Some(format!("image has {hit} elements, expected {size}"));
            }
            report.checked = checked;
            report.counterexample = bad;
            report.details.push(("image".into(), hit.to_string()));
        }
        Claim::Inverses => {
            let cyclic = DomainSpec::cb(n + 1);
            let (c1, bad1) = check_range(&cyclic, whole_or_shard(&cyclic, cfg.shard)?, cfg.allow_big, |e| {
                let pi = signed(e);
                let sigma = capital_phi_unchecked(pi);
                let back = if pi.in_d() { capital_psi_d(&sigma) } else { capital_psi_dbar(&sigma) };
                if back != *pi {
                    return Some(format!("Phi gives {sigma}, which inverts to {back}"));
                }
                if has_positive_top(pi) {
                    let s = phi_plus(pi, None).expect("positive top");
                    let back = psi_plus(&s, None);
                    if back != *pi {
                        return Some(format!("phi gives {s}, psi returns {back}"));
                    }
                }
                None
            })?;
            let b = DomainSpec::b(n);
            let (c2, bad2) = check_range(&b, whole_or_shard(&b, cfg.shard)?, cfg.allow_big, |e| {
                let sigma = signed(e);
                for (name, pre) in [("PsiD", capital_psi_d(sigma)), ("PsiDbar", capital_psi_dbar(sigma))] {
                    let back = capital_phi_unchecked(&pre);
                    if back != *sigma {
                        return Some(format!("{name} gives {pre}, Phi returns {back}"));
                    }
                }
                let pre = psi_plus(sigma, None);
                match phi_plus(&pre, None) {
                    Ok(back) if back == *sigma => None,
                    Ok(back) => Some(format!("psi gives {pre}, phi returns {back}")),
                    Err(e) => Some(format!("psi gives {pre}, outside the domain of phi: {e}")),
                }
            })?;
            report.checked = c1 + c2;
            report.counterexample = bad1.or(bad2);
        }
        Claim::CorollaryCounts => {
            let b = refined_descent_table(&DomainSpec::b(n), cfg.allow_big)?;
            let cd = refined_descent_table(&DomainSpec::cd(n + 1), cfg.allow_big)?;
            let cdbar = refined_descent_table(&DomainSpec::cdbar(n + 1), cfg.allow_big)?;
            report.checked = 3;
            for (name, t) in [("CD", &cd), ("CDbar", &cdbar)] {
                if t.counts != b.counts && report.counterexample.is_none() {
                    let first = b
                        .counts
                        .iter()
                        .find(|(k, v)| t.counts.get(k) != Some(v))
                        .map(|(k, _)| k.to_string())
                        .unwrap_or_else(|| "extra key".into());
                    report.counterexample = Some(format!("{name} table differs at {first}"));
                }
            }
            let mut text = String::new();
            for (k, v) in &b.counts {
                text.push_str(&format!("{k}:{v}\n"));
            }
            report.details.push(("sets".into(), b.counts.len().to_string()));
            report.details.push(("digest".into(), hex::encode(Sha256::digest(text.as_bytes()))));
        }
        Claim::ElizaldeEquivalence => {
            let d = DomainSpec::new(DomainKind::CS, n + 1)?;
            let instrument = cfg.instrument;
            let (checked, bad) = check_range(&d, whole_or_shard(&d, cfg.shard)?, cfg.allow_big, |e| {
                let pi = signed(e);
                let general = capital_phi_unchecked(pi);
                let (classic, audit) = if instrument {
                    phi_classic_instrumented(pi).expect("unsigned cyclic input")
                } else {
                    (phi_classic(pi).expect("unsigned cyclic input"), Vec::new())
                };
                if classic != general {
                    return Some(format!("unsigned map gives {classic}, signed map gives {general}"));
                }
                audit.first().map(|a| format!("audit: {a}"))
            })?;
            report.checked = checked;
            report.counterexample = bad;
        }
        Claim::Colored => {
            let (checked, bad) = verify_colored(n, cfg.r, cfg.allow_big)?;
            report.checked = checked;
            report.counterexample = bad;
            report.details.push(("r".into(), cfg.r.to_string()));
        }
        Claim::Moments => {
            if n < 5 {
                return Err(Error::Domain(format!(
                    "degree {n} is below 5; the closed forms are only claimed from 5 on"
                )));
            }
            for d in [DomainSpec::cb(n), DomainSpec::cd(n), DomainSpec::cdbar(n)] {
                for stat in [Statistic::Des, Statistic::Fmaj] {
                    let exact = exact_moments(&exact_distribution(&d, stat, cfg.allow_big)?)?;
                    let theory = theoretical_moments(stat, n)?;
                    report.checked += 1;
                    report.details.push((format!("{}.{stat}", d.kind), exact.to_string()));
                    if exact != theory && report.counterexample.is_none() {
                        report.counterexample = Some(format!("{d} {stat}: {exact}, expected {theory}"));
                    }
                }
            }
        }
        Claim::OrderSwapProperties => {
            let check = |pi: &SignedPermutation| -> Option<String> {
                let mut trace = TransferTrace::enabled();
                let traced = phi_plus(pi, Some(&mut trace)).expect("positive top");
                let plain = phi_plus(pi, None).expect("positive top");
                if traced != plain {
                    return Some(format!("traced output {traced} differs from {plain}"));
                }
                check_order_swap_properties(pi, &trace)
                    .first()
                    .map(|v| format!("property {} at step {}: {}", v.property, v.step, v.detail))
            };
            let d = DomainSpec::cb(n + 1);
            match cfg.samples {
                Some(count) => {
                    let range = shard_range(count as u128, cfg.shard.index, cfg.shard.total)?;
                    let (checked, bad) = check_sampled(&d, range, cfg.seed, |pi| {
                        let pi = if has_positive_top(pi) { pi.clone() } else { pi.negate_all() };
                        check(&pi).map(|why| format!("{pi}: {why}"))
                    });
                    report.checked = checked;
                    report.counterexample = bad;
                    report.details.push(("seed".into(), cfg.seed.to_string()));
                }
                None => {
                    let (checked, bad) = check_range(&d, whole_or_shard(&d, cfg.shard)?, cfg.allow_big, |e| {
                        let pi = signed(e);
                        if has_positive_top(pi) {
                            check(pi)
                        } else {
                            None
                        }
                    })?;
                    report.checked = checked;
                    report.counterexample = bad;
                }
            }
        }
    }
    Ok(report)
}

/// Checks draws with indices in `range`; draw `i` comes from stream
/// `i / SAMPLE_BLOCK` of `seed`, matching `sample_many`.
fn check_sampled<F>(d: &DomainSpec, range: Range<u128>, seed: u64, check: F) -> (u128, Option<String>)
where
    F: Fn(&SignedPermutation) -> Option<String> + Sync,
{
    let block = SAMPLE_BLOCK as u128;
    let (first_block, last_block) = (range.start / block, range.end.div_ceil(block));
    let bad = (first_block as u64..last_block as u64)
        .into_par_iter()
        .filter_map(|b| {
            let mut rng = Sampler::new(seed, b);
            let lo = b as u128 * block;
            (lo..lo + block).find_map(|i| {
                let e = sample(d, &mut rng).expect("nonempty domain");
                if !range.contains(&i) {
                    return None;
                }
                check(signed(&e)).map(|why| (i, why))
            })
        })
        .min_by_key(|(i, _)| *i);
    (range.end - range.start, bad.map(|(_, s)| s))
}

/// All of `S_{n,r}`.
fn all_colored(n: usize, r: u32, allow_big: bool) -> Result<Vec<ColoredPermutation>, Error> {
    let s = DomainSpec::new(DomainKind::S, n)?;
    let colorings = (r as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let total = cardinality(&s) * BigUint::from(colorings);
    if !allow_big && total > BigUint::from(cyclic_descents::enumerate::DEFAULT_BUDGET) {
        return Err(Error::BudgetExceeded {
            size: total.to_string(),
            budget: cyclic_descents::enumerate::DEFAULT_BUDGET,
        });
    }
    let mut out = Vec::new();
    for w in iterate(&s, true)? {
        let omega: Vec<u32> = signed(&w).images().iter().map(|&v| v as u32).collect();
        for code in 0..colorings {
            let mut c = code;
            let tau: Vec<u32> = (0..n)
                .map(|_| {
                    let t = (c % r as u128) as u32;
                    c /= r as u128;
                    t
                })
                .collect();
            out.push(ColoredPermutation::new(omega.clone(), tau, r)?);
        }
    }
    Ok(out)
}

fn low_descents(p: &ColoredPermutation, n: usize) -> Vec<usize> {
    p.descent_set().into_iter().filter(|&i| i < n).collect()
}

fn verify_colored(n: usize, r: u32, allow_big: bool) -> Result<(u128, Option<String>), Error> {
    let targets = all_colored(n, r, allow_big)?;
    let mut checked = 0u128;
    for color in 0..r {
        let d = DomainSpec::colored(n + 1, r, Some(color))?;
        let mut image = HashSet::new();
        for e in iterate(&d, allow_big)? {
            checked += 1;
            let p = e.as_colored().expect("colored domain");
            let q = colored_phi(p)?;
            if low_descents(p, n) != low_descents(&q, n) {
                return Ok((checked, Some(format!("{p}: descents change under the map to {q}"))));
            }
            if !image.insert(q.clone()) {
                return Ok((checked, Some(format!("{p}: image {q} is hit twice for color {color}"))));
            }
        }
        if image.len() != targets.len() {
            return Ok((checked, Some(format!("color {color}: image has {} elements", image.len()))));
        }
        for s in &targets {
            checked += 1;
            let p = colored_psi(s, color)?;
            if p.color() != color || !p.is_cyclic() {
                return Ok((checked, Some(format!("{s}: preimage {p} has the wrong color or shape"))));
            }
            let back = colored_phi(&p)?;
            if back != *s {
                return Ok((checked, Some(format!("{s}: preimage {p} maps to {back}"))));
            }
        }
    }
    Ok((checked, None))
}

/// Text lines for a report, in a fixed order.
pub fn report_text(r: &VerifyReport) -> String {
    let mut out = format!(
        "claim={} n={} shard={}/{} checked={} result={}\n",
        r.claim.name(),
        r.n,
        r.shard.index,
        r.shard.total,
        r.checked,
        if r.passed() { "PASS" } else { "FAIL" }
    );
    for (k, v) in &r.details {
        out.push_str(&format!("{k}={v}\n"));
    }
    if let Some(c) = &r.counterexample {
        out.push_str(&format!("counterexample={c}\n"));
    }
    out
}

pub fn report_json(r: &VerifyReport) -> serde_json::Value {
    let details: serde_json::Map<String, serde_json::Value> =
        r.details.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect();
    serde_json::json!({
        "claim": r.claim.name(),
        "n": r.n,
        "shard": format!("{}/{}", r.shard.index, r.shard.total),
        "checked": r.checked.to_string(),
        "passed": r.passed(),
        "counterexample": r.counterexample,
        "details": details,
    })
}
