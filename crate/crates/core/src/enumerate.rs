//! Exhaustive iteration, ranking, and uniform sampling over the finite
//! domains the transfer maps act on.
//!
//! Every domain is indexed by a mixed-radix code read least significant digit
//! first. Sign or color digits come first, then the digits of a permutation
//! code. A permutation code `d_0, d_1, ...` with `d_i < m - i` is decoded by
//! starting from the identity of `[m]` and swapping slot `i` with slot
//! `i + d_i`. The all-zero code is the identity.
//!
//! Cyclic domains are encoded by writing the unique cycle with the magnitude
//! `n` entry last: an arrangement `b_1, ..., b_{n-1}` of `[n-1]` with signs
//! (or colors) gives the cycle `(s_1 b_1, ..., s_{n-1} b_{n-1}, s_n n)`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::colored::ColoredPermutation;
use crate::error::{Error, Result};
use crate::perm::SignedPermutation;
use crate::rng::Sampler;
use crate::stats::{stats_of_images, StatRecord};

/// Exhaustive iteration refuses domains larger than this unless overridden.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomainKind {
    /// All signed permutations.
    B,
    /// Signed permutations with an even number of negative entries.
    D,
    /// Cyclic signed permutations.
    CB,
    /// Cyclic and even.
    CD,
    /// Cyclic and odd.
    CDbar,
    /// Ordinary permutations.
    S,
    /// Cyclic ordinary permutations.
    CS,
    /// Cyclic colored permutations with `r` colors.
    CSnr,
}

impl DomainKind {
    pub const ALL: [DomainKind; 8] = [
        DomainKind::B,
        DomainKind::D,
        DomainKind::CB,
        DomainKind::CD,
        DomainKind::CDbar,
        DomainKind::S,
        DomainKind::CS,
        DomainKind::CSnr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DomainKind::B => "B",
            DomainKind::D => "D",
            DomainKind::CB => "CB",
            DomainKind::CD => "CD",
            DomainKind::CDbar => "CDbar",
            DomainKind::S => "S",
            DomainKind::CS => "CS",
            DomainKind::CSnr => "CSnr",
        }
    }

    pub fn is_cyclic(self) -> bool {
        matches!(
            self,
            DomainKind::CB | DomainKind::CD | DomainKind::CDbar | DomainKind::CS | DomainKind::CSnr
        )
    }
}

impl FromStr for DomainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DomainKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("domain {s}")))
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DomainSpec {
    pub kind: DomainKind,
    pub n: usize,
    /// Number of colors; 1 for every kind except `CSnr`.
    pub r: u32,
    /// Required total color, `CSnr` only.
    pub color_filter: Option<u32>,
}

impl DomainSpec {
    pub fn new(kind: DomainKind, n: usize) -> Result<Self> {
        if kind == DomainKind::CSnr {
            return Err(Error::Domain("CSnr needs a color count; use DomainSpec::colored".into()));
        }
        if n > crate::perm::MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree: n, cap: crate::perm::MAX_DEGREE });
        }
        Ok(Self { kind, n, r: 1, color_filter: None })
    }

    pub fn colored(n: usize, r: u32, color_filter: Option<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Domain("color count must be positive".into()));
        }
        if let Some(c) = color_filter {
            if c >= r {
                return Err(Error::Domain(format!("color {c} outside Z_{r}")));
            }
        }
        if n > crate::perm::MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree: n, cap: crate::perm::MAX_DEGREE });
        }
        Ok(Self { kind: DomainKind::CSnr, n, r, color_filter })
    }

    pub fn b(n: usize) -> Self {
        Self { kind: DomainKind::B, n, r: 1, color_filter: None }
    }

    pub fn cb(n: usize) -> Self {
        Self { kind: DomainKind::CB, n, r: 1, color_filter: None }
    }

    pub fn cd(n: usize) -> Self {
        Self { kind: DomainKind::CD, n, r: 1, color_filter: None }
    }

    pub fn cdbar(n: usize) -> Self {
        Self { kind: DomainKind::CDbar, n, r: 1, color_filter: None }
    }

    /// Digit bases of the index code, least significant first.
    fn bases(&self) -> Vec<u64> {
        let n = self.n as u64;
        let perm = |m: u64| (0..m).map(move |i| m - i);
        let mut out = Vec::new();
        match self.kind {
            DomainKind::B => {
                out.extend(std::iter::repeat_n(2, self.n));
                out.extend(perm(n));
            }
            DomainKind::D => {
                out.extend(std::iter::repeat_n(2, self.n.saturating_sub(1)));
                out.extend(perm(n));
            }
            DomainKind::S => out.extend(perm(n)),
            _ if self.n == 0 => {}
            DomainKind::CB => {
                out.extend(std::iter::repeat_n(2, self.n));
                out.extend(perm(n - 1));
            }
            DomainKind::CD | DomainKind::CDbar => {
                out.extend(std::iter::repeat_n(2, self.n - 1));
                out.extend(perm(n - 1));
            }
            DomainKind::CS => out.extend(perm(n - 1)),
            DomainKind::CSnr => {
                let free = if self.color_filter.is_some() { self.n - 1 } else { self.n };
                out.extend(std::iter::repeat_n(self.r as u64, free));
                out.extend(perm(n - 1));
            }
        }
        out
    }

    fn is_empty_domain(&self) -> bool {
        self.kind.is_cyclic() && self.n == 0
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}", self.kind, self.n)?;
        if self.kind == DomainKind::CSnr {
            write!(f, ", r={}", self.r)?;
            if let Some(c) = self.color_filter {
                write!(f, ", color={c}")?;
            }
        }
        f.write_str(")")
    }
}

/// A member of some domain.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Element {
    Signed(SignedPermutation),
    Colored(ColoredPermutation),
}

impl Element {
    pub fn as_signed(&self) -> Option<&SignedPermutation> {
        match self {
            Element::Signed(s) => Some(s),
            Element::Colored(_) => None,
        }
    }

    pub fn into_signed(self) -> Option<SignedPermutation> {
        match self {
            Element::Signed(s) => Some(s),
            Element::Colored(_) => None,
        }
    }

    pub fn as_colored(&self) -> Option<&ColoredPermutation> {
        match self {
            Element::Colored(c) => Some(c),
            Element::Signed(_) => None,
        }
    }

    /// Statistics of the element. For colored elements `neg` holds the
    /// total color sum and `fmaj` the colored flag major index.
    pub fn stats(&self) -> StatRecord {
        match self {
            Element::Signed(s) => stats_of_images(s.images()),
            Element::Colored(c) => {
                let s = c.stats();
                StatRecord { des: s.des, maj: s.maj, neg: s.col, fmaj: s.fmaj }
            }
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Signed(s) => fmt::Display::fmt(s, f),
            Element::Colored(c) => fmt::Display::fmt(c, f),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Source of mixed-radix digits.
trait Digits {
    fn digit(&mut self, base: u64) -> u64;
}

struct SmallIndex(u128);

impl Digits for SmallIndex {
    fn digit(&mut self, base: u64) -> u64 {
        let d = (self.0 % base as u128) as u64;
        self.0 /= base as u128;
        d
    }
}

struct BigIndex(BigUint);

impl Digits for BigIndex {
    fn digit(&mut self, base: u64) -> u64 {
        let d = (&self.0 % base).to_u64().expect("remainder below base");
        self.0 /= base;
        d
    }
}

impl Digits for Sampler {
    fn digit(&mut self, base: u64) -> u64 {
        self.below(base)
    }
}

pub fn cardinality(d: &DomainSpec) -> BigUint {
    if d.is_empty_domain() {
        return BigUint::zero();
    }
    d.bases().into_iter().fold(BigUint::one(), |acc, b| acc * b)
}

/// Cardinality as `u128`, if it fits.
pub fn cardinality_u128(d: &DomainSpec) -> Option<u128> {
    if d.is_empty_domain() {
        return Some(0);
    }
    d.bases().into_iter().try_fold(1u128, |acc, b| acc.checked_mul(b as u128))
}

fn decode_perm(src: &mut impl Digits, m: usize) -> Vec<u32> {
    let mut a: Vec<u32> = (1..=m as u32).collect();
    for i in 0..m {
        let k = src.digit((m - i) as u64) as usize;
        a.swap(i, i + k);
    }
    a
}

/// Digits `d_i` that [`decode_perm`] turns into `target`.
fn encode_perm(target: &[u32]) -> Vec<u64> {
    let m = target.len();
    let mut a: Vec<u32> = (1..=m as u32).collect();
    let mut pos: Vec<usize> = (0..=m).map(|v| v.saturating_sub(1)).collect();
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let p = pos[target[i] as usize];
        out.push((p - i) as u64);
        let displaced = a[i];
        a.swap(i, p);
        pos[displaced as usize] = p;
        pos[target[i] as usize] = i;
    }
    out
}

fn sign(bit: u64) -> i32 {
    if bit == 1 {
        -1
    } else {
        1
    }
}

/// One-line images of the cycle `entries`.
fn images_of_cycle(entries: &[i32]) -> Vec<i32> {
    let n = entries.len();
    let mut images = vec![0; n];
    for k in 0..n {
        images[entries[k].unsigned_abs() as usize - 1] = entries[(k + 1) % n];
    }
    images
}

/// Cycle through `n` ending at the entry of magnitude `n`, or `None` if the
/// cycle misses some magnitude.
fn cycle_ending_at_top(images: &[i32]) -> Option<Vec<i32>> {
    let n = images.len();
    let mut out = Vec::with_capacity(n);
    let mut m = n;
    loop {
        let v = images[m - 1];
        out.push(v);
        m = v.unsigned_abs() as usize;
        if m == n || out.len() > n {
            break;
        }
    }
    (out.len() == n).then_some(out)
}

fn negatives(images: &[i32]) -> usize {
    images.iter().filter(|&&v| v < 0).count()
}

fn decode(d: &DomainSpec, src: &mut impl Digits) -> Element {
    let n = d.n;
    let signed = |v: Vec<i32>| Element::Signed(SignedPermutation::from_images_unchecked(v));
    match d.kind {
        DomainKind::B | DomainKind::D => {
            let free = if d.kind == DomainKind::B { n } else { n.saturating_sub(1) };
            let signs: Vec<i32> = (0..free).map(|_| sign(src.digit(2))).collect();
            let a = decode_perm(src, n);
            let mut images: Vec<i32> =
                a.iter().zip(signs.iter().chain(std::iter::repeat(&1))).map(|(&v, &s)| s * v as i32).collect();
            if d.kind == DomainKind::D && negatives(&images) % 2 == 1 {
                images[n - 1] = -images[n - 1];
            }
            signed(images)
        }
        DomainKind::S => signed(decode_perm(src, n).into_iter().map(|v| v as i32).collect()),
        DomainKind::CB | DomainKind::CD | DomainKind::CDbar | DomainKind::CS => {
            let free = match d.kind {
                DomainKind::CB => n,
                DomainKind::CS => 0,
                _ => n - 1,
            };
            let mut signs: Vec<i32> = (0..free).map(|_| sign(src.digit(2))).collect();
            signs.resize(n, 1);
            let arrangement = decode_perm(src, n - 1);
            let mut entries: Vec<i32> = arrangement
                .iter()
                .chain(std::iter::once(&(n as u32)))
                .zip(&signs)
                .map(|(&b, &s)| s * b as i32)
                .collect();
            let odd = negatives(&entries) % 2 == 1;
            if (d.kind == DomainKind::CD && odd) || (d.kind == DomainKind::CDbar && !odd) {
                entries[n - 1] = -entries[n - 1];
            }
            signed(images_of_cycle(&entries))
        }
        DomainKind::CSnr => {
            let r = d.r as u64;
            let free = if d.color_filter.is_some() { n - 1 } else { n };
            let mut tau: Vec<u32> = (0..free).map(|_| src.digit(r) as u32).collect();
            if let Some(c) = d.color_filter {
                let sum: u64 = tau.iter().map(|&t| t as u64).sum();
                tau.push(((c as u64 + r * n as u64 - sum % r) % r) as u32);
            }
            let mut entries: Vec<i32> = decode_perm(src, n - 1).into_iter().map(|v| v as i32).collect();
            entries.push(n as i32);
            let omega = images_of_cycle(&entries).into_iter().map(|v| v as u32).collect();
            Element::Colored(ColoredPermutation::new(omega, tau, d.r).expect("decoded colored element is valid"))
        }
    }
}

fn check_index(d: &DomainSpec, index: &BigUint) -> Result<()> {
    let size = cardinality(d);
    if *index >= size {
        return Err(Error::RankOutOfRange { index: index.to_string(), size: size.to_string() });
    }
    Ok(())
}

pub fn unrank(d: &DomainSpec, index: &BigUint) -> Result<Element> {
    check_index(d, index)?;
    Ok(match index.to_u128() {
        Some(i) => decode(d, &mut SmallIndex(i)),
        None => decode(d, &mut BigIndex(index.clone())),
    })
}

/// Fast path of [`unrank`] for indices that fit `u128`.
pub fn unrank_u128(d: &DomainSpec, index: u128) -> Result<Element> {
    match cardinality_u128(d) {
        Some(size) if index >= size => Err(Error::RankOutOfRange {
            index: index.to_string(),
            size: size.to_string(),
        }),
        _ => Ok(decode(d, &mut SmallIndex(index))),
    }
}

/// Digits of the code of `e` in `d`, least significant first.
fn encode(d: &DomainSpec, e: &Element) -> Result<Vec<u64>> {
    let n = d.n;
    let not_member = || Error::Domain(format!("{e} is not in {d}"));
    let bit = |v: i32| u64::from(v < 0);
    match (d.kind, e) {
        (DomainKind::CSnr, Element::Colored(c)) => {
            if c.degree() != n || c.colors() != d.r || !c.is_cyclic() || n == 0 {
                return Err(not_member());
            }
            if d.color_filter.is_some_and(|f| f != c.color()) {
                return Err(not_member());
            }
            let free = if d.color_filter.is_some() { n - 1 } else { n };
            let mut out: Vec<u64> = c.tau()[..free].iter().map(|&t| t as u64).collect();
            let cycle = cycle_ending_at_top(c.omega().images()).ok_or_else(not_member)?;
            let arrangement: Vec<u32> = cycle[..n - 1].iter().map(|v| v.unsigned_abs()).collect();
            out.extend(encode_perm(&arrangement));
            Ok(out)
        }
        (DomainKind::CSnr, _) | (_, Element::Colored(_)) => Err(not_member()),
        (kind, Element::Signed(s)) => {
            let images = s.images();
            if s.degree() != n {
                return Err(not_member());
            }
            let even = negatives(images).is_multiple_of(2);
            let unsigned = s.is_unsigned();
            match kind {
                DomainKind::B | DomainKind::D | DomainKind::S => {
                    if (kind == DomainKind::D && !even) || (kind == DomainKind::S && !unsigned) {
                        return Err(not_member());
                    }
                    let free = match kind {
                        DomainKind::B => n,
                        DomainKind::D => n.saturating_sub(1),
                        _ => 0,
                    };
                    let mut out: Vec<u64> = images[..free].iter().map(|&v| bit(v)).collect();
                    let magnitudes: Vec<u32> = images.iter().map(|v| v.unsigned_abs()).collect();
                    out.extend(encode_perm(&magnitudes));
                    Ok(out)
                }
                _ => {
                    if n == 0
                        || (kind == DomainKind::CD && !even)
                        || (kind == DomainKind::CDbar && even)
                        || (kind == DomainKind::CS && !unsigned)
                    {
                        return Err(not_member());
                    }
                    let cycle = cycle_ending_at_top(images).ok_or_else(not_member)?;
                    let free = match kind {
                        DomainKind::CB => n,
                        DomainKind::CS => 0,
                        _ => n - 1,
                    };
                    let mut out: Vec<u64> = cycle[..free].iter().map(|&v| bit(v)).collect();
                    let arrangement: Vec<u32> = cycle[..n - 1].iter().map(|v| v.unsigned_abs()).collect();
                    out.extend(encode_perm(&arrangement));
                    Ok(out)
                }
            }
        }
    }
}

/// Index of `e` in `d`; inverse of [`unrank`].
pub fn rank(d: &DomainSpec, e: &Element) -> Result<BigUint> {
    let digits = encode(d, e)?;
    let bases = d.bases();
    debug_assert_eq!(digits.len(), bases.len());
    let mut acc = BigUint::zero();
    for (digit, base) in digits.iter().zip(&bases).rev() {
        acc = acc * *base + *digit;
    }
    Ok(acc)
}

/// Iterator over an index range of a domain, in index order.
pub struct DomainIter {
    spec: DomainSpec,
    next: u128,
    end: u128,
}

impl Iterator for DomainIter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.next >= self.end {
            return None;
        }
        let e = decode(&self.spec, &mut SmallIndex(self.next));
        self.next += 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.end - self.next).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

fn budget_check(size: &BigUint, allow_big: bool) -> Result<u128> {
    if !allow_big && *size > BigUint::from(DEFAULT_BUDGET) {
        return Err(Error::BudgetExceeded { size: size.to_string(), budget: DEFAULT_BUDGET });
    }
    size.to_u128().ok_or_else(|| Error::BudgetExceeded { size: size.to_string(), budget: u64::MAX })
}

/// Every element of `d` exactly once. Refuses domains above
/// [`DEFAULT_BUDGET`] unless `allow_big` is set.
pub fn iterate(d: &DomainSpec, allow_big: bool) -> Result<DomainIter> {
    let end = budget_check(&cardinality(d), allow_big)?;
    Ok(DomainIter { spec: *d, next: 0, end })
}

/// Elements with indices in `range`. The budget applies to the range length.
pub fn iterate_range(d: &DomainSpec, range: Range<u128>, allow_big: bool) -> Result<DomainIter> {
    let size = cardinality_u128(d)
        .ok_or_else(|| Error::BudgetExceeded { size: cardinality(d).to_string(), budget: u64::MAX })?;
    if range.start > range.end || range.end > size {
        return Err(Error::RankOutOfRange { index: range.end.to_string(), size: size.to_string() });
    }
    budget_check(&BigUint::from(range.end - range.start), allow_big)?;
    Ok(DomainIter { spec: *d, next: range.start, end: range.end })
}

/// Index range of shard `shard` out of `total` equal shards of `0..size`.
pub fn shard_range(size: u128, shard: usize, total: usize) -> Result<Range<u128>> {
    if total == 0 || shard >= total {
        return Err(Error::Domain(format!("shard {shard} of {total}")));
    }
    let cut = |k: usize| {
        let (q, r) = (size / total as u128, size % total as u128);
        q * k as u128 + r * k as u128 / total as u128
    };
    Ok(cut(shard)..cut(shard + 1))
}

/// Uniform element of `d`. Cyclic even and odd classes are drawn from the
/// cyclic class and corrected by flipping the sign of the magnitude `n`
/// entry, `D` likewise from `B` by flipping the last entry, and a fixed
/// total color by resetting the color of `n`.
pub fn sample(d: &DomainSpec, rng: &mut Sampler) -> Result<Element> {
    if d.is_empty_domain() {
        return Err(Error::Domain(format!("{d} is empty")));
    }
    Ok(match d.kind {
        DomainKind::D => {
            let Element::Signed(s) = decode(&DomainSpec::b(d.n), rng) else { unreachable!() };
            let mut images = s.into_images();
            if negatives(&images) % 2 == 1 {
                images[d.n - 1] = -images[d.n - 1];
            }
            Element::Signed(SignedPermutation::from_images_unchecked(images))
        }
        DomainKind::CD | DomainKind::CDbar => {
            let Element::Signed(s) = decode(&DomainSpec::cb(d.n), rng) else { unreachable!() };
            let odd = s.negative_count() % 2 == 1;
            if odd == (d.kind == DomainKind::CD) {
                Element::Signed(flip_top(&s))
            } else {
                Element::Signed(s)
            }
        }
        DomainKind::CSnr if d.color_filter.is_some() => {
            let free = DomainSpec { color_filter: None, ..*d };
            let Element::Colored(c) = decode(&free, rng) else { unreachable!() };
            let target = d.color_filter.unwrap_or(0) as u64;
            let mut tau = c.tau().to_vec();
            let r = d.r as u64;
            let rest: u64 = tau[..d.n - 1].iter().map(|&t| t as u64).sum();
            tau[d.n - 1] = ((target + r - rest % r) % r) as u32;
            let omega = c.omega().images().iter().map(|&v| v as u32).collect();
            Element::Colored(ColoredPermutation::new(omega, tau, d.r)?)
        }
        _ => decode(d, rng),
    })
}

/// Draws per random stream in [`sample_many`].
pub const SAMPLE_BLOCK: usize = 4096;

/// `count` uniform draws from `d`. Draw `i` comes from stream
/// `i / SAMPLE_BLOCK` of `seed`, so the output does not depend on the number
/// of threads.
pub fn sample_many(d: &DomainSpec, count: usize, seed: u64) -> Result<Vec<Element>> {
    use rayon::prelude::*;
    let blocks = count.div_ceil(SAMPLE_BLOCK);
    let parts = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = Sampler::new(seed, b as u64);
            let size = SAMPLE_BLOCK.min(count - b * SAMPLE_BLOCK);
            (0..size).map(|_| sample(d, &mut rng)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.concat())
}

/// Flips the sign of the magnitude `n` entry of the cycle notation, i.e. the
/// sign of the image `σ(σ⁻¹(±n))`. An involution that swaps the parity of
/// the negative count and keeps the element cyclic.
pub fn flip_top(s: &SignedPermutation) -> SignedPermutation {
    let n = s.degree();
    let mut images = s.images().to_vec();
    if let Some(slot) = images.iter_mut().find(|v| v.unsigned_abs() as usize == n) {
        *slot = -*slot;
    }
    SignedPermutation::from_images_unchecked(images)
}
