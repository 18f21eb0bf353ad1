//! Signed cycle decomposition.
//!
//! A cycle `(e1 a1, ..., el al)` encodes `σ(a_i) = e_{i+1} a_{i+1}` with
//! indices taken mod `l`. Magnitudes in one cycle are distinct, so a signed
//! permutation such as `[-1]` is the single cycle `(-1)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{SignedPermutation, MAX_DEGREE};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedCycle {
    entries: Vec<i32>,
}

impl SignedCycle {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::MalformedNotation("empty cycle".into()));
        }
        let mut mags: Vec<u32> = entries.iter().map(|v| v.unsigned_abs()).collect();
        if mags.contains(&0) {
            return Err(Error::MalformedNotation("cycle entry 0".into()));
        }
        mags.sort_unstable();
        if let Some(w) = mags.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::MalformedNotation(format!(
                "magnitude {} repeated within a cycle",
                w[0]
            )));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_entries_unchecked(entries: Vec<i32>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> i32 {
        self.entries[0]
    }

    pub fn last(&self) -> i32 {
        self.entries[self.entries.len() - 1]
    }

    /// Rotation putting the largest entry (as a signed integer) first.
    pub fn canonical_rotation(&self) -> SignedCycle {
        let (at, _) = self
            .entries
            .iter()
            .enumerate()
            .max_by_key(|&(_, v)| *v)
            .expect("cycles are nonempty");
        let mut entries = self.entries.clone();
        entries.rotate_left(at);
        Self { entries }
    }
}

impl fmt::Display for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleNotation {
    n: usize,
    cycles: Vec<SignedCycle>,
}

impl CycleNotation {
    /// Checks that the magnitudes across all cycles are exactly `1..=n`.
    pub fn new(n: usize, cycles: Vec<SignedCycle>) -> Result<Self> {
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree: n, cap: MAX_DEGREE });
        }
        let mut seen = vec![false; n + 1];
        for c in &cycles {
            for &v in c.entries() {
                let m = v.unsigned_abs() as usize;
                if m == 0 || m > n {
                    return Err(Error::MalformedNotation(format!(
                        "entry {v} is outside [±{n}]"
                    )));
                }
                if std::mem::replace(&mut seen[m], true) {
                    return Err(Error::MalformedNotation(format!("magnitude {m} repeated")));
                }
            }
        }
        if let Some(m) = (1..=n).find(|&m| !seen[m]) {
            return Err(Error::MalformedNotation(format!("magnitude {m} missing")));
        }
        Ok(Self { n, cycles })
    }

    /// Infers the degree as the number of entries.
    pub fn from_entries(cycles: Vec<Vec<i32>>) -> Result<Self> {
        let cycles = cycles.into_iter().map(SignedCycle::new).collect::<Result<Vec<_>>>()?;
        let n = cycles.iter().map(SignedCycle::len).sum();
        Self::new(n, cycles)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[SignedCycle] {
        &self.cycles
    }

    pub fn into_cycles(self) -> Vec<SignedCycle> {
        self.cycles
    }

    pub fn to_permutation(&self) -> SignedPermutation {
        from_cycles(self)
    }

    pub fn is_canonical(&self) -> bool {
        self.cycles.iter().all(|c| c.first() == *c.entries().iter().max().unwrap())
            && self.cycles.windows(2).all(|w| w[0].first() < w[1].first())
    }

    /// Display form omitting cycles of length one, unless every cycle has
    /// length one (then the identity is shown as `(1)`, or `()` when `n = 0`).
    pub fn pretty(&self) -> String {
        let long: Vec<String> =
            self.cycles.iter().filter(|c| c.len() > 1).map(ToString::to_string).collect();
        if !long.is_empty() {
            return long.concat();
        }
        match self.cycles.first() {
            Some(c) => c.to_string(),
            None => "()".into(),
        }
    }
}

impl fmt::Display for CycleNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for c in &self.cycles {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Follows `σ` from magnitude `m` until `m` reappears, returning the visited
/// entries. The returned cycle ends with the entry of magnitude `m`.
pub(crate) fn trace_from(sigma: &SignedPermutation, m: usize, out: &mut Vec<i32>) {
    let mut cur = m;
    loop {
        let v = sigma.image(cur);
        out.push(v);
        cur = v.unsigned_abs() as usize;
        if cur == m {
            break;
        }
    }
}

pub fn to_canonical_cycles(sigma: &SignedPermutation) -> CycleNotation {
    let n = sigma.degree();
    let mut seen = vec![false; n + 1];
    let mut cycles = Vec::new();
    let mut buf = Vec::new();
    for m in 1..=n {
        if seen[m] {
            continue;
        }
        buf.clear();
        trace_from(sigma, m, &mut buf);
        for v in &buf {
            seen[v.unsigned_abs() as usize] = true;
        }
        cycles.push(SignedCycle::from_entries_unchecked(buf.clone()).canonical_rotation());
    }
    cycles.sort_unstable_by_key(SignedCycle::first);
    CycleNotation { n, cycles }
}

pub fn from_cycles(c: &CycleNotation) -> SignedPermutation {
    let mut images = vec![0i32; c.n];
    for cycle in &c.cycles {
        let e = cycle.entries();
        for i in 0..e.len() {
            let next = e[(i + 1) % e.len()];
            images[e[i].unsigned_abs() as usize - 1] = next;
        }
    }
    SignedPermutation::from_images_unchecked(images)
}

/// True when the cycle decomposition is a single cycle of length `n`.
pub fn is_cyclic(sigma: &SignedPermutation) -> bool {
    let n = sigma.degree();
    if n == 0 {
        return false;
    }
    let mut len = 0;
    let mut cur = 1usize;
    loop {
        cur = sigma.image(cur).unsigned_abs() as usize;
        len += 1;
        if cur == 1 {
            return len == n;
        }
    }
}

pub fn rotate_cycle_to_end(c: &SignedCycle, magnitude: u32) -> Result<SignedCycle> {
    let at = c
        .entries()
        .iter()
        .position(|v| v.unsigned_abs() == magnitude)
        .ok_or_else(|| Error::Domain(format!("magnitude {magnitude} not in cycle {c}")))?;
    let mut entries = c.entries.clone();
    entries.rotate_left(at + 1);
    Ok(SignedCycle { entries })
}

pub fn concat_with_sentinel(cycles: &[SignedCycle], sentinel: u32) -> Result<SignedCycle> {
    let mut entries: Vec<i32> = Vec::with_capacity(cycles.iter().map(SignedCycle::len).sum::<usize>() + 1);
    for c in cycles {
        if c.entries().iter().any(|v| v.unsigned_abs() == sentinel) {
            return Err(Error::Domain(format!("sentinel {sentinel} already present in {c}")));
        }
        entries.extend_from_slice(c.entries());
    }
    entries.push(sentinel as i32);
    SignedCycle::new(entries).map_err(|e| Error::Domain(e.to_string()))
}
