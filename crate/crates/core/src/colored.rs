//! Colored permutations `(ω, τ)`: a permutation `ω` of `[n]` together with a
//! color `τ(i) ∈ Z_r` attached to each position.
//!
//! Values are compared by the key `(color, magnitude)`, so every value of
//! color `c` lies below every value of color `c + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::classic::phi_classic;
use crate::cycles::is_cyclic;
use crate::error::{Error, Result};
use crate::perm::SignedPermutation;
use crate::transfer::psi_plus;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPermutation {
    r: u32,
    omega: SignedPermutation,
    tau: Vec<u32>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredStats {
    pub des: u64,
    pub maj: u64,
    pub col: u64,
    pub fmaj: u64,
}

impl fmt::Display for ColoredStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "des={} maj={} col={} fmaj={}", self.des, self.maj, self.col, self.fmaj)
    }
}

impl ColoredPermutation {
    pub fn new(omega: Vec<u32>, tau: Vec<u32>, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidColored("r must be at least 1".into()));
        }
        if omega.len() != tau.len() {
            return Err(Error::InvalidColored(format!(
                "{} values but {} colors",
                omega.len(),
                tau.len()
            )));
        }
        if let Some(c) = tau.iter().find(|&&c| c >= r) {
            return Err(Error::InvalidColored(format!("color {c} outside Z_{r}")));
        }
        let images = omega
            .iter()
            .map(|&v| i32::try_from(v).map_err(|_| Error::InvalidColored(format!("value {v}"))))
            .collect::<Result<Vec<_>>>()?;
        let omega = SignedPermutation::new(images).map_err(|e| Error::InvalidColored(e.to_string()))?;
        Ok(Self { r, omega, tau })
    }

    /// Builds from cycle notation. Entry `(a, c)` at index `i` means
    /// `ω(a_{i-1}) = a` with `τ(a_{i-1}) = c`, cyclically.
    pub fn from_cycles(n: usize, cycles: &[Vec<(u32, u32)>], r: u32) -> Result<Self> {
        let mut omega = vec![0u32; n];
        let mut tau = vec![0u32; n];
        let mut seen = vec![false; n + 1];
        for c in cycles {
            if c.is_empty() {
                return Err(Error::MalformedNotation("empty cycle".into()));
            }
            for (i, &(a, _)) in c.iter().enumerate() {
                let a = a as usize;
                if a == 0 || a > n || std::mem::replace(&mut seen[a], true) {
                    return Err(Error::MalformedNotation(format!("bad or repeated value {a}")));
                }
                let (next, color) = c[(i + 1) % c.len()];
                omega[a - 1] = next;
                tau[a - 1] = color;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::MalformedNotation("missing value".into()));
        }
        Self::new(omega, tau, r)
    }

    pub fn degree(&self) -> usize {
        self.tau.len()
    }

    pub fn colors(&self) -> u32 {
        self.r
    }

    pub fn omega(&self) -> &SignedPermutation {
        &self.omega
    }

    pub fn tau(&self) -> &[u32] {
        &self.tau
    }

    #[inline]
    fn key(&self, i: usize) -> (u32, i32) {
        (self.tau[i - 1], self.omega.image(i))
    }

    /// Sum of colors reduced mod `r`.
    pub fn color(&self) -> u32 {
        (self.tau.iter().map(|&c| c as u64).sum::<u64>() % self.r as u64) as u32
    }

    pub fn is_cyclic(&self) -> bool {
        is_cyclic(&self.omega)
    }

    /// Descent positions in `[n]`; `n` is a descent exactly when `τ(n) ≠ 0`.
    pub fn descent_set(&self) -> Vec<usize> {
        let n = self.degree();
        let mut out: Vec<usize> = (1..n).filter(|&i| self.key(i) > self.key(i + 1)).collect();
        if n > 0 && self.tau[n - 1] != 0 {
            out.push(n);
        }
        out
    }

    pub fn stats(&self) -> ColoredStats {
        let n = self.degree();
        let des = self.descent_set();
        let maj: u64 = des.iter().filter(|&&i| i < n).map(|&i| i as u64).sum();
        let col: u64 = self.tau.iter().map(|&c| c as u64).sum();
        ColoredStats { des: des.len() as u64, maj, col, fmaj: self.r as u64 * maj + col }
    }

    /// Cycle notation with each cycle starting at its largest value and
    /// cycles ordered by that value.
    pub fn cycles(&self) -> Vec<Vec<(u32, u32)>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let inv = self.omega.inverse();
        let mut out = Vec::new();
        for start in (1..=n).rev() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut prev = inv.image(start) as usize;
            let mut cur = start;
            loop {
                seen[cur] = true;
                cycle.push((cur as u32, self.tau[prev - 1]));
                prev = cur;
                cur = self.omega.image(cur) as usize;
                if cur == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out.reverse();
        out
    }

    pub fn cycle_string(&self) -> String {
        let mut s = String::new();
        for c in self.cycles() {
            s.push('(');
            for (i, &(a, col)) in c.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                push_entry(&mut s, a, col);
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }
}

fn push_entry(s: &mut String, a: u32, c: u32) {
    use std::fmt::Write;
    if c == 0 {
        let _ = write!(s, "{a}");
    } else {
        let _ = write!(s, "{a}^{c}");
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::from("[");
        for i in 1..=self.degree() {
            if i > 1 {
                s.push(',');
            }
            push_entry(&mut s, self.omega.image(i) as u32, self.tau[i - 1]);
        }
        s.push(']');
        f.write_str(&s)
    }
}

impl fmt::Debug for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (r={})", self.r)
    }
}

/// `(φ(ω), τ restricted to [n])` for a cyclic colored permutation of degree
/// `n + 1`. Descents in `[n-1]` are preserved.
pub fn colored_phi(p: &ColoredPermutation) -> Result<ColoredPermutation> {
    if p.degree() == 0 || !p.is_cyclic() {
        return Err(Error::Domain(format!("{p} is not cyclic")));
    }
    let omega = phi_classic(&p.omega)?;
    let n = p.degree() - 1;
    Ok(ColoredPermutation { r: p.r, omega, tau: p.tau[..n].to_vec() })
}

/// Inverse of [`colored_phi`] on cyclic elements of color `target`.
pub fn colored_psi(p: &ColoredPermutation, target: u32) -> Result<ColoredPermutation> {
    if target >= p.r {
        return Err(Error::InvalidColored(format!("color {target} outside Z_{}", p.r)));
    }
    let omega = psi_plus(&p.omega, None);
    let r = p.r as u64;
    let used = p.tau.iter().map(|&c| c as u64).sum::<u64>() % r;
    let last = ((target as u64 + r - used) % r) as u32;
    let mut tau = p.tau.clone();
    tau.push(last);
    Ok(ColoredPermutation { r: p.r, omega, tau })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cp(omega: &[u32], tau: &[u32], r: u32) -> ColoredPermutation {
        ColoredPermutation::new(omega.to_vec(), tau.to_vec(), r).unwrap()
    }

    fn all_colored(n: usize, r: u32) -> Vec<ColoredPermutation> {
        let mut words: Vec<Vec<u32>> = vec![vec![]];
        for m in 1..=n as u32 {
            let mut next = Vec::new();
            for w in &words {
                for p in 0..=w.len() {
                    let mut w2 = w.clone();
                    w2.insert(p, m);
                    next.push(w2);
                }
            }
            words = next;
        }
        let mut out = Vec::new();
        for w in &words {
            for code in 0..(r as usize).pow(n as u32) {
                let mut c = code;
                let tau: Vec<u32> = (0..n)
                    .map(|_| {
                        let d = (c % r as usize) as u32;
                        c /= r as usize;
                        d
                    })
                    .collect();
                out.push(cp(w, &tau, r));
            }
        }
        out
    }

    #[test]
    fn descent_examples() {
        assert_eq!(cp(&[2, 1], &[1, 0], 3).descent_set(), vec![1]);
        assert_eq!(cp(&[1, 2], &[0, 1], 2).descent_set(), vec![2]);
        assert_eq!(cp(&[3, 1, 2], &[0, 0, 0], 2).descent_set(), vec![1]);
    }

    #[test]
    fn stats_examples() {
        assert_eq!(cp(&[2, 1], &[1, 0], 3).stats(), ColoredStats { des: 1, maj: 1, col: 1, fmaj: 4 });
        assert_eq!(cp(&[1, 2, 3], &[0, 0, 0], 4).stats(), ColoredStats::default());
        assert_eq!(cp(&[1, 2], &[0, 1], 2).stats(), ColoredStats { des: 1, maj: 0, col: 1, fmaj: 1 });
    }

    #[test]
    fn color_examples() {
        assert_eq!(cp(&[2, 1], &[1, 0], 3).color(), 1);
        assert_eq!(cp(&[2, 1], &[1, 1], 2).color(), 0);
        assert_eq!(cp(&[1, 2, 3], &[2, 2, 1], 3).color(), 2);
    }

    #[test]
    fn validation() {
        assert!(ColoredPermutation::new(vec![1, 1], vec![0, 0], 2).is_err());
        assert!(ColoredPermutation::new(vec![1, 2], vec![0, 2], 2).is_err());
        assert!(ColoredPermutation::new(vec![1], vec![0], 0).is_err());
        assert!(ColoredPermutation::new(vec![1], vec![], 2).is_err());
    }

    #[test]
    fn cycle_notation_round_trip() {
        for p in all_colored(3, 3) {
            let back = ColoredPermutation::from_cycles(3, &p.cycles(), 3).unwrap();
            assert_eq!(back, p);
        }
        let p = ColoredPermutation::from_cycles(2, &[vec![(1, 1), (2, 0)]], 2).unwrap();
        assert_eq!(p.to_string(), "[2,1^1]");
        assert_eq!(p.cycle_string(), "(2,1^1)");
    }

    #[test]
    fn last_position_descent_iff_nonzero_color() {
        for n in 1..=3 {
            for r in 1..=4 {
                for p in all_colored(n, r) {
                    assert_eq!(p.descent_set().contains(&n), p.tau()[n - 1] != 0);
                }
            }
        }
    }

    #[test]
    fn transfer_preserves_inner_descents_and_is_bijective_per_color() {
        for n in 1..=3 {
            for r in 1..=3 {
                let mut images: Vec<HashSet<ColoredPermutation>> = vec![HashSet::new(); r as usize];
                for p in all_colored(n + 1, r).into_iter().filter(ColoredPermutation::is_cyclic) {
                    let q = colored_phi(&p).unwrap();
                    let inner: Vec<usize> = p.descent_set().into_iter().filter(|&i| i < n).collect();
                    let target: Vec<usize> = q.descent_set().into_iter().filter(|&i| i < n).collect();
                    assert_eq!(inner, target);
                    assert!(images[p.color() as usize].insert(q));
                }
                let size = all_colored(n, r).len();
                assert!(images.iter().all(|s| s.len() == size));
            }
        }
    }

    #[test]
    fn psi_round_trips_with_requested_color() {
        for r in 1..=4 {
            for p in all_colored(3, r) {
                for c in 0..r {
                    let q = colored_psi(&p, c).unwrap();
                    assert!(q.is_cyclic());
                    assert_eq!(q.color(), c);
                    assert_eq!(colored_phi(&q).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn single_color_reduces_to_unsigned_transfer() {
        let p = cp(&[2, 3, 1], &[0, 0, 0], 1);
        let q = colored_phi(&p).unwrap();
        assert_eq!(q.omega(), &phi_classic(p.omega()).unwrap());
        let back = colored_psi(&q, 0).unwrap();
        assert_eq!(back, p);
    }
}
