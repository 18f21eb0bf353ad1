//! Type B descents and the statistics `des`, `maj`, `neg`, `fmaj`.
//!
//! Position 0 carries the value 0, so `0` is a descent exactly when the
//! first image is negative.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::SignedPermutation;

/// Largest degree whose descent set fits the bit set.
pub const DESCENT_SET_MAX_DEGREE: usize = 63;

/// Subset of `{0, ..., n-1}` stored as a bit set: bit `i` is descent `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DescentSet {
    n: u8,
    bits: u64,
}

impl DescentSet {
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if n > DESCENT_SET_MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree: n, cap: DESCENT_SET_MAX_DEGREE });
        }
        if bits >> n != 0 {
            return Err(Error::Domain(format!("descent bits {bits:#x} exceed degree {n}")));
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn from_members(n: usize, members: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in members {
            if i >= n {
                return Err(Error::Domain(format!("descent {i} outside 0..{n}")));
            }
            bits |= 1 << i;
        }
        Self::from_bits(n, bits)
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.bits >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.contains(i)).collect()
    }

    pub fn sum(&self) -> u64 {
        self.members().iter().map(|&i| i as u64).sum()
    }
}

impl fmt::Display for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatRecord {
    pub des: u64,
    pub maj: u64,
    pub neg: u64,
    pub fmaj: u64,
}

impl fmt::Display for StatRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "des={} maj={} neg={} fmaj={}", self.des, self.maj, self.neg, self.fmaj)
    }
}

/// Which statistic a table or sample refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Des,
    Maj,
    Neg,
    Fmaj,
}

impl Statistic {
    pub const ALL: [Statistic; 4] = [Statistic::Des, Statistic::Maj, Statistic::Neg, Statistic::Fmaj];

    pub fn of(self, r: &StatRecord) -> u64 {
        match self {
            Statistic::Des => r.des,
            Statistic::Maj => r.maj,
            Statistic::Neg => r.neg,
            Statistic::Fmaj => r.fmaj,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Des => "des",
            Statistic::Maj => "maj",
            Statistic::Neg => "neg",
            Statistic::Fmaj => "fmaj",
        }
    }
}

impl std::str::FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "des" => Ok(Statistic::Des),
            "maj" => Ok(Statistic::Maj),
            "neg" => Ok(Statistic::Neg),
            "fmaj" => Ok(Statistic::Fmaj),
            other => Err(Error::Unsupported(format!("statistic {other}"))),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Descent bits of a one-line word, for `len <= 63`.
#[inline]
pub(crate) fn descent_bits(images: &[i32]) -> u64 {
    let mut bits = 0u64;
    let mut prev = 0i32;
    for (i, &v) in images.iter().enumerate() {
        if prev > v {
            bits |= 1 << i;
        }
        prev = v;
    }
    bits
}

pub fn descent_set(sigma: &SignedPermutation) -> Result<DescentSet> {
    let n = sigma.degree();
    if n > DESCENT_SET_MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree: n, cap: DESCENT_SET_MAX_DEGREE });
    }
    Ok(DescentSet { n: n as u8, bits: descent_bits(sigma.images()) })
}

/// Statistics of a one-line word; no degree cap.
pub fn stats_of_images(images: &[i32]) -> StatRecord {
    let mut r = StatRecord::default();
    let mut prev = 0i32;
    for (i, &v) in images.iter().enumerate() {
        if prev > v {
            r.des += 1;
            r.maj += i as u64;
        }
        if v < 0 {
            r.neg += 1;
        }
        prev = v;
    }
    r.fmaj = 2 * r.maj + r.neg;
    r
}

pub fn stats(sigma: &SignedPermutation) -> StatRecord {
    stats_of_images(sigma.images())
}

/// `Des(π) ∩ {0, ..., n-1}` for `π` of degree `n + 1`, as a set of degree `n`.
pub fn truncated_descent_set(pi: &SignedPermutation, bound: usize) -> Result<DescentSet> {
    if pi.degree() != bound + 1 {
        return Err(Error::Domain(format!(
            "truncation bound {bound} does not match degree {}",
            pi.degree()
        )));
    }
    let full = descent_set(pi)?;
    Ok(DescentSet { n: bound as u8, bits: full.bits & !(1u64 << bound) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: &[i32]) -> SignedPermutation {
        SignedPermutation::new(v.to_vec()).unwrap()
    }

    fn all_signed(n: usize) -> Vec<SignedPermutation> {
        let mut out = vec![vec![]];
        for m in 1..=n as i32 {
            let mut next = Vec::new();
            for w in &out {
                for pos in 0..=w.len() {
                    for s in [1, -1] {
                        let mut w2: Vec<i32> = w.clone();
                        w2.insert(pos, s * m);
                        next.push(w2);
                    }
                }
            }
            out = next;
        }
        out.into_iter().map(|w| SignedPermutation::new(w).unwrap()).collect()
    }

    #[test]
    fn descent_set_examples() {
        assert_eq!(descent_set(&sp(&[-3, 1, 2, -5, -4, 6])).unwrap().members(), vec![0, 3]);
        assert_eq!(descent_set(&sp(&[2, 5, -6, -1, -3, 7, -4])).unwrap().members(), vec![2, 4, 6]);
        assert!(descent_set(&SignedPermutation::identity(5)).unwrap().is_empty());
    }

    #[test]
    fn stats_examples() {
        let r = stats(&sp(&[-3, 1, 2, -5, -4, 6]));
        assert_eq!(r, StatRecord { des: 2, maj: 3, neg: 3, fmaj: 9 });
        assert_eq!(r.to_string(), "des=2 maj=3 neg=3 fmaj=9");
        assert_eq!(stats(&SignedPermutation::identity(6)), StatRecord::default());
        assert_eq!(stats(&sp(&[-1])), StatRecord { des: 1, maj: 0, neg: 1, fmaj: 1 });
    }

    #[test]
    fn truncated_examples() {
        let t = truncated_descent_set(&sp(&[2, 5, -6, -1, -3, 7, -4]), 6).unwrap();
        assert_eq!(t.members(), vec![2, 4]);
        assert_eq!(t.degree(), 6);
        let t = truncated_descent_set(&sp(&[5, -6, 4, 8, 7, -9, 2, -1, 3]), 8).unwrap();
        assert_eq!(t.members(), vec![1, 4, 5, 7]);
        assert!(truncated_descent_set(&SignedPermutation::identity(4), 3).unwrap().is_empty());
        assert!(truncated_descent_set(&SignedPermutation::identity(4), 2).is_err());
    }

    #[test]
    fn zero_descent_iff_negative_first_on_b4() {
        for s in all_signed(4) {
            let d = descent_set(&s).unwrap();
            assert_eq!(d.contains(0), s.image(1) < 0);
            let r = stats(&s);
            assert_eq!(r.fmaj % 2, r.neg % 2);
            assert_eq!(r.des as usize, d.len());
            assert_eq!(r.maj, d.sum());
            assert!(r.maj <= 6);
        }
    }

    #[test]
    fn des_distribution_on_b2() {
        let mut counts = [0; 3];
        for s in all_signed(2) {
            counts[stats(&s).des as usize] += 1;
        }
        assert_eq!(counts, [1, 6, 1]);
    }

    #[test]
    fn stats_work_beyond_the_bit_set_cap() {
        let s = SignedPermutation::longest(800);
        let r = stats(&s);
        assert_eq!(r.neg, 800);
        assert_eq!(r.des, 800);
        assert_eq!(r.maj, 799 * 800 / 2);
        assert!(descent_set(&s).is_err());
    }
}
