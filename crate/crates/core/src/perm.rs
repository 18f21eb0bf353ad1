//! Signed permutations: elements of the hyperoctahedral group `B_n`.
//!
//! A [`SignedPermutation`] stores only the images of `1..=n`; the image of a
//! negative argument is always `-σ(|i|)`, so the defining symmetry
//! `σ(-i) = -σ(i)` holds by construction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported degree. Keeps every image inside `i32` and keeps
/// `fmaj <= n^2 + n` far away from `u64` overflow.
pub const MAX_DEGREE: usize = 1 << 24;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPermutation {
    images: Vec<i32>,
}

/// Negative count and membership in the index-two subgroup `D_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityInfo {
    pub negative_count: usize,
    pub in_d: bool,
}

impl SignedPermutation {
    /// Builds a signed permutation from its one-line notation
    /// `[σ(1), ..., σ(n)]`, validating every invariant.
    pub fn new(images: Vec<i32>) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::DegreeTooLarge { degree: n, cap: MAX_DEGREE });
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let m = v.unsigned_abs() as usize;
            if m == 0 || m > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} is outside [±{n}]"
                )));
            }
            if std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidPermutation(format!(
                    "magnitude {m} appears more than once"
                )));
            }
        }
        Ok(Self { images })
    }

    /// Skips validation. Callers inside the crate guarantee the invariants.
    pub(crate) fn from_images_unchecked(images: Vec<i32>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok(), "invalid images {images:?}");
        Self { images }
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n as i32).collect() }
    }

    /// `[-1, -2, ..., -n]`.
    pub fn longest(n: usize) -> Self {
        Self { images: (1..=n as i32).map(|v| -v).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// One-line notation.
    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<i32> {
        self.images
    }

    /// `σ(i)` for `1 <= i <= n`, without range checks beyond slice indexing.
    #[inline]
    pub fn image(&self, i: usize) -> i32 {
        self.images[i - 1]
    }

    /// `σ(i)` for any `i` in `[±n]`.
    pub fn apply(&self, i: i64) -> Result<i64> {
        let n = self.degree();
        let m = i.unsigned_abs() as usize;
        if m == 0 || m > n {
            return Err(Error::IndexOutOfRange { index: i, degree: n });
        }
        let v = self.images[m - 1] as i64;
        Ok(if i < 0 { -v } else { v })
    }

    #[inline]
    fn apply_signed(&self, i: i32) -> i32 {
        let v = self.images[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// The product `πσ`, evaluated right to left: `(πσ)(i) = π(σ(i))`.
    pub fn compose(&self, sigma: &SignedPermutation) -> Result<SignedPermutation> {
        if self.degree() != sigma.degree() {
            return Err(Error::DegreeMismatch { left: self.degree(), right: sigma.degree() });
        }
        let images = sigma.images.iter().map(|&s| self.apply_signed(s)).collect();
        Ok(Self { images })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            let target = v.unsigned_abs() as usize - 1;
            let arg = i as i32 + 1;
            images[target] = if v < 0 { -arg } else { arg };
        }
        Self { images }
    }

    /// `[-1, ..., -n] ∘ σ`: every image changes sign.
    pub fn negate_all(&self) -> SignedPermutation {
        Self { images: self.images.iter().map(|v| -v).collect() }
    }

    /// Left multiplication by `(-1) = [-1, 2, ..., n]`: the image equal to
    /// `±1` flips sign, everything else is unchanged.
    pub fn times_neg1(&self) -> SignedPermutation {
        let images = self
            .images
            .iter()
            .map(|&v| if v.unsigned_abs() == 1 { -v } else { v })
            .collect();
        Self { images }
    }

    pub fn negative_count(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }

    pub fn parity_info(&self) -> ParityInfo {
        let negative_count = self.negative_count();
        ParityInfo { negative_count, in_d: negative_count.is_multiple_of(2) }
    }

    pub fn in_d(&self) -> bool {
        self.negative_count().is_multiple_of(2)
    }

    /// True when every image is positive, i.e. the element lies in `S_n`.
    pub fn is_unsigned(&self) -> bool {
        self.images.iter().all(|&v| v > 0)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<i32>> for SignedPermutation {
    type Error = Error;

    fn try_from(images: Vec<i32>) -> Result<Self> {
        Self::new(images)
    }
}
