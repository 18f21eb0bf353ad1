//! Descent-preserving transfer between cyclic signed permutations of degree
//! `n + 1` and all signed permutations of degree `n`.
//!
//! [`phi_plus`] handles cyclic elements whose cycle contains `+(n+1)`;
//! [`capital_phi`] extends it to every cyclic element. [`psi_plus`] inverts
//! `phi_plus`, and [`capital_psi_d`] / [`capital_psi_dbar`] invert
//! `capital_phi` on the even and odd halves of the cyclic set.

mod trace;
pub(crate) mod work;

pub use trace::{check_order_swap_properties, PropertyViolation, SwapEvent, TraceStep, TransferTrace};

use work::Work;

use crate::cycles::{is_cyclic, to_canonical_cycles, trace_from};
use crate::error::{Error, Result};
use crate::perm::SignedPermutation;

/// Swap trigger: `|x - y| = 1` and `min(x, y)` lies in
/// `(Des π Δ Des σ) ∩ [n-1]`, where `n` is the degree of `σ`.
pub fn p_flag(pi: &SignedPermutation, sigma: &SignedPermutation, x: u64, y: u64) -> bool {
    let n = sigma.degree();
    if x.abs_diff(y) != 1 {
        return false;
    }
    let d = x.min(y) as usize;
    if d == 0 || d >= n || pi.degree() <= d {
        return false;
    }
    let dp = pi.image(d) > pi.image(d + 1);
    let ds = sigma.image(d) > sigma.image(d + 1);
    dp != ds
}

/// 1-based positions of the left-to-right maxima of a word.
pub fn left_to_right_maxima(entries: &[i32]) -> Vec<usize> {
    let mut best = i32::MIN;
    let mut out = Vec::new();
    for (i, &v) in entries.iter().enumerate() {
        if v > best {
            best = v;
            out.push(i + 1);
        }
    }
    out
}

fn require_cyclic(pi: &SignedPermutation) -> Result<()> {
    if pi.degree() == 0 || !is_cyclic(pi) {
        return Err(Error::Domain(format!("{pi} is not cyclic")));
    }
    Ok(())
}

/// True when `+(n+1)` is among the entries, `n + 1` being the degree.
pub fn has_positive_top(pi: &SignedPermutation) -> bool {
    let top = pi.degree() as i32;
    pi.images().contains(&top)
}

#[inline]
fn first_negative(s: &SignedPermutation) -> bool {
    s.degree() > 0 && s.image(1) < 0
}

/// Swap trigger evaluated against live state. `fixed[d]` is whether `d` is a
/// descent of the permutation that does not change; `live(d)` gives images
/// of the one that does.
#[inline]
fn trigger(n: usize, fixed: &[bool], live: impl Fn(usize) -> i32, a: usize, b: usize) -> bool {
    if a.abs_diff(b) != 1 {
        return false;
    }
    let d = a.min(b);
    if d == 0 || d >= n {
        return false;
    }
    fixed[d] != (live(d) > live(d + 1))
}

#[inline]
fn mag(v: i32) -> usize {
    v.unsigned_abs() as usize
}

/// The direction `ε` whose trigger fires at `z`, preferring the larger (or
/// smaller) key when both do.
fn choose_epsilon(
    z: i32,
    fires: impl Fn(usize, usize) -> bool,
    key: impl Fn(usize) -> i32,
    prefer_large: bool,
) -> Option<i32> {
    let mut best: Option<(i32, i32)> = None;
    for eps in [-1, 1] {
        let t = z + eps;
        if t == 0 || !fires(mag(z), mag(t)) {
            continue;
        }
        let k = key(mag(t));
        best = match best {
            Some((_, bk)) if (k > bk) != prefer_large => best,
            _ => Some((eps, k)),
        };
    }
    best.map(|(e, _)| e)
}

/// Runs the forward algorithm on a cyclic `π` of degree `n + 1` containing
/// `+(n+1)`. Preconditions are checked by callers.
fn run_phi(pi: &SignedPermutation, mut trace: Option<&mut TransferTrace>) -> SignedPermutation {
    let n1 = pi.degree();
    let n = n1 - 1;
    let mut word = Vec::with_capacity(n1);
    trace_from(pi, n1, &mut word);
    debug_assert_eq!(word.last().copied(), Some(n1 as i32));

    let starts: Vec<usize> = left_to_right_maxima(&word).into_iter().map(|p| p - 1).collect();
    word.pop();
    let m = starts.len() - 1;
    let mut w = Work::new(word, starts);

    let mut pi_des = vec![false; n1];
    for (d, slot) in pi_des.iter_mut().enumerate().skip(1) {
        *slot = pi.image(d) > pi.image(d + 1);
    }

    if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
        t.begin(&w);
    }

    let mut budget = n1 * n1 + 16;
    for j in 0..m {
        let mut z = w.entries[w.last_of(j)];
        let eps = {
            let w = &w;
            choose_epsilon(
                z,
                |a, b| trigger(n, &pi_des, |d| w.image(d), a, b),
                |t| pi.image(t),
                true,
            )
        };
        let Some(eps) = eps else {
            if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
                t.step(j + 1, &w, z, None);
            }
            continue;
        };
        loop {
            let (a, b) = (mag(z), mag(z + eps));
            if z + eps == 0 || !trigger(n, &pi_des, |d| w.image(d), a, b) {
                break;
            }
            if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
                t.step(j + 1, &w, z, Some(eps));
            }
            let mut px = w.pos[a];
            let mut py = w.pos[b];
            loop {
                let (ax, ay) = (mag(w.entries[px]), mag(w.entries[py]));
                if !trigger(n, &pi_des, |d| w.image(d), ax, ay) {
                    break;
                }
                budget = budget.checked_sub(1).expect("swap loop failed to terminate");
                let ev = SwapEvent { x: w.entries[px], y: w.entries[py], px, py };
                w.swap(px, py);
                if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
                    t.swap(ev);
                }
                if px == w.starts[j] {
                    if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
                        if trigger(n, &pi_des, |d| w.image(d), ax, ay) {
                            t.notes.push(format!("trigger still set after swapping the head of cycle {}", j + 1));
                        }
                    }
                    break;
                }
                px = w.pred(px);
                py = w.pred(py);
            }
            z = w.entries[w.last_of(j)];
        }
    }

    if let Some(t) = trace.filter(|t| t.enabled) {
        t.final_entries = w.entries.clone();
    }
    SignedPermutation::from_images_unchecked(w.one_line())
}

/// Forward transfer on cyclic elements of degree `n + 1` whose cycle
/// contains `+(n+1)`. The result has the same descents in `[n-1]`.
pub fn phi_plus(pi: &SignedPermutation, trace: Option<&mut TransferTrace>) -> Result<SignedPermutation> {
    require_cyclic(pi)?;
    if !has_positive_top(pi) {
        return Err(Error::Domain(format!("{pi} contains -{}", pi.degree())));
    }
    Ok(run_phi(pi, trace))
}

/// Descent-preserving map from all cyclic elements of degree `n + 1` onto
/// degree `n`: `Des(π) ∩ {0, ..., n-1} = Des(Φ(π))`.
pub fn capital_phi(pi: &SignedPermutation) -> Result<SignedPermutation> {
    require_cyclic(pi)?;
    Ok(capital_phi_unchecked(pi))
}

/// [`capital_phi`] without the cyclicity check, for enumeration loops whose
/// inputs are cyclic by construction.
pub fn capital_phi_unchecked(pi: &SignedPermutation) -> SignedPermutation {
    let d0 = first_negative(pi);
    if has_positive_top(pi) {
        let s = run_phi(pi, None);
        if d0 != first_negative(&s) {
            s.times_neg1()
        } else {
            s
        }
    } else {
        let s = run_phi(&pi.negate_all(), None);
        let t = s.negate_all();
        if d0 != first_negative(&t) {
            s.times_neg1().negate_all()
        } else {
            t
        }
    }
}

fn run_psi(sigma: &SignedPermutation, mut trace: Option<&mut TransferTrace>) -> SignedPermutation {
    let n = sigma.degree();
    let canon = to_canonical_cycles(sigma);
    let mut entries = Vec::with_capacity(n + 1);
    let mut starts = Vec::with_capacity(canon.cycles().len() + 2);
    for c in canon.cycles() {
        starts.push(entries.len());
        entries.extend_from_slice(c.entries());
    }
    let m = starts.len();
    starts.push(n);
    starts.push(n + 1);
    entries.push(n as i32 + 1);
    let mut w = Work::new(entries, starts);

    let mut sigma_des = vec![false; n.max(1)];
    for (d, slot) in sigma_des.iter_mut().enumerate().skip(1) {
        *slot = sigma.image(d) > sigma.image(d + 1);
    }

    if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
        t.begin(&w);
    }

    let mut budget = (n + 1) * (n + 1) + 16;
    for j in (0..m.saturating_sub(1)).rev() {
        let mut z = w.entries[w.last_of(j)];
        let eps = {
            let w = &w;
            choose_epsilon(
                z,
                |a, b| trigger(n, &sigma_des, |d| w.image_concat(d), a, b),
                |t| w.image_concat(t),
                false,
            )
        };
        let Some(eps) = eps else {
            if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
                t.step(j + 1, &w, z, None);
            }
            continue;
        };
        loop {
            let (a, b) = (mag(z), mag(z + eps));
            if z + eps == 0 || !trigger(n, &sigma_des, |d| w.image_concat(d), a, b) {
                break;
            }
            if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
                t.step(j + 1, &w, z, Some(eps));
            }
            let mut px = w.pos[a];
            let mut py = w.pos[b];
            loop {
                let (ax, ay) = (mag(w.entries[px]), mag(w.entries[py]));
                if !trigger(n, &sigma_des, |d| w.image_concat(d), ax, ay) {
                    break;
                }
                budget = budget.checked_sub(1).expect("swap loop failed to terminate");
                let ev = SwapEvent { x: w.entries[px], y: w.entries[py], px, py };
                w.swap(px, py);
                if let Some(t) = trace.as_deref_mut().filter(|t| t.enabled) {
                    t.swap(ev);
                }
                if px == w.starts[j] {
                    break;
                }
                px = w.pred(px);
                py = w.pred(py);
            }
            z = w.entries[w.last_of(j)];
        }
    }

    if let Some(t) = trace.filter(|t| t.enabled) {
        t.final_entries = w.entries.clone();
    }
    SignedPermutation::from_images_unchecked(w.one_line_concat())
}

/// Inverse of [`phi_plus`]: maps degree `n` to cyclic elements of degree
/// `n + 1` containing `+(n+1)`.
pub fn psi_plus(sigma: &SignedPermutation, trace: Option<&mut TransferTrace>) -> SignedPermutation {
    run_psi(sigma, trace)
}

fn psi(s: &SignedPermutation) -> SignedPermutation {
    run_psi(s, None)
}

/// `-ψ(-σ)`.
fn psi_minus(s: &SignedPermutation) -> SignedPermutation {
    psi(&s.negate_all()).negate_all()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Head {
    Other,
    One,
    MinusOne,
}

fn head(s: &SignedPermutation) -> Head {
    match s.images().first() {
        Some(1) => Head::One,
        Some(-1) => Head::MinusOne,
        _ => Head::Other,
    }
}

/// Inverse of `capital_phi` restricted to cyclic elements with an even
/// number of negative entries.
pub fn capital_psi_d(sigma: &SignedPermutation) -> SignedPermutation {
    let even = sigma.in_d();
    match (head(sigma), even) {
        (Head::Other, true) => psi(sigma),
        (Head::Other, false) => psi_minus(sigma),
        (Head::One, true) => psi(sigma),
        (Head::One, false) => psi(&sigma.times_neg1()),
        (Head::MinusOne, true) => psi_minus(&sigma.times_neg1()),
        (Head::MinusOne, false) => psi_minus(sigma),
    }
}

/// Inverse of `capital_phi` restricted to cyclic elements with an odd
/// number of negative entries.
pub fn capital_psi_dbar(sigma: &SignedPermutation) -> SignedPermutation {
    let even = sigma.in_d();
    match (head(sigma), even) {
        (Head::Other, true) => psi_minus(sigma),
        (Head::Other, false) => psi(sigma),
        (Head::One, true) => psi(&sigma.times_neg1()),
        (Head::One, false) => psi(sigma),
        (Head::MinusOne, true) => psi_minus(sigma),
        (Head::MinusOne, false) => psi_minus(&sigma.times_neg1()),
    }
}

/// `(ψ(σ), ψ((-1)σ), -ψ(-σ), -ψ(-(-1)σ))`: the four cyclic elements that
/// `capital_phi` sends into `{σ, (-1)σ}`.
pub fn preimage_quadruple(sigma: &SignedPermutation) -> [SignedPermutation; 4] {
    let flipped = sigma.times_neg1();
    [psi(sigma), psi(&flipped), psi_minus(sigma), psi_minus(&flipped)]
}

#[cfg(test)]
mod tests;
