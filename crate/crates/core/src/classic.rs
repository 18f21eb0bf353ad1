//! The unsigned specialisation of the forward transfer, written directly
//! against its simplified statement: no signs, no absolute values, and a
//! swap trigger phrased through value comparisons instead of descent sets.
//!
//! This is a separate code path on purpose. Agreement with
//! [`crate::transfer::capital_phi`] on unsigned inputs is a real check.

use crate::cycles::{is_cyclic, trace_from};
use crate::error::{Error, Result};
use crate::perm::SignedPermutation;
use crate::transfer::p_flag;
use crate::transfer::work::Work;

fn validate(pi: &SignedPermutation) -> Result<()> {
    if pi.degree() == 0 || !pi.is_unsigned() || !is_cyclic(pi) {
        return Err(Error::Domain(format!("{pi} is not an unsigned cyclic permutation")));
    }
    Ok(())
}

/// Maps an unsigned cyclic permutation of degree `n + 1` to an unsigned
/// permutation of degree `n` with the same descents in `[n-1]`.
pub fn phi_classic(pi: &SignedPermutation) -> Result<SignedPermutation> {
    validate(pi)?;
    Ok(run(pi, None))
}

/// Like [`phi_classic`], additionally re-deriving every trigger and
/// continuation decision from [`p_flag`] and returning each disagreement.
pub fn phi_classic_instrumented(pi: &SignedPermutation) -> Result<(SignedPermutation, Vec<String>)> {
    validate(pi)?;
    let mut log = Vec::new();
    let out = run(pi, Some(&mut log));
    Ok((out, log))
}

fn run(pi: &SignedPermutation, mut log: Option<&mut Vec<String>>) -> SignedPermutation {
    let n1 = pi.degree();
    let n = n1 as i32 - 1;
    let mut word = Vec::with_capacity(n1);
    trace_from(pi, n1, &mut word);

    let mut starts = Vec::new();
    let mut best = 0;
    for (p, &v) in word.iter().enumerate() {
        if v > best {
            best = v;
            starts.push(p);
        }
    }
    word.pop();
    let m = starts.len() - 1;
    let mut w = Work::new(word, starts);

    // π(z) > π(z+ε) and σ(z) < σ(z+ε), for z + ε inside [n].
    let fires = |w: &Work, z: i32, t: i32| -> bool {
        (1..=n).contains(&t)
            && pi.image(z as usize) > pi.image(t as usize)
            && w.image(z as usize) < w.image(t as usize)
    };
    let audit = |w: &Work, log: &mut Vec<String>, what: &str, a: i32, b: i32, got: bool| {
        let sigma = SignedPermutation::from_images_unchecked(w.one_line());
        let want = p_flag(pi, &sigma, a.max(0) as u64, b.max(0) as u64);
        if got != want {
            log.push(format!("{what} at ({a},{b}): algorithm says {got}, descent test says {want}"));
        }
    };

    for j in 0..m {
        let mut z = w.entries[w.last_of(j)];
        if let Some(log) = log.as_deref_mut() {
            for eps in [-1, 1] {
                audit(&w, log, "trigger", z, z + eps, fires(&w, z, z + eps));
            }
        }
        let eps = [-1, 1]
            .into_iter()
            .filter(|&e| fires(&w, z, z + e))
            .max_by_key(|&e| pi.image((z + e) as usize));
        let Some(eps) = eps else { continue };

        while fires(&w, z, z + eps) {
            let mut px = w.pos[z as usize];
            let mut py = w.pos[(z + eps) as usize];
            loop {
                w.swap(px, py);
                if px == w.starts[j] {
                    break;
                }
                let (qx, qy) = (w.pred(px), w.pred(py));
                let (a, b) = (w.entries[qx], w.entries[qy]);
                let cont = a.abs_diff(b) == 1;
                if let Some(log) = log.as_deref_mut() {
                    audit(&w, log, "continuation", a, b, cont);
                }
                if !cont {
                    break;
                }
                px = qx;
                py = qy;
            }
            z = w.entries[w.last_of(j)];
            if let Some(log) = log.as_deref_mut() {
                audit(&w, log, "trigger", z, z + eps, fires(&w, z, z + eps));
            }
        }
    }
    SignedPermutation::from_images_unchecked(w.one_line())
}
