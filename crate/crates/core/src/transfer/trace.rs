//! Optional record of a transfer run, and a checker that replays it against
//! the order properties (A)-(D) and swap properties (I)-(IV) of the forward
//! algorithm.

use std::collections::BTreeSet;

use serde::Serialize;

use super::work::Work;
use crate::cycles::{CycleNotation, SignedCycle};
use crate::perm::SignedPermutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SwapEvent {
    /// Entry at `px` before the swap.
    pub x: i32,
    /// Entry at `py` before the swap.
    pub y: i32,
    pub px: usize,
    pub py: usize,
}

/// Working state at the start of a `for` iteration or of an outer `while`
/// iteration, together with the swaps that iteration performed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// 1-based index of the cycle being processed.
    pub j: usize,
    pub entries: Vec<i32>,
    pub z: i32,
    pub epsilon: Option<i32>,
    pub swaps: Vec<SwapEvent>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TransferTrace {
    pub enabled: bool,
    /// Cycle start offsets plus the total length. Fixed for the whole run.
    pub starts: Vec<usize>,
    pub initial: Vec<i32>,
    pub steps: Vec<TraceStep>,
    pub final_entries: Vec<i32>,
    /// Unexpected loop events noticed during the run.
    pub notes: Vec<String>,
}

impl TransferTrace {
    pub fn enabled() -> Self {
        Self { enabled: true, ..Self::default() }
    }

    pub fn disabled() -> Self {
        Self::default()
    }

    fn cycles_of(&self, entries: &[i32]) -> CycleNotation {
        let cycles = self
            .starts
            .windows(2)
            .map(|w| SignedCycle::from_entries_unchecked(entries[w[0]..w[1]].to_vec()))
            .collect();
        CycleNotation::new(entries.len(), cycles).expect("trace snapshots are valid")
    }

    /// Snapshot of step `i` as cycle notation.
    pub fn snapshot(&self, i: usize) -> CycleNotation {
        self.cycles_of(&self.steps[i].entries)
    }

    pub fn final_snapshot(&self) -> CycleNotation {
        self.cycles_of(&self.final_entries)
    }

    /// Magnitudes of the last entries of the initial cycles.
    pub fn initial_last_magnitudes(&self) -> Vec<u32> {
        self.starts[1..].iter().map(|&e| self.initial[e - 1].unsigned_abs()).collect()
    }

    pub(crate) fn begin(&mut self, w: &Work) {
        self.starts = w.starts.clone();
        self.initial = w.entries.clone();
        self.steps.clear();
        self.notes.clear();
    }

    pub(crate) fn step(&mut self, j: usize, w: &Work, z: i32, epsilon: Option<i32>) {
        self.steps.push(TraceStep { j, entries: w.entries.clone(), z, epsilon, swaps: Vec::new() });
    }

    pub(crate) fn swap(&mut self, ev: SwapEvent) {
        if let Some(s) = self.steps.last_mut() {
            s.swaps.push(ev);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyViolation {
    pub property: &'static str,
    /// Index into `steps`, or `steps.len()` for the final state.
    pub step: usize,
    pub detail: String,
}

struct Checker<'a> {
    pi: &'a SignedPermutation,
    n: usize,
    m: usize,
    starts: &'a [usize],
    initial: &'a [i32],
    pi_des: Vec<bool>,
    out: Vec<PropertyViolation>,
}

fn work_of(entries: &[i32], starts: &[usize]) -> Work {
    Work::new(entries.to_vec(), starts.to_vec())
}

impl Checker<'_> {
    fn fail(&mut self, property: &'static str, step: usize, detail: String) {
        self.out.push(PropertyViolation { property, step, detail });
    }

    fn pi_at(&self, m: usize) -> i32 {
        self.pi.image(m)
    }

    fn discrepancies(&self, w: &Work) -> BTreeSet<usize> {
        (1..self.n)
            .filter(|&d| self.pi_des[d] != (w.image(d) > w.image(d + 1)))
            .collect()
    }

    /// Order properties at a snapshot taken in iteration `j` (1-based;
    /// `m + 1` for the final state). `touched` marks positions altered by
    /// any earlier swap.
    fn order(&mut self, step: usize, j: usize, entries: &[i32], touched: &[bool]) {
        let w = work_of(entries, self.starts);
        let m = self.m;

        for k in 0..m {
            let (a, b) = (self.starts[k], self.starts[k + 1]);
            'pairs: for p in a..b {
                for q in p + 1..b {
                    if (entries[p] < entries[q]) != (self.initial[p] < self.initial[q]) {
                        self.fail("A", step, format!("cycle {} positions {p},{q}", k + 1));
                        break 'pairs;
                    }
                }
            }
        }

        let mut running = i32::MIN;
        for k in 0..m {
            let first = entries[self.starts[k]];
            let max = entries[self.starts[k]..self.starts[k + 1]].iter().copied().max().unwrap();
            if first <= running || first != max.max(running) {
                self.fail("B", step, format!("first entry {first} of cycle {}", k + 1));
            }
            running = running.max(max);
        }

        for k in j + 1..=m {
            let pi_k1 = self.initial[self.starts[k - 1]];
            let s_k1 = entries[self.starts[k - 1]];
            let last_k = self.starts[k] - 1;
            for (p, &x) in entries.iter().enumerate() {
                let mag = x.unsigned_abs() as usize;
                let lhs = self.pi_at(mag) > pi_k1;
                let img = w.image(mag);
                let rhs = img >= s_k1;
                if lhs != rhs {
                    self.fail("C", step, format!("element {x} against cycle {k}"));
                } else if (img == s_k1) != (p == last_k) {
                    self.fail("C", step, format!("equality case for {x} against cycle {k}"));
                } else if lhs && touched[p] {
                    self.fail("C", step, format!("large element {x} was swapped"));
                }
            }
        }

        for d in self.discrepancies(&w) {
            let (pa, pb) = (w.pos[d], w.pos[d + 1]);
            let (ka, kb) = (w.cycle_of[pa] as usize, w.cycle_of[pb] as usize);
            let last_a = pa == w.last_of(ka) && ka + 1 >= j;
            let last_b = pb == w.last_of(kb) && kb + 1 >= j;
            if last_a == last_b {
                self.fail("D", step, format!("discrepancy {d}: last-element condition"));
                continue;
            }
            let (px, po) = if last_a { (pa, pb) } else { (pb, pa) };
            let (kx, ko) = (w.cycle_of[px] as usize, w.cycle_of[po] as usize);
            if ko <= kx || po == w.last_of(ko) {
                self.fail("D", step, format!("discrepancy {d}: partner placement"));
                continue;
            }
            let (mx, mo) = (entries[px].unsigned_abs() as usize, entries[po].unsigned_abs() as usize);
            if !(self.pi_at(mx) > self.pi_at(mo) && w.image(mx) < w.image(mo)) {
                self.fail("D", step, format!("discrepancy {d}: value order"));
            }
        }
    }

    fn swaps(&mut self, step: usize, s: &TraceStep, after: &[i32]) {
        let m = self.m;
        let j = s.j;
        let before = work_of(&s.entries, self.starts);
        let aft = work_of(after, self.starts);
        let mut batch = vec![false; s.entries.len()];

        for ev in &s.swaps {
            if ev.x.unsigned_abs().abs_diff(ev.y.unsigned_abs()) != 1 {
                self.fail("swap-distance", step, format!("swap {} <-> {}", ev.x, ev.y));
            }
            let (kx, ky) = (before.cycle_of[ev.px] as usize, before.cycle_of[ev.py] as usize);
            if kx + 1 != j || ky < j {
                self.fail("I", step, format!("swap between cycles {} and {}", kx + 1, ky + 1));
            }
            batch[ev.px] = true;
            batch[ev.py] = true;
        }

        for k in j + 1..=m {
            if batch[self.starts[k] - 1] {
                self.fail("II", step, format!("last entry of cycle {k} swapped"));
            }
        }
        if let Some(first) = s.swaps.first() {
            if let Some(p) = (first.py + 1..batch.len()).find(|&p| batch[p]) {
                self.fail("II", step, format!("position {p} right of the first partner swapped"));
            }
        }

        if j < m {
            let bound = s.entries[self.starts[j]];
            for (p, &x) in s.entries.iter().enumerate() {
                if batch[p] && before.image(x.unsigned_abs() as usize) >= bound {
                    self.fail("III", step, format!("element {x} swapped"));
                }
            }
        }

        let Some(eps) = s.epsilon else { return };
        let d_before = self.discrepancies(&before);
        let d_after = self.discrepancies(&aft);
        let z = s.z;
        let n = self.n;
        let pair = move |a: i32, b: i32| -> Option<usize> {
            if a == 0 || b == 0 {
                return None;
            }
            let d = a.unsigned_abs().min(b.unsigned_abs()) as usize;
            (d >= 1 && d < n).then_some(d)
        };
        let d1 = pair(z, z + eps);
        match d1 {
            Some(d) if d_before.contains(&d) && !d_after.contains(&d) => {}
            _ => self.fail("IV", step, format!("trigger discrepancy {d1:?} not removed")),
        }
        if let Some(d2) = pair(z, z - eps) {
            if d_after.contains(&d2) {
                self.fail("IV", step, format!("discrepancy {d2} on the far side survives"));
            }
        }
        let d3 = pair(z + eps, z + 2 * eps);
        if let Some(d) = d3 {
            let m1 = (z + eps).unsigned_abs() as usize;
            let m2 = (z + 2 * eps).unsigned_abs() as usize;
            let guarded = d_before.contains(&d) || before.image(m2) > before.image(m1);
            if guarded && d_after.contains(&d) {
                self.fail("IV", step, format!("discrepancy {d} beyond the partner survives"));
            }
        }
        for &d in d_after.difference(&d_before) {
            if Some(d) != d3 {
                self.fail("IV", step, format!("discrepancy {d} introduced"));
            }
        }
    }
}

/// Replays a trace of [`super::phi_plus`] on `pi` and reports every order or
/// swap property that fails. An empty result means the run behaved as the
/// correctness argument requires.
pub fn check_order_swap_properties(
    pi: &SignedPermutation,
    trace: &TransferTrace,
) -> Vec<PropertyViolation> {
    let n = pi.degree().saturating_sub(1);
    let mut pi_des = vec![false; n + 1];
    for (d, slot) in pi_des.iter_mut().enumerate().skip(1) {
        *slot = pi.image(d) > pi.image(d + 1);
    }
    let mut c = Checker {
        pi,
        n,
        m: trace.starts.len().saturating_sub(1),
        starts: &trace.starts,
        initial: &trace.initial,
        pi_des,
        out: Vec::new(),
    };
    for note in &trace.notes {
        c.fail("loop", trace.steps.len(), note.clone());
    }
    if trace.starts.is_empty() {
        return c.out;
    }

    let mut touched = vec![false; trace.initial.len()];
    for (i, s) in trace.steps.iter().enumerate() {
        c.order(i, s.j, &s.entries, &touched);
        let after = trace.steps.get(i + 1).map_or(&trace.final_entries, |t| &t.entries);
        if !s.swaps.is_empty() {
            c.swaps(i, s, after);
        }
        for ev in &s.swaps {
            touched[ev.px] = true;
            touched[ev.py] = true;
        }
    }
    c.order(trace.steps.len(), c.m + 1, &trace.final_entries, &touched);
    c.out
}
