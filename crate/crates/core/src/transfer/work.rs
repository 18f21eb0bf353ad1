//! Mutable cycle word with fixed boundaries, shared by both directions of
//! the transfer. Entries move by position; `pos` maps magnitudes back.

pub(crate) struct Work {
    pub entries: Vec<i32>,
    /// Start offset of every cycle, plus `entries.len()` at the end.
    pub starts: Vec<usize>,
    pub cycle_of: Vec<u32>,
    pub pos: Vec<usize>,
}

impl Work {
    pub fn new(entries: Vec<i32>, starts: Vec<usize>) -> Self {
        let len = entries.len();
        debug_assert_eq!(starts.last().copied(), Some(len));
        let mut cycle_of = vec![0u32; len];
        for k in 0..starts.len() - 1 {
            for c in &mut cycle_of[starts[k]..starts[k + 1]] {
                *c = k as u32;
            }
        }
        let mut pos = vec![usize::MAX; len + 1];
        for (p, v) in entries.iter().enumerate() {
            pos[v.unsigned_abs() as usize] = p;
        }
        Self { entries, starts, cycle_of, pos }
    }

    #[inline]
    pub fn cycle_start(&self, p: usize) -> usize {
        self.starts[self.cycle_of[p] as usize]
    }

    #[inline]
    pub fn cycle_end(&self, p: usize) -> usize {
        self.starts[self.cycle_of[p] as usize + 1]
    }

    #[inline]
    pub fn last_of(&self, k: usize) -> usize {
        self.starts[k + 1] - 1
    }

    #[inline]
    pub fn succ(&self, p: usize) -> usize {
        if p + 1 == self.cycle_end(p) {
            self.cycle_start(p)
        } else {
            p + 1
        }
    }

    #[inline]
    pub fn pred(&self, p: usize) -> usize {
        if p == self.cycle_start(p) {
            self.cycle_end(p) - 1
        } else {
            p - 1
        }
    }

    /// Image of magnitude `m` under the permutation the cycles describe.
    #[inline]
    pub fn image(&self, m: usize) -> i32 {
        self.entries[self.succ(self.pos[m])]
    }

    /// Image of magnitude `m` when all entries form one long cycle.
    #[inline]
    pub fn image_concat(&self, m: usize) -> i32 {
        let p = self.pos[m] + 1;
        self.entries[if p == self.entries.len() { 0 } else { p }]
    }

    /// Exchanges magnitudes at `p` and `q`, each position keeping its sign.
    #[inline]
    pub fn swap(&mut self, p: usize, q: usize) {
        let x = self.entries[p];
        let y = self.entries[q];
        let (mx, my) = (x.unsigned_abs() as i32, y.unsigned_abs() as i32);
        self.entries[p] = x.signum() * my;
        self.entries[q] = y.signum() * mx;
        self.pos[mx as usize] = q;
        self.pos[my as usize] = p;
    }

    /// One-line images `[σ(1), ..., σ(len)]` of the cycle permutation.
    pub fn one_line(&self) -> Vec<i32> {
        let mut out = vec![0; self.entries.len()];
        for p in 0..self.entries.len() {
            out[self.entries[p].unsigned_abs() as usize - 1] = self.entries[self.succ(p)];
        }
        out
    }

    /// One-line images of the single cycle formed by concatenation.
    pub fn one_line_concat(&self) -> Vec<i32> {
        let len = self.entries.len();
        let mut out = vec![0; len];
        for p in 0..len {
            out[self.entries[p].unsigned_abs() as usize - 1] = self.entries[(p + 1) % len];
        }
        out
    }
}
