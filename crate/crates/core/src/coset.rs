//! Coxeter presentations and Todd–Coxeter coset enumeration.
//!
//! Strategy: HLT (relator cycles are completed at each live coset in order
//! of definition) with a lookahead pass whenever the table is full. All
//! generators are involutions, so a single column serves a generator and
//! its inverse. Coincidences are processed with a union-find queue.

use crate::diagram::{CoxeterDiagram, Label};
use crate::error::{Error, Result};
use crate::roots::{RootSystem, RootVector};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

/// Generators `s_0..s_{n-1}` with relations `s_i^2` and `(s_i s_j)^{m_ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterPresentation {
    n: usize,
    /// `m_ij`, with 0 standing for infinity (no relation).
    orders: Vec<u32>,
}

impl CoxeterPresentation {
    pub fn generators(&self) -> usize {
        self.n
    }

    /// `m_ij`, or `None` for infinity.
    pub fn order(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        match self.orders[i * self.n + j] {
            0 => None,
            m => Some(m),
        }
    }

    /// Braid relators `(s_i s_j)^m` for `i < j` with finite `m`.
    pub fn relators(&self) -> Vec<Vec<usize>> {
        let mut out = vec![];
        for i in 0..self.n {
            for j in i + 1..self.n {
                if let Some(m) = self.order(i, j) {
                    let mut w = Vec::with_capacity(2 * m as usize);
                    for _ in 0..m {
                        w.push(i);
                        w.push(j);
                    }
                    out.push(w);
                }
            }
        }
        out
    }
}

pub fn coxeter_presentation(d: &CoxeterDiagram) -> CoxeterPresentation {
    let n = d.nodes();
    let mut orders = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            orders[i * n + j] = if i == j {
                1
            } else if d.label(i, j) == Label::Infinite {
                0
            } else {
                d.label(i, j).order()
            };
        }
    }
    CoxeterPresentation { n, orders }
}

/// Word `w s_i w^{-1}` for the reflection in a real root `v = ±w a_i`.
pub fn reflection_word(sys: &RootSystem, v: &RootVector) -> Result<Vec<usize>> {
    sys.reflection_word(v)
}

const UNDEF: u32 = u32::MAX;

struct Table {
    gens: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max: usize,
}

enum Step {
    Done,
    Full,
}

impl Table {
    fn new(gens: usize, max: usize) -> Self {
        Table {
            gens,
            rows: vec![UNDEF; gens],
            parent: vec![0],
            live: 1,
            max,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.gens + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.rows[c as usize * self.gens + x] = d;
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn count(&self) -> usize {
        self.parent.len()
    }

    fn define(&mut self, c: u32, x: usize) -> Option<u32> {
        if self.live >= self.max {
            return None;
        }
        let d = self.count() as u32;
        self.rows.extend(std::iter::repeat_n(UNDEF, self.gens));
        self.parent.push(d);
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x, c);
        Some(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.parent[drop as usize] = keep;
        self.live -= 1;
        queue.push(drop);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = vec![];
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let e = queue[i];
            i += 1;
            for x in 0..self.gens {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                self.set(f, x, UNDEF);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let t = self.get(e1, x);
                if t != UNDEF {
                    self.merge(f1, t, &mut queue);
                } else {
                    let u = self.get(f1, x);
                    if u != UNDEF {
                        self.merge(e1, u, &mut queue);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x, e1);
                    }
                }
            }
        }
    }

    /// Trace `w` from `c` forwards and backwards, recording a deduction or
    /// coincidence when the two ends meet; with `fill`, define new cosets
    /// to close the gap.
    fn scan(&mut self, c: u32, w: &[usize], fill: bool) -> Step {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len();
        loop {
            while i < j {
                let t = self.get(f, w[i]);
                if t == UNDEF {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Step::Done;
            }
            while j > i {
                let t = self.get(b, w[j - 1]);
                if t == UNDEF {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Step::Done;
            }
            if j == i + 1 {
                self.set(f, w[i], b);
                self.set(b, w[i], f);
                return Step::Done;
            }
            if !fill {
                return Step::Done;
            }
            match self.define(f, w[i]) {
                Some(_) => {}
                None => return Step::Full,
            }
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>]) {
        let mut c = 0u32;
        while (c as usize) < self.count() {
            if self.alive(c) {
                for r in relators {
                    self.scan(c, r, false);
                    if !self.alive(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }
}

/// Index of the subgroup generated by `subgroup_words` in the Coxeter group
/// of `pres`, or `Exceeded` if more than `max_cosets` live cosets would be
/// needed. Exceeding the limit says nothing about finiteness of the index.
pub fn todd_coxeter(
    pres: &CoxeterPresentation,
    subgroup_words: &[Vec<usize>],
    max_cosets: usize,
) -> Result<usize> {
    let n = pres.generators();
    if subgroup_words.iter().flatten().any(|&x| x >= n) {
        return Err(Error::InvalidMatrix("generator index out of range".into()));
    }
    let relators = pres.relators();
    let mut t = Table::new(n, max_cosets.max(1));
    let mut retried = false;
    for w in subgroup_words {
        loop {
            match t.scan(0, w, true) {
                Step::Done => break,
                Step::Full if !retried => {
                    t.lookahead(&relators);
                    retried = true;
                }
                Step::Full => return Err(Error::Exceeded(max_cosets)),
            }
        }
    }
    let mut c = 0u32;
    while (c as usize) < t.count() {
        let mut progressed = true;
        if t.alive(c) {
            for r in &relators {
                if let Step::Full = t.scan(c, r, true) {
                    progressed = false;
                    break;
                }
                if !t.alive(c) {
                    break;
                }
            }
            if progressed && t.alive(c) {
                for x in 0..n {
                    if t.get(c, x) == UNDEF && t.define(c, x).is_none() {
                        progressed = false;
                        break;
                    }
                }
            }
        }
        if !progressed {
            let before = t.live;
            t.lookahead(&relators);
            if t.live == before {
                return Err(Error::Exceeded(max_cosets));
            }
            continue;
        }
        c += 1;
    }
    debug_assert!(verify_closed(&t, &relators, subgroup_words));
    Ok(t.live)
}

fn verify_closed(t: &Table, relators: &[Vec<usize>], subgroup_words: &[Vec<usize>]) -> bool {
    let live: Vec<u32> = (0..t.count() as u32).filter(|&c| t.alive(c)).collect();
    let trace = |c: u32, w: &[usize]| -> Option<u32> {
        let mut x = c;
        for &g in w {
            x = t.get(x, g);
            if x == UNDEF {
                return None;
            }
        }
        Some(x)
    };
    live.iter().all(|&c| {
        (0..t.gens).all(|x| t.get(c, x) != UNDEF && t.get(t.get(c, x), x) == c)
            && relators.iter().all(|r| trace(c, r) == Some(c))
    }) && subgroup_words.iter().all(|w| trace(0, w) == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diagram(n: usize, edges: &[(usize, usize, Label)]) -> CoxeterDiagram {
        CoxeterDiagram::from_edges(n, edges).unwrap()
    }

    #[test]
    fn finite_group_orders() {
        let cases = [
            (diagram(2, &[(0, 1, Label::Three)]), 6),
            (diagram(2, &[(0, 1, Label::Four)]), 8),
            (diagram(2, &[(0, 1, Label::Six)]), 12),
            (
                diagram(3, &[(0, 1, Label::Three), (1, 2, Label::Three)]),
                24,
            ),
        ];
        for (d, order) in cases {
            let p = coxeter_presentation(&d);
            assert_eq!(todd_coxeter(&p, &[], 1000).unwrap(), order);
        }
    }

    #[test]
    fn whole_group_has_index_one() {
        let d = diagram(3, &[(0, 1, Label::Three), (1, 2, Label::Four)]);
        let p = coxeter_presentation(&d);
        assert_eq!(
            todd_coxeter(&p, &[vec![0], vec![1], vec![2]], 1000).unwrap(),
            1
        );
    }

    #[test]
    fn presentation_relators() {
        let p = coxeter_presentation(&diagram(2, &[(0, 1, Label::Infinite)]));
        assert!(p.relators().is_empty());
        let p = coxeter_presentation(&diagram(2, &[(0, 1, Label::Six)]));
        assert_eq!(p.relators(), vec![vec![0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1]]);
    }

    #[test]
    fn limit_is_reported() {
        let p = coxeter_presentation(&diagram(3, &[(0, 1, Label::Three), (1, 2, Label::Three)]));
        assert_eq!(todd_coxeter(&p, &[], 10), Err(Error::Exceeded(10)));
    }
}
