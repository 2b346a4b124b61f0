//! Canonical labelling of small weighted digraphs under simultaneous
//! row/column permutation.
//!
//! Individualization-refinement: vertices are colored by an
//! isomorphism-invariant refinement, then every vertex of the first
//! non-singleton cell is individualized in turn. Every leaf of the search
//! tree is a total order; the canonical code is the minimum weight matrix
//! over all leaves. No automorphism pruning is done, so the leaves attaining
//! the minimum form a full coset of the automorphism group.

/// Result of canonicalizing an `n x n` weight matrix.
#[derive(Debug, Clone)]
pub struct Canonical {
    /// `order[new] = old`.
    pub order: Vec<usize>,
    /// Row-major weights in canonical order.
    pub code: Vec<i64>,
    /// All automorphisms, each as `perm[old] = image`.
    pub automorphisms: Vec<Vec<usize>>,
}

fn refine(n: usize, w: &[i64], colors: &mut Vec<usize>) {
    loop {
        let classes_before = colors.iter().copied().max().map_or(0, |m| m + 1);
        let sigs: Vec<(usize, Vec<(i64, i64, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(i64, i64, usize)> = (0..n)
                    .filter(|&u| u != v && (w[v * n + u] != 0 || w[u * n + v] != 0))
                    .map(|u| (w[v * n + u], w[u * n + v], colors[u]))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<(i64, i64, usize)>)> = sigs.iter().collect();
        distinct.sort();
        distinct.dedup();
        let new: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present"))
            .collect();
        let classes_after = distinct.len();
        *colors = new;
        if classes_after == classes_before {
            return;
        }
    }
}

struct Search<'a> {
    n: usize,
    w: &'a [i64],
    best: Option<Vec<i64>>,
    leaves: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<usize>) {
        let n = self.n;
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c] += 1;
        }
        match (0..n).find(|&c| counts[c] > 1) {
            None => {
                let mut order = vec![0; n];
                for v in 0..n {
                    order[colors[v]] = v;
                }
                let code: Vec<i64> = (0..n * n)
                    .map(|k| self.w[order[k / n] * n + order[k % n]])
                    .collect();
                match &self.best {
                    Some(b) if code > *b => {}
                    Some(b) if code == *b => self.leaves.push(order),
                    _ => {
                        self.best = Some(code);
                        self.leaves = vec![order];
                    }
                }
            }
            Some(cell) => {
                let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell).collect();
                for &v in &members {
                    let mut c: Vec<usize> = colors
                        .iter()
                        .enumerate()
                        .map(|(x, &col)| 2 * col + usize::from(col == cell && x != v))
                        .collect();
                    // compress
                    let mut vals = c.clone();
                    vals.sort_unstable();
                    vals.dedup();
                    for x in c.iter_mut() {
                        *x = vals.binary_search(x).unwrap();
                    }
                    refine(n, self.w, &mut c);
                    self.run(c);
                }
            }
        }
    }
}

/// Canonicalize the weight matrix `w` (row-major, `n x n`). Vertex colors
/// `initial` (e.g. all zero) are respected: vertices of different initial
/// colors are never exchanged.
pub fn canonicalize(n: usize, w: &[i64], initial: &[i64]) -> Canonical {
    assert_eq!(w.len(), n * n);
    if n == 0 {
        return Canonical {
            order: vec![],
            code: vec![],
            automorphisms: vec![vec![]],
        };
    }
    let mut vals: Vec<i64> = initial.to_vec();
    vals.sort_unstable();
    vals.dedup();
    let mut colors: Vec<usize> = initial
        .iter()
        .map(|x| vals.binary_search(x).unwrap())
        .collect();
    refine(n, w, &mut colors);
    let mut s = Search {
        n,
        w,
        best: None,
        leaves: vec![],
    };
    s.run(colors);
    let code = s.best.unwrap();
    let first = s.leaves[0].clone();
    // automorphism: old vertex first[k] -> leaf[k]
    let automorphisms = s
        .leaves
        .iter()
        .map(|leaf| {
            let mut perm = vec![0; n];
            for k in 0..n {
                perm[first[k]] = leaf[k];
            }
            perm
        })
        .collect();
    Canonical {
        order: first,
        code,
        automorphisms,
    }
}
