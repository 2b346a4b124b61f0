//! Dynkin diagrams (root-length assignments) over a Coxeter diagram.

use std::collections::BTreeSet;

use crate::diagram::{CoxeterDiagram, GeneralizedCartanMatrix, Label};

/// Orientation of one edge of a Dynkin diagram, read from the Cartan
/// entries `(a_ij, a_ji)` of an edge `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    /// Equal root lengths: labels 3 and inf with entries (-2, -2).
    Undirected,
    /// `|a_ij| > |a_ji|`: node `i` carries the shorter root.
    TowardI,
    /// `|a_ij| < |a_ji|`: node `j` carries the shorter root.
    TowardJ,
}

/// Cartan entry pairs `(a_ij, a_ji)` realizing a Coxeter label.
pub fn entry_choices(label: Label) -> &'static [(i64, i64)] {
    match label {
        Label::Two => &[(0, 0)],
        Label::Three => &[(-1, -1)],
        Label::Four => &[(-1, -2), (-2, -1)],
        Label::Six => &[(-1, -3), (-3, -1)],
        Label::Infinite => &[(-2, -2), (-1, -4), (-4, -1)],
    }
}

/// Orientation of edge `(i, j)` of `a`; `None` if there is no edge.
pub fn orientation(a: &GeneralizedCartanMatrix, i: usize, j: usize) -> Option<Orientation> {
    let (x, y) = (a.get(i, j), a.get(j, i));
    if x == 0 {
        return None;
    }
    Some(match x.cmp(&y) {
        std::cmp::Ordering::Equal => Orientation::Undirected,
        // x > y means |a_ij| < |a_ji|
        std::cmp::Ordering::Greater => Orientation::TowardJ,
        std::cmp::Ordering::Less => Orientation::TowardI,
    })
}

/// True iff a positive diagonal `D` with `DA` symmetric exists.
pub fn is_symmetrizable(a: &GeneralizedCartanMatrix) -> bool {
    a.is_symmetrizable()
}

/// The transpose `A^t`, whose root system is the dual one.
pub fn dual(a: &GeneralizedCartanMatrix) -> GeneralizedCartanMatrix {
    a.dual()
}

/// Every symmetrizable GCM whose Coxeter diagram is `diagram`, in sorted
/// order. With `up_to_automorphism`, matrices related by a diagram
/// automorphism are collapsed to the smallest representative.
pub fn enumerate_dynkin(
    diagram: &CoxeterDiagram,
    up_to_automorphism: bool,
) -> Vec<GeneralizedCartanMatrix> {
    let n = diagram.nodes();
    let edges = diagram.edges();
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; edges.len()];
    loop {
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (e, &(i, j, l)) in edges.iter().enumerate() {
            let (x, y) = entry_choices(l)[choice[e]];
            rows[i][j] = x;
            rows[j][i] = y;
        }
        let a = GeneralizedCartanMatrix::new(rows).expect("valid by construction");
        if a.is_symmetrizable() {
            out.insert(a);
        }
        // odometer
        let mut e = 0;
        loop {
            if e == edges.len() {
                return finish(out, up_to_automorphism);
            }
            choice[e] += 1;
            if choice[e] < entry_choices(edges[e].2).len() {
                break;
            }
            choice[e] = 0;
            e += 1;
        }
    }
}

fn finish(
    all: BTreeSet<GeneralizedCartanMatrix>,
    up_to_automorphism: bool,
) -> Vec<GeneralizedCartanMatrix> {
    if !up_to_automorphism {
        return all.into_iter().collect();
    }
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for a in all {
        if seen.insert(a.canonical()) {
            out.push(a);
        }
    }
    out
}
