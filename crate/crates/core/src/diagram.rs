//! Generalized Cartan matrices, Coxeter diagrams, type classification and
//! the enumeration of hyperbolic Coxeter simplex diagrams.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::arith::{inertia, inertia_small, rat, Inertia, Surd};
use crate::canon::{canonicalize, Canonical};
use crate::error::{Error, Result};

/// Coxeter edge label. `Two` means "no edge".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Two,
    Three,
    Four,
    Six,
    Infinite,
}

impl Label {
    /// Product `a_ij * a_ji` of a crystallographic realization.
    pub fn cartan_product(self) -> i64 {
        match self {
            Label::Two => 0,
            Label::Three => 1,
            Label::Four => 2,
            Label::Six => 3,
            Label::Infinite => 4,
        }
    }

    pub fn from_cartan_product(p: i64) -> Option<Label> {
        Some(match p {
            0 => Label::Two,
            1 => Label::Three,
            2 => Label::Four,
            3 => Label::Six,
            4 => Label::Infinite,
            _ => return None,
        })
    }

    /// The dihedral order `m` (0 stands for infinity).
    pub fn order(self) -> u32 {
        match self {
            Label::Two => 2,
            Label::Three => 3,
            Label::Four => 4,
            Label::Six => 6,
            Label::Infinite => 0,
        }
    }

    pub fn code(self) -> i64 {
        match self {
            Label::Two => 0,
            Label::Three => 3,
            Label::Four => 4,
            Label::Six => 6,
            Label::Infinite => 9,
        }
    }

    fn from_code(c: i64) -> Label {
        match c {
            0 => Label::Two,
            3 => Label::Three,
            4 => Label::Four,
            6 => Label::Six,
            _ => Label::Infinite,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Infinite => write!(f, "inf"),
            l => write!(f, "{}", l.order()),
        }
    }
}

/// Undirected Coxeter diagram with labels in {3, 4, 6, inf}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterDiagram {
    n: usize,
    labels: Vec<Label>,
}

impl CoxeterDiagram {
    pub fn empty(n: usize) -> Self {
        CoxeterDiagram {
            n,
            labels: vec![Label::Two; n * n],
        }
    }

    /// Build from `(i, j, label)` triples, 0-based.
    pub fn from_edges(n: usize, edges: &[(usize, usize, Label)]) -> Result<Self> {
        let mut d = CoxeterDiagram::empty(n);
        for &(i, j, l) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::InvalidMatrix(format!("bad edge ({i}, {j})")));
            }
            d.set(i, j, l);
        }
        Ok(d)
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, l: Label) {
        self.labels[i * self.n + j] = l;
        self.labels[j * self.n + i] = l;
    }

    /// Edges `(i, j, label)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, Label)> {
        let mut out = vec![];
        for i in 0..self.n {
            for j in i + 1..self.n {
                let l = self.label(i, j);
                if l != Label::Two {
                    out.push((i, j, l));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self.n, |i, j| self.label(i, j) != Label::Two)
    }

    pub fn induced(&self, nodes: &[usize]) -> CoxeterDiagram {
        let mut d = CoxeterDiagram::empty(nodes.len());
        for (a, &i) in nodes.iter().enumerate() {
            for (b, &j) in nodes.iter().enumerate() {
                d.labels[a * nodes.len() + b] = self.label(i, j);
            }
        }
        d
    }

    /// Relabel so that new node `k` is old node `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> CoxeterDiagram {
        self.induced(order)
    }

    fn weights(&self) -> Vec<i64> {
        self.labels.iter().map(|l| l.code()).collect()
    }

    pub fn canonical_data(&self) -> Canonical {
        canonicalize(self.n, &self.weights(), &vec![0; self.n])
    }

    pub fn canonical(&self) -> CoxeterDiagram {
        let c = self.canonical_data();
        CoxeterDiagram {
            n: self.n,
            labels: c.code.iter().map(|&x| Label::from_code(x)).collect(),
        }
    }

    pub fn has_infinite_edge(&self) -> bool {
        self.labels.contains(&Label::Infinite)
    }

    /// Inertia of the Gram matrix `(-cos(pi / m_ij))`.
    ///
    /// When every cycle carries an even number of 4-edges and of 6-edges the
    /// matrix `2G` is congruent, by a diagonal matrix with entries
    /// `sqrt2^x sqrt3^y`, to an integer matrix; otherwise the computation runs
    /// in `Q(sqrt2, sqrt3)`.
    pub fn gram_inertia(&self) -> Inertia {
        match self.integer_gram() {
            Some(m) => inertia_small(&m).unwrap_or_else(|| {
                let q: Vec<Vec<BigRational>> = m
                    .iter()
                    .map(|r| r.iter().map(|&x| rat(x)).collect())
                    .collect();
                inertia(&q)
            }),
            None => inertia(&self.surd_gram()),
        }
    }

    /// Twice the Gram matrix over `Q(sqrt2, sqrt3)`.
    pub fn surd_gram(&self) -> Vec<Vec<Surd>> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            return Surd::rational(rat(2));
                        }
                        match self.label(i, j) {
                            Label::Two => Surd::rational(rat(0)),
                            Label::Three => Surd::rational(rat(-1)),
                            Label::Four => Surd::new(rat(0), rat(-1), rat(0), rat(0)),
                            Label::Six => Surd::new(rat(0), rat(0), rat(-1), rat(0)),
                            Label::Infinite => Surd::rational(rat(-2)),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// `S (2G) S` with `S = diag(sqrt2^x_v sqrt3^y_v)`, when such a rescaling
    /// makes every entry an integer.
    pub fn integer_gram(&self) -> Option<Vec<Vec<i64>>> {
        let n = self.n;
        let parity = |l: Label| -> (u8, u8) {
            match l {
                Label::Four => (1, 0),
                Label::Six => (0, 1),
                _ => (0, 0),
            }
        };
        let mut xs: Vec<Option<(u8, u8)>> = vec![None; n];
        for start in 0..n {
            if xs[start].is_some() {
                continue;
            }
            xs[start] = Some((0, 0));
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let (xu, yu) = xs[u].unwrap();
                for v in 0..n {
                    let l = self.label(u, v);
                    if v == u || l == Label::Two {
                        continue;
                    }
                    let (px, py) = parity(l);
                    let want = ((xu + px) % 2, (yu + py) % 2);
                    match xs[v] {
                        None => {
                            xs[v] = Some(want);
                            stack.push(v);
                        }
                        Some(have) if have != want => return None,
                        _ => {}
                    }
                }
            }
        }
        let xs: Vec<(u32, u32)> = xs
            .into_iter()
            .map(|p| {
                let (a, b) = p.unwrap();
                (a as u32, b as u32)
            })
            .collect();
        let sq = |e2: u32, e3: u32| -> i64 {
            debug_assert!(e2.is_multiple_of(2) && e3.is_multiple_of(2));
            2i64.pow(e2 / 2) * 3i64.pow(e3 / 2)
        };
        Some(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let (xi, yi) = xs[i];
                            if i == j {
                                return 2 * 2i64.pow(xi) * 3i64.pow(yi);
                            }
                            let (xj, yj) = xs[j];
                            match self.label(i, j) {
                                Label::Two => 0,
                                Label::Three => -sq(xi + xj, yi + yj),
                                Label::Four => -sq(1 + xi + xj, yi + yj),
                                Label::Six => -sq(xi + xj, 1 + yi + yj),
                                Label::Infinite => -2 * sq(xi + xj, yi + yj),
                            }
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// Each connected component is of finite or affine type.
    pub fn is_finite_or_affine(&self) -> bool {
        self.gram_inertia().is_positive_semidefinite()
    }

    /// Hyperbolic simplex diagram: connected, Gram signature `(n-1, 1)`,
    /// every proper subdiagram of finite or affine type.
    pub fn is_hyperbolic(&self) -> bool {
        let n = self.n;
        if n < 2 || !self.is_connected() {
            return false;
        }
        let s = self.gram_inertia();
        if s.negative != 1 || s.zero != 0 {
            return false;
        }
        (0..n).all(|v| {
            let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            self.induced(&rest).is_finite_or_affine()
        })
    }

    /// Every proper subdiagram is of finite type.
    pub fn is_compact_hyperbolic(&self) -> bool {
        self.is_hyperbolic()
            && (0..self.n).all(|v| {
                let rest: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
                self.induced(&rest).gram_inertia().is_positive_definite()
            })
    }
}

pub(crate) fn components(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = vec![];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            let u = comp[k];
            k += 1;
            for v in 0..n {
                if !seen[v] && v != u && adjacent(u, v) {
                    seen[v] = true;
                    comp.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// An integer matrix with `a_ii = 2`, `a_ij <= 0` off the diagonal and
/// `a_ij = 0` iff `a_ji = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralizedCartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl fmt::Debug for GeneralizedCartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

/// Symmetrizer `d` and symmetric matrix `B = diag(d) A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetrization {
    pub d: Vec<BigRational>,
    pub b: Vec<Vec<BigRational>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum TypeTag {
    Finite,
    Affine,
    Indefinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct MatrixType {
    pub tag: TypeTag,
    pub indecomposable: bool,
    pub symmetrizable: bool,
    pub hyperbolic: bool,
}

impl GeneralizedCartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has length {}",
                    r.len()
                )));
            }
            entries.extend_from_slice(r);
        }
        let m = GeneralizedCartanMatrix { n, entries };
        for i in 0..n {
            if m.get(i, i) != 2 {
                return Err(Error::InvalidMatrix(format!("a_{i}{i} != 2")));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if m.get(i, j) > 0 {
                    return Err(Error::InvalidMatrix(format!("a_{i}{j} > 0")));
                }
                if (m.get(i, j) == 0) != (m.get(j, i) == 0) {
                    return Err(Error::InvalidMatrix(format!(
                        "zero pattern differs at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .take(self.n)
            .collect()
    }

    /// The transpose `A^t`.
    pub fn dual(&self) -> GeneralizedCartanMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.get(i, j);
            }
        }
        GeneralizedCartanMatrix { n, entries }
    }

    pub fn principal_submatrix(&self, nodes: &[usize]) -> GeneralizedCartanMatrix {
        let k = nodes.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in nodes {
            for &j in nodes {
                entries.push(self.get(i, j));
            }
        }
        GeneralizedCartanMatrix { n: k, entries }
    }

    /// New index `k` is old index `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> GeneralizedCartanMatrix {
        self.principal_submatrix(order)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        components(self.n, |i, j| self.get(i, j) != 0)
    }

    pub fn is_indecomposable(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Coxeter diagram obtained by erasing arrows.
    pub fn coxeter_diagram(&self) -> Result<CoxeterDiagram> {
        let mut d = CoxeterDiagram::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                let p = self.get(i, j) * self.get(j, i);
                let l = Label::from_cartan_product(p).ok_or(Error::UnsupportedEdge(i, j, p))?;
                d.set(i, j, l);
            }
        }
        Ok(d)
    }

    pub fn canonical_data(&self) -> Canonical {
        canonicalize(self.n, &self.entries, &vec![0; self.n])
    }

    /// Isomorphic copy in canonical node order.
    pub fn canonical(&self) -> GeneralizedCartanMatrix {
        let c = self.canonical_data();
        GeneralizedCartanMatrix {
            n: self.n,
            entries: c.code,
        }
    }

    /// Diagram automorphisms, as `perm[old] = new`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        self.canonical_data().automorphisms
    }

    /// An `order` with `self.permuted(order) == *other`, if isomorphic.
    pub fn isomorphism_to(&self, other: &GeneralizedCartanMatrix) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let a = self.canonical_data();
        let b = other.canonical_data();
        if a.code != b.code {
            return None;
        }
        // self.permuted(a.order) == canon == other.permuted(b.order)
        let mut order = vec![0; self.n];
        for k in 0..self.n {
            order[b.order[k]] = a.order[k];
        }
        debug_assert_eq!(self.permuted(&order), *other);
        Some(order)
    }

    /// Symmetrizer normalized so that the minimum of `d` on each connected
    /// component is 1.
    pub fn symmetrize(&self) -> Result<Symmetrization> {
        let n = self.n;
        let mut d: Vec<Option<BigRational>> = vec![None; n];
        for comp in self.components() {
            let root = comp[0];
            d[root] = Some(BigRational::one());
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let di = d[i].clone().unwrap();
                for j in 0..n {
                    if j == i || self.get(i, j) == 0 {
                        continue;
                    }
                    // d_i a_ij = d_j a_ji
                    let dj = &di
                        * BigRational::new(
                            BigInt::from(self.get(i, j)),
                            BigInt::from(self.get(j, i)),
                        );
                    match &d[j] {
                        None => {
                            d[j] = Some(dj);
                            stack.push(j);
                        }
                        Some(existing) if *existing != dj => return Err(Error::NotSymmetrizable),
                        _ => {}
                    }
                }
            }
            let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
            for &i in &comp {
                d[i] = Some(d[i].take().unwrap() / &min);
            }
        }
        let d: Vec<BigRational> = d.into_iter().map(|x| x.unwrap()).collect();
        let b = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &d[i] * BigRational::from_integer(BigInt::from(self.get(i, j))))
                    .collect()
            })
            .collect();
        Ok(Symmetrization { d, b })
    }

    pub fn is_symmetrizable(&self) -> bool {
        self.symmetrize().is_ok()
    }

    /// Type of the matrix. Decomposable input is classified per component:
    /// Finite if all are finite, Affine if all are finite or affine, else
    /// Indefinite.
    pub fn classify_type(&self) -> Result<MatrixType> {
        let sym = self.symmetrize()?;
        let comps = self.components();
        let mut tag = TypeTag::Finite;
        for comp in &comps {
            let sub: Vec<Vec<BigRational>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| sym.b[i][j].clone()).collect())
                .collect();
            let s = inertia(&sub);
            let t = component_tag(&s);
            tag = match (tag, t) {
                (TypeTag::Indefinite, _) | (_, TypeTag::Indefinite) => TypeTag::Indefinite,
                (TypeTag::Affine, _) | (_, TypeTag::Affine) => TypeTag::Affine,
                _ => TypeTag::Finite,
            };
        }
        let indecomposable = comps.len() == 1;
        let hyperbolic = tag == TypeTag::Indefinite
            && indecomposable
            && self.n >= 2
            && (0..self.n).all(|v| {
                let rest: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
                let b: Vec<Vec<BigRational>> = rest
                    .iter()
                    .map(|&i| rest.iter().map(|&j| sym.b[i][j].clone()).collect())
                    .collect();
                inertia(&b).is_positive_semidefinite()
            });
        Ok(MatrixType {
            tag,
            indecomposable,
            symmetrizable: true,
            hyperbolic,
        })
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.classify_type().map(|t| t.hyperbolic).unwrap_or(false)
    }
}

fn component_tag(s: &Inertia) -> TypeTag {
    if s.is_positive_definite() {
        TypeTag::Finite
    } else if s.negative == 0 && s.zero == 1 {
        TypeTag::Affine
    } else {
        TypeTag::Indefinite
    }
}

/// Exact inertia of a rational symmetric matrix.
pub fn signature(b: &[Vec<BigRational>]) -> Inertia {
    inertia(b)
}

fn extension_labels(result_rank: usize) -> &'static [Label] {
    if result_rank <= 3 {
        &[
            Label::Two,
            Label::Three,
            Label::Four,
            Label::Six,
            Label::Infinite,
        ]
    } else {
        &[Label::Two, Label::Three, Label::Four, Label::Six]
    }
}

/// Attach a new node to `base` in every admissible way, keeping the extended
/// diagrams whose every proper subdiagram is of finite or affine type.
/// Returns `(good, hyperbolic)` connected diagrams on `base.nodes() + 1`
/// nodes, not yet deduplicated.
fn extend(base: &CoxeterDiagram) -> (Vec<CoxeterDiagram>, Vec<CoxeterDiagram>) {
    let k = base.nodes();
    let labels = extension_labels(k + 1);
    // A node of degree >= 5 forces a star K_{1,5}, which is indefinite, so it
    // can only occur when the star is the whole diagram (at most 6 nodes).
    let max_degree = if k + 1 >= 7 { 4 } else { k };
    let mut good = vec![];
    let mut hyper = vec![];
    let mut choice = vec![Label::Two; k];
    dfs(
        base,
        labels,
        max_degree,
        0,
        0,
        &mut choice,
        &mut good,
        &mut hyper,
    );
    (good, hyper)
}

fn with_new_node(base: &CoxeterDiagram, prefix: usize, choice: &[Label]) -> CoxeterDiagram {
    // nodes 0..prefix of base, then the new node
    let nodes: Vec<usize> = (0..prefix).collect();
    let sub = base.induced(&nodes);
    let mut d = CoxeterDiagram::empty(prefix + 1);
    for i in 0..prefix {
        for j in 0..prefix {
            d.labels[i * (prefix + 1) + j] = sub.label(i, j);
        }
        d.set(i, prefix, choice[i]);
    }
    d
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    base: &CoxeterDiagram,
    labels: &[Label],
    max_degree: usize,
    pos: usize,
    degree: usize,
    choice: &mut Vec<Label>,
    good: &mut Vec<CoxeterDiagram>,
    hyper: &mut Vec<CoxeterDiagram>,
) {
    let k = base.nodes();
    if pos == k {
        if degree == 0 {
            return;
        }
        let d = with_new_node(base, k, choice);
        let s = d.gram_inertia();
        if s.is_positive_semidefinite() {
            if !d.has_infinite_edge() || k + 1 == 2 {
                good.push(d);
            }
        } else if s.negative == 1 && s.zero == 0 {
            let new = k;
            let ok = (0..k).all(|v| {
                let rest: Vec<usize> = (0..=k).filter(|&u| u != v).collect();
                d.induced(&rest).is_finite_or_affine()
            });
            if ok {
                let _ = new;
                hyper.push(d);
            }
        }
        return;
    }
    for &l in labels {
        let deg = degree + usize::from(l != Label::Two);
        if deg > max_degree {
            continue;
        }
        choice[pos] = l;
        // the prefix diagram is a proper subdiagram unless it is everything
        if pos + 1 < k && l != Label::Two {
            let d = with_new_node(base, pos + 1, choice);
            if !d.is_finite_or_affine() {
                continue;
            }
        }
        dfs(base, labels, max_degree, pos + 1, deg, choice, good, hyper);
    }
    choice[pos] = Label::Two;
}

fn dedup_canonical(ds: Vec<CoxeterDiagram>) -> Vec<CoxeterDiagram> {
    let mut map: BTreeMap<CoxeterDiagram, ()> = BTreeMap::new();
    for d in ds {
        map.insert(d.canonical(), ());
    }
    map.into_keys().collect()
}

/// Connected diagrams of finite or affine type, by node count, up to
/// `max_nodes`.
pub fn connected_finite_or_affine(max_nodes: usize) -> Vec<Vec<CoxeterDiagram>> {
    enumerate_levels(max_nodes).0
}

fn enumerate_levels(max_nodes: usize) -> (Vec<Vec<CoxeterDiagram>>, Vec<Vec<CoxeterDiagram>>) {
    let mut good: Vec<Vec<CoxeterDiagram>> = vec![vec![], vec![CoxeterDiagram::empty(1)]];
    let mut hyper: Vec<Vec<CoxeterDiagram>> = vec![vec![], vec![]];
    for nodes in 2..=max_nodes {
        let results: Vec<(Vec<CoxeterDiagram>, Vec<CoxeterDiagram>)> =
            good[nodes - 1].par_iter().map(extend).collect();
        let mut g = vec![];
        let mut h = vec![];
        for (a, b) in results {
            g.extend(a);
            h.extend(b);
        }
        good.push(dedup_canonical(g));
        hyper.push(dedup_canonical(h));
    }
    (good, hyper)
}

/// All hyperbolic Coxeter simplex diagrams on `rank` nodes with labels in
/// {3, 4, 6} (and inf when `rank == 3`), up to isomorphism, in canonical
/// form and sorted.
///
/// Every such diagram is a connected finite-or-affine diagram on `rank - 1`
/// nodes plus one node (remove any non-cut vertex), so growing the
/// finite-or-affine diagrams one node at a time reaches all of them.
pub fn enumerate_hyperbolic_simplex_diagrams(rank: usize) -> Vec<CoxeterDiagram> {
    if rank < 2 {
        return vec![];
    }
    let (_, mut hyper) = enumerate_levels(rank);
    std::mem::take(&mut hyper[rank])
        .into_iter()
        .filter(|d| d.nodes() >= 3 || d.is_hyperbolic())
        .collect()
}

/// Hyperbolic diagrams for every rank in `3..=max_rank`.
pub fn enumerate_all_hyperbolic(max_rank: usize) -> Vec<Vec<CoxeterDiagram>> {
    let (_, hyper) = enumerate_levels(max_rank);
    hyper
}
