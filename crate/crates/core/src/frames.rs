//! Simplices tiled by copies of the fundamental simplex `F`, described by
//! a frame: the positive real roots vanishing on their walls.
//!
//! A frame need not induce an integral Cartan matrix; everything here is
//! geometry of mirrors of the Weyl group, computed through the real roots
//! of one fixed root system.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::inverse;
use crate::diagram::{enumerate_hyperbolic_simplex_diagrams, CoxeterDiagram, Label};
use crate::error::{Error, Result};
use crate::roots::{RootSystem, RootVector};

/// Hyperbolic simplex diagrams of a given rank, computed once per process.
pub fn hyperbolic_diagrams(rank: usize) -> &'static [CoxeterDiagram] {
    static CACHE: [OnceLock<Vec<CoxeterDiagram>>; 12] = [const { OnceLock::new() }; 12];
    if rank >= CACHE.len() {
        return &[];
    }
    CACHE[rank].get_or_init(|| enumerate_hyperbolic_simplex_diagrams(rank))
}

/// `4 cos^2` of the angle between the mirrors of two roots, or `None` when
/// the roots are at an acute angle or their mirrors diverge.
pub fn pair_label(sys: &RootSystem, u: &RootVector, v: &RootVector) -> Option<Label> {
    let g = sys.inner_scaled(u, v);
    if g > 0 {
        return None;
    }
    let nu = sys.inner_scaled(u, u);
    let nv = sys.inner_scaled(v, v);
    let num = g.checked_mul(g)?.checked_mul(4)?;
    let den = nu.checked_mul(nv)?;
    if den <= 0 || num % den != 0 {
        return None;
    }
    Label::from_cartan_product(i64::try_from(num / den).ok()?)
}

/// Coxeter diagram of the walls of a frame.
pub fn frame_diagram(sys: &RootSystem, frame: &[RootVector]) -> Option<CoxeterDiagram> {
    let n = frame.len();
    let mut edges = vec![];
    for i in 0..n {
        for j in i + 1..n {
            let l = pair_label(sys, &frame[i], &frame[j])?;
            if l != Label::Two {
                edges.push((i, j, l));
            }
        }
    }
    CoxeterDiagram::from_edges(n, &edges).ok()
}

/// Copies `uF` of `F` inside the simplex of `frame`, each recorded as the
/// frame seen from it (`u^{-1}` applied to every wall root); the first
/// entry is `frame` itself. The count is `[W : W1]`.
pub fn tile_states(
    sys: &RootSystem,
    frame: &[RootVector],
    max_tiles: usize,
) -> Result<Vec<Vec<RootVector>>> {
    let n = sys.rank();
    let simple: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    let mut index: HashMap<Vec<RootVector>, ()> = HashMap::new();
    index.insert(frame.to_vec(), ());
    let mut tiles = vec![frame.to_vec()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        for (k, alpha) in simple.iter().enumerate() {
            if tiles[t].contains(alpha) {
                continue;
            }
            let next = tiles[t]
                .iter()
                .map(|r| sys.reflect_simple(r, k))
                .collect::<Result<Vec<_>>>()?;
            if index.contains_key(&next) {
                continue;
            }
            if tiles.len() >= max_tiles {
                return Err(Error::Exceeded(max_tiles));
            }
            index.insert(next.clone(), ());
            tiles.push(next);
            queue.push_back(tiles.len() - 1);
        }
    }
    Ok(tiles)
}

/// Key of the W-orbit of a placement: the least sorted frame over all its
/// tiles. Two placements containing `F` are W-equivalent iff their keys
/// agree.
pub fn placement_key(states: &[Vec<RootVector>]) -> Vec<RootVector> {
    states
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort();
            s
        })
        .min()
        .unwrap_or_default()
}

/// As [`placement_key`] after relabelling the simple roots by `perm`
/// (`perm[old] = new`).
pub fn permuted_key(states: &[Vec<RootVector>], perm: &[usize]) -> Vec<RootVector> {
    let moved: Vec<Vec<RootVector>> = states
        .iter()
        .map(|s| s.iter().map(|r| permute(r, perm)).collect())
        .collect();
    placement_key(&moved)
}

pub fn permute(r: &RootVector, perm: &[usize]) -> RootVector {
    let mut out = vec![0; r.dim()];
    for (old, &new) in perm.iter().enumerate() {
        out[new] = r.0[old];
    }
    RootVector(out)
}

fn to_rational(v: &RootVector) -> Vec<BigRational> {
    v.0.iter()
        .map(|&x| BigRational::from_integer(x.into()))
        .collect()
}

/// Coordinates with respect to a basis of root vectors.
#[derive(Debug, Clone)]
pub struct FrameBasis {
    inv: Vec<Vec<BigRational>>,
}

impl FrameBasis {
    pub fn new(frame: &[RootVector]) -> Option<Self> {
        let rows: Vec<Vec<BigRational>> = frame.iter().map(to_rational).collect();
        Some(FrameBasis {
            inv: inverse(&rows)?,
        })
    }

    /// `c` with `v = sum c_i frame_i`.
    pub fn coords(&self, v: &RootVector) -> Vec<BigRational> {
        let n = self.inv.len();
        (0..n)
            .map(|j| {
                let mut acc = BigRational::zero();
                for (i, &x) in v.0.iter().enumerate() {
                    if x != 0 {
                        acc += &self.inv[i][j] * BigRational::from_integer(x.into());
                    }
                }
                acc
            })
            .collect()
    }

    /// Integral coordinates, if `v` lies in the lattice of the frame.
    pub fn int_coords(&self, v: &RootVector) -> Option<RootVector> {
        self.coords(v)
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    c.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(RootVector)
    }
}

/// True iff the real root `v`, nonnegative on the simplex of `frame`, is a
/// root of the reflection group of `frame`: descent by the frame
/// reflections reaches a wall root.
pub fn is_frame_mirror(
    sys: &RootSystem,
    frame: &[RootVector],
    basis: &FrameBasis,
    v: &RootVector,
) -> bool {
    let mut c = basis.coords(v);
    let mut cur = v.clone();
    let norms: Vec<i128> = frame.iter().map(|b| sys.inner_scaled(b, b)).collect();
    loop {
        if c.iter().any(|x| x.is_negative()) {
            return false;
        }
        if frame.contains(&cur) {
            return true;
        }
        let mut moved = false;
        for (i, b) in frame.iter().enumerate() {
            let g = sys.inner_scaled(&cur, b);
            if g <= 0 {
                continue;
            }
            if (2 * g) % norms[i] != 0 {
                return false;
            }
            let k = 2 * g / norms[i];
            let Ok(k64) = i64::try_from(k) else {
                return false;
            };
            let Ok(next) = cur.checked_axpy(-k64, b) else {
                return false;
            };
            cur = next;
            c[i] -= BigRational::from_integer(k.into());
            moved = true;
            break;
        }
        if !moved {
            return false;
        }
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer(), x.denom());
    let rn = n.sqrt();
    let rd = d.sqrt();
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Affine solution space of `(x | r_i) = y_i` for independent roots
/// `r_1..r_{n-1}`: `x = P y + s z`.
#[derive(Debug, Clone)]
pub struct Completion {
    p: Vec<Vec<BigRational>>,
    z: Vec<BigRational>,
    gram: Vec<Vec<BigRational>>,
}

impl Completion {
    pub fn new(sys: &RootSystem, partial: &[RootVector]) -> Option<Self> {
        let n = sys.rank();
        if partial.len() + 1 != n {
            return None;
        }
        let gram: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        BigRational::from_integer(
                            sys.inner_scaled(&RootVector::simple(n, i), &RootVector::simple(n, j))
                                .into(),
                        )
                    })
                    .collect()
            })
            .collect();
        let mut rows: Vec<Vec<BigRational>> = partial
            .iter()
            .map(|r| {
                (0..n)
                    .map(|j| {
                        let mut acc = BigRational::zero();
                        for (i, &x) in r.0.iter().enumerate() {
                            if x != 0 {
                                acc += &gram[i][j] * BigRational::from_integer(x.into());
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        for e in 0..n {
            let mut row = vec![BigRational::zero(); n];
            row[e] = BigRational::one();
            rows.push(row);
            if let Some(inv) = inverse(&rows) {
                let p = inv.iter().map(|r| r[..n - 1].to_vec()).collect();
                let z = inv.iter().map(|r| r[n - 1].clone()).collect();
                return Some(Completion { p, z, gram });
            }
            rows.pop();
        }
        None
    }

    fn form(&self, u: &[BigRational], v: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    acc += ui * &self.gram[i][j] * vj;
                }
            }
        }
        acc
    }

    /// Integral vectors `x` with scaled pairings `y` and scaled norm `norm`.
    pub fn solve(&self, y: &[i128], norm: i128) -> Vec<RootVector> {
        let n = self.z.len();
        let y: Vec<BigRational> = y
            .iter()
            .map(|&v| BigRational::from_integer(BigInt::from(v)))
            .collect();
        let x0: Vec<BigRational> = (0..n)
            .map(|i| {
                self.p[i]
                    .iter()
                    .zip(&y)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        let a = self.form(&self.z, &self.z);
        let b = self.form(&x0, &self.z) * BigRational::from_integer(2.into());
        let c = self.form(&x0, &x0) - BigRational::from_integer(BigInt::from(norm));
        let mut params = vec![];
        if a.is_zero() {
            if !b.is_zero() {
                params.push(-c / b);
            }
        } else {
            let disc = &b * &b - BigRational::from_integer(4.into()) * &a * &c;
            if let Some(r) = rational_sqrt(&disc) {
                let two_a = &a * BigRational::from_integer(2.into());
                params.push((-&b + &r) / &two_a);
                if !r.is_zero() {
                    params.push((-&b - &r) / &two_a);
                }
            }
        }
        let mut out = vec![];
        for s in params {
            let x: Option<Vec<i64>> = (0..n)
                .map(|i| {
                    let v = &x0[i] + &s * &self.z[i];
                    if v.is_integer() {
                        v.to_integer().to_i64()
                    } else {
                        None
                    }
                })
                .collect();
            if let Some(x) = x {
                out.push(RootVector(x));
            }
        }
        out
    }
}

/// Label-preserving bijections `a -> b`, as `map[a_node] = b_node`.
pub fn isomorphisms(a: &CoxeterDiagram, b: &CoxeterDiagram) -> Vec<Vec<usize>> {
    let n = a.nodes();
    if b.nodes() != n {
        return vec![];
    }
    let profile = |d: &CoxeterDiagram, v: usize| {
        let mut p: Vec<i64> = (0..n)
            .filter(|&u| u != v)
            .map(|u| d.label(v, u).code())
            .collect();
        p.sort_unstable();
        p
    };
    let pa: Vec<Vec<i64>> = (0..n).map(|v| profile(a, v)).collect();
    let pb: Vec<Vec<i64>> = (0..n).map(|v| profile(b, v)).collect();
    let mut out = vec![];
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        a: &CoxeterDiagram,
        b: &CoxeterDiagram,
        pa: &[Vec<i64>],
        pb: &[Vec<i64>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = map.len();
        if v == n {
            out.push(map.clone());
            return;
        }
        for w in 0..n {
            if used[w] || pa[v] != pb[w] {
                continue;
            }
            if (0..v).any(|u| a.label(u, v) != b.label(map[u], w)) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            rec(v + 1, a, b, pa, pb, map, used, out);
            used[w] = false;
        }
        map[v] = usize::MAX;
    }
    rec(0, a, b, &pa, &pb, &mut map, &mut used, &mut out);
    out
}

/// Labels from a new node to the nodes of `partial` (a diagram on `n - 1`
/// nodes) that make the extension a hyperbolic simplex diagram.
pub fn hyperbolic_extensions(partial: &CoxeterDiagram) -> BTreeSet<Vec<Label>> {
    let n = partial.nodes() + 1;
    let mut out = BTreeSet::new();
    for h in hyperbolic_diagrams(n) {
        for v in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            let sub = h.induced(&rest);
            for map in isomorphisms(&sub, partial) {
                let mut labels = vec![Label::Two; n - 1];
                for (i, &u) in rest.iter().enumerate() {
                    labels[map[i]] = h.label(v, u);
                }
                out.insert(labels);
            }
        }
    }
    out
}

/// Scaled pairing `(x|r)` for a wall at label `l` to a root of scaled norm
/// `nr`, when the new root has scaled norm `nx`.
fn target_pairing(l: Label, nx: i128, nr: i128) -> Option<i128> {
    let q = i128::from(l.cartan_product())
        .checked_mul(nx)?
        .checked_mul(nr)?;
    let r = q.sqrt();
    if r * r != q || r % 2 != 0 {
        return None;
    }
    Some(-r / 2)
}

/// Real roots `x` with the prescribed labels to the roots of `partial`,
/// nonpositive pairings, and any real-root norm.
pub fn completions(
    sys: &RootSystem,
    partial: &[RootVector],
    solver: &Completion,
    labels: &[Label],
) -> Vec<RootVector> {
    let norms = sys.simple_norms_scaled();
    let pnorms: Vec<i128> = partial.iter().map(|r| sys.inner_scaled(r, r)).collect();
    let mut out = vec![];
    for &nx in &norms {
        let nx = i128::from(nx);
        let y: Option<Vec<i128>> = labels
            .iter()
            .zip(&pnorms)
            .map(|(&l, &nr)| target_pairing(l, nx, nr))
            .collect();
        let Some(y) = y else { continue };
        for x in solver.solve(&y, nx) {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

/// A vertex-type move: the simplex of `frame` with wall `k` replaced by
/// the mirror of `root`, still containing the simplex of `frame`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMove {
    pub k: usize,
    pub root: RootVector,
}

/// All vertex-type moves from `frame` whose result is a hyperbolic
/// simplex with walls among the mirrors of the ambient group.
pub fn vertex_moves(sys: &RootSystem, frame: &[RootVector]) -> Result<Vec<VertexMove>> {
    let n = frame.len();
    let basis = FrameBasis::new(frame).ok_or(Error::DependentRoots)?;
    let diagram = frame_diagram(sys, frame).ok_or(Error::InvalidMatrix(
        "frame is not a Coxeter simplex".into(),
    ))?;
    let mut out = vec![];
    for k in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&i| i != k).collect();
        let partial: Vec<RootVector> = rest.iter().map(|&i| frame[i].clone()).collect();
        let sub = diagram.induced(&rest);
        let Some(solver) = Completion::new(sys, &partial) else {
            continue;
        };
        for labels in hyperbolic_extensions(&sub) {
            for x in completions(sys, &partial, &solver, &labels) {
                if x == frame[k] || !x.is_positive() {
                    continue;
                }
                let c = basis.coords(&x);
                if c.iter().any(|v| v.is_negative()) || !c[k].is_positive() {
                    continue;
                }
                if !sys.is_real_root(&x) {
                    continue;
                }
                let mv = VertexMove { k, root: x };
                if !out.contains(&mv) {
                    out.push(mv);
                }
            }
        }
    }
    Ok(out)
}

/// Replace wall `k` of `frame`.
pub fn apply_move(frame: &[RootVector], mv: &VertexMove) -> Vec<RootVector> {
    let mut f = frame.to_vec();
    f[mv.k] = mv.root.clone();
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::GeneralizedCartanMatrix;

    fn sys(rows: &[&[i64]]) -> RootSystem {
        RootSystem::new(
            &GeneralizedCartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap(),
        )
        .unwrap()
    }

    fn identity(n: usize) -> Vec<RootVector> {
        (0..n).map(|i| RootVector::simple(n, i)).collect()
    }

    #[test]
    fn identity_frame_has_one_tile() {
        let s = sys(&[&[2, -1, 0], &[-2, 2, -1], &[0, -1, 2]]);
        assert_eq!(tile_states(&s, &identity(3), 10).unwrap().len(), 1);
    }

    #[test]
    fn doubling_across_a_leaf() {
        // compact triangle 0 -6- 1 -4- 2, doubled across wall 2
        let s = sys(&[&[2, -3, 0], &[-1, 2, -1], &[0, -2, 2]]);
        let mut frame = identity(3);
        frame[2] = RootVector(vec![0, 1, 2]);
        let tiles = tile_states(&s, &frame, 10).unwrap();
        assert_eq!(tiles.len(), 2);
        let moves = vertex_moves(&s, &identity(3)).unwrap();
        assert!(moves.iter().any(|m| apply_move(&identity(3), m) == frame));
    }

    #[test]
    fn isomorphisms_of_a_path() {
        let p =
            CoxeterDiagram::from_edges(3, &[(0, 1, Label::Three), (1, 2, Label::Three)]).unwrap();
        assert_eq!(isomorphisms(&p, &p).len(), 2);
        let q =
            CoxeterDiagram::from_edges(3, &[(0, 1, Label::Three), (1, 2, Label::Four)]).unwrap();
        assert_eq!(isomorphisms(&q, &q).len(), 1);
        assert!(isomorphisms(&p, &q).is_empty());
    }

    #[test]
    fn keys_identify_tiles() {
        let s = sys(&[&[2, -3, 0], &[-1, 2, -1], &[0, -2, 2]]);
        let mut frame = identity(3);
        frame[2] = RootVector(vec![0, 1, 2]);
        let tiles = tile_states(&s, &frame, 10).unwrap();
        let other = tiles[1].clone();
        let again = tile_states(&s, &other, 10).unwrap();
        assert_eq!(placement_key(&tiles), placement_key(&again));
    }
}
