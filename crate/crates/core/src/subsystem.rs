//! Maximal rank subsystems `D1 ⊂ D` given by simple roots of `D1` written in
//! the simple-root basis of `D`.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{inverse, rank};
use crate::diagram::GeneralizedCartanMatrix;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::roots::{RootSystem, RootVector};

/// Simple roots of a subsystem, expressed in the ambient simple roots.
#[derive(Debug, Clone)]
pub struct Embedding {
    system: RootSystem,
    roots: Vec<RootVector>,
    induced: GeneralizedCartanMatrix,
    sub_system: RootSystem,
    lattice: Lattice,
    inverse: Vec<Vec<BigRational>>,
}

/// Cartan matrix `2(b_i|b_j)/(b_i|b_i)` of a set of positive real roots.
pub fn induced_gcm(
    ambient: &GeneralizedCartanMatrix,
    roots: &[RootVector],
) -> Result<GeneralizedCartanMatrix> {
    let sys = RootSystem::new(ambient)?;
    induced_in(&sys, roots)
}

fn induced_in(sys: &RootSystem, roots: &[RootVector]) -> Result<GeneralizedCartanMatrix> {
    let n = sys.rank();
    for r in roots {
        if r.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.dim(),
            });
        }
        if !r.is_positive() || !sys.is_real_root(r) {
            return Err(Error::NotRealRoot(r.0.clone()));
        }
    }
    let k = roots.len();
    let gram: Vec<Vec<i128>> = roots
        .iter()
        .map(|u| roots.iter().map(|v| sys.inner_scaled(u, v)).collect())
        .collect();
    for i in 0..k {
        for j in i + 1..k {
            if gram[i][j] > 0 {
                return Err(Error::AcutePair { i, j });
            }
        }
    }
    let rows: Vec<Vec<BigRational>> = roots
        .iter()
        .map(|r| {
            r.0.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    if rank(&rows) < k {
        return Err(Error::DependentRoots);
    }
    let mut out = vec![vec![0i64; k]; k];
    for i in 0..k {
        for j in 0..k {
            let num = 2 * gram[i][j];
            if num % gram[i][i] != 0 {
                return Err(Error::NotCrystallographic { i, j });
            }
            out[i][j] = i64::try_from(num / gram[i][i])
                .map_err(|_| Error::Overflow("induced Cartan entry"))?;
        }
    }
    GeneralizedCartanMatrix::new(out)
}

impl Embedding {
    /// Validate the roots and build the embedding. The roots must be
    /// positive real roots of `ambient`, pairwise non-acute, linearly
    /// independent, as many as the rank, with an integral induced matrix.
    pub fn new(ambient: &GeneralizedCartanMatrix, roots: Vec<RootVector>) -> Result<Self> {
        let system = RootSystem::new(ambient)?;
        Embedding::with_system(system, roots)
    }

    fn with_system(system: RootSystem, roots: Vec<RootVector>) -> Result<Self> {
        let n = system.rank();
        if roots.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: roots.len(),
            });
        }
        let induced = induced_in(&system, &roots)?;
        let sub_system = RootSystem::new(&induced)?;
        let basis: Vec<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
        let lattice = Lattice::new(&basis)?;
        let rows: Vec<Vec<BigRational>> = basis
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| BigRational::from_integer(x.into()))
                    .collect()
            })
            .collect();
        let inverse = inverse(&rows).ok_or(Error::DependentRoots)?;
        Ok(Embedding {
            system,
            roots,
            induced,
            sub_system,
            lattice,
            inverse,
        })
    }

    /// The identity embedding of `a` in itself.
    pub fn identity(a: &GeneralizedCartanMatrix) -> Result<Self> {
        let n = a.rank();
        Embedding::new(a, (0..n).map(|i| RootVector::simple(n, i)).collect())
    }

    pub fn ambient(&self) -> &GeneralizedCartanMatrix {
        self.system.cartan()
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn induced(&self) -> &GeneralizedCartanMatrix {
        &self.induced
    }

    pub fn sub_system(&self) -> &RootSystem {
        &self.sub_system
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// `[L : L1]`.
    pub fn lattice_index(&self) -> u64 {
        self.lattice
            .index_in(&Lattice::standard(self.rank()))
            .ok()
            .and_then(|x| x.to_u64())
            .expect("sublattice of Z^n with machine-size index")
    }

    /// Coordinates of an ambient vector in the subsystem's simple roots, if
    /// it lies in `L1`.
    pub fn to_sub(&self, v: &RootVector) -> Option<RootVector> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = <BigRational as Zero>::zero();
            for (i, &x) in v.0.iter().enumerate() {
                if x != 0 {
                    acc += &self.inverse[i][j] * BigRational::from_integer(x.into());
                }
            }
            if !acc.is_integer() {
                return None;
            }
            out.push(acc.to_integer().to_i64()?);
        }
        Some(RootVector(out))
    }

    /// Ambient coordinates of `sum c_i b_i`.
    pub fn to_ambient(&self, c: &RootVector) -> Result<RootVector> {
        let n = self.rank();
        let mut out = RootVector(vec![0; n]);
        for (i, &x) in c.0.iter().enumerate() {
            if x != 0 {
                out = out.checked_axpy(x, &self.roots[i])?;
            }
        }
        Ok(out)
    }

    /// Real root of the subsystem (given in ambient coordinates).
    pub fn is_sub_real_root(&self, v: &RootVector) -> bool {
        self.to_sub(v)
            .is_some_and(|c| self.sub_system.is_real_root(&c))
    }

    /// All but one of the subsystem's simple roots are ambient simple roots.
    pub fn vertex_stabilizer_property(&self) -> bool {
        let simple = self.roots.iter().filter(|r| r.height() == 1).count();
        simple + 1 >= self.rank()
    }

    /// The same subgroup seen in the dual root system: coroots
    /// `b^vee = sum c_i (a_i|a_i)/(b|b) a_i^vee`.
    pub fn dual(&self) -> Result<Embedding> {
        let n = self.rank();
        let mut roots = Vec::with_capacity(n);
        for b in &self.roots {
            let bb = self.system.inner_scaled(b, b);
            let mut c = Vec::with_capacity(n);
            for (i, &x) in b.0.iter().enumerate() {
                let num = x as i128 * self.system.simple_norm_scaled(i) as i128;
                if num % bb != 0 {
                    return Err(Error::NonIntegralReflection { num, den: bb });
                }
                c.push(i64::try_from(num / bb).map_err(|_| Error::Overflow("coroot"))?);
            }
            roots.push(RootVector(c));
        }
        Embedding::new(&self.ambient().dual(), roots)
    }

    pub fn max_root_height(&self) -> u64 {
        self.roots
            .iter()
            .map(|r| r.height() as u64)
            .max()
            .unwrap_or(0)
    }
}

/// Roots for the doubling of the fundamental simplex across facet `i`:
/// `a_j - a_ij a_i` replaces `a_i`.
pub fn lemma2_subsystem(
    ambient: &GeneralizedCartanMatrix,
    i: usize,
    j: usize,
) -> Result<Embedding> {
    let n = ambient.rank();
    let fail = |reason: &str| Error::NotDoublingFacet {
        i,
        j,
        reason: reason.to_string(),
    };
    if i >= n || j >= n || i == j {
        return Err(fail("indices out of range or equal"));
    }
    if ambient.get(i, j) == 0 {
        return Err(fail("nodes are not joined"));
    }
    if (0..n).any(|k| k != i && k != j && ambient.get(i, k) != 0) {
        return Err(fail("node i has more than one neighbour"));
    }
    let (aij, aji) = (ambient.get(i, j), ambient.get(j, i));
    if aji.abs() > aij.abs() {
        return Err(fail("|a_ji| > |a_ij|; use the transposed matrix"));
    }
    if aij.abs() < 2 {
        return Err(fail(
            "simple edge: the doubled simplex is not a Coxeter simplex",
        ));
    }
    let mut roots: Vec<RootVector> = (0..n).map(|k| RootVector::simple(n, k)).collect();
    roots[i] = RootVector::simple(n, j).checked_axpy(-aij, &RootVector::simple(n, i))?;
    Embedding::new(ambient, roots)
}

/// Compose `D2 ⊂ D1` (inner) with `D1 ⊂ D` (outer).
pub fn chain_compose(inner: &Embedding, outer: &Embedding) -> Result<Embedding> {
    if inner.ambient() != outer.induced() {
        return Err(Error::MismatchedChain);
    }
    let roots = inner
        .roots
        .iter()
        .map(|c| outer.to_ambient(c))
        .collect::<Result<Vec<_>>>()?;
    Embedding::with_system(outer.system.clone(), roots)
}

/// Copies of the fundamental simplex `F` inside `F1`. Each copy `uF` is
/// recorded by the tuple `u^{-1} b` of subsystem roots seen from it; the
/// first entry is `F` itself.
#[derive(Debug, Clone)]
pub struct TileWalk {
    pub tiles: Vec<Vec<RootVector>>,
    /// A real root of the ambient system lying in `L1` whose mirror crosses
    /// the interior of `F1`, if one exists.
    pub interior_lattice_root: Option<RootVector>,
    /// Positive roots of the mirrors crossing the interior of `F1`, sorted.
    pub interior_walls: Vec<RootVector>,
}

impl TileWalk {
    /// `[W : W1]`, the number of tiles.
    pub fn index(&self) -> usize {
        self.tiles.len()
    }

    /// Exact form of `D1 = D ∩ L1`.
    pub fn star_holds(&self) -> bool {
        self.interior_lattice_root.is_none()
    }
}

/// Walk across the interior walls of `F1` until every copy of `F` inside it
/// has been visited.
pub fn tile_walk(e: &Embedding, max_tiles: usize) -> Result<TileWalk> {
    let sys = &e.system;
    let n = e.rank();
    let start: Vec<RootVector> = e.roots.clone();
    let frame0: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    let mut seen: HashMap<Vec<RootVector>, usize> = HashMap::new();
    seen.insert(start.clone(), 0);
    let mut tiles = vec![start.clone()];
    let mut queue = VecDeque::from([(start, frame0)]);
    let mut witness: Option<RootVector> = None;
    let mut interior: HashSet<RootVector> = HashSet::new();
    while let Some((state, frame)) = queue.pop_front() {
        let walls: HashSet<&RootVector> = state.iter().collect();
        for k in 0..n {
            if walls.contains(&RootVector::simple(n, k)) {
                continue;
            }
            let wall_root = &frame[k];
            let positive = if wall_root.is_negative() {
                wall_root.neg()
            } else {
                wall_root.clone()
            };
            if witness.is_none() && e.lattice.contains(&positive.0) {
                witness = Some(positive.clone());
            }
            interior.insert(positive);
            let next = state
                .iter()
                .map(|r| sys.reflect_simple(r, k))
                .collect::<Result<Vec<_>>>()?;
            if seen.contains_key(&next) {
                continue;
            }
            if tiles.len() >= max_tiles {
                return Err(Error::Exceeded(max_tiles));
            }
            let next_frame = frame
                .iter()
                .enumerate()
                .map(|(j, f)| f.checked_axpy(-sys.cartan().get(k, j), &frame[k]))
                .collect::<Result<Vec<_>>>()?;
            seen.insert(next.clone(), tiles.len());
            tiles.push(next.clone());
            queue.push_back((next, next_frame));
        }
    }
    let mut interior_walls: Vec<RootVector> = interior.into_iter().collect();
    interior_walls.sort();
    Ok(TileWalk {
        tiles,
        interior_lattice_root: witness,
        interior_walls,
    })
}

/// Outcome of the bounded check of condition (*).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StarStatus {
    /// No violation among ambient roots of height at most the bound.
    HoldsUpTo { height: u64 },
    /// `alpha, beta` are real roots of the subsystem, `sum` is a root of
    /// the ambient system but not of the subsystem.
    FailsWithWitness {
        alpha: RootVector,
        beta: RootVector,
        sum: RootVector,
    },
    /// A real root of the ambient system in `L1` that is not a root of the
    /// subsystem, for which no decomposing pair was found within the bound.
    FailsLattice { root: RootVector },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarVerdict {
    pub status: StarStatus,
    pub checked_height: u64,
}

impl StarVerdict {
    pub fn holds(&self) -> bool {
        matches!(self.status, StarStatus::HoldsUpTo { .. })
    }
}

/// Real roots of the subsystem among the positive ambient real roots up to
/// height `h`, and the lattice violations (ambient real roots in `L1` that
/// are not subsystem roots), both in ambient coordinates.
pub fn bounded_lattice_split(e: &Embedding, h: u64) -> Result<(Vec<RootVector>, Vec<RootVector>)> {
    let mut inside = vec![];
    let mut violations = vec![];
    for v in e.system.real_roots_up_to_height(h)? {
        if let Some(c) = e.to_sub(&v) {
            if e.sub_system.is_real_root(&c) {
                inside.push(v);
            } else {
                violations.push(v);
            }
        }
    }
    Ok((inside, violations))
}

/// Search `alpha` among `±sub_roots` with `v - alpha` a real subsystem root.
fn decompose(
    e: &Embedding,
    v: &RootVector,
    sub_roots: &[RootVector],
) -> Option<(RootVector, RootVector)> {
    for a in sub_roots.iter().flat_map(|r| [r.clone(), r.neg()]) {
        let Ok(b) = v.checked_sub(&a) else { continue };
        if b.is_zero() {
            continue;
        }
        let bb = e.system.inner_scaled(&b, &b);
        if bb <= 0 {
            continue;
        }
        if e.is_sub_real_root(&b) {
            return Some((a, b));
        }
    }
    None
}

/// Check condition (*) on ambient real roots of height at most `h`, through
/// `D1 = D ∩ L1`; violations are turned into summing pairs when possible.
pub fn check_star_bounded(e: &Embedding, h: u64) -> Result<StarVerdict> {
    if !e.induced.is_hyperbolic() {
        return Err(Error::NotHyperbolicSubtype);
    }
    let needed = e.max_root_height();
    if h < needed {
        return Err(Error::HeightBoundTooSmall { bound: h, needed });
    }
    let (inside, violations) = bounded_lattice_split(e, h)?;
    let Some(first) = violations.first() else {
        return Ok(StarVerdict {
            status: StarStatus::HoldsUpTo { height: h },
            checked_height: h,
        });
    };
    for v in &violations {
        if let Some((alpha, beta)) = decompose(e, v, &inside) {
            return Ok(StarVerdict {
                status: StarStatus::FailsWithWitness {
                    alpha,
                    beta,
                    sum: v.clone(),
                },
                checked_height: h,
            });
        }
    }
    Ok(StarVerdict {
        status: StarStatus::FailsLattice {
            root: first.clone(),
        },
        checked_height: h,
    })
}

/// Condition (*) for real roots checked directly on pairs: subsystem real
/// roots `alpha, beta` with ambient heights in `[-h, h]` whose sum is an
/// ambient real root outside the subsystem.
pub fn sum_condition_violation(e: &Embedding, h: u64) -> Result<Option<(RootVector, RootVector)>> {
    let (inside, _) = bounded_lattice_split(e, h)?;
    let norms = e.system.simple_norms_scaled();
    let signed: Vec<RootVector> = inside.iter().flat_map(|r| [r.clone(), r.neg()]).collect();
    for (x, a) in signed.iter().enumerate() {
        for b in &signed[x + 1..] {
            let s = a.checked_add(b)?;
            if s.is_zero() || !norms.contains(&(e.system.inner_scaled(&s, &s) as i64)) {
                continue;
            }
            if e.system.is_real_root(&s) && !e.is_sub_real_root(&s) {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// Re-check a failure witness from scratch.
pub fn verify_witness(
    e: &Embedding,
    alpha: &RootVector,
    beta: &RootVector,
    sum: &RootVector,
) -> bool {
    alpha.checked_add(beta).ok().as_ref() == Some(sum)
        && e.is_sub_real_root(alpha)
        && e.is_sub_real_root(beta)
        && e.system.is_root(sum)
        && !e.is_sub_real_root(sum)
        && !e
            .to_sub(sum)
            .is_some_and(|c| e.sub_system.is_imaginary_root(&c))
}
