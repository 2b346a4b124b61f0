//! Maximal rank hyperbolic subsystems: derivation of the decomposition
//! graph of a root system, catalog records, verification and the Hasse
//! graph.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coset::{coxeter_presentation, todd_coxeter};
use crate::diagram::{CoxeterDiagram, GeneralizedCartanMatrix};
use crate::dynkin::enumerate_dynkin;
use crate::error::{Error, Result};
use crate::frames::{
    apply_move, frame_diagram, hyperbolic_diagrams, is_frame_mirror, isomorphisms, permuted_key,
    placement_key, tile_states, FrameBasis,
};
use crate::roots::{RootSystem, RootVector};
use crate::subsystem::{check_star_bounded, tile_walk, Embedding};

pub const DEFAULT_MAX_TILES: usize = 200_000;

/// A simplex `F1` containing the fundamental simplex, up to the Weyl group.
#[derive(Debug, Clone)]
pub struct Placement {
    pub frame: Vec<RootVector>,
    pub states: Vec<Vec<RootVector>>,
    pub key: Vec<RootVector>,
    pub diagram: CoxeterDiagram,
    /// Present when the frame induces an integral Cartan matrix.
    pub embedding: Option<Embedding>,
    /// `D1 = D ∩ L1`, when crystallographic.
    pub star: Option<bool>,
    /// Positive roots of the mirrors crossing the interior, when
    /// crystallographic.
    pub interior_walls: Vec<RootVector>,
}

impl Placement {
    pub fn index(&self) -> usize {
        self.states.len()
    }

    /// The tile state with the smallest roots; with `shared`, first
    /// maximize the walls shared with the fundamental simplex.
    pub fn representative(&self, shared: bool) -> &[RootVector] {
        self.states
            .iter()
            .min_by_key(|s| {
                let hs: Vec<i64> = s.iter().map(|r| r.height()).collect();
                let common = if shared {
                    hs.iter().filter(|&&h| h == 1).count()
                } else {
                    0
                };
                (
                    std::cmp::Reverse(common),
                    hs.iter().copied().max(),
                    hs.iter().sum::<i64>(),
                    (*s).clone(),
                )
            })
            .expect("at least one tile")
    }
}

/// A vertex-type move from one placement to another.
#[derive(Debug, Clone)]
pub struct Link {
    pub from: usize,
    pub to: usize,
    /// The placement of `to` reached by the move.
    pub frame: Vec<RootVector>,
    /// The reflection group of `to` lies in that of `from`.
    pub contained: bool,
    /// Condition (*) for the link, when both ends are crystallographic and
    /// the link is a containment.
    pub star: Option<bool>,
}

/// Every simplex tiled by the fundamental simplex of one root system,
/// with the vertex-type moves between them. Node 0 is the fundamental
/// simplex itself.
#[derive(Debug, Clone)]
pub struct DecompositionGraph {
    pub cartan: GeneralizedCartanMatrix,
    pub nodes: Vec<Placement>,
    pub links: Vec<Link>,
    /// The group of the node is a maximal reflection subgroup of `W`.
    pub minimal: Vec<bool>,
    /// The group of `to` is a maximal reflection subgroup of that of
    /// `from`; meaningful for containments.
    pub link_minimal: Vec<bool>,
}

fn placement(sys: &RootSystem, frame: Vec<RootVector>, max_tiles: usize) -> Result<Placement> {
    let states = tile_states(sys, &frame, max_tiles)?;
    let key = placement_key(&states);
    let diagram = frame_diagram(sys, &frame)
        .ok_or_else(|| Error::InvalidMatrix("frame is not a Coxeter simplex".into()))?;
    let embedding = Embedding::new(sys.cartan(), frame.clone()).ok();
    let (star, interior_walls) = match &embedding {
        Some(e) => {
            let walk = tile_walk(e, max_tiles)?;
            (Some(walk.star_holds()), walk.interior_walls)
        }
        None => (None, vec![]),
    };
    Ok(Placement {
        frame,
        states,
        key,
        diagram,
        embedding,
        star,
        interior_walls,
    })
}

/// Closure of the fundamental simplex under vertex-type moves.
pub fn decomposition_graph(
    a: &GeneralizedCartanMatrix,
    max_tiles: usize,
) -> Result<DecompositionGraph> {
    let sys = RootSystem::new(a)?;
    let n = a.rank();
    let identity: Vec<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
    let mut nodes = vec![placement(&sys, identity, max_tiles)?];
    let mut by_key: HashMap<Vec<RootVector>, usize> = HashMap::from([(nodes[0].key.clone(), 0)]);
    let mut links = vec![];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let frame = nodes[x].frame.clone();
        let basis = FrameBasis::new(&frame).ok_or(Error::DependentRoots)?;
        for mv in crate::frames::vertex_moves(&sys, &frame)? {
            let moved = apply_move(&frame, &mv);
            let contained = is_frame_mirror(&sys, &frame, &basis, &mv.root);
            let states = tile_states(&sys, &moved, max_tiles)?;
            let key = placement_key(&states);
            let y = match by_key.get(&key) {
                Some(&y) => y,
                None => {
                    let p = placement(&sys, moved.clone(), max_tiles)?;
                    nodes.push(p);
                    let y = nodes.len() - 1;
                    by_key.insert(key, y);
                    queue.push_back(y);
                    y
                }
            };
            if y == x {
                continue;
            }
            let star = match (&nodes[x].embedding, contained) {
                (Some(ex), true) if nodes[y].embedding.is_some() => {
                    let coords = moved
                        .iter()
                        .map(|r| basis.int_coords(r))
                        .collect::<Option<Vec<_>>>();
                    match coords.map(|c| Embedding::new(ex.induced(), c)) {
                        Some(Ok(link)) => Some(tile_walk(&link, max_tiles)?.star_holds()),
                        _ => None,
                    }
                }
                _ => None,
            };
            links.push(Link {
                from: x,
                to: y,
                frame: moved,
                contained,
                star,
            });
        }
    }
    let mut g = DecompositionGraph {
        cartan: a.clone(),
        nodes,
        links,
        minimal: vec![],
        link_minimal: vec![],
    };
    let pres = coxeter_presentation(&a.coxeter_diagram()?);
    let node_below_simplex: Vec<bool> = (0..g.nodes.len())
        .map(|y| y != 0 && g.contained_into(y).all(|l| l.from == 0))
        .collect();
    let mut minimal = vec![false; g.nodes.len()];
    for y in 1..g.nodes.len() {
        minimal[y] = node_below_simplex[y]
            && match &g.nodes[y].embedding {
                Some(_) => is_maximal(
                    &sys,
                    &pres,
                    None,
                    1,
                    &g.nodes[y].frame,
                    &g.nodes[y].interior_walls,
                )?,
                None => true,
            };
    }
    let mut link_minimal = vec![false; g.links.len()];
    for (i, l) in g.links.iter().enumerate() {
        if !l.contained || !g.is_simplex_minimal_link(l) {
            continue;
        }
        link_minimal[i] = match Embedding::new(a, l.frame.clone()) {
            Ok(e) => {
                let walls = tile_walk(&e, max_tiles)?.interior_walls;
                let x = &g.nodes[l.from];
                is_maximal(&sys, &pres, Some(&x.frame), x.index(), &l.frame, &walls)?
            }
            Err(_) => true,
        };
    }
    g.minimal = minimal;
    g.link_minimal = link_minimal;
    Ok(g)
}

/// No reflection group lies strictly between the group of `lower` and
/// that of `upper` (the whole group when `None`, of index
/// `upper_index`). A group in between contains a reflection of the upper
/// group whose mirror crosses the interior of the lower simplex, so it
/// suffices to try each of `interior_walls`.
fn is_maximal(
    sys: &RootSystem,
    pres: &crate::coset::CoxeterPresentation,
    upper: Option<&[RootVector]>,
    upper_index: usize,
    lower: &[RootVector],
    interior_walls: &[RootVector],
) -> Result<bool> {
    let basis = upper.map(|f| (f, FrameBasis::new(f)));
    let mut words = lower
        .iter()
        .map(|r| sys.reflection_word(r))
        .collect::<Result<Vec<_>>>()?;
    for r in interior_walls {
        if let Some((f, Some(b))) = &basis {
            if !is_frame_mirror(sys, f, b, r) {
                continue;
            }
        }
        words.push(sys.reflection_word(r)?);
        let index = todd_coxeter(pres, &words, crate::coset::DEFAULT_MAX_COSETS)?;
        words.pop();
        if index != upper_index {
            return Ok(false);
        }
    }
    Ok(true)
}

impl DecompositionGraph {
    fn contained_into(&self, y: usize) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(move |l| l.to == y && l.contained)
    }

    /// Nodes whose group lies in that of `x` (including `x`).
    pub fn below(&self, x: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[x] = true;
        let mut stack = vec![x];
        while let Some(u) = stack.pop() {
            for l in &self.links {
                if l.from == u && l.contained && !seen[l.to] {
                    seen[l.to] = true;
                    stack.push(l.to);
                }
            }
        }
        seen
    }

    /// No simplex group strictly between the ambient group and `y`.
    fn is_simplex_minimal_link(&self, link: &Link) -> bool {
        let below = self.below(link.from);
        self.contained_into(link.to)
            .all(|l| l.from == link.from || !below[l.from])
    }

    /// The group of `y` is a maximal reflection subgroup.
    pub fn is_minimal(&self, y: usize) -> bool {
        self.minimal[y]
    }

    /// Nodes reachable from the fundamental simplex by a chain of minimal
    /// links between crystallographic placements, each satisfying (*).
    pub fn all_star_reachable(&self) -> Vec<bool> {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&i| self.nodes[i].index());
        let mut good = vec![false; self.nodes.len()];
        good[0] = true;
        let minimal = &self.link_minimal;
        for &y in &order[1..] {
            good[y] = self
                .links
                .iter()
                .zip(minimal)
                .any(|(l, &m)| l.to == y && m && l.star == Some(true) && good[l.from]);
        }
        good
    }

    /// Least placement key over the diagram automorphisms of the ambient
    /// matrix.
    pub fn pair_key(&self, y: usize) -> Vec<RootVector> {
        self.cartan
            .automorphisms()
            .iter()
            .map(|p| permuted_key(&self.nodes[y].states, p))
            .min()
            .unwrap_or_else(|| self.nodes[y].key.clone())
    }
}

/// Edge annotation for condition (*).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarAnnotation {
    Holds,
    Fails,
    /// A non-minimal pair satisfying (*) although some chain of minimal
    /// intermediate steps has a step that does not.
    HoldsViaNonminimal,
}

impl StarAnnotation {
    pub fn holds(self) -> bool {
        self != StarAnnotation::Fails
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StarAnnotation::Holds => "holds",
            StarAnnotation::Fails => "fails",
            StarAnnotation::HoldsViaNonminimal => "holds_via_nonminimal",
        }
    }
}

/// One edge of the classification: a subsystem given by its simple roots
/// in the ambient simple-root basis, with expected invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionRecord {
    pub ambient: GeneralizedCartanMatrix,
    pub sub_roots: Vec<RootVector>,
    pub group_index: u64,
    pub lattice_index: u64,
    pub star: StarAnnotation,
    pub minimal: bool,
    pub provenance: String,
}

impl DecompositionRecord {
    pub fn embedding(&self) -> Result<Embedding> {
        Embedding::new(&self.ambient, self.sub_roots.clone())
    }
}

/// Direction of the mirror of `v` independent of root lengths: entry `i`
/// is `sign(c_i) c_i^2 |a_i|^2 / |v|^2` for `v = sum c_i a_i`. Root systems
/// sharing a Coxeter diagram give equal keys exactly for equal mirrors.
pub fn mirror_key(sys: &RootSystem, v: &RootVector) -> Vec<BigRational> {
    let norm = BigInt::from(sys.inner_scaled(v, v));
    v.0.iter()
        .enumerate()
        .map(|(i, &c)| {
            let sq = BigInt::from(c) * BigInt::from(c) * BigInt::from(sys.simple_norm_scaled(i));
            let q = BigRational::new(sq, norm.clone());
            if c < 0 {
                -q
            } else {
                q
            }
        })
        .collect()
}

/// Key of a placement up to the Coxeter group and the automorphisms of
/// its diagram, independent of root lengths.
fn geometric_key(
    sys: &RootSystem,
    states: &[Vec<RootVector>],
    auts: &[Vec<usize>],
) -> Vec<Vec<BigRational>> {
    let keyed: Vec<Vec<Vec<BigRational>>> = states
        .iter()
        .map(|s| s.iter().map(|r| mirror_key(sys, r)).collect())
        .collect();
    auts.iter()
        .flat_map(|perm| {
            keyed.iter().map(move |s| {
                let mut moved: Vec<Vec<BigRational>> = s
                    .iter()
                    .map(|k| {
                        let mut out = k.clone();
                        for (old, &new) in perm.iter().enumerate() {
                            out[new] = k[old].clone();
                        }
                        out
                    })
                    .collect();
                moved.sort();
                moved
            })
        })
        .min()
        .unwrap_or_default()
}

/// A decomposition of one Coxeter simplex into copies of the fundamental
/// simplex, seen from one root system on it.
#[derive(Debug, Clone)]
struct Sighting {
    diagram: CoxeterDiagram,
    key: Vec<Vec<BigRational>>,
    index: usize,
    minimal: bool,
    all_star_chain: bool,
    subsystem: bool,
}

/// A decomposition `F1` of copies of `F`, up to the Coxeter group of `F`
/// and the symmetries of its diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub diagram: CoxeterDiagram,
    pub index: usize,
    pub minimal: bool,
    /// Some root system on `F` reaches the subsystem of `F1` by minimal
    /// steps that each satisfy (*).
    pub all_star_chain: bool,
    /// Some root system on `F` has a root subsystem on `F1`.
    pub subsystem: bool,
}

struct SystemAnalysis {
    records: Vec<DecompositionRecord>,
    sightings: Vec<Sighting>,
}

/// Records contributed by one root system: minimal pairs, and non-minimal
/// pairs satisfying (*) that no all-(*) chain of minimal steps explains.
/// Provenance is left empty.
pub fn records_for(
    a: &GeneralizedCartanMatrix,
    max_tiles: usize,
) -> Result<Vec<DecompositionRecord>> {
    Ok(analyse_system(a, max_tiles)?.records)
}

fn analyse_system(a: &GeneralizedCartanMatrix, max_tiles: usize) -> Result<SystemAnalysis> {
    let g = decomposition_graph(a, max_tiles)?;
    let sys = RootSystem::new(a)?;
    let diagram = a.coxeter_diagram()?;
    let auts = isomorphisms(&diagram, &diagram);
    let good = g.all_star_reachable();
    let mut seen = BTreeMap::new();
    let mut sightings = vec![];
    for (y, p) in g.nodes.iter().enumerate().skip(1) {
        let minimal = g.is_minimal(y);
        sightings.push(Sighting {
            diagram: diagram.clone(),
            key: geometric_key(&sys, &p.states, &auts),
            index: p.index(),
            minimal,
            all_star_chain: good[y],
            subsystem: p.star == Some(true),
        });
        let (Some(_), Some(star)) = (&p.embedding, p.star) else {
            continue;
        };
        let annotation = if minimal {
            if star {
                StarAnnotation::Holds
            } else {
                StarAnnotation::Fails
            }
        } else if star && !good[y] {
            StarAnnotation::HoldsViaNonminimal
        } else {
            continue;
        };
        let key = g.pair_key(y);
        if seen.contains_key(&key) {
            continue;
        }
        let frame = p.representative(minimal).to_vec();
        let e = Embedding::new(a, frame.clone())?;
        seen.insert(
            key,
            DecompositionRecord {
                ambient: a.clone(),
                sub_roots: frame,
                group_index: p.index() as u64,
                lattice_index: e.lattice_index(),
                star: annotation,
                minimal,
                provenance: String::new(),
            },
        );
    }
    let mut records: Vec<DecompositionRecord> = seen.into_values().collect();
    records.sort_by(|x, y| (x.group_index, &x.sub_roots).cmp(&(y.group_index, &y.sub_roots)));
    Ok(SystemAnalysis { records, sightings })
}

/// Some mirror of the ambient group splits a dihedral angle of the
/// simplex of `frame`: a real root `(a b_i + b b_j) / c` with `ab < 0`.
pub fn has_decomposed_angle(sys: &RootSystem, frame: &[RootVector]) -> bool {
    let n = frame.len();
    for i in 0..n {
        for j in i + 1..n {
            for c in 1..=8i64 {
                for a in 1..=8i64 {
                    for b in -8..=-1i64 {
                        for (x, y) in [(a, b), (b, a)] {
                            let num: Vec<i64> = (0..frame[i].dim())
                                .map(|t| x * frame[i].0[t] + y * frame[j].0[t])
                                .collect();
                            if num.iter().any(|v| v % c != 0) {
                                continue;
                            }
                            let v = RootVector(num.iter().map(|v| v / c).collect());
                            let v = if v.is_negative() { v.neg() } else { v };
                            if v.is_positive() && sys.is_real_root(&v) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// Every symmetrizable Cartan matrix of hyperbolic type up to rank
/// `max_rank`, one per isomorphism class, grouped by Coxeter diagram.
pub fn hyperbolic_root_systems(max_rank: usize) -> Vec<GeneralizedCartanMatrix> {
    let mut out = vec![];
    for rank in 3..=max_rank {
        for d in hyperbolic_diagrams(rank) {
            out.extend(enumerate_dynkin(d, true));
        }
    }
    out
}

fn figure_tag(a: &GeneralizedCartanMatrix) -> String {
    let rank = a.rank();
    if rank == 3 {
        let compact = a.coxeter_diagram().is_ok_and(|d| d.is_compact_hyperbolic());
        return if compact {
            "Fig 1".into()
        } else {
            "Fig 2".into()
        };
    }
    format!("Fig {}", rank - 1)
}

/// Result of [`classify`].
#[derive(Debug, Clone)]
pub struct Classification {
    pub records: Vec<DecompositionRecord>,
    /// Every decomposition of a hyperbolic simplex into copies of another,
    /// sorted by rank and index.
    pub decompositions: Vec<Decomposition>,
}

impl Classification {
    /// Non-minimal decompositions with no chain of root subsystems through
    /// minimal steps, for any choice of root lengths.
    pub fn exceptional(&self) -> impl Iterator<Item = &Decomposition> {
        self.decompositions
            .iter()
            .filter(|d| !d.minimal && !d.all_star_chain)
    }
}

/// Derive the classification for ranks `3..=max_rank`. Every root system
/// is analysed independently and the records collected with provenance
/// tags; the minimal pairs without decomposed dihedral angles get the tags
/// `Table 1 row r`, ordered by rank and group index.
pub fn classify(max_rank: usize, max_tiles: usize) -> Result<Classification> {
    let systems = hyperbolic_root_systems(max_rank);
    let per: Vec<Result<SystemAnalysis>> = systems
        .par_iter()
        .map(|a| analyse_system(a, max_tiles))
        .collect();
    let mut all = vec![];
    let mut merged: BTreeMap<(usize, CoxeterDiagram, Vec<Vec<BigRational>>), Decomposition> =
        BTreeMap::new();
    for r in per {
        let r = r?;
        all.extend(r.records);
        for s in r.sightings {
            let d = merged
                .entry((s.diagram.nodes(), s.diagram.clone(), s.key))
                .or_insert(Decomposition {
                    diagram: s.diagram,
                    index: s.index,
                    minimal: s.minimal,
                    all_star_chain: false,
                    subsystem: false,
                });
            d.all_star_chain |= s.all_star_chain;
            d.subsystem |= s.subsystem;
        }
    }
    let mut decompositions: Vec<Decomposition> = merged.into_values().collect();
    decompositions.sort_by_key(|d| (d.diagram.nodes(), d.index));
    let mut table: Vec<usize> = vec![];
    for (i, r) in all.iter_mut().enumerate() {
        let sys = RootSystem::new(&r.ambient)?;
        if r.minimal && !has_decomposed_angle(&sys, &r.sub_roots) {
            table.push(i);
        } else {
            r.provenance = figure_tag(&r.ambient);
        }
    }
    table.sort_by_key(|&i| (all[i].ambient.rank(), all[i].group_index));
    for (row, &i) in table.iter().enumerate() {
        all[i].provenance = format!("Table 1 row {}", row + 1);
    }
    Ok(Classification {
        records: all,
        decompositions,
    })
}

/// The records of [`classify`].
pub fn derive_catalog(max_rank: usize, max_tiles: usize) -> Result<Vec<DecompositionRecord>> {
    Ok(classify(max_rank, max_tiles)?.records)
}

/// Result of [`find_subsystems`].
#[derive(Debug, Clone)]
pub struct SubsystemSearch {
    /// One embedding per Weyl-equivalence class, ordered by group index
    /// and placement key.
    pub embeddings: Vec<Embedding>,
    /// The search covers every class with a representative whose simple
    /// roots have height at most this bound.
    pub complete_up_to: u64,
}

fn grow(
    sys: &RootSystem,
    pool: &[RootVector],
    adj: &[Vec<bool>],
    size: usize,
    chosen: &mut Vec<usize>,
    start: usize,
    out: &mut Vec<Vec<RootVector>>,
) {
    if chosen.len() == size {
        out.push(chosen.iter().map(|&i| pool[i].clone()).collect());
        return;
    }
    for i in start..pool.len() {
        if !chosen.iter().all(|&j| adj[i][j]) {
            continue;
        }
        chosen.push(i);
        let roots: Vec<RootVector> = chosen.iter().map(|&i| pool[i].clone()).collect();
        if frame_diagram(sys, &roots).is_some_and(|d| d.is_finite_or_affine()) {
            grow(sys, pool, adj, size, chosen, i + 1, out);
        }
        chosen.pop();
    }
}

/// Maximal rank hyperbolic subsystems with simple roots of height at most
/// `height`, up to the Weyl group.
///
/// Every class has a representative `F1` containing the fundamental
/// simplex `F` and sharing a vertex `v_k` with it; the walls of `F1`
/// through `v_k` are then mirrors of the parabolic subsystem at `v_k`. The
/// search picks those walls among positive roots of the parabolic and
/// solves for the last one.
pub fn find_subsystems(
    a: &GeneralizedCartanMatrix,
    height: u64,
    max_tiles: usize,
) -> Result<SubsystemSearch> {
    let sys = RootSystem::new(a)?;
    let n = a.rank();
    let positive: Vec<RootVector> = sys
        .real_roots_up_to_height(height)?
        .into_iter()
        .filter(|r| r.is_positive())
        .collect();
    let frames: Vec<Vec<RootVector>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let pool: Vec<RootVector> = positive.iter().filter(|r| r.0[k] == 0).cloned().collect();
            let adj: Vec<Vec<bool>> = pool
                .iter()
                .map(|u| {
                    pool.iter()
                        .map(|v| u != v && crate::frames::pair_label(&sys, u, v).is_some())
                        .collect()
                })
                .collect();
            let mut partials = vec![];
            grow(&sys, &pool, &adj, n - 1, &mut vec![], 0, &mut partials);
            let mut out = vec![];
            for partial in partials {
                let Some(sub) = frame_diagram(&sys, &partial) else {
                    continue;
                };
                let Some(solver) = crate::frames::Completion::new(&sys, &partial) else {
                    continue;
                };
                for labels in crate::frames::hyperbolic_extensions(&sub) {
                    for x in crate::frames::completions(&sys, &partial, &solver, &labels) {
                        if x.is_positive() && x.height() as u64 <= height && sys.is_real_root(&x) {
                            let mut f = partial.clone();
                            f.push(x);
                            out.push(f);
                        }
                    }
                }
            }
            out
        })
        .flatten()
        .collect();
    let mut classes: BTreeMap<(usize, Vec<RootVector>), Embedding> = BTreeMap::new();
    for f in frames {
        let Ok(e) = Embedding::new(a, f) else {
            continue;
        };
        if !e.induced().is_hyperbolic() {
            continue;
        }
        let states = tile_states(&sys, e.roots(), max_tiles)?;
        classes
            .entry((states.len(), placement_key(&states)))
            .or_insert(e);
    }
    Ok(SubsystemSearch {
        embeddings: classes.into_values().collect(),
        complete_up_to: height,
    })
}

/// Outcome of one recomputed field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldCheck {
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub provenance: String,
    pub checks: Vec<FieldCheck>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub height: u64,
    pub max_cosets: usize,
    pub max_tiles: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            height: 20,
            max_cosets: crate::coset::DEFAULT_MAX_COSETS,
            max_tiles: DEFAULT_MAX_TILES,
        }
    }
}

fn check(field: &'static str, expected: impl ToString, computed: impl ToString) -> FieldCheck {
    let (e, c) = (expected.to_string(), computed.to_string());
    FieldCheck {
        field,
        ok: e == c,
        expected: e,
        computed: c,
    }
}

/// Index `[W : W1]` by coset enumeration over the reflection words of the
/// sub roots.
pub fn group_index(e: &Embedding, max_cosets: usize) -> Result<usize> {
    let pres = coxeter_presentation(&e.ambient().coxeter_diagram()?);
    let words = e
        .roots()
        .iter()
        .map(|r| e.system().reflection_word(r))
        .collect::<Result<Vec<_>>>()?;
    todd_coxeter(&pres, &words, max_cosets)
}

/// Recompute every field of a record. Errors become mismatches.
pub fn verify_catalog(record: &DecompositionRecord, opts: &VerifyOptions) -> VerifyReport {
    let mut checks = vec![];
    let e = match record.embedding() {
        Ok(e) => e,
        Err(err) => {
            checks.push(check("sub_roots", "valid subsystem", err));
            return VerifyReport {
                provenance: record.provenance.clone(),
                checks,
            };
        }
    };
    checks.push(check(
        "induced",
        "hyperbolic",
        if e.induced().is_hyperbolic() {
            "hyperbolic"
        } else {
            "not hyperbolic"
        },
    ));
    checks.push(check(
        "lattice_index",
        record.lattice_index,
        e.lattice_index(),
    ));
    let gi = match group_index(&e, opts.max_cosets) {
        Ok(i) => i.to_string(),
        Err(err) => err.to_string(),
    };
    checks.push(check("group_index", record.group_index, gi));
    let star = match check_star_bounded(&e, opts.height) {
        Ok(v) => if v.holds() { "holds" } else { "fails" }.to_string(),
        Err(err) => err.to_string(),
    };
    let expected = if record.star.holds() {
        "holds"
    } else {
        "fails"
    };
    checks.push(check("star", expected, star));
    let maximal = tile_walk(&e, opts.max_tiles).and_then(|walk| {
        let pres = coxeter_presentation(&e.ambient().coxeter_diagram()?);
        is_maximal(e.system(), &pres, None, 1, e.roots(), &walk.interior_walls)
    });
    checks.push(check(
        "minimal",
        record.minimal,
        maximal.map_or_else(|err| err.to_string(), |m| m.to_string()),
    ));
    if record.minimal {
        checks.push(check(
            "vertex_stabilizer",
            true,
            e.vertex_stabilizer_property(),
        ));
    }
    VerifyReport {
        provenance: record.provenance.clone(),
        checks,
    }
}

/// Edge style of a Hasse graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeStyle {
    Solid,
    Dashed,
    Dotted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseEdge {
    pub upper: usize,
    pub lower: usize,
    pub style: EdgeStyle,
    pub label: String,
    pub group_index: u64,
    pub lattice_index: u64,
    pub provenance: String,
}

/// Root systems joined by verified records; node 0.. in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HasseGraph {
    pub nodes: Vec<GeneralizedCartanMatrix>,
    pub edges: Vec<HasseEdge>,
}

/// Build the Hasse graph from records; `verified[i]` says whether record
/// `i` passed [`verify_catalog`]. Annotations are recomputed.
pub fn build_hasse(records: &[DecompositionRecord], verified: &[bool]) -> Result<HasseGraph> {
    if let Some(i) = (0..records.len()).find(|&i| !verified.get(i).copied().unwrap_or(false)) {
        return Err(Error::UnverifiedRecord(i));
    }
    let mut ids: BTreeMap<GeneralizedCartanMatrix, usize> = BTreeMap::new();
    let mut raw = vec![];
    for r in records {
        let e = r.embedding()?;
        let upper = r.ambient.canonical();
        let lower = e.induced().canonical();
        let gi = tile_walk(&e, DEFAULT_MAX_TILES)?;
        let star = gi.star_holds();
        let index = gi.index() as u64;
        let lattice = e.lattice_index();
        let style = match (r.minimal, star) {
            (true, true) => EdgeStyle::Solid,
            (true, false) => EdgeStyle::Dashed,
            (false, _) => EdgeStyle::Dotted,
        };
        let label = if r.minimal && star && lattice != 2 {
            format!("{index} ({lattice})")
        } else {
            index.to_string()
        };
        ids.insert(upper.clone(), 0);
        ids.insert(lower.clone(), 0);
        raw.push((
            upper,
            lower,
            style,
            label,
            index,
            lattice,
            r.provenance.clone(),
        ));
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    let nodes: Vec<GeneralizedCartanMatrix> = ids.keys().cloned().collect();
    let mut edges: Vec<HasseEdge> = raw
        .into_iter()
        .map(|(u, l, style, label, gi, li, provenance)| HasseEdge {
            upper: ids[&u],
            lower: ids[&l],
            style,
            label,
            group_index: gi,
            lattice_index: li,
            provenance,
        })
        .collect();
    edges.sort_by(|a, b| {
        (a.upper, a.lower, a.style, &a.label, &a.provenance).cmp(&(
            b.upper,
            b.lower,
            b.style,
            &b.label,
            &b.provenance,
        ))
    });
    edges.dedup();
    let g = HasseGraph { nodes, edges };
    if !g.is_acyclic() {
        return Err(Error::InvalidMatrix("subgroup graph has a cycle".into()));
    }
    Ok(g)
}

impl HasseGraph {
    pub fn is_acyclic(&self) -> bool {
        let n = self.nodes.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            if e.upper == e.lower {
                return false;
            }
            indeg[e.lower] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = stack.pop() {
            done += 1;
            for e in self.edges.iter().filter(|e| e.upper == v) {
                indeg[e.lower] -= 1;
                if indeg[e.lower] == 0 {
                    stack.push(e.lower);
                }
            }
        }
        done == n
    }
}
