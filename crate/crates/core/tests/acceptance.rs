//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use kmroots::classify::{
    build_hasse, classify, group_index, verify_catalog, DecompositionRecord, EdgeStyle,
    VerifyOptions, DEFAULT_MAX_TILES,
};
use kmroots::coset::{coxeter_presentation, todd_coxeter};
use kmroots::diagram::{connected_finite_or_affine, enumerate_hyperbolic_simplex_diagrams};
use kmroots::dynkin::enumerate_dynkin;
use kmroots::io::load_catalog;
use kmroots::lattice::{hnf, Lattice};
use kmroots::roots::{RootSystem, RootVector};
use kmroots::subsystem::{
    bounded_lattice_split, chain_compose, check_star_bounded, lemma2_subsystem,
    sum_condition_violation, tile_walk, verify_witness, Embedding, StarStatus,
};
use kmroots::GeneralizedCartanMatrix;

const CATALOG: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.json");

/// Height bound for the bounded (*) checks.
const H: u64 = 20;
const MAX_COSETS: usize = 1_000_000;
const COSET_TIME_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_TIME_LIMIT: Duration = Duration::from_secs(300);
const ORACLE_TIME_LIMIT: Duration = Duration::from_secs(120);
const CHAINS: usize = 100;
const SEED: u64 = 0x6b6d_726f_6f74;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn catalog() -> Vec<DecompositionRecord> {
    load_catalog(CATALOG).expect("catalog loads")
}

// 1. Table rows: coset index and lattice index.
fn table_rows(records: &[DecompositionRecord]) -> Outcome {
    const EXPECTED: [u64; 6] = [5, 12, 10, 20, 272, 527];
    let mut rows: Vec<(usize, &DecompositionRecord)> = records
        .iter()
        .filter_map(|r| {
            let row = r.provenance.strip_prefix("Table 1 row ")?.parse().ok()?;
            Some((row, r))
        })
        .collect();
    rows.sort_by_key(|&(row, _)| row);
    if rows.len() != EXPECTED.len() {
        return outcome(
            false,
            format!("{} table rows in catalog, expected 6", rows.len()),
        );
    }
    let mut pass = true;
    let mut parts = vec![];
    for ((row, r), want) in rows.iter().zip(EXPECTED) {
        let e = r.embedding().expect("valid record");
        let t = Instant::now();
        let gi = group_index(&e, MAX_COSETS);
        let took = t.elapsed();
        let li = e.lattice_index();
        let ok =
            gi.as_ref().is_ok_and(|&g| g as u64 == want) && took <= COSET_TIME_LIMIT && li == 2;
        pass &= ok;
        let gi = gi.map_or_else(|e| e.to_string(), |g| g.to_string());
        parts.push(format!(
            "row {row}: index {gi} (want {want}, {:.2}s), lattice {li} (want 2){}",
            took.as_secs_f64(),
            if ok { "" } else { " <-" }
        ));
    }
    outcome(pass, parts.join("; "))
}

// 2. Doubling a leaf across a multiple edge gives lattice index |a_ij|.
fn doubling_lattice_index() -> Outcome {
    let mut configs = 0;
    let mut bad = vec![];
    for rank in 3..=10 {
        for d in enumerate_hyperbolic_simplex_diagrams(rank) {
            for a in enumerate_dynkin(&d, false) {
                for i in 0..rank {
                    for j in 0..rank {
                        let Ok(e) = lemma2_subsystem(&a, i, j) else {
                            continue;
                        };
                        configs += 1;
                        let want = a.get(i, j).unsigned_abs();
                        let got = e.lattice_index();
                        if got != want || !(2..=4).contains(&got) {
                            bad.push(format!("rank {rank} ({i},{j}): {got} vs {want}"));
                        }
                    }
                }
            }
        }
    }
    outcome(
        configs > 0 && bad.is_empty(),
        format!(
            "{configs} configurations, {} mismatches {:?}",
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

// 3. Bounded (iii), bounded (i) and the annotation agree.
fn star_equivalence(records: &[DecompositionRecord]) -> Outcome {
    let mut bad = vec![];
    for (k, r) in records.iter().enumerate() {
        let e = r.embedding().expect("valid record");
        let (_, violations) = bounded_lattice_split(&e, H).expect("roots");
        let lattice_form = violations.is_empty();
        let sum_form = sum_condition_violation(&e, H).expect("roots").is_none();
        let annotated = r.star.holds();
        if lattice_form != sum_form || sum_form != annotated {
            bad.push(format!(
                "record {k}: (i) {lattice_form}, (iii) {sum_form}, annotation {annotated}"
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} records at H = {H}, {} disagreements {:?}",
            records.len(),
            bad.len(),
            bad
        ),
    )
}

// 4. Non-minimal pairs satisfying (*), and exceptional decompositions.
fn nonminimal_count(records: &[DecompositionRecord]) -> Outcome {
    let pairs = records
        .iter()
        .filter(|r| !r.minimal && r.star.holds())
        .count();
    let mut per_dim: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let c = classify(6, DEFAULT_MAX_TILES).expect("classification");
    for d in c.exceptional() {
        let slot = per_dim.entry(d.diagram.nodes() - 1).or_default();
        slot.0 += 1;
        slot.1 += usize::from(d.subsystem);
    }
    let dims: Vec<String> = per_dim
        .iter()
        .map(|(dim, (all, sub))| format!("dim {dim}: {all} ({sub} with a root subsystem)"))
        .collect();
    let dim4 = per_dim.get(&4).map_or(0, |x| x.0);
    let dim5 = per_dim.get(&5).map_or(0, |x| x.0);
    outcome(
        pairs == 19 && dim4 == 2 && dim5 == 1,
        format!(
            "{pairs} non-minimal pairs with (*) (want 19); exceptional {} (want dim 4: 2, dim 5: 1)",
            dims.join(", ")
        ),
    )
}

// 5. No hyperbolic simplex above rank 10; sweep time.
fn dimension_bound() -> Outcome {
    let t = Instant::now();
    let counts: Vec<usize> = (3..=11)
        .map(|r| enumerate_hyperbolic_simplex_diagrams(r).len())
        .collect();
    let took = t.elapsed();
    outcome(
        counts[8] == 0 && took <= SWEEP_TIME_LIMIT,
        format!(
            "diagrams per rank 3..=11: {counts:?}; rank 11 empty: {}; sweep {:.1}s (limit {}s)",
            counts[8] == 0,
            took.as_secs_f64(),
            SWEEP_TIME_LIMIT.as_secs()
        ),
    )
}

// 6. Minimal pairs generate a proper sublattice of L or of L^vee.
fn proper_sublattice(records: &[DecompositionRecord]) -> Outcome {
    let mut bad = vec![];
    let mut n = 0;
    for (k, r) in records.iter().enumerate().filter(|(_, r)| r.minimal) {
        n += 1;
        let e = r.embedding().expect("valid record");
        let dual = e.dual().map(|d| d.lattice_index());
        if !(e.lattice_index() > 1 || dual.as_ref().is_ok_and(|&d| d > 1)) {
            bad.push(format!("record {k}: {} / {dual:?}", e.lattice_index()));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{n} minimal pairs, {} with L1 = L and L1^vee = L^vee {bad:?}",
            bad.len()
        ),
    )
}

/// `inner` re-expressed over `outer`'s induced matrix, if isomorphic.
fn compose(
    outer: &DecompositionRecord,
    inner: &DecompositionRecord,
) -> Option<(Embedding, Embedding, Embedding)> {
    let o = outer.embedding().ok()?;
    let order = inner.ambient.isomorphism_to(o.induced())?;
    let roots = inner
        .sub_roots
        .iter()
        .map(|v| RootVector(order.iter().map(|&k| v.0[k]).collect()))
        .collect();
    let i = Embedding::new(o.induced(), roots).ok()?;
    let c = chain_compose(&i, &o).ok()?;
    Some((i, o, c))
}

// 7. Towers: (*) composes, and failure of (*) is inherited.
fn towers(records: &[DecompositionRecord]) -> Outcome {
    let canon: Vec<GeneralizedCartanMatrix> =
        records.iter().map(|r| r.ambient.canonical()).collect();
    let mut chains = vec![];
    for (a, outer) in records.iter().enumerate() {
        let lower = outer
            .embedding()
            .expect("valid record")
            .induced()
            .canonical();
        for (b, c) in canon.iter().enumerate() {
            if *c == lower {
                chains.push((a, b));
            }
        }
    }
    if chains.is_empty() {
        return outcome(false, "no composable chains");
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    let (mut composed, mut inherited, mut witnesses, mut bad) = (0, 0, 0, vec![]);
    for _ in 0..CHAINS {
        let (a, b) = chains[rng.random_range(0..chains.len())];
        let Some((inner, outer, comp)) = compose(&records[a], &records[b]) else {
            bad.push(format!("chain {a}->{b} does not compose"));
            continue;
        };
        let star = |e: &Embedding| {
            tile_walk(e, DEFAULT_MAX_TILES)
                .expect("finite index")
                .star_holds()
        };
        let (si, so, sc) = (star(&inner), star(&outer), star(&comp));
        if si && so {
            composed += 1;
            if !sc {
                bad.push(format!("chain {a}->{b}: (*) not inherited"));
            }
        }
        if !si {
            inherited += 1;
            if sc {
                bad.push(format!("chain {a}->{b}: composite satisfies (*)"));
            }
            let h = inner.max_root_height().max(H);
            if let Ok(v) = check_star_bounded(&inner, h) {
                if let StarStatus::FailsWithWitness { alpha, beta, sum } = v.status {
                    let t = |x: &RootVector| outer.to_ambient(x).expect("transport");
                    if verify_witness(&comp, &t(&alpha), &t(&beta), &t(&sum)) {
                        witnesses += 1;
                    } else {
                        bad.push(format!("chain {a}->{b}: transported witness rejected"));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty() && composed + inherited > 0,
        format!(
            "{CHAINS} chains from {} composable pairs; {composed} with (*) on both steps, {inherited} failing inside ({witnesses} transported witnesses verified); {} violations {:?}",
            chains.len(),
            bad.len(),
            bad.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn pairing(a: &[Vec<i64>], v: &[i64], j: usize) -> i64 {
    v.iter().enumerate().map(|(i, x)| a[j][i] * x).sum()
}

/// Positive real roots of height at most `h`, by applying every word of
/// length below `h` to every simple root.
fn roots_by_words(a: &[Vec<i64>], h: i64) -> HashSet<Vec<i64>> {
    let n = a.len();
    let mut out = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|k| i64::from(k == i)).collect())
        .collect();
    for _ in 0..h {
        let mut next = vec![];
        for v in &layer {
            if v.iter().all(|&x| x >= 0) && v.iter().sum::<i64>() <= h {
                out.insert(v.clone());
            }
            for j in 0..n {
                let mut w = v.clone();
                w[j] -= pairing(a, v, j);
                next.push(w);
            }
        }
        layer = next;
    }
    out
}

fn group_order_by_matrices(a: &[Vec<i64>]) -> usize {
    let n = a.len();
    let gens: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| i64::from(r == c) - if r == j { a[j][c] } else { 0 })
                        .collect()
                })
                .collect()
        })
        .collect();
    let id: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
        .collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let p: Vec<Vec<i64>> = (0..n)
                .map(|r| {
                    (0..n)
                        .map(|c| (0..n).map(|k| g[r][k] * m[k][c]).sum())
                        .collect()
                })
                .collect();
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    seen.len()
}

fn det(m: &[Vec<i64>]) -> i128 {
    // fraction-free elimination
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else {
            return 0;
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// `v` is an integer combination of the rows of nonsingular `m`.
fn in_row_span(m: &[Vec<i64>], v: &[i64]) -> bool {
    // Cramer: x_i = det(m with row i replaced by v) / det(m)
    let d = det(m);
    (0..m.len()).all(|i| {
        let mut r = m.to_vec();
        r[i] = v.to_vec();
        det(&r) % d == 0
    })
}

// 8. Independent oracles.
fn oracles() -> Outcome {
    let t = Instant::now();
    // (a) roots
    let mut systems: Vec<GeneralizedCartanMatrix> = vec![];
    for level in connected_finite_or_affine(3).iter().skip(2) {
        for d in level {
            systems.extend(enumerate_dynkin(d, false));
        }
    }
    for p in 5..=16 {
        for x in 1..=p {
            if p % x == 0 {
                systems.push(
                    GeneralizedCartanMatrix::new(vec![vec![2, -x], vec![-(p / x), 2]]).unwrap(),
                );
            }
        }
    }
    for d in enumerate_hyperbolic_simplex_diagrams(3) {
        systems.extend(enumerate_dynkin(&d, false));
    }
    let mut root_bad = 0;
    for a in &systems {
        let rows = a.rows();
        let sys = RootSystem::new(a).expect("symmetrizable");
        for h in 1..=6 {
            let bfs: HashSet<Vec<i64>> = sys
                .real_roots_up_to_height(h)
                .unwrap()
                .into_iter()
                .filter(|r| r.is_positive())
                .map(|r| r.0)
                .collect();
            root_bad += usize::from(bfs != roots_by_words(&rows, h as i64));
        }
    }
    // (b) group orders
    let cases: [(&str, Vec<Vec<i64>>, usize); 4] = [
        ("A2", vec![vec![2, -1], vec![-1, 2]], 6),
        ("B2", vec![vec![2, -2], vec![-1, 2]], 8),
        ("G2", vec![vec![2, -1], vec![-3, 2]], 12),
        (
            "A3",
            vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            24,
        ),
    ];
    let mut group_bad = vec![];
    for (name, rows, want) in &cases {
        let a = GeneralizedCartanMatrix::new(rows.clone()).unwrap();
        let pres = coxeter_presentation(&a.coxeter_diagram().unwrap());
        let tc = todd_coxeter(&pres, &[], 1000).unwrap();
        let brute = group_order_by_matrices(rows);
        if tc != *want || brute != *want {
            group_bad.push(format!("{name}: {tc}/{brute}"));
        }
    }
    // (c) lattices
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut lattice_bad = 0;
    let mut singular = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=4);
        let m: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.random_range(-6..=6)).collect())
            .collect();
        let d = det(&m);
        if d == 0 {
            singular += 1;
            lattice_bad += usize::from(hnf(&m).is_ok() && Lattice::new(&m).is_ok());
            continue;
        }
        let h = hnf(&m).unwrap();
        let hi: Vec<Vec<i64>> = h
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        let shape = (0..n).all(|i| {
            hi[i][i] > 0
                && (0..i).all(|j| hi[i][j] == 0)
                && (0..i).all(|k| (0..hi[i][i]).contains(&hi[k][i]))
        });
        let same = hi.iter().all(|r| in_row_span(&m, r)) && m.iter().all(|r| in_row_span(&hi, r));
        let index = Lattice::new(&m)
            .unwrap()
            .index_in(&Lattice::standard(n))
            .unwrap();
        if !shape || !same || index != BigInt::from(d.abs()) {
            lattice_bad += 1;
        }
    }
    let took = t.elapsed();
    outcome(
        root_bad == 0 && group_bad.is_empty() && lattice_bad == 0 && took <= ORACLE_TIME_LIMIT,
        format!(
            "(a) {} systems x H 1..=6, {root_bad} mismatches; (b) orders {:?}, {} mismatches; (c) 1000 matrices ({singular} singular), {lattice_bad} mismatches; {:.1}s",
            systems.len(),
            cases.iter().map(|c| c.2).collect::<Vec<_>>(),
            group_bad.len(),
            took.as_secs_f64()
        ),
    )
}

// 9. Hasse graph edges in dimensions 6 to 9.
fn high_dimensions(records: &[DecompositionRecord]) -> Outcome {
    let opts = VerifyOptions::default();
    let verified: Vec<bool> = records
        .iter()
        .map(|r| verify_catalog(r, &opts).ok())
        .collect();
    let unverified = verified.iter().filter(|v| !**v).count();
    if unverified > 0 {
        return outcome(false, format!("{unverified} records fail verification"));
    }
    let g = build_hasse(records, &verified).expect("verified catalog");
    let high: Vec<_> = g
        .edges
        .iter()
        .filter(|e| (7..=10).contains(&g.nodes[e.upper].rank()))
        .collect();
    let mut by_index: BTreeMap<u64, usize> = BTreeMap::new();
    for e in &high {
        *by_index.entry(e.group_index).or_default() += 1;
    }
    let dotted = high.iter().filter(|e| e.style == EdgeStyle::Dotted).count();
    let others = by_index
        .keys()
        .filter(|&&k| ![2, 272, 527].contains(&k))
        .count();
    let pass = by_index.get(&272) == Some(&1)
        && by_index.get(&527) == Some(&1)
        && others == 0
        && dotted == 0;
    outcome(
        pass,
        format!(
            "{} edges, index counts {by_index:?}, {dotted} dotted",
            high.len()
        ),
    )
}

fn main() -> ExitCode {
    let records = catalog();
    let criteria: [Criterion; 9] = [
        ("table rows", Box::new(|| table_rows(&records))),
        ("doubling lattice index", Box::new(doubling_lattice_index)),
        ("star equivalence", Box::new(|| star_equivalence(&records))),
        ("non-minimal pairs", Box::new(|| nonminimal_count(&records))),
        ("dimension bound", Box::new(dimension_bound)),
        (
            "proper sublattice",
            Box::new(|| proper_sublattice(&records)),
        ),
        ("towers", Box::new(|| towers(&records))),
        ("oracles", Box::new(oracles)),
        ("high dimensions", Box::new(|| high_dimensions(&records))),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        failed += usize::from(!o.pass);
        println!(
            "criterion {} {name}: {} [{:.1}s] {}",
            k + 1,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!("{} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
