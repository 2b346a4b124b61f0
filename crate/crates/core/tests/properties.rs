use std::sync::OnceLock;

use proptest::prelude::*;

use kmroots::classify::{group_index, DecompositionRecord, DEFAULT_MAX_TILES};
use kmroots::coset::{coxeter_presentation, todd_coxeter};
use kmroots::diagram::connected_finite_or_affine;
use kmroots::dsl::{parse_diagram, serialize_cartan};
use kmroots::dynkin::enumerate_dynkin;
use kmroots::frames::hyperbolic_diagrams;
use kmroots::io::{load_catalog, parse_catalog, serialize_catalog};
use kmroots::lattice::Lattice;
use kmroots::roots::{RootSystem, RootVector};
use kmroots::subsystem::{chain_compose, tile_walk, Embedding};
use kmroots::GeneralizedCartanMatrix;

fn systems() -> &'static [GeneralizedCartanMatrix] {
    static S: OnceLock<Vec<GeneralizedCartanMatrix>> = OnceLock::new();
    S.get_or_init(|| {
        (3..=6)
            .flat_map(|r| {
                hyperbolic_diagrams(r)
                    .iter()
                    .flat_map(|d| enumerate_dynkin(d, false))
            })
            .collect()
    })
}

fn catalog() -> &'static [DecompositionRecord] {
    static C: OnceLock<Vec<DecompositionRecord>> = OnceLock::new();
    C.get_or_init(|| {
        load_catalog(concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.json")).unwrap()
    })
}

fn finite_systems() -> &'static [GeneralizedCartanMatrix] {
    static S: OnceLock<Vec<GeneralizedCartanMatrix>> = OnceLock::new();
    S.get_or_init(|| {
        connected_finite_or_affine(4)
            .iter()
            .flatten()
            .flat_map(|d| enumerate_dynkin(d, false))
            .filter(|a| {
                a.classify_type()
                    .is_ok_and(|t| t.tag == kmroots::TypeTag::Finite)
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dsl_round_trip(k in any::<prop::sample::Index>()) {
        let a = &systems()[k.index(systems().len())];
        let text = serialize_cartan(a);
        prop_assert_eq!(parse_diagram(&text).unwrap().cartan().unwrap(), a.clone());
    }

    #[test]
    fn permuted_matrix_keeps_type(k in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let a = &systems()[k.index(systems().len())];
        let mut order: Vec<usize> = (0..a.rank()).collect();
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = a.permuted(&order);
        prop_assert_eq!(b.classify_type().unwrap(), a.classify_type().unwrap());
        prop_assert_eq!(b.canonical(), a.canonical());
        prop_assert_eq!(a.isomorphism_to(&b).map(|o| a.permuted(&o)), Some(b));
    }

    #[test]
    fn weyl_words_give_real_roots(
        k in any::<prop::sample::Index>(),
        start in 0usize..10,
        word in prop::collection::vec(0usize..10, 0..12),
    ) {
        let a = &systems()[k.index(systems().len())];
        let sys = RootSystem::new(a).unwrap();
        let n = a.rank();
        let word: Vec<usize> = word.into_iter().map(|j| j % n).collect();
        let v = sys.apply_word(&word, &RootVector::simple(n, start % n)).unwrap();
        prop_assert!(v.is_sign_coherent());
        prop_assert!(sys.is_real_root(&v));
        prop_assert_eq!(sys.norm(&v), sys.norm(&RootVector::simple(n, start % n)));
        let doubled = RootVector(v.0.iter().map(|x| 2 * x).collect());
        prop_assert!(!sys.is_real_root(&doubled));
    }

    #[test]
    fn reflection_word_reproduces_reflection(
        k in any::<prop::sample::Index>(),
        word in prop::collection::vec(0usize..10, 1..8),
        target in 0usize..10,
    ) {
        let a = &systems()[k.index(systems().len())];
        let sys = RootSystem::new(a).unwrap();
        let n = a.rank();
        let word: Vec<usize> = word.into_iter().map(|j| j % n).collect();
        let beta = sys.apply_word(&word, &RootVector::simple(n, 0)).unwrap();
        let beta = if beta.is_negative() { beta.neg() } else { beta };
        let w = sys.reflection_word(&beta).unwrap();
        let v = RootVector::simple(n, target % n);
        prop_assert_eq!(sys.apply_word(&w, &v).unwrap(), sys.reflect(&v, &beta).unwrap());
    }

    #[test]
    fn lattice_index_is_unimodular_invariant(
        rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 3),
        ops in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..10),
    ) {
        let Ok(l) = Lattice::new(&rows) else { return Ok(()) };
        let mut m = rows.clone();
        for (i, j, c) in ops {
            if i != j {
                let rj = m[j].clone();
                for (x, y) in m[i].iter_mut().zip(rj) {
                    *x += c * y;
                }
            }
        }
        let l2 = Lattice::new(&m).unwrap();
        prop_assert_eq!(l.hnf(), l2.hnf());
        let z = Lattice::standard(3);
        prop_assert_eq!(l.index_in(&z).unwrap(), l2.index_in(&z).unwrap());
        for r in &m {
            prop_assert!(l.contains(r));
        }
    }

    #[test]
    fn parabolic_index_is_order_ratio(k in any::<prop::sample::Index>(), drop in 0usize..4) {
        let a = &finite_systems()[k.index(finite_systems().len())];
        let n = a.rank();
        let pres = coxeter_presentation(&a.coxeter_diagram().unwrap());
        let order = todd_coxeter(&pres, &[], 100_000).unwrap();
        let sub: Vec<Vec<usize>> = (0..n).filter(|&i| i != drop % n).map(|i| vec![i]).collect();
        let index = todd_coxeter(&pres, &sub, 100_000).unwrap();
        let rest: Vec<usize> = (0..n).filter(|&i| i != drop % n).collect();
        let parabolic = a.principal_submatrix(&rest);
        let sub_order = if rest.is_empty() {
            1
        } else {
            let p = coxeter_presentation(&parabolic.coxeter_diagram().unwrap());
            todd_coxeter(&p, &[], 100_000).unwrap()
        };
        prop_assert_eq!(index * sub_order, order);
    }

    #[test]
    fn catalog_round_trip(picks in prop::collection::vec(any::<prop::sample::Index>(), 0..8)) {
        let c = catalog();
        let subset: Vec<DecompositionRecord> = picks.iter().map(|i| c[i.index(c.len())].clone()).collect();
        let text = serialize_catalog(&subset);
        prop_assert_eq!(parse_catalog(&text).unwrap(), subset);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn indices_multiply_along_chains(x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let c = catalog();
        let outer = &c[x.index(c.len())];
        let o = outer.embedding().unwrap();
        let lower = o.induced().canonical();
        let inners: Vec<&DecompositionRecord> = c.iter().filter(|r| r.ambient.canonical() == lower).collect();
        prop_assume!(!inners.is_empty());
        let inner = inners[y.index(inners.len())];
        let order = inner.ambient.isomorphism_to(o.induced()).unwrap();
        let roots = inner.sub_roots.iter().map(|v| RootVector(order.iter().map(|&k| v.0[k]).collect())).collect();
        let i = Embedding::new(o.induced(), roots).unwrap();
        let comp = chain_compose(&i, &o).unwrap();
        prop_assert_eq!(comp.lattice_index(), i.lattice_index() * o.lattice_index());
        let walk = tile_walk(&comp, DEFAULT_MAX_TILES).unwrap();
        prop_assert_eq!(walk.index() as u64, inner.group_index * outer.group_index);
        prop_assert_eq!(group_index(&comp, 100_000).unwrap() as u64, inner.group_index * outer.group_index);
    }

    #[test]
    fn tile_walk_matches_coset_enumeration(k in any::<prop::sample::Index>()) {
        let c = catalog();
        let r = &c[k.index(c.len())];
        let e = r.embedding().unwrap();
        let walk = tile_walk(&e, DEFAULT_MAX_TILES).unwrap();
        prop_assert_eq!(walk.index(), group_index(&e, 1_000_000).unwrap());
        prop_assert_eq!(walk.star_holds(), r.star.holds());
    }
}
