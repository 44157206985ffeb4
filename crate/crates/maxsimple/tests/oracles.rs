//! Cross-checks of the engine against independent brute-force routes: raw
//! element enumeration for the group theory, vector-by-vector spinning for
//! the chopping, the commutation linear system for endomorphism degrees, and
//! fixed-chain sums for the virtual characters.

mod common;

use std::collections::BTreeSet;

use common::*;
use maxsimple::gf::Field;
use maxsimple::limits::{Limits, DEFAULT_SEED};
use maxsimple::meataxe::{self, GModule};
use maxsimple::pcomplex::{steinberg_character, ComplexKind};
use maxsimple::perm::Permutation;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn limits() -> Limits {
    Limits::default()
}

fn field(p: u64, k: u32) -> std::sync::Arc<Field> {
    Field::new(p, k, &limits()).unwrap()
}

#[test]
fn orders_match_brute_closure() {
    for (gens, degree) in [
        (vec!["(0 1)", "(0 1 2)"], 3),
        (vec!["(0 1)", "(0 1 2 3)"], 4),
        (vec!["(0 1 2 3 4)", "(0 1 2)"], 5),
        (vec!["(0 1 2 3)(4 7 6 5)", "(0 4 2 6)(1 5 3 7)"], 8),
    ] {
        let g = grp(&gens, degree);
        assert_eq!(g.order(), brute_elements(&g).len() as u64);
    }
}

#[test]
fn normalizer_of_c5_in_a5_by_element_filter() {
    let a5 = grp(&["(0 1 2 3 4)", "(0 1 2)"], 5);
    let c5_gen = Permutation::parse_cycles("(0 1 2 3 4)", 5).unwrap();
    let c5: ElementSet = brute_closure(&[c5_gen.clone()], 5);
    let count = brute_elements(&a5)
        .iter()
        .filter(|g| conjugate_set(&c5, g) == c5)
        .count();
    assert_eq!(count, 10);
    // and the engine agrees
    let c5_group = maxsimple::PermGroup::from_generators(vec![c5_gen]).unwrap();
    assert_eq!(a5.normalizer(&c5_group, &limits()).unwrap().order(), 10);
}

#[test]
fn s4_normal_subgroup_scan() {
    let s4 = grp(&["(0 1)", "(0 1 2 3)"], 4);
    let elements = brute_elements(&s4);
    let subgroups = brute_subgroups(&elements, 4, 2);
    let normals: Vec<&ElementSet> = subgroups
        .iter()
        .filter(|h| {
            s4.generators()
                .iter()
                .all(|g| conjugate_set(h, g) == **h)
        })
        .collect();
    let mut normal_orders: Vec<usize> = normals.iter().map(|h| h.len()).collect();
    normal_orders.sort_unstable();
    assert_eq!(normal_orders, vec![1, 4, 12, 24]);

    // largest normal 2-subgroup = V_4: matches the engine's p-core
    let core_oracle = normals
        .iter()
        .filter(|h| h.len().is_power_of_two())
        .map(|h| h.len())
        .max()
        .unwrap();
    assert_eq!(core_oracle, 4);
    assert_eq!(s4.p_core(2, &limits()).unwrap().order(), 4);

    // inclusion-minimal nontrivial normals
    let minimal: Vec<&&ElementSet> = normals
        .iter()
        .filter(|h| h.len() > 1)
        .filter(|h| {
            !normals
                .iter()
                .any(|k| k.len() > 1 && k.len() < h.len() && k.is_subset(h))
        })
        .collect();
    assert_eq!(minimal.len(), 1);
    assert_eq!(minimal[0].len(), 4);
    let engine = s4.minimal_normal_subgroups(&limits()).unwrap();
    assert_eq!(engine.len(), 1);
    assert_eq!(engine[0].order(), 4);
}

#[test]
fn frattini_of_q8_by_brute_lattice() {
    let q8 = grp(&["(0 1 2 3)(4 7 6 5)", "(0 4 2 6)(1 5 3 7)"], 8);
    let elements = brute_elements(&q8);
    let subgroups = brute_subgroups(&elements, 8, 2);
    assert_eq!(subgroups.len(), 6);
    let maximal: Vec<&ElementSet> = subgroups
        .iter()
        .filter(|h| h.len() < 8)
        .filter(|h| {
            !subgroups
                .iter()
                .any(|k| k.len() < 8 && k.len() > h.len() && h.is_subset(k))
        })
        .collect();
    let mut phi: ElementSet = maximal[0].clone();
    for m in &maximal[1..] {
        phi = phi.intersection(m).cloned().collect();
    }
    assert_eq!(phi.len(), 2);
    assert_eq!(q8.frattini(&limits()).unwrap().order(), 2);
}

#[test]
fn max_abelian_order_of_wreath_cube_is_27() {
    // the wreath product of two cycles of order three, on 9 points
    let w = grp(&["(0 1 2)", "(0 3 6)(1 4 7)(2 5 8)"], 9);
    assert_eq!(w.order(), 81);
    let elements = brute_elements(&w);
    let subgroups = brute_subgroups(&elements, 9, 3);
    let best = subgroups
        .iter()
        .filter(|s| is_abelian_set(s))
        .map(|s| s.len())
        .max()
        .unwrap();
    assert_eq!(best, 27);
    assert_eq!(
        w.max_abelian_p_order(3, &w, None, &limits()).unwrap(),
        27
    );
}

#[test]
fn brute_chop_dimension_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases: Vec<(maxsimple::PermGroup, u64)> = vec![
        (grp(&["(0 1)", "(0 1 2)"], 3), 2),
        (grp(&["(0 1)", "(0 1 2)"], 3), 3),
        (grp(&["(0 1)", "(0 1 2 3)"], 4), 2),
        (grp(&["(0 1 2 3 4 5)"], 6), 2),
        (grp(&["(0 1 2 3)", "(1 3)"], 4), 3),
    ];
    for (g, p) in cases {
        let m = GModule::perm_module(&g, field(p, 1));
        let oracle = brute_factor_dims(&m);
        let factors = meataxe::chop(&m, &mut rng).unwrap();
        let mut dims = Vec::new();
        for f in &factors {
            for _ in 0..f.multiplicity {
                dims.push(f.module.dim);
            }
        }
        dims.sort_unstable();
        assert_eq!(dims, oracle, "perm module of order {} at {p}", g.order());
    }
}

#[test]
fn brute_chop_regular_s3_over_gf3() {
    let s3 = grp(&["(0 1)", "(0 1 2)"], 3);
    let m = GModule::regular_module(&s3, field(3, 1), &limits()).unwrap();
    let oracle = brute_factor_dims(&m);
    assert_eq!(oracle, vec![1, 1, 1, 1, 1, 1]);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let factors = meataxe::chop(&m, &mut rng).unwrap();
    // two isomorphism classes (trivial and sign), three of each
    assert_eq!(factors.len(), 2);
    assert!(factors.iter().all(|f| f.multiplicity == 3));
}

#[test]
fn endo_degree_matches_commutation_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    // trivial module
    let f2 = field(2, 1);
    let trivial = GModule::from_action(
        f2.clone(),
        1,
        vec![maxsimple::matrix::FqMatrix::identity(f2.clone(), 1)],
    );
    assert_eq!(commutant_dimension(&trivial), 1);
    assert_eq!(meataxe::endo_degree(&trivial, &mut rng).unwrap(), 1);

    // order-3 rotation on a plane over GF(2): endomorphism field GF(4)
    let rot = maxsimple::matrix::FqMatrix::from_ints(f2.clone(), 2, 2, &[0, 1, 1, 1]);
    let m = GModule::from_action(f2, 2, vec![rot]);
    assert_eq!(commutant_dimension(&m), 2);
    assert_eq!(meataxe::endo_degree(&m, &mut rng).unwrap(), 2);

    // the fused 4-dimensional simple of A_5 over GF(2), found inside the
    // tensor square of the 4-dimensional factor of the natural module
    let a5 = grp(&["(0 1 2 3 4)", "(0 1 2)"], 5);
    let natural = GModule::perm_module(&a5, field(2, 1));
    let factors = meataxe::chop(&natural, &mut rng).unwrap();
    let st = &factors.iter().find(|f| f.module.dim == 4).unwrap().module;
    let square = st.tensor(st);
    let factors = meataxe::chop(&square, &mut rng).unwrap();
    let fused = factors
        .iter()
        .find(|f| f.module.dim == 4 && commutant_dimension(&f.module) == 2)
        .expect("the Galois-fused 4-dimensional factor appears");
    assert_eq!(meataxe::endo_degree(&fused.module, &mut rng).unwrap(), 2);
    // while the other 4-dimensional factor is absolutely irreducible
    let plain = factors
        .iter()
        .find(|f| f.module.dim == 4 && commutant_dimension(&f.module) == 1)
        .expect("the absolutely irreducible 4-dimensional factor appears");
    assert_eq!(meataxe::endo_degree(&plain.module, &mut rng).unwrap(), 1);
}

#[test]
fn steinberg_values_by_fixed_chain_sums() {
    for (gens, degree, p) in [
        (vec!["(0 1)", "(0 1 2)"], 3, 2u64),
        (vec!["(0 1)", "(0 1 2 3)"], 4, 2),
        (vec!["(0 1)", "(0 1 2 3)"], 4, 3),
        (vec!["(0 1 2 3 4)", "(0 1 2)"], 5, 2),
    ] {
        let g = grp(&gens, degree);
        let elements = brute_elements(&g);
        // brute list of nontrivial p-subgroups (2-generated is enough here)
        let subgroups: Vec<ElementSet> = brute_subgroups(&elements, degree, 2)
            .into_iter()
            .filter(|s| s.len() > 1 && (s.len() as u64) % p == 0 && is_p_group(s.len() as u64, p))
            .collect();
        // all strictly increasing chains, including the empty one
        let mut chains: Vec<Vec<usize>> = vec![vec![]];
        let mut stack: Vec<Vec<usize>> = (0..subgroups.len()).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            chains.push(chain.clone());
            let last = *chain.last().unwrap();
            for (j, t) in subgroups.iter().enumerate() {
                if t.len() > subgroups[last].len() && subgroups[last].is_subset(t) {
                    let mut next = chain.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
        // value at x = Σ over chains fixed setwise by x of (−1)^(length)
        let engine = steinberg_character(&g, p, ComplexKind::Poset, &limits()).unwrap();
        for (class, &engine_value) in engine.classes.iter().zip(&engine.values) {
            let x = &class.representative;
            let mut value: i64 = 0;
            for chain in &chains {
                let fixed = chain
                    .iter()
                    .all(|&i| conjugate_set(&subgroups[i], x) == subgroups[i]);
                if fixed {
                    value += if chain.len() % 2 == 0 { 1 } else { -1 };
                }
            }
            assert_eq!(
                value, engine_value,
                "group of order {} at p={p}, class {}",
                g.order(),
                x
            );
        }
    }
}

fn is_p_group(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

#[test]
fn regular_module_route_agrees_with_search() {
    // dual route: chop the regular module directly and split by the
    // endomorphism degrees, then compare with the closure-counting search
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let cases: Vec<(maxsimple::PermGroup, u64)> = vec![
        (grp(&["(0 1)", "(0 1 2)"], 3), 3),
        (grp(&["(0 1)", "(0 1 2 3)"], 4), 3),
        (grp(&["(0 1 2)", "(0 1)(2 3)"], 4), 2),
        (
            grp(
                &["(0 1 2 3 4 5 6 7 8 9 10)", "(1 4 5 9 3)(2 8 10 7 6)"],
                11,
            ),
            5,
        ),
    ];
    for (g, p) in cases {
        let m = GModule::regular_module(&g, field(p, 1), &limits()).unwrap();
        let factors = meataxe::chop(&m, &mut rng).unwrap();
        let mut oracle_dims: Vec<u64> = Vec::new();
        for f in &factors {
            let e = meataxe::endo_degree(&f.module, &mut rng).unwrap();
            for _ in 0..e {
                oracle_dims.push(f.module.dim as u64 / e);
            }
        }
        oracle_dims.sort_unstable();
        let search =
            meataxe::absolutely_simple_dimensions(&g, p, &limits(), DEFAULT_SEED).unwrap();
        assert_eq!(oracle_dims, search, "order {} at p={p}", g.order());
    }
}

#[test]
fn frobenius_group_dimensions() {
    // induced characters from the normal cyclic subgroup of order 11: the
    // ten nontrivial characters fuse into two orbits of size five
    let frob = grp(
        &["(0 1 2 3 4 5 6 7 8 9 10)", "(1 4 5 9 3)(2 8 10 7 6)"],
        11,
    );
    assert_eq!(frob.order(), 55);
    let dims =
        meataxe::absolutely_simple_dimensions(&frob, 5, &limits(), DEFAULT_SEED).unwrap();
    assert_eq!(dims, vec![1, 5, 5]);
    assert_eq!(
        meataxe::max_simple_dimension(&frob, 5, &limits(), DEFAULT_SEED).unwrap(),
        5
    );
}

#[test]
fn p_subgroup_classes_match_brute_enumeration() {
    let s4 = grp(&["(0 1)", "(0 1 2 3)"], 4);
    let elements = brute_elements(&s4);
    let twos: Vec<ElementSet> = brute_subgroups(&elements, 4, 2)
        .into_iter()
        .filter(|s| s.len() > 1 && s.len().is_power_of_two())
        .collect();
    assert_eq!(twos.len(), 19);
    // fuse under conjugation
    let mut classes: Vec<BTreeSet<usize>> = Vec::new();
    let mut assigned = vec![false; twos.len()];
    for i in 0..twos.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        orbit.insert(i);
        assigned[i] = true;
        let mut frontier = vec![i];
        while let Some(at) = frontier.pop() {
            for g in &elements {
                let image = conjugate_set(&twos[at], g);
                let j = twos.iter().position(|t| *t == image).unwrap();
                if !assigned[j] {
                    assigned[j] = true;
                    orbit.insert(j);
                    frontier.push(j);
                }
            }
        }
        classes.push(orbit);
    }
    let engine =
        maxsimple::pcomplex::p_subgroup_classes(&s4, 2, ComplexKind::Poset, &limits()).unwrap();
    assert_eq!(engine.len(), classes.len());
    let mut engine_orders: Vec<u64> = engine.iter().map(|g| g.order()).collect();
    engine_orders.sort_unstable();
    let mut oracle_orders: Vec<u64> = classes
        .iter()
        .map(|c| twos[*c.first().unwrap()].len() as u64)
        .collect();
    oracle_orders.sort_unstable();
    assert_eq!(engine_orders, oracle_orders);
}
