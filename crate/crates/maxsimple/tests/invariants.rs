//! Property suites over the bundled corpus: stabilizer-chain integrity,
//! conjugation invariance, normal-structure facts, module consistency,
//! dimension identities, and chain-orbit bookkeeping.

mod common;

use std::path::Path;

use common::grp;
use maxsimple::builders::build_group;
use maxsimple::gf::Field;
use maxsimple::limits::{p_part, Limits, DEFAULT_SEED};
use maxsimple::meataxe::{self, GModule};
use maxsimple::pcomplex::{chain_orbits, ComplexKind};
use maxsimple::PermGroup;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn limits() -> Limits {
    Limits::default()
}

fn workspace_root() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .parent()
        .unwrap()
        .parent()
        .unwrap()
}

fn corpus_groups() -> Vec<(String, PermGroup)> {
    [
        "cyclic:4",
        "cyclic:6",
        "dihedral:8",
        "dihedral:10",
        "sym:3",
        "sym:4",
        "sym:5",
        "alt:4",
        "alt:5",
        "sl2:4",
        "file:corpus/groups/q8.grp",
        "file:corpus/groups/c11_c5.grp",
        "fermat_example:3",
    ]
    .iter()
    .map(|spec| {
        (
            spec.to_string(),
            build_group(spec, workspace_root(), &limits()).unwrap(),
        )
    })
    .collect()
}

#[test]
fn stabilizer_chains_verify_and_orbit_products_match() {
    for (spec, g) in corpus_groups() {
        assert!(g.verify_chain(), "{spec}");
        let product: u64 = g.basic_orbit_lengths().iter().map(|&l| l as u64).product();
        assert_eq!(product, g.order(), "{spec}");
        for gen in g.generators() {
            assert!(g.sift(gen).is_identity(), "{spec}");
        }
    }
}

#[test]
fn conjugate_subgroups_have_equal_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (spec, g) in corpus_groups() {
        let table = g.elements(&limits()).unwrap();
        let p = maxsimple::limits::factorize(g.order())[0].0;
        let h = g.sylow(p, &limits()).unwrap();
        for _ in 0..5 {
            let id = rng.gen_range(0..table.len() as u32);
            let conjugator = table.perm(id);
            let conj_gens: Vec<_> = h
                .generators()
                .iter()
                .map(|x| x.conjugate_by(conjugator))
                .collect();
            let order = if conj_gens.is_empty() {
                1
            } else {
                PermGroup::from_generators(conj_gens).unwrap().order()
            };
            assert_eq!(order, h.order(), "{spec}");
        }
    }
}

#[test]
fn cores_are_normal_p_groups_and_frattini_is_normal() {
    for (spec, g) in corpus_groups() {
        for (p, _) in maxsimple::limits::factorize(g.order()) {
            let core = g.p_core(p, &limits()).unwrap();
            assert_eq!(
                p_part(core.order(), p),
                core.order(),
                "{spec}: core is a p-group"
            );
            assert_eq!(
                g.normal_closure(&core, &limits()).unwrap().order(),
                core.order(),
                "{spec}: core is normal"
            );
        }
        let phi = g.frattini(&limits()).unwrap();
        assert_eq!(
            g.normal_closure(&phi, &limits()).unwrap().order(),
            phi.order(),
            "{spec}: Frattini subgroup is normal"
        );
    }
}

#[test]
fn frattini_quotient_has_trivial_core() {
    // for corpus groups with trivial p-core, the p-core of G/Φ(G) stays
    // trivial (checked through the coset action)
    let cases = [
        ("sym:3", 2),
        ("sym:4", 3),
        ("cyclic:4", 3),
        ("alt:5", 2),
        ("alt:5", 3),
        ("alt:5", 5),
        ("fermat_example:3", 2),
        ("dihedral:10", 2),
    ];
    for (spec, p) in cases {
        let g = build_group(spec, workspace_root(), &limits()).unwrap();
        if g.p_core(p, &limits()).unwrap().order() != 1 {
            continue;
        }
        let phi = g.frattini(&limits()).unwrap();
        let quotient = g.quotient(&phi, &limits()).unwrap();
        assert_eq!(
            quotient.p_core(p, &limits()).unwrap().order(),
            1,
            "{spec} at {p}"
        );
    }
}

#[test]
fn layer_is_normal_product_of_p_divisible_simples() {
    let cases = [("alt:5", 2), ("sl2:4", 2), ("direct:sym:3,alt:5", 2)];
    for (spec, p) in cases {
        let g = build_group(spec, workspace_root(), &limits()).unwrap();
        let x = g.p_layer(p, &limits()).unwrap();
        if x.order() == 1 {
            continue;
        }
        assert_eq!(
            g.normal_closure(&x, &limits()).unwrap().order(),
            x.order(),
            "{spec}: layer is normal"
        );
        for factor in x.minimal_normal_subgroups(&limits()).unwrap() {
            assert!(factor.is_simple_nonabelian(&limits()).unwrap(), "{spec}");
            assert_eq!(factor.order() % p, 0, "{spec}");
        }
    }
    // solvable group: no components at all
    let frob = build_group("file:corpus/groups/c11_c5.grp", workspace_root(), &limits()).unwrap();
    assert_eq!(frob.p_layer(5, &limits()).unwrap().order(), 1);
    // a component of order not divisible by p is filtered out
    let a5s3 = build_group("direct:alt:5,sym:3", workspace_root(), &limits()).unwrap();
    assert_eq!(a5s3.p_layer(7, &limits()).unwrap().order(), 1);
}

#[test]
fn perm_modules_respect_group_relations() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for (spec, g) in corpus_groups() {
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let f = Field::new(p, k, &limits()).unwrap();
            let m = GModule::perm_module(&g, f);
            assert!(m.check_against_group(&g, &mut rng), "{spec} over {p}^{k}");
            for a in &m.action {
                assert!(a.is_invertible(), "{spec}");
            }
        }
    }
}

#[test]
fn chop_accounts_for_every_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for (spec, g) in corpus_groups() {
        if g.order() > 200 {
            continue;
        }
        let f = Field::new(2, 1, &limits()).unwrap();
        let m = GModule::perm_module(&g, f);
        let factors = meataxe::chop(&m, &mut rng).unwrap();
        let total: usize = factors
            .iter()
            .map(|f| f.module.dim * f.multiplicity as usize)
            .sum();
        assert_eq!(total, m.dim, "{spec}");
    }
}

#[test]
fn reduction_along_the_core_is_invariant() {
    let cases = [
        ("sym:3", 3),
        ("sym:4", 2),
        ("cyclic:6", 2),
        ("cyclic:6", 3),
        ("dihedral:8", 2),
        ("file:corpus/groups/c11_c5.grp", 11),
    ];
    for (spec, p) in cases {
        let g = build_group(spec, workspace_root(), &limits()).unwrap();
        let core = g.p_core(p, &limits()).unwrap();
        assert!(core.order() > 1, "{spec}");
        let quotient = g.quotient(&core, &limits()).unwrap();
        assert_eq!(
            meataxe::max_simple_dimension(&g, p, &limits(), DEFAULT_SEED).unwrap(),
            meataxe::max_simple_dimension(&quotient, p, &limits(), DEFAULT_SEED).unwrap(),
            "{spec} at {p}"
        );
    }
}

#[test]
fn products_multiply_dimensions() {
    let pairs = [
        ("sym:3", "cyclic:3", 2),
        ("sym:3", "alt:4", 2),
        ("cyclic:6", "sym:3", 2),
    ];
    for (a, b, p) in pairs {
        let ga = build_group(a, workspace_root(), &limits()).unwrap();
        let gb = build_group(b, workspace_root(), &limits()).unwrap();
        let product = PermGroup::direct_product(&ga, &gb);
        let ma = meataxe::max_simple_dimension(&ga, p, &limits(), DEFAULT_SEED).unwrap();
        let mb = meataxe::max_simple_dimension(&gb, p, &limits(), DEFAULT_SEED).unwrap();
        let mp = meataxe::max_simple_dimension(&product, p, &limits(), DEFAULT_SEED).unwrap();
        assert_eq!(mp, ma * mb, "{a} x {b} at {p}");
    }
}

#[test]
fn sections_never_increase_the_dimension() {
    let g = grp(&["(0 1 2 3 4)", "(0 1 2)"], 5);
    let big = meataxe::max_simple_dimension(&g, 2, &limits(), DEFAULT_SEED).unwrap();
    // subgroups: a Sylow 2-subgroup and the normalizer of a 5-cycle
    let sylow = g.sylow(2, &limits()).unwrap();
    let c5 = grp(&["(0 1 2 3 4)"], 5);
    let d10 = g.normalizer(&c5, &limits()).unwrap();
    for h in [&sylow, &d10] {
        let small = meataxe::max_simple_dimension(h, 2, &limits(), DEFAULT_SEED).unwrap();
        assert!(small <= big);
    }
    // quotient section
    let s4 = grp(&["(0 1)", "(0 1 2 3)"], 4);
    let v4 = s4.p_core(2, &limits()).unwrap();
    let q = s4.quotient(&v4, &limits()).unwrap();
    let mq = meataxe::max_simple_dimension(&q, 2, &limits(), DEFAULT_SEED).unwrap();
    let ms4 = meataxe::max_simple_dimension(&s4, 2, &limits(), DEFAULT_SEED).unwrap();
    assert!(mq <= ms4);
}

#[test]
fn residual_bounds_hold_at_odd_primes_too() {
    for (spec, p) in [("sym:3", 3), ("sym:4", 3), ("dihedral:10", 5)] {
        let g = build_group(spec, workspace_root(), &limits()).unwrap();
        let h = g.p_residual(p, &limits()).unwrap();
        let index = g.order() / h.order();
        let mg = meataxe::max_simple_dimension(&g, p, &limits(), DEFAULT_SEED).unwrap();
        let mh = meataxe::max_simple_dimension(&h, p, &limits(), DEFAULT_SEED).unwrap();
        assert!(mh <= mg && mg <= index * mh, "{spec} at {p}");
    }
}

#[test]
fn chain_orbit_bookkeeping() {
    for (spec, g) in corpus_groups() {
        for (p, _) in maxsimple::limits::factorize(g.order()) {
            for kind in ComplexKind::ALL {
                let orbits = chain_orbits(&g, p, kind, &limits()).unwrap();
                for o in &orbits {
                    assert_eq!(
                        o.orbit_size * o.stabilizer_order,
                        g.order(),
                        "{spec} at {p} ({})",
                        kind.label()
                    );
                    assert_eq!(o.sign, if o.length() % 2 == 0 { 1 } else { -1 });
                    // chains are strictly increasing
                    for w in o.subgroup_orders.windows(2) {
                        assert!(w[0] < w[1], "{spec}");
                    }
                }
                // exactly one empty chain
                assert_eq!(
                    orbits.iter().filter(|o| o.length() == 0).count(),
                    1,
                    "{spec}"
                );
            }
        }
    }
}

#[test]
fn class_counting_equals_sum_of_endo_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    // over the ground prime field, the endo degrees of the regular module's
    // factors add up to the p-regular class count
    for (spec, p) in [("sym:3", 2), ("sym:4", 3), ("cyclic:6", 5)] {
        let g = build_group(spec, workspace_root(), &limits()).unwrap();
        let f = Field::new(p, 1, &limits()).unwrap();
        let m = GModule::regular_module(&g, f, &limits()).unwrap();
        let factors = meataxe::chop(&m, &mut rng).unwrap();
        let mut sum = 0;
        for fac in &factors {
            sum += meataxe::endo_degree(&fac.module, &mut rng).unwrap();
        }
        assert_eq!(
            sum,
            g.p_regular_class_count(p, &limits()).unwrap(),
            "{spec} at {p}"
        );
    }
}

#[test]
fn spin_closure_is_invariant() {
    // respinning the result of a spin changes nothing
    let f = Field::new(3, 1, &limits()).unwrap();
    let g = grp(&["(0 1)", "(0 1 2 3)"], 4);
    let m = GModule::perm_module(&g, f.clone());
    let seed = maxsimple::matrix::FqMatrix::from_ints(f, 1, 4, &[1, 2, 0, 0]);
    let basis = maxsimple::matrix::spin(&seed, &m.action);
    let again = maxsimple::matrix::spin(&basis, &m.action);
    assert_eq!(basis.rows, again.rows);
    for a in &m.action {
        let image = basis.mul(a);
        for r in 0..image.rows {
            let seed_row = maxsimple::matrix::FqMatrix::from_rows(
                image.field.clone(),
                vec![image.row(r).to_vec()],
                image.cols,
            );
            let spun = maxsimple::matrix::spin(&seed_row, &[]);
            // the image row reduces to zero against the basis: the span of
            // basis and image together has no more rows than the basis
            let mut all_rows = Vec::new();
            for i in 0..basis.rows {
                all_rows.push(basis.row(i).to_vec());
            }
            all_rows.push(spun.row(0).to_vec());
            let stacked = maxsimple::matrix::FqMatrix::from_rows(
                basis.field.clone(),
                all_rows,
                basis.cols,
            );
            assert_eq!(stacked.rank(), basis.rows);
        }
    }
}

#[test]
fn generic_primes_have_two_regular_orbits() {
    // odd non-Mersenne p, q != p prime: at least two regular orbits of a
    // Sylow p-subgroup of GL(n, q) on the natural module
    let cases = [(4usize, 2u64, 5u64), (4, 3, 5), (12, 2, 13), (3, 3, 13), (6, 2, 5)];
    for (n, q, p) in cases {
        assert!(!maxsimple::bounds::is_mersenne_prime(p));
        let gens = maxsimple::bounds::gl_sylow_generators(n, q, p, &limits()).unwrap();
        assert!(!gens.is_empty(), "({n},{q},{p})");
        let count = maxsimple::bounds::count_regular_orbits(&gens, n, &limits()).unwrap();
        assert!(count >= 2, "({n},{q},{p}) gave {count}");
    }
}
