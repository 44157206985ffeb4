//! Brute-force oracles shared by the integration tests. Everything here is
//! built from `Permutation` products and exhaustive enumeration only, so it
//! stays independent of the engine's stabilizer chains, bitset subgroup
//! machinery, and the chopping code paths it is used to check.

use std::collections::BTreeSet;

use maxsimple::gf::Field;
use maxsimple::matrix::{spin, FqMatrix};
use maxsimple::meataxe::GModule;
use maxsimple::perm::Permutation;
use maxsimple::PermGroup;

pub type ElementSet = BTreeSet<Permutation>;

/// Exhaustive closure of a generating set under products.
pub fn brute_closure(gens: &[Permutation], degree: usize) -> ElementSet {
    let mut set = ElementSet::new();
    set.insert(Permutation::identity(degree));
    let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.then(g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn brute_elements(group: &PermGroup) -> Vec<Permutation> {
    brute_closure(group.generators(), group.degree())
        .into_iter()
        .collect()
}

/// All subgroups generated by at most `max_gens` elements. Complete for
/// groups whose subgroups are all `max_gens`-generated.
pub fn brute_subgroups(elements: &[Permutation], degree: usize, max_gens: usize) -> Vec<ElementSet> {
    let mut seen: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    let mut out: Vec<ElementSet> = Vec::new();
    let mut push = |set: ElementSet, out: &mut Vec<ElementSet>| {
        let key: Vec<Permutation> = set.iter().cloned().collect();
        if seen.insert(key) {
            out.push(set);
        }
    };
    push(brute_closure(&[], degree), &mut out);
    let n = elements.len();
    for i in 0..n {
        push(brute_closure(&[elements[i].clone()], degree), &mut out);
        if max_gens < 2 {
            continue;
        }
        for j in i + 1..n {
            push(
                brute_closure(&[elements[i].clone(), elements[j].clone()], degree),
                &mut out,
            );
            if max_gens < 3 {
                continue;
            }
            for k in j + 1..n {
                push(
                    brute_closure(
                        &[
                            elements[i].clone(),
                            elements[j].clone(),
                            elements[k].clone(),
                        ],
                        degree,
                    ),
                    &mut out,
                );
            }
        }
    }
    out
}

pub fn conjugate_set(set: &ElementSet, g: &Permutation) -> ElementSet {
    set.iter().map(|x| x.conjugate_by(g)).collect()
}

pub fn is_abelian_set(set: &ElementSet) -> bool {
    set.iter()
        .all(|a| set.iter().all(|b| a.commutes_with(b)))
}

/// Dimensions (with multiplicity) of the composition factors of a module,
/// found by spinning every nonzero vector: the smallest resulting subspace
/// is a minimal (hence irreducible) submodule; recurse on it and the
/// quotient. Exponential in the dimension, fine for small oracles.
pub fn brute_factor_dims(module: &GModule) -> Vec<usize> {
    let mut out = Vec::new();
    brute_factor_rec(module, &mut out);
    out.sort_unstable();
    out
}

fn brute_factor_rec(module: &GModule, out: &mut Vec<usize>) {
    let n = module.dim;
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(1);
        return;
    }
    let field = module.field.clone();
    let q = field.q();
    let total = q.checked_pow(n as u32).expect("oracle dimension is small");
    let mut best: Option<FqMatrix> = None;
    for code in 1..total {
        let mut v = vec![Field::ZERO; n];
        let mut c = code;
        for slot in v.iter_mut() {
            *slot = field.from_int(c % q);
            c /= q;
        }
        let seed = FqMatrix::from_rows(field.clone(), vec![v], n);
        let basis = spin(&seed, &module.action);
        if best.as_ref().map_or(true, |b| basis.rows < b.rows) {
            best = Some(basis);
        }
    }
    let basis = best.expect("a nonzero vector exists");
    if basis.rows == n {
        out.push(n);
        return;
    }
    let (sub, quot) = split_public(module, &basis);
    brute_factor_rec(&sub, out);
    brute_factor_rec(&quot, out);
}

/// Sub/quotient split along an invariant reduced-echelon basis, written
/// against the public matrix interface.
pub fn split_public(module: &GModule, basis: &FqMatrix) -> (GModule, GModule) {
    let field = module.field.clone();
    let n = module.dim;
    let w = basis.rows;
    let pivots: Vec<usize> = (0..w)
        .map(|r| (0..n).find(|&c| basis.get(r, c) == Field::ONE).unwrap())
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let reduce = |mut v: Vec<u16>| -> Vec<u16> {
        for (j, &pc) in pivots.iter().enumerate() {
            let c = v[pc];
            if field.is_zero(c) {
                continue;
            }
            for (x, idx) in v.iter_mut().zip(0..n) {
                let bv = basis.get(j, idx);
                if !field.is_zero(bv) {
                    *x = field.sub(*x, field.mul(c, bv));
                }
            }
        }
        v
    };
    let mut sub_action = Vec::new();
    let mut quot_action = Vec::new();
    for a in &module.action {
        let mut s = FqMatrix::zero(field.clone(), w, w);
        for r in 0..w {
            let image: Vec<u16> = (0..n)
                .map(|c| {
                    let mut acc = Field::ZERO;
                    for k in 0..n {
                        acc = field.add(acc, field.mul(basis.get(r, k), a.get(k, c)));
                    }
                    acc
                })
                .collect();
            for (j, &pc) in pivots.iter().enumerate() {
                s.set(r, j, image[pc]);
            }
        }
        sub_action.push(s);
        let mut qm = FqMatrix::zero(field.clone(), free.len(), free.len());
        for (r, &fc) in free.iter().enumerate() {
            let image: Vec<u16> = (0..n).map(|c| a.get(fc, c)).collect();
            let reduced = reduce(image);
            for (c2, &fcol) in free.iter().enumerate() {
                qm.set(r, c2, reduced[fcol]);
            }
        }
        quot_action.push(qm);
    }
    (
        GModule::from_action(field.clone(), w, sub_action),
        GModule::from_action(field, free.len(), quot_action),
    )
}

/// Dimension of the commutant algebra {X : X·A_g = A_g·X for all g} of a
/// module, by solving the full linear system.
pub fn commutant_dimension(module: &GModule) -> usize {
    let field = module.field.clone();
    let n = module.dim;
    if module.action.is_empty() {
        return n * n;
    }
    let unknowns = n * n;
    let mut rows: Vec<Vec<u16>> = Vec::new();
    for a in &module.action {
        // (X·A − A·X)[i][j] = Σ_b X[i][b]·A[b][j] − Σ_b A[i][b]·X[b][j]
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![Field::ZERO; unknowns];
                for b in 0..n {
                    let idx_ib = i * n + b;
                    row[idx_ib] = field.add(row[idx_ib], a.get(b, j));
                    let idx_bj = b * n + j;
                    row[idx_bj] = field.sub(row[idx_bj], a.get(i, b));
                }
                rows.push(row);
            }
        }
    }
    let system = FqMatrix::from_rows(field, rows, unknowns);
    system.nullspace().rows
}

pub fn grp(gens: &[&str], degree: usize) -> PermGroup {
    let perms: Vec<Permutation> = gens
        .iter()
        .map(|s| Permutation::parse_cycles(s, degree).unwrap())
        .collect();
    PermGroup::from_generators(perms).unwrap()
}
