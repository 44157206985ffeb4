//! Full subgroup lattice by bottom-up cyclic extension.
//!
//! Seeds are the cyclic subgroups of prime-power order; every subgroup is a
//! chain of joins of those, so iterating joins to a fixpoint enumerates the
//! whole lattice. Gated by `Limits::lattice_bound`.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::{factorize, p_part, Limits};
use crate::subgrp::{
    bits, centralizer_in, closure, full_sub, is_abelian_sub, permgroup_to_sub, sub_from_bits,
    sub_to_permgroup, sylow_in, trivial_sub, Sub,
};
use crate::table::ElementTable;

/// All cyclic subgroups of prime-power order, deduplicated, sorted by
/// (order, member bitset).
pub(crate) fn cyclic_prime_power_seeds(table: &ElementTable, ambient: &Sub) -> Vec<Sub> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for e in ambient.members() {
        let o = table.element_order(e);
        if o == 1 {
            continue;
        }
        for (r, v) in factorize(o) {
            let rpow = r.pow(v);
            let gen = if rpow == o {
                e
            } else {
                let perm = table.perm(e).pow(o / rpow);
                table.id_of(&perm).expect("power stays in group")
            };
            let c = closure(table, &[gen]);
            if seen.insert(c.bits.clone()) {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| (a.order, &a.bits).cmp(&(b.order, &b.bits)));
    out
}

/// Join of a subgroup with a seed, with an early exit: any subgroup of more
/// than half the ambient order is the ambient group itself. Generator
/// products go through precomputed right-multiplication maps.
fn join_with_seed(
    table: &ElementTable,
    ambient: &Sub,
    h: &Sub,
    c: &Sub,
    mult_maps: &HashMap<u32, Vec<u32>>,
) -> Sub {
    let mut gens: Vec<u32> = h.gens.clone();
    gens.extend_from_slice(&c.gens);
    gens.sort_unstable();
    gens.dedup();
    let maps: Vec<&Vec<u32>> = gens
        .iter()
        .map(|g| mult_maps.get(g).expect("lattice generators have maps"))
        .collect();

    let half = ambient.order / 2;
    let mut b = bits::new(table.len());
    let id = table.identity_id();
    bits::set(&mut b, id);
    let mut members = vec![id];
    let mut at = 0;
    while at < members.len() {
        let x = members[at];
        at += 1;
        for map in &maps {
            let y = map[x as usize];
            if !bits::get(&b, y) {
                bits::set(&mut b, y);
                members.push(y);
                if members.len() as u64 > half {
                    return ambient.clone();
                }
            }
        }
    }
    Sub {
        order: members.len() as u64,
        bits: b,
        gens,
    }
}

/// Every subgroup of `ambient`, including the trivial subgroup and `ambient`
/// itself, sorted by (order, bitset). The full-group lattice is cached on
/// the element table.
pub(crate) fn full_lattice(
    table: &ElementTable,
    ambient: &Sub,
    limits: &Limits,
) -> Result<Vec<Sub>> {
    if ambient.order > limits.lattice_bound {
        return Err(Error::Capability {
            what: "subgroup lattice",
            needed: ambient.order,
            bound: limits.lattice_bound,
        });
    }
    let is_full_group = ambient.order == table.len() as u64;
    if is_full_group {
        if let Some(cached) = table.lattice_cache.get() {
            return Ok(cached.as_ref().clone());
        }
    }
    let seeds = cyclic_prime_power_seeds(table, ambient);
    let mut mult_maps: HashMap<u32, Vec<u32>> = HashMap::new();
    for s in &seeds {
        for &g in &s.gens {
            mult_maps
                .entry(g)
                .or_insert_with(|| table.right_mult_map(g));
        }
    }
    let mut subs: Vec<Sub> = vec![trivial_sub(table)];
    let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
    index.insert(subs[0].bits.clone(), 0);
    for s in &seeds {
        if !index.contains_key(&s.bits) {
            index.insert(s.bits.clone(), subs.len());
            subs.push(s.clone());
        }
    }
    if !index.contains_key(&ambient.bits) {
        index.insert(ambient.bits.clone(), subs.len());
        subs.push(ambient.clone());
    }

    let mut at = 0;
    while at < subs.len() {
        let h = subs[at].clone();
        if h.order < ambient.order {
            for c in &seeds {
                if c.is_subset_of(&h) {
                    continue;
                }
                let j = join_with_seed(table, ambient, &h, c, &mult_maps);
                if !index.contains_key(&j.bits) {
                    index.insert(j.bits.clone(), subs.len());
                    subs.push(j);
                }
            }
        }
        at += 1;
    }
    subs.sort_by(|a, b| (a.order, &a.bits).cmp(&(b.order, &b.bits)));
    if is_full_group {
        let _ = table
            .lattice_cache
            .set(std::sync::Arc::new(subs.clone()));
    }
    Ok(subs)
}

/// Indices of the maximal subgroups within a full lattice.
pub(crate) fn maximal_subgroup_indices(subs: &[Sub], ambient_order: u64) -> Vec<usize> {
    let mut out = Vec::new();
    for (i, m) in subs.iter().enumerate() {
        if m.order == ambient_order {
            continue;
        }
        let mut covered = false;
        for k in subs.iter() {
            if k.order > m.order && k.order < ambient_order && m.is_subset_of(k) {
                covered = true;
                break;
            }
        }
        if !covered {
            out.push(i);
        }
    }
    out
}

/// Orbits of a list of subgroups under conjugation by the given elements.
/// Returns (representative index, orbit indices) pairs; representatives are
/// the least (order, bitset) member of each orbit.
pub(crate) fn fuse_sub_classes(
    table: &ElementTable,
    conjugators: &[u32],
    subs: &[Sub],
) -> Vec<(usize, Vec<usize>)> {
    let index: HashMap<Vec<u64>, usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits.clone(), i))
        .collect();
    let mut orbit_of = vec![usize::MAX; subs.len()];
    let mut orbits: Vec<(usize, Vec<usize>)> = Vec::new();
    for start in 0..subs.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let orbit_idx = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = orbit_idx;
        let mut at = 0;
        while at < members.len() {
            let s = members[at];
            at += 1;
            for &g in conjugators {
                let conj = crate::subgrp::conjugate_sub(table, &subs[s], g);
                if let Some(&t) = index.get(&conj.bits) {
                    if orbit_of[t] == usize::MAX {
                        orbit_of[t] = orbit_idx;
                        members.push(t);
                    }
                }
            }
        }
        let rep = *members
            .iter()
            .min_by(|&&a, &&b| {
                (subs[a].order, &subs[a].bits).cmp(&(subs[b].order, &subs[b].bits))
            })
            .expect("orbit nonempty");
        orbits.push((rep, members));
    }
    orbits
}

/// Representatives of the container-conjugacy classes of abelian p-subgroups
/// of `container` (including the trivial subgroup).
pub(crate) fn abelian_p_subgroup_classes(
    table: &ElementTable,
    container: &Sub,
    p: u64,
    limits: &Limits,
) -> Result<Vec<Sub>> {
    let syl = sylow_in(table, container, p);
    let lat = full_lattice(table, &syl, limits)?;
    let abelian: Vec<Sub> = lat
        .into_iter()
        .filter(|s| is_abelian_sub(table, s))
        .collect();
    let orbits = fuse_sub_classes(table, &container.gens, &abelian);
    Ok(orbits.into_iter().map(|(rep, _)| abelian[rep].clone()).collect())
}

/// A maximal abelian p-subgroup is one that is a Sylow p-subgroup of its own
/// centralizer: no p-element outside it commutes with all of it.
pub(crate) fn is_maximal_abelian_p(
    table: &ElementTable,
    container: &Sub,
    a: &Sub,
    p: u64,
) -> bool {
    let cent = centralizer_in(table, container, a);
    p_part(cent.order, p) == a.order
}

impl PermGroup {
    /// Φ(G): intersection of all maximal subgroups, from the full lattice.
    pub fn frattini(&self, limits: &Limits) -> Result<PermGroup> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        if self.order() == 1 {
            return Ok(PermGroup::trivial(self.degree()));
        }
        let lat = full_lattice(&table, &ambient, limits)?;
        let maximal = maximal_subgroup_indices(&lat, self.order());
        let mut inter = ambient.bits.clone();
        for &i in &maximal {
            bits::and_assign(&mut inter, &lat[i].bits);
        }
        let sub = sub_from_bits(&table, inter);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    /// Largest order of a maximal abelian p-subgroup A of `container` with
    /// A containing a conjugate of `must_contain` (when given).
    pub fn max_abelian_p_order(
        &self,
        p: u64,
        container: &PermGroup,
        must_contain: Option<&PermGroup>,
        limits: &Limits,
    ) -> Result<u64> {
        if !container.is_subgroup_of(self) {
            return Err(Error::NotASubgroup(
                "container must be a subgroup of the ambient group".into(),
            ));
        }
        let table = self.elements(limits)?;
        let container_sub = permgroup_to_sub(&table, container)?;
        let must = match must_contain {
            None => None,
            Some(b) => {
                if !b.is_subgroup_of(container) {
                    return Err(Error::Precondition(
                        "constraint subgroup must lie in the container".into(),
                    ));
                }
                if !b.is_abelian() || p_part(b.order(), p) != b.order() {
                    return Err(Error::Precondition(
                        "constraint subgroup must be an abelian p-group".into(),
                    ));
                }
                Some(permgroup_to_sub(&table, b)?)
            }
        };
        // all conjugates of the constraint under the container
        let must_orbit: Vec<Vec<u64>> = match &must {
            None => Vec::new(),
            Some(m) => {
                let mut seen = HashSet::new();
                let mut orbit = vec![m.bits.clone()];
                seen.insert(m.bits.clone());
                let mut subs = vec![m.clone()];
                let mut at = 0;
                while at < subs.len() {
                    let s = subs[at].clone();
                    at += 1;
                    for &g in &container_sub.gens {
                        let c = crate::subgrp::conjugate_sub(&table, &s, g);
                        if seen.insert(c.bits.clone()) {
                            orbit.push(c.bits.clone());
                            subs.push(c);
                        }
                    }
                }
                orbit
            }
        };

        let classes = abelian_p_subgroup_classes(&table, &container_sub, p, limits)?;
        let mut best: Option<u64> = None;
        for a in &classes {
            if !is_maximal_abelian_p(&table, &container_sub, a, p) {
                continue;
            }
            if !must_orbit.is_empty() {
                // the class rep is one container-conjugate; test the
                // constraint against the whole orbit of A instead of A alone
                let a_orbit = {
                    let mut seen = HashSet::new();
                    seen.insert(a.bits.clone());
                    let mut subs = vec![a.clone()];
                    let mut at = 0;
                    while at < subs.len() {
                        let s = subs[at].clone();
                        at += 1;
                        for &g in &container_sub.gens {
                            let c = crate::subgrp::conjugate_sub(&table, &s, g);
                            if seen.insert(c.bits.clone()) {
                                subs.push(c);
                            }
                        }
                    }
                    subs
                };
                let ok = a_orbit
                    .iter()
                    .any(|av| must_orbit.iter().any(|mb| bits::is_subset(mb, &av.bits)));
                if !ok {
                    continue;
                }
            }
            best = Some(best.map_or(a.order, |b: u64| b.max(a.order)));
        }
        best.ok_or_else(|| {
            Error::Precondition("no maximal abelian p-subgroup satisfies the constraint".into())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn grp(gens: &[&str], degree: usize) -> PermGroup {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree).unwrap())
            .collect();
        PermGroup::from_generators(perms).unwrap()
    }

    fn q8() -> PermGroup {
        // regular action: 0:1, 1:i, 2:-1, 3:-i, 4:j, 5:k, 6:-j, 7:-k
        grp(&["(0 1 2 3)(4 7 6 5)", "(0 4 2 6)(1 5 3 7)"], 8)
    }

    #[test]
    fn q8_has_order_8_and_frattini_2() {
        let limits = Limits::default();
        let g = q8();
        assert_eq!(g.order(), 8);
        assert_eq!(g.frattini(&limits).unwrap().order(), 2);
    }

    #[test]
    fn frattini_of_c4_and_s3() {
        let limits = Limits::default();
        let c4 = grp(&["(0 1 2 3)"], 4);
        assert_eq!(c4.frattini(&limits).unwrap().order(), 2);
        let s3 = grp(&["(0 1)", "(0 1 2)"], 3);
        assert_eq!(s3.frattini(&limits).unwrap().order(), 1);
    }

    #[test]
    fn q8_lattice_subgroup_count() {
        let limits = Limits::default();
        let g = q8();
        let table = g.elements(&limits).unwrap();
        let ambient = full_sub(&table, &g);
        let lat = full_lattice(&table, &ambient, &limits).unwrap();
        // 1, Z, three C4, Q8
        assert_eq!(lat.len(), 6);
    }

    #[test]
    fn s4_lattice_subgroup_count() {
        let limits = Limits::default();
        let g = grp(&["(0 1)", "(0 1 2 3)"], 4);
        let table = g.elements(&limits).unwrap();
        let ambient = full_sub(&table, &g);
        let lat = full_lattice(&table, &ambient, &limits).unwrap();
        assert_eq!(lat.len(), 30);
    }

    #[test]
    fn max_abelian_in_d8() {
        let limits = Limits::default();
        let d8 = grp(&["(0 1 2 3)", "(1 3)"], 4);
        assert_eq!(d8.order(), 8);
        let v = d8.max_abelian_p_order(2, &d8, None, &limits).unwrap();
        assert_eq!(v, 4);
    }

    #[test]
    fn max_abelian_in_a5() {
        let limits = Limits::default();
        let a5 = grp(&["(0 1 2 3 4)", "(0 1 2)"], 5);
        let v = a5.max_abelian_p_order(2, &a5, None, &limits).unwrap();
        assert_eq!(v, 4);
    }

    #[test]
    fn lattice_bound_is_enforced() {
        let limits = Limits {
            lattice_bound: 10,
            ..Limits::default()
        };
        let s4 = grp(&["(0 1)", "(0 1 2 3)"], 4);
        assert!(matches!(
            s4.frattini(&limits),
            Err(Error::Capability { .. })
        ));
    }
}
