//! Chain complexes of nontrivial p-subgroups: the full poset, the
//! elementary-abelian subposet, and the radical (Bouc) subposet, together
//! with reduced Euler characteristics and the alternating sum of induced
//! trivial characters over chain orbits.
//!
//! Sign convention: a chain orbit with m subgroups carries sign (−1)^m and
//! the empty chain (m = 0, sign +1) contributes the trivial character, so
//! the value at the identity is −χ̃ and the whole character vanishes for a
//! cyclic p-group.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::classes::ClassInfo;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::lattice::{full_lattice, fuse_sub_classes};
use crate::limits::Limits;
use crate::subgrp::{
    full_sub, is_elementary_abelian_sub, normalizer_in, p_core_in, sub_to_permgroup, sylow_in,
    Sub,
};
use crate::table::ElementTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComplexKind {
    Poset,
    ElementaryAbelian,
    Bouc,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 3] = [
        ComplexKind::Poset,
        ComplexKind::ElementaryAbelian,
        ComplexKind::Bouc,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ComplexKind::Poset => "poset",
            ComplexKind::ElementaryAbelian => "elab",
            ComplexKind::Bouc => "bouc",
        }
    }

    pub fn parse(s: &str) -> Result<ComplexKind> {
        match s {
            "poset" => Ok(ComplexKind::Poset),
            "elab" | "elementary_abelian" | "elementary-abelian" => {
                Ok(ComplexKind::ElementaryAbelian)
            }
            "bouc" => Ok(ComplexKind::Bouc),
            other => Err(Error::Parse(format!("unknown complex kind {other:?}"))),
        }
    }
}

/// One orbit of strictly increasing chains of nontrivial p-subgroups. The
/// empty chain appears with no subgroup orders and sign +1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainOrbit {
    pub subgroup_orders: Vec<u64>,
    pub stabilizer_order: u64,
    pub orbit_size: u64,
    pub sign: i64,
}

impl ChainOrbit {
    pub fn length(&self) -> usize {
        self.subgroup_orders.len()
    }
}

/// An integer-valued virtual character listed against the group's conjugacy
/// classes in their canonical order.
#[derive(Debug, Clone)]
pub struct VirtualCharacter {
    pub classes: Vec<ClassInfo>,
    pub values: Vec<i64>,
}

impl VirtualCharacter {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn value_at_identity(&self) -> i64 {
        self.classes
            .iter()
            .zip(&self.values)
            .find(|(c, _)| c.element_order == 1)
            .map(|(_, &v)| v)
            .unwrap_or(0)
    }
}

struct ChainData {
    orbits: Vec<ChainOrbit>,
    /// stabilizer member bitsets, parallel to `orbits`
    stabs: Vec<Sub>,
}

/// All nontrivial p-subgroups of the group: every subgroup of one Sylow
/// p-subgroup, closed under conjugation.
fn all_p_subgroups(
    table: &ElementTable,
    ambient: &Sub,
    p: u64,
    limits: &Limits,
) -> Result<Vec<Sub>> {
    let syl = sylow_in(table, ambient, p);
    if syl.order == 1 {
        return Ok(Vec::new());
    }
    if syl.order > limits.lattice_bound {
        return Err(Error::Capability {
            what: "Sylow subgroup lattice",
            needed: syl.order,
            bound: limits.lattice_bound,
        });
    }
    let lat = full_lattice(table, &syl, limits)?;
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut subs: Vec<Sub> = Vec::new();
    for s in lat.into_iter().filter(|s| s.order > 1) {
        if seen.insert(s.bits.clone()) {
            subs.push(s);
        }
    }
    let mut at = 0;
    while at < subs.len() {
        let current = subs[at].clone();
        at += 1;
        for &g in &ambient.gens {
            let conj = crate::subgrp::conjugate_sub(table, &current, g);
            if seen.insert(conj.bits.clone()) {
                subs.push(conj);
            }
        }
    }
    subs.sort_by(|a, b| (a.order, &a.bits).cmp(&(b.order, &b.bits)));
    Ok(subs)
}

fn kind_filter(
    table: &ElementTable,
    ambient: &Sub,
    sub: &Sub,
    p: u64,
    kind: ComplexKind,
) -> bool {
    match kind {
        ComplexKind::Poset => true,
        ComplexKind::ElementaryAbelian => is_elementary_abelian_sub(table, sub, p),
        ComplexKind::Bouc => {
            let n = normalizer_in(table, ambient, sub);
            let core = p_core_in(table, &n, p);
            core.bits == sub.bits
        }
    }
}

/// The members of the chosen subposet, as a fully expanded list (all
/// conjugates, not just class representatives).
fn kind_subgroups(
    table: &ElementTable,
    ambient: &Sub,
    p: u64,
    kind: ComplexKind,
    limits: &Limits,
) -> Result<Vec<Sub>> {
    let subs = all_p_subgroups(table, ambient, p, limits)?;
    if subs.is_empty() {
        return Ok(subs);
    }
    // filter per conjugacy class; membership in each subposet is invariant
    let classes = fuse_sub_classes(table, &ambient.gens, &subs);
    let mut keep = vec![false; subs.len()];
    for (rep, members) in &classes {
        if kind_filter(table, ambient, &subs[*rep], p, kind) {
            for &m in members {
                keep[m] = true;
            }
        }
    }
    Ok(subs
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(s, _)| s)
        .collect())
}

/// Representatives of the conjugacy classes of subgroups in the subposet.
pub fn p_subgroup_classes(
    group: &PermGroup,
    p: u64,
    kind: ComplexKind,
    limits: &Limits,
) -> Result<Vec<PermGroup>> {
    let table = group.elements(limits)?;
    let ambient = full_sub(&table, group);
    let subs = kind_subgroups(&table, &ambient, p, kind, limits)?;
    let classes = fuse_sub_classes(&table, &ambient.gens, &subs);
    let mut reps: Vec<&Sub> = classes.iter().map(|(rep, _)| &subs[*rep]).collect();
    reps.sort_by(|a, b| (a.order, &a.bits).cmp(&(b.order, &b.bits)));
    Ok(reps
        .into_iter()
        .map(|s| sub_to_permgroup(group, &table, s))
        .collect())
}

fn chain_data(
    group: &PermGroup,
    p: u64,
    kind: ComplexKind,
    limits: &Limits,
) -> Result<ChainData> {
    let table = group.elements(limits)?;
    let ambient = full_sub(&table, group);
    let order = group.order();
    let subs = kind_subgroups(&table, &ambient, p, kind, limits)?;
    let index: HashMap<Vec<u64>, usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.bits.clone(), i))
        .collect();
    // strict supersets of each member
    let supersets: Vec<Vec<usize>> = subs
        .iter()
        .map(|s| {
            subs.iter()
                .enumerate()
                .filter(|(_, t)| t.order > s.order && s.is_subset_of(t))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();

    let mut data = ChainData {
        orbits: vec![ChainOrbit {
            subgroup_orders: Vec::new(),
            stabilizer_order: order,
            orbit_size: 1,
            sign: 1,
        }],
        stabs: vec![ambient.clone()],
    };

    // orbit fusion of candidate subgroup indices under a stabilizer
    let fuse = |cands: &[usize], stab: &Sub| -> Vec<usize> {
        let cand_set: HashSet<usize> = cands.iter().copied().collect();
        let mut seen: HashSet<usize> = HashSet::new();
        let mut reps = Vec::new();
        for &c in cands {
            if seen.contains(&c) {
                continue;
            }
            let mut orbit = vec![c];
            seen.insert(c);
            let mut at = 0;
            while at < orbit.len() {
                let cur = orbit[at];
                at += 1;
                for &g in &stab.gens {
                    let conj = crate::subgrp::conjugate_sub(&table, &subs[cur], g);
                    let j = *index
                        .get(&conj.bits)
                        .expect("conjugate of a subposet member stays in the subposet");
                    debug_assert!(cand_set.contains(&j));
                    if seen.insert(j) {
                        orbit.push(j);
                    }
                }
            }
            let rep = *orbit
                .iter()
                .min_by_key(|&&i| (subs[i].order, &subs[i].bits))
                .expect("orbit nonempty");
            reps.push(rep);
        }
        reps.sort_by_key(|&i| (subs[i].order, subs[i].bits.clone()));
        reps
    };

    // depth-first extension upward from each minimal member, fusing at
    // every level under the current chain stabilizer
    let all_indices: Vec<usize> = (0..subs.len()).collect();
    let bottom_reps = fuse(&all_indices, &ambient);
    let mut stack: Vec<(Vec<usize>, Sub)> = Vec::new();
    for &b in &bottom_reps {
        let stab = normalizer_in(&table, &ambient, &subs[b]);
        stack.push((vec![b], stab));
    }
    while let Some((chain, stab)) = stack.pop() {
        let orders: Vec<u64> = chain.iter().map(|&i| subs[i].order).collect();
        let m = chain.len();
        debug_assert_eq!(order % stab.order, 0);
        data.orbits.push(ChainOrbit {
            subgroup_orders: orders,
            stabilizer_order: stab.order,
            orbit_size: order / stab.order,
            sign: if m % 2 == 0 { 1 } else { -1 },
        });
        data.stabs.push(stab.clone());
        let last = *chain.last().expect("nonempty chain");
        let cands = &supersets[last];
        if cands.is_empty() {
            continue;
        }
        for rep in fuse(cands, &stab) {
            let next_stab = normalizer_in(&table, &stab, &subs[rep]);
            let mut next_chain = chain.clone();
            next_chain.push(rep);
            stack.push((next_chain, next_stab));
        }
    }
    Ok(data)
}

/// Orbit representatives of all strictly increasing chains, including the
/// empty chain.
pub fn chain_orbits(
    group: &PermGroup,
    p: u64,
    kind: ComplexKind,
    limits: &Limits,
) -> Result<Vec<ChainOrbit>> {
    Ok(chain_data(group, p, kind, limits)?.orbits)
}

/// Reduced Euler characteristic of the order complex:
/// χ̃ = −1 + Σ over nonempty chain orbits of (−1)^(m−1) · orbit size.
pub fn reduced_euler_characteristic(
    group: &PermGroup,
    p: u64,
    kind: ComplexKind,
    limits: &Limits,
) -> Result<i64> {
    let orbits = chain_orbits(group, p, kind, limits)?;
    let mut chi: i64 = -1;
    for orbit in &orbits {
        if orbit.length() == 0 {
            continue;
        }
        // (−1)^(m−1) = −sign
        chi -= orbit.sign * orbit.orbit_size as i64;
    }
    Ok(chi)
}

/// The alternating sum over chain orbits of the permutation characters on
/// cosets of the chain stabilizers: value at g is
/// Σ (−1)^m · #fixed cosets of g on G/G_σ.
pub fn steinberg_character(
    group: &PermGroup,
    p: u64,
    kind: ComplexKind,
    limits: &Limits,
) -> Result<VirtualCharacter> {
    let data = chain_data(group, p, kind, limits)?;
    let class_data = group.class_data(limits)?;
    let order = group.order() as i64;
    let ncls = class_data.classes.len();
    let mut values = vec![0i64; ncls];
    for (orbit, stab) in data.orbits.iter().zip(&data.stabs) {
        // count stabilizer members per conjugacy class
        let mut counts = vec![0i64; ncls];
        for e in stab.members() {
            counts[class_data.class_of[e as usize] as usize] += 1;
        }
        let stab_order = stab.order as i64;
        for (c, cls) in class_data.classes.iter().enumerate() {
            // fixed cosets of g on G/H: |H ∩ class(g)| · |C_G(g)| / |H|
            let centralizer_order = order / cls.size as i64;
            let num = counts[c] * centralizer_order;
            debug_assert_eq!(num % stab_order, 0);
            values[c] += orbit.sign * (num / stab_order);
        }
    }
    Ok(VirtualCharacter {
        classes: class_data.classes.clone(),
        values,
    })
}

/// Whether the virtual character of the full poset has any nonzero value.
pub fn steinberg_nonzero(group: &PermGroup, p: u64, limits: &Limits) -> Result<bool> {
    Ok(!steinberg_character(group, p, ComplexKind::Poset, limits)?.is_zero())
}

/// Chain census over all three subposets, one CSV row per orbit:
/// kind, m, subgroup orders joined by "<", stabilizer order, orbit size, sign.
pub fn census_csv(group: &PermGroup, p: u64, limits: &Limits) -> Result<String> {
    let mut out = String::from("kind,m,orders,stabilizer_order,orbit_size,sign\n");
    for kind in ComplexKind::ALL {
        let orbits = chain_orbits(group, p, kind, limits)?;
        for orbit in orbits {
            let orders: Vec<String> =
                orbit.subgroup_orders.iter().map(|o| o.to_string()).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                kind.label(),
                orbit.length(),
                orders.join("<"),
                orbit.stabilizer_order,
                orbit.orbit_size,
                orbit.sign
            ));
        }
    }
    Ok(out)
}
