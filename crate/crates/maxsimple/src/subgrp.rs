//! Subgroup computations inside a materialised element table.
//!
//! Subgroups of a desk-scale group are handled as bitsets over the sorted
//! element table, with a small generating set attached. Everything here is
//! exhaustive and deterministic.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::limits::{p_part, Limits};
use crate::table::ElementTable;

pub(crate) mod bits {
    pub fn new(n: usize) -> Vec<u64> {
        vec![0u64; n.div_ceil(64)]
    }

    #[inline]
    pub fn get(b: &[u64], i: u32) -> bool {
        b[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(b: &mut [u64], i: u32) {
        b[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub fn count(b: &[u64]) -> u64 {
        b.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn and_assign(a: &mut [u64], b: &[u64]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x &= y;
        }
    }

    pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    pub fn ones(b: &[u64]) -> impl Iterator<Item = u32> + '_ {
        b.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    None
                } else {
                    let tz = word.trailing_zeros();
                    word &= word - 1;
                    Some(w as u32 * 64 + tz)
                }
            })
        })
    }
}

/// A subgroup of the table's group: member bitset, order, and a small set of
/// generating element ids.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Sub {
    pub bits: Vec<u64>,
    pub order: u64,
    pub gens: Vec<u32>,
}

impl Sub {
    pub fn contains(&self, id: u32) -> bool {
        bits::get(&self.bits, id)
    }

    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        bits::ones(&self.bits)
    }

    pub fn is_subset_of(&self, other: &Sub) -> bool {
        bits::is_subset(&self.bits, &other.bits)
    }
}

pub(crate) fn trivial_sub(table: &ElementTable) -> Sub {
    let mut b = bits::new(table.len());
    bits::set(&mut b, table.identity_id());
    Sub {
        bits: b,
        order: 1,
        gens: Vec::new(),
    }
}

pub(crate) fn full_sub(table: &ElementTable, group: &PermGroup) -> Sub {
    let mut b = bits::new(table.len());
    for i in 0..table.len() as u32 {
        bits::set(&mut b, i);
    }
    let gens = group
        .generators()
        .iter()
        .map(|g| table.id_of(g).expect("generator in table"))
        .collect();
    Sub {
        bits: b,
        order: table.len() as u64,
        gens,
    }
}

/// Subgroup generated by the given element ids.
pub(crate) fn closure(table: &ElementTable, gen_ids: &[u32]) -> Sub {
    let mut b = bits::new(table.len());
    let id = table.identity_id();
    bits::set(&mut b, id);
    let mut members = vec![id];
    let gens: Vec<u32> = {
        let mut g: Vec<u32> = gen_ids.iter().copied().filter(|&g| g != id).collect();
        g.sort_unstable();
        g.dedup();
        g
    };
    let mut at = 0;
    while at < members.len() {
        let x = members[at];
        at += 1;
        for &g in &gens {
            let y = table.mul(x, g);
            if !bits::get(&b, y) {
                bits::set(&mut b, y);
                members.push(y);
            }
        }
    }
    Sub {
        order: members.len() as u64,
        bits: b,
        gens,
    }
}

/// Recovers a small generating set for a member bitset.
pub(crate) fn sub_from_bits(table: &ElementTable, member_bits: Vec<u64>) -> Sub {
    let order = bits::count(&member_bits);
    let mut gens: Vec<u32> = Vec::new();
    let mut have = trivial_sub(table);
    if have.order == order {
        return Sub {
            bits: member_bits,
            order,
            gens,
        };
    }
    for id in bits::ones(&member_bits) {
        if have.contains(id) {
            continue;
        }
        gens.push(id);
        have = closure(table, &gens);
        if have.order == order {
            break;
        }
    }
    debug_assert_eq!(have.order, order, "bitset was not closed under the product");
    Sub {
        bits: member_bits,
        order,
        gens,
    }
}

pub(crate) fn conjugate_sub(table: &ElementTable, sub: &Sub, g: u32) -> Sub {
    let mut b = bits::new(table.len());
    for e in sub.members() {
        bits::set(&mut b, table.conjugate(e, g));
    }
    let gens = sub.gens.iter().map(|&e| table.conjugate(e, g)).collect();
    Sub {
        bits: b,
        order: sub.order,
        gens,
    }
}

/// Elements of `ambient` normalising `target`.
pub(crate) fn normalizer_in(table: &ElementTable, ambient: &Sub, target: &Sub) -> Sub {
    let mut b = bits::new(table.len());
    let mut n = 0u64;
    for g in ambient.members() {
        if target
            .gens
            .iter()
            .all(|&t| target.contains(table.conjugate(t, g)))
        {
            bits::set(&mut b, g);
            n += 1;
        }
    }
    let _ = n;
    sub_from_bits(table, b)
}

/// Elements of `ambient` commuting with every element of `target`.
pub(crate) fn centralizer_in(table: &ElementTable, ambient: &Sub, target: &Sub) -> Sub {
    let mut b = bits::new(table.len());
    for g in ambient.members() {
        if target
            .gens
            .iter()
            .all(|&t| table.conjugate(t, g) == t)
        {
            bits::set(&mut b, g);
        }
    }
    sub_from_bits(table, b)
}

pub(crate) fn is_normal_in(table: &ElementTable, ambient: &Sub, sub: &Sub) -> bool {
    ambient
        .gens
        .iter()
        .all(|&g| sub.gens.iter().all(|&s| sub.contains(table.conjugate(s, g))))
}

pub(crate) fn is_abelian_sub(table: &ElementTable, sub: &Sub) -> bool {
    for (i, &a) in sub.gens.iter().enumerate() {
        for &b in &sub.gens[i + 1..] {
            if table.mul(a, b) != table.mul(b, a) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn is_elementary_abelian_sub(table: &ElementTable, sub: &Sub, p: u64) -> bool {
    is_abelian_sub(table, sub) && sub.gens.iter().all(|&g| table.element_order(g) == p)
}

/// A Sylow p-subgroup of `ambient`, grown by locating p-elements in the
/// normalizer of the current p-subgroup. Deterministic: always the least
/// usable element id.
pub(crate) fn sylow_in(table: &ElementTable, ambient: &Sub, p: u64) -> Sub {
    let target = p_part(ambient.order, p);
    let mut q = trivial_sub(table);
    while q.order < target {
        let n = if q.order == 1 {
            ambient.clone()
        } else {
            normalizer_in(table, ambient, &q)
        };
        let mut extended = false;
        for e in n.members() {
            let o = table.element_order(e);
            if !o.is_multiple_of(p) {
                continue;
            }
            // power down to the p-part
            let ppart = p_part(o, p);
            let x = if ppart == o {
                e
            } else {
                let perm = table.perm(e).pow(o / ppart);
                table.id_of(&perm).expect("power stays in group")
            };
            if q.contains(x) {
                continue;
            }
            let mut gens = q.gens.clone();
            gens.push(x);
            q = closure(table, &gens);
            extended = true;
            break;
        }
        assert!(extended, "Sylow growth stalled below the p-part");
    }
    q
}

/// O_p of `ambient`: the intersection of all conjugates of one Sylow
/// p-subgroup, verified normal.
pub(crate) fn p_core_in(table: &ElementTable, ambient: &Sub, p: u64) -> Sub {
    let sylow = sylow_in(table, ambient, p);
    if sylow.order == 1 {
        return trivial_sub(table);
    }
    let mut inter = sylow.bits.clone();
    for g in ambient.members() {
        let ginv = table.inverse_id(g);
        let mut next = bits::new(table.len());
        for e in bits::ones(&inter) {
            // e lies in sylow^g iff g e g^{-1} lies in sylow
            if bits::get(&sylow.bits, table.conjugate(e, ginv)) {
                bits::set(&mut next, e);
            }
        }
        inter = next;
        if bits::count(&inter) == 1 {
            break;
        }
    }
    let core = sub_from_bits(table, inter);
    debug_assert!(is_normal_in(table, ambient, &core));
    core
}

/// Normal closure of the given seed elements in `ambient`.
pub(crate) fn normal_closure_in(table: &ElementTable, ambient: &Sub, seeds: &[u32]) -> Sub {
    let mut gens: Vec<u32> = seeds.to_vec();
    gens.sort_unstable();
    gens.dedup();
    let mut current = closure(table, &gens);
    loop {
        let mut added = false;
        let snapshot = current.gens.clone();
        for &g in &ambient.gens {
            for &s in &snapshot {
                let c = table.conjugate(s, g);
                if !current.contains(c) {
                    gens.push(c);
                    current = closure(table, &gens);
                    added = true;
                }
            }
        }
        if !added {
            return current;
        }
    }
}

/// Derived subgroup of `ambient`.
pub(crate) fn derived_in(table: &ElementTable, ambient: &Sub) -> Sub {
    let mut comms = Vec::new();
    for &a in &ambient.gens {
        for &b in &ambient.gens {
            let ainv = table.inverse_id(a);
            let binv = table.inverse_id(b);
            let c = table.mul(table.mul(table.mul(ainv, binv), a), b);
            comms.push(c);
        }
    }
    normal_closure_in(table, ambient, &comms)
}

pub(crate) fn is_solvable_sub(table: &ElementTable, sub: &Sub) -> bool {
    let mut current = sub.clone();
    loop {
        let next = derived_in(table, &current);
        if next.order == 1 {
            return true;
        }
        if next.order == current.order {
            return false;
        }
        current = next;
    }
}

pub(crate) fn sub_to_permgroup(group: &PermGroup, table: &ElementTable, sub: &Sub) -> PermGroup {
    if sub.gens.is_empty() {
        return PermGroup::trivial(group.degree());
    }
    let gens = sub
        .gens
        .iter()
        .map(|&id| table.perm(id).clone())
        .collect();
    let g = PermGroup::from_generators(gens).expect("subgroup generators are valid");
    debug_assert_eq!(g.order(), sub.order);
    g
}

pub(crate) fn permgroup_to_sub(
    table: &ElementTable,
    h: &PermGroup,
) -> Result<Sub> {
    let mut ids = Vec::new();
    for g in h.generators() {
        match table.id_of(g) {
            Some(id) => ids.push(id),
            None => {
                return Err(Error::NotASubgroup(
                    "generator does not lie in the ambient group".into(),
                ))
            }
        }
    }
    let sub = closure(table, &ids);
    if sub.order != h.order() {
        return Err(Error::NotASubgroup(
            "closure in ambient table disagrees with subgroup order".into(),
        ));
    }
    Ok(sub)
}

impl PermGroup {
    fn table_and_sub(
        &self,
        h: &PermGroup,
        limits: &Limits,
    ) -> Result<(Arc<ElementTable>, Sub)> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotASubgroup(
                "argument subgroup is not contained in the group".into(),
            ));
        }
        let table = self.elements(limits)?;
        let sub = permgroup_to_sub(&table, h)?;
        Ok((table, sub))
    }

    /// A Sylow p-subgroup; the trivial group when p does not divide |G|.
    pub fn sylow(&self, p: u64, limits: &Limits) -> Result<PermGroup> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        let sub = sylow_in(&table, &ambient, p);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    pub fn centralizer(&self, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        let (table, target) = self.table_and_sub(h, limits)?;
        let ambient = full_sub(&table, self);
        let sub = centralizer_in(&table, &ambient, &target);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    pub fn normalizer(&self, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        let (table, target) = self.table_and_sub(h, limits)?;
        let ambient = full_sub(&table, self);
        let sub = normalizer_in(&table, &ambient, &target);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    /// O_p(G): the largest normal p-subgroup.
    pub fn p_core(&self, p: u64, limits: &Limits) -> Result<PermGroup> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        let sub = p_core_in(&table, &ambient, p);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    /// O^p(G): the smallest normal subgroup with p-group quotient, computed
    /// as the normal closure of the p'-parts of class representatives.
    pub fn p_residual(&self, p: u64, limits: &Limits) -> Result<PermGroup> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        let classes = self.class_data(limits)?;
        let mut seeds = Vec::new();
        for c in &classes.classes {
            let o = c.element_order;
            let ppart = p_part(o, p);
            let pprime = c.representative.pow(ppart);
            if !pprime.is_identity() {
                seeds.push(table.id_of(&pprime).expect("power stays in group"));
            }
        }
        if seeds.is_empty() {
            return Ok(PermGroup::trivial(self.degree()));
        }
        let sub = normal_closure_in(&table, &ambient, &seeds);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    pub fn normal_closure(&self, h: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        let (table, target) = self.table_and_sub(h, limits)?;
        let ambient = full_sub(&table, self);
        let sub = normal_closure_in(&table, &ambient, &target.gens);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    pub fn derived_subgroup(&self, limits: &Limits) -> Result<PermGroup> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        let sub = derived_in(&table, &ambient);
        Ok(sub_to_permgroup(self, &table, &sub))
    }

    pub fn is_solvable(&self, limits: &Limits) -> Result<bool> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        Ok(is_solvable_sub(&table, &ambient))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn is_nilpotent(&self, limits: &Limits) -> Result<bool> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        for (p, _) in crate::limits::factorize(self.order()) {
            let syl = sylow_in(&table, &ambient, p);
            if !is_normal_in(&table, &ambient, &syl) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every chief factor is a p-group or a p'-group.
    pub fn is_p_solvable(&self, p: u64, limits: &Limits) -> Result<bool> {
        if self.order() == 1 {
            return Ok(true);
        }
        if self.is_solvable(limits)? {
            return Ok(true);
        }
        let minimals = self.minimal_normal_subgroups(limits)?;
        let n = &minimals[0];
        let abelian = n.is_abelian();
        if !abelian && n.order() % p == 0 {
            return Ok(false);
        }
        let quotient = self.quotient(n, limits)?;
        quotient.is_p_solvable(p, limits)
    }

    /// Inclusion-minimal members of the set of normal closures of single
    /// class representatives.
    pub fn minimal_normal_subgroups(&self, limits: &Limits) -> Result<Vec<PermGroup>> {
        let table = self.elements(limits)?;
        let ambient = full_sub(&table, self);
        let classes = self.class_data(limits)?;
        let mut closures: Vec<Sub> = Vec::new();
        for c in &classes.classes {
            if c.representative.is_identity() {
                continue;
            }
            let id = table.id_of(&c.representative).expect("class rep in table");
            let ncl = normal_closure_in(&table, &ambient, &[id]);
            if !closures.iter().any(|s| s.bits == ncl.bits) {
                closures.push(ncl);
            }
        }
        let minimal: Vec<Sub> = closures
            .iter()
            .filter(|s| {
                !closures
                    .iter()
                    .any(|t| t.order < s.order && t.is_subset_of(s))
            })
            .cloned()
            .collect();
        let mut out: Vec<(Vec<u64>, PermGroup)> = minimal
            .iter()
            .map(|s| (s.bits.clone(), sub_to_permgroup(self, &table, s)))
            .collect();
        out.sort_by(|a, b| (a.1.order(), &a.0).cmp(&(b.1.order(), &b.0)));
        Ok(out.into_iter().map(|(_, g)| g).collect())
    }

    /// True when the group is nonabelian simple.
    pub fn is_simple_nonabelian(&self, limits: &Limits) -> Result<bool> {
        if self.order() == 1 || self.is_abelian() {
            return Ok(false);
        }
        let minimals = self.minimal_normal_subgroups(limits)?;
        Ok(minimals.len() == 1 && minimals[0].order() == self.order())
    }

    /// The product of the nonabelian simple direct factors, of order
    /// divisible by p, of the nonabelian minimal normal subgroups.
    ///
    /// Requires O_p(G) = 1 and Φ(G) = 1, under which the generalized Fitting
    /// subgroup is the socle and every component is a simple direct factor of
    /// a minimal normal subgroup.
    pub fn p_layer(&self, p: u64, limits: &Limits) -> Result<PermGroup> {
        if self.p_core(p, limits)?.order() != 1 {
            return Err(Error::Precondition(
                "p-layer extraction requires a trivial p-core".into(),
            ));
        }
        if self.frattini(limits)?.order() != 1 {
            return Err(Error::Precondition(
                "p-layer extraction requires a trivial Frattini subgroup".into(),
            ));
        }
        let mut x = PermGroup::trivial(self.degree());
        for n in self.minimal_normal_subgroups(limits)? {
            if n.is_abelian() {
                continue;
            }
            for factor in n.minimal_normal_subgroups(limits)? {
                if factor.order() % p == 0 {
                    x = x.join(&factor)?;
                }
            }
        }
        Ok(x)
    }

    /// Components of the socle (no p-divisibility filter); valid under the
    /// same hypotheses as `p_layer`.
    pub fn socle_components(&self, limits: &Limits) -> Result<Vec<PermGroup>> {
        let mut out = Vec::new();
        for n in self.minimal_normal_subgroups(limits)? {
            if n.is_abelian() {
                continue;
            }
            out.extend(n.minimal_normal_subgroups(limits)?);
        }
        Ok(out)
    }

    /// The Fitting subgroup: the product of all O_q(G).
    pub fn fitting_subgroup(&self, limits: &Limits) -> Result<PermGroup> {
        let mut f = PermGroup::trivial(self.degree());
        for (q, _) in crate::limits::factorize(self.order()) {
            f = f.join(&self.p_core(q, limits)?)?;
        }
        Ok(f)
    }
}
