use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// All elements of a group, sorted lexicographically by image array, with a
/// BFS word for each element so matrix representations can be evaluated at
/// arbitrary elements.
pub struct ElementTable {
    perms: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverse: Vec<u32>,
    orders: Vec<u64>,
    /// (parent id, generator index) along the BFS tree; the identity is its
    /// own parent.
    word_step: Vec<(u32, u16)>,
    identity: u32,
    /// full-group subgroup lattice, computed at most once
    pub(crate) lattice_cache: std::sync::OnceLock<std::sync::Arc<Vec<crate::subgrp::Sub>>>,
}

impl ElementTable {
    pub(crate) fn build(group: &PermGroup) -> Result<ElementTable> {
        let degree = group.degree();
        let gens = group.generators();
        let id = Permutation::identity(degree);

        // BFS over right multiplication by the generators.
        let mut bfs: Vec<Permutation> = vec![id.clone()];
        let mut parent: Vec<(u32, u16)> = vec![(0, 0)];
        let mut seen: HashMap<Permutation, u32> = HashMap::new();
        seen.insert(id, 0);
        let mut at = 0;
        while at < bfs.len() {
            let current = bfs[at].clone();
            for (gi, g) in gens.iter().enumerate() {
                let next = current.then(g);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), bfs.len() as u32);
                    parent.push((at as u32, gi as u16));
                    bfs.push(next);
                }
            }
            at += 1;
        }
        if bfs.len() as u64 != group.order() {
            return Err(Error::Incomplete(format!(
                "element closure found {} elements but the stabilizer chain says {}",
                bfs.len(),
                group.order()
            )));
        }

        // Sort and remap the BFS tree onto sorted ids.
        let mut order_of: Vec<u32> = (0..bfs.len() as u32).collect();
        order_of.sort_by(|&a, &b| bfs[a as usize].cmp(&bfs[b as usize]));
        let mut sorted_pos = vec![0u32; bfs.len()];
        for (new, &old) in order_of.iter().enumerate() {
            sorted_pos[old as usize] = new as u32;
        }
        let perms: Vec<Permutation> = order_of.iter().map(|&o| bfs[o as usize].clone()).collect();
        let word_step: Vec<(u32, u16)> = order_of
            .iter()
            .map(|&o| {
                let (p, g) = parent[o as usize];
                (sorted_pos[p as usize], g)
            })
            .collect();
        let index: HashMap<Permutation, u32> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverse: Vec<u32> = perms.iter().map(|p| index[&p.inverse()]).collect();
        let orders: Vec<u64> = perms.iter().map(|p| p.order()).collect();
        let identity = index[&Permutation::identity(degree)];

        Ok(ElementTable {
            perms,
            index,
            inverse,
            orders,
            word_step,
            identity,
            lattice_cache: std::sync::OnceLock::new(),
        })
    }

    /// Right-multiplication map x ↦ x·g over the whole table, for hot loops
    /// that would otherwise hash every product.
    pub fn right_mult_map(&self, g: u32) -> Vec<u32> {
        (0..self.len() as u32).map(|x| self.mul(x, g)).collect()
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn perm(&self, id: u32) -> &Permutation {
        &self.perms[id as usize]
    }

    pub fn identity_id(&self) -> u32 {
        self.identity
    }

    pub fn id_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn inverse_id(&self, id: u32) -> u32 {
        self.inverse[id as usize]
    }

    pub fn element_order(&self, id: u32) -> u64 {
        self.orders[id as usize]
    }

    /// id of a·b (apply a, then b).
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.perms[a as usize].then(&self.perms[b as usize]);
        self.index[&p]
    }

    /// id of g⁻¹·a·g.
    pub fn conjugate(&self, a: u32, g: u32) -> u32 {
        let p = self.perms[a as usize].conjugate_by(&self.perms[g as usize]);
        self.index[&p]
    }

    /// Generator-index word multiplying out to the element, in application
    /// order.
    pub fn word(&self, id: u32) -> Vec<u16> {
        let mut steps = Vec::new();
        let mut cur = id;
        while cur != self.identity {
            let (parent, gen) = self.word_step[cur as usize];
            steps.push(gen);
            cur = parent;
        }
        steps.reverse();
        steps
    }
}
