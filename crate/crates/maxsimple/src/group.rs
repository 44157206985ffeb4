use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::perm::Permutation;
use crate::table::ElementTable;

/// A finite permutation group with a verified stabilizer chain.
///
/// The chain is built by a deterministic Schreier–Sims pass: base points are
/// always the smallest moved points available, orbits are explored in BFS
/// order with generators in their given order, so the same generators always
/// produce bit-identical internal state.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    base: Vec<usize>,
    levels: Vec<Level>,
    strong_gens: Vec<Permutation>,
    order: u64,
    pub(crate) table_cache: OnceLock<Arc<ElementTable>>,
    pub(crate) class_cache: OnceLock<Arc<crate::classes::ClassData>>,
}

struct Level {
    point: usize,
    /// transversal[v], when present, maps `point` to `v`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl PermGroup {
    /// Builds the group generated by `gens`, verifying the stabilizer chain.
    pub fn from_generators(gens: Vec<Permutation>) -> Result<PermGroup> {
        if gens.is_empty() {
            return Err(Error::MalformedPermutation(
                "at least one generator (possibly the identity) is required to fix the degree"
                    .into(),
            ));
        }
        let degree = gens[0].degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::MalformedPermutation(format!(
                    "generators of mixed degrees {} and {}",
                    degree,
                    g.degree()
                )));
            }
        }
        let mut kept: Vec<Permutation> = Vec::new();
        for g in &gens {
            if !g.is_identity() && !kept.contains(g) {
                kept.push(g.clone());
            }
        }

        let mut builder = ChainBuilder {
            degree,
            levels: Vec::new(),
            strong: Vec::new(),
        };
        for g in &kept {
            builder.add_strong(g.clone());
        }
        builder.close();

        let order = builder.order()?;
        let base: Vec<usize> = builder.levels.iter().map(|l| l.point).collect();
        let strong_gens = builder.strong.clone();
        let group = PermGroup {
            degree,
            generators: kept,
            base,
            levels: builder.into_levels(),
            strong_gens,
            order,
            table_cache: OnceLock::new(),
            class_cache: OnceLock::new(),
        };
        debug_assert!(group.verify_chain());
        Ok(group)
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(vec![Permutation::identity(degree.max(1))])
            .expect("trivial group always builds")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Strips `g` through the chain; `g` is a member iff the residue is the
    /// identity.
    pub fn sift(&self, g: &Permutation) -> Permutation {
        let mut h = g.clone();
        for level in &self.levels {
            let u = h.image(level.point);
            match &level.transversal[u] {
                Some(t) => h = h.then(&t.inverse()),
                None => return h,
            }
        }
        h
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Chain self-check: generators sift to the identity and the order equals
    /// the product of basic orbit lengths.
    pub fn verify_chain(&self) -> bool {
        let mut prod: u64 = 1;
        for level in &self.levels {
            prod = match prod.checked_mul(level.orbit.len() as u64) {
                Some(p) => p,
                None => return false,
            };
        }
        prod == self.order && self.generators.iter().all(|g| self.sift(g).is_identity())
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Sorted table of all elements; gated by `limits.element_bound`.
    pub fn elements(&self, limits: &Limits) -> Result<Arc<ElementTable>> {
        if self.order > limits.element_bound {
            return Err(Error::Capability {
                what: "element table",
                needed: self.order,
                bound: limits.element_bound,
            });
        }
        if let Some(t) = self.table_cache.get() {
            return Ok(t.clone());
        }
        let table = Arc::new(ElementTable::build(self)?);
        let _ = self.table_cache.set(table.clone());
        Ok(self.table_cache.get().expect("just set").clone())
    }

    /// The action of this group's generators on the right cosets of `h`,
    /// returned as (one permutation per generator, number of cosets).
    pub fn coset_action(
        &self,
        h: &PermGroup,
        limits: &Limits,
    ) -> Result<(Vec<Permutation>, usize)> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotASubgroup(
                "coset action requires H <= G".to_string(),
            ));
        }
        let h_table = h.elements(limits)?;
        let h_elems: Vec<&Permutation> = h_table.perms().iter().collect();
        let index = (self.order / h.order()) as usize;
        if self.order > limits.element_bound {
            return Err(Error::Capability {
                what: "coset enumeration",
                needed: self.order,
                bound: limits.element_bound,
            });
        }

        let canonical = |x: &Permutation| -> Permutation {
            h_elems
                .iter()
                .map(|h| h.then(x))
                .min()
                .expect("H nonempty")
        };

        let mut reps: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        let mut rep_index = std::collections::HashMap::new();
        rep_index.insert(reps[0].clone(), 0usize);
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); self.generators.len()];
        let mut at = 0;
        while at < reps.len() {
            let r = reps[at].clone();
            for (gi, g) in self.generators.iter().enumerate() {
                let moved = canonical(&r.then(g));
                let idx = match rep_index.get(&moved) {
                    Some(&i) => i,
                    None => {
                        reps.push(moved.clone());
                        rep_index.insert(moved, reps.len() - 1);
                        reps.len() - 1
                    }
                };
                images[gi].push(idx as u32);
            }
            at += 1;
        }
        debug_assert_eq!(reps.len(), index);
        let perms = images
            .into_iter()
            .map(|im| Permutation::from_images(im).expect("coset action is a bijection"))
            .collect();
        Ok((perms, index))
    }

    /// The quotient G/N realised by the permutation action on cosets of the
    /// normal subgroup `n`.
    pub fn quotient(&self, n: &PermGroup, limits: &Limits) -> Result<PermGroup> {
        let (images, count) = self.coset_action(n, limits)?;
        if count == 1 {
            return Ok(PermGroup::trivial(1));
        }
        PermGroup::from_generators(images)
    }

    /// Direct product acting on the disjoint union of the two point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
        let da = a.degree;
        let db = b.degree;
        let mut gens = Vec::new();
        for g in &a.generators {
            let mut im: Vec<u32> = (0..(da + db) as u32).collect();
            for i in 0..da {
                im[i] = g.image(i) as u32;
            }
            gens.push(Permutation::from_images(im).expect("shifted generator"));
        }
        for g in &b.generators {
            let mut im: Vec<u32> = (0..(da + db) as u32).collect();
            for i in 0..db {
                im[da + i] = (da + g.image(i)) as u32;
            }
            gens.push(Permutation::from_images(im).expect("shifted generator"));
        }
        if gens.is_empty() {
            return PermGroup::trivial(da + db);
        }
        PermGroup::from_generators(gens).expect("direct product generators are valid")
    }

    /// The subgroup generated by both groups' generators.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(Error::MalformedPermutation(
                "join requires equal degrees".into(),
            ));
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        if gens.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::from_generators(gens)
    }
}

struct ChainBuilder {
    degree: usize,
    levels: Vec<BuildLevel>,
    strong: Vec<Permutation>,
}

struct BuildLevel {
    point: usize,
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl ChainBuilder {
    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let u = h.image(level.point);
            match &level.transversal[u] {
                Some(t) => h = h.then(&t.inverse()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn add_strong(&mut self, g: Permutation) {
        let (res, lvl) = self.sift_from(&g, 0);
        if res.is_identity() {
            return;
        }
        if lvl == self.levels.len() {
            let point = res
                .smallest_moved_point()
                .expect("non-identity residue moves a point");
            self.levels.push(BuildLevel {
                point,
                transversal: {
                    let mut t = vec![None; self.degree];
                    t[point] = Some(Permutation::identity(self.degree));
                    t
                },
                orbit: vec![point],
            });
        }
        self.strong.push(res);
    }

    /// Level i uses every strong generator fixing the base points of levels
    /// 0..i. Iterates orbit closure plus Schreier-generator sifting until no
    /// level changes.
    fn close(&mut self) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.levels.len() {
                let gens: Vec<Permutation> = self
                    .strong
                    .iter()
                    .filter(|s| self.levels[..i].iter().all(|l| s.image(l.point) == l.point))
                    .cloned()
                    .collect();

                // rebuild the orbit of this level's point under `gens`
                let point = self.levels[i].point;
                let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
                transversal[point] = Some(Permutation::identity(self.degree));
                let mut orbit = vec![point];
                let mut at = 0;
                let mut schreier: Vec<Permutation> = Vec::new();
                while at < orbit.len() {
                    let u = orbit[at];
                    at += 1;
                    let tu = transversal[u].clone().expect("orbit point has transversal");
                    for s in &gens {
                        let v = s.image(u);
                        if transversal[v].is_none() {
                            transversal[v] = Some(tu.then(s));
                            orbit.push(v);
                        } else {
                            let tv = transversal[v].as_ref().expect("checked");
                            let gen = tu.then(s).then(&tv.inverse());
                            if !gen.is_identity() {
                                schreier.push(gen);
                            }
                        }
                    }
                }
                if orbit.len() != self.levels[i].orbit.len() {
                    changed = true;
                }
                self.levels[i].transversal = transversal;
                self.levels[i].orbit = orbit;

                for sg in schreier {
                    let (res, lvl) = self.sift_from(&sg, i + 1);
                    if !res.is_identity() {
                        if lvl == self.levels.len() {
                            let point = res
                                .smallest_moved_point()
                                .expect("non-identity residue moves a point");
                            self.levels.push(BuildLevel {
                                point,
                                transversal: {
                                    let mut t = vec![None; self.degree];
                                    t[point] = Some(Permutation::identity(self.degree));
                                    t
                                },
                                orbit: vec![point],
                            });
                        }
                        self.strong.push(res);
                        changed = true;
                    }
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        // convert build levels into final levels lazily; done by caller
    }

    fn order(&self) -> Result<u64> {
        let mut prod: u64 = 1;
        for l in &self.levels {
            prod = prod.checked_mul(l.orbit.len() as u64).ok_or(Error::Capability {
                what: "group order",
                needed: u64::MAX,
                bound: u64::MAX,
            })?;
        }
        Ok(prod)
    }
}

impl From<BuildLevel> for Level {
    fn from(b: BuildLevel) -> Level {
        Level {
            point: b.point,
            transversal: b.transversal,
            orbit: b.orbit,
        }
    }
}

// ChainBuilder keeps BuildLevel; PermGroup stores Level. The conversion is a
// straight move of the same fields.
impl ChainBuilder {
    fn into_levels(self) -> Vec<Level> {
        self.levels.into_iter().map(Level::from).collect()
    }
}
