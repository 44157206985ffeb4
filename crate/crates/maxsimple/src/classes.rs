use std::sync::Arc;

use crate::error::Result;
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::perm::Permutation;

/// One conjugacy class: its lexicographically least element, size, and the
/// common element order.
#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
}

impl ClassInfo {
    /// A class is p-regular when the element order is coprime to p.
    pub fn is_p_regular(&self, p: u64) -> bool {
        !self.element_order.is_multiple_of(p)
    }
}

pub struct ClassData {
    pub classes: Vec<ClassInfo>,
    /// Class index of every element id in the group's element table.
    pub class_of: Vec<u32>,
}

impl PermGroup {
    /// Conjugacy classes with lexicographically least representatives,
    /// ordered by representative. Cached.
    pub fn class_data(&self, limits: &Limits) -> Result<Arc<ClassData>> {
        if let Some(c) = self.class_cache.get() {
            return Ok(c.clone());
        }
        let table = self.elements(limits)?;
        let n = table.len();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();

        // gens as table ids for the conjugation orbit walk
        let gen_ids: Vec<u32> = self
            .generators()
            .iter()
            .map(|g| table.id_of(g).expect("generator is in its own group"))
            .collect();

        for start in 0..n as u32 {
            if class_of[start as usize] != u32::MAX {
                continue;
            }
            let class_idx = classes.len() as u32;
            let mut orbit = vec![start];
            class_of[start as usize] = class_idx;
            let mut at = 0;
            while at < orbit.len() {
                let x = orbit[at];
                at += 1;
                for &g in &gen_ids {
                    let y = table.conjugate(x, g);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = class_idx;
                        orbit.push(y);
                    }
                }
            }
            classes.push(ClassInfo {
                representative: table.perm(start).clone(),
                size: orbit.len() as u64,
                element_order: table.element_order(start),
            });
        }

        let data = Arc::new(ClassData { classes, class_of });
        let _ = self.class_cache.set(data.clone());
        Ok(self.class_cache.get().expect("just set").clone())
    }

    /// One entry per class, by ascending representative.
    pub fn conjugacy_classes(&self, limits: &Limits) -> Result<Vec<ClassInfo>> {
        Ok(self.class_data(limits)?.classes.clone())
    }

    pub fn p_regular_class_count(&self, p: u64, limits: &Limits) -> Result<u64> {
        Ok(self
            .class_data(limits)?
            .classes
            .iter()
            .filter(|c| c.is_p_regular(p))
            .count() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(gens: &[&str], degree: usize) -> PermGroup {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree).unwrap())
            .collect();
        PermGroup::from_generators(perms).unwrap()
    }

    #[test]
    fn s3_classes() {
        let limits = Limits::default();
        let g = grp(&["(0 1)", "(0 1 2)"], 3);
        let classes = g.conjugacy_classes(&limits).unwrap();
        let mut sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        // first class is the identity (lex-least overall)
        assert!(classes[0].representative.is_identity());
        assert_eq!(classes[0].size, 1);
    }

    #[test]
    fn c4_is_abelian() {
        let limits = Limits::default();
        let g = grp(&["(0 1 2 3)"], 4);
        let classes = g.conjugacy_classes(&limits).unwrap();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|c| c.size == 1));
    }

    #[test]
    fn class_sizes_sum_and_divide() {
        let limits = Limits::default();
        let g = grp(&["(0 1 2 3 4)", "(0 1 2)"], 5);
        let classes = g.conjugacy_classes(&limits).unwrap();
        let mut sizes: Vec<u64> = classes.iter().map(|c| c.size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 12, 12, 15, 20]);
        assert_eq!(sizes.iter().sum::<u64>(), 60);
        for s in sizes {
            assert_eq!(60 % s, 0);
        }
    }

    #[test]
    fn p_regular_counts() {
        let limits = Limits::default();
        let a5 = grp(&["(0 1 2 3 4)", "(0 1 2)"], 5);
        assert_eq!(a5.p_regular_class_count(2, &limits).unwrap(), 4);
        assert_eq!(a5.p_regular_class_count(5, &limits).unwrap(), 3);
        assert_eq!(a5.p_regular_class_count(3, &limits).unwrap(), 4);
    }
}
