//! Modules over group algebras and their composition factors.
//!
//! A [`GModule`] is a right module: vectors are rows, generators act as
//! invertible matrices, and ρ(gh) = ρ(g)ρ(h) with the crate's left-to-right
//! permutation composition.

mod chop;
mod iso;
mod search;

pub use chop::{chop, ChopFactor};
pub use iso::{endo_degree, modules_isomorphic};
pub use search::{
    absolutely_simple_dimensions, has_defect_zero_simple, max_simple_dimension, simple_modules,
    SimpleModule,
};

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};
use crate::group::PermGroup;
use crate::limits::Limits;
use crate::matrix::FqMatrix;
use crate::perm::Permutation;

/// A matrix representation: one invertible matrix per group generator.
#[derive(Clone)]
pub struct GModule {
    pub field: Arc<Field>,
    pub dim: usize,
    pub action: Vec<FqMatrix>,
}

/// A composition factor's numerical shape: ground-field dimension, the
/// degree of its endomorphism field, and the dimension over the algebraic
/// closure (d = e · abs_dim).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleRecord {
    pub dim: u64,
    pub endo_degree: u64,
    pub abs_dim: u64,
    pub multiplicity: u32,
}

impl GModule {
    pub fn from_action(field: Arc<Field>, dim: usize, action: Vec<FqMatrix>) -> GModule {
        for a in &action {
            assert_eq!((a.rows, a.cols), (dim, dim));
        }
        GModule { field, dim, action }
    }

    /// Permutation module on the group's natural points.
    pub fn perm_module(group: &PermGroup, field: Arc<Field>) -> GModule {
        GModule::from_permutations(group.generators(), group.degree(), field)
    }

    /// Permutation module for an arbitrary list of images (e.g. a coset
    /// action), one permutation per generator.
    pub fn from_permutations(perms: &[Permutation], degree: usize, field: Arc<Field>) -> GModule {
        let action = perms
            .iter()
            .map(|g| {
                FqMatrix::from_fn(field.clone(), degree, degree, |i, j| {
                    if g.image(i) == j {
                        Field::ONE
                    } else {
                        Field::ZERO
                    }
                })
            })
            .collect();
        GModule {
            field,
            dim: degree,
            action,
        }
    }

    /// The right regular module, gated by `limits.element_bound`.
    pub fn regular_module(
        group: &PermGroup,
        field: Arc<Field>,
        limits: &Limits,
    ) -> Result<GModule> {
        let table = group.elements(limits)?;
        let n = table.len();
        let action = group
            .generators()
            .iter()
            .map(|g| {
                let gid = table.id_of(g).expect("generator in table");
                FqMatrix::from_fn(field.clone(), n, n, |i, j| {
                    if table.mul(i as u32, gid) == j as u32 {
                        Field::ONE
                    } else {
                        Field::ZERO
                    }
                })
            })
            .collect();
        Ok(GModule {
            field,
            dim: n,
            action,
        })
    }

    pub fn tensor(&self, other: &GModule) -> GModule {
        assert_eq!(self.action.len(), other.action.len());
        assert_eq!(self.field.spec(), other.field.spec());
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.tensor(b))
            .collect();
        GModule {
            field: self.field.clone(),
            dim: self.dim * other.dim,
            action,
        }
    }

    /// Evaluates the representation at an arbitrary word in the generators.
    pub fn evaluate_word(&self, word: &[u16]) -> FqMatrix {
        let mut acc = FqMatrix::identity(self.field.clone(), self.dim);
        for &g in word {
            acc = acc.mul(&self.action[g as usize]);
        }
        acc
    }

    /// Consistency sample: words that evaluate to the identity permutation
    /// must evaluate to the identity matrix.
    pub fn check_against_group(&self, group: &PermGroup, rng: &mut ChaCha8Rng) -> bool {
        let gens = group.generators();
        if gens.is_empty() {
            return self.action.is_empty();
        }
        if gens.len() != self.action.len() {
            return false;
        }
        let id = FqMatrix::identity(self.field.clone(), self.dim);
        for _ in 0..20 {
            let len = rng.gen_range(1..=6);
            let word: Vec<u16> = (0..len)
                .map(|_| rng.gen_range(0..gens.len()) as u16)
                .collect();
            let mut perm = Permutation::identity(group.degree());
            for &w in &word {
                perm = perm.then(&gens[w as usize]);
            }
            if perm.is_identity() && self.evaluate_word(&word) != id {
                return false;
            }
        }
        true
    }

    /// A pseudo-random element of the acting algebra: a short sum of word
    /// products with nonzero coefficients, occasionally plus a scalar.
    pub(crate) fn random_algebra_element(&self, rng: &mut ChaCha8Rng) -> FqMatrix {
        let f = &self.field;
        let mut acc = FqMatrix::zero(f.clone(), self.dim, self.dim);
        let terms = rng.gen_range(2..=4);
        for _ in 0..terms {
            let len = rng.gen_range(1..=3);
            let mut w = FqMatrix::identity(f.clone(), self.dim);
            for _ in 0..len {
                let g = rng.gen_range(0..self.action.len());
                w = w.mul(&self.action[g]);
            }
            let c = f.from_int(rng.gen_range(1..f.q()));
            acc = acc.add(&w.scale(c));
        }
        if rng.gen_bool(0.3) {
            let c = f.from_int(rng.gen_range(1..f.q()));
            let mut scalar = FqMatrix::identity(f.clone(), self.dim);
            scalar = scalar.scale(c);
            acc = acc.add(&scalar);
        }
        acc
    }

    /// Trace of the representation at a group element given by a word.
    pub fn trace_at_word(&self, word: &[u16]) -> Fq {
        self.evaluate_word(word).trace()
    }
}

/// Restriction of the module to an invariant subspace given by a reduced
/// echelon basis, and the action on the quotient. Fails (by panic) only if
/// the subspace is not invariant, which callers have already established.
pub(crate) fn split_along(module: &GModule, basis: &FqMatrix) -> (GModule, GModule) {
    let f = module.field.clone();
    let w = basis.rows;
    let n = module.dim;
    debug_assert!(w > 0 && w < n);
    let pivots: Vec<usize> = (0..w)
        .map(|r| {
            (0..n)
                .find(|&c| basis.get(r, c) == Field::ONE)
                .expect("echelon basis row has a pivot")
        })
        .collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

    let mut sub_action = Vec::with_capacity(module.action.len());
    let mut quot_action = Vec::with_capacity(module.action.len());
    for a in &module.action {
        // subspace: rows of basis·a have coordinates at pivot columns
        let ba = basis.mul(a);
        let mut s = FqMatrix::zero(f.clone(), w, w);
        for r in 0..w {
            for (j, &pc) in pivots.iter().enumerate() {
                s.set(r, j, ba.get(r, pc));
            }
            // invariance: the residual after removing the combination is zero
            let mut residual: Vec<Fq> = ba.row(r).to_vec();
            for (j, &pc) in pivots.iter().enumerate() {
                let c = ba.get(r, pc);
                if f.is_zero(c) {
                    continue;
                }
                for (x, &bv) in residual.iter_mut().zip(basis.row(j)) {
                    *x = f.sub(*x, f.mul(c, bv));
                }
                let _ = pc;
            }
            assert!(
                residual.iter().all(|&x| f.is_zero(x)),
                "split basis is not invariant"
            );
        }
        sub_action.push(s);

        // quotient: reduce images of free coordinates mod the subspace
        let q_dim = free.len();
        let mut qm = FqMatrix::zero(f.clone(), q_dim, q_dim);
        for (r, &fc) in free.iter().enumerate() {
            let mut v: Vec<Fq> = a.row(fc).to_vec();
            for (j, &pc) in pivots.iter().enumerate() {
                let c = v[pc];
                if f.is_zero(c) {
                    continue;
                }
                for (x, &bv) in v.iter_mut().zip(basis.row(j)) {
                    *x = f.sub(*x, f.mul(c, bv));
                }
            }
            for (s_, &fcol) in free.iter().enumerate() {
                qm.set(r, s_, v[fcol]);
            }
        }
        quot_action.push(qm);
    }

    (
        GModule {
            field: f.clone(),
            dim: w,
            action: sub_action,
        },
        GModule {
            field: f,
            dim: n - w,
            action: quot_action,
        },
    )
}

/// Transposed action matrices (the module structure used on the dual side of
/// the irreducibility test).
pub(crate) fn transposed_action(module: &GModule) -> Vec<FqMatrix> {
    module.action.iter().map(|a| a.transpose()).collect()
}

pub(crate) fn incomplete(msg: impl Into<String>) -> Error {
    Error::Incomplete(msg.into())
}
