//! Exact modular-representation computations for small permutation groups:
//! maximal simple-module dimensions over algebraically closed fields of
//! characteristic p, p-subgroup chain complexes with their reduced Euler
//! characteristics and alternating-sum virtual characters, and structural
//! lower bounds verified group by group.
//!
//! The book under `book/` walks through every layer; its code snippets are
//! compiled and run as doc-tests below, so the narrative cannot drift from
//! the library.

pub mod bounds;
pub mod builders;
pub mod classes;
pub mod corpus;
pub mod error;
pub mod gf;
pub mod group;
pub mod lattice;
pub mod limits;
pub mod matrix;
pub mod meataxe;
pub mod pcomplex;
pub mod perm;
pub mod poly;
pub mod report;
pub mod subgrp;
pub mod table;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use limits::Limits;
pub use perm::Permutation;

// Keep the book's runnable snippets honest: each chapter is included as a
// doc-tested module, so `cargo test --doc` executes every code fence.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/permutation-groups.md")]
    mod permutation_groups {}
    #[doc = include_str!("../../../book/src/fields-and-matrices.md")]
    mod fields_and_matrices {}
    #[doc = include_str!("../../../book/src/simple-modules.md")]
    mod simple_modules {}
    #[doc = include_str!("../../../book/src/subgroup-complexes.md")]
    mod subgroup_complexes {}
    #[doc = include_str!("../../../book/src/bounds-and-verdicts.md")]
    mod bounds_and_verdicts {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
