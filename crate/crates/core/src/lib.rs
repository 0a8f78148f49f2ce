//! Finitely presented groups at desk scale.
//!
//! Words and presentations with a small text grammar, Todd–Coxeter coset
//! enumeration, permutation representations on cosets, Reidemeister–Schreier
//! rewriting with Tietze simplification, Smith normal form, triangle group
//! classification and Cayley graph cut vertices. Builders for the Klein
//! bottle surface-knot groups `K(l, m, n)` and their relatives tie the pieces
//! together.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod abelian;
pub mod builders;
pub mod cayley;
pub mod coset;
mod error;
pub mod parse;
pub mod perm;
pub mod rewrite;
pub mod word;

pub use abelian::{
    abelianization, classify_triangle, distinctness_report, howlett_rank, smith_normal_form,
    AbelianInvariants, Certificate, Distinctness, GroupOrder, TriangleClass, TriangleKind,
};
pub use builders::PretzelParams;
pub use cayley::{articulation_points, build_cayley, SimpleGraph};
pub use coset::{enumerate, standardize, CosetTable, EnumLimits, EnumStats, Enumeration, Outcome};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use parse::{parse_presentation, parse_word};
pub use perm::{
    element_order, hom_check, is_surjective, ses_check, ses_check_presentation, GeneratorMap,
    HomCheck, Perm, PermRep, SesReport,
};
pub use rewrite::{
    add_branch_relators, branched_double_cover, rewrite_subgroup_presentation,
    schreier_transversal, tietze_simplify, DoubleCover, SchreierData, Tietze,
};
pub use word::{cyclic_reduce, free_reduce, Generator, Letter, Presentation, Word};
