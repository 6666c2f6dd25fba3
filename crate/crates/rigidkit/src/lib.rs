//! Rigidity analysis for bar-and-joint frameworks.
//!
//! The crate has two layers. The exact layer ([`geometry`], [`constructions`],
//! [`enumeration`]) works over arbitrary-precision rationals and decides
//! equivalence, congruence and global rigidity of pendant-structured
//! frameworks with zero tolerance. The numeric layer ([`numeric`]) provides
//! the standard floating-point machinery (rigidity matrices, equilibrium
//! stresses, a randomized generic-global-rigidity test and a multi-start
//! realization solver) used both on its own and as an independent oracle for
//! the exact enumeration.
//!
//! The [`document`], [`report`] and [`render`] modules back the `rigidkit`
//! command-line tool: a JSON interchange format for frameworks, deterministic
//! analysis reports and SVG drawings of planar projections.

pub mod cli;
pub mod constructions;
pub mod document;
pub mod enumeration;
pub mod geometry;
pub mod numeric;
pub mod render;
pub mod report;
