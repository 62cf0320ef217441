//! Exact-arithmetic engine for finite-dimensional bound quiver algebras.
//!
//! The crate computes with modules over an algebra `kQ/I` presented by a
//! quiver with relations: Hom and Ext¹ spaces, kernels/images/cokernels,
//! trace and reject, direct-sum decompositions into indecomposables, the
//! Auslander–Reiten translates τ and τ⁻, enumeration of all indecomposables
//! of a representation-finite algebra, torsion pairs over that finite
//! universe, nested families of torsion pairs with their strata, and
//! stratifying systems (verification, induction, recovery, Δ-filtrations).
//!
//! All arithmetic is over the rationals with arbitrary-precision integers;
//! nothing is ever rounded. Rank-sensitive decisions (membership in a
//! torsion class, vanishing of an Ext group) are therefore exact.

pub mod algebra;
pub mod decompose;
pub mod error;
pub mod homology;
pub mod jsonio;
pub mod matrix;
pub mod module;
pub mod morphism;
pub mod nested;
pub mod par;
pub mod rat;
pub mod stratsys;
pub mod torsion;
pub mod universe;


pub use error::{Error, ExitClass, Result};
pub use matrix::Matrix;


pub use rat::Rat;

