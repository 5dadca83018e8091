//! Exact computations for string brackets on orbifold disks.
//!
//! * [`cyclic_words`]: canonical forms for free loops on a disk with cone points.
//! * [`loop_module`]: formal combinations of free loops.
//! * [`goldman`]: the cut-and-insert Goldman bracket.
//! * [`graded_bv`]: finite graded BV algebras, derived brackets and Gysin data.
//! * [`sphere`]: the structure-constant Lie algebra for the sphere quotient.
//! * [`hochschild`]: normalized Hochschild chains with shuffle, `b`, `B` and the TC complex.

pub mod cyclic_words;
pub mod linalg;
pub mod loop_module;
pub mod report;
pub mod goldman;
pub mod graded_bv;
pub mod sphere;
pub mod hochschild;
