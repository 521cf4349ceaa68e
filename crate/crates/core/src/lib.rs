//! Full group relation algebras.
//!
//! A *frame* is a system of disjoint finite groups `G_x`, a partition of the
//! indices into blocks, and quotient isomorphisms `φ_xy : G_x/H_xy → G_y/K_xy`
//! between groups of the same block. Each coset `H_xy,α` gives an atomic
//! relation `R_xy,α = ⋃_γ H_xy,γ × (K_xy,γ ∘ K_xy,α)` on the union of the
//! groups. When the frame conditions hold, unions of atoms form a relation
//! algebra whose converse and composition can be computed on atom indices
//! alone.
//!
//! Modules:
//! - [`group`]: finite groups, cosets, quotients.
//! - [`frame`]: frames and the frame-condition checks.
//! - [`algebra`]: atoms, symbolic converse and composition, measures.
//! - [`oracle`]: explicit pair-set relations for ground truth.
//! - [`builders`]: complex-algebra, power and cyclic frame families.
//! - [`format`]: the line-oriented frame file format.
//! - [`laws`]: exhaustive verification suite.

pub mod algebra;
pub mod builders;
pub mod elements;
pub mod error;
pub mod format;
pub mod frame;
pub mod group;
pub mod laws;
pub mod oracle;

pub use algebra::{AtomIndex, BaseSpace, FrameElement, GroupRelationAlgebra, MeasureReport};
pub use elements::ElementSet;
pub use error::{Error, IsoViolation, Result};
pub use frame::{Condition, Frame, FrameReport, InducedIso, IsoRecord};
pub use group::{make_cyclic, validate_table, CosetSystem, FiniteGroup};
pub use oracle::ConcreteRelation;
