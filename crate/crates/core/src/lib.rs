//! Exact robust integer programming over Graver bases.
//!
//! Feasible sets are bounded standard-form sets `{x ∈ Zⁿ : Ax = b, l <= x <= u}`;
//! cost uncertainty is a finite list of cost vectors or an integer box. The
//! crate computes and verifies Graver bases, minimizes separable convex
//! objectives by Graver-best augmentation, solves the four min-max / max-min
//! robust variants, and builds the instance families used to exercise them.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cost;
pub mod error;
pub mod format;
pub mod graver;
pub mod instances;
pub mod lattice_points;
pub mod linalg;
pub mod objective;
pub mod robust;
pub mod set;
pub mod solver;

pub use cost::CostModel;
pub use error::{Error, Result};
pub use graver::{compute_graver, CompletionLimits, GraverBasis};
pub use linalg::{conformal_leq, IntMatrix, IntVector};
pub use objective::{box_objective, eval_objective, SeparableConvexObjective};
pub use robust::{RobustReport, Variant};
pub use set::StandardFormSet;
