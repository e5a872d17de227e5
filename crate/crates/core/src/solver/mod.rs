//! Separable convex minimization over bounded standard-form sets, plus the
//! enumeration oracle and phase-one search it relies on.

mod augment;
mod enumerate;

pub use augment::{
    improving_step, max_step, minimize_linear, minimize_separable_convex, AugmentationStep, AugmentationTrace,
    SolveCaps, Termination,
};
pub use enumerate::{enumerate_feasible, find_feasible, Feasibility};
