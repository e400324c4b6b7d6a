//! Freedom-of-choice measurement over capability sets.
//!
//! Capability sets are finite Pareto point sets or 2D polyline frontiers
//! inside a box-shaped capability space. They are compared through the
//! downward closures they span: by dominance, by reference-point scores, by
//! the best and worst attainable values, and by the integral of a weighted
//! value function over the closure.

// Negated comparisons are how NaN gets rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod axioms;
pub mod error;
pub mod geometry;
pub mod instance;
pub mod measures;
pub mod par;
pub mod plot;
pub mod quadrature;
pub mod region;
pub mod report;
pub mod reproduce;
pub mod valuation;

pub use error::{Error, Result};
pub use geometry::{Being, CapabilitySet, CapabilitySpace};
pub use measures::{Evaluator, Measure, MeasureResult};
pub use region::Region;
pub use valuation::{Sensitivity, ValueModel};
