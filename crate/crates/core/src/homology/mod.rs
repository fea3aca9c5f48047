//! Minimal free resolutions over polynomial covers, depth, local cohomology
//! degrees and Castelnuovo–Mumford regularity.
//!
//! An algebra is studied as a module over the polynomial ring on its even
//! generators. Depth comes from Auslander–Buchsbaum; the degrees `a_i` come
//! from graded local duality applied to the dual of the minimal resolution.

mod local;
mod module;
mod resolution;

pub use local::{
    analyze_algebra, analyze_module, depth, is_cohen_macaulay, is_regular_sequence, local_cohomology_degrees,
    regularity, Degree, HomologicalInvariants, LocalCohomologyProfile,
};
pub use module::{Column, GradedModule};
pub use resolution::{minimal_free_resolution, BettiEntry, BettiTable, Resolution};

#[cfg(test)]
mod tests;
