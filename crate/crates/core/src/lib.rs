//! Computational workbench for connected Noetherian unstable algebras over `F_p`.
//!
//! The crate is organised bottom-up:
//!
//! * [`fpalg`]: graded-commutative algebra, Gröbner bases, Hilbert series, elimination.
//! * [`homology`]: minimal free resolutions, depth, local cohomology degrees, regularity.
//! * [`steenrod`]: Steenrod operations via the Cartan formula and axiom checks.
//! * [`groups`]: permutation groups, elementary abelian subgroups, cohomological centers.
//! * [`invariants`]: modular invariant rings, Dickson invariants, stabilizers.
//! * [`rector`]: pairs `(E, f)`, kernels, finiteness, central pairs and the center.
//! * [`d0`]: Duflot data, central essential ideals and topological nilpotence bounds.
//! * [`cli`]: catalog format, validation and command reports.

pub mod cli;
pub mod d0;
pub mod error;
pub mod fpalg;
pub mod groups;
pub mod homology;
pub mod invariants;
pub mod rector;
pub mod steenrod;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
