//! Reconfiguration of connected unit-hypercube modules on the `d`-dimensional
//! integer lattice using rotations and slides.
//!
//! * [`lattice`]: cells, configurations, connectivity, holes, outer boundary.
//! * [`kinematics`]: move legality, application, trace replay and reversal.
//! * [`analysis`]: post-order, articulation and split classification.
//! * [`planner`]: canonicalization to a straight chain and full plans.
//! * [`harness`]: generators, the exhaustive oracle, statistics, reports.
//! * [`format`]: `.cfg` and `.trace` text formats.

pub mod analysis;
pub mod format;
pub mod harness;
pub mod kinematics;
pub mod lattice;
pub mod planner;

pub use kinematics::{Move, MoveKind, Trace};
pub use lattice::{Cell, Configuration, Dir};
