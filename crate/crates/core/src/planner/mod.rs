//! Reconfiguration planning.
//!
//! Any connected configuration is turned into a straight chain along `+x1`,
//! anchored at its lexicographically greatest module (maximal `x1`). Each round
//! frees a boundary module whose removal keeps the rest connected and walks it
//! to the end of the chain. Two configurations of the same size are then joined
//! by canonicalizing the first, snaking its chain onto the chain of the second,
//! and replaying the second's canonicalization backwards.

mod canonical;
mod locate;
mod transit;
mod transport;

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::kinematics::{reverse_trace, validate_trace, MoveError, Trace, TraceError};
use crate::lattice::{Cell, Configuration, Dir, LatticeError};

pub use canonical::{canonicalize, canonicalize_with, Canonicalized};
pub use locate::{locate_and_free, locate_and_free_with, LocateOutcome};
pub use transit::boundary_transit;
pub use transport::{snake_path, transport_chain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("size mismatch: {0} vs {1} modules")]
    SizeMismatch(usize, usize),
    #[error("{0} configuration is not connected")]
    Disconnected(&'static str),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("module at {mover} cannot reach its goal ({explored} positions explored)")]
    TransitUnreachable { mover: Cell, explored: usize },
    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

impl PlanError {
    /// True for failures of a guarantee the planner relies on, as opposed to
    /// bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(
            self,
            PlanError::DimensionMismatch(..)
                | PlanError::SizeMismatch(..)
                | PlanError::Disconnected(_)
                | PlanError::Infeasible(_)
                | PlanError::Lattice(
                    LatticeError::RegionTooLarge(_) | LatticeError::CoordinateOverflow
                )
        )
    }
}

pub(crate) fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), PlanError> {
    if cond {
        Ok(())
    } else {
        Err(PlanError::InternalAssertion(msg()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlannerOptions {
    /// Recompute the post-order at every recursion level and check that the
    /// reused labels select the same module.
    pub verify_postorder: bool,
    /// Replay the finished trace before returning it.
    pub validate_output: bool,
}

impl Default for PlannerOptions {
    fn default() -> Self {
        PlannerOptions {
            verify_postorder: cfg!(debug_assertions),
            validate_output: true,
        }
    }
}

/// Counters collected while canonicalizing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PlanReport {
    /// Freeing calls, recursive ones included.
    pub locate_calls: usize,
    /// Calls that had to reconnect an inner component before returning.
    pub nearly_frees: usize,
    /// Deepest recursion level reached (0 = top level).
    pub max_depth: usize,
    /// Recursion levels whose boundary was rechecked after moving modules.
    pub boundary_checks: usize,
    /// Single-module searches run.
    pub transits: usize,
}

/// A straight chain along `+x1`: `anchor + k*e1` for `k in 0..length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSpec {
    pub anchor: Cell,
    pub length: usize,
}

impl ChainSpec {
    pub fn new(anchor: Cell, length: usize) -> Self {
        ChainSpec { anchor, length }
    }

    pub fn dim(&self) -> usize {
        self.anchor.dim()
    }

    pub fn cell(&self, k: usize) -> Cell {
        self.anchor.offset(Dir::first_axis(), k as i64)
    }

    /// The end farthest along `+x1`.
    pub fn head(&self) -> Cell {
        self.cell(self.length.saturating_sub(1))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.length).map(|k| self.cell(k))
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::new(self.dim(), self.cells()).expect("chain cells are distinct")
    }
}

/// A trace taking `from` to `to`, both connected and of equal size.
pub fn plan(from: &Configuration, to: &Configuration) -> Result<Trace, PlanError> {
    plan_with(from, to, &PlannerOptions::default())
}

pub fn plan_with(
    from: &Configuration,
    to: &Configuration,
    opts: &PlannerOptions,
) -> Result<Trace, PlanError> {
    if from.dim() != to.dim() {
        return Err(PlanError::DimensionMismatch(from.dim(), to.dim()));
    }
    if from.len() != to.len() {
        return Err(PlanError::SizeMismatch(from.len(), to.len()));
    }
    if !from.is_connected() {
        return Err(PlanError::Disconnected("source"));
    }
    if !to.is_connected() {
        return Err(PlanError::Disconnected("target"));
    }
    if from.len() == 1 {
        return if from == to {
            Ok(Trace::empty(from.clone()))
        } else {
            Err(PlanError::Infeasible(
                "a lone module has no pivot or support to move against".into(),
            ))
        };
    }

    let inner_opts = PlannerOptions {
        validate_output: false,
        ..*opts
    };
    let forward = canonicalize_with(from, &inner_opts)?;
    let backward = canonicalize_with(to, &inner_opts)?;
    let shuttle = transport_chain(&forward.chain, &backward.chain)?;
    let undo = reverse_trace(&backward.trace, &backward.chain.configuration())?;

    let mut moves = forward.trace.moves;
    moves.extend(shuttle.moves);
    moves.extend(undo.moves);
    let trace = Trace::new(from.clone(), moves);
    if opts.validate_output {
        let end = validate_trace(&trace)?;
        ensure(&end == to, || "plan does not end at the target".into())?;
    }
    Ok(trace)
}
