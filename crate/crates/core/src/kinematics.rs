//! The move model.
//!
//! A *rotation* carries a module around a face-adjacent pivot into a
//! perpendicular neighbor of that pivot; the target cell and the edge cell
//! between the old and new positions must be empty. A *slide* moves a module one
//! step along an axis across two adjacent supporting modules. Every move carries
//! its witnesses (pivot or supports), so a trace can be rechecked without search.
//!
//! Geometric legality is local. Connectivity of the configurations along a trace
//! is checked separately by [`validate_trace`].

use std::collections::BTreeSet;
use std::fmt;

use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::lattice::{flood_fill, Cell, Configuration, Dir};

/// Read access to an occupancy map.
pub trait Occupancy {
    fn dim(&self) -> usize;
    fn is_occupied(&self, cell: &Cell) -> bool;
}

impl Occupancy for Configuration {
    fn dim(&self) -> usize {
        Configuration::dim(self)
    }

    fn is_occupied(&self, cell: &Cell) -> bool {
        self.contains(cell)
    }
}

impl<O: Occupancy + ?Sized> Occupancy for &O {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn is_occupied(&self, cell: &Cell) -> bool {
        (**self).is_occupied(cell)
    }
}

/// An occupancy view with one cell vacated.
pub struct Without<'a, O: ?Sized> {
    inner: &'a O,
    removed: &'a Cell,
}

impl<'a, O: Occupancy + ?Sized> Without<'a, O> {
    pub fn new(inner: &'a O, removed: &'a Cell) -> Self {
        Without { inner, removed }
    }
}

impl<O: Occupancy + ?Sized> Occupancy for Without<'_, O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn is_occupied(&self, cell: &Cell) -> bool {
        cell != self.removed && self.inner.is_occupied(cell)
    }
}

/// An occupancy view with one module relocated from `from` to `to`.
pub struct Relocated<'a, O: ?Sized> {
    inner: &'a O,
    from: &'a Cell,
    to: &'a Cell,
}

impl<'a, O: Occupancy + ?Sized> Relocated<'a, O> {
    pub fn new(inner: &'a O, from: &'a Cell, to: &'a Cell) -> Self {
        Relocated { inner, from, to }
    }
}

impl<O: Occupancy + ?Sized> Occupancy for Relocated<'_, O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn is_occupied(&self, cell: &Cell) -> bool {
        cell == self.to || (cell != self.from && self.inner.is_occupied(cell))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    Rotation,
    Slide,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Rotation {
        from: Cell,
        pivot: Cell,
        to: Cell,
    },
    /// `supports[0]` is face-adjacent to `from`, `supports[1]` to `to`.
    Slide {
        from: Cell,
        supports: [Cell; 2],
        to: Cell,
    },
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::Rotation { .. } => MoveKind::Rotation,
            Move::Slide { .. } => MoveKind::Slide,
        }
    }

    pub fn from(&self) -> &Cell {
        match self {
            Move::Rotation { from, .. } | Move::Slide { from, .. } => from,
        }
    }

    pub fn to(&self) -> &Cell {
        match self {
            Move::Rotation { to, .. } | Move::Slide { to, .. } => to,
        }
    }

    /// The same move played backwards. Legal in the configuration this move
    /// produces, and yields the configuration it was applied to.
    pub fn reversed(&self) -> Move {
        match self {
            Move::Rotation { from, pivot, to } => Move::Rotation {
                from: to.clone(),
                pivot: pivot.clone(),
                to: from.clone(),
            },
            Move::Slide { from, supports, to } => Move::Slide {
                from: to.clone(),
                supports: [supports[1].clone(), supports[0].clone()],
                to: from.clone(),
            },
        }
    }

    /// The unoccupied cells a legal instance of this move requires, target first.
    pub fn required_empty(&self) -> Result<Vec<Cell>, MoveError> {
        self.check_shape()?;
        Ok(match self {
            Move::Rotation { from, pivot, to } => {
                let out = pivot.direction_to(to).expect("shape checked");
                vec![to.clone(), from.step(out)]
            }
            Move::Slide { to, .. } => vec![to.clone()],
        })
    }

    /// Checks the geometric shape of the move independent of any occupancy:
    /// consistent dimensions, a rotation displacing the mover diagonally within
    /// one plane around an adjacent pivot, a slide displacing it by one step with
    /// correctly placed supports.
    pub fn check_shape(&self) -> Result<(), MoveError> {
        match self {
            Move::Rotation { from, pivot, to } => {
                let dim = from.dim();
                if pivot.dim() != dim || to.dim() != dim {
                    return Err(MoveError::Malformed("mixed dimensions".into()));
                }
                let inward = pivot.direction_to(from).ok_or_else(|| {
                    MoveError::Malformed(format!("{from} is not face-adjacent to pivot {pivot}"))
                })?;
                let out = pivot.direction_to(to).ok_or_else(|| {
                    MoveError::Malformed(format!("{to} is not face-adjacent to pivot {pivot}"))
                })?;
                if !inward.is_orthogonal_to(out) {
                    return Err(MoveError::Malformed(format!(
                        "rotation {from} -> {to} around {pivot} does not turn a right angle"
                    )));
                }
                Ok(())
            }
            Move::Slide { from, supports, to } => {
                let dim = from.dim();
                if supports.iter().any(|s| s.dim() != dim) || to.dim() != dim {
                    return Err(MoveError::Malformed("mixed dimensions".into()));
                }
                let step = from.direction_to(to).ok_or_else(|| {
                    MoveError::Malformed(format!("slide {from} -> {to} is not a unit step"))
                })?;
                let lateral = from.direction_to(&supports[0]).ok_or_else(|| {
                    MoveError::Malformed(format!(
                        "support {} is not face-adjacent to {from}",
                        supports[0]
                    ))
                })?;
                if !lateral.is_orthogonal_to(step) || to.step(lateral) != supports[1] {
                    return Err(MoveError::Malformed(format!(
                        "supports {} {} do not flank slide {from} -> {to}",
                        supports[0], supports[1]
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Rotation { from, pivot, to } => write!(f, "R {from} {pivot} {to}"),
            Move::Slide { from, supports, to } => {
                write!(f, "S {from} {} {} {to}", supports[0], supports[1])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    SourceAbsent,
    TargetOccupied,
    EdgeCellOccupied,
    MissingPivot,
    MissingSupport,
}

impl fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IllegalReason::SourceAbsent => "source cell is empty",
            IllegalReason::TargetOccupied => "target cell is occupied",
            IllegalReason::EdgeCellOccupied => "edge cell is occupied",
            IllegalReason::MissingPivot => "pivot cell is empty",
            IllegalReason::MissingSupport => "support cell is empty",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("malformed move: {0}")]
    Malformed(String),
    #[error("illegal move: {0}")]
    Illegal(IllegalReason),
}

/// Checks a move, witnesses included, against an occupancy.
pub fn check_move<O: Occupancy + ?Sized>(occ: &O, m: &Move) -> Result<(), MoveError> {
    if m.from().dim() != occ.dim() {
        return Err(MoveError::Malformed(format!(
            "move has dimension {}, configuration has {}",
            m.from().dim(),
            occ.dim()
        )));
    }
    let empties = m.required_empty()?;
    if !occ.is_occupied(m.from()) {
        return Err(MoveError::Illegal(IllegalReason::SourceAbsent));
    }
    match m {
        Move::Rotation { pivot, .. } => {
            if !occ.is_occupied(pivot) {
                return Err(MoveError::Illegal(IllegalReason::MissingPivot));
            }
        }
        Move::Slide { supports, .. } => {
            if supports.iter().any(|s| !occ.is_occupied(s)) {
                return Err(MoveError::Illegal(IllegalReason::MissingSupport));
            }
        }
    }
    if occ.is_occupied(&empties[0]) {
        return Err(MoveError::Illegal(IllegalReason::TargetOccupied));
    }
    if empties.len() > 1 && occ.is_occupied(&empties[1]) {
        return Err(MoveError::Illegal(IllegalReason::EdgeCellOccupied));
    }
    Ok(())
}

/// Whether module `a` may rotate around `pivot` into `to`.
pub fn rotation_legal<O: Occupancy + ?Sized>(
    occ: &O,
    a: &Cell,
    pivot: &Cell,
    to: &Cell,
) -> Result<bool, MoveError> {
    if a.dim() != occ.dim() || pivot.dim() != occ.dim() || to.dim() != occ.dim() {
        return Err(MoveError::Malformed("dimension mismatch".into()));
    }
    if !occ.is_occupied(a) || !occ.is_occupied(pivot) {
        return Err(MoveError::Malformed(format!(
            "rotation needs both {a} and pivot {pivot} occupied"
        )));
    }
    let Some(inward) = pivot.direction_to(a) else {
        return Err(MoveError::Malformed(format!(
            "{a} is not face-adjacent to pivot {pivot}"
        )));
    };
    let Some(out) = pivot.direction_to(to) else {
        return Ok(false);
    };
    if !out.is_orthogonal_to(inward) {
        return Ok(false);
    }
    Ok(!occ.is_occupied(to) && !occ.is_occupied(&a.step(out)))
}

/// Whether module `a` may slide into `to`; returns the first support pair in
/// direction order when it may.
pub fn slide_legal<O: Occupancy + ?Sized>(
    occ: &O,
    a: &Cell,
    to: &Cell,
) -> Result<Option<[Cell; 2]>, MoveError> {
    if a.dim() != occ.dim() || to.dim() != occ.dim() {
        return Err(MoveError::Malformed("dimension mismatch".into()));
    }
    if !occ.is_occupied(a) {
        return Err(MoveError::Malformed(format!("{a} is not occupied")));
    }
    let Some(step) = a.direction_to(to) else {
        return Ok(None);
    };
    if occ.is_occupied(to) {
        return Ok(None);
    }
    Ok(first_supports(occ, a, to, step))
}

fn first_supports<O: Occupancy + ?Sized>(
    occ: &O,
    a: &Cell,
    to: &Cell,
    step: Dir,
) -> Option<[Cell; 2]> {
    Dir::all(occ.dim())
        .filter(|l| l.is_orthogonal_to(step))
        .find_map(|lateral| {
            let b = a.step(lateral);
            let b2 = to.step(lateral);
            (occ.is_occupied(&b) && occ.is_occupied(&b2)).then_some([b, b2])
        })
}

/// Every legal move of the module at `a`: rotations ordered by pivot direction
/// then target direction, followed by slides ordered by step direction, each
/// slide carrying its first witness pair.
pub fn legal_moves<O: Occupancy + ?Sized>(occ: &O, a: &Cell) -> Vec<Move> {
    let dim = occ.dim();
    let mut out = Vec::new();
    if !occ.is_occupied(a) {
        return out;
    }
    for pd in Dir::all(dim) {
        let pivot = a.step(pd);
        if !occ.is_occupied(&pivot) {
            continue;
        }
        for turn in Dir::all(dim).filter(|t| t.is_orthogonal_to(pd)) {
            let to = pivot.step(turn);
            if !occ.is_occupied(&to) && !occ.is_occupied(&a.step(turn)) {
                out.push(Move::Rotation {
                    from: a.clone(),
                    pivot: pivot.clone(),
                    to,
                });
            }
        }
    }
    for step in Dir::all(dim) {
        let to = a.step(step);
        if occ.is_occupied(&to) {
            continue;
        }
        if let Some(supports) = first_supports(occ, a, &to, step) {
            out.push(Move::Slide {
                from: a.clone(),
                supports,
                to,
            });
        }
    }
    out
}

/// Returns `config` with the move applied.
pub fn apply_move(config: &Configuration, m: &Move) -> Result<Configuration, MoveError> {
    check_move(config, m)?;
    let mut cells = config.cell_set().clone();
    cells.remove(m.from());
    cells.insert(m.to().clone());
    Ok(Configuration::from_set_unchecked(config.dim(), cells))
}

/// An initial configuration and an ordered sequence of moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub initial: Configuration,
    pub moves: Vec<Move>,
}

impl Trace {
    pub fn new(initial: Configuration, moves: Vec<Move>) -> Self {
        Trace { initial, moves }
    }

    pub fn empty(initial: Configuration) -> Self {
        Trace::new(initial, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepFailure {
    IllegalGeometry,
    Disconnected,
    Malformed,
}

impl fmt::Display for StepFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepFailure::IllegalGeometry => "illegal-geometry",
            StepFailure::Disconnected => "disconnected",
            StepFailure::Malformed => "malformed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("initial configuration is not connected")]
    InitialDisconnected,
    #[error("move {index} ({kind}): {detail}")]
    Step {
        index: usize,
        kind: StepFailure,
        detail: String,
    },
    #[error("trace does not end at the stated configuration")]
    FinalMismatch,
}

impl TraceError {
    /// Index of the first offending move, when the failure is tied to one.
    pub fn index(&self) -> Option<usize> {
        match self {
            TraceError::Step { index, .. } => Some(*index),
            _ => None,
        }
    }
}

/// Mutable occupancy used for replay and planning.
#[derive(Debug, Clone)]
pub(crate) struct World {
    dim: usize,
    cells: FxHashSet<Cell>,
}

impl World {
    pub(crate) fn new(config: &Configuration) -> Self {
        World {
            dim: config.dim(),
            cells: config.cells().cloned().collect(),
        }
    }

    /// Moves the module without checking legality.
    pub(crate) fn apply_unchecked(&mut self, m: &Move) {
        let removed = self.cells.remove(m.from());
        debug_assert!(removed);
        let inserted = self.cells.insert(m.to().clone());
        debug_assert!(inserted);
    }

    pub(crate) fn is_connected(&self) -> bool {
        match self.cells.iter().next() {
            None => true,
            Some(start) => flood_fill(start, |c| self.cells.contains(c)).len() == self.cells.len(),
        }
    }

    /// Whether the world stays connected with `cell` vacated.
    pub(crate) fn is_connected_without(&self, cell: &Cell) -> bool {
        let Some(start) = self.cells.iter().find(|c| *c != cell) else {
            return true;
        };
        let expected = self.cells.len() - usize::from(self.cells.contains(cell));
        flood_fill(start, |c| c != cell && self.cells.contains(c)).len() == expected
    }

    pub(crate) fn to_configuration(&self) -> Configuration {
        Configuration::from_set_unchecked(self.dim, self.cells.iter().cloned().collect())
    }

    pub(crate) fn cell_set(&self) -> BTreeSet<Cell> {
        self.cells.iter().cloned().collect()
    }
}

impl Occupancy for World {
    fn dim(&self) -> usize {
        self.dim
    }

    fn is_occupied(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }
}

/// Replays a trace, checking every move's witnesses and the connectivity of
/// every intermediate configuration. Returns the final configuration.
pub fn validate_trace(trace: &Trace) -> Result<Configuration, TraceError> {
    if !trace.initial.is_connected() {
        return Err(TraceError::InitialDisconnected);
    }
    let mut world = World::new(&trace.initial);
    for (index, m) in trace.moves.iter().enumerate() {
        check_move(&world, m).map_err(|e| TraceError::Step {
            index,
            kind: match e {
                MoveError::Malformed(_) => StepFailure::Malformed,
                MoveError::Illegal(_) => StepFailure::IllegalGeometry,
            },
            detail: e.to_string(),
        })?;
        world.apply_unchecked(m);
        if !world.is_connected() {
            return Err(TraceError::Step {
                index,
                kind: StepFailure::Disconnected,
                detail: format!("configuration is disconnected after {m}"),
            });
        }
    }
    Ok(world.to_configuration())
}

/// The trace that undoes `trace`, starting from its final configuration.
pub fn reverse_trace(trace: &Trace, final_config: &Configuration) -> Result<Trace, TraceError> {
    let end = validate_trace(trace)?;
    if &end != final_config {
        return Err(TraceError::FinalMismatch);
    }
    Ok(Trace::new(
        end,
        trace.moves.iter().rev().map(Move::reversed).collect(),
    ))
}
