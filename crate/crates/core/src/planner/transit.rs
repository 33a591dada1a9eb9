use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashMap;

use super::PlanError;
use crate::kinematics::{legal_moves, Move, Occupancy, Relocated, Without};
use crate::lattice::Cell;

/// Shortest sequence of moves carrying the module at `mover` to a position
/// satisfying `goal`, with every other module held fixed.
///
/// Legality is checked against the full occupancy of `world`. Every position
/// along the way stays face-adjacent to some other module, so when
/// `world \ {mover}` is connected every intermediate configuration is
/// connected. Positions in `forbidden` are never entered.
pub fn boundary_transit<O: Occupancy + ?Sized>(
    world: &O,
    mover: &Cell,
    mut goal: impl FnMut(&Cell) -> bool,
    forbidden: &BTreeSet<Cell>,
) -> Result<Vec<Move>, PlanError> {
    if !world.is_occupied(mover) {
        return Err(PlanError::InternalAssertion(format!(
            "transit mover {mover} is not occupied"
        )));
    }
    if goal(mover) {
        return Ok(Vec::new());
    }
    let others = Without::new(world, mover);
    let mut came_by: FxHashMap<Cell, Move> = FxHashMap::default();
    let mut queue = VecDeque::from([mover.clone()]);
    let mut explored = 1;
    while let Some(pos) = queue.pop_front() {
        let here = Relocated::new(world, mover, &pos);
        for m in legal_moves(&here, &pos) {
            let to = m.to();
            if to == mover || came_by.contains_key(to) || forbidden.contains(to) {
                continue;
            }
            if !to.face_neighbors().any(|n| others.is_occupied(&n)) {
                continue;
            }
            explored += 1;
            let reached = goal(to);
            let to = to.clone();
            came_by.insert(to.clone(), m);
            if reached {
                return Ok(unwind(&came_by, mover, to));
            }
            queue.push_back(to);
        }
    }
    Err(PlanError::TransitUnreachable {
        mover: mover.clone(),
        explored,
    })
}

fn unwind(came_by: &FxHashMap<Cell, Move>, start: &Cell, mut at: Cell) -> Vec<Move> {
    let mut path = Vec::new();
    while &at != start {
        let m = came_by[&at].clone();
        at = m.from().clone();
        path.push(m);
    }
    path.reverse();
    path
}
