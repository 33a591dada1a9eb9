use std::collections::BTreeSet;

use super::locate::Engine;
use super::{boundary_transit, ensure, ChainSpec, PlanError, PlannerOptions};
use crate::kinematics::{Trace, World};
use crate::lattice::{Cell, Dir};

/// Simple lattice path that starts with the cells of `from` (rear first) and
/// ends with the cells of `to` (front last). Consecutive cells are
/// face-adjacent.
pub fn snake_path(from: &ChainSpec, to: &ChainSpec) -> Vec<Cell> {
    let x1 = Dir::first_axis();
    let lateral = |c: &Cell| c.coords()[1..].to_vec();
    let at = |template: &Cell, x: i64| {
        let mut coords = template.coords().to_vec();
        coords[0] = x;
        Cell::new(coords)
    };

    if lateral(&from.anchor) == lateral(&to.anchor) {
        let (a, b) = (from.anchor.coord(0), to.anchor.coord(0));
        return if b >= a {
            (a..=to.head().coord(0))
                .map(|x| at(&from.anchor, x))
                .collect()
        } else {
            (to.anchor.coord(0)..=from.head().coord(0))
                .rev()
                .map(|x| at(&from.anchor, x))
                .collect()
        };
    }

    let turn = from.head().coord(0).max(to.head().coord(0)) + 2;
    let mut path: Vec<Cell> = from.cells().collect();
    let mut cur = from.head();
    while cur.coord(0) < turn {
        cur = cur.step(x1);
        path.push(cur.clone());
    }
    for axis in 1..cur.dim() {
        let goal = to.anchor.coord(axis);
        while cur.coord(axis) != goal {
            cur = cur.step(Dir::new(axis, goal > cur.coord(axis)));
            path.push(cur.clone());
        }
    }
    while cur.coord(0) > to.head().coord(0) + 1 {
        cur = cur.step(x1.opposite());
        path.push(cur.clone());
    }
    path.extend(to.cells().collect::<Vec<_>>().into_iter().rev());
    path
}

/// Moves a straight chain onto another of the same length by repeatedly
/// carrying its rear module to the path cell ahead of its front.
pub fn transport_chain(from: &ChainSpec, to: &ChainSpec) -> Result<Trace, PlanError> {
    if from.dim() != to.dim() {
        return Err(PlanError::DimensionMismatch(from.dim(), to.dim()));
    }
    if from.length != to.length {
        return Err(PlanError::SizeMismatch(from.length, to.length));
    }
    let initial = from.configuration();
    if from == to {
        return Ok(Trace::empty(initial));
    }
    if from.length < 2 {
        return Err(PlanError::Infeasible(
            "a lone module has no pivot or support to move against".into(),
        ));
    }

    let n = from.length;
    let path = snake_path(from, to);
    let opts = PlannerOptions::default();
    let mut engine = Engine::new(World::new(&initial), &opts);
    for k in 0..path.len() - n {
        let rear = &path[k];
        let ahead = &path[k + n];
        ensure(engine.world.is_connected_without(rear), || {
            format!("snake rear {rear} is articulate")
        })?;
        let moves = boundary_transit(&engine.world, rear, |p| p == ahead, &BTreeSet::new())?;
        for m in moves {
            engine.push(m);
        }
    }
    ensure(
        engine.world.cell_set() == to.cells().collect::<BTreeSet<_>>(),
        || "transport did not end on the target chain".into(),
    )?;
    Ok(Trace::new(initial, engine.moves))
}
