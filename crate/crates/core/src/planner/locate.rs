//! Freeing a boundary module without moving any other boundary module.

use std::collections::BTreeSet;

use super::{boundary_transit, ensure, PlanError, PlanReport, PlannerOptions};
use crate::analysis::{
    is_articulate_in, min_postorder_with_boundary, postorder, PostOrderLabels, Verdict,
};
use crate::kinematics::{Move, World};
use crate::lattice::{flood_fill, Cell, Configuration};

/// Mutable planning state: the global occupancy and the moves emitted so far.
pub(crate) struct Engine<'o> {
    pub(crate) world: World,
    pub(crate) moves: Vec<Move>,
    pub(crate) report: PlanReport,
    opts: &'o PlannerOptions,
}

impl<'o> Engine<'o> {
    pub(crate) fn new(world: World, opts: &'o PlannerOptions) -> Self {
        Engine {
            world,
            moves: Vec::new(),
            report: PlanReport::default(),
            opts,
        }
    }

    pub(crate) fn push(&mut self, m: Move) {
        self.world.apply_unchecked(&m);
        self.moves.push(m);
    }

    /// Returns a module `x` on the outer boundary of `local`, `x != root` when
    /// `local` has two or more modules, such that `x` is not articulate in the
    /// returned (updated) local configuration. Only modules off the outer
    /// boundary of `local` move, and they stay out of its unbounded complement.
    ///
    /// `labels` must be a depth-first post-order of `local` rooted at `root`.
    pub(crate) fn locate_and_free(
        &mut self,
        local: Configuration,
        root: &Cell,
        labels: &PostOrderLabels,
        depth: usize,
    ) -> Result<(Cell, Configuration), PlanError> {
        self.report.locate_calls += 1;
        self.report.max_depth = self.report.max_depth.max(depth);
        if local.len() == 1 {
            // the sole module of an inner component; its only outside neighbor
            // is the module being freed one level up
            return Ok((root.clone(), local));
        }

        let boundary = local.outer_boundary()?;
        ensure(boundary.modules.contains(root), || {
            format!("root {root} is not on the outer boundary")
        })?;
        let (x, split) = min_postorder_with_boundary(&local, &boundary, labels)?;
        if self.opts.verify_postorder {
            let fresh = postorder(&local, root)?;
            let (again, resplit) = min_postorder_with_boundary(&local, &boundary, &fresh)?;
            ensure(again == x && resplit == split, || {
                format!("reused post-order picked {x}, fresh one picked {again}")
            })?;
        }

        let Verdict::NearlyNonArticulate {
            outer,
            inner,
            inner_neighbor,
        } = split.verdict
        else {
            return Ok((x, local));
        };
        self.report.nearly_frees += 1;
        let mark = self.moves.len();

        let dim = local.dim();
        let sub = Configuration::from_set_unchecked(dim, inner);
        let sub_labels = labels.restrict(sub.cell_set(), &inner_neighbor)?;
        let (z, sub_after) = self.locate_and_free(sub, &inner_neighbor, &sub_labels, depth + 1)?;

        let mut current: BTreeSet<Cell> = outer;
        current.insert(x.clone());
        current.extend(sub_after.into_cell_set());
        ensure(self.world.is_connected_without(&z), || {
            format!("freed inner module {z} is articulate in the world")
        })?;

        self.report.transits += 1;
        let path = boundary_transit(
            &self.world,
            &z,
            |p| bridges(&current, &x, &z, p),
            &BTreeSet::new(),
        )?;
        for m in path {
            ensure(
                current.contains(m.from()) && !current.contains(m.to()),
                || format!("move {m} conflicts with the local configuration"),
            )?;
            ensure(!boundary.is_exterior(m.to()), || {
                format!("move {m} surfaces into the unbounded complement")
            })?;
            current.remove(m.from());
            current.insert(m.to().clone());
            self.push(m);
        }

        ensure(!is_articulate_in(&current, &x), || {
            format!("{x} is still articulate after reconnecting its inner component")
        })?;
        ensure(
            self.moves[mark..]
                .iter()
                .all(|m| !boundary.modules.contains(m.from())),
            || "an outer-boundary module moved".into(),
        )?;
        let after = Configuration::from_set_unchecked(dim, current);
        let after_boundary = after.outer_boundary()?;
        ensure(
            after_boundary.modules == boundary.modules && after_boundary.faces == boundary.faces,
            || "outer boundary changed while freeing".into(),
        )?;
        self.report.boundary_checks += 1;
        Ok((x, after))
    }
}

/// True iff `cells` minus `x`, with the module at `z` relocated to `p`, is
/// connected.
fn bridges(cells: &BTreeSet<Cell>, x: &Cell, z: &Cell, p: &Cell) -> bool {
    let member = |c: &Cell| c == p || (c != x && c != z && cells.contains(c));
    flood_fill(p, member).len() == cells.len() - 1
}

/// Result of a stand-alone freeing call.
#[derive(Debug, Clone)]
pub struct LocateOutcome {
    /// The freed module; not articulate in `local_after`.
    pub freed: Cell,
    pub moves: Vec<Move>,
    pub world_after: Configuration,
    pub local_after: Configuration,
    pub report: PlanReport,
}

/// Frees a module of `local` (a connected part of `world` with `s` on its outer
/// boundary), moving only modules that are off that boundary. Legality is
/// checked against all of `world`.
pub fn locate_and_free(
    world: &Configuration,
    local: &Configuration,
    s: &Cell,
) -> Result<LocateOutcome, PlanError> {
    locate_and_free_with(world, local, s, &PlannerOptions::default())
}

pub fn locate_and_free_with(
    world: &Configuration,
    local: &Configuration,
    s: &Cell,
    opts: &PlannerOptions,
) -> Result<LocateOutcome, PlanError> {
    if world.dim() != local.dim() {
        return Err(PlanError::DimensionMismatch(world.dim(), local.dim()));
    }
    ensure(local.cells().all(|c| world.contains(c)), || {
        "local configuration is not part of the world".into()
    })?;
    if !local.is_connected() {
        return Err(PlanError::Disconnected("local"));
    }
    if !world.is_connected() {
        return Err(PlanError::Disconnected("world"));
    }
    let labels = postorder(local, s)?;
    let mut engine = Engine::new(World::new(world), opts);
    let (freed, local_after) = engine.locate_and_free(local.clone(), s, &labels, 0)?;
    Ok(LocateOutcome {
        freed,
        world_after: engine.world.to_configuration(),
        moves: engine.moves,
        local_after,
        report: engine.report,
    })
}
