use std::collections::BTreeSet;

use super::locate::Engine;
use super::{boundary_transit, ensure, ChainSpec, PlanError, PlanReport, PlannerOptions};
use crate::analysis::postorder;
use crate::kinematics::{validate_trace, Trace, World};
use crate::lattice::Configuration;

/// A canonicalization trace with its resulting chain and counters.
#[derive(Debug, Clone)]
pub struct Canonicalized {
    pub trace: Trace,
    pub chain: ChainSpec,
    pub report: PlanReport,
}

/// Reconfigures `config` into the straight chain `s + k*e1`, where `s` is its
/// lexicographically greatest module. `s` never moves.
pub fn canonicalize(config: &Configuration) -> Result<(Trace, ChainSpec), PlanError> {
    let out = canonicalize_with(config, &PlannerOptions::default())?;
    Ok((out.trace, out.chain))
}

pub fn canonicalize_with(
    config: &Configuration,
    opts: &PlannerOptions,
) -> Result<Canonicalized, PlanError> {
    if !config.is_connected() {
        return Err(PlanError::Disconnected("input"));
    }
    let n = config.len();
    // maximal x1, ties broken by the remaining coordinates
    let anchor = config.cells().next_back().expect("nonempty").clone();
    let chain = ChainSpec::new(anchor.clone(), n);

    let mut engine = Engine::new(World::new(config), opts);
    let mut remaining = config.clone();
    for i in 1..n {
        let labels = postorder(&remaining, &anchor)?;
        let (freed, updated) = engine.locate_and_free(remaining, &anchor, &labels, 0)?;
        ensure(freed != anchor, || "anchor selected for removal".into())?;
        ensure(engine.world.is_connected_without(&freed), || {
            format!("freed module {freed} is articulate in the world")
        })?;

        let target = chain.cell(i);
        engine.report.transits += 1;
        let path = boundary_transit(&engine.world, &freed, |p| *p == target, &BTreeSet::new())?;
        for m in path {
            engine.push(m);
        }

        let mut cells = updated.into_cell_set();
        cells.remove(&freed);
        remaining = Configuration::from_set_unchecked(config.dim(), cells);
    }

    let end = engine.world.cell_set();
    ensure(end == chain.cells().collect::<BTreeSet<_>>(), || {
        "canonicalization did not end on the chain".into()
    })?;
    let trace = Trace::new(config.clone(), engine.moves);
    if opts.validate_output {
        let replayed = validate_trace(&trace)?;
        ensure(replayed.cell_set() == &end, || {
            "replayed trace disagrees with the planner state".into()
        })?;
    }
    Ok(Canonicalized {
        trace,
        chain,
        report: engine.report,
    })
}
