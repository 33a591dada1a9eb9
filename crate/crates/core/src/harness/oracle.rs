//! Exhaustive breadth-first search over connected configurations, up to
//! translation.

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::kinematics::{apply_move, legal_moves};
use crate::lattice::{Cell, Configuration, Dir};

pub const DEFAULT_MAX_STATES: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleResult {
    pub reachable: bool,
    pub min_moves: Option<usize>,
    pub states_explored: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("size mismatch: {0} vs {1} modules")]
    SizeMismatch(usize, usize),
    #[error("{0} configuration is not connected")]
    Disconnected(&'static str),
    #[error("state budget exhausted after {states_explored} states")]
    BudgetExhausted { states_explored: usize },
}

/// Cells shifted so the lexicographically smallest one sits at the origin.
pub fn translation_key(config: &Configuration) -> Vec<Cell> {
    let base = config.cells().next().expect("nonempty").clone();
    config.cells().map(|c| c.minus(&base)).collect()
}

/// Whether `to` (up to translation) is reachable from `from` by legal moves
/// through connected configurations, and the fewest moves needed.
///
/// A lone module cannot move at all, so for one module only identical cells
/// count as reachable.
pub fn oracle_reachable(
    from: &Configuration,
    to: &Configuration,
    max_states: usize,
) -> Result<OracleResult, OracleError> {
    if from.dim() != to.dim() {
        return Err(OracleError::DimensionMismatch(from.dim(), to.dim()));
    }
    if from.len() != to.len() {
        return Err(OracleError::SizeMismatch(from.len(), to.len()));
    }
    if !from.is_connected() {
        return Err(OracleError::Disconnected("source"));
    }
    if !to.is_connected() {
        return Err(OracleError::Disconnected("target"));
    }
    if from.len() == 1 {
        let same = from == to;
        return Ok(OracleResult {
            reachable: same,
            min_moves: same.then_some(0),
            states_explored: 1,
        });
    }

    let goal = translation_key(to);
    let start = translation_key(from);
    let mut dist: FxHashMap<Vec<Cell>, usize> = FxHashMap::default();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(key) = queue.pop_front() {
        let here = dist[&key];
        if key == goal {
            return Ok(OracleResult {
                reachable: true,
                min_moves: Some(here),
                states_explored: dist.len(),
            });
        }
        let config = Configuration::new(from.dim(), key.iter().cloned()).expect("valid state");
        for a in config.cells() {
            for m in legal_moves(&config, a) {
                let next = apply_move(&config, &m).expect("enumerated moves are legal");
                if !next.is_connected() {
                    continue;
                }
                let k = translation_key(&next);
                if !dist.contains_key(&k) {
                    if dist.len() >= max_states {
                        return Err(OracleError::BudgetExhausted {
                            states_explored: dist.len(),
                        });
                    }
                    dist.insert(k.clone(), here + 1);
                    queue.push_back(k);
                }
            }
        }
    }
    Ok(OracleResult {
        reachable: false,
        min_moves: None,
        states_explored: dist.len(),
    })
}

/// Every connected configuration of `n` cells in dimension `d`, one
/// representative per translation class, in lexicographic order of their keys.
pub fn enumerate_connected(n: usize, d: usize) -> Vec<Configuration> {
    if n == 0 || d < 2 {
        return Vec::new();
    }
    let mut level: BTreeSet<Vec<Cell>> = BTreeSet::from([vec![Cell::origin(d)]]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for shape in &level {
            let cells: BTreeSet<Cell> = shape.iter().cloned().collect();
            for c in shape {
                for dir in Dir::all(d) {
                    let add = c.step(dir);
                    if cells.contains(&add) {
                        continue;
                    }
                    let grown = Configuration::new(d, cells.iter().cloned().chain([add]))
                        .expect("distinct cells");
                    next.insert(translation_key(&grown));
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|k| Configuration::new(d, k).expect("distinct cells"))
        .collect()
}
