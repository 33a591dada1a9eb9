//! Connectivity-graph analysis: depth-first post-order, articulation tests and
//! the split classification used to pick the next module to free.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::lattice::{components, BoundarySummary, Cell, Configuration, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("module {0} is not in the configuration")]
    ModuleAbsent(Cell),
    #[error("root {0} is not in the configuration")]
    RootAbsent(Cell),
    #[error("configuration is not connected")]
    NotConnected,
    #[error("configuration needs at least two modules")]
    TooSmall,
    #[error("root {0} is not a boundary module")]
    RootNotOnBoundary(Cell),
    /// A structural guarantee of the freeing procedure failed to hold.
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Depth-first finishing ranks, `1..=n`, with the root finishing last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostOrderLabels {
    root: Cell,
    rank: BTreeMap<Cell, usize>,
    parent: BTreeMap<Cell, Cell>,
}

impl PostOrderLabels {
    pub fn root(&self) -> &Cell {
        &self.root
    }

    pub fn rank(&self, cell: &Cell) -> Option<usize> {
        self.rank.get(cell).copied()
    }

    /// DFS-tree parent; `None` for the root.
    pub fn parent(&self, cell: &Cell) -> Option<&Cell> {
        self.parent.get(cell)
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn ranks(&self) -> impl Iterator<Item = (&Cell, usize)> {
        self.rank.iter().map(|(c, &r)| (c, r))
    }

    /// Cells in finishing order.
    pub fn in_order(&self) -> Vec<Cell> {
        let mut v: Vec<(usize, &Cell)> = self.rank.iter().map(|(c, &r)| (r, c)).collect();
        v.sort_unstable();
        v.into_iter().map(|(_, c)| c.clone()).collect()
    }

    /// Restricts the labels to `cells` (a subtree hanging below `new_root`),
    /// re-ranking order-preservingly to `1..=|cells|`. Fails unless `new_root`
    /// finishes last among `cells` and every other cell's parent lies inside.
    pub fn restrict(&self, cells: &BTreeSet<Cell>, new_root: &Cell) -> Result<Self, AnalysisError> {
        if !cells.contains(new_root) {
            return Err(AnalysisError::RootAbsent(new_root.clone()));
        }
        let mut kept: Vec<(usize, Cell)> = Vec::with_capacity(cells.len());
        for c in cells {
            let r = self
                .rank(c)
                .ok_or_else(|| AnalysisError::ModuleAbsent(c.clone()))?;
            kept.push((r, c.clone()));
        }
        kept.sort_unstable();
        if kept.last().map(|(_, c)| c) != Some(new_root) {
            return Err(AnalysisError::StructureViolation(format!(
                "{new_root} does not finish last in its subtree"
            )));
        }
        let mut parent = BTreeMap::new();
        for (_, c) in &kept {
            if c == new_root {
                continue;
            }
            match self.parent(c) {
                Some(p) if cells.contains(p) => {
                    parent.insert(c.clone(), p.clone());
                }
                _ => {
                    return Err(AnalysisError::StructureViolation(format!(
                        "{c} hangs outside the subtree of {new_root}"
                    )))
                }
            }
        }
        Ok(PostOrderLabels {
            root: new_root.clone(),
            rank: kept
                .into_iter()
                .enumerate()
                .map(|(i, (_, c))| (c, i + 1))
                .collect(),
            parent,
        })
    }
}

/// Iterative depth-first search from `root`, neighbors explored in direction
/// order; ranks are finishing times.
pub fn postorder(config: &Configuration, root: &Cell) -> Result<PostOrderLabels, AnalysisError> {
    postorder_of(config.cell_set(), root)
}

pub(crate) fn postorder_of(
    cells: &BTreeSet<Cell>,
    root: &Cell,
) -> Result<PostOrderLabels, AnalysisError> {
    if !cells.contains(root) {
        return Err(AnalysisError::RootAbsent(root.clone()));
    }
    let mut rank = BTreeMap::new();
    let mut parent = BTreeMap::new();
    let mut visited = BTreeSet::from([root.clone()]);
    let mut stack: Vec<(Cell, Vec<Cell>)> = vec![(root.clone(), root.face_neighbors().collect())];
    let mut next_rank = 1;
    while let Some((cell, pending)) = stack.last_mut() {
        if let Some(pos) = pending
            .iter()
            .position(|n| cells.contains(n) && !visited.contains(n))
        {
            let n = pending[pos].clone();
            pending.drain(..=pos);
            let from = cell.clone();
            visited.insert(n.clone());
            parent.insert(n.clone(), from);
            let ns = n.face_neighbors().collect();
            stack.push((n, ns));
        } else {
            let (done, _) = stack.pop().expect("nonempty");
            rank.insert(done, next_rank);
            next_rank += 1;
        }
    }
    if rank.len() != cells.len() {
        return Err(AnalysisError::NotConnected);
    }
    Ok(PostOrderLabels {
        root: root.clone(),
        rank,
        parent,
    })
}

/// True iff removing `m` disconnects the configuration. A lone module is not
/// articulate.
pub fn is_articulate(config: &Configuration, m: &Cell) -> Result<bool, AnalysisError> {
    if !config.contains(m) {
        return Err(AnalysisError::ModuleAbsent(m.clone()));
    }
    Ok(is_articulate_in(config.cell_set(), m))
}

pub(crate) fn is_articulate_in(cells: &BTreeSet<Cell>, m: &Cell) -> bool {
    if cells.len() < 2 {
        return false;
    }
    let Some(start) = m.face_neighbors().find(|n| cells.contains(n)) else {
        // isolated module: removing it cannot split the rest further
        return false;
    };
    crate::lattice::flood_fill(&start, |c| c != m && cells.contains(c)).len() != cells.len() - 1
}

/// All modules whose removal leaves the configuration connected.
pub fn nonarticulate_modules(config: &Configuration) -> BTreeSet<Cell> {
    config
        .cells()
        .filter(|m| !is_articulate_in(config.cell_set(), m))
        .cloned()
        .collect()
}

/// Verdict for removing one module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    NonArticulate,
    /// Exactly two components remain and `inner` touches no outer-boundary
    /// module; `inner_neighbor` is the only module of `inner` adjacent to the
    /// subject.
    NearlyNonArticulate {
        outer: BTreeSet<Cell>,
        inner: BTreeSet<Cell>,
        inner_neighbor: Cell,
    },
    OtherArticulate {
        components: Vec<BTreeSet<Cell>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitClassification {
    pub subject: Cell,
    pub verdict: Verdict,
}

impl SplitClassification {
    pub fn is_non_articulate(&self) -> bool {
        matches!(self.verdict, Verdict::NonArticulate)
    }

    pub fn is_nearly_non_articulate(&self) -> bool {
        matches!(self.verdict, Verdict::NearlyNonArticulate { .. })
    }
}

/// Classifies the removal of `x`.
pub fn split_at(config: &Configuration, x: &Cell) -> Result<SplitClassification, AnalysisError> {
    let boundary = config.outer_boundary()?;
    split_with_boundary(config, &boundary, x)
}

/// [`split_at`] with a precomputed boundary. For nearly non-articulate
/// verdicts, checks that the face of `x` opposite its inner neighbor is an
/// outer face, that every other neighbor lies in the outer component, and that
/// at least one such neighbor exists.
pub fn split_with_boundary(
    config: &Configuration,
    boundary: &BoundarySummary,
    x: &Cell,
) -> Result<SplitClassification, AnalysisError> {
    if !config.contains(x) {
        return Err(AnalysisError::ModuleAbsent(x.clone()));
    }
    if config.len() < 2 {
        return Err(AnalysisError::TooSmall);
    }
    let mut rest = config.cell_set().clone();
    rest.remove(x);
    let comps = components(&rest);
    let subject = x.clone();
    if comps.len() == 1 {
        return Ok(SplitClassification {
            subject,
            verdict: Verdict::NonArticulate,
        });
    }
    let meets_boundary = |comp: &BTreeSet<Cell>| comp.iter().any(|c| boundary.modules.contains(c));
    if comps.len() == 2 && meets_boundary(&comps[0]) != meets_boundary(&comps[1]) {
        let (outer, inner) = if meets_boundary(&comps[0]) {
            (comps[0].clone(), comps[1].clone())
        } else {
            (comps[1].clone(), comps[0].clone())
        };
        let inner_adj: Vec<Cell> = x.face_neighbors().filter(|n| inner.contains(n)).collect();
        if inner_adj.len() != 1 {
            return Err(AnalysisError::StructureViolation(format!(
                "{x} has {} neighbors in its inner component",
                inner_adj.len()
            )));
        }
        let y = inner_adj.into_iter().next().expect("one neighbor");
        let toward_y = x.direction_to(&y).expect("adjacent");
        if !boundary.faces.contains(&(x.clone(), toward_y.opposite())) {
            return Err(AnalysisError::StructureViolation(format!(
                "face of {x} opposite {y} is not on the outer boundary"
            )));
        }
        let others: Vec<Cell> = x
            .face_neighbors()
            .filter(|n| *n != y && config.contains(n))
            .collect();
        if others.is_empty() {
            return Err(AnalysisError::StructureViolation(format!(
                "{x} has no neighbor besides {y}"
            )));
        }
        if let Some(w) = others.iter().find(|w| !outer.contains(w)) {
            return Err(AnalysisError::StructureViolation(format!(
                "neighbor {w} of {x} is not in the outer component"
            )));
        }
        return Ok(SplitClassification {
            subject,
            verdict: Verdict::NearlyNonArticulate {
                outer,
                inner,
                inner_neighbor: y,
            },
        });
    }
    Ok(SplitClassification {
        subject,
        verdict: Verdict::OtherArticulate { components: comps },
    })
}

/// The outer-boundary module with the smallest rank, and its classification.
pub fn min_postorder_boundary(
    config: &Configuration,
    labels: &PostOrderLabels,
) -> Result<(Cell, SplitClassification), AnalysisError> {
    let boundary = config.outer_boundary()?;
    min_postorder_with_boundary(config, &boundary, labels)
}

pub fn min_postorder_with_boundary(
    config: &Configuration,
    boundary: &BoundarySummary,
    labels: &PostOrderLabels,
) -> Result<(Cell, SplitClassification), AnalysisError> {
    if config.len() < 2 {
        return Err(AnalysisError::TooSmall);
    }
    if !boundary.modules.contains(labels.root()) {
        return Err(AnalysisError::RootNotOnBoundary(labels.root().clone()));
    }
    let x = boundary
        .modules
        .iter()
        .map(|c| {
            labels
                .rank(c)
                .map(|r| (r, c))
                .ok_or_else(|| AnalysisError::ModuleAbsent(c.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .min()
        .map(|(_, c)| c.clone())
        .expect("boundary is nonempty");
    if &x == labels.root() {
        return Err(AnalysisError::StructureViolation(format!(
            "root {x} has the smallest boundary rank"
        )));
    }
    let split = split_with_boundary(config, boundary, &x)?;
    if let Verdict::OtherArticulate { components } = &split.verdict {
        return Err(AnalysisError::StructureViolation(format!(
            "smallest-rank boundary module {x} splits into {} components",
            components.len()
        )));
    }
    Ok((x, split))
}
