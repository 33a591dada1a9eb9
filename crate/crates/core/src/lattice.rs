//! Lattice geometry: cells, axis directions, configurations, connectivity and
//! the outer boundary.
//!
//! Everything here iterates deterministically. Cells order lexicographically and
//! directions order `+x1, -x1, +x2, -x2, ...`, so every traversal built on top of
//! this module (post-orders, transit searches, planner traces) is reproducible.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rustc_hash::FxHashSet;
use smallvec::SmallVec;
use thiserror::Error;

/// Largest absolute coordinate accepted by [`Configuration::new`].
pub const COORD_BOUND: i64 = 1 << 40;

/// Upper limit on the number of cells scanned by a complement flood fill.
const MAX_REGION_CELLS: u128 = 1 << 28;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("configuration must contain at least one cell")]
    Empty,
    #[error("cell {cell} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        cell: Cell,
        expected: usize,
        found: usize,
    },
    #[error("duplicate cell {0}")]
    DuplicateCell(Cell),
    #[error("coordinate {0} is outside the supported range")]
    CoordinateOutOfRange(i64),
    #[error("coordinate overflow while inflating the bounding box")]
    CoordinateOverflow,
    #[error("search region of {0} cells is too large")]
    RegionTooLarge(u128),
}

/// A signed unit step along one lattice axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dir {
    axis: usize,
    positive: bool,
}

impl Dir {
    pub const fn new(axis: usize, positive: bool) -> Self {
        Dir { axis, positive }
    }

    /// `+x1`, the chain axis.
    pub const fn first_axis() -> Self {
        Dir::new(0, true)
    }

    pub fn axis(self) -> usize {
        self.axis
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn sign(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    /// Position in the global direction order.
    pub fn index(self) -> usize {
        2 * self.axis + usize::from(!self.positive)
    }

    pub fn from_index(index: usize) -> Self {
        Dir::new(index / 2, index.is_multiple_of(2))
    }

    pub fn opposite(self) -> Self {
        Dir::new(self.axis, !self.positive)
    }

    pub fn is_orthogonal_to(self, other: Dir) -> bool {
        self.axis != other.axis
    }

    /// All `2d` directions in the global order.
    pub fn all(dim: usize) -> impl Iterator<Item = Dir> + Clone {
        (0..2 * dim).map(Dir::from_index)
    }
}

impl PartialOrd for Dir {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dir {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.index().cmp(&other.index())
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}x{}",
            if self.positive { '+' } else { '-' },
            self.axis + 1
        )
    }
}

/// A point of the integer lattice; one module-sized cell.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(SmallVec<[i64; 4]>);

impl Cell {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        Cell(coords.into_iter().collect())
    }

    pub fn origin(dim: usize) -> Self {
        Cell(SmallVec::from_elem(0, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> i64 {
        self.0[axis]
    }

    pub fn step(&self, dir: Dir) -> Cell {
        self.offset(dir, 1)
    }

    pub fn offset(&self, dir: Dir, k: i64) -> Cell {
        let mut next = self.0.clone();
        next[dir.axis] += dir.sign() * k;
        Cell(next)
    }

    /// Componentwise difference `self - other`.
    pub fn minus(&self, other: &Cell) -> Cell {
        Cell(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn l1_distance(&self, other: &Cell) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }

    /// The direction `d` with `self.step(d) == other`, if the two cells are
    /// face-adjacent.
    pub fn direction_to(&self, other: &Cell) -> Option<Dir> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut found = None;
        for (axis, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            match b - a {
                0 => {}
                1 | -1 if found.is_none() => found = Some(Dir::new(axis, b > a)),
                _ => return None,
            }
        }
        found
    }

    pub fn is_face_adjacent(&self, other: &Cell) -> bool {
        self.direction_to(other).is_some()
    }

    /// The `2d` cells sharing a facet with this one, in direction order.
    pub fn face_neighbors(&self) -> impl Iterator<Item = Cell> + '_ {
        Dir::all(self.dim()).map(move |d| self.step(d))
    }

    /// The `2d(d-1)` cells sharing a `(d-2)`-facet but no facet with this one.
    pub fn edge_neighbors(&self) -> Vec<Cell> {
        let dim = self.dim();
        let mut out = Vec::with_capacity(2 * dim * dim.saturating_sub(1));
        for a in Dir::all(dim) {
            for b in Dir::all(dim) {
                if a.axis < b.axis {
                    out.push(self.step(a).step(b));
                }
            }
        }
        out
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl<const D: usize> From<[i64; D]> for Cell {
    fn from(value: [i64; D]) -> Self {
        Cell::new(value)
    }
}

/// Breadth-first flood fill over face adjacency. Returns every reachable cell
/// satisfying `member`, starting from `start` (which must itself be a member).
pub fn flood_fill(start: &Cell, member: impl Fn(&Cell) -> bool) -> FxHashSet<Cell> {
    let mut seen = FxHashSet::default();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(c) = queue.pop_front() {
        for n in c.face_neighbors() {
            if !seen.contains(&n) && member(&n) {
                seen.insert(n.clone());
                queue.push_back(n);
            }
        }
    }
    seen
}

/// Splits a cell set into its face-connected components, ordered by their
/// lexicographically smallest cell.
pub fn components(cells: &BTreeSet<Cell>) -> Vec<BTreeSet<Cell>> {
    let mut left = cells.clone();
    let mut out = Vec::new();
    while let Some(start) = left.iter().next().cloned() {
        let comp = flood_fill(&start, |c| left.contains(c));
        for c in &comp {
            left.remove(c);
        }
        out.push(comp.into_iter().collect());
    }
    out
}

/// True iff `cells` is empty or face-connected.
pub fn is_connected_set(cells: &BTreeSet<Cell>) -> bool {
    match cells.iter().next() {
        None => true,
        Some(start) => flood_fill(start, |c| cells.contains(c)).len() == cells.len(),
    }
}

/// A dimension plus a nonempty set of distinct occupied cells.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    dim: usize,
    cells: BTreeSet<Cell>,
}

impl Configuration {
    pub fn new(dim: usize, cells: impl IntoIterator<Item = Cell>) -> Result<Self, LatticeError> {
        if dim < 2 {
            return Err(LatticeError::InvalidDimension(dim));
        }
        let mut set = BTreeSet::new();
        for cell in cells {
            if cell.dim() != dim {
                return Err(LatticeError::DimensionMismatch {
                    expected: dim,
                    found: cell.dim(),
                    cell,
                });
            }
            if let Some(&bad) = cell.coords().iter().find(|c| c.abs() > COORD_BOUND) {
                return Err(LatticeError::CoordinateOutOfRange(bad));
            }
            if set.contains(&cell) {
                return Err(LatticeError::DuplicateCell(cell));
            }
            set.insert(cell);
        }
        if set.is_empty() {
            return Err(LatticeError::Empty);
        }
        Ok(Configuration { dim, cells: set })
    }

    /// Convenience constructor from fixed-size coordinate arrays.
    pub fn from_points<const D: usize>(
        points: impl IntoIterator<Item = [i64; D]>,
    ) -> Result<Self, LatticeError> {
        Configuration::new(D, points.into_iter().map(Cell::from))
    }

    /// Builds a configuration from cells already known to be valid.
    pub(crate) fn from_set_unchecked(dim: usize, cells: BTreeSet<Cell>) -> Self {
        debug_assert!(!cells.is_empty());
        debug_assert!(cells.iter().all(|c| c.dim() == dim));
        Configuration { dim, cells }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    /// Cells in lexicographic order.
    pub fn cells(&self) -> impl DoubleEndedIterator<Item = &Cell> + ExactSizeIterator {
        self.cells.iter()
    }

    pub fn cell_set(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn into_cell_set(self) -> BTreeSet<Cell> {
        self.cells
    }

    pub fn is_connected(&self) -> bool {
        is_connected_set(&self.cells)
    }

    /// Inclusive per-axis minimum and maximum coordinates.
    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.dim];
        let mut hi = vec![i64::MIN; self.dim];
        for c in &self.cells {
            for (axis, &v) in c.coords().iter().enumerate() {
                lo[axis] = lo[axis].min(v);
                hi[axis] = hi[axis].max(v);
            }
        }
        (lo, hi)
    }

    /// Face-connected components of the empty cells inside the bounding box
    /// inflated by one cell on every side. The component containing the shell
    /// of the inflated box is the unbounded one.
    pub fn complement_components(&self) -> Result<ComplementComponents, LatticeError> {
        let (lo, hi) = self.bounding_box();
        let mut region_lo = Vec::with_capacity(self.dim);
        let mut extent = Vec::with_capacity(self.dim);
        let mut volume: u128 = 1;
        for axis in 0..self.dim {
            let l = lo[axis]
                .checked_sub(1)
                .ok_or(LatticeError::CoordinateOverflow)?;
            let h = hi[axis]
                .checked_add(1)
                .ok_or(LatticeError::CoordinateOverflow)?;
            let len = h.checked_sub(l).ok_or(LatticeError::CoordinateOverflow)? as u128 + 1;
            volume = volume.saturating_mul(len);
            region_lo.push(l);
            extent.push(len as usize);
        }
        if volume > MAX_REGION_CELLS {
            return Err(LatticeError::RegionTooLarge(volume));
        }
        let region = Region::new(region_lo, extent);
        let volume = volume as usize;

        let mut labels = vec![UNLABELED; volume];
        for c in &self.cells {
            labels[region.index(c).expect("cell inside its own bounding box")] = OCCUPIED;
        }

        let mut holes = Vec::new();
        let mut next_label = EXTERIOR;
        let mut queue = VecDeque::new();
        for seed in 0..volume {
            if labels[seed] != UNLABELED {
                continue;
            }
            // index 0 is a corner of the inflated shell, so the first component
            // found is the unbounded one.
            let label = next_label;
            next_label += 1;
            labels[seed] = label;
            queue.push_back(seed);
            let mut members = Vec::new();
            while let Some(idx) = queue.pop_front() {
                members.push(idx);
                for n in region.neighbors(idx) {
                    if labels[n] == UNLABELED {
                        labels[n] = label;
                        queue.push_back(n);
                    }
                }
            }
            if label != EXTERIOR {
                holes.push(members.into_iter().map(|i| region.cell_at(i)).collect());
            }
        }

        assert!(
            region.shell_indices().all(|i| labels[i] == EXTERIOR),
            "inflated shell must form a single unbounded complement component"
        );
        debug_assert_eq!(
            self.len()
                + labels.iter().filter(|&&l| l == EXTERIOR).count()
                + holes.iter().map(BTreeSet::len).sum::<usize>(),
            volume
        );

        Ok(ComplementComponents {
            region,
            labels,
            holes,
        })
    }

    /// Outer-boundary faces, the modules owning them, and the finite holes.
    pub fn outer_boundary(&self) -> Result<BoundarySummary, LatticeError> {
        let complement = self.complement_components()?;
        let mut faces = BTreeSet::new();
        let mut modules = BTreeSet::new();
        for c in &self.cells {
            for d in Dir::all(self.dim) {
                if complement.is_exterior(&c.step(d)) {
                    faces.insert((c.clone(), d));
                    modules.insert(c.clone());
                }
            }
        }
        Ok(BoundarySummary {
            faces,
            modules,
            complement,
        })
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration(d={}, ", self.dim)?;
        f.debug_set().entries(self.cells.iter()).finish()?;
        f.write_str(")")
    }
}

const OCCUPIED: u32 = 0;
const EXTERIOR: u32 = 1;
const UNLABELED: u32 = u32::MAX;

/// Dense indexing of an axis-aligned box of cells.
#[derive(Debug, Clone)]
struct Region {
    lo: Vec<i64>,
    extent: Vec<usize>,
    strides: Vec<usize>,
}

impl Region {
    fn new(lo: Vec<i64>, extent: Vec<usize>) -> Self {
        let mut strides = vec![1; extent.len()];
        for axis in (0..extent.len().saturating_sub(1)).rev() {
            strides[axis] = strides[axis + 1] * extent[axis + 1];
        }
        Region {
            lo,
            extent,
            strides,
        }
    }

    fn index(&self, c: &Cell) -> Option<usize> {
        let mut idx = 0;
        for (axis, &v) in c.coords().iter().enumerate() {
            let off = v.checked_sub(self.lo[axis])?;
            if off < 0 || off as u64 >= self.extent[axis] as u64 {
                return None;
            }
            idx += off as usize * self.strides[axis];
        }
        Some(idx)
    }

    fn cell_at(&self, mut idx: usize) -> Cell {
        let mut coords = SmallVec::<[i64; 4]>::from_elem(0, self.lo.len());
        for axis in 0..self.lo.len() {
            coords[axis] = self.lo[axis] + (idx / self.strides[axis]) as i64;
            idx %= self.strides[axis];
        }
        Cell(coords)
    }

    fn neighbors(&self, idx: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.extent.len()).flat_map(move |axis| {
            let pos = (idx / self.strides[axis]) % self.extent[axis];
            let down = (pos > 0).then(|| idx - self.strides[axis]);
            let up = (pos + 1 < self.extent[axis]).then(|| idx + self.strides[axis]);
            up.into_iter().chain(down)
        })
    }

    fn shell_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let volume: usize = self.extent.iter().product();
        (0..volume).filter(move |&idx| {
            (0..self.extent.len()).any(|axis| {
                let pos = (idx / self.strides[axis]) % self.extent[axis];
                pos == 0 || pos + 1 == self.extent[axis]
            })
        })
    }
}

/// Labelled complement of a configuration within its inflated bounding box.
#[derive(Debug, Clone)]
pub struct ComplementComponents {
    region: Region,
    labels: Vec<u32>,
    holes: Vec<BTreeSet<Cell>>,
}

impl ComplementComponents {
    /// True iff `c` is empty and belongs to the unbounded component. Cells
    /// outside the scanned box are always exterior.
    pub fn is_exterior(&self, c: &Cell) -> bool {
        match self.region.index(c) {
            None => true,
            Some(idx) => self.labels[idx] == EXTERIOR,
        }
    }

    /// Finite components of the complement, each a set of empty cells.
    pub fn holes(&self) -> &[BTreeSet<Cell>] {
        &self.holes
    }

    /// Number of exterior cells inside the scanned box.
    pub fn exterior_len(&self) -> usize {
        self.labels.iter().filter(|&&l| l == EXTERIOR).count()
    }

    /// Number of cells in the inflated bounding box.
    pub fn region_volume(&self) -> usize {
        self.labels.len()
    }
}

/// Outer boundary of a configuration.
#[derive(Debug, Clone)]
pub struct BoundarySummary {
    /// `(module, direction)` pairs whose outward cell is exterior.
    pub faces: BTreeSet<(Cell, Dir)>,
    /// Modules owning at least one outer face.
    pub modules: BTreeSet<Cell>,
    complement: ComplementComponents,
}

impl BoundarySummary {
    pub fn holes(&self) -> &[BTreeSet<Cell>] {
        self.complement.holes()
    }

    pub fn is_exterior(&self, c: &Cell) -> bool {
        self.complement.is_exterior(c)
    }

    pub fn complement(&self) -> &ComplementComponents {
        &self.complement
    }
}
