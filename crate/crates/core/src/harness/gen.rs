use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{Cell, Configuration, Dir, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    /// Uniform attachment to a random exposed face.
    Blob,
    /// Growth restricted to cells that touch exactly one module when possible.
    Tree,
    /// Boustrophedon path in the `x1`/`x2` plane.
    Serpentine,
}

impl FromStr for Style {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "blob" => Ok(Style::Blob),
            "tree" => Ok(Style::Tree),
            "serpentine" => Ok(Style::Serpentine),
            other => Err(format!(
                "unknown style `{other}` (expected blob, tree or serpentine)"
            )),
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Style::Blob => "blob",
            Style::Tree => "tree",
            Style::Serpentine => "serpentine",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GenSpec {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub style: Style,
}

/// A connected configuration of exactly `spec.n` cells containing the origin.
/// Identical specs give identical configurations.
pub fn random_connected(spec: &GenSpec) -> Result<Configuration, LatticeError> {
    if spec.d < 2 {
        return Err(LatticeError::InvalidDimension(spec.d));
    }
    if spec.n == 0 {
        return Err(LatticeError::Empty);
    }
    let cells = match spec.style {
        Style::Serpentine => serpentine(spec.n, spec.d),
        Style::Blob | Style::Tree => grow(spec),
    };
    Configuration::new(spec.d, cells)
}

fn grow(spec: &GenSpec) -> Vec<Cell> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut order = vec![Cell::origin(spec.d)];
    let mut occupied: BTreeSet<Cell> = order.iter().cloned().collect();
    while order.len() < spec.n {
        // exposed faces, with multiplicity, in deterministic order
        let mut faces = Vec::new();
        let mut leafy = Vec::new();
        for c in &order {
            for d in Dir::all(spec.d) {
                let n = c.step(d);
                if occupied.contains(&n) {
                    continue;
                }
                if spec.style == Style::Tree
                    && n.face_neighbors().filter(|m| occupied.contains(m)).count() == 1
                {
                    leafy.push(n.clone());
                }
                faces.push(n);
            }
        }
        let pool = if leafy.is_empty() { &faces } else { &leafy };
        let pick = pool[rng.random_range(0..pool.len())].clone();
        occupied.insert(pick.clone());
        order.push(pick);
    }
    order
}

fn serpentine(n: usize, d: usize) -> Vec<Cell> {
    let run = ((n as f64).sqrt().ceil() as i64).max(2);
    let mut out = Vec::with_capacity(n);
    let mut row = 0i64;
    'rows: loop {
        let ys: Vec<i64> = if row % 2 == 0 {
            (0..run).collect()
        } else {
            (0..run).rev().collect()
        };
        for &y in &ys {
            if out.len() == n {
                break 'rows;
            }
            out.push(at(d, 2 * row, y));
        }
        if out.len() == n {
            break;
        }
        out.push(at(d, 2 * row + 1, *ys.last().expect("run >= 2")));
        row += 1;
    }
    out
}

fn at(d: usize, x1: i64, x2: i64) -> Cell {
    let mut coords = vec![0; d];
    coords[0] = x1;
    coords[1] = x2;
    Cell::new(coords)
}
