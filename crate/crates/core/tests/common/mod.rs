//! Independent reference implementations and fixtures shared by the
//! integration tests. Nothing here goes through the library's own
//! connectivity, boundary or move code; cells are plain coordinate vectors.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slidecube::harness::{random_connected, GenSpec, Style};
use slidecube::{Cell, Configuration};

pub type P = Vec<i64>;

/// `(kind, from, to)` with kind `R` or `S`.
pub type PlanarMove = (char, (i64, i64), (i64, i64));

pub fn pts(config: &Configuration) -> BTreeSet<P> {
    config.cells().map(|c| c.coords().to_vec()).collect()
}

pub fn to_config(d: usize, cells: &BTreeSet<P>) -> Configuration {
    Configuration::new(d, cells.iter().map(|p| Cell::new(p.iter().copied()))).unwrap()
}

pub fn cell(p: &P) -> Cell {
    Cell::new(p.iter().copied())
}

pub fn nbrs(p: &P) -> Vec<P> {
    let mut out = Vec::with_capacity(2 * p.len());
    for i in 0..p.len() {
        for s in [1, -1] {
            let mut q = p.clone();
            q[i] += s;
            out.push(q);
        }
    }
    out
}

pub fn components_bf(cells: &BTreeSet<P>) -> Vec<BTreeSet<P>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in cells {
        if seen.contains(start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start.clone()];
        seen.insert(start.clone());
        while let Some(p) = stack.pop() {
            for q in nbrs(&p) {
                if cells.contains(&q) && seen.insert(q.clone()) {
                    stack.push(q);
                }
            }
            comp.insert(p);
        }
        out.push(comp);
    }
    out
}

pub fn connected_bf(cells: &BTreeSet<P>) -> bool {
    components_bf(cells).len() <= 1
}

pub fn articulate_bf(cells: &BTreeSet<P>, x: &P) -> bool {
    let mut rest = cells.clone();
    rest.remove(x);
    !connected_bf(&rest)
}

/// Empty cells reachable from far away, inside a box with a two-cell margin.
pub fn exterior_bf(cells: &BTreeSet<P>) -> BTreeSet<P> {
    let d = cells.iter().next().unwrap().len();
    let lo: Vec<i64> = (0..d)
        .map(|i| cells.iter().map(|p| p[i]).min().unwrap() - 2)
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| cells.iter().map(|p| p[i]).max().unwrap() + 2)
        .collect();
    let inside = |p: &P| (0..d).all(|i| lo[i] <= p[i] && p[i] <= hi[i]);
    let mut ext = BTreeSet::from([lo.clone()]);
    let mut queue = VecDeque::from([lo.clone()]);
    while let Some(p) = queue.pop_front() {
        for q in nbrs(&p) {
            if inside(&q) && !cells.contains(&q) && ext.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    ext
}

pub fn outer_modules_bf(cells: &BTreeSet<P>) -> BTreeSet<P> {
    let ext = exterior_bf(cells);
    cells
        .iter()
        .filter(|p| nbrs(p).iter().any(|q| ext.contains(q)))
        .cloned()
        .collect()
}

pub fn hole_count_bf(cells: &BTreeSet<P>) -> usize {
    let ext = exterior_bf(cells);
    let d = cells.iter().next().unwrap().len();
    let lo: Vec<i64> = (0..d)
        .map(|i| cells.iter().map(|p| p[i]).min().unwrap())
        .collect();
    let hi: Vec<i64> = (0..d)
        .map(|i| cells.iter().map(|p| p[i]).max().unwrap())
        .collect();
    let mut empty = BTreeSet::new();
    let mut p = lo.clone();
    loop {
        if !cells.contains(&p) && !ext.contains(&p) {
            empty.insert(p.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return components_bf(&empty).len();
            }
            p[i] += 1;
            if p[i] <= hi[i] {
                break;
            }
            p[i] = lo[i];
            i += 1;
        }
    }
}

/// Hollow box surface `[lo, hi]^d`.
pub fn shell(d: usize, lo: i64, hi: i64) -> BTreeSet<P> {
    box_shell(&vec![lo; d], &vec![hi; d])
}

/// Surface of the box with opposite corners `lo` and `hi`.
pub fn box_shell(lo: &[i64], hi: &[i64]) -> BTreeSet<P> {
    let d = lo.len();
    let mut out = BTreeSet::new();
    let mut p = lo.to_vec();
    loop {
        if (0..d).any(|i| p[i] == lo[i] || p[i] == hi[i]) {
            out.insert(p.clone());
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            p[i] += 1;
            if p[i] <= hi[i] {
                break;
            }
            p[i] = lo[i];
            i += 1;
        }
    }
}

/// Edge and corner cells of a box surface. They touch no interior cell, so
/// removing any of them keeps the cavity closed.
pub fn box_skeleton(lo: &[i64], hi: &[i64]) -> Vec<P> {
    box_shell(lo, hi)
        .into_iter()
        .filter(|p| {
            (0..lo.len())
                .filter(|&i| p[i] == lo[i] || p[i] == hi[i])
                .count()
                >= 2
        })
        .collect()
}

/// A hollow box of side `side >= 5` holding up to `inner` cells inside: a
/// stem touching one random wall, and a random blob grown from it that keeps
/// at least one empty cell between itself and every wall.
pub fn shell_with_content(d: usize, side: i64, inner: usize, rng: &mut ChaCha8Rng) -> BTreeSet<P> {
    assert!(side >= 5);
    let mut cells = shell(d, 0, side - 1);
    let deep = |p: &P| p.iter().all(|&v| 2 <= v && v <= side - 3);
    let axis = rng.random_range(0..d);
    let high = rng.random_bool(0.5);
    let mut stem: P = (0..d).map(|_| rng.random_range(2..=side - 3)).collect();
    stem[axis] = if high { side - 2 } else { 1 };
    let mut first = stem.clone();
    first[axis] = if high { side - 3 } else { 2 };
    cells.insert(stem);
    if inner < 2 {
        return cells;
    }
    let mut grown = vec![first.clone()];
    cells.insert(first);
    while grown.len() + 1 < inner {
        let frontier: Vec<P> = grown
            .iter()
            .flat_map(nbrs)
            .filter(|q| deep(q) && !cells.contains(q))
            .collect();
        if frontier.is_empty() {
            break;
        }
        let q = frontier[rng.random_range(0..frontier.len())].clone();
        cells.insert(q.clone());
        grown.push(q);
    }
    cells
}

/// Two nested hollow boxes joined by one bridge cell, with a plug hanging
/// inside the inner box. For suitable roots, freeing the outer module above
/// the bridge takes two levels of recursion.
pub fn nested_shells(d: usize) -> BTreeSet<P> {
    let mut cells = shell(d, 0, 10);
    cells.extend(shell(d, 2, 8));
    let mut bridge = vec![5; d];
    bridge[1] = 1;
    cells.insert(bridge);
    let mut plug = vec![5; d];
    plug[0] = 4;
    plug[1] = 3;
    cells.insert(plug);
    cells
}

/// Mixed corpus of connected configurations with `2 <= n <= max_n`: generated
/// blobs, trees and serpentines, plus shells with inner content.
pub fn corpus(d: usize, count: usize, max_n: usize, seed: u64) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let side = if d == 2 { rng.random_range(5..=9) } else { 5 };
        let shell_size = if d <= 3 {
            shell(d, 0, side - 1).len()
        } else {
            usize::MAX
        };
        let k = out.len() % 5;
        let config = if k == 4 && shell_size < max_n {
            let room = (max_n - shell_size).min(((side - 4) as usize).pow(d as u32) + 1);
            let inner = rng.random_range(1..=room);
            to_config(d, &shell_with_content(d, side, inner, &mut rng))
        } else {
            let style = [
                Style::Blob,
                Style::Tree,
                Style::Serpentine,
                Style::Blob,
                Style::Blob,
            ][k];
            random_connected(&GenSpec {
                n: rng.random_range(2..=max_n),
                d,
                seed: rng.random(),
                style,
            })
            .unwrap()
        };
        out.push(config);
    }
    out
}

/// All legal moves of the module at `a` in the plane, as
/// `(kind, from, to)`, computed from the 2D
/// rectangular model: a slide needs a wall of two modules along one side of
/// the step, a rotation turns a module a quarter turn about an adjacent
/// pivot through an empty corner.
pub fn planar_moves(cells: &BTreeSet<(i64, i64)>, a: (i64, i64)) -> BTreeSet<PlanarMove> {
    const DIRS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    let occ = |p: (i64, i64)| cells.contains(&p);
    let add = |p: (i64, i64), q: (i64, i64)| (p.0 + q.0, p.1 + q.1);
    let mut out = BTreeSet::new();
    for u in DIRS {
        let target = add(a, u);
        if occ(target) {
            continue;
        }
        // slide: both cells beside the step on one side are occupied
        for side in DIRS {
            if side.0 * u.0 + side.1 * u.1 != 0 {
                continue;
            }
            if occ(add(a, side)) && occ(add(target, side)) {
                out.insert(('S', a, target));
            }
        }
    }
    for u in DIRS {
        let pivot = add(a, u);
        if !occ(pivot) {
            continue;
        }
        for turn in DIRS {
            if turn.0 * u.0 + turn.1 * u.1 != 0 {
                continue;
            }
            let corner = add(a, turn);
            let target = add(pivot, turn);
            if !occ(corner) && !occ(target) {
                out.insert(('R', a, target));
            }
        }
    }
    out
}

/// `d`-dimensional version of [`planar_moves`]: the same rules applied in
/// every coordinate plane.
pub fn lattice_moves(cells: &BTreeSet<P>, a: &P) -> BTreeSet<(char, P, P)> {
    let d = a.len();
    let unit = |axis: usize, s: i64| {
        let mut v = vec![0; d];
        v[axis] = s;
        v
    };
    let add = |p: &P, q: &P| p.iter().zip(q).map(|(x, y)| x + y).collect::<P>();
    let dirs: Vec<(usize, P)> = (0..d)
        .flat_map(|i| [(i, unit(i, 1)), (i, unit(i, -1))])
        .collect();
    let mut out = BTreeSet::new();
    for (i, u) in &dirs {
        for (j, v) in &dirs {
            if i == j {
                continue;
            }
            let step = add(a, u);
            if !cells.contains(&step)
                && cells.contains(&add(a, v))
                && cells.contains(&add(&step, v))
            {
                out.insert(('S', a.clone(), step.clone()));
            }
            // pivot at a+u, turning towards v
            let target = add(&step, v);
            if cells.contains(&step) && !cells.contains(&add(a, v)) && !cells.contains(&target) {
                out.insert(('R', a.clone(), target));
            }
        }
    }
    out
}

/// Checks that `rank`/`parent` describe a depth-first search of `cells` from
/// `root` with ranks assigned in post-order.
pub fn assert_dfs_postorder(
    cells: &BTreeSet<P>,
    root: &P,
    rank: &dyn Fn(&P) -> Option<usize>,
    parent: &dyn Fn(&P) -> Option<P>,
) {
    let n = cells.len();
    let ranks: BTreeSet<usize> = cells
        .iter()
        .map(|p| rank(p).expect("every cell ranked"))
        .collect();
    assert_eq!(ranks, (1..=n).collect());
    assert_eq!(rank(root), Some(n));
    assert_eq!(parent(root), None);
    let ancestors = |p: &P| {
        let mut chain = vec![p.clone()];
        let mut cur = p.clone();
        while let Some(q) = parent(&cur) {
            assert!(
                nbrs(&cur).contains(&q),
                "tree edge {cur:?}-{q:?} is not a lattice edge"
            );
            assert!(
                rank(&q) > rank(&cur),
                "parent {q:?} ranked before child {cur:?}"
            );
            chain.push(q.clone());
            cur = q;
            assert!(chain.len() <= n, "parent links cycle");
        }
        assert_eq!(&cur, root);
        chain
    };
    let chains: std::collections::BTreeMap<P, Vec<P>> =
        cells.iter().map(|p| (p.clone(), ancestors(p))).collect();
    // subtree ranks are contiguous and end at the subtree root
    for p in cells {
        let sub: Vec<usize> = cells
            .iter()
            .filter(|q| chains[*q].contains(p))
            .map(|q| rank(q).unwrap())
            .collect();
        let lo = *sub.iter().min().unwrap();
        assert_eq!(
            rank(p).unwrap() - lo + 1,
            sub.len(),
            "subtree of {p:?} not contiguous"
        );
    }
    // no cross edges
    for p in cells {
        for q in nbrs(p) {
            if cells.contains(&q) {
                assert!(
                    chains[p].contains(&q) || chains[&q].contains(p),
                    "cross edge {p:?}-{q:?}"
                );
            }
        }
    }
}
