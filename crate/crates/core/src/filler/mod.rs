//! Fillings of closed curves and surfaces inside a cubical grid.
//!
//! Curves in the plane and surfaces in space are filled by a front that
//! starts at a cap on the first input cell and sweeps the grid cell by cell,
//! branching wherever the cap splits at a neck. Curves in space are swept
//! down to their lowest level, and the planar remainder is closed with a
//! residual fill.

mod front;
mod grid;
mod residual;
mod tree;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

pub use front::{advance_front, gradually_varied, minimum_cap, seed_cell, Advance, Front, SweepState};
pub use grid::{AmbientGrid, CubeChain};
pub use residual::{residual_fill, DEFAULT_RESIDUAL_DEPTH};
pub use tree::{BranchNode, BranchTree, NodeKind};

use crate::complex::{Complex, Cube, Geometry};
use crate::error::{Error, Result};
use crate::manifold::require_closed_manifold;

/// Which side of the seed cell the first cap is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSide {
    /// The scan-direction side, which is always inside the input.
    #[default]
    Forward,
    /// The opposite side; the front floods the outside and the fill is its complement.
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FillOptions {
    pub seed_side: SeedSide,
    /// Layer limit for residual fills; `None` means no limit.
    pub residual_depth: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FillStatus {
    Complete,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillResult {
    pub fill: CubeChain,
    pub tree: BranchTree,
    pub status: FillStatus,
    /// Input cells not on the boundary of the fill; empty when complete.
    pub unswept: Vec<Cube>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Top cubes of a cubical complex.
pub fn surface_chain(m: &Complex) -> Result<(usize, CubeChain)> {
    match m.geometry() {
        Geometry::Cubical { ambient, cubes } => {
            let k = m.dimension();
            let chain = CubeChain::from_cells(k, cubes[k].iter().cloned())?;
            Ok((*ambient, chain))
        }
        _ => Err(Error::Unsupported("filling needs a cubical complex".into())),
    }
}

pub fn fill(grid: &AmbientGrid, m: &Complex) -> Result<FillResult> {
    fill_with(grid, m, &FillOptions::default())
}

pub fn fill_with(grid: &AmbientGrid, m: &Complex, options: &FillOptions) -> Result<FillResult> {
    let (ambient, surface) = surface_chain(m)?;
    if grid.dimension() != ambient || grid.top_grade() != ambient {
        return Err(Error::Unsupported(format!(
            "grid must be a full {ambient}-dimensional box"
        )));
    }
    require_closed_manifold(m, true)?;
    if let Some(c) = surface.iter().find(|c| !grid.contains_strictly(c)) {
        return Err(Error::Unsupported(format!(
            "grid must enclose the input with one cell of margin; {:?} is on or past its border",
            c.0
        )));
    }
    let grade = surface.grade();
    let result = match (grade, ambient) {
        (1, 2) | (2, 3) => sweep_fill(grid, &surface, options.seed_side)?,
        (1, 3) => ruled_fill(grid, &surface, options.residual_depth.unwrap_or(usize::MAX))?,
        _ => {
            return Err(Error::Unsupported(format!(
                "no filling for {grade}-manifolds in {ambient}-space"
            )))
        }
    };
    Ok(result)
}

fn finish(fill: CubeChain, tree: BranchTree, surface: &CubeChain, note: Option<String>) -> FillResult {
    let boundary = fill.boundary();
    let unswept: Vec<Cube> = surface.iter().filter(|c| !boundary.contains(c)).cloned().collect();
    let exact = boundary == *surface;
    FillResult {
        fill,
        tree,
        status: if exact { FillStatus::Complete } else { FillStatus::Partial },
        unswept,
        note,
    }
}

/// Codimension-one filling by advancing fronts.
fn sweep_fill(grid: &AmbientGrid, surface: &CubeChain, side: SeedSide) -> Result<FillResult> {
    let seed = seed_cell(grid, surface)?;
    let forbidden: BTreeSet<Cube> = match side {
        SeedSide::Forward => BTreeSet::new(),
        SeedSide::Backward => grid.cofaces(&seed).into_iter().take(1).collect(),
    };
    let (g, cap) = minimum_cap(grid, &seed, &forbidden)?;

    let mut state = SweepState::new(grid.clone(), surface.clone());
    state.visited.insert(g.clone());
    let mut tree = BranchTree::default();
    let root = tree.add(cap.center().unwrap_or_default(), NodeKind::Inner, None);

    let mut first = Front::new(root, CubeChain::empty(cap.grade()));
    first.filled.insert(g.clone());
    for (f, _) in g.faces() {
        if surface.contains(&f) {
            first.swept.insert(f);
        } else {
            first.cap.toggle(f);
        }
    }
    first.rim = first.cap.boundary();

    let mut queue = VecDeque::from([first]);
    let mut done: Vec<Front> = Vec::new();
    while let Some(front) = queue.pop_front() {
        match advance_front(&mut state, front) {
            Advance::Moved(f) => queue.push_back(f),
            Advance::Closed(f) => done.push(f),
            Advance::Branched { front, pieces } => {
                let parent = front.node;
                queue.push_back(front);
                for mut p in pieces {
                    p.node = tree.add(p.cap.center().unwrap_or_default(), NodeKind::Inner, Some(parent));
                    queue.push_back(p);
                }
            }
        }
    }
    for f in done {
        tree.nodes[f.node].fill = f.filled.into_iter().collect();
    }

    let top = grid.top_grade();
    if !state.escaped {
        let fill = CubeChain::from_cells(top, state.visited)?;
        return Ok(finish(fill, tree, surface, None));
    }
    // The front ran around the outside: the filling is what it never reached.
    for n in &mut tree.nodes {
        n.kind = NodeKind::Outer;
    }
    let fill = CubeChain::from_cells(
        top,
        grid.top_cells().into_iter().filter(|c| !state.visited.contains(c)),
    )?;
    let id = tree.add(fill.center().unwrap_or_default(), NodeKind::Inner, None);
    tree.nodes[id].fill = fill.iter().cloned().collect();
    Ok(finish(fill, tree, surface, None))
}

/// Curves in space: a ruled sweep of every edge down to the curve's lowest
/// level along the last axis, then a residual fill of what is left in that
/// plane.
fn ruled_fill(grid: &AmbientGrid, curve: &CubeChain, depth: usize) -> Result<FillResult> {
    let axis = grid.dimension() - 1;
    let base = curve
        .iter()
        .map(|c| c.0[axis].div_euclid(2))
        .min()
        .ok_or(Error::Empty)?;
    let mut ruled = CubeChain::empty(2);
    for edge in curve.iter() {
        if edge.0[axis].rem_euclid(2) == 1 {
            continue;
        }
        for level in (2 * base + 1..edge.0[axis]).step_by(2) {
            let mut c = edge.0.clone();
            c[axis] = level;
            ruled.toggle(Cube(c));
        }
    }
    let rest = curve.sum(&ruled.boundary())?;
    let plane = grid.slab(axis, base);
    if let Some(c) = rest.iter().find(|c| !plane.contains(c)) {
        return Err(Error::Integrity(format!("ruled sweep left {:?} off the base plane", c.0)));
    }

    let mut tree = BranchTree::default();
    let root = tree.add(
        ruled.center().or_else(|| curve.center()).unwrap_or_default(),
        NodeKind::Inner,
        None,
    );
    tree.nodes[root].fill = ruled.iter().cloned().collect();

    let residual = match residual_fill(&plane, &rest, &CubeChain::empty(1), depth) {
        Ok(r) => r,
        Err(e @ Error::DepthExhausted { .. }) => {
            return Ok(finish(ruled, tree, curve, Some(e.to_string())));
        }
        Err(e) => return Err(e),
    };
    let walls: BTreeSet<Cube> = rest.iter().cloned().collect();
    for piece in front::cap_components(&residual, &walls) {
        let id = tree.add(piece.center().unwrap_or_default(), NodeKind::Inner, Some(root));
        tree.nodes[id].fill = piece.iter().cloned().collect();
    }
    let fill = ruled.sum(&residual)?;
    Ok(finish(fill, tree, curve, None))
}
