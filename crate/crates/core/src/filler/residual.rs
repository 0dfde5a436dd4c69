use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::grid::{AmbientGrid, CubeChain};
use crate::complex::Cube;
use crate::error::{Error, Result};

pub const DEFAULT_RESIDUAL_DEPTH: usize = 3;

/// Top cells of `grid` across each face of `cell`, paired with that face.
fn across(grid: &AmbientGrid, cell: &Cube) -> Vec<(Cube, Cube)> {
    let mut out = Vec::new();
    for (f, _) in cell.faces() {
        for g in grid.cofaces(&f) {
            if &g != cell {
                out.push((f.clone(), g));
            }
        }
    }
    out
}

/// The chain of top cells bridging two caps over the same rim: the cells
/// enclosed by the cycle `Z = E ⊕ E'`.
///
/// The cells are peeled in layers starting from those touching `E`, each
/// layer crossing only faces off `Z`; a region that needs more than `depth`
/// layers is rejected with [`Error::DepthExhausted`].
pub fn residual_fill(
    grid: &AmbientGrid,
    e: &CubeChain,
    e_prime: &CubeChain,
    depth: usize,
) -> Result<CubeChain> {
    let top = grid.top_grade();
    let z = e.sum(e_prime)?;
    if z.is_empty() {
        return Ok(CubeChain::empty(top));
    }
    if z.grade() + 1 != top {
        return Err(Error::GradeMismatch {
            expected: top.saturating_sub(1),
            found: z.grade(),
        });
    }
    if !z.boundary().is_empty() {
        return Err(Error::NotACycle("caps do not share a rim".into()));
    }
    if let Some(c) = z.iter().find(|c| !grid.contains_strictly(c)) {
        return Err(Error::Unsupported(format!(
            "residual cycle touches the grid border at {:?}",
            c.0
        )));
    }

    // Even-odd labelling: crossing a face of Z flips the side.
    let cells = grid.top_cells();
    let mut side: BTreeMap<Cube, bool> = BTreeMap::new();
    let start = cells[0].clone();
    side.insert(start.clone(), false);
    let mut queue = VecDeque::from([start]);
    while let Some(cell) = queue.pop_front() {
        let here = side[&cell];
        for (f, g) in across(grid, &cell) {
            let there = here ^ z.contains(&f);
            match side.get(&g) {
                Some(&s) if s != there => {
                    return Err(Error::Integrity("residual cycle does not bound".into()))
                }
                Some(_) => {}
                None => {
                    side.insert(g.clone(), there);
                    queue.push_back(g);
                }
            }
        }
    }
    let inside: BTreeSet<Cube> = side.into_iter().filter(|(_, s)| *s).map(|(c, _)| c).collect();

    let needed = sweep_layers(grid, &inside, &z, e);
    if needed > depth {
        return Err(Error::DepthExhausted {
            needed,
            limit: depth,
        });
    }
    CubeChain::from_cells(top, inside)
}

/// Number of layers needed to sweep `inside` from the cells touching `e`.
/// Pockets not reachable from `e` are opened as fresh layer-one sources.
fn sweep_layers(grid: &AmbientGrid, inside: &BTreeSet<Cube>, z: &CubeChain, e: &CubeChain) -> usize {
    let mut layer: BTreeMap<&Cube, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for c in inside {
        if c.faces().iter().any(|(f, _)| e.contains(f)) {
            layer.insert(c, 1);
            queue.push_back(c);
        }
    }
    let mut deepest = 0;
    loop {
        while let Some(c) = queue.pop_front() {
            let l = layer[c];
            deepest = deepest.max(l);
            for (f, g) in across(grid, c) {
                if z.contains(&f) {
                    continue;
                }
                if let Some(g) = inside.get(&g) {
                    if !layer.contains_key(g) {
                        layer.insert(g, l + 1);
                        queue.push_back(g);
                    }
                }
            }
        }
        match inside.iter().find(|c| !layer.contains_key(c)) {
            Some(c) => {
                layer.insert(c, 1);
                queue.push_back(c);
            }
            None => return deepest,
        }
    }
}
