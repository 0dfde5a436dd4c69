//! Cell distances, stars and links.
//!
//! The `k`-cell distance between two distinct vertices counts the `k`-cells
//! in a shortest sequence where consecutive cells share a `(k-1)`-cell, the
//! first contains `x` and the last contains `y`. A vertex is at distance 0
//! from itself, so `k = 1` gives the ordinary graph distance.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::complex::{CellId, Complex};
use crate::error::{Error, Result};

/// Breadth-first distances from an origin to every cell of one grade.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceField {
    pub origin: CellId,
    pub grade: usize,
    /// Indexed by cell index; `None` marks unreachable cells.
    pub values: Vec<Option<usize>>,
}

impl DistanceField {
    pub fn get(&self, index: usize) -> Option<usize> {
        self.values.get(index).copied().flatten()
    }

    pub fn max(&self) -> Option<usize> {
        self.values.iter().flatten().copied().max()
    }
}

fn check_grade(c: &Complex, k: usize) -> Result<()> {
    if k == 0 || k > c.dimension() {
        Err(Error::GradeOutOfRange(k))
    } else {
        Ok(())
    }
}

fn check_vertex(c: &Complex, x: CellId) -> Result<()> {
    c.check(x)?;
    if x.grade != 0 {
        return Err(Error::GradeMismatch {
            expected: 0,
            found: x.grade,
        });
    }
    Ok(())
}

/// `d^(k)(x, y)` for vertices `x`, `y`; `None` when no path exists.
pub fn cell_distance(c: &Complex, k: usize, x: CellId, y: CellId) -> Result<Option<usize>> {
    check_grade(c, k)?;
    check_vertex(c, x)?;
    check_vertex(c, y)?;
    if x == y {
        return Ok(Some(0));
    }
    let targets: BTreeSet<usize> = c.cells_at_vertex(y.index, k).iter().copied().collect();
    let mut level = vec![None; c.cell_count(k)];
    let mut queue = VecDeque::new();
    for &s in c.cells_at_vertex(x.index, k) {
        level[s] = Some(1);
        queue.push_back(s);
    }
    while let Some(cell) = queue.pop_front() {
        let d = level[cell].expect("queued cells have a level");
        if targets.contains(&cell) {
            return Ok(Some(d));
        }
        for n in c.neighbors(CellId::new(k, cell)) {
            if level[n].is_none() {
                level[n] = Some(d + 1);
                queue.push_back(n);
            }
        }
    }
    Ok(None)
}

/// Distances from `origin` to all `k`-cells over shared-`(k-1)`-cell
/// adjacency. Cells meeting the origin (containing it, or contained in it
/// when the origin has higher grade) are at distance 0.
pub fn distances_from(c: &Complex, k: usize, origin: CellId) -> Result<DistanceField> {
    check_grade(c, k)?;
    c.check(origin)?;
    let sources: Vec<usize> = if origin.grade == 0 {
        c.cells_at_vertex(origin.index, k).to_vec()
    } else if origin.grade == k {
        vec![origin.index]
    } else if origin.grade < k {
        // k-cells whose closure contains the origin
        let mut up: BTreeSet<usize> = BTreeSet::from([origin.index]);
        for g in origin.grade..k {
            up = up
                .iter()
                .flat_map(|&i| c.cofaces_of(CellId::new(g, i)).iter().copied())
                .collect();
        }
        up.into_iter().collect()
    } else {
        c.closure(&BTreeSet::from([origin]))
            .into_iter()
            .filter(|x| x.grade == k)
            .map(|x| x.index)
            .collect()
    };
    let mut values = vec![None; c.cell_count(k)];
    let mut queue = VecDeque::new();
    for s in sources {
        if values[s].is_none() {
            values[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(cell) = queue.pop_front() {
        let d = values[cell].expect("queued cells have a value");
        for n in c.neighbors(CellId::new(k, cell)) {
            if values[n].is_none() {
                values[n] = Some(d + 1);
                queue.push_back(n);
            }
        }
    }
    Ok(DistanceField {
        origin,
        grade: k,
        values,
    })
}

/// Cells whose closure contains `x`, together with all of their faces.
pub fn star(c: &Complex, x: CellId) -> Result<BTreeSet<CellId>> {
    c.check(x)?;
    let mut up = BTreeSet::from([x]);
    let mut frontier = vec![x];
    while let Some(cell) = frontier.pop() {
        for &j in c.cofaces_of(cell) {
            let co = CellId::new(cell.grade + 1, j);
            if up.insert(co) {
                frontier.push(co);
            }
        }
    }
    Ok(c.closure(&up))
}

/// Union of vertex stars along a list of vertices.
pub fn star_of_vertices(c: &Complex, vertices: &[CellId]) -> Result<BTreeSet<CellId>> {
    let mut out = BTreeSet::new();
    for &v in vertices {
        check_vertex(c, v)?;
        out.extend(star(c, v)?);
    }
    Ok(out)
}

/// Cells of the star of vertex `x` whose closure misses `x`.
pub fn link(c: &Complex, x: CellId) -> Result<BTreeSet<CellId>> {
    check_vertex(c, x)?;
    Ok(star(c, x)?
        .into_iter()
        .filter(|cell| c.vertices_of(*cell).binary_search(&x.index).is_err())
        .collect())
}

/// The link of a vertex as a complex of its own, or `None` for an isolated vertex.
pub fn link_complex(c: &Complex, x: CellId) -> Result<Option<Complex>> {
    let cells = link(c, x)?;
    if cells.is_empty() {
        return Ok(None);
    }
    c.subcomplex(&cells).map(Some)
}
