use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::Cube;
use crate::error::{Error, Result};

/// A box of the integer lattice. Axes with `lo == hi` are flat, so a grid
/// may also be a slab (a plane inside 3-space, say).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientGrid {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl AmbientGrid {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::Malformed("grid bounds must have one entry per axis".into()));
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::Malformed("grid lower bound exceeds upper bound".into()));
        }
        Ok(Self { lo, hi })
    }

    /// Smallest box holding every cube, widened by `margin` on each side.
    pub fn around<'a, I: IntoIterator<Item = &'a Cube>>(cubes: I, margin: i64) -> Result<Self> {
        let mut lo: Option<Vec<i64>> = None;
        let mut hi: Option<Vec<i64>> = None;
        for cube in cubes {
            for corner in cube.corners() {
                match (&mut lo, &mut hi) {
                    (Some(l), Some(h)) => {
                        for (k, v) in corner.iter().enumerate() {
                            l[k] = l[k].min(*v);
                            h[k] = h[k].max(*v);
                        }
                    }
                    _ => {
                        lo = Some(corner.clone());
                        hi = Some(corner);
                    }
                }
            }
        }
        let (lo, hi) = lo.zip(hi).ok_or(Error::Empty)?;
        Self::new(
            lo.into_iter().map(|v| v - margin).collect(),
            hi.into_iter().map(|v| v + margin).collect(),
        )
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn dimension(&self) -> usize {
        self.lo.len()
    }

    fn spans(&self, axis: usize) -> bool {
        self.hi[axis] > self.lo[axis]
    }

    /// Grade of the grid's top cells: the number of non-flat axes.
    pub fn top_grade(&self) -> usize {
        (0..self.dimension()).filter(|&a| self.spans(a)).count()
    }

    /// The same box with `axis` flattened to lattice value `level`.
    pub fn slab(&self, axis: usize, level: i64) -> Self {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        lo[axis] = level;
        hi[axis] = level;
        Self { lo, hi }
    }

    pub fn contains(&self, cube: &Cube) -> bool {
        cube.ambient() == self.dimension()
            && cube.0.iter().enumerate().all(|(a, &c)| {
                if self.spans(a) {
                    2 * self.lo[a] <= c && c <= 2 * self.hi[a]
                } else {
                    c == 2 * self.lo[a]
                }
            })
    }

    /// Inside the grid and off its outer faces.
    pub fn contains_strictly(&self, cube: &Cube) -> bool {
        self.contains(cube)
            && cube.0.iter().enumerate().all(|(a, &c)| {
                !self.spans(a) || (2 * self.lo[a] < c && c < 2 * self.hi[a])
            })
    }

    /// Grid cells one grade up that contain `cube`, scan side first: axes
    /// ascending, the `+` side of each axis before the `-` side.
    pub fn cofaces(&self, cube: &Cube) -> Vec<Cube> {
        let mut out = Vec::new();
        for a in 0..self.dimension() {
            if !self.spans(a) || cube.0[a].rem_euclid(2) == 1 {
                continue;
            }
            for delta in [1, -1] {
                let mut c = cube.0.clone();
                c[a] += delta;
                let c = Cube(c);
                if self.contains(&c) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Whether `cube` is a top cell of this grid.
    pub fn is_top_cell(&self, cube: &Cube) -> bool {
        self.contains(cube)
            && cube
                .0
                .iter()
                .enumerate()
                .all(|(a, &c)| (c.rem_euclid(2) == 1) == self.spans(a))
    }

    /// All top cells, in lexicographic order.
    pub fn top_cells(&self) -> Vec<Cube> {
        let mut out: Vec<Vec<i64>> = vec![Vec::new()];
        for a in 0..self.dimension() {
            let values: Vec<i64> = if self.spans(a) {
                (self.lo[a]..self.hi[a]).map(|v| 2 * v + 1).collect()
            } else {
                vec![2 * self.lo[a]]
            };
            out = out
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(Cube).collect()
    }
}

/// A mod-2 chain of lattice cubes of one grade.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CubeChain {
    grade: usize,
    cells: BTreeSet<Cube>,
}

impl CubeChain {
    pub fn empty(grade: usize) -> Self {
        Self {
            grade,
            cells: BTreeSet::new(),
        }
    }

    pub fn from_cells<I: IntoIterator<Item = Cube>>(grade: usize, cells: I) -> Result<Self> {
        let mut out = Self::empty(grade);
        for c in cells {
            if c.grade() != grade {
                return Err(Error::GradeMismatch {
                    expected: grade,
                    found: c.grade(),
                });
            }
            out.toggle(c);
        }
        Ok(out)
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &Cube) -> bool {
        self.cells.contains(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cube> {
        self.cells.iter()
    }

    pub fn first(&self) -> Option<&Cube> {
        self.cells.first()
    }

    pub fn cells(&self) -> &BTreeSet<Cube> {
        &self.cells
    }

    pub fn toggle(&mut self, c: Cube) {
        if !self.cells.remove(&c) {
            self.cells.insert(c);
        }
    }

    pub fn remove(&mut self, c: &Cube) -> bool {
        self.cells.remove(c)
    }

    pub fn sum(&self, other: &CubeChain) -> Result<CubeChain> {
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                expected: self.grade,
                found: other.grade,
            });
        }
        let mut out = self.clone();
        for c in other.iter() {
            out.toggle(c.clone());
        }
        Ok(out)
    }

    /// Mod-2 boundary; the boundary of a 0-chain is empty.
    pub fn boundary(&self) -> CubeChain {
        let mut out = CubeChain::empty(self.grade.saturating_sub(1));
        if self.grade == 0 {
            return out;
        }
        for c in &self.cells {
            for (f, _) in c.faces() {
                out.toggle(f);
            }
        }
        out
    }

    /// Integer centroid of the cell midpoints, rounded toward the lower corner.
    pub fn center(&self) -> Option<Vec<i64>> {
        let first = self.cells.first()?;
        let n = self.cells.len() as i64;
        let mut sum = vec![0i64; first.ambient()];
        for c in &self.cells {
            for (s, v) in sum.iter_mut().zip(&c.0) {
                *s += v;
            }
        }
        Some(sum.into_iter().map(|s| s.div_euclid(2 * n)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_and_cofaces() {
        let edge = Cube(vec![0, 1]);
        let grid = AmbientGrid::around([&edge], 1).unwrap();
        assert_eq!(grid.lo(), &[-1, -1]);
        assert_eq!(grid.hi(), &[1, 2]);
        assert_eq!(grid.top_grade(), 2);
        assert_eq!(grid.cofaces(&edge), vec![Cube(vec![1, 1]), Cube(vec![-1, 1])]);
        assert_eq!(grid.top_cells().len(), 6);
        assert!(grid.contains_strictly(&edge));
    }

    #[test]
    fn slabs_are_flat() {
        let grid = AmbientGrid::new(vec![0, 0, 0], vec![2, 2, 2]).unwrap().slab(2, 1);
        assert_eq!(grid.top_grade(), 2);
        assert_eq!(grid.top_cells().len(), 4);
        assert!(grid.is_top_cell(&Cube(vec![1, 3, 2])));
        assert!(!grid.contains(&Cube(vec![1, 3, 3])));
    }

    #[test]
    fn chain_boundary_and_center() {
        let sq = CubeChain::from_cells(2, [Cube::voxel(&[0, 0])]).unwrap();
        assert_eq!(sq.boundary().len(), 4);
        assert!(sq.boundary().boundary().is_empty());
        assert_eq!(sq.center(), Some(vec![0, 0]));
    }
}
