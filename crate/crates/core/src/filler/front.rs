use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::grid::{AmbientGrid, CubeChain};
use crate::complex::Cube;
use crate::error::{Error, Result};
use crate::gf2::{solve_subset, BitVec};

/// First cell of `m_cells` in lexicographic scan order.
pub fn seed_cell(grid: &AmbientGrid, m_cells: &CubeChain) -> Result<Cube> {
    let seed = m_cells.first().ok_or(Error::Empty)?;
    if !grid.contains(seed) {
        return Err(Error::Unsupported("seed cell lies outside the grid".into()));
    }
    Ok(seed.clone())
}

/// The first non-forbidden grid cell `g` on `e`, with `E = ∂g - e`.
///
/// Every candidate is a unit cube with the same number of faces, so the
/// smallest cap is decided by scan order alone.
pub fn minimum_cap(
    grid: &AmbientGrid,
    e: &Cube,
    forbidden: &BTreeSet<Cube>,
) -> Result<(Cube, CubeChain)> {
    let g = grid
        .cofaces(e)
        .into_iter()
        .find(|g| !forbidden.contains(g))
        .ok_or_else(|| Error::NoCap(format!("{:?}", e.0)))?;
    let mut cap = CubeChain::from_cells(e.grade(), g.faces().into_iter().map(|(f, _)| f))?;
    cap.remove(e);
    Ok((g, cap))
}

/// Whether `a ⊕ b` bounds a set of grid cells one grade up, each of which
/// contains a cell of `a`. This is a single sweep of `a` onto `b`.
pub fn gradually_varied(grid: &AmbientGrid, a: &CubeChain, b: &CubeChain) -> bool {
    if a.grade() != b.grade() {
        return false;
    }
    let Ok(target) = a.sum(b) else {
        return false;
    };
    if target.is_empty() {
        return true;
    }
    let candidates: BTreeSet<Cube> = a.iter().flat_map(|c| grid.cofaces(c)).collect();
    let mut faces: BTreeMap<Cube, usize> = BTreeMap::new();
    for g in &candidates {
        for (f, _) in g.faces() {
            let next = faces.len();
            faces.entry(f).or_insert(next);
        }
    }
    if target.iter().any(|c| !faces.contains_key(c)) {
        return false;
    }
    let n = faces.len();
    let columns: Vec<BitVec> = candidates
        .iter()
        .map(|g| BitVec::from_ones(n, g.faces().iter().map(|(f, _)| faces[f])))
        .collect();
    let rhs = BitVec::from_ones(n, target.iter().map(|c| faces[c]));
    solve_subset(&columns, &rhs).is_some()
}

/// One advancing front of the filling: the cap `E` still open towards
/// unvisited cells, its rim `B = ∂E`, the cells of the input swept so far
/// and the grid cells this front has claimed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Front {
    pub node: usize,
    pub cap: CubeChain,
    pub rim: CubeChain,
    pub swept: BTreeSet<Cube>,
    pub filled: BTreeSet<Cube>,
}

impl Front {
    pub(crate) fn new(node: usize, cap: CubeChain) -> Self {
        let rim = cap.boundary();
        Self {
            node,
            cap,
            rim,
            swept: BTreeSet::new(),
            filled: BTreeSet::new(),
        }
    }
}

/// Shared bookkeeping for every front of one filling.
#[derive(Debug, Clone)]
pub struct SweepState {
    pub grid: AmbientGrid,
    pub surface: CubeChain,
    /// `(m-1)`-faces of the input; caps are not considered connected across them.
    pub(crate) walls: BTreeSet<Cube>,
    pub visited: BTreeSet<Cube>,
    /// Set once a front runs into the outer faces of the grid.
    pub escaped: bool,
}

impl SweepState {
    pub fn new(grid: AmbientGrid, surface: CubeChain) -> Self {
        let walls = surface.boundary_faces();
        Self {
            grid,
            surface,
            walls,
            visited: BTreeSet::new(),
            escaped: false,
        }
    }
}

impl CubeChain {
    fn boundary_faces(&self) -> BTreeSet<Cube> {
        self.iter()
            .flat_map(|c| c.faces().into_iter().map(|(f, _)| f))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Advance {
    /// The front swept forward and is still one piece.
    Moved(Front),
    /// Nothing left to sweep behind this cap.
    Closed(Front),
    /// The cap split; `front` keeps the largest piece, `pieces` start new branches.
    Branched { front: Front, pieces: Vec<Front> },
}

/// Sweeps every cap cell of `front` across into the next grid cell, then
/// splits the new cap if it fell apart at a neck.
pub fn advance_front(state: &mut SweepState, mut front: Front) -> Advance {
    let mut entered = BTreeSet::new();
    let mut stuck = Vec::new();
    for c in front.cap.iter() {
        let ahead: Vec<Cube> = state
            .grid
            .cofaces(c)
            .into_iter()
            .filter(|g| !state.visited.contains(g))
            .collect();
        if ahead.is_empty() {
            stuck.push(c.clone());
        }
        entered.extend(ahead);
    }
    for c in &stuck {
        front.cap.remove(c);
    }
    if entered.is_empty() {
        front.rim = front.cap.boundary();
        return Advance::Closed(front);
    }
    for g in &entered {
        state.visited.insert(g.clone());
        front.filled.insert(g.clone());
        for (f, _) in g.faces() {
            if state.surface.contains(&f) {
                front.swept.insert(f);
            } else {
                front.cap.toggle(f);
            }
        }
    }
    // Cells entered by neighbouring fronts this round may leave faces behind.
    let settled: Vec<Cube> = front
        .cap
        .iter()
        .filter(|c| state.grid.cofaces(c).iter().all(|g| state.visited.contains(g)))
        .cloned()
        .collect();
    for c in &settled {
        if state.grid.cofaces(c).len() < 2 {
            state.escaped = true;
        }
        front.cap.remove(c);
    }
    if front.cap.is_empty() {
        front.rim = front.cap.boundary();
        return Advance::Closed(front);
    }
    let mut parts = cap_components(&front.cap, &state.walls);
    if parts.len() == 1 {
        front.rim = front.cap.boundary();
        return Advance::Moved(front);
    }
    // Largest piece continues; ties keep scan order.
    let keep = (0..parts.len())
        .max_by(|&i, &j| parts[i].len().cmp(&parts[j].len()).then(j.cmp(&i)))
        .unwrap_or(0);
    let kept = parts.remove(keep);
    front.cap = kept;
    front.rim = front.cap.boundary();
    let pieces = parts
        .into_iter()
        .map(|cap| Front::new(usize::MAX, cap))
        .collect();
    Advance::Branched { front, pieces }
}

/// Components of a cap, joined through faces that are not on the input.
pub(crate) fn cap_components(cap: &CubeChain, walls: &BTreeSet<Cube>) -> Vec<CubeChain> {
    let cells: Vec<&Cube> = cap.iter().collect();
    let mut by_face: BTreeMap<Cube, Vec<usize>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        for (f, _) in c.faces() {
            if !walls.contains(&f) {
                by_face.entry(f).or_default().push(i);
            }
        }
    }
    let mut parent: Vec<usize> = (0..cells.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for members in by_face.values() {
        for w in members.windows(2) {
            let (a, b) = (root(&mut parent, w[0]), root(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Cube>> = BTreeMap::new();
    for (i, c) in cells.iter().enumerate() {
        let r = root(&mut parent, i);
        groups.entry(r).or_default().push((*c).clone());
    }
    groups
        .into_values()
        .map(|g| CubeChain::from_cells(cap.grade(), g).expect("cap cells share a grade"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_cycle(x: i64, y: i64) -> CubeChain {
        CubeChain::from_cells(2, [Cube::voxel(&[x, y])]).unwrap().boundary()
    }

    fn grid2() -> AmbientGrid {
        AmbientGrid::new(vec![-4, -4], vec![8, 8]).unwrap()
    }

    #[test]
    fn seed_is_first_in_scan_order() {
        let far = square_cycle(3, 3);
        let near = square_cycle(0, 0);
        let both = far.sum(&near).unwrap();
        assert_eq!(seed_cell(&grid2(), &both).unwrap(), Cube(vec![0, 1]));
        assert!(seed_cell(&grid2(), &CubeChain::empty(1)).is_err());
    }

    #[test]
    fn caps_of_edges_and_squares() {
        let grid = grid2();
        let e = Cube(vec![1, 0]);
        let (g, cap) = minimum_cap(&grid, &e, &BTreeSet::new()).unwrap();
        assert_eq!(g, Cube(vec![1, 1]));
        assert_eq!(cap.len(), 3);

        let both: BTreeSet<Cube> = grid.cofaces(&e).into_iter().collect();
        assert!(matches!(minimum_cap(&grid, &e, &both), Err(Error::NoCap(_))));

        let grid3 = AmbientGrid::new(vec![-2; 3], vec![2; 3]).unwrap();
        let sq = Cube(vec![1, 1, 0]);
        let (g, cap) = minimum_cap(&grid3, &sq, &BTreeSet::new()).unwrap();
        assert_eq!(g, Cube(vec![1, 1, 1]));
        assert_eq!(cap.len(), 5);
    }

    #[test]
    fn translate_is_gradually_varied() {
        let grid = grid2();
        let a = square_cycle(0, 0);
        assert!(gradually_varied(&grid, &a, &a));
        // The sum is the 2x1 rectangle, swept by the two squares on `a`.
        let b = square_cycle(1, 0);
        assert!(gradually_varied(&grid, &a, &b));
        assert!(!gradually_varied(&grid, &a, &square_cycle(5, 5)));
    }

    #[test]
    fn components_split_at_walls() {
        let walls: BTreeSet<Cube> = [Cube(vec![2, 2])].into();
        // Two edges meeting only at the walled vertex (1, 1).
        let cap = CubeChain::from_cells(1, [Cube(vec![1, 2]), Cube(vec![2, 3])]).unwrap();
        assert_eq!(cap_components(&cap, &walls).len(), 2);
        assert_eq!(cap_components(&cap, &BTreeSet::new()).len(), 1);
    }
}
