//! Graded cell complexes with mod-2 boundary algebra.
//!
//! A [`Complex`] stores, for every grade `g >= 1`, the boundary of each
//! `g`-cell as a sorted list of `(g-1)`-cell indices. Indices are assigned
//! lexicographically (over sorted vertex tuples for simplicial input, over
//! doubled lattice coordinates for cubical input), so two builds from the
//! same top cells in any order produce identical complexes.
//!
//! Every incidence also carries a sign. Chain arithmetic is done over GF(2)
//! and ignores the signs; they are only consumed by the orientability check.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell named by its grade and its index within that grade.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct CellId {
    pub grade: usize,
    pub index: usize,
}

impl CellId {
    pub const fn new(grade: usize, index: usize) -> Self {
        Self { grade, index }
    }

    pub const fn vertex(index: usize) -> Self {
        Self { grade: 0, index }
    }
}

impl From<(usize, usize)> for CellId {
    fn from((grade, index): (usize, usize)) -> Self {
        Self { grade, index }
    }
}

impl From<CellId> for (usize, usize) {
    fn from(c: CellId) -> Self {
        (c.grade, c.index)
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.grade, self.index)
    }
}

/// An axis-aligned unit cube of the integer lattice in doubled coordinates.
///
/// Coordinate `2c` means the cube is degenerate at lattice value `c` along
/// that axis; coordinate `2c + 1` means it spans `[c, c + 1]`. The grade of
/// the cube is the number of odd coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cube(pub Vec<i64>);

impl Cube {
    /// The full-dimensional unit cube whose lowest corner is `corner`.
    pub fn voxel(corner: &[i64]) -> Self {
        Cube(corner.iter().map(|c| 2 * c + 1).collect())
    }

    pub fn vertex(point: &[i64]) -> Self {
        Cube(point.iter().map(|c| 2 * c).collect())
    }

    pub fn ambient(&self) -> usize {
        self.0.len()
    }

    pub fn grade(&self) -> usize {
        self.0.iter().filter(|c| c.rem_euclid(2) == 1).count()
    }

    /// Axes along which the cube has extent, ascending.
    pub fn extent_axes(&self) -> Vec<usize> {
        (0..self.0.len())
            .filter(|&a| self.0[a].rem_euclid(2) == 1)
            .collect()
    }

    /// Codimension-one faces with their induced signs.
    ///
    /// For extent axes `a_0 < a_1 < ...`, the face at the upper end of `a_j`
    /// carries `(-1)^j` and the face at the lower end carries `-(-1)^j`.
    pub fn faces(&self) -> Vec<(Cube, i8)> {
        let mut out = Vec::with_capacity(2 * self.grade());
        for (j, axis) in self.extent_axes().into_iter().enumerate() {
            let parity: i8 = if j % 2 == 0 { 1 } else { -1 };
            let mut lower = self.0.clone();
            lower[axis] -= 1;
            let mut upper = self.0.clone();
            upper[axis] += 1;
            out.push((Cube(lower), -parity));
            out.push((Cube(upper), parity));
        }
        out
    }

    /// Lattice corners of the cube, in lexicographic order.
    pub fn corners(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for &c in &self.0 {
            let choices: Vec<i64> = if c.rem_euclid(2) == 1 {
                vec![(c - 1) / 2, (c + 1) / 2]
            } else {
                vec![c.div_euclid(2)]
            };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Midpoint of the cube in lattice units.
    pub fn midpoint(&self) -> Vec<f64> {
        self.0.iter().map(|&c| c as f64 / 2.0).collect()
    }
}

/// Where the cells of a complex came from; kept for export and for the
/// cubical filler, never consulted by the combinatorial algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Geometry {
    /// `simplices[g][j]` is the sorted vertex-id tuple of cell `(g, j)`.
    Simplicial { simplices: Vec<Vec<Vec<usize>>> },
    /// `cubes[g][j]` is the lattice cube of cell `(g, j)`.
    Cubical { ambient: usize, cubes: Vec<Vec<Cube>> },
    /// Cells given directly by their boundary lists.
    Explicit,
}

/// A set of cells of one grade, added mod 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Chain {
    grade: usize,
    members: BTreeSet<usize>,
}

impl Chain {
    pub fn empty(grade: usize) -> Self {
        Self {
            grade,
            members: BTreeSet::new(),
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(grade: usize, indices: I) -> Self {
        let mut chain = Self::empty(grade);
        for i in indices {
            chain.toggle(i);
        }
        chain
    }

    /// Builds a chain from cell ids; all of them must share one grade.
    pub fn from_cells<I: IntoIterator<Item = CellId>>(grade: usize, cells: I) -> Result<Self> {
        let mut chain = Self::empty(grade);
        for c in cells {
            if c.grade != grade {
                return Err(Error::GradeMismatch {
                    expected: grade,
                    found: c.grade,
                });
            }
            chain.toggle(c.index);
        }
        Ok(chain)
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.contains(&index)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.members.iter().map(move |&i| CellId::new(self.grade, i))
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    /// Adds one cell mod 2.
    pub fn toggle(&mut self, index: usize) {
        if !self.members.remove(&index) {
            self.members.insert(index);
        }
    }

    /// In-place mod-2 sum; grades must agree.
    pub fn add_assign(&mut self, other: &Chain) -> Result<()> {
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                expected: self.grade,
                found: other.grade,
            });
        }
        for i in other.indices() {
            self.toggle(i);
        }
        Ok(())
    }
}

/// Mod-2 sum (symmetric difference) of two chains of the same grade.
pub fn mod2_sum(a: &Chain, b: &Chain) -> Result<Chain> {
    let mut out = a.clone();
    out.add_assign(b)?;
    Ok(out)
}

/// A finite graded cell complex. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    /// `boundaries[g][j]`: sorted indices of the `(g-1)`-cells bounding `(g, j)`.
    boundaries: Vec<Vec<Vec<usize>>>,
    /// Incidence signs aligned with `boundaries`.
    signs: Vec<Vec<Vec<i8>>>,
    cofaces: Vec<Vec<Vec<usize>>>,
    /// `vertex_sets[g][j]`: sorted vertex indices in the closure of `(g, j)`.
    vertex_sets: Vec<Vec<Vec<usize>>>,
    /// `incident[v][g]`: the `g`-cells whose closure contains vertex `v`.
    incident: Vec<Vec<Vec<usize>>>,
    geometry: Geometry,
    labels: BTreeMap<CellId, String>,
}

impl Complex {
    /// Builds the closure of a list of simplices, each given as a tuple of
    /// `dimension + 1` distinct vertex ids.
    ///
    /// Vertex `(0, j)` is the `j`-th smallest vertex id that occurs.
    pub fn from_simplices(dimension: usize, top: &[Vec<usize>]) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = BTreeSet::new();
        let mut faces: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); dimension + 1];
        for simplex in top {
            if simplex.len() != dimension + 1 {
                return Err(Error::Malformed(format!(
                    "simplex {:?} has {} vertices, expected {}",
                    simplex,
                    simplex.len(),
                    dimension + 1
                )));
            }
            let mut sorted = simplex.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Malformed(format!(
                    "simplex {simplex:?} repeats a vertex"
                )));
            }
            if !seen.insert(sorted.clone()) {
                return Err(Error::DuplicateCell(format!("simplex {simplex:?}")));
            }
            collect_simplex_faces(&sorted, &mut faces);
        }

        let simplices: Vec<Vec<Vec<usize>>> =
            faces.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut boundaries = vec![vec![Vec::new(); simplices[0].len()]];
        let mut signs = vec![vec![Vec::new(); simplices[0].len()]];
        for g in 1..=dimension {
            let lower: BTreeMap<&[usize], usize> = simplices[g - 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            let mut b_grade = Vec::with_capacity(simplices[g].len());
            let mut s_grade = Vec::with_capacity(simplices[g].len());
            for s in &simplices[g] {
                let mut entries: Vec<(usize, i8)> = (0..s.len())
                    .map(|drop| {
                        let face: Vec<usize> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != drop)
                            .map(|(_, &v)| v)
                            .collect();
                        let sign = if drop % 2 == 0 { 1 } else { -1 };
                        (lower[face.as_slice()], sign)
                    })
                    .collect();
                entries.sort_unstable();
                b_grade.push(entries.iter().map(|e| e.0).collect());
                s_grade.push(entries.iter().map(|e| e.1).collect());
            }
            boundaries.push(b_grade);
            signs.push(s_grade);
        }
        Self::assemble(
            boundaries,
            signs,
            Geometry::Simplicial { simplices },
            BTreeMap::new(),
        )
    }

    /// Builds the closure of a list of lattice cubes that all have the same
    /// grade; that grade becomes the dimension of the complex.
    pub fn from_cubes(ambient: usize, top: &[Cube]) -> Result<Self> {
        let first = top.first().ok_or(Error::Empty)?;
        let dimension = first.grade();
        let mut cubes: Vec<BTreeSet<Cube>> = vec![BTreeSet::new(); dimension + 1];
        for cube in top {
            if cube.ambient() != ambient {
                return Err(Error::Malformed(format!(
                    "cube {:?} does not live in {ambient}-space",
                    cube.0
                )));
            }
            if cube.grade() != dimension {
                return Err(Error::Malformed(format!(
                    "cube {:?} has grade {}, expected {dimension}",
                    cube.0,
                    cube.grade()
                )));
            }
            if !cubes[dimension].insert(cube.clone()) {
                return Err(Error::DuplicateCell(format!("cube {:?}", cube.0)));
            }
        }
        for g in (1..=dimension).rev() {
            let faces: Vec<Cube> = cubes[g]
                .iter()
                .flat_map(|c| c.faces().into_iter().map(|(f, _)| f))
                .collect();
            cubes[g - 1].extend(faces);
        }

        let cubes: Vec<Vec<Cube>> = cubes.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut boundaries = vec![vec![Vec::new(); cubes[0].len()]];
        let mut signs = vec![vec![Vec::new(); cubes[0].len()]];
        for g in 1..=dimension {
            let lower: BTreeMap<&Cube, usize> =
                cubes[g - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
            let mut b_grade = Vec::with_capacity(cubes[g].len());
            let mut s_grade = Vec::with_capacity(cubes[g].len());
            for c in &cubes[g] {
                let mut entries: Vec<(usize, i8)> = c
                    .faces()
                    .into_iter()
                    .map(|(f, sign)| (lower[&f], sign))
                    .collect();
                entries.sort_unstable();
                b_grade.push(entries.iter().map(|e| e.0).collect());
                s_grade.push(entries.iter().map(|e| e.1).collect());
            }
            boundaries.push(b_grade);
            signs.push(s_grade);
        }
        Self::assemble(
            boundaries,
            signs,
            Geometry::Cubical { ambient, cubes },
            BTreeMap::new(),
        )
    }

    /// The solid made of the given voxels (full-dimensional unit cubes).
    pub fn from_voxels(ambient: usize, corners: &[Vec<i64>]) -> Result<Self> {
        let cubes: Vec<Cube> = corners.iter().map(|c| Cube::voxel(c)).collect();
        Self::from_cubes(ambient, &cubes)
    }

    /// The boundary surface of a voxel set: every face shared by an odd
    /// number of voxels.
    pub fn voxel_boundary(ambient: usize, corners: &[Vec<i64>]) -> Result<Self> {
        let mut voxels = BTreeSet::new();
        for c in corners {
            if c.len() != ambient {
                return Err(Error::Malformed(format!(
                    "voxel {c:?} does not live in {ambient}-space"
                )));
            }
            if !voxels.insert(Cube::voxel(c)) {
                return Err(Error::DuplicateCell(format!("voxel {c:?}")));
            }
        }
        let mut faces = BTreeSet::new();
        for v in &voxels {
            for (f, _) in v.faces() {
                if !faces.remove(&f) {
                    faces.insert(f);
                }
            }
        }
        let faces: Vec<Cube> = faces.into_iter().collect();
        Self::from_cubes(ambient, &faces)
    }

    /// Builds a complex from explicit boundary lists: `cells[g - 1][j]` lists
    /// the `(g-1)`-cells bounding cell `(g, j)`. Incidence signs are derived
    /// by propagating a coherent orientation over each cell's boundary.
    pub fn from_boundaries(vertex_count: usize, cells: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Empty);
        }
        let mut boundaries = vec![vec![Vec::new(); vertex_count]];
        for (offset, grade_cells) in cells.into_iter().enumerate() {
            let g = offset + 1;
            if grade_cells.is_empty() {
                return Err(Error::Malformed(format!("grade {g} has no cells")));
            }
            let below = boundaries[g - 1].len();
            let mut seen = BTreeSet::new();
            let mut b_grade = Vec::with_capacity(grade_cells.len());
            for (j, mut b) in grade_cells.into_iter().enumerate() {
                b.sort_unstable();
                if b.is_empty() {
                    return Err(Error::Malformed(format!("cell ({g}, {j}) has empty boundary")));
                }
                if b.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Malformed(format!(
                        "cell ({g}, {j}) lists a boundary cell twice"
                    )));
                }
                if let Some(&bad) = b.iter().find(|&&i| i >= below) {
                    return Err(Error::UnknownCell(CellId::new(g - 1, bad)));
                }
                if g == 1 && b.len() != 2 {
                    return Err(Error::Malformed(format!(
                        "edge ({g}, {j}) must have exactly two endpoints"
                    )));
                }
                if !seen.insert(b.clone()) {
                    return Err(Error::DuplicateCell(format!("cell ({g}, {j})")));
                }
                b_grade.push(b);
            }
            boundaries.push(b_grade);
        }
        let signs = derive_signs(&boundaries)?;
        Self::assemble(boundaries, signs, Geometry::Explicit, BTreeMap::new())
    }

    fn assemble(
        boundaries: Vec<Vec<Vec<usize>>>,
        signs: Vec<Vec<Vec<i8>>>,
        geometry: Geometry,
        labels: BTreeMap<CellId, String>,
    ) -> Result<Self> {
        if boundaries.is_empty() || boundaries[0].is_empty() {
            return Err(Error::Empty);
        }
        let dimension = boundaries.len() - 1;

        let mut cofaces: Vec<Vec<Vec<usize>>> =
            boundaries.iter().map(|g| vec![Vec::new(); g.len()]).collect();
        for g in 1..=dimension {
            for (j, b) in boundaries[g].iter().enumerate() {
                for &f in b {
                    cofaces[g - 1][f].push(j);
                }
            }
        }

        // ∂∂ = 0 over GF(2)
        for g in 2..=dimension {
            for (j, b) in boundaries[g].iter().enumerate() {
                let mut acc = BTreeSet::new();
                for &f in b {
                    for &ff in &boundaries[g - 1][f] {
                        if !acc.remove(&ff) {
                            acc.insert(ff);
                        }
                    }
                }
                if !acc.is_empty() {
                    return Err(Error::Integrity(format!(
                        "boundary of the boundary of cell ({g}, {j}) is not empty"
                    )));
                }
            }
        }

        let mut vertex_sets: Vec<Vec<Vec<usize>>> = Vec::with_capacity(dimension + 1);
        vertex_sets.push((0..boundaries[0].len()).map(|i| vec![i]).collect());
        for g in 1..=dimension {
            let sets = boundaries[g]
                .iter()
                .map(|b| {
                    let mut vs: Vec<usize> = b
                        .iter()
                        .flat_map(|&f| vertex_sets[g - 1][f].iter().copied())
                        .collect();
                    vs.sort_unstable();
                    vs.dedup();
                    vs
                })
                .collect();
            vertex_sets.push(sets);
        }

        let mut incident = vec![vec![Vec::new(); dimension + 1]; boundaries[0].len()];
        for (g, sets) in vertex_sets.iter().enumerate() {
            for (j, vs) in sets.iter().enumerate() {
                for &v in vs {
                    incident[v][g].push(j);
                }
            }
        }

        Ok(Self {
            boundaries,
            signs,
            cofaces,
            vertex_sets,
            incident,
            geometry,
            labels,
        })
    }

    /// Attaches human-readable names; unknown cells are rejected.
    pub fn with_labels(mut self, labels: BTreeMap<CellId, String>) -> Result<Self> {
        for c in labels.keys() {
            if !self.contains(*c) {
                return Err(Error::UnknownCell(*c));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Top grade `k`.
    pub fn dimension(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn cell_count(&self, grade: usize) -> usize {
        self.boundaries.get(grade).map_or(0, Vec::len)
    }

    pub fn cell_counts(&self) -> Vec<usize> {
        self.boundaries.iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.cell_count(0)
    }

    pub fn cells(&self, grade: usize) -> impl Iterator<Item = CellId> {
        (0..self.cell_count(grade)).map(move |i| CellId::new(grade, i))
    }

    pub fn contains(&self, cell: CellId) -> bool {
        cell.index < self.cell_count(cell.grade)
    }

    pub fn check(&self, cell: CellId) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::UnknownCell(cell))
        }
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }

    pub fn labels(&self) -> &BTreeMap<CellId, String> {
        &self.labels
    }

    pub fn label(&self, cell: CellId) -> Option<&str> {
        self.labels.get(&cell).map(String::as_str)
    }

    /// Looks up a vertex by its label.
    pub fn vertex_named(&self, name: &str) -> Option<CellId> {
        self.labels
            .iter()
            .find(|(c, l)| c.grade == 0 && l.as_str() == name)
            .map(|(c, _)| *c)
    }

    /// Raw boundary list of a cell (empty for vertices). Panics on unknown cells.
    pub fn facets_of(&self, cell: CellId) -> &[usize] {
        &self.boundaries[cell.grade][cell.index]
    }

    pub fn incidence_signs(&self, cell: CellId) -> &[i8] {
        &self.signs[cell.grade][cell.index]
    }

    /// Raw coface list of a cell. Panics on unknown cells.
    pub fn cofaces_of(&self, cell: CellId) -> &[usize] {
        &self.cofaces[cell.grade][cell.index]
    }

    /// Vertices in the closure of a cell. Panics on unknown cells.
    pub fn vertices_of(&self, cell: CellId) -> &[usize] {
        &self.vertex_sets[cell.grade][cell.index]
    }

    /// The `grade`-cells whose closure contains vertex `v`.
    pub fn cells_at_vertex(&self, v: usize, grade: usize) -> &[usize] {
        self.incident
            .get(v)
            .and_then(|g| g.get(grade))
            .map_or(&[], Vec::as_slice)
    }

    /// All `(grade+1)`-cells whose boundary contains `cell`.
    pub fn cofaces(&self, cell: CellId) -> Result<Vec<CellId>> {
        self.check(cell)?;
        Ok(self.cofaces[cell.grade][cell.index]
            .iter()
            .map(|&j| CellId::new(cell.grade + 1, j))
            .collect())
    }

    /// Mod-2 boundary of a chain; grade drops by one.
    pub fn boundary(&self, chain: &Chain) -> Result<Chain> {
        if chain.grade() == 0 {
            return Err(Error::GradeOutOfRange(0));
        }
        if chain.grade() > self.dimension() {
            return Err(Error::GradeOutOfRange(chain.grade()));
        }
        let mut out = Chain::empty(chain.grade() - 1);
        for i in chain.indices() {
            let cell = CellId::new(chain.grade(), i);
            self.check(cell)?;
            for &f in self.facets_of(cell) {
                out.toggle(f);
            }
        }
        Ok(out)
    }

    /// The chain of all top-grade cells.
    pub fn top_chain(&self) -> Chain {
        let k = self.dimension();
        Chain::from_indices(k, 0..self.cell_count(k))
    }

    /// Cells of the same grade sharing a codimension-one face with `cell`,
    /// ascending. Vertices have no neighbours under this relation.
    pub fn neighbors(&self, cell: CellId) -> Vec<usize> {
        if cell.grade == 0 {
            return Vec::new();
        }
        let mut out: Vec<usize> = self
            .facets_of(cell)
            .iter()
            .flat_map(|&f| self.cofaces[cell.grade - 1][f].iter().copied())
            .filter(|&j| j != cell.index)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Connected classes of the given `grade`-cells under shared
    /// `(grade-1)`-faces, each sorted, ordered by smallest member.
    pub fn components(&self, grade: usize, cells: &BTreeSet<usize>) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in cells {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                for n in self.neighbors(CellId::new(grade, c)) {
                    if cells.contains(&n) && seen.insert(n) {
                        comp.push(n);
                        queue.push_back(n);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Closure of a set of cells under taking faces.
    pub fn closure(&self, cells: &BTreeSet<CellId>) -> BTreeSet<CellId> {
        let mut out = BTreeSet::new();
        let mut stack: Vec<CellId> = cells.iter().copied().collect();
        while let Some(c) = stack.pop() {
            if out.insert(c) && c.grade > 0 {
                for &f in self.facets_of(c) {
                    stack.push(CellId::new(c.grade - 1, f));
                }
            }
        }
        out
    }

    /// Re-indexes a face-closed set of cells as a complex of its own,
    /// keeping the relative order of cells, their signs, geometry and labels.
    pub fn subcomplex(&self, cells: &BTreeSet<CellId>) -> Result<Complex> {
        let top = cells.iter().map(|c| c.grade).max().ok_or(Error::Empty)?;
        let mut remap: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); top + 1];
        for c in cells {
            self.check(*c)?;
            let next = remap[c.grade].len();
            remap[c.grade].insert(c.index, next);
        }
        if remap[0].is_empty() {
            return Err(Error::Empty);
        }
        let mut boundaries = Vec::with_capacity(top + 1);
        let mut signs = Vec::with_capacity(top + 1);
        for (g, map) in remap.iter().enumerate() {
            let mut b_grade = Vec::with_capacity(map.len());
            let mut s_grade = Vec::with_capacity(map.len());
            for &old in map.keys() {
                let cell = CellId::new(g, old);
                let mut entries = Vec::new();
                for (&f, &s) in self.facets_of(cell).iter().zip(self.incidence_signs(cell)) {
                    let new = remap[g - 1].get(&f).ok_or_else(|| {
                        Error::Integrity(format!("cell set is not closed: {cell} needs ({}, {f})", g - 1))
                    })?;
                    entries.push((*new, s));
                }
                entries.sort_unstable();
                b_grade.push(entries.iter().map(|e| e.0).collect());
                s_grade.push(entries.iter().map(|e| e.1).collect());
            }
            if b_grade.is_empty() {
                return Err(Error::Malformed(format!("sub-complex has no cells of grade {g}")));
            }
            boundaries.push(b_grade);
            signs.push(s_grade);
        }
        let pick = |g: usize| remap[g].keys().copied().collect::<Vec<usize>>();
        let geometry = match &self.geometry {
            Geometry::Simplicial { simplices } => Geometry::Simplicial {
                simplices: (0..=top)
                    .map(|g| pick(g).into_iter().map(|j| simplices[g][j].clone()).collect())
                    .collect(),
            },
            Geometry::Cubical { ambient, cubes } => Geometry::Cubical {
                ambient: *ambient,
                cubes: (0..=top)
                    .map(|g| pick(g).into_iter().map(|j| cubes[g][j].clone()).collect())
                    .collect(),
            },
            Geometry::Explicit => Geometry::Explicit,
        };
        let labels = self
            .labels
            .iter()
            .filter_map(|(c, l)| {
                remap
                    .get(c.grade)
                    .and_then(|m| m.get(&c.index))
                    .map(|&j| (CellId::new(c.grade, j), l.clone()))
            })
            .collect();
        Self::assemble(boundaries, signs, geometry, labels)
    }

    /// Checks ∂∂ = 0 with integer signs on every cell.
    pub fn signed_boundary_squares_vanish(&self) -> bool {
        (2..=self.dimension()).all(|g| {
            (0..self.cell_count(g)).all(|j| {
                let mut acc: BTreeMap<usize, i32> = BTreeMap::new();
                let cell = CellId::new(g, j);
                for (&f, &s) in self.facets_of(cell).iter().zip(self.incidence_signs(cell)) {
                    let face = CellId::new(g - 1, f);
                    for (&ff, &ss) in self.facets_of(face).iter().zip(self.incidence_signs(face)) {
                        *acc.entry(ff).or_default() += i32::from(s) * i32::from(ss);
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }
}

fn collect_simplex_faces(sorted: &[usize], faces: &mut [BTreeSet<Vec<usize>>]) {
    let n = sorted.len();
    for mask in 1u64..(1u64 << n) {
        let face: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| sorted[i]).collect();
        faces[face.len() - 1].insert(face);
    }
}

/// Orients each cell's boundary coherently, given orientations one grade down.
fn derive_signs(boundaries: &[Vec<Vec<usize>>]) -> Result<Vec<Vec<Vec<i8>>>> {
    let mut signs: Vec<Vec<Vec<i8>>> = vec![vec![Vec::new(); boundaries[0].len()]];
    if boundaries.len() > 1 {
        signs.push(boundaries[1].iter().map(|_| vec![-1, 1]).collect());
    }
    for g in 2..boundaries.len() {
        let mut s_grade = Vec::with_capacity(boundaries[g].len());
        for (j, b) in boundaries[g].iter().enumerate() {
            // ridge -> [(position in b, sign of ridge in that facet)]
            let mut ridges: BTreeMap<usize, Vec<(usize, i8)>> = BTreeMap::new();
            for (pos, &f) in b.iter().enumerate() {
                for (&r, &s) in boundaries[g - 1][f].iter().zip(&signs[g - 1][f]) {
                    ridges.entry(r).or_default().push((pos, s));
                }
            }
            let mut adjacency: Vec<Vec<(usize, i8, i8)>> = vec![Vec::new(); b.len()];
            for (r, uses) in &ridges {
                if uses.len() != 2 {
                    return Err(Error::Integrity(format!(
                        "cell ({g}, {j}): ridge ({}, {r}) is used {} times in its boundary",
                        g - 2,
                        uses.len()
                    )));
                }
                let (p, sp) = uses[0];
                let (q, sq) = uses[1];
                adjacency[p].push((q, sp, sq));
                adjacency[q].push((p, sq, sp));
            }
            let mut sigma: Vec<Option<i8>> = vec![None; b.len()];
            sigma[0] = Some(1);
            let mut queue = VecDeque::from([0usize]);
            while let Some(p) = queue.pop_front() {
                let sp = sigma[p].expect("assigned before enqueue");
                for &(q, own, other) in &adjacency[p] {
                    // sp*own + sq*other = 0
                    let want = -sp * own * other;
                    match sigma[q] {
                        None => {
                            sigma[q] = Some(want);
                            queue.push_back(q);
                        }
                        Some(have) if have != want => {
                            return Err(Error::Integrity(format!(
                                "boundary of cell ({g}, {j}) cannot be oriented"
                            )));
                        }
                        Some(_) => {}
                    }
                }
            }
            let assigned: Option<Vec<i8>> = sigma.into_iter().collect();
            let assigned = assigned.ok_or_else(|| {
                Error::Integrity(format!("boundary of cell ({g}, {j}) is disconnected"))
            })?;
            s_grade.push(assigned);
        }
        signs.push(s_grade);
    }
    Ok(signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn octahedron() -> Complex {
        // N=0, S=1, a=2, b=3, c=4, d=5
        let t = [
            [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 2],
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 2],
        ];
        Complex::from_simplices(2, &t.map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn octahedron_face_counts() {
        assert_eq!(octahedron().cell_counts(), vec![6, 12, 8]);
    }

    #[test]
    fn single_triangle_counts() {
        let c = Complex::from_simplices(2, &[vec![7, 3, 5]]).unwrap();
        assert_eq!(c.cell_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn empty_and_malformed_inputs_are_rejected() {
        assert_eq!(Complex::from_simplices(2, &[]), Err(Error::Empty));
        assert!(matches!(
            Complex::from_simplices(2, &[vec![0, 1, 1]]),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            Complex::from_simplices(2, &[vec![0, 1, 2], vec![2, 0, 1]]),
            Err(Error::DuplicateCell(_))
        ));
        assert!(matches!(
            Complex::from_simplices(2, &[vec![0, 1]]),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn boundary_of_a_square_is_four_edges() {
        let c = Complex::from_voxels(2, &[vec![0, 0]]).unwrap();
        let b = c.boundary(&c.top_chain()).unwrap();
        assert_eq!(b.len(), 4);
        assert!(c.boundary(&b).unwrap().is_empty());
    }

    #[test]
    fn shared_edge_cancels() {
        let c = Complex::from_simplices(2, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let b = c.boundary(&c.top_chain()).unwrap();
        let edges: Vec<Vec<usize>> = b
            .cells()
            .map(|e| c.vertices_of(e).to_vec())
            .collect();
        assert_eq!(edges, vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn boundary_of_vertices_is_an_error() {
        let c = octahedron();
        assert_eq!(
            c.boundary(&Chain::from_indices(0, [0])),
            Err(Error::GradeOutOfRange(0))
        );
    }

    #[test]
    fn mod2_sum_cases() {
        let a = Chain::from_indices(1, [0, 1, 2]);
        assert!(mod2_sum(&a, &a).unwrap().is_empty());
        let b = Chain::from_indices(1, [5, 6]);
        assert_eq!(mod2_sum(&a, &b).unwrap(), Chain::from_indices(1, [0, 1, 2, 5, 6]));
        assert!(matches!(
            mod2_sum(&a, &Chain::empty(2)),
            Err(Error::GradeMismatch { .. })
        ));

        // two unit squares sharing an edge sum to the 2x1 rectangle's rim
        let grid = Complex::from_voxels(2, &[vec![0, 0], vec![1, 0]]).unwrap();
        let s0 = grid.boundary(&Chain::from_indices(2, [0])).unwrap();
        let s1 = grid.boundary(&Chain::from_indices(2, [1])).unwrap();
        assert_eq!(mod2_sum(&s0, &s1).unwrap().len(), 6);
    }

    #[test]
    fn coface_counts() {
        let c = octahedron();
        for e in c.cells(1) {
            assert_eq!(c.cofaces(e).unwrap().len(), 2);
        }
        let t = Complex::from_simplices(2, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(t.cofaces(CellId::new(1, 0)).unwrap().len(), 1);
        assert!(t.cofaces(CellId::new(2, 0)).unwrap().is_empty());
        assert_eq!(
            t.cofaces(CellId::new(1, 9)),
            Err(Error::UnknownCell(CellId::new(1, 9)))
        );
    }

    #[test]
    fn build_is_order_independent() {
        let a = Complex::from_simplices(2, &[vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let b = Complex::from_simplices(2, &[vec![3, 2, 1], vec![2, 0, 1]]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn cube_faces_and_signs() {
        let c = Complex::voxel_boundary(3, &[vec![0, 0, 0]]).unwrap();
        assert_eq!(c.cell_counts(), vec![8, 12, 6]);
        assert!(c.signed_boundary_squares_vanish());
        let solid = Complex::from_voxels(3, &[vec![0, 0, 0], vec![1, 0, 0]]).unwrap();
        assert!(solid.signed_boundary_squares_vanish());
    }

    #[test]
    fn explicit_cells_get_coherent_signs() {
        // a square as one 2-cell over a 4-cycle
        let c = Complex::from_boundaries(
            4,
            vec![vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]], vec![vec![0, 1, 2, 3]]],
        )
        .unwrap();
        assert!(c.signed_boundary_squares_vanish());

        let bad = Complex::from_boundaries(
            4,
            vec![vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![vec![0, 1, 2]]],
        );
        assert!(matches!(bad, Err(Error::Integrity(_))));
    }

    #[test]
    fn subcomplex_keeps_structure() {
        let c = octahedron();
        let all: BTreeSet<CellId> = (0..=2).flat_map(|g| c.cells(g)).collect();
        assert_eq!(c.subcomplex(&all).unwrap(), c);
        let one = c.closure(&BTreeSet::from([CellId::new(2, 0)]));
        assert_eq!(c.subcomplex(&one).unwrap().cell_counts(), vec![3, 3, 1]);
    }
}
