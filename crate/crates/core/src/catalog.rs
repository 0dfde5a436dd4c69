//! Small named complexes used by the tests, the CLI corpus and the demo.

use std::collections::BTreeMap;

use crate::complex::{CellId, Complex, Cube};
use crate::error::Result;

fn simplicial(dimension: usize, cells: &[&[usize]]) -> Complex {
    let cells: Vec<Vec<usize>> = cells.iter().map(|c| c.to_vec()).collect();
    Complex::from_simplices(dimension, &cells).expect("catalog complexes are well-formed")
}

fn with_vertex_names(c: Complex, names: &[&str]) -> Complex {
    let labels: BTreeMap<CellId, String> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (CellId::vertex(i), (*n).to_string()))
        .collect();
    c.with_labels(labels).expect("one name per vertex")
}

/// The octahedron with vertices `N, S, a, b, c, d` (indices 0..6).
pub fn octahedron_triangles() -> Vec<Vec<usize>> {
    vec![
        vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5], vec![0, 2, 5],
        vec![1, 2, 3], vec![1, 3, 4], vec![1, 4, 5], vec![1, 2, 5],
    ]
}

pub fn octahedron() -> Complex {
    let c = Complex::from_simplices(2, &octahedron_triangles()).expect("well-formed");
    with_vertex_names(c, &["N", "S", "a", "b", "c", "d"])
}

/// Boundary of the `(m+1)`-simplex on vertices `0..=m+1`.
pub fn simplex_boundary(m: usize) -> Complex {
    let n = m + 2;
    let faces: Vec<Vec<usize>> = (0..n)
        .map(|skip| (0..n).filter(|&v| v != skip).collect())
        .collect();
    Complex::from_simplices(m, &faces).expect("well-formed")
}

/// The seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn csaszar_triangles() -> Vec<Vec<usize>> {
    (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

pub fn csaszar_torus() -> Complex {
    Complex::from_simplices(2, &csaszar_triangles()).expect("well-formed")
}

/// Five-vertex Möbius band: triangles `{i, i+1, i+2}` mod 5.
pub fn mobius_strip() -> Complex {
    let t: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
    Complex::from_simplices(2, &t).expect("well-formed")
}

/// Two triangles glued at vertex 0 only.
pub fn bowtie() -> Complex {
    simplicial(2, &[&[0, 1, 2], &[0, 3, 4]])
}

/// Three triangles sharing the edge 0-1.
pub fn triple_fan() -> Complex {
    simplicial(2, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]])
}

pub fn triangle() -> Complex {
    simplicial(2, &[&[0, 1, 2]])
}

/// A hexagonal disk: six triangles around a centre vertex 0.
pub fn hexagon_disk() -> Complex {
    let t: Vec<Vec<usize>> = (0..6).map(|i| vec![0, 1 + i, 1 + (i + 1) % 6]).collect();
    Complex::from_simplices(2, &t).expect("well-formed")
}

/// `w x h` patch of unit squares in the plane.
pub fn square_patch(w: i64, h: i64) -> Complex {
    let corners: Vec<Vec<i64>> = (0..w).flat_map(|x| (0..h).map(move |y| vec![x, y])).collect();
    Complex::from_voxels(2, &corners).expect("well-formed")
}

/// Surface of an axis-aligned `a x b x c` box of voxels.
pub fn box_surface(a: i64, b: i64, c: i64) -> Complex {
    Complex::voxel_boundary(3, &box_voxels(a, b, c)).expect("well-formed")
}

pub fn box_voxels(a: i64, b: i64, c: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                out.push(vec![x, y, z]);
            }
        }
    }
    out
}

/// Surface of a voxel torus: a `3 x 3 x 1` ring with the centre removed.
pub fn voxel_torus() -> Complex {
    let ring: Vec<Vec<i64>> = box_voxels(3, 3, 1)
        .into_iter()
        .filter(|v| !(v[0] == 1 && v[1] == 1))
        .collect();
    Complex::voxel_boundary(3, &ring).expect("well-formed")
}

/// Edge curve bounding a set of unit squares in the plane.
pub fn planar_curve(squares: &[Vec<i64>]) -> Result<Complex> {
    Complex::voxel_boundary(2, squares)
}

pub fn unit_square_curve() -> Complex {
    planar_curve(&[vec![0, 0]]).expect("well-formed")
}

/// Two `3 x 3` lobes joined by a one-cell-wide corridor of length 3.
pub fn dumbbell_squares() -> Vec<Vec<i64>> {
    let mut squares = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            squares.push(vec![x, y]);
            squares.push(vec![x + 6, y]);
        }
    }
    for x in 3..6 {
        squares.push(vec![x, 1]);
    }
    squares
}

pub fn dumbbell_curve() -> Complex {
    planar_curve(&dumbbell_squares()).expect("well-formed")
}

/// A closed edge loop in 3-space that leaves every coordinate plane.
pub fn skew_loop() -> Complex {
    let path: [[i64; 3]; 8] = [
        [0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 1, 1],
        [0, 1, 1], [0, 1, 2], [0, 0, 2], [0, 0, 1],
    ];
    let edges: Vec<Cube> = (0..path.len())
        .map(|i| {
            let a = path[i];
            let b = path[(i + 1) % path.len()];
            Cube((0..3).map(|k| a[k] + b[k]).collect())
        })
        .collect();
    Complex::from_cubes(3, &edges).expect("well-formed")
}
