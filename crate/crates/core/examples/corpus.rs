//! Writes the golden corpus of complex documents.
//!
//! ```text
//! cargo run -p cellshell --example corpus -- corpus
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use cellshell::catalog;
use cellshell::document::{ComplexDocument, Payload};
use cellshell::Complex;

fn voxels(name: &str, ambient: usize, dimension: usize, corners: Vec<Vec<i64>>) -> ComplexDocument {
    ComplexDocument {
        dimension,
        metadata: BTreeMap::new(),
        payload: Payload::CubicalVoxel {
            ambient,
            voxels: Some(corners),
            cubes: None,
            boundary: true,
        },
    }
    .with_name(name)
}

fn of(name: &str, c: &Complex) -> ComplexDocument {
    ComplexDocument::from_complex(c).with_name(name)
}

/// Boundary of a cube built from six square 2-cells.
fn square_cube() -> Complex {
    let edges = vec![
        vec![0, 1], vec![1, 3], vec![2, 3], vec![0, 2],
        vec![4, 5], vec![5, 7], vec![6, 7], vec![4, 6],
        vec![0, 4], vec![1, 5], vec![2, 6], vec![3, 7],
    ];
    let faces = vec![
        vec![0, 1, 2, 3], vec![4, 5, 6, 7],
        vec![0, 4, 8, 9], vec![2, 6, 10, 11],
        vec![3, 7, 8, 10], vec![1, 5, 9, 11],
    ];
    Complex::from_boundaries(8, vec![edges, faces]).expect("well-formed")
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "corpus".into()));
    fs::create_dir_all(&dir).expect("corpus directory");

    let mut octahedron = of("octahedron", &catalog::octahedron());
    if let Payload::SimplicialTop { positions, .. } = &mut octahedron.payload {
        let p: [[f64; 3]; 6] = [
            [0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [0.0, -1.0, 0.0],
        ];
        *positions = Some(p.iter().enumerate().map(|(i, q)| (i, q.to_vec())).collect());
    }

    let docs = vec![
        ("octahedron", octahedron),
        ("tetrahedron", of("tetrahedron", &catalog::simplex_boundary(2))),
        ("three-sphere", of("three-sphere", &catalog::simplex_boundary(3))),
        ("triangle-circle", of("triangle-circle", &catalog::simplex_boundary(1))),
        ("csaszar-torus", of("csaszar-torus", &catalog::csaszar_torus())),
        ("mobius-strip", of("mobius-strip", &catalog::mobius_strip())),
        ("hexagon-disk", of("hexagon-disk", &catalog::hexagon_disk())),
        ("bowtie", of("bowtie", &catalog::bowtie())),
        ("triple-fan", of("triple-fan", &catalog::triple_fan())),
        ("square-cube", of("square-cube", &square_cube())),
        ("unit-cube-surface", voxels("unit-cube-surface", 3, 2, catalog::box_voxels(1, 1, 1))),
        ("box-2x3x1", voxels("box-2x3x1", 3, 2, catalog::box_voxels(2, 3, 1))),
        ("voxel-torus", {
            let ring = catalog::box_voxels(3, 3, 1)
                .into_iter()
                .filter(|v| !(v[0] == 1 && v[1] == 1))
                .collect();
            voxels("voxel-torus", 3, 2, ring)
        }),
        ("square-curve", voxels("square-curve", 2, 1, vec![vec![0, 0]])),
        ("dumbbell-curve", voxels("dumbbell-curve", 2, 1, catalog::dumbbell_squares())),
        ("skew-loop", of("skew-loop", &catalog::skew_loop())),
    ];
    for (file, doc) in docs {
        doc.to_complex().expect("corpus documents build");
        let path = dir.join(format!("{file}.json"));
        fs::write(&path, doc.to_json()).expect("write document");
        println!("{}", path.display());
    }
}
