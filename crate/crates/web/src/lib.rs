//! Browser bindings for the static demo page in `www/`.
//!
//! Each exported function takes and returns JSON strings so the page needs
//! no generated TypeScript types. The `*_json` functions hold the logic and
//! are plain Rust, so they are tested natively.

use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use cellshell::filler::FillStatus;
use cellshell::shelling::{self, RunVerdict};
use cellshell::{
    betti_mod2, catalog, decide_simply_connected, fill, validate_manifold, AmbientGrid, Complex, Cube, Geometry,
};

/// Side of the drawing grid, in squares.
pub const CANVAS_SQUARES: i64 = 16;

#[derive(Serialize)]
struct FillView {
    curve: Vec<[i64; 4]>,
    fill: Vec<[i64; 2]>,
    complete: bool,
    branches: usize,
}

/// Lattice corners of a cube, in cyclic order for 2-cells.
fn corners(cube: &Cube) -> Vec<Vec<i64>> {
    let axes = cube.extent_axes();
    let lows: Vec<i64> = cube.0.iter().map(|&c| c.div_euclid(2)).collect();
    let at = |bits: &[bool]| {
        let mut p = lows.clone();
        for (&axis, &up) in axes.iter().zip(bits) {
            if up {
                p[axis] += 1;
            }
        }
        p
    };
    match axes.len() {
        0 => vec![lows.clone()],
        1 => vec![at(&[false]), at(&[true])],
        _ => vec![
            at(&[false, false]),
            at(&[true, false]),
            at(&[true, true]),
            at(&[false, true]),
        ],
    }
}

fn cubes(c: &Complex, grade: usize) -> &[Cube] {
    match c.geometry() {
        Geometry::Cubical { cubes, .. } => &cubes[grade],
        _ => &[],
    }
}

/// Fills the region bounded by the outline of the painted squares.
///
/// `squares` is a JSON list of `[x, y]` lower corners inside the canvas. The
/// outline must be a single simple closed curve.
pub fn fill_region_json(squares: &str) -> Result<String, String> {
    let squares: Vec<Vec<i64>> = serde_json::from_str(squares).map_err(|e| e.to_string())?;
    if squares.is_empty() {
        return Err("paint at least one square".into());
    }
    if squares
        .iter()
        .any(|s| s.len() != 2 || s.iter().any(|&v| !(1..CANVAS_SQUARES - 1).contains(&v)))
    {
        return Err("squares must stay one cell away from the canvas edge".into());
    }
    let curve = catalog::planar_curve(&squares).map_err(|e| e.to_string())?;
    let grid = AmbientGrid::new(vec![0, 0], vec![CANVAS_SQUARES, CANVAS_SQUARES])
        .map_err(|e| e.to_string())?;
    let r = fill(&grid, &curve).map_err(|e| e.to_string())?;
    let view = FillView {
        curve: cubes(&curve, 1)
            .iter()
            .map(|e| {
                let p = corners(e);
                [p[0][0], p[0][1], p[1][0], p[1][1]]
            })
            .collect(),
        fill: r.fill.iter().map(|q| [q.0[0] / 2, q.0[1] / 2]).collect(),
        complete: r.status == FillStatus::Complete,
        branches: r.tree.len().saturating_sub(1),
    };
    Ok(serde_json::to_string(&view).expect("plain data"))
}

/// Every step of a shelling run on the surface of an `a × b × h` box.
///
/// Faces are quads of 3D lattice points; frames list the face removed at
/// each step and the current boundary as segments.
pub fn shell_box_json(a: i64, b: i64, h: i64) -> Result<String, String> {
    if [a, b, h].iter().any(|&s| !(1..=6).contains(&s)) {
        return Err("box sides must be between 1 and 6".into());
    }
    let c = catalog::box_surface(a, b, h);
    let origin = shelling::spread_origins(&c, 1)[0];
    let mut run = shelling::init_shelling(&c, origin).map_err(|e| e.to_string())?;
    let edges = cubes(&c, 1);
    let segments = |run: &shelling::ShellingRun| -> Vec<Vec<Vec<i64>>> {
        run.boundary().indices().map(|i| corners(&edges[i])).collect()
    };
    let mut frames = vec![json!({ "removed": null, "boundary": segments(&run) })];
    while run.verdict() == RunVerdict::InProgress {
        run.step().map_err(|e| e.to_string())?;
        frames.push(json!({
            "removed": run.removed().last(),
            "boundary": segments(&run),
        }));
    }
    let out = json!({
        "faces": cubes(&c, 2).iter().map(corners).collect::<Vec<_>>(),
        "origin": corners(&cubes(&c, 0)[origin.index])[0],
        "star": run.star_cells(),
        "verdict": run.verdict(),
        "frames": frames,
    });
    Ok(out.to_string())
}

/// Names accepted by [`analyze_json`].
pub const PRESETS: [&str; 8] = [
    "octahedron",
    "tetrahedron",
    "three-sphere",
    "csaszar-torus",
    "voxel-torus",
    "mobius-strip",
    "bowtie",
    "box-2x3x1",
];

fn preset(name: &str) -> Option<Complex> {
    Some(match name {
        "octahedron" => catalog::octahedron(),
        "tetrahedron" => catalog::simplex_boundary(2),
        "three-sphere" => catalog::simplex_boundary(3),
        "csaszar-torus" => catalog::csaszar_torus(),
        "voxel-torus" => catalog::voxel_torus(),
        "mobius-strip" => catalog::mobius_strip(),
        "bowtie" => catalog::bowtie(),
        "box-2x3x1" => catalog::box_surface(2, 3, 1),
        _ => return None,
    })
}

/// Validation, mod-2 Betti numbers and the simple-connectedness decision
/// for a built-in complex.
pub fn analyze_json(name: &str) -> Result<String, String> {
    let c = preset(name).ok_or_else(|| format!("unknown preset `{name}`"))?;
    let decision: Value = match decide_simply_connected(&c, 3) {
        Ok(d) => json!({
            "verdict": d.verdict,
            "attempts": d.attempts.len(),
            "note": d.note,
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let out = json!({
        "name": name,
        "dimension": c.dimension(),
        "cells": c.cell_counts(),
        "validation": validate_manifold(&c),
        "homology": betti_mod2(&c),
        "decision": decision,
    });
    Ok(out.to_string())
}

#[wasm_bindgen(js_name = fillRegion)]
pub fn fill_region(squares: &str) -> Result<String, JsError> {
    fill_region_json(squares).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = shellBox)]
pub fn shell_box(a: i32, b: i32, h: i32) -> Result<String, JsError> {
    shell_box_json(a.into(), b.into(), h.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn analyze(name: &str) -> Result<String, JsError> {
    analyze_json(name).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn presets() -> String {
    serde_json::to_string(&PRESETS).expect("strings")
}
