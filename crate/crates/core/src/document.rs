//! JSON documents describing complexes, and OBJ export.
//!
//! A document names its schema and carries the matching payload:
//!
//! ```json
//! { "schema": "simplicial-top", "dimension": 2,
//!   "payload": { "simplices": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] } }
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use serde_json::Value;

use crate::complex::{CellId, Complex, Cube, Geometry};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexDocument {
    pub dimension: usize,
    pub metadata: BTreeMap<String, Value>,
    pub payload: Payload,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schema {
    #[serde(rename = "simplicial-top")]
    SimplicialTop,
    #[serde(rename = "cubical-voxel")]
    CubicalVoxel,
    #[serde(rename = "explicit-graded")]
    ExplicitGraded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    /// Top simplices as vertex-id tuples.
    SimplicialTop {
        simplices: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertex_labels: Option<BTreeMap<usize, String>>,
        /// Coordinates per vertex id, used only for export.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        positions: Option<BTreeMap<usize, Vec<f64>>>,
    },
    /// Either voxel lower corners (optionally reduced to their boundary
    /// surface) or top cubes in doubled coordinates.
    CubicalVoxel {
        ambient: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        voxels: Option<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cubes: Option<Vec<Vec<i64>>>,
        #[serde(default, skip_serializing_if = "is_false")]
        boundary: bool,
    },
    /// `cells[g - 1][j]` lists the `(g-1)`-cells on the boundary of cell `(g, j)`.
    ExplicitGraded {
        vertex_count: usize,
        cells: Vec<Vec<Vec<usize>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertex_labels: Option<BTreeMap<usize, String>>,
    },
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: Schema,
    dimension: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    metadata: &'a BTreeMap<String, Value>,
    payload: &'a Payload,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEnvelope<'a> {
    schema: Schema,
    dimension: usize,
    #[serde(default)]
    metadata: BTreeMap<String, Value>,
    #[serde(borrow)]
    payload: &'a RawValue,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplicialPayload {
    simplices: Vec<Vec<usize>>,
    #[serde(default)]
    vertex_labels: Option<BTreeMap<usize, String>>,
    #[serde(default)]
    positions: Option<BTreeMap<usize, Vec<f64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CubicalPayload {
    ambient: usize,
    #[serde(default)]
    voxels: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    cubes: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    boundary: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitPayload {
    vertex_count: usize,
    cells: Vec<Vec<Vec<usize>>>,
    #[serde(default)]
    vertex_labels: Option<BTreeMap<usize, String>>,
}

fn parse_error(text: &str, base: usize, e: serde_json::Error) -> Error {
    Error::Parse {
        offset: base + byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (i, l) in text.split_inclusive('\n').enumerate() {
        if i + 1 == line {
            return (offset + column.saturating_sub(1)).min(text.len());
        }
        offset += l.len();
    }
    text.len()
}

impl ComplexDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawEnvelope = serde_json::from_str(text).map_err(|e| parse_error(text, 0, e))?;
        let body = raw.payload.get();
        let base = body.as_ptr() as usize - text.as_ptr() as usize;
        let fail = |e| parse_error(body, base, e);
        let payload = match raw.schema {
            Schema::SimplicialTop => {
                let p: SimplicialPayload = serde_json::from_str(body).map_err(fail)?;
                Payload::SimplicialTop {
                    simplices: p.simplices,
                    vertex_labels: p.vertex_labels,
                    positions: p.positions,
                }
            }
            Schema::CubicalVoxel => {
                let p: CubicalPayload = serde_json::from_str(body).map_err(fail)?;
                Payload::CubicalVoxel {
                    ambient: p.ambient,
                    voxels: p.voxels,
                    cubes: p.cubes,
                    boundary: p.boundary,
                }
            }
            Schema::ExplicitGraded => {
                let p: ExplicitPayload = serde_json::from_str(body).map_err(fail)?;
                Payload::ExplicitGraded {
                    vertex_count: p.vertex_count,
                    cells: p.cells,
                    vertex_labels: p.vertex_labels,
                }
            }
        };
        Ok(Self {
            dimension: raw.dimension,
            metadata: raw.metadata,
            payload,
        })
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let envelope = Envelope {
            schema: self.schema(),
            dimension: self.dimension,
            metadata: &self.metadata,
            payload: &self.payload,
        };
        let mut s = serde_json::to_string_pretty(&envelope).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn schema(&self) -> Schema {
        match self.payload {
            Payload::SimplicialTop { .. } => Schema::SimplicialTop,
            Payload::CubicalVoxel { .. } => Schema::CubicalVoxel,
            Payload::ExplicitGraded { .. } => Schema::ExplicitGraded,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.metadata.get("name").and_then(Value::as_str)
    }

    pub fn to_complex(&self) -> Result<Complex> {
        let c = match &self.payload {
            Payload::SimplicialTop {
                simplices,
                vertex_labels,
                ..
            } => {
                let c = Complex::from_simplices(self.dimension, simplices)?;
                match vertex_labels {
                    Some(names) => attach_vertex_labels(c, names)?,
                    None => c,
                }
            }
            Payload::CubicalVoxel {
                ambient,
                voxels,
                cubes,
                boundary,
            } => match (voxels, cubes) {
                (Some(v), None) if *boundary => Complex::voxel_boundary(*ambient, v)?,
                (Some(v), None) => Complex::from_voxels(*ambient, v)?,
                (None, Some(c)) if !*boundary => {
                    let cubes: Vec<Cube> = c.iter().cloned().map(Cube).collect();
                    Complex::from_cubes(*ambient, &cubes)?
                }
                (None, Some(_)) => {
                    return Err(Error::Malformed(
                        "the boundary flag applies to voxels, not cubes".into(),
                    ))
                }
                _ => {
                    return Err(Error::Malformed(
                        "give exactly one of `voxels` and `cubes`".into(),
                    ))
                }
            },
            Payload::ExplicitGraded {
                vertex_count,
                cells,
                vertex_labels,
            } => {
                let c = Complex::from_boundaries(*vertex_count, cells.clone())?;
                match vertex_labels {
                    Some(names) => attach_vertex_labels(c, names)?,
                    None => c,
                }
            }
        };
        if c.dimension() != self.dimension {
            return Err(Error::Malformed(format!(
                "document declares dimension {} but its cells reach grade {}",
                self.dimension,
                c.dimension()
            )));
        }
        Ok(c)
    }

    /// A document that rebuilds `c`. Simplicial complexes keep their vertex
    /// ids, cubical ones list their top cubes, anything else is written out
    /// as boundary lists.
    pub fn from_complex(c: &Complex) -> Self {
        let dimension = c.dimension();
        let payload = match c.geometry() {
            Geometry::Simplicial { simplices } => Payload::SimplicialTop {
                simplices: simplices[dimension].clone(),
                vertex_labels: vertex_label_map(c, |j| simplices[0][j][0]),
                positions: None,
            },
            Geometry::Cubical { ambient, cubes } => Payload::CubicalVoxel {
                ambient: *ambient,
                voxels: None,
                cubes: Some(cubes[dimension].iter().map(|q| q.0.clone()).collect()),
                boundary: false,
            },
            Geometry::Explicit => Payload::ExplicitGraded {
                vertex_count: c.vertex_count(),
                cells: (1..=dimension)
                    .map(|g| c.cells(g).map(|cell| c.facets_of(cell).to_vec()).collect())
                    .collect(),
                vertex_labels: vertex_label_map(c, |j| j),
            },
        };
        Self {
            dimension,
            metadata: BTreeMap::new(),
            payload,
        }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.metadata.insert("name".into(), Value::String(name.into()));
        self
    }

    /// Wavefront OBJ of the top cells of a curve or surface: `l` records for
    /// edges, `f` records for triangles and squares. Cubical complexes use
    /// their lattice coordinates; simplicial ones need `positions`.
    pub fn to_obj(&self) -> Result<String> {
        let c = self.to_complex()?;
        let k = c.dimension();
        if !(1..=2).contains(&k) {
            return Err(Error::Unsupported(format!(
                "OBJ export covers curves and surfaces, not dimension {k}"
            )));
        }
        let mut out = String::new();
        if let Some(name) = self.name() {
            let _ = writeln!(out, "o {name}");
        }
        match (c.geometry(), &self.payload) {
            (Geometry::Cubical { cubes, .. }, _) => {
                let index: BTreeMap<Vec<i64>, usize> = cubes[0]
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v.corners().remove(0), i + 1))
                    .collect();
                for v in &cubes[0] {
                    write_vertex(&mut out, &v.corners()[0].iter().map(|&x| x as f64).collect::<Vec<_>>());
                }
                for q in &cubes[k] {
                    let corners = q.corners();
                    let ring: Vec<usize> = if k == 1 {
                        corners.iter().map(|p| index[p]).collect()
                    } else {
                        // Lexicographic corners 00, 01, 10, 11 go round as 00, 01, 11, 10.
                        [0, 1, 3, 2].iter().map(|&i| index[&corners[i]]).collect()
                    };
                    write_record(&mut out, if k == 1 { 'l' } else { 'f' }, &ring);
                }
            }
            (
                Geometry::Simplicial { simplices },
                Payload::SimplicialTop {
                    positions: Some(positions),
                    ..
                },
            ) => {
                let mut index = BTreeMap::new();
                for (i, v) in simplices[0].iter().enumerate() {
                    let p = positions.get(&v[0]).ok_or_else(|| {
                        Error::Malformed(format!("no position for vertex {}", v[0]))
                    })?;
                    write_vertex(&mut out, p);
                    index.insert(v[0], i + 1);
                }
                for s in &simplices[k] {
                    let ring: Vec<usize> = s.iter().map(|v| index[v]).collect();
                    write_record(&mut out, if k == 1 { 'l' } else { 'f' }, &ring);
                }
            }
            _ => {
                return Err(Error::Unsupported(
                    "OBJ export needs lattice cubes or vertex positions".into(),
                ))
            }
        }
        Ok(out)
    }
}

fn write_vertex(out: &mut String, p: &[f64]) {
    let mut xyz = [0.0; 3];
    for (slot, v) in xyz.iter_mut().zip(p) {
        *slot = *v;
    }
    let _ = writeln!(out, "v {} {} {}", xyz[0], xyz[1], xyz[2]);
}

fn write_record(out: &mut String, tag: char, ring: &[usize]) {
    let ids: Vec<String> = ring.iter().map(|i| i.to_string()).collect();
    let _ = writeln!(out, "{tag} {}", ids.join(" "));
}

fn attach_vertex_labels(c: Complex, names: &BTreeMap<usize, String>) -> Result<Complex> {
    let ids: Vec<usize> = match c.geometry() {
        Geometry::Simplicial { simplices } => simplices[0].iter().map(|v| v[0]).collect(),
        _ => (0..c.vertex_count()).collect(),
    };
    let position: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(j, &v)| (v, j)).collect();
    let mut labels = BTreeMap::new();
    for (v, name) in names {
        let j = position
            .get(v)
            .ok_or_else(|| Error::Malformed(format!("label for unknown vertex {v}")))?;
        labels.insert(CellId::vertex(*j), name.clone());
    }
    c.with_labels(labels)
}

fn vertex_label_map(c: &Complex, id_of: impl Fn(usize) -> usize) -> Option<BTreeMap<usize, String>> {
    let map: BTreeMap<usize, String> = c
        .labels()
        .iter()
        .filter(|(cell, _)| cell.grade == 0)
        .map(|(cell, name)| (id_of(cell.index), name.clone()))
        .collect();
    (!map.is_empty()).then_some(map)
}

/// Parses a document and builds its complex.
pub fn parse_document(text: &str) -> Result<Complex> {
    ComplexDocument::parse(text)?.to_complex()
}
