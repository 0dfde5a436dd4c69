//! Regular manifold checks.
//!
//! A complex of top grade `k` is a regular `k`-manifold when
//!
//! 1. its `k`-cells are connected through shared `(k-1)`-cells (and every
//!    lower cell lies under some `k`-cell),
//! 2. every `(k-1)`-cell lies in one or two `k`-cells,
//! 3. it has no cells above grade `k`,
//! 4. the link of every vertex is a connected `(k-1)`-pseudomanifold.
//!
//! For `k <= 3` the vertex links are additionally recognised as spheres or
//! disks: by their shape for `k <= 2`, by shelling for closed links when
//! `k = 3`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::complex::{CellId, Chain, Complex};
use crate::error::{Error, Result};
use crate::homology::euler_characteristic;
use crate::metrics::link_complex;
use crate::shelling::{certify_sphere, is_simple_cycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Adjacency,
    FacetDegree,
    TopGrade,
    VertexLink,
}

impl Axiom {
    pub fn number(self) -> u8 {
        match self {
            Axiom::Adjacency => 1,
            Axiom::FacetDegree => 2,
            Axiom::TopGrade => 3,
            Axiom::VertexLink => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub witness: Vec<CellId>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_manifold: bool,
    pub is_closed: bool,
    pub is_orientable: bool,
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn failed(&self, axiom: Axiom) -> bool {
        self.failures.iter().any(|f| f.axiom == axiom)
    }
}

pub fn validate_manifold(c: &Complex) -> ValidationReport {
    let k = c.dimension();
    let mut failures = Vec::new();

    if k == 0 {
        if c.vertex_count() != 1 {
            failures.push(AxiomFailure {
                axiom: Axiom::Adjacency,
                witness: vec![CellId::vertex(1)],
                detail: "a 0-manifold here is a single point".into(),
            });
        }
    } else {
        check_purity(c, &mut failures);
        check_adjacency(c, &mut failures);
        check_facet_degree(c, &mut failures);
        for v in c.cells(0) {
            if let Some(detail) = link_failure(c, v) {
                failures.push(AxiomFailure {
                    axiom: Axiom::VertexLink,
                    witness: vec![v],
                    detail,
                });
            }
        }
    }
    failures.sort_by_key(|f| f.axiom);

    ValidationReport {
        is_manifold: failures.is_empty(),
        is_closed: is_closed(c),
        is_orientable: is_orientable(c),
        failures,
    }
}

fn check_purity(c: &Complex, failures: &mut Vec<AxiomFailure>) {
    let k = c.dimension();
    let mut under_top: Vec<Vec<bool>> = (0..=k).map(|g| vec![g == k; c.cell_count(g)]).collect();
    for g in (0..k).rev() {
        for cell in c.cells(g) {
            under_top[g][cell.index] = c.cofaces_of(cell).iter().any(|&j| under_top[g + 1][j]);
        }
    }
    // facets without cofaces are reported under the facet-degree rule
    for (g, covered) in under_top.iter().enumerate().take(k.saturating_sub(1)) {
        for cell in c.cells(g) {
            if !covered[cell.index] {
                failures.push(AxiomFailure {
                    axiom: Axiom::Adjacency,
                    witness: vec![cell],
                    detail: format!("cell {cell} lies in no {k}-cell"),
                });
            }
        }
    }
}

fn check_adjacency(c: &Complex, failures: &mut Vec<AxiomFailure>) {
    let k = c.dimension();
    let all: BTreeSet<usize> = (0..c.cell_count(k)).collect();
    let comps = c.components(k, &all);
    if comps.len() > 1 {
        failures.push(AxiomFailure {
            axiom: Axiom::Adjacency,
            witness: comps.iter().map(|comp| CellId::new(k, comp[0])).collect(),
            detail: format!("{k}-cells fall into {} components", comps.len()),
        });
    }
}

fn check_facet_degree(c: &Complex, failures: &mut Vec<AxiomFailure>) {
    let k = c.dimension();
    for f in c.cells(k - 1) {
        let n = c.cofaces_of(f).len();
        if n == 0 || n > 2 {
            failures.push(AxiomFailure {
                axiom: Axiom::FacetDegree,
                witness: vec![f],
                detail: format!("{f} lies in {n} {k}-cells"),
            });
        }
    }
}

/// Returns a description of why the link of `v` is unacceptable, if it is.
fn link_failure(c: &Complex, v: CellId) -> Option<String> {
    let k = c.dimension();
    let link = match link_complex(c, v) {
        Ok(Some(link)) => link,
        Ok(None) => return Some("isolated vertex".into()),
        Err(e) => return Some(format!("link could not be formed: {e}")),
    };
    if k == 1 {
        let n = link.vertex_count();
        return (link.dimension() != 0 || !(1..=2).contains(&n))
            .then(|| format!("link has {n} points"));
    }
    if link.dimension() != k - 1 {
        return Some(format!("link has top grade {}, expected {}", link.dimension(), k - 1));
    }
    let mut inner = Vec::new();
    check_purity(&link, &mut inner);
    check_adjacency(&link, &mut inner);
    check_facet_degree(&link, &mut inner);
    if let Some(f) = inner.first() {
        return Some(format!("link is not a connected pseudomanifold: {}", f.detail));
    }
    if k != 3 {
        return None;
    }

    let report = validate_manifold(&link);
    if !report.is_manifold {
        return Some("link is not a 2-manifold".into());
    }
    if report.is_closed {
        return match certify_sphere(&link, 3) {
            Ok(Some(_)) => None,
            Ok(None) => Some("closed link was not shelled to a 2-sphere".into()),
            Err(e) => Some(format!("closed link could not be shelled: {e}")),
        };
    }
    let rim = link
        .boundary(&link.top_chain())
        .expect("top chain of a 2-complex has a boundary");
    if !is_simple_cycle(&link, &rim).simple || euler_characteristic(&link) != 1 {
        return Some("link with boundary is not a 2-disk".into());
    }
    None
}

/// Every `(k-1)`-cell lies in exactly two `k`-cells.
pub fn is_closed(c: &Complex) -> bool {
    let k = c.dimension();
    k == 0 || c.cells(k - 1).all(|f| c.cofaces_of(f).len() == 2)
}

/// Propagates an orientation over the component of `start`, returning the
/// `±1` assigned to each top cell (0 outside the component), or `None` on
/// a conflict.
pub fn orient_from(c: &Complex, start: usize) -> Option<Vec<i8>> {
    let k = c.dimension();
    if k == 0 {
        return Some(vec![1; c.vertex_count()]);
    }
    let mut sign = vec![0i8; c.cell_count(k)];
    // facet -> [(top cell, incidence sign)]
    let mut uses: BTreeMap<usize, Vec<(usize, i8)>> = BTreeMap::new();
    for t in c.cells(k) {
        for (&f, &s) in c.facets_of(t).iter().zip(c.incidence_signs(t)) {
            uses.entry(f).or_default().push((t.index, s));
        }
    }
    sign[start] = 1;
    let mut stack = vec![start];
    while let Some(t) = stack.pop() {
        let cell = CellId::new(k, t);
        for (&f, &s) in c.facets_of(cell).iter().zip(c.incidence_signs(cell)) {
            let induced = sign[t] * s;
            for &(other, so) in &uses[&f] {
                if other == t {
                    continue;
                }
                // the neighbour must induce the opposite orientation on f
                let want = -induced * so;
                match sign[other] {
                    0 => {
                        sign[other] = want;
                        stack.push(other);
                    }
                    have if have != want => return None,
                    _ => {}
                }
            }
        }
    }
    Some(sign)
}

pub fn is_orientable(c: &Complex) -> bool {
    let k = c.dimension();
    if k == 0 {
        return true;
    }
    let mut covered = vec![false; c.cell_count(k)];
    for start in 0..c.cell_count(k) {
        if covered[start] {
            continue;
        }
        match orient_from(c, start) {
            Some(signs) => {
                for (t, s) in signs.iter().enumerate() {
                    if *s != 0 {
                        covered[t] = true;
                    }
                }
            }
            None => return false,
        }
    }
    true
}

/// Fails unless `c` is a connected closed manifold (and orientable, when asked).
pub fn require_closed_manifold(c: &Complex, orientable: bool) -> Result<ValidationReport> {
    let report = validate_manifold(c);
    if !report.is_manifold {
        let summary: Vec<String> = report
            .failures
            .iter()
            .take(3)
            .map(|f| format!("axiom {}: {}", f.axiom.number(), f.detail))
            .collect();
        return Err(Error::Gate(format!("not a manifold ({})", summary.join("; "))));
    }
    if !report.is_closed {
        return Err(Error::Gate("manifold has boundary".into()));
    }
    if orientable && !report.is_orientable {
        return Err(Error::Gate("manifold is not orientable".into()));
    }
    Ok(report)
}

/// Top cells reached from `start` through shared facets; used by tests to
/// check that orientation does not depend on where propagation begins.
pub fn top_component(c: &Complex, start: usize) -> BTreeSet<usize> {
    let k = c.dimension();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for n in c.neighbors(CellId::new(k, t)) {
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    seen
}

/// The facets of `c` lying in exactly one top cell.
pub fn boundary_facets(c: &Complex) -> Chain {
    let k = c.dimension();
    if k == 0 {
        return Chain::empty(0);
    }
    Chain::from_indices(
        k - 1,
        c.cells(k - 1)
            .filter(|f| c.cofaces_of(*f).len() == 1)
            .map(|f| f.index),
    )
}
