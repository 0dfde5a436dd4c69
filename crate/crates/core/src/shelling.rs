//! Shelling: separation by cycles, sphere recognition and the
//! simple-connectedness decision.
//!
//! A run starts at an origin vertex `o` of a closed `m`-manifold, removes the
//! top cell furthest from `o`, and then keeps removing the furthest remaining
//! top cell that shares a facet with the current boundary `B`. After every
//! removal `B` must still be a simple `(m-1)`-cycle. A run that shrinks the
//! remainder down to the top cells of `Star(o)` is certified; its removal
//! order is a certificate that [`replay_certificate`] re-checks.
//!
//! Top-cell distances from `o` are measured in the top-cell adjacency graph,
//! with the cells of `Star(o)` at distance 0. Ties always go to the lowest
//! cell index.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{CellId, Chain, Complex};
use crate::error::{Error, Result};
use crate::homology::{betti_mod2, BettiProfile};
use crate::manifold::{require_closed_manifold, validate_manifold};
use crate::metrics::{distances_from, DistanceField};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RunVerdict {
    SphereCertified,
    Obstructed,
    InProgress,
}

/// Outcome of the simple-connectedness decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "SIMPLY_CONNECTED")]
    SimplyConnected,
    /// Every attempted run was obstructed. This is the negative answer of
    /// the shelling procedure; it is not a proof.
    #[serde(rename = "NOT_SIMPLY_CONNECTED_PER_PAPER")]
    NotSimplyConnectedClaimed,
    /// The shelling verdict and the mod-2 homology disagree.
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

/// Ordered removal sequence of a certified run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub origin: CellId,
    pub removed: Vec<CellId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleCycleCheck {
    pub simple: bool,
    pub witness: Option<Chain>,
}

impl SimpleCycleCheck {
    fn ok() -> Self {
        Self {
            simple: true,
            witness: None,
        }
    }

    fn fail(witness: Chain) -> Self {
        Self {
            simple: false,
            witness: Some(witness),
        }
    }
}

/// Whether `b` is a single simple cycle:
///
/// - a `0`-chain must be exactly two points;
/// - otherwise every ridge lies in 0 or 2 cells of `b`, the cells of `b` are
///   connected through shared ridges, and (from grade 2 up) the cells of `b`
///   around each vertex are connected through ridges at that vertex.
pub fn is_simple_cycle(c: &Complex, b: &Chain) -> SimpleCycleCheck {
    if b.is_empty() {
        return SimpleCycleCheck {
            simple: false,
            witness: None,
        };
    }
    let g = b.grade();
    if g == 0 {
        return if b.len() == 2 {
            SimpleCycleCheck::ok()
        } else {
            SimpleCycleCheck::fail(b.clone())
        };
    }

    let mut ridge_uses: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in b.indices() {
        for &r in c.facets_of(CellId::new(g, i)) {
            ridge_uses.entry(r).or_default().push(i);
        }
    }
    if let Some(uses) = ridge_uses.values().find(|u| u.len() != 2) {
        return SimpleCycleCheck::fail(Chain::from_indices(g, uses.iter().copied()));
    }

    let comps = c.components(g, b.members());
    if comps.len() > 1 {
        return SimpleCycleCheck::fail(Chain::from_indices(g, comps[0].iter().copied()));
    }

    if g >= 2 {
        let mut around: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for i in b.indices() {
            for &v in c.vertices_of(CellId::new(g, i)) {
                around.entry(v).or_default().insert(i);
            }
        }
        for (v, cells) in around {
            if !connected_at_vertex(c, g, &cells, v) {
                return SimpleCycleCheck::fail(Chain::from_indices(g, cells));
            }
        }
    }
    SimpleCycleCheck::ok()
}

fn connected_at_vertex(c: &Complex, g: usize, cells: &BTreeSet<usize>, v: usize) -> bool {
    let first = *cells.first().expect("vertex lies in at least one cell");
    let mut seen = BTreeSet::from([first]);
    let mut queue = VecDeque::from([first]);
    while let Some(cell) = queue.pop_front() {
        for &r in c.facets_of(CellId::new(g, cell)) {
            let ridge = CellId::new(g - 1, r);
            if c.vertices_of(ridge).binary_search(&v).is_err() {
                continue;
            }
            for &n in c.cofaces_of(ridge) {
                if cells.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    seen.len() == cells.len()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationResult {
    /// Top-cell classes, each ascending, ordered by smallest member.
    pub components: Vec<Vec<CellId>>,
    pub separator: Chain,
}

impl SeparationResult {
    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

/// Splits the top cells of a closed manifold along an `(m-1)`-cycle: two
/// top cells are in the same class when a path of shared facets outside the
/// cycle joins them. Local flatness of the cycle is assumed, not checked.
pub fn separate(c: &Complex, s: &Chain) -> Result<SeparationResult> {
    let report = validate_manifold(c);
    if !report.is_manifold || !report.is_closed {
        return Err(Error::Gate("separation needs a closed manifold".into()));
    }
    let m = c.dimension();
    if m == 0 {
        return Err(Error::GradeOutOfRange(0));
    }
    if s.grade() != m - 1 {
        return Err(Error::GradeMismatch {
            expected: m - 1,
            found: s.grade(),
        });
    }
    for cell in s.cells() {
        c.check(cell)?;
    }
    let closed = if m == 1 {
        s.len().is_multiple_of(2)
    } else {
        c.boundary(s)?.is_empty()
    };
    if !closed {
        return Err(Error::NotACycle(
            "some ridge lies in an odd number of separator cells".into(),
        ));
    }

    let mut label = vec![usize::MAX; c.cell_count(m)];
    let mut components = Vec::new();
    for start in 0..c.cell_count(m) {
        if label[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        label[start] = id;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for &f in c.facets_of(CellId::new(m, t)) {
                if s.contains(f) {
                    continue;
                }
                for &n in c.cofaces_of(CellId::new(m - 1, f)) {
                    if label[n] == usize::MAX {
                        label[n] = id;
                        comp.push(n);
                        queue.push_back(n);
                    }
                }
            }
        }
        comp.sort_unstable();
        components.push(comp.into_iter().map(|i| CellId::new(m, i)).collect());
    }
    Ok(SeparationResult {
        components,
        separator: s.clone(),
    })
}

/// Mutable state of one shelling run over a borrowed complex.
#[derive(Debug, Clone)]
pub struct ShellingRun<'a> {
    host: &'a Complex,
    origin: CellId,
    star: BTreeSet<usize>,
    distance: DistanceField,
    remaining: BTreeSet<usize>,
    boundary: Chain,
    removed: Vec<usize>,
    verdict: RunVerdict,
    witness: Option<Chain>,
}

/// Starts a run after checking that `c` is a connected, closed, orientable
/// manifold.
pub fn init_shelling(c: &Complex, origin: CellId) -> Result<ShellingRun<'_>> {
    require_closed_manifold(c, true)?;
    ShellingRun::start(c, origin)
}

impl<'a> ShellingRun<'a> {
    /// Starts a run without the manifold gate. Callers must already know
    /// that `c` is a closed manifold.
    pub(crate) fn start(c: &'a Complex, origin: CellId) -> Result<Self> {
        c.check(origin)?;
        if origin.grade != 0 {
            return Err(Error::GradeMismatch {
                expected: 0,
                found: origin.grade,
            });
        }
        let m = c.dimension();
        if m == 0 {
            return Err(Error::GradeOutOfRange(0));
        }
        let distance = distances_from(c, m, origin)?;
        let star: BTreeSet<usize> = c.cells_at_vertex(origin.index, m).iter().copied().collect();
        let first = furthest(&distance, (0..c.cell_count(m)).filter(|t| !star.contains(t)))
            .ok_or_else(|| Error::Unsupported("every top cell contains the origin".into()))?;

        let mut run = Self {
            host: c,
            origin,
            star,
            distance,
            remaining: (0..c.cell_count(m)).collect(),
            boundary: Chain::empty(m - 1),
            removed: Vec::new(),
            verdict: RunVerdict::InProgress,
            witness: None,
        };
        run.remove(first);
        Ok(run)
    }

    fn remove(&mut self, cell: usize) {
        let m = self.host.dimension();
        self.remaining.remove(&cell);
        self.removed.push(cell);
        for &f in self.host.facets_of(CellId::new(m, cell)) {
            self.boundary.toggle(f);
        }
        let check = is_simple_cycle(self.host, &self.boundary);
        if !check.simple {
            self.verdict = RunVerdict::Obstructed;
            self.witness = Some(check.witness.unwrap_or_else(|| self.boundary.clone()));
        } else if self.remaining == self.star {
            self.verdict = RunVerdict::SphereCertified;
        }
    }

    /// Removes the furthest remaining top cell adjacent to the boundary and
    /// re-checks the boundary.
    pub fn step(&mut self) -> Result<RunVerdict> {
        if self.verdict != RunVerdict::InProgress {
            return Err(Error::RunFinished);
        }
        let m = self.host.dimension();
        let candidates: BTreeSet<usize> = self
            .boundary
            .indices()
            .flat_map(|f| self.host.cofaces_of(CellId::new(m - 1, f)).iter().copied())
            .filter(|t| self.remaining.contains(t) && !self.star.contains(t))
            .collect();
        match furthest(&self.distance, candidates.into_iter()) {
            Some(cell) => self.remove(cell),
            None => {
                // frontier stall
                self.verdict = RunVerdict::Obstructed;
                self.witness = Some(self.boundary.clone());
            }
        }
        Ok(self.verdict)
    }

    /// Steps until the run is certified or obstructed.
    pub fn run_to_end(&mut self) -> RunVerdict {
        while self.verdict == RunVerdict::InProgress {
            self.step().expect("run is in progress");
        }
        self.verdict
    }

    pub fn host(&self) -> &'a Complex {
        self.host
    }

    pub fn origin(&self) -> CellId {
        self.origin
    }

    pub fn verdict(&self) -> RunVerdict {
        self.verdict
    }

    pub fn boundary(&self) -> &Chain {
        &self.boundary
    }

    pub fn remaining(&self) -> &BTreeSet<usize> {
        &self.remaining
    }

    pub fn star_cells(&self) -> &BTreeSet<usize> {
        &self.star
    }

    pub fn removed(&self) -> &[usize] {
        &self.removed
    }

    pub fn witness(&self) -> Option<&Chain> {
        self.witness.as_ref()
    }

    pub fn distances(&self) -> &DistanceField {
        &self.distance
    }

    pub fn certificate(&self) -> Certificate {
        let m = self.host.dimension();
        Certificate {
            origin: self.origin,
            removed: self.removed.iter().map(|&i| CellId::new(m, i)).collect(),
        }
    }
}

fn furthest(distance: &DistanceField, cells: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for t in cells {
        let d = distance.get(t).unwrap_or(0);
        if best.is_none_or(|(bd, _)| d > bd) {
            best = Some((d, t));
        }
    }
    best.map(|(_, t)| t)
}

/// Up to `count` origin vertices spread out by graph distance: vertex 0
/// first, then repeatedly the vertex furthest from all chosen ones.
pub fn spread_origins(c: &Complex, count: usize) -> Vec<CellId> {
    let n = c.vertex_count();
    let mut chosen = vec![0usize];
    let mut nearest = graph_distances(c, 0);
    while chosen.len() < count.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for (v, d) in nearest.iter().enumerate() {
            let d = d.unwrap_or(usize::MAX);
            if d > 0 && best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        let Some((_, v)) = best else { break };
        chosen.push(v);
        for (slot, d) in nearest.iter_mut().zip(graph_distances(c, v)) {
            *slot = match (*slot, d) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
    }
    chosen.into_iter().map(CellId::vertex).collect()
}

fn graph_distances(c: &Complex, from: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; c.vertex_count()];
    dist[from] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued");
        for &e in c.cells_at_vertex(v, 1) {
            for &w in c.vertices_of(CellId::new(1, e)) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
    }
    dist
}

/// Tries up to `retries` spread-out origins on a complex already known to be
/// a closed manifold and returns the first certified run's certificate.
pub(crate) fn certify_sphere(c: &Complex, retries: usize) -> Result<Option<Certificate>> {
    for origin in spread_origins(c, retries.max(1)) {
        let mut run = ShellingRun::start(c, origin)?;
        if run.run_to_end() == RunVerdict::SphereCertified {
            return Ok(Some(run.certificate()));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub origin: CellId,
    pub verdict: RunVerdict,
    pub removed: usize,
    pub witness: Option<Vec<CellId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
    pub attempts: Vec<Attempt>,
    pub oracle: BettiProfile,
    pub note: Option<String>,
}

/// Decides simple connectedness of a connected, closed, orientable
/// `m`-manifold (`m >= 2`) by shelling from up to `retries` origins.
///
/// A certified run whose complex does not have the homology of a sphere,
/// or an all-obstructed outcome on a complex with `b_1 = 0`, is reported as
/// [`Verdict::Inconclusive`].
pub fn decide_simply_connected(c: &Complex, retries: usize) -> Result<Decision> {
    decide_simply_connected_from(c, None, retries)
}

/// Like [`decide_simply_connected`], trying `first` before the spread-out
/// origins.
pub fn decide_simply_connected_from(
    c: &Complex,
    first: Option<CellId>,
    retries: usize,
) -> Result<Decision> {
    require_closed_manifold(c, true)?;
    if let Some(o) = first {
        c.check(o)?;
        if o.grade != 0 {
            return Err(Error::GradeMismatch {
                expected: 0,
                found: o.grade,
            });
        }
    }
    if c.dimension() < 2 {
        return Err(Error::Unsupported(
            "closed 1-manifolds are circles; shell them with init_shelling instead".into(),
        ));
    }
    let oracle = betti_mod2(c);
    let mut attempts = Vec::new();
    let mut certificate = None;
    let tries = retries.max(1);
    let mut origins: Vec<CellId> = first.into_iter().collect();
    origins.extend(spread_origins(c, tries + 1).into_iter().filter(|o| Some(*o) != first));
    origins.truncate(tries);
    for origin in origins {
        let mut run = ShellingRun::start(c, origin)?;
        let verdict = run.run_to_end();
        attempts.push(Attempt {
            origin,
            verdict,
            removed: run.removed().len(),
            witness: run.witness().map(|w| w.cells().collect()),
        });
        if verdict == RunVerdict::SphereCertified {
            certificate = Some(run.certificate());
            break;
        }
    }

    let (verdict, note) = match (&certificate, oracle.is_sphere_profile(), oracle.b1()) {
        (Some(_), true, _) => (Verdict::SimplyConnected, None),
        (Some(_), false, _) => (
            Verdict::Inconclusive,
            Some(format!(
                "shelling certified a sphere but mod-2 Betti numbers are {:?}",
                oracle.betti
            )),
        ),
        (None, _, 0) => (
            Verdict::Inconclusive,
            Some("every run was obstructed but b1 = 0".to_string()),
        ),
        (None, _, b1) => (
            Verdict::NotSimplyConnectedClaimed,
            Some(format!("oracle agrees: b1 = {b1}")),
        ),
    };
    Ok(Decision {
        verdict,
        certificate,
        attempts,
        oracle,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayOutcome {
    pub valid: bool,
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

impl ReplayOutcome {
    fn fail(step: usize, reason: impl Into<String>) -> Self {
        Self {
            valid: false,
            failed_step: Some(step),
            reason: Some(reason.into()),
        }
    }
}

/// Re-executes a removal sequence: every removal after the first must touch
/// the current boundary, the boundary must stay a simple cycle, and the
/// final remainder must be exactly the top cells of `Star(origin)`.
pub fn replay_certificate(c: &Complex, cert: &Certificate) -> ReplayOutcome {
    let m = c.dimension();
    if m == 0 || !c.contains(cert.origin) || cert.origin.grade != 0 {
        return ReplayOutcome::fail(0, "origin is not a vertex of a complex of positive dimension");
    }
    let star: BTreeSet<usize> = c.cells_at_vertex(cert.origin.index, m).iter().copied().collect();
    let mut remaining: BTreeSet<usize> = (0..c.cell_count(m)).collect();
    let mut boundary = Chain::empty(m - 1);
    for (step, cell) in cert.removed.iter().enumerate() {
        if cell.grade != m || !c.contains(*cell) {
            return ReplayOutcome::fail(step, format!("{cell} is not a top cell"));
        }
        if !remaining.contains(&cell.index) {
            return ReplayOutcome::fail(step, format!("{cell} was already removed"));
        }
        if star.contains(&cell.index) {
            return ReplayOutcome::fail(step, format!("{cell} belongs to the origin's star"));
        }
        let facets = c.facets_of(*cell);
        if step > 0 && !facets.iter().any(|&f| boundary.contains(f)) {
            return ReplayOutcome::fail(step, format!("{cell} does not touch the boundary"));
        }
        remaining.remove(&cell.index);
        for &f in facets {
            boundary.toggle(f);
        }
        if !is_simple_cycle(c, &boundary).simple {
            return ReplayOutcome::fail(step, "boundary is no longer a simple cycle");
        }
    }
    if remaining != star {
        return ReplayOutcome::fail(
            cert.removed.len(),
            "remaining cells are not the origin's star",
        );
    }
    ReplayOutcome {
        valid: true,
        failed_step: None,
        reason: None,
    }
}
