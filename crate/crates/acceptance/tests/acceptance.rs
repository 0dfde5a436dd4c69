//! Acceptance suite: one line per criterion.
//!
//! Every criterion either passes, fails, or fails only on a clause that no
//! correct implementation can meet (reported as FAIL with the reason, and
//! not counted against the exit status).

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use cellshell::complex::{CellId, Chain, Complex, Cube};
use cellshell::filler::{fill, surface_chain, AmbientGrid, FillStatus};
use cellshell::manifold::Axiom;
use cellshell::metrics::link_complex;
use cellshell::shelling::{init_shelling, is_simple_cycle, separate, RunVerdict, Verdict};
use cellshell::{
    catalog, cell_distance, decide_simply_connected, replay_certificate,
    validate_manifold, ComplexDocument,
};

const SEED: u64 = 0x5eed_ce11;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Fails only on a clause that contradicts the definitions it tests.
    Unattainable(String),
}

use Outcome::{Fail, Pass, Unattainable};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus() -> Vec<(String, String, ComplexDocument, Complex)> {
    let mut entries: Vec<_> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    entries.sort();
    entries
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).expect("readable");
            let doc = ComplexDocument::parse(&text).expect("corpus parses");
            let c = doc.to_complex().expect("corpus builds");
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            (name, text, doc, c)
        })
        .collect()
}

fn is_closed_orientable_manifold(c: &Complex) -> bool {
    let r = validate_manifold(c);
    r.is_manifold && r.is_closed && r.is_orientable
}

// 1
fn simplicial_spheres() -> Outcome {
    let mut notes = Vec::new();
    for m in 1..=3 {
        let c = catalog::simplex_boundary(m);
        let started = Instant::now();
        for v in 0..c.vertex_count() {
            let mut run = init_shelling(&c, CellId::vertex(v)).expect("sphere");
            if run.run_to_end() != RunVerdict::SphereCertified {
                return Fail(format!("m={m}: origin {v} not certified"));
            }
            if !replay_certificate(&c, &run.certificate()).valid {
                return Fail(format!("m={m}: certificate from {v} does not replay"));
            }
        }
        let took = started.elapsed();
        if took >= Duration::from_secs(1) {
            return Fail(format!("m={m} took {took:?}"));
        }
        notes.push(format!("m={m}: {} origins in {:.1?}", c.vertex_count(), took));
    }
    Pass(notes.join(", "))
}

// 2
fn cubical_spheres() -> Outcome {
    let mut count = 0;
    let mut most_attempts = 0;
    for a in 1..=4 {
        for b in 1..=4 {
            for h in 1..=4 {
                let c = catalog::box_surface(a, b, h);
                let d = decide_simply_connected(&c, 3).expect("closed surface");
                if d.verdict != Verdict::SimplyConnected || d.attempts.len() > 3 {
                    return Fail(format!("{a}x{b}x{h}: {:?}", d.verdict));
                }
                if d.oracle.euler != 2 {
                    return Fail(format!("{a}x{b}x{h}: euler {}", d.oracle.euler));
                }
                most_attempts = most_attempts.max(d.attempts.len());
                count += 1;
            }
        }
    }
    Pass(format!("{count} boxes certified, at most {most_attempts} origin(s) each, euler 2"))
}

// 3
fn torus_detection() -> Outcome {
    let c = catalog::csaszar_torus();
    let d = decide_simply_connected(&c, 3).expect("closed surface");
    let all_obstructed = d.attempts.iter().all(|a| a.verdict == RunVerdict::Obstructed);
    if !all_obstructed || d.verdict != Verdict::NotSimplyConnectedClaimed {
        return Fail(format!("verdict {:?}", d.verdict));
    }
    if d.oracle.betti != [1, 2, 1] || d.oracle.euler != 0 {
        return Fail(format!("oracle {:?}", d.oracle));
    }
    Pass(format!("{} runs obstructed, b = [1,2,1], euler 0", d.attempts.len()))
}

// 4
fn oracle_consistency() -> Outcome {
    let mut decided = 0;
    let mut certified = 0;
    let mut gated = 0;
    for (name, _, _, c) in corpus() {
        if !is_closed_orientable_manifold(&c) || c.dimension() < 2 {
            if let Ok(d) = decide_simply_connected(&c, 3) {
                if d.verdict == Verdict::SimplyConnected {
                    return Fail(format!("{name}: sphere claimed outside the gate"));
                }
            }
            gated += 1;
            continue;
        }
        let d = decide_simply_connected(&c, 3).expect("gate passed");
        decided += 1;
        let any_certified = d.attempts.iter().any(|a| a.verdict == RunVerdict::SphereCertified);
        if any_certified {
            certified += 1;
            if d.oracle.b1() != 0 && d.verdict != Verdict::Inconclusive {
                return Fail(format!("{name}: certified with b1 = {}", d.oracle.b1()));
            }
        }
        if d.verdict == Verdict::SimplyConnected && !d.oracle.is_sphere_profile() {
            return Fail(format!("{name}: silent sphere claim"));
        }
    }
    let total = decided + gated;
    if total < 10 {
        return Fail(format!("corpus has only {total} complexes"));
    }
    Pass(format!(
        "{total} complexes: {decided} decided ({certified} certified, all b1 = 0), {gated} rejected by the gate"
    ))
}

fn edge_between(c: &Complex, a: usize, b: usize) -> Option<usize> {
    c.cells_at_vertex(a, 1)
        .iter()
        .copied()
        .find(|&e| c.vertices_of(CellId::new(1, e)).contains(&b))
}

/// A vertex-simple closed edge loop found by a non-backtracking random walk.
fn random_loop(c: &Complex, rng: &mut StdRng) -> Vec<usize> {
    loop {
        let start = rng.gen_range(0..c.vertex_count());
        let mut path = vec![start];
        let mut at: BTreeMap<usize, usize> = BTreeMap::from([(start, 0)]);
        for _ in 0..4 * c.vertex_count() {
            let here = *path.last().unwrap();
            let previous = path.len().checked_sub(2).map(|i| path[i]);
            let mut next: Vec<usize> = c
                .cells_at_vertex(here, 1)
                .iter()
                .flat_map(|&e| c.vertices_of(CellId::new(1, e)).iter().copied())
                .filter(|&w| w != here && Some(w) != previous)
                .collect();
            next.sort_unstable();
            next.dedup();
            let Some(&w) = next.choose(rng) else { break };
            if let Some(&i) = at.get(&w) {
                let cycle = &path[i..];
                if cycle.len() < 3 {
                    break;
                }
                return (0..cycle.len())
                    .map(|j| edge_between(c, cycle[j], cycle[(j + 1) % cycle.len()]).unwrap())
                    .collect();
            }
            at.insert(w, path.len());
            path.push(w);
        }
    }
}

// 5
fn jordan_separation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut spheres = Vec::new();
    for (name, _, _, c) in corpus() {
        if c.dimension() != 2 || !is_closed_orientable_manifold(&c) {
            continue;
        }
        let d = decide_simply_connected(&c, 3).expect("closed surface");
        if d.verdict != Verdict::SimplyConnected {
            continue;
        }
        for _ in 0..20 {
            let cycle = Chain::from_indices(1, random_loop(&c, &mut rng));
            if !is_simple_cycle(&c, &cycle).simple {
                return Fail(format!("{name}: sampler produced a non-simple cycle"));
            }
            let parts = separate(&c, &cycle).expect("cycle").sizes().len();
            if parts != 2 {
                return Fail(format!("{name}: a cycle left {parts} component(s)"));
            }
        }
        spheres.push(name);
    }
    if spheres.is_empty() {
        return Fail("no certified 2-sphere in the corpus".into());
    }
    let torus = catalog::csaszar_torus();
    let essential = (0..200)
        .filter(|_| {
            let cycle = Chain::from_indices(1, random_loop(&torus, &mut rng));
            separate(&torus, &cycle).expect("cycle").sizes().len() == 1
        })
        .count();
    if essential == 0 {
        return Fail("no sampled torus cycle failed to separate".into());
    }
    Pass(format!(
        "20 cycles split each of {} spheres in two; {essential}/200 torus cycles did not separate",
        spheres.len()
    ))
}

/// All-pairs shortest paths over `k`-simplices sharing `k` vertices, built
/// from the triangle list alone.
fn distance_oracle(triangles: &[Vec<usize>], k: usize) -> BTreeMap<(usize, usize), Option<usize>> {
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for t in triangles {
        let mut t = t.clone();
        t.sort_unstable();
        match k {
            1 => {
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    cells.insert(vec![t[i], t[j]]);
                }
            }
            _ => {
                cells.insert(t);
            }
        }
    }
    let cells: Vec<Vec<usize>> = cells.into_iter().collect();
    let n = cells.len();
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        d[i][i] = 0;
        for j in 0..n {
            let shared = cells[i].iter().filter(|v| cells[j].contains(v)).count();
            if i != j && shared == k {
                d[i][j] = 1;
            }
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    let vertices: BTreeSet<usize> = triangles.iter().flatten().copied().collect();
    let mut out = BTreeMap::new();
    for &x in &vertices {
        for &y in &vertices {
            let best = if x == y {
                Some(0)
            } else {
                let mut best = INF;
                for (a, ca) in cells.iter().enumerate() {
                    for (b, cb) in cells.iter().enumerate() {
                        if ca.contains(&x) && cb.contains(&y) {
                            best = best.min(d[a][b].saturating_add(1));
                        }
                    }
                }
                (best < INF).then_some(best)
            };
            out.insert((x, y), best);
        }
    }
    out
}

// 6
fn metric_axioms() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let all: Vec<Vec<usize>> = (0..7)
        .flat_map(|a| (a + 1..7).flat_map(move |b| (b + 1..7).map(move |c| vec![a, b, c])))
        .collect();
    let mut triangle_violations = Vec::new();
    for sample in 0..50 {
        let count = rng.gen_range(1..=10);
        let triangles: Vec<Vec<usize>> = all.choose_multiple(&mut rng, count).cloned().collect();
        let c = Complex::from_simplices(2, &triangles).expect("valid");
        let ids: Vec<usize> = triangles
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        for k in 1..=2 {
            let oracle = distance_oracle(&triangles, k);
            let d = |x: usize, y: usize| {
                cell_distance(&c, k, CellId::vertex(x), CellId::vertex(y)).expect("in range")
            };
            let n = ids.len();
            for x in 0..n {
                for y in 0..n {
                    if d(x, y) != oracle[&(ids[x], ids[y])] {
                        return Fail(format!("sample {sample}, k={k}: d({x},{y}) differs from the oracle"));
                    }
                    if d(x, y) != d(y, x) {
                        return Fail(format!("sample {sample}, k={k}: asymmetric at ({x},{y})"));
                    }
                    for z in 0..n {
                        if let (Some(a), Some(b)) = (d(x, y), d(y, z)) {
                            if !d(x, z).is_some_and(|s| s <= a + b) {
                                if k == 1 {
                                    return Fail(format!("sample {sample}: edge distance breaks the triangle inequality"));
                                }
                                triangle_violations.push(sample);
                            }
                        }
                    }
                }
            }
        }
    }
    triangle_violations.dedup();
    let base = "50 complexes match the all-pairs oracle for k=1,2; symmetric; d^(1) is graph distance";
    if triangle_violations.is_empty() {
        Pass(base.into())
    } else {
        Unattainable(format!(
            "{base}; the triangle inequality fails for d^(2) on {}/50 complexes. \
             Counting cells on a path is not subadditive (hexagon disk: d(1,4)=3 > d(1,0)+d(0,4)=2)",
            triangle_violations.len()
        ))
    }
}

// 7
fn manifold_axioms() -> Outcome {
    if !validate_manifold(&catalog::bowtie()).failed(Axiom::VertexLink) {
        return Fail("bowtie not rejected by the vertex-link axiom".into());
    }
    if !validate_manifold(&catalog::triple_fan()).failed(Axiom::FacetDegree) {
        return Fail("triple fan not rejected by the facet-degree axiom".into());
    }
    let mut accepted = 0;
    let mut links = 0;
    for (name, _, _, c) in corpus() {
        if name == "bowtie" || name == "triple-fan" {
            continue;
        }
        let r = validate_manifold(&c);
        if !r.is_manifold {
            return Fail(format!("{name} rejected: {:?}", r.failures));
        }
        accepted += 1;
        if !r.is_closed {
            continue;
        }
        for v in 0..c.vertex_count() {
            let l = link_complex(&c, CellId::vertex(v)).expect("vertex").expect("not isolated");
            let ok = if c.dimension() == 1 {
                // A closed 0-manifold link: two points.
                l.dimension() == 0 && l.vertex_count() == 2
            } else {
                let lr = validate_manifold(&l);
                lr.is_manifold && lr.is_closed && l.dimension() + 1 == c.dimension()
            };
            if !ok {
                return Fail(format!("{name}: link of vertex {v} is not a closed manifold"));
            }
            links += 1;
        }
    }
    Pass(format!(
        "bowtie and triple fan rejected; {accepted} corpus manifolds accepted; {links} vertex links closed"
    ))
}

fn grow_region(rng: &mut StdRng) -> Vec<Vec<i64>> {
    let target = rng.gen_range(1..=70);
    let start = (rng.gen_range(1..15), rng.gen_range(1..15));
    let mut cells = vec![start];
    let mut set = BTreeSet::from([start]);
    for _ in 0..4000 {
        if cells.len() >= target {
            break;
        }
        let (x, y) = *cells.choose(rng).unwrap();
        let (dx, dy) = *[(1, 0), (-1, 0), (0, 1), (0, -1)].choose(rng).unwrap();
        let n = (x + dx, y + dy);
        if !(1..15).contains(&n.0) || !(1..15).contains(&n.1) || set.contains(&n) {
            continue;
        }
        set.insert(n);
        let squares: Vec<Vec<i64>> = set.iter().map(|&(a, b)| vec![a, b]).collect();
        let curve = catalog::planar_curve(&squares).expect("valid");
        let r = validate_manifold(&curve);
        if r.is_manifold && r.is_closed {
            cells.push(n);
        } else {
            set.remove(&n);
        }
    }
    set.into_iter().map(|(a, b)| vec![a, b]).collect()
}

/// Squares whose centre sees an odd number of curve edges on a ray to +x.
fn parity_interior(curve: &Complex, size: i64) -> BTreeSet<Cube> {
    let (_, edges) = surface_chain(curve).expect("cubical");
    let vertical: Vec<(i64, i64)> = edges
        .iter()
        .filter(|e| e.0[0] % 2 == 0)
        .map(|e| (e.0[0] / 2, (e.0[1] - 1) / 2))
        .collect();
    let mut inside = BTreeSet::new();
    for x in 0..size {
        for y in 0..size {
            let crossings = vertical.iter().filter(|&&(ex, ey)| ex > x && ey == y).count();
            if crossings % 2 == 1 {
                inside.insert(Cube::voxel(&[x, y]));
            }
        }
    }
    inside
}

// 8
fn curve_filling() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let grid = AmbientGrid::new(vec![0, 0], vec![16, 16]).expect("grid");
    let mut branched = 0;
    let mut largest = 0;
    for sample in 0..100 {
        let region = grow_region(&mut rng);
        let curve = catalog::planar_curve(&region).expect("valid");
        let r = match fill(&grid, &curve) {
            Ok(r) => r,
            Err(e) => return Fail(format!("curve {sample}: {e}")),
        };
        if r.status != FillStatus::Complete {
            return Fail(format!("curve {sample}: partial fill"));
        }
        let (_, m) = surface_chain(&curve).expect("cubical");
        if !r.fill.boundary().sum(&m).expect("same grade").is_empty() {
            return Fail(format!("curve {sample}: boundary of the fill is not the curve"));
        }
        if *r.fill.cells() != parity_interior(&curve, 16) {
            return Fail(format!("curve {sample}: fill differs from the parity interior"));
        }
        if r.tree.len() > 1 {
            branched += 1;
        }
        largest = largest.max(r.fill.len());
    }
    Pass(format!(
        "100 curves filled exactly, equal to the parity interior (up to {largest} squares, {branched} with branches)"
    ))
}

// 9
fn branch_case() -> Outcome {
    let curve = catalog::dumbbell_curve();
    let (_, m) = surface_chain(&curve).expect("cubical");
    let grid = AmbientGrid::around(m.iter(), 2).expect("grid");
    let r = fill(&grid, &curve).expect("fillable");
    if r.tree.len() < 2 || r.status != FillStatus::Complete || r.fill.boundary() != m {
        return Fail(format!("dumbbell: {} node(s), {:?}", r.tree.len(), r.status));
    }
    let cube = catalog::box_surface(1, 1, 1);
    let (_, s) = surface_chain(&cube).expect("cubical");
    let rc = fill(&AmbientGrid::around(s.iter(), 2).expect("grid"), &cube).expect("fillable");
    if rc.status != FillStatus::Complete || rc.fill.len() != 1 {
        return Fail(format!("unit cube: {} cell(s)", rc.fill.len()));
    }
    Pass(format!(
        "dumbbell: {} tree nodes, {} squares, boundary exact; unit cube: 1 three-cell",
        r.tree.len(),
        r.fill.len()
    ))
}

fn cli(args: &[&str]) -> cellshell_cli::Outcome {
    cellshell_cli::run(std::iter::once("cellshell").chain(args.iter().copied()))
}

// 10
fn determinism_and_round_trip() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let cert = dir.path().join("cert.json").display().to_string();
    let tree = dir.path().join("tree.json").display().to_string();
    let mut invocations = 0;
    for (name, text, doc, c) in corpus() {
        if doc.to_json() != text {
            return Fail(format!("{name}: serialize(parse(text)) differs from the file"));
        }
        match ComplexDocument::parse(&doc.to_json()) {
            Ok(again) if again == doc => {}
            _ => return Fail(format!("{name}: parse(serialize(doc)) differs")),
        }
        let path = corpus_dir().join(format!("{name}.json")).display().to_string();
        let ridges: Vec<String> = c
            .facets_of(CellId::new(c.dimension(), 0))
            .iter()
            .map(|i| i.to_string())
            .collect();
        let ridges = ridges.join(",");
        let commands: Vec<Vec<&str>> = vec![
            vec!["validate", "--in", &path],
            vec!["betti", "--in", &path],
            vec!["decide", "--in", &path, "--out", &cert],
            vec!["replay", "--in", &path, "--cert", &cert],
            vec!["separate", "--in", &path, "--cycle", &ridges],
            vec!["fill", "--in", &path, "--out", &tree],
            vec!["export", "--in", &path, "--format", "obj"],
            vec!["export", "--in", &path, "--format", "json"],
        ];
        for args in commands {
            let first = cli(&args);
            let second = cli(&args);
            if first != second {
                return Fail(format!("{name}: `{}` is not deterministic", args[0]));
            }
            let json = serde_json::from_str::<serde_json::Value>(&first.stdout);
            if args[0] != "export" && first.code != 2 && json.is_err() {
                return Fail(format!("{name}: `{}` did not print JSON", args[0]));
            }
            invocations += 1;
        }
    }
    Pass(format!(
        "{invocations} command invocations byte-identical on rerun; corpus round-trips"
    ))
}

type Criterion = (u8, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "simplicial sphere recognition", simplicial_spheres),
        (2, "cubical sphere recognition", cubical_spheres),
        (3, "torus detection", torus_detection),
        (4, "oracle consistency over the corpus", oracle_consistency),
        (5, "Jordan separation", jordan_separation),
        (6, "metric axioms", metric_axioms),
        (7, "manifold axioms", manifold_axioms),
        (8, "curve filling exactness", curve_filling),
        (9, "filling branch case", branch_case),
        (10, "determinism and round trip", determinism_and_round_trip),
    ];
    let mut failed = 0;
    let mut unattainable = 0;
    for (n, title, check) in criteria {
        let started = Instant::now();
        let outcome = check();
        let took = started.elapsed();
        let (mark, detail) = match outcome {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Unattainable(d) => {
                unattainable += 1;
                ("FAIL", format!("{d} [unattainable as stated]"))
            }
        };
        println!("criterion {n:>2} {mark} {title} ({took:.1?}): {detail}");
    }
    println!(
        "{} passed, {failed} failed, {unattainable} unattainable",
        10 - failed - unattainable
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
