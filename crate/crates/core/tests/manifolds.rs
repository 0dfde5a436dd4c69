use cellshell::manifold::{is_orientable, orient_from, top_component, validate_manifold, Axiom};
use cellshell::metrics::link_complex;
use cellshell::{catalog, CellId};

#[test]
fn mobius_strip_is_not_orientable() {
    let c = catalog::mobius_strip();
    let r = validate_manifold(&c);
    assert!(r.is_manifold);
    assert!(!r.is_closed);
    assert!(!is_orientable(&c));
}

#[test]
fn csaszar_torus_is_orientable() {
    let c = catalog::csaszar_torus();
    let r = validate_manifold(&c);
    assert!(r.is_manifold && r.is_closed && r.is_orientable);
}

#[test]
fn orientation_does_not_depend_on_the_start() {
    for c in [catalog::csaszar_torus(), catalog::octahedron(), catalog::voxel_torus()] {
        let k = c.dimension();
        let reference = orient_from(&c, 0).expect("orientable");
        assert_eq!(top_component(&c, 0).len(), c.cell_count(k));
        for start in 1..c.cell_count(k) {
            let o = orient_from(&c, start).expect("orientable");
            // Same orientation up to one global sign.
            let flip = o[0] * reference[0];
            assert!(o.iter().zip(&reference).all(|(a, b)| *a == flip * *b));
        }
    }
}

#[test]
fn non_manifolds_fail_the_right_axiom() {
    assert!(validate_manifold(&catalog::bowtie()).failed(Axiom::VertexLink));
    assert!(validate_manifold(&catalog::triple_fan()).failed(Axiom::FacetDegree));
}

#[test]
fn disks_have_boundary() {
    for c in [catalog::hexagon_disk(), catalog::triangle(), catalog::square_patch(3, 2)] {
        let r = validate_manifold(&c);
        assert!(r.is_manifold && !r.is_closed, "{r:?}");
    }
}

#[test]
fn links_in_a_three_sphere_are_two_spheres() {
    let c = catalog::simplex_boundary(3);
    for v in 0..c.vertex_count() {
        let l = link_complex(&c, CellId::vertex(v)).unwrap().unwrap();
        assert_eq!(l.cell_counts(), vec![4, 6, 4]);
        let r = validate_manifold(&l);
        assert!(r.is_manifold && r.is_closed);
    }
}
