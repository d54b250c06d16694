use std::sync::Arc;
use std::time::Duration;

use wbt_core::criteria::validate;
use wbt_core::families::{generate, unit_cell, FamilyId, FamilyParams, FloorKind};
use wbt_core::geom::Isometry;
use wbt_core::molecule::{build_universal_molecule, ConvexPolygon, Molecule};
use wbt_core::search::{
    canonical_signature, check_cell, enumerate, primitive_cell, reduce_basis, ContactRule,
    SearchError, SearchParams,
};

fn eq2() -> Arc<Molecule> {
    Arc::new(build_universal_molecule(&ConvexPolygon::equilateral(2.0).unwrap()).unwrap())
}

#[test]
fn rejects_bad_params() {
    let mut p = SearchParams::new(eq2());
    p.activations_allowed = vec![0];
    assert!(matches!(enumerate(&p), Err(SearchError::InvalidParams(_))));
    let mut p = SearchParams::new(eq2());
    p.max_copies_per_cell = 0;
    assert!(enumerate(&p).is_err());
    let mut p = SearchParams::new(eq2());
    p.orientation_set.clear();
    assert!(enumerate(&p).is_err());
}

#[test]
fn single_copy_finds_et31() {
    let mut p = SearchParams::new(eq2());
    p.max_copies_per_cell = 1;
    let out = enumerate(&p).unwrap();
    let et31 = canonical_signature(&generate(FamilyId::ET31, &FamilyParams::equilateral(2.0)).unwrap());
    assert!(out.candidates.iter().any(|c| c.signature == et31));
    for c in &out.candidates {
        assert!(validate(&c.cp).pass);
        assert_eq!(c.unit_cell.members.len(), 1);
    }
}

#[test]
fn results_are_sorted_and_unique() {
    let p = SearchParams::new(eq2());
    let out = enumerate(&p).unwrap();
    let sigs: Vec<&str> = out.candidates.iter().map(|c| c.signature.as_str()).collect();
    assert!(sigs.windows(2).all(|w| w[0] < w[1]));
    assert!(out.exhausted);
    let again = enumerate(&p).unwrap();
    let sigs2: Vec<&str> = again.candidates.iter().map(|c| c.signature.as_str()).collect();
    assert_eq!(sigs, sigs2);
}

#[test]
fn edge_to_edge_finds_t21_rhombi() {
    let mut p = SearchParams::new(eq2());
    p.activations_allowed = vec![2];
    p.contact_rule = ContactRule::EdgeToEdge;
    let out = enumerate(&p).unwrap();
    let t21 = canonical_signature(&generate(FamilyId::T21, &FamilyParams::equilateral(2.0)).unwrap());
    assert!(out.candidates.iter().any(|c| c.signature == t21
        && c.floor_census.keys().all(|k| *k == FloorKind::Rhombus)));
}

#[test]
fn tiny_budget_reports_unfinished() {
    let mut p = SearchParams::new(eq2());
    p.max_copies_per_cell = 3;
    p.time_budget = Duration::from_millis(1);
    let out = enumerate(&p).unwrap();
    assert!(!out.exhausted);
}

#[test]
fn signature_ignores_placement_and_extent() {
    let p = FamilyParams::triangle(&ConvexPolygon::triangle_from_sides([4.0, 5.0, 6.0]).unwrap());
    let a = generate(FamilyId::T31, &p.clone().with_extent(3, 3)).unwrap();
    let b = generate(FamilyId::T31, &p.with_extent(2, 4)).unwrap();
    let moved = a.transformed(&Isometry::new(0.7, wbt_core::Point2::new(3.0, -1.0), false));
    assert_eq!(canonical_signature(&a), canonical_signature(&b));
    assert_eq!(canonical_signature(&a), canonical_signature(&moved.finish().unwrap()));
    let c = generate(FamilyId::T21, &FamilyParams::equilateral(2.0)).unwrap();
    assert_ne!(canonical_signature(&a), canonical_signature(&c));
}

#[test]
fn family_cells_pass_the_periodic_check() {
    for id in [FamilyId::T21, FamilyId::T31, FamilyId::ET31, FamilyId::ET32, FamilyId::T32] {
        let (m, cell) = unit_cell(id, &FamilyParams::equilateral(2.0)).unwrap();
        let c = check_cell(&m, &cell).unwrap_or_else(|| panic!("{id}"));
        assert!(c.report.unwrap().pass);
        let prim = primitive_cell(&m, &cell);
        assert!(prim.members.len() <= cell.members.len());
    }
}

#[test]
fn gauss_reduced_basis_is_short() {
    let a = wbt_core::Point2::new(1.0, 0.0);
    let b = wbt_core::Point2::new(7.3, 1.0);
    let [u, v] = reduce_basis(a, b);
    assert!(u.norm() <= v.norm() + 1e-12);
    assert!(u.dot(v).abs() <= 0.5 * u.norm() * u.norm() + 1e-12);
    assert!((u.cross(v).abs() - a.cross(b).abs()).abs() < 1e-9);
}
