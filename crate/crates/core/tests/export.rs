use std::sync::Arc;

use wbt_core::criteria::validate;
use wbt_core::export::{from_fold, lint_fold, same_structure, to_fold, to_svg, ExportError, SvgStyle};
use wbt_core::families::{generate, FamilyId, FamilyParams};
use wbt_core::geom::Isometry;
use wbt_core::molecule::{build_universal_molecule, Activation, ConvexPolygon};
use wbt_core::{CreaseClass, CreasePattern};

fn one_345(active: &[usize]) -> CreasePattern {
    let t = ConvexPolygon::triangle_from_sides([3.0, 4.0, 5.0]).unwrap();
    let m = Arc::new(build_universal_molecule(&t).unwrap());
    let mut cp = CreasePattern::new();
    cp.push_placement(m, Activation::unchecked(active.iter().copied(), false), Isometry::IDENTITY)
        .unwrap();
    cp.finish().unwrap()
}

fn doc(cp: &CreasePattern) -> serde_json::Value {
    serde_json::from_slice(&to_fold(cp)).unwrap()
}

#[test]
fn single_molecule_document() {
    let v = doc(&one_345(&[0, 1, 2]));
    assert_eq!(v["vertices_coords"].as_array().unwrap().len(), 7);
    let asg: Vec<&str> = v["edges_assignment"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| a.as_str().unwrap())
        .collect();
    assert_eq!(asg.len(), 12);
    let count = |l: &str| asg.iter().filter(|a| **a == l).count();
    assert_eq!((count("B"), count("M"), count("V"), count("F")), (6, 3, 3, 0));

    let v = doc(&one_345(&[0]));
    let asg = v["edges_assignment"].as_array().unwrap();
    assert_eq!(asg.iter().filter(|a| *a == "F").count(), 2);
}

#[test]
fn vertices_are_sorted() {
    let v = doc(&generate(FamilyId::T31, &FamilyParams::equilateral(2.0)).unwrap());
    let pts: Vec<(f64, f64)> = v["vertices_coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p[0].as_f64().unwrap(), p[1].as_f64().unwrap()))
        .collect();
    assert!(pts.windows(2).all(|w| w[0] <= w[1]));
    let edges: Vec<(u64, u64)> = v["edges_vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap()))
        .collect();
    assert!(edges.windows(2).all(|w| w[0] < w[1]));
    assert!(edges.iter().all(|e| e.0 < e.1));
}

#[test]
fn numbers_have_at_most_twelve_digits() {
    let bytes = to_fold(&generate(FamilyId::T31, &FamilyParams::equilateral(2.0)).unwrap());
    let text = String::from_utf8(bytes).unwrap();
    for tok in text.split(|c: char| !(c.is_ascii_digit() || c == '.' || c == 'e' || c == '-')) {
        let trimmed = tok.trim_start_matches(['-', '0', '.']);
        let sig = trimmed.split('e').next().unwrap().chars().filter(|c| c.is_ascii_digit()).count();
        assert!(sig <= 12, "{tok}");
    }
}

#[test]
fn t31_reload_validates() {
    let cp = generate(FamilyId::T31, &FamilyParams::triangle(
        &ConvexPolygon::triangle_from_sides([3.0, 4.0, 5.0]).unwrap(),
    ))
    .unwrap();
    let back = from_fold(&to_fold(&cp)).unwrap();
    assert!(same_structure(&cp, &back));
    assert!(validate(&back).pass);
    assert_eq!(back.provenance.as_ref().unwrap().family, "T31");
    assert!(back.cell.is_some());
}

#[test]
fn truncated_json_is_a_parse_error() {
    let bytes = to_fold(&one_345(&[0, 1, 2]));
    let e = from_fold(&bytes[..bytes.len() / 2]).unwrap_err();
    assert!(matches!(e, ExportError::Parse { .. }), "{e}");
}

#[test]
fn bad_edge_index_is_a_schema_error() {
    let mut v = doc(&one_345(&[0, 1, 2]));
    v["edges_vertices"][0][1] = serde_json::json!(99);
    let e = from_fold(&serde_json::to_vec(&v).unwrap()).unwrap_err();
    match e {
        ExportError::Schema { field, .. } => assert_eq!(field, "edges_vertices[0]"),
        other => panic!("{other}"),
    }
    let mut v = doc(&one_345(&[0, 1, 2]));
    v["edges_assignment"][0] = serde_json::json!("Q");
    assert!(matches!(
        from_fold(&serde_json::to_vec(&v).unwrap()),
        Err(ExportError::Schema { .. })
    ));
}

#[test]
fn foreign_file_loads_with_inferred_classes() {
    let text = r#"{
        "file_spec": 1.1,
        "vertices_coords": [[0,0],[1,0],[1,1],[0,1]],
        "edges_vertices": [[0,1],[1,2],[2,3],[3,0],[0,2]],
        "edges_assignment": ["B","B","B","B","V"]
    }"#;
    let cp = from_fold(text.as_bytes()).unwrap();
    let classes: Vec<CreaseClass> = cp.creases.iter().map(|c| c.class).collect();
    assert_eq!(classes.iter().filter(|c| **c == CreaseClass::Border).count(), 4);
    assert_eq!(classes.iter().filter(|c| **c == CreaseClass::Unknown).count(), 1);
    assert!(cp.placements.is_empty());
    lint_fold(&to_fold(&cp)).unwrap();
}

#[test]
fn empty_pattern_svg() {
    let svg = String::from_utf8(to_svg(&CreasePattern::new(), &SvgStyle::default())).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert!(svg.contains(r#"<g id="content""#));
    assert!(!svg.contains("<path"));
    assert!(svg.trim_end().ends_with("</svg>"));
}

#[test]
fn t31_svg_fills_hexagons() {
    let cp = generate(FamilyId::T31, &FamilyParams::equilateral(2.0)).unwrap();
    let style = SvgStyle::default();
    let svg = String::from_utf8(to_svg(&cp, &style)).unwrap();
    assert_eq!(svg.matches(r#"class="floor""#).count(), cp.floors.len());
    assert_eq!(svg.matches("<path").count(), cp.floors.len() + cp.creases.len());
    assert!(svg.contains(&style.floor_fill));
    assert_eq!(to_svg(&cp, &style), to_svg(&cp, &style));
}

#[test]
fn svg_precision_floor_is_six() {
    let cp = one_345(&[0, 1, 2]);
    let lo = SvgStyle { precision: 2, ..SvgStyle::default() };
    assert_eq!(to_svg(&cp, &lo), to_svg(&cp, &SvgStyle::default()));
    let debug = SvgStyle { debug: true, ..SvgStyle::default() };
    let svg = String::from_utf8(to_svg(&cp, &debug)).unwrap();
    assert_eq!(svg.matches("<text").count(), cp.vertices.len());
}
