//! FOLD read/write and SVG rendering.
//!
//! Output is canonical: vertices sorted by their printed coordinates, edges
//! by endpoint pair, faces by their rotated vertex cycles. Everything this
//! tool needs beyond plain FOLD sits under the `wbt:design` key.

use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cp::{
    CellMember, Crease, CreaseClass, CreasePattern, FoldAssignment, Placement, Provenance,
    UnitCell,
};
use crate::geom::{Isometry, Point2};
use crate::molecule::{build_universal_molecule, Activation, ConvexPolygon, Molecule};

pub const VENDOR_KEY: &str = "wbt:design";
pub const FILE_SPEC: f64 = 1.1;
const SIG_DIGITS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExportError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
}

impl ExportError {
    fn schema(field: impl Into<String>, message: impl Into<String>) -> Self {
        ExportError::Schema {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Rounds to twelve significant digits. Values that are tiny next to `scale`
/// become zero, and so does `-0`.
pub fn quantize(x: f64, scale: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() <= 1e-12 * scale.max(1.0) {
        return 0.0;
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    let v: f64 = s.parse().unwrap_or(x);
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn quantize_value(v: &Value, scale: f64) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = quantize(n.as_f64().unwrap_or(0.0), scale);
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.iter().map(|x| quantize_value(x, scale)).collect()),
        Value::Object(o) => Value::Object(
            o.iter()
                .map(|(k, x)| (k.clone(), quantize_value(x, scale)))
                .collect(),
        ),
        other => other.clone(),
    }
}

/// The document as written. Field order is the output order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldDocument {
    pub file_spec: f64,
    #[serde(default)]
    pub file_creator: String,
    #[serde(default)]
    pub frame_classes: Vec<String>,
    pub vertices_coords: Vec<Vec<f64>>,
    pub edges_vertices: Vec<Vec<usize>>,
    #[serde(default)]
    pub edges_assignment: Vec<String>,
    #[serde(default)]
    pub faces_vertices: Vec<Vec<usize>>,
    #[serde(rename = "wbt:design", default, skip_serializing_if = "Option::is_none")]
    pub design: Option<Design>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Design {
    /// Crease class per edge.
    pub classes: Vec<CreaseClass>,
    /// Owning placement per edge.
    pub edge_molecule: Vec<Option<usize>>,
    /// Hinge index per edge, for hinge creases.
    pub edge_hinge: Vec<Option<usize>>,
    /// Distinct molecule outlines, counter-clockwise.
    pub molecules: Vec<Vec<[f64; 2]>>,
    pub placements: Vec<PlacementRecord>,
    /// Indices into `faces_vertices`.
    pub floors: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<UnitCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub molecule: usize,
    pub isometry: Isometry,
    pub activation: Activation,
}

fn canonical_cycle(c: &[usize]) -> Vec<usize> {
    let k = c
        .iter()
        .enumerate()
        .min_by_key(|(_, v)| **v)
        .map_or(0, |(i, _)| i);
    c[k..].iter().chain(&c[..k]).copied().collect()
}

fn quantize_iso(iso: &Isometry, scale: f64) -> Isometry {
    Isometry::new(
        quantize(iso.rotation, 1.0),
        Point2::new(
            quantize(iso.translation.x, scale),
            quantize(iso.translation.y, scale),
        ),
        iso.reflect,
    )
}

/// Builds the canonical document.
pub fn to_document(cp: &CreasePattern) -> FoldDocument {
    let scale = cp.bbox().diagonal();
    let q = |x: f64| quantize(x, scale);
    let coords: Vec<(f64, f64)> = cp.vertices.iter().map(|p| (q(p.x), q(p.y))).collect();
    let mut order: Vec<usize> = (0..coords.len()).collect();
    order.sort_by(|&a, &b| {
        coords[a]
            .0
            .total_cmp(&coords[b].0)
            .then(coords[a].1.total_cmp(&coords[b].1))
    });
    let mut new_id = vec![0usize; coords.len()];
    for (k, &v) in order.iter().enumerate() {
        new_id[v] = k;
    }
    let mut edges: Vec<(usize, usize, &Crease)> = cp
        .creases
        .iter()
        .map(|c| {
            let (a, b) = (new_id[c.endpoints.0], new_id[c.endpoints.1]);
            (a.min(b), a.max(b), c)
        })
        .collect();
    edges.sort_by_key(|e| (e.0, e.1));

    let mut faces: Vec<Vec<usize>> = match cp.face_set() {
        Ok(fs) => fs
            .cycles
            .iter()
            .zip(&fs.interior)
            .filter(|(_, inner)| **inner)
            .map(|(c, _)| canonical_cycle(&c.iter().map(|&v| new_id[v]).collect::<Vec<_>>()))
            .collect(),
        Err(_) => Vec::new(),
    };
    faces.sort();
    faces.dedup();
    let mut floors: Vec<usize> = cp
        .floors
        .iter()
        .filter_map(|f| {
            let c = canonical_cycle(&f.vertices.iter().map(|&v| new_id[v]).collect::<Vec<_>>());
            faces.binary_search(&c).ok()
        })
        .collect();
    floors.sort_unstable();

    let mut molecules: Vec<Vec<[f64; 2]>> = Vec::new();
    let mut placements = Vec::new();
    for p in &cp.placements {
        let outline: Vec<[f64; 2]> = p
            .molecule
            .outline()
            .vertices()
            .iter()
            .map(|v| [q(v.x), q(v.y)])
            .collect();
        let idx = match molecules.iter().position(|m| *m == outline) {
            Some(i) => i,
            None => {
                molecules.push(outline);
                molecules.len() - 1
            }
        };
        placements.push(PlacementRecord {
            molecule: idx,
            isometry: quantize_iso(&p.isometry, scale),
            activation: p.activation.clone(),
        });
    }
    let family = cp.provenance.as_ref().map(|p| Provenance {
        family: p.family.clone(),
        params: quantize_value(&p.params, 1.0),
    });
    let cell = cp.cell.as_ref().map(|c| UnitCell {
        members: c
            .members
            .iter()
            .map(|m| CellMember {
                isometry: quantize_iso(&m.isometry, scale),
                activation: m.activation.clone(),
            })
            .collect(),
        lattice: c.lattice.map(|v| Point2::new(q(v.x), q(v.y))),
    });

    FoldDocument {
        file_spec: FILE_SPEC,
        file_creator: "wbt".into(),
        frame_classes: vec!["creasePattern".into()],
        vertices_coords: order
            .iter()
            .map(|&v| vec![coords[v].0, coords[v].1])
            .collect(),
        edges_vertices: edges.iter().map(|e| vec![e.0, e.1]).collect(),
        edges_assignment: edges
            .iter()
            .map(|e| e.2.assignment.letter().to_string())
            .collect(),
        faces_vertices: faces,
        design: Some(Design {
            classes: edges.iter().map(|e| e.2.class).collect(),
            edge_molecule: edges.iter().map(|e| e.2.molecule_id).collect(),
            edge_hinge: edges.iter().map(|e| e.2.hinge).collect(),
            molecules,
            placements,
            floors,
            family,
            cell,
        }),
    }
}

/// Serializes to FOLD JSON. Byte-stable for equal inputs.
pub fn to_fold(cp: &CreasePattern) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(&to_document(cp)).expect("document serializes");
    out.push(b'\n');
    out
}

/// Reads a FOLD document. Files without the `wbt:design` block load with
/// boundary edges as borders and everything else as unknown creases.
pub fn from_fold(data: &[u8]) -> Result<CreasePattern, ExportError> {
    let value: Value = serde_json::from_slice(data).map_err(|e| ExportError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| ExportError::schema("$", "top level must be an object"))?;
    for key in ["vertices_coords", "edges_vertices"] {
        if !obj.contains_key(key) {
            return Err(ExportError::schema(key, "missing"));
        }
    }
    let doc: FoldDocument = serde_json::from_value(value.clone()).map_err(|e| {
        let field = obj
            .keys()
            .find(|k| e.to_string().contains(k.as_str()))
            .cloned()
            .unwrap_or_else(|| "$".into());
        ExportError::schema(field, e.to_string())
    })?;
    from_document(&doc)
}

fn lint(doc: &FoldDocument) -> Result<(), ExportError> {
    let nv = doc.vertices_coords.len();
    for (i, c) in doc.vertices_coords.iter().enumerate() {
        if c.len() != 2 || c.iter().any(|x| !x.is_finite()) {
            return Err(ExportError::schema(
                format!("vertices_coords[{i}]"),
                "expected two finite numbers",
            ));
        }
    }
    for (i, e) in doc.edges_vertices.iter().enumerate() {
        if e.len() != 2 {
            return Err(ExportError::schema(format!("edges_vertices[{i}]"), "expected two indices"));
        }
        if let Some(&v) = e.iter().find(|&&v| v >= nv) {
            return Err(ExportError::schema(
                format!("edges_vertices[{i}]"),
                format!("vertex {v} out of range (have {nv})"),
            ));
        }
        if e[0] == e[1] {
            return Err(ExportError::schema(format!("edges_vertices[{i}]"), "loop edge"));
        }
    }
    let ne = doc.edges_vertices.len();
    if !doc.edges_assignment.is_empty() && doc.edges_assignment.len() != ne {
        return Err(ExportError::schema(
            "edges_assignment",
            format!("length {} differs from edge count {ne}", doc.edges_assignment.len()),
        ));
    }
    for (i, a) in doc.edges_assignment.iter().enumerate() {
        if FoldAssignment::from_letter(a).is_none() && !matches!(a.as_str(), "U" | "u" | "C" | "c") {
            return Err(ExportError::schema(
                format!("edges_assignment[{i}]"),
                format!("unknown assignment {a:?}"),
            ));
        }
    }
    for (i, f) in doc.faces_vertices.iter().enumerate() {
        if let Some(&v) = f.iter().find(|&&v| v >= nv) {
            return Err(ExportError::schema(
                format!("faces_vertices[{i}]"),
                format!("vertex {v} out of range (have {nv})"),
            ));
        }
    }
    if let Some(d) = &doc.design {
        for (name, len) in [
            ("classes", d.classes.len()),
            ("edge_molecule", d.edge_molecule.len()),
            ("edge_hinge", d.edge_hinge.len()),
        ] {
            if len != ne {
                return Err(ExportError::schema(
                    format!("{VENDOR_KEY}.{name}"),
                    format!("length {len} differs from edge count {ne}"),
                ));
            }
        }
        for (i, p) in d.placements.iter().enumerate() {
            if p.molecule >= d.molecules.len() {
                return Err(ExportError::schema(
                    format!("{VENDOR_KEY}.placements[{i}].molecule"),
                    "out of range",
                ));
            }
        }
        for (i, m) in d.edge_molecule.iter().enumerate() {
            if m.is_some_and(|m| m >= d.placements.len()) {
                return Err(ExportError::schema(
                    format!("{VENDOR_KEY}.edge_molecule[{i}]"),
                    "out of range",
                ));
            }
        }
        if let Some(&f) = d.floors.iter().find(|&&f| f >= doc.faces_vertices.len()) {
            return Err(ExportError::schema(
                format!("{VENDOR_KEY}.floors"),
                format!("face {f} out of range"),
            ));
        }
    }
    Ok(())
}

/// Checks index bounds and the assignment alphabet of raw FOLD bytes.
pub fn lint_fold(data: &[u8]) -> Result<(), ExportError> {
    let doc: FoldDocument = serde_json::from_slice(data).map_err(|e| ExportError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    lint(&doc)
}

pub fn from_document(doc: &FoldDocument) -> Result<CreasePattern, ExportError> {
    lint(doc)?;
    let mut cp = CreasePattern::new();
    cp.vertices = doc
        .vertices_coords
        .iter()
        .map(|c| Point2::new(c[0], c[1]))
        .collect();
    let assignment = |i: usize| {
        doc.edges_assignment
            .get(i)
            .and_then(|a| FoldAssignment::from_letter(a))
            .unwrap_or(FoldAssignment::Flat)
    };
    match &doc.design {
        None => {
            for (i, e) in doc.edges_vertices.iter().enumerate() {
                let a = assignment(i);
                let class = if a == FoldAssignment::Boundary {
                    CreaseClass::Border
                } else {
                    CreaseClass::Unknown
                };
                cp.creases.push(Crease {
                    endpoints: (e[0], e[1]),
                    class,
                    assignment: a,
                    molecule_id: None,
                    hinge: None,
                });
            }
        }
        Some(d) => {
            let mut mols: Vec<Arc<Molecule>> = Vec::new();
            for (i, outline) in d.molecules.iter().enumerate() {
                let field = format!("{VENDOR_KEY}.molecules[{i}]");
                let poly = ConvexPolygon::new(outline.iter().map(|v| Point2::new(v[0], v[1])).collect())
                    .map_err(|e| ExportError::schema(&field, e.to_string()))?;
                let m = build_universal_molecule(&poly)
                    .map_err(|e| ExportError::schema(&field, e.to_string()))?;
                mols.push(Arc::new(m));
            }
            for (i, p) in d.placements.iter().enumerate() {
                let m = &mols[p.molecule];
                if let Some(&h) = p.activation.active.iter().find(|&&h| h >= m.hinges().len()) {
                    return Err(ExportError::schema(
                        format!("{VENDOR_KEY}.placements[{i}].activation"),
                        format!("hinge {h} out of range"),
                    ));
                }
                cp.placements.push(Placement {
                    molecule: m.clone(),
                    activation: p.activation.clone(),
                    isometry: p.isometry,
                });
            }
            for (i, e) in doc.edges_vertices.iter().enumerate() {
                cp.creases.push(Crease {
                    endpoints: (e[0], e[1]),
                    class: d.classes[i],
                    assignment: assignment(i),
                    molecule_id: d.edge_molecule[i],
                    hinge: d.edge_hinge[i],
                });
            }
            cp.provenance = d.family.clone();
            cp.cell = d.cell.clone();
        }
    }
    let cp = cp
        .finish()
        .map_err(|e| ExportError::schema("edges_vertices", e.to_string()))?;
    Ok(canonical(&cp))
}

/// Reorders vertices and creases the way `to_fold` writes them.
pub fn canonical(cp: &CreasePattern) -> CreasePattern {
    let scale = cp.bbox().diagonal();
    let q = |x: f64| quantize(x, scale);
    let mut order: Vec<usize> = (0..cp.vertices.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (cp.vertices[a], cp.vertices[b]);
        q(pa.x)
            .total_cmp(&q(pb.x))
            .then(q(pa.y).total_cmp(&q(pb.y)))
    });
    let mut new_id = vec![0usize; order.len()];
    for (k, &v) in order.iter().enumerate() {
        new_id[v] = k;
    }
    let mut out = cp.clone();
    out.vertices = order.iter().map(|&v| cp.vertices[v]).collect();
    let mut creases: Vec<(usize, Crease)> = cp
        .creases
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (a, b) = (new_id[c.endpoints.0], new_id[c.endpoints.1]);
            let mut c = c.clone();
            c.endpoints = (a.min(b), a.max(b));
            (i, c)
        })
        .collect();
    creases.sort_by_key(|(_, c)| c.endpoints);
    let mut crease_id = vec![0usize; creases.len()];
    for (k, (i, _)) in creases.iter().enumerate() {
        crease_id[*i] = k;
    }
    out.creases = creases.into_iter().map(|(_, c)| c).collect();
    for f in &mut out.floors {
        let cyc: Vec<usize> = f.vertices.iter().map(|&v| new_id[v]).collect();
        let k = cyc
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map_or(0, |(i, _)| i);
        f.vertices = cyc[k..].iter().chain(&cyc[..k]).copied().collect();
        f.polygon = f.vertices.iter().map(|&v| out.vertices[v]).collect();
        let mut b: Vec<usize> = f.border_creases.iter().map(|&c| crease_id[c]).collect();
        b.sort_unstable();
        f.border_creases = b;
    }
    out.floors.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    out
}

/// Equal up to vertex order and coordinate noise below the pattern tolerance.
pub fn same_structure(a: &CreasePattern, b: &CreasePattern) -> bool {
    let (a, b) = (canonical(a), canonical(b));
    let eps = a.eps().max(b.eps()) * 10.0;
    let close = |p: Point2, q: Point2| p.dist(q) <= eps;
    let iso_close = |x: &Isometry, y: &Isometry| {
        x.reflect == y.reflect
            && close(x.translation, y.translation)
            && (crate::geom::normalize_angle(x.rotation - y.rotation)).abs() <= 1e-9
    };
    let prov = |p: &Option<Provenance>| {
        p.as_ref()
            .map(|p| (p.family.clone(), quantize_value(&p.params, 1.0)))
    };
    a.vertices.len() == b.vertices.len()
        && a.vertices.iter().zip(&b.vertices).all(|(p, q)| close(*p, *q))
        && a.creases.len() == b.creases.len()
        && a.creases.iter().zip(&b.creases).all(|(x, y)| {
            x.endpoints == y.endpoints
                && x.class == y.class
                && x.assignment == y.assignment
                && x.molecule_id == y.molecule_id
                && x.hinge == y.hinge
        })
        && a.placements.len() == b.placements.len()
        && a.placements.iter().zip(&b.placements).all(|(x, y)| {
            x.activation == y.activation
                && iso_close(&x.isometry, &y.isometry)
                && x.molecule.n() == y.molecule.n()
                && x
                    .molecule
                    .outline()
                    .vertices()
                    .iter()
                    .zip(y.molecule.outline().vertices())
                    .all(|(p, q)| close(*p, *q))
        })
        && a.floors.len() == b.floors.len()
        && a
            .floors
            .iter()
            .zip(&b.floors)
            .all(|(x, y)| x.vertices == y.vertices && x.border_creases == y.border_creases)
        && prov(&a.provenance) == prov(&b.provenance)
        && a.cell.is_some() == b.cell.is_some()
}

/// SVG appearance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SvgStyle {
    pub mountain: String,
    pub valley: String,
    pub flat: String,
    pub border: String,
    /// Axial and unknown creases that are not on the boundary.
    pub other: String,
    pub stroke_width: f64,
    pub border_width: f64,
    pub floor_fill: String,
    /// Padding around the content, as a fraction of the larger extent.
    pub padding: f64,
    /// Decimal places; anything below 6 is raised to 6.
    pub precision: usize,
    /// Adds vertex index labels.
    pub debug: bool,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            mountain: "#d62728".into(),
            valley: "#1f77b4".into(),
            flat: "#bbbbbb".into(),
            border: "#000000".into(),
            other: "#555555".into(),
            stroke_width: 0.01,
            border_width: 0.02,
            floor_fill: "#f2d98c".into(),
            padding: 0.05,
            precision: 6,
            debug: false,
        }
    }
}

fn num(x: f64, prec: usize) -> String {
    let s = format!("{:.*}", prec, x);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the pattern. The y axis points up, as in the pattern's own frame.
pub fn to_svg(cp: &CreasePattern, style: &SvgStyle) -> Vec<u8> {
    let cp = canonical(cp);
    let prec = style.precision.max(6);
    let n = |x: f64| num(x, prec);
    let bb = cp.bbox();
    let (x0, y0, w, h) = if bb.is_empty() {
        (0.0, 0.0, 1.0, 1.0)
    } else {
        (bb.min.x, bb.min.y, bb.width(), bb.height())
    };
    let size = w.max(h).max(1e-9);
    let pad = size * style.padding.max(0.0);
    let stroke = style.stroke_width * size;
    let border = style.border_width * size;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        n(x0 - pad),
        n(-(y0 + h) - pad),
        n(w + 2.0 * pad),
        n(h + 2.0 * pad)
    );
    let _ = writeln!(s, r#"<g id="content" stroke-linecap="round" fill="none">"#);
    let pt = |p: Point2| format!("{} {}", n(p.x), n(-p.y));
    for f in &cp.floors {
        let mut d = String::new();
        for (k, p) in f.polygon.iter().enumerate() {
            let _ = write!(d, "{}{}", if k == 0 { "M" } else { " L" }, pt(*p));
        }
        let _ = writeln!(
            s,
            r#"<path class="floor" d="{d} Z" fill="{}" stroke="none"/>"#,
            escape(&style.floor_fill)
        );
    }
    for c in &cp.creases {
        let (a, b) = (cp.vertices[c.endpoints.0], cp.vertices[c.endpoints.1]);
        let (color, width, dash) = match (c.assignment, c.class) {
            (FoldAssignment::Boundary, _) | (_, CreaseClass::Border) => (&style.border, border, None),
            (FoldAssignment::Mountain, _) => (&style.mountain, stroke, None),
            (FoldAssignment::Valley, _) => (&style.valley, stroke, Some(stroke * 3.0)),
            (FoldAssignment::Flat, CreaseClass::Hinge) => (&style.flat, stroke * 0.5, None),
            _ => (&style.other, stroke, None),
        };
        let dash = dash.map_or(String::new(), |d| format!(r#" stroke-dasharray="{} {}""#, n(d), n(d)));
        let _ = writeln!(
            s,
            r#"<path class="{} {}" d="M{} L{}" stroke="{}" stroke-width="{}"{dash}/>"#,
            c.class.as_str(),
            c.assignment.letter(),
            pt(a),
            pt(b),
            escape(color),
            n(width)
        );
    }
    if style.debug {
        let fs = size * 0.02;
        for (i, p) in cp.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                r##"<text x="{}" y="{}" font-size="{}" fill="#000">{i}</text>"##,
                n(p.x),
                n(-p.y),
                n(fs)
            );
        }
    }
    s.push_str("</g>\n</svg>\n");
    s.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantize_trims() {
        assert_eq!(quantize(0.1 + 0.2, 1.0), 0.3);
        assert_eq!(quantize(-3e-16, 1.0), 0.0);
        assert_eq!(quantize(123456789.123456789, 1.0), 123456789.123);
    }

    #[test]
    fn num_format() {
        assert_eq!(num(1.5, 6), "1.5");
        assert_eq!(num(-0.0000001, 6), "0");
        assert_eq!(num(2.0, 6), "2");
    }
}
