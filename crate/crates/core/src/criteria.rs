//! The six waterbomb-tessellation criteria and the structural checks that
//! back them, producing a located report.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::cp::{CreaseClass, CreasePattern};
use crate::geom::{convexity, interior_angle, Bbox, GeomError, Point2};
use crate::molecule::min_active;
use crate::spatial::Grid;

/// Which rule a violation breaks. Numbered criteria serialize as integers,
/// structural checks as tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    HingeAtFloorSide,
    RidgeAtFloorSide,
    SharedFloorBorder,
    FloorPointMeeting,
    ConcaveFloor,
    TooFewHinges,
    Planarity,
    Weld,
    HingePerpendicular,
    RidgeBisector,
    HingeMatching,
    Overlap,
}

impl Check {
    pub fn number(self) -> Option<u8> {
        Some(match self {
            Check::HingeAtFloorSide => 1,
            Check::RidgeAtFloorSide => 2,
            Check::SharedFloorBorder => 3,
            Check::FloorPointMeeting => 4,
            Check::ConcaveFloor => 5,
            Check::TooFewHinges => 6,
            _ => return None,
        })
    }

    pub fn tag(self) -> &'static str {
        match self {
            Check::HingeAtFloorSide => "hinge_at_floor_side",
            Check::RidgeAtFloorSide => "ridge_at_floor_side",
            Check::SharedFloorBorder => "shared_floor_border",
            Check::FloorPointMeeting => "floor_point_meeting",
            Check::ConcaveFloor => "concave_floor",
            Check::TooFewHinges => "too_few_hinges",
            Check::Planarity => "planarity",
            Check::Weld => "weld",
            Check::HingePerpendicular => "hinge_perpendicular",
            Check::RidgeBisector => "ridge_bisector",
            Check::HingeMatching => "hinge_matching",
            Check::Overlap => "overlap",
        }
    }

    const ALL: [Check; 12] = [
        Check::HingeAtFloorSide,
        Check::RidgeAtFloorSide,
        Check::SharedFloorBorder,
        Check::FloorPointMeeting,
        Check::ConcaveFloor,
        Check::TooFewHinges,
        Check::Planarity,
        Check::Weld,
        Check::HingePerpendicular,
        Check::RidgeBisector,
        Check::HingeMatching,
        Check::Overlap,
    ];
}

impl Serialize for Check {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.number() {
            Some(n) => s.serialize_u8(n),
            None => s.serialize_str(self.tag()),
        }
    }
}

impl<'de> Deserialize<'de> for Check {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u8),
            S(String),
        }
        let raw = Raw::deserialize(d)?;
        Check::ALL
            .into_iter()
            .find(|c| match &raw {
                Raw::N(n) => c.number() == Some(*n),
                Raw::S(s) => c.tag() == s,
            })
            .ok_or_else(|| serde::de::Error::custom("unknown criterion"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    Pattern,
    Vertex { index: usize },
    Crease { index: usize },
    Floor { index: usize },
    Placement { index: usize },
    Hinge { placement: usize, hinge: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub criterion: Check,
    pub location: Location,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Point2>,
    pub message: String,
}

impl Violation {
    fn new(criterion: Check, location: Location, point: Option<Point2>, message: String) -> Self {
        Self {
            criterion,
            location,
            point,
            message,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn count(&self, c: Check) -> usize {
        self.violations.iter().filter(|v| v.criterion == c).count()
    }

    pub fn numbered(&self, n: u8) -> usize {
        self.violations
            .iter()
            .filter(|v| v.criterion.number() == Some(n))
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Floor boundary positions that are not corners, with their vertex ids.
fn side_vertices(cp: &CreasePattern, eps: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (fi, f) in cp.floors.iter().enumerate() {
        let corners = f.corner_positions(eps);
        for (k, &v) in f.vertices.iter().enumerate() {
            if corners.binary_search(&k).is_err() {
                out.push((fi, v));
            }
        }
    }
    out
}

fn incident_count(inc: &[Vec<usize>], v: usize, pred: impl Fn(usize) -> bool) -> usize {
    inc[v].iter().filter(|&&c| pred(c)).count()
}

/// Criterion 1: an active hinge may only meet a floor border at a corner.
pub fn check_hinges_at_floor_vertices(cp: &CreasePattern) -> Vec<Violation> {
    let eps = cp.eps();
    let inc = cp.incidence();
    side_vertices(cp, eps)
        .into_iter()
        .filter(|&(_, v)| incident_count(&inc, v, |c| cp.creases[c].is_active_hinge()) > 0)
        .map(|(f, v)| {
            Violation::new(
                Check::HingeAtFloorSide,
                Location::Vertex { index: v },
                Some(cp.vertices[v]),
                format!("active hinge meets the side of floor {f} away from a corner"),
            )
        })
        .collect()
}

/// Criterion 2: a ridge may only meet a floor border at a corner.
pub fn check_ridges_at_floor_vertices(cp: &CreasePattern) -> Vec<Violation> {
    let eps = cp.eps();
    let inc = cp.incidence();
    side_vertices(cp, eps)
        .into_iter()
        .filter(|&(_, v)| {
            incident_count(&inc, v, |c| cp.creases[c].class == CreaseClass::Ridge) > 0
        })
        .map(|(f, v)| {
            Violation::new(
                Check::RidgeAtFloorSide,
                Location::Vertex { index: v },
                Some(cp.vertices[v]),
                format!("ridge meets the side of floor {f} away from a corner"),
            )
        })
        .collect()
}

/// Criterion 3: no crease borders two floors.
pub fn check_no_shared_floor_borders(cp: &CreasePattern) -> Vec<Violation> {
    let mut owners: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (fi, f) in cp.floors.iter().enumerate() {
        for &c in &f.border_creases {
            owners.entry(c).or_default().push(fi);
        }
    }
    owners
        .into_iter()
        .filter(|(_, fs)| fs.len() >= 2)
        .map(|(c, fs)| {
            let s = cp.segment(c);
            Violation::new(
                Check::SharedFloorBorder,
                Location::Crease { index: c },
                Some(s.midpoint()),
                format!("crease borders floors {} and {}", fs[0], fs[1]),
            )
        })
        .collect()
}

/// Criterion 4: where floors touch at a point exactly one active hinge and
/// at least one ridge must arrive.
pub fn check_floor_point_meetings(cp: &CreasePattern) -> Vec<Violation> {
    let inc = cp.incidence();
    let mut floors_at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (fi, f) in cp.floors.iter().enumerate() {
        let mut vs = f.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            floors_at.entry(v).or_default().push(fi);
        }
    }
    let mut out = Vec::new();
    for (v, fs) in floors_at {
        // floors that share a border crease at v are criterion 3's business
        let point_only = fs.iter().enumerate().any(|(i, &f)| {
            fs[i + 1..].iter().any(|&g| {
                !inc[v].iter().any(|c| {
                    cp.floors[f].border_creases.binary_search(c).is_ok()
                        && cp.floors[g].border_creases.binary_search(c).is_ok()
                })
            })
        });
        if !point_only {
            continue;
        }
        let hinges = incident_count(&inc, v, |c| cp.creases[c].is_active_hinge());
        let ridges = incident_count(&inc, v, |c| cp.creases[c].class == CreaseClass::Ridge);
        if hinges != 1 || ridges == 0 {
            out.push(Violation::new(
                Check::FloorPointMeeting,
                Location::Vertex { index: v },
                Some(cp.vertices[v]),
                format!(
                    "{} floors meet with {hinges} active hinge(s) and {ridges} ridge(s); need exactly 1 hinge and at least 1 ridge",
                    fs.len()
                ),
            ));
        }
    }
    out
}

/// Criterion 5: floors are convex.
pub fn check_floor_convexity(cp: &CreasePattern) -> Vec<Violation> {
    let mut out = Vec::new();
    for (fi, f) in cp.floors.iter().enumerate() {
        let bad = match convexity(&f.polygon, &cp.tolerance) {
            Ok(c) => !c.convex,
            Err(GeomError::SelfIntersecting) => true,
            Err(_) => false,
        };
        if bad {
            out.push(Violation::new(
                Check::ConcaveFloor,
                Location::Floor { index: fi },
                Some(crate::geom::centroid(&f.polygon)),
                format!("floor {fi} is not convex"),
            ));
        }
    }
    out
}

/// Floor corners with an obtuse angle and no active hinge.
pub fn obtuse_floor_warnings(cp: &CreasePattern) -> Vec<String> {
    let eps = cp.eps();
    let inc = cp.incidence();
    let mut out = Vec::new();
    for (fi, f) in cp.floors.iter().enumerate() {
        let corners = f.corner_positions(eps);
        let k = corners.len();
        for i in 0..k {
            let p = f.polygon[corners[(i + k - 1) % k]];
            let q = f.polygon[corners[i]];
            let r = f.polygon[corners[(i + 1) % k]];
            let a = interior_angle(p, q, r);
            let v = f.vertices[corners[i]];
            if a > FRAC_PI_2 + 1e-9
                && a < std::f64::consts::PI
                && incident_count(&inc, v, |c| cp.creases[c].is_active_hinge()) == 0
            {
                out.push(format!(
                    "floor {fi} has an obtuse corner ({:.3} deg) at vertex {v} with no hinge",
                    a.to_degrees()
                ));
            }
        }
    }
    out
}

/// Criterion 6: each n-gon placement keeps at least n - 2 active hinges.
pub fn check_activation_counts(cp: &CreasePattern) -> Vec<Violation> {
    let mut out = Vec::new();
    for (pi, p) in cp.placements.iter().enumerate() {
        let n = p.molecule.n();
        let count = p.molecule.hinges().len();
        let active = p.activation.active.iter().filter(|&&h| h < count).count();
        if active < min_active(n) {
            out.push(Violation::new(
                Check::TooFewHinges,
                Location::Placement { index: pi },
                Some(p.isometry.apply(p.molecule.ridge_nodes()[0])),
                format!("{active} of {n} hinges active; at least {} required", min_active(n)),
            ));
        }
        if let Some(&bad) = p.activation.active.iter().find(|&&h| h >= count) {
            out.push(Violation::new(
                Check::TooFewHinges,
                Location::Placement { index: pi },
                None,
                format!("activation names hinge {bad} but the molecule has {count}"),
            ));
        }
    }
    out
}

/// Hinges must be perpendicular to their edge and end on it.
pub fn check_hinge_perpendicularity(cp: &CreasePattern) -> Vec<Violation> {
    let mut out = Vec::new();
    for (pi, p) in cp.placements.iter().enumerate() {
        let m = &p.molecule;
        let d = m.outline().bbox().diagonal();
        let eps = cp.tolerance.eps_for(d) * 10.0;
        for (hi, h) in m.hinges().iter().enumerate() {
            let e = m.outline().edge(h.edge);
            let node = m.ridge_nodes().get(h.node).copied();
            let ok = node.is_some_and(|node| {
                let dir = e.direction();
                (h.foot - node).dot(dir).abs() <= eps * dir.norm().max(1.0)
                    && e.distance_to(h.foot) <= eps
            });
            if !ok {
                out.push(Violation::new(
                    Check::HingePerpendicular,
                    Location::Hinge {
                        placement: pi,
                        hinge: hi,
                    },
                    Some(p.foot(hi)),
                    "hinge is not perpendicular to its edge".into(),
                ));
            }
        }
    }
    out
}

/// Ridges leaving an outline corner run along that corner's bisector.
pub fn check_ridge_bisectors(cp: &CreasePattern) -> Vec<Violation> {
    let mut out = Vec::new();
    for (pi, p) in cp.placements.iter().enumerate() {
        let m = &p.molecule;
        let v = m.outline().vertices();
        let n = v.len();
        let eps = cp.tolerance.eps_for(m.outline().bbox().diagonal()) * 10.0;
        for s in m.ridge_edges() {
            for (end, other) in [(s.a, s.b), (s.b, s.a)] {
                let Some(i) = v.iter().position(|&q| q.dist(end) <= eps) else {
                    continue;
                };
                let Ok(ray) = crate::geom::angle_bisector_ray(v[(i + n - 1) % n], v[i], v[(i + 1) % n])
                else {
                    continue;
                };
                let d = other - end;
                if ray.dir.cross(d).abs() > eps * d.norm().max(1.0) || ray.dir.dot(d) <= 0.0 {
                    out.push(Violation::new(
                        Check::RidgeBisector,
                        Location::Placement { index: pi },
                        Some(p.isometry.apply(end)),
                        format!("ridge from corner {i} leaves the angle bisector"),
                    ));
                }
            }
        }
    }
    out
}

/// `(placement, hinge, neighbour, foot)` for every active hinge whose foot
/// lies strictly inside an edge of a neighbour that has no active hinge there.
fn hinge_mismatches(cp: &CreasePattern) -> Vec<(usize, usize, usize, Point2)> {
    let eps = cp.eps();
    let bb = cp.bbox();
    let mut grid = Grid::for_extent(&bb, cp.placements.len());
    let boxes: Vec<Bbox> = cp.placements.iter().map(|p| p.bbox()).collect();
    for (i, b) in boxes.iter().enumerate() {
        grid.insert_box(i, b);
    }
    let mut out = Vec::new();
    for (pi, p) in cp.placements.iter().enumerate() {
        let hinges = p.molecule.hinges();
        for &hi in &p.activation.active {
            if hi >= hinges.len() {
                continue;
            }
            let f = p.foot(hi);
            let mut problem = None;
            for qi in grid.query_point(f, eps) {
                if qi == pi || !boxes[qi].contains(f, eps) {
                    continue;
                }
                let q = &cp.placements[qi];
                for k in 0..q.molecule.n() {
                    let e = q.edge(k);
                    let len = e.length();
                    let t = e.project_param(f);
                    if e.distance_to(f) > eps || t * len <= eps || (1.0 - t) * len <= eps {
                        continue;
                    }
                    let matched = q
                        .molecule
                        .hinges_on_edge(k)
                        .any(|h| q.activation.is_active(h) && q.foot(h).dist(f) <= eps);
                    if !matched {
                        problem = Some(qi);
                    }
                }
            }
            if let Some(qi) = problem {
                out.push((pi, hi, qi, f));
            }
        }
    }
    out
}

/// Active hinges failing the matching condition, as `(placement, hinge)`.
pub fn unmatched_hinges(cp: &CreasePattern) -> BTreeSet<(usize, usize)> {
    hinge_mismatches(cp)
        .into_iter()
        .map(|(p, h, _, _)| (p, h))
        .collect()
}

/// An active hinge foot strictly inside an edge shared with a neighbour must
/// meet an active hinge foot of that neighbour.
pub fn check_hinge_matching(cp: &CreasePattern) -> Vec<Violation> {
    let eps = cp.eps();
    let mut vgrid = Grid::for_extent(&cp.bbox(), cp.vertices.len());
    for (i, v) in cp.vertices.iter().enumerate() {
        vgrid.insert_point(i, *v);
    }
    hinge_mismatches(cp)
        .into_iter()
        .map(|(pi, hi, qi, f)| {
            let loc = vgrid
                .query_point(f, eps)
                .into_iter()
                .find(|&v| cp.vertices[v].dist(f) <= eps)
                .map(|index| Location::Vertex { index })
                .unwrap_or(Location::Hinge {
                    placement: pi,
                    hinge: hi,
                });
            Violation::new(
                Check::HingeMatching,
                loc,
                Some(f),
                format!("active hinge {hi} of placement {pi} has no active partner on placement {qi}"),
            )
        })
        .collect()
}

/// Placements whose interiors overlap.
pub fn check_overlaps(cp: &CreasePattern) -> Vec<Violation> {
    let bb = cp.bbox();
    let mut grid = Grid::for_extent(&bb, cp.placements.len());
    let outlines: Vec<Vec<Point2>> = cp.placements.iter().map(|p| p.outline()).collect();
    let boxes: Vec<Bbox> = outlines.iter().map(|o| Bbox::of(o.iter().copied())).collect();
    for (i, b) in boxes.iter().enumerate() {
        grid.insert_box(i, b);
    }
    let mut out = Vec::new();
    for i in 0..outlines.len() {
        let d = boxes[i].diagonal();
        let area_eps = cp.tolerance.eps_for(d) * d * 10.0;
        for j in grid.query(&boxes[i], 0.0) {
            if j <= i || !boxes[i].overlaps(&boxes[j], 0.0) {
                continue;
            }
            if crate::geom::convex_intersection_area(&outlines[i], &outlines[j]) > area_eps {
                out.push(Violation::new(
                    Check::Overlap,
                    Location::Placement { index: j },
                    None,
                    format!("placement {j} overlaps placement {i}"),
                ));
            }
        }
    }
    out
}

fn finish_report(mut violations: Vec<Violation>, warnings: Vec<String>) -> ValidationReport {
    violations.sort_by(|a, b| {
        a.criterion
            .cmp(&b.criterion)
            .then_with(|| a.location.cmp(&b.location))
            .then_with(|| a.message.cmp(&b.message))
    });
    ValidationReport {
        pass: violations.is_empty(),
        violations,
        warnings,
    }
}

/// Runs every check on a pattern that is already welded with floors
/// inferred.
pub fn check_all(cp: &CreasePattern) -> ValidationReport {
    let mut warnings = Vec::new();
    if cp.placements.is_empty() {
        warnings.push("no molecules".to_string());
    }
    let mut v = Vec::new();
    v.extend(check_hinges_at_floor_vertices(cp));
    v.extend(check_ridges_at_floor_vertices(cp));
    v.extend(check_no_shared_floor_borders(cp));
    v.extend(check_floor_point_meetings(cp));
    v.extend(check_floor_convexity(cp));
    v.extend(check_activation_counts(cp));
    v.extend(check_hinge_perpendicularity(cp));
    v.extend(check_ridge_bisectors(cp));
    v.extend(check_hinge_matching(cp));
    v.extend(check_overlaps(cp));
    warnings.extend(obtuse_floor_warnings(cp));
    finish_report(v, warnings)
}

/// Welds, infers floors and runs every check. Never fails: problems that
/// stop the pipeline are reported as violations.
pub fn validate(cp: &CreasePattern) -> ValidationReport {
    validate_full(cp).1
}

/// [`validate`] that also hands back the welded pattern with floors, when
/// welding succeeded.
pub fn validate_full(cp: &CreasePattern) -> (Option<CreasePattern>, ValidationReport) {
    let welded = match cp.weld() {
        Ok(w) => w,
        Err(e) => {
            let mut v = vec![Violation::new(Check::Weld, Location::Pattern, None, e.to_string())];
            v.extend(check_activation_counts(cp));
            v.extend(check_overlaps(cp));
            return (None, finish_report(v, Vec::new()));
        }
    };
    let crossings = welded.crossings();
    if !crossings.is_empty() {
        let mut v: Vec<Violation> = crossings
            .into_iter()
            .map(|(a, b)| {
                Violation::new(
                    Check::Planarity,
                    Location::Crease { index: a },
                    Some(welded.segment(a).midpoint()),
                    format!("crease {a} crosses crease {b}"),
                )
            })
            .collect();
        v.extend(check_activation_counts(&welded));
        v.extend(check_hinge_perpendicularity(&welded));
        v.extend(check_ridge_bisectors(&welded));
        v.extend(check_hinge_matching(&welded));
        v.extend(check_overlaps(&welded));
        return (Some(welded), finish_report(v, Vec::new()));
    }
    let finished = welded
        .infer_floors()
        .expect("planar pattern has faces");
    let report = check_all(&finished);
    (Some(finished), report)
}
