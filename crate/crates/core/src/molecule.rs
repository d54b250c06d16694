//! Generalized waterbomb molecules on convex polygons.
//!
//! The ridge skeleton is the bisector inset of the outline: every vertex walks
//! inward along its angle bisector at the speed that keeps all edges parallel
//! to the originals, and whenever one or more wavefront edges shrink to
//! nothing their endpoints merge into a ridge node. Hinge creases drop
//! perpendicularly from ridge nodes onto the outline edges they are tangent to.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    angle_bisector_ray, convexity, incenter_inradius, perpendicular_foot, signed_area2, Bbox,
    GeomError, Isometry, Point2, Segment, Tolerance,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MoleculeError {
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("molecule is not a triangle (n = {0})")]
    NotATriangle(usize),
    #[error("hinge index {index} out of range (molecule has {count} hinges)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("only {active} of {n} hinges active; at least {min} required")]
    TooFewHinges { active: usize, n: usize, min: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Strictly convex polygon, stored counter-clockwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point2>", into = "Vec<Point2>")]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl TryFrom<Vec<Point2>> for ConvexPolygon {
    type Error = MoleculeError;
    fn try_from(v: Vec<Point2>) -> Result<Self, Self::Error> {
        ConvexPolygon::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Point2> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

impl ConvexPolygon {
    pub fn new(mut vertices: Vec<Point2>) -> Result<Self, MoleculeError> {
        let tol = Tolerance::default();
        let c = convexity(&vertices, &tol)?;
        let area2 = signed_area2(&vertices);
        let diag = Bbox::of(vertices.iter().copied()).diagonal();
        if area2.abs() <= tol.eps_for(diag) * diag {
            return Err(MoleculeError::DegeneratePolygon("zero area".into()));
        }
        if !c.convex {
            return Err(MoleculeError::DegeneratePolygon("not convex".into()));
        }
        if c.has_collinear {
            return Err(MoleculeError::DegeneratePolygon(
                "collinear consecutive vertices".into(),
            ));
        }
        let n = vertices.len();
        for i in 0..n {
            if vertices[i].dist(vertices[(i + 1) % n]) <= tol.eps_for(diag) {
                return Err(MoleculeError::DegeneratePolygon("repeated vertex".into()));
            }
        }
        if area2 < 0.0 {
            vertices.reverse();
        }
        Ok(Self { vertices })
    }

    /// Triangle from three side lengths, placed with the longest side on the
    /// positive x-axis starting at the origin and the apex above it. The other
    /// two sides keep the cyclic order in which they were given.
    pub fn triangle_from_sides(sides: [f64; 3]) -> Result<Self, MoleculeError> {
        if sides.iter().any(|s| !s.is_finite() || *s <= 0.0) {
            return Err(MoleculeError::DegeneratePolygon(
                "side lengths must be positive".into(),
            ));
        }
        let k = (0..3)
            .max_by(|&i, &j| sides[i].total_cmp(&sides[j]).then(j.cmp(&i)))
            .unwrap();
        let base = sides[k];
        let right = sides[(k + 1) % 3];
        let left = sides[(k + 2) % 3];
        if left + right <= base * (1.0 + 1e-12) {
            return Err(MoleculeError::DegeneratePolygon(format!(
                "triangle inequality fails for {:?}",
                sides
            )));
        }
        let x = (base * base + left * left - right * right) / (2.0 * base);
        let y = (left * left - x * x).max(0.0).sqrt();
        Self::new(vec![
            Point2::ORIGIN,
            Point2::new(base, 0.0),
            Point2::new(x, y),
        ])
    }

    pub fn equilateral(side: f64) -> Result<Self, MoleculeError> {
        Self::triangle_from_sides([side; 3])
    }

    /// Regular polygon with `n` sides of length `side`, first edge on the
    /// x-axis starting at the origin.
    pub fn regular(n: usize, side: f64) -> Result<Self, MoleculeError> {
        if n < 3 || !(side > 0.0) {
            return Err(MoleculeError::DegeneratePolygon(format!(
                "regular polygon needs n >= 3 and positive side (n = {n}, side = {side})"
            )));
        }
        let turn = 2.0 * std::f64::consts::PI / n as f64;
        let mut p = Point2::ORIGIN;
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            v.push(p);
            p = p + Point2::new(side, 0.0).rotated(turn * i as f64);
        }
        Self::new(v)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        let n = self.vertices.len();
        Segment::new(self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(|i| self.edge(i))
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.edges().map(|e| e.length()).collect()
    }

    pub fn area(&self) -> f64 {
        signed_area2(&self.vertices) * 0.5
    }

    pub fn bbox(&self) -> Bbox {
        Bbox::of(self.vertices.iter().copied())
    }

    /// Vertices mapped by `iso`, re-oriented CCW when `iso` reflects.
    pub fn transformed(&self, iso: &Isometry) -> Vec<Point2> {
        let mut v: Vec<Point2> = self.vertices.iter().map(|&p| iso.apply(p)).collect();
        if iso.reflect {
            v.reverse();
        }
        v
    }

    /// True when all sides agree within `rel` relative tolerance.
    pub fn is_equilateral(&self, rel: f64) -> bool {
        let s = self.side_lengths();
        let m = s.iter().cloned().fold(0.0, f64::max);
        s.iter().all(|l| (l - m).abs() <= rel * m)
    }
}

/// One hinge crease: from a ridge node perpendicular to an outline edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hinge {
    /// Index into [`Molecule::ridge_nodes`].
    pub node: usize,
    pub foot: Point2,
    /// Outline edge the foot lies on.
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Molecule {
    outline: ConvexPolygon,
    ridge_nodes: Vec<Point2>,
    node_heights: Vec<f64>,
    ridge_edges: Vec<Segment>,
    hinges: Vec<Hinge>,
    tangent_lengths: Vec<f64>,
}

/// A vertex of the shrinking wavefront.
#[derive(Debug, Clone, Copy)]
struct Wave {
    /// Position at time `t0`.
    pos: Point2,
    t0: f64,
    vel: Point2,
    /// Skeleton point this vertex started from.
    origin: Point2,
    /// Index of the original edge before and after this vertex.
    left: usize,
    right: usize,
}

impl Wave {
    fn at(&self, t: f64) -> Point2 {
        self.pos + self.vel * (t - self.t0)
    }
}

/// Velocity `w` with `w · n_a = w · n_b = 1` for inward unit normals.
fn wave_velocity(na: Point2, nb: Point2) -> Option<Point2> {
    let det = na.x * nb.y - na.y * nb.x;
    if det.abs() < 1e-14 {
        return None;
    }
    Some(Point2::new((nb.y - na.y) / det, (na.x - nb.x) / det))
}

impl Molecule {
    pub fn outline(&self) -> &ConvexPolygon {
        &self.outline
    }

    pub fn n(&self) -> usize {
        self.outline.len()
    }

    pub fn ridge_nodes(&self) -> &[Point2] {
        &self.ridge_nodes
    }

    /// Inset height of each ridge node (its distance to the edges it touches).
    pub fn node_heights(&self) -> &[f64] {
        &self.node_heights
    }

    pub fn ridge_edges(&self) -> &[Segment] {
        &self.ridge_edges
    }

    pub fn hinges(&self) -> &[Hinge] {
        &self.hinges
    }

    pub fn hinge_segment(&self, i: usize) -> Segment {
        let h = &self.hinges[i];
        Segment::new(self.ridge_nodes[h.node], h.foot)
    }

    /// Per-vertex tangent lengths; empty unless the molecule is a triangle.
    pub fn tangent_lengths_raw(&self) -> &[f64] {
        &self.tangent_lengths
    }

    /// Hinge indices whose foot lies on outline edge `edge`.
    pub fn hinges_on_edge(&self, edge: usize) -> impl Iterator<Item = usize> + '_ {
        self.hinges
            .iter()
            .enumerate()
            .filter(move |(_, h)| h.edge == edge)
            .map(|(i, _)| i)
    }
}

/// Builds the universal-molecule crease set for a convex polygon.
pub fn build_universal_molecule(poly: &ConvexPolygon) -> Result<Molecule, MoleculeError> {
    let verts = poly.vertices();
    let n = verts.len();
    let tol = Tolerance::default();
    let diag = poly.bbox().diagonal();
    let eps = tol.eps_for(diag);
    // relative time tolerance for simultaneous events
    let teps = 1e-9 * diag.max(1e-12);

    let normals: Vec<Point2> = (0..n)
        .map(|i| (verts[(i + 1) % n] - verts[i]).normalized().perp())
        .collect();

    let mut wave = Vec::with_capacity(n);
    for i in 0..n {
        let prev = (i + n - 1) % n;
        // validates that the corner is not degenerate
        angle_bisector_ray(verts[prev], verts[i], verts[(i + 1) % n])?;
        let vel = wave_velocity(normals[prev], normals[i]).ok_or_else(|| {
            MoleculeError::DegeneratePolygon(format!("parallel edges at vertex {i}"))
        })?;
        wave.push(Wave {
            pos: verts[i],
            t0: 0.0,
            vel,
            origin: verts[i],
            left: prev,
            right: i,
        });
    }

    let mut nodes: Vec<(Point2, f64)> = Vec::new();
    let mut ridges: Vec<Segment> = Vec::new();
    let mut now = 0.0;

    let add_node = |nodes: &mut Vec<(Point2, f64)>, p: Point2, t: f64| -> Point2 {
        if let Some(&(q, _)) = nodes.iter().find(|(q, _)| q.dist(p) <= eps * 10.0) {
            q
        } else {
            nodes.push((p, t));
            p
        }
    };

    loop {
        let m = wave.len();
        if m <= 2 {
            if m == 2 && wave[0].origin.dist(wave[1].origin) > eps {
                ridges.push(Segment::new(wave[0].origin, wave[1].origin));
            }
            break;
        }
        // collapse time of every wavefront edge (between wave[j] and wave[j+1])
        let mut times = vec![f64::INFINITY; m];
        for j in 0..m {
            let a = &wave[j];
            let b = &wave[(j + 1) % m];
            let pa = a.at(now);
            let pb = b.at(now);
            let d = pb - pa;
            let len = d.norm();
            if len <= eps {
                times[j] = now;
                continue;
            }
            let dir = d * (1.0 / len);
            let rate = (a.vel - b.vel).dot(dir);
            if rate > 1e-14 {
                times[j] = now + len / rate;
            }
        }
        let tmin = times.iter().cloned().fold(f64::INFINITY, f64::min);
        if !tmin.is_finite() {
            return Err(MoleculeError::DegeneratePolygon(
                "wavefront does not collapse".into(),
            ));
        }
        let collapsing: Vec<bool> = times.iter().map(|&t| t <= tmin + teps).collect();
        if collapsing.iter().all(|&c| c) {
            // everything meets in a single point
            let c = wave
                .iter()
                .fold(Point2::ORIGIN, |acc, w| acc + w.at(tmin))
                * (1.0 / m as f64);
            let c = add_node(&mut nodes, c, tmin);
            for w in &wave {
                ridges.push(Segment::new(w.origin, c));
            }
            break;
        }
        // chains of consecutive collapsing edges; start scanning after a
        // surviving edge so chains never wrap
        let start = (0..m).find(|&j| !collapsing[j]).unwrap();
        let mut next_wave: Vec<Wave> = Vec::new();
        let mut flat = false;
        let mut j = (start + 1) % m;
        let mut visited = 0;
        while visited < m {
            if !collapsing[j] {
                let w = wave[j];
                next_wave.push(w);
                j = (j + 1) % m;
                visited += 1;
                continue;
            }
            // chain j..=k of vertices joined by collapsing edges j, j+1, ...
            let mut chain = vec![j];
            let mut k = j;
            while collapsing[k] {
                k = (k + 1) % m;
                chain.push(k);
                visited += 1;
            }
            visited += 1;
            let p = chain
                .iter()
                .fold(Point2::ORIGIN, |acc, &i| acc + wave[i].at(tmin))
                * (1.0 / chain.len() as f64);
            let p = add_node(&mut nodes, p, tmin);
            for &i in &chain {
                if wave[i].origin.dist(p) > eps {
                    ridges.push(Segment::new(wave[i].origin, p));
                }
            }
            let left = wave[chain[0]].left;
            let right = wave[*chain.last().unwrap()].right;
            let vel = wave_velocity(normals[left], normals[right]);
            next_wave.push(Wave {
                pos: p,
                t0: tmin,
                vel: vel.unwrap_or(Point2::ORIGIN),
                origin: p,
                left,
                right,
            });
            if vel.is_none() {
                flat = true;
            }
            j = (k + 1) % m;
        }
        if flat || next_wave.len() <= 2 {
            // two anti-parallel edges met: what is left of the wavefront is a
            // segment, so every remaining vertex becomes a node on it
            let mut pts: Vec<Point2> = Vec::new();
            for w in &next_wave {
                let p = if w.t0 == tmin { w.origin } else { w.at(tmin) };
                let p = add_node(&mut nodes, p, tmin);
                if w.origin.dist(p) > eps {
                    ridges.push(Segment::new(w.origin, p));
                }
                if !pts.iter().any(|q| q.dist(p) <= eps) {
                    pts.push(p);
                }
            }
            if pts.len() >= 2 {
                let dir = pts[1] - pts[0];
                pts.sort_by(|a, b| a.dot(dir).total_cmp(&b.dot(dir)));
                for w in pts.windows(2) {
                    ridges.push(Segment::new(w[0], w[1]));
                }
            }
            break;
        }
        wave = next_wave;
        now = tmin;
    }

    // hinge creases
    let mut hinges = Vec::new();
    for (ni, &(p, h)) in nodes.iter().enumerate() {
        for e in 0..n {
            let seg = poly.edge(e);
            let dist = seg.line_distance(p);
            if (dist - h).abs() > eps * 10.0 + 1e-9 * h {
                continue;
            }
            let Ok(foot) = perpendicular_foot(p, &seg) else {
                continue;
            };
            let t = seg.project_param(foot);
            let et = eps / seg.length();
            if t <= et || t >= 1.0 - et {
                continue;
            }
            hinges.push((e, t, Hinge { node: ni, foot, edge: e }));
        }
    }
    hinges.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let hinges: Vec<Hinge> = hinges.into_iter().map(|(_, _, h)| h).collect();

    let tangent_lengths = if n == 3 {
        let s: f64 = poly.side_lengths().iter().sum::<f64>() * 0.5;
        // vertex i is opposite edge i+1
        (0..3).map(|i| s - poly.edge(i + 1).length()).collect()
    } else {
        Vec::new()
    };

    if n == 3 {
        // the skeleton of a triangle is its incenter; cross-check
        let v = poly.vertices();
        let (c, _) = incenter_inradius([v[0], v[1], v[2]])?;
        debug_assert!(nodes.len() == 1 && nodes[0].0.dist(c) < 1e-6 * diag.max(1.0));
    }

    Ok(Molecule {
        outline: poly.clone(),
        ridge_nodes: nodes.iter().map(|n| n.0).collect(),
        node_heights: nodes.iter().map(|n| n.1).collect(),
        ridge_edges: ridges,
        hinges,
        tangent_lengths,
    })
}

/// Distance from each triangle vertex to the hinge feet on its two edges.
pub fn tangent_lengths(m: &Molecule) -> Result<Vec<f64>, MoleculeError> {
    if m.n() != 3 {
        return Err(MoleculeError::NotATriangle(m.n()));
    }
    let v = m.outline().vertices();
    // measured directly from the feet: vertex i touches edges i and i-1
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let foot = m
            .hinges_on_edge(i)
            .next()
            .map(|h| m.hinges()[h].foot)
            .ok_or(MoleculeError::NotATriangle(3))?;
        out.push(v[i].dist(foot));
    }
    Ok(out)
}

/// Chosen set of folded hinges plus the crease-reversal flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Activation {
    pub active: BTreeSet<usize>,
    #[serde(default)]
    pub reversed: bool,
}

impl Activation {
    /// All hinges active.
    pub fn all(m: &Molecule) -> Self {
        Self {
            active: (0..m.hinges().len()).collect(),
            reversed: false,
        }
    }

    /// Bypasses the activation-count rule; used to build deliberately invalid
    /// patterns and to load foreign documents.
    pub fn unchecked(active: impl IntoIterator<Item = usize>, reversed: bool) -> Self {
        Self {
            active: active.into_iter().collect(),
            reversed,
        }
    }

    pub fn is_active(&self, hinge: usize) -> bool {
        self.active.contains(&hinge)
    }

    pub fn len(&self) -> usize {
        self.active.len()
    }

    pub fn is_empty(&self) -> bool {
        self.active.is_empty()
    }
}

/// Smallest legal number of active hinges for an `n`-gon.
pub fn min_active(n: usize) -> usize {
    n.saturating_sub(2)
}

pub fn activate(
    m: &Molecule,
    active: impl IntoIterator<Item = usize>,
    reversed: bool,
) -> Result<Activation, MoleculeError> {
    let active: BTreeSet<usize> = active.into_iter().collect();
    let count = m.hinges().len();
    if let Some(&bad) = active.iter().find(|&&i| i >= count) {
        return Err(MoleculeError::IndexOutOfRange { index: bad, count });
    }
    let min = min_active(m.n());
    if active.len() < min {
        return Err(MoleculeError::TooFewHinges {
            active: active.len(),
            n: m.n(),
            min,
        });
    }
    Ok(Activation { active, reversed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri345() -> ConvexPolygon {
        ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 3.0),
        ])
        .unwrap()
    }

    fn near(a: Point2, b: Point2) -> bool {
        a.dist(b) < 1e-9
    }

    #[test]
    fn triangle_molecule() {
        let m = build_universal_molecule(&tri345()).unwrap();
        assert_eq!(m.ridge_nodes().len(), 1);
        assert!(near(m.ridge_nodes()[0], Point2::new(1.0, 1.0)));
        assert_eq!(m.ridge_edges().len(), 3);
        let feet: Vec<Point2> = m.hinges().iter().map(|h| h.foot).collect();
        assert_eq!(feet.len(), 3);
        assert!(near(feet[0], Point2::new(1.0, 0.0)));
        assert!(near(feet[1], Point2::new(1.6, 1.8)));
        assert!(near(feet[2], Point2::new(0.0, 1.0)));
        let t = tangent_lengths(&m).unwrap();
        for (got, want) in t.iter().zip([1.0, 3.0, 2.0]) {
            assert!((got - want).abs() < 1e-9);
        }
        assert_eq!(m.tangent_lengths_raw().len(), 3);
        for (a, b) in t.iter().zip(m.tangent_lengths_raw()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn equilateral_and_isoceles_tangents() {
        let m = build_universal_molecule(&ConvexPolygon::equilateral(2.0).unwrap()).unwrap();
        for t in tangent_lengths(&m).unwrap() {
            assert!((t - 1.0).abs() < 1e-12);
        }
        // a = b: vertices 0 and 1 see equal tangent lengths when the apex is
        // over the base midpoint
        let iso = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 5.0),
        ])
        .unwrap();
        let t = tangent_lengths(&build_universal_molecule(&iso).unwrap()).unwrap();
        assert!((t[0] - t[1]).abs() < 1e-12);
    }

    #[test]
    fn square_is_waterbomb_base() {
        let sq = ConvexPolygon::regular(4, 1.0).unwrap();
        let m = build_universal_molecule(&sq).unwrap();
        assert_eq!(m.ridge_nodes().len(), 1);
        assert!(near(m.ridge_nodes()[0], Point2::new(0.5, 0.5)));
        assert_eq!(m.ridge_edges().len(), 4);
        assert_eq!(m.hinges().len(), 4);
        for (i, h) in m.hinges().iter().enumerate() {
            assert_eq!(h.edge, i);
            assert!(near(h.foot, sq.edge(i).midpoint()));
        }
    }

    #[test]
    fn regular_hexagon() {
        let hex = ConvexPolygon::regular(6, 1.0).unwrap();
        let m = build_universal_molecule(&hex).unwrap();
        assert_eq!(m.ridge_nodes().len(), 1);
        assert_eq!(m.ridge_edges().len(), 6);
        assert_eq!(m.hinges().len(), 6);
        for (i, h) in m.hinges().iter().enumerate() {
            let e = hex.edge(i);
            let hv = h.foot - m.ridge_nodes()[0];
            assert!(hv.dot(e.b - e.a).abs() < 1e-9);
            assert!(near(h.foot, e.midpoint()));
        }
    }

    #[test]
    fn rectangle_skeleton_is_a_line() {
        let r = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap();
        let m = build_universal_molecule(&r).unwrap();
        assert_eq!(m.ridge_nodes().len(), 2);
        // 4 corner ridges plus the spine
        assert_eq!(m.ridge_edges().len(), 5);
        // each node is tangent to three edges
        assert_eq!(m.hinges().len(), 6);
    }

    #[test]
    fn irregular_pentagon_skeleton() {
        let p = ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(5.0, 2.0),
            Point2::new(2.0, 4.0),
            Point2::new(-1.0, 2.0),
        ])
        .unwrap();
        let m = build_universal_molecule(&p).unwrap();
        // straight skeleton of a convex n-gon has n - 2 nodes generically
        assert_eq!(m.ridge_nodes().len(), 3);
        assert_eq!(m.ridge_edges().len(), 2 * 5 - 3);
        for h in m.hinges() {
            let e = p.edge(h.edge);
            let hv = h.foot - m.ridge_nodes()[h.node];
            assert!(hv.dot(e.b - e.a).abs() < 1e-9);
        }
    }

    #[test]
    fn triangle_from_sides_is_canonical() {
        let t = ConvexPolygon::triangle_from_sides([3.0, 4.0, 5.0]).unwrap();
        let v = t.vertices();
        assert!(near(v[0], Point2::ORIGIN));
        assert!(near(v[1], Point2::new(5.0, 0.0)));
        assert!(near(v[2], Point2::new(3.2, 2.4)));
        assert!(ConvexPolygon::triangle_from_sides([1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn activation_rules() {
        let m = build_universal_molecule(&tri345()).unwrap();
        assert!(activate(&m, [0, 1, 2], false).is_ok());
        assert!(activate(&m, [1], false).is_ok());
        assert!(matches!(
            activate(&m, [], false),
            Err(MoleculeError::TooFewHinges { .. })
        ));
        assert!(matches!(
            activate(&m, [3], false),
            Err(MoleculeError::IndexOutOfRange { .. })
        ));
        let sq = build_universal_molecule(&ConvexPolygon::regular(4, 1.0).unwrap()).unwrap();
        assert!(activate(&sq, [0, 2], false).is_ok());
        assert!(activate(&sq, [0], false).is_err());
    }

    #[test]
    fn rejects_bad_polygons() {
        assert!(ConvexPolygon::new(vec![Point2::ORIGIN, Point2::new(1.0, 0.0)]).is_err());
        assert!(ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 0.5),
            Point2::new(0.0, 1.0),
        ])
        .is_err());
    }
}
