//! Crease patterns: a planar straight-line graph of classified creases plus
//! the molecule placements and floor faces it was built from.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{
    convex_intersection_area, segments_cross, signed_area2, Bbox, Isometry, Point2, Segment,
    Tolerance,
};
use crate::molecule::{Activation, Molecule, MoleculeError};
use crate::spatial::Grid;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CpError {
    #[error("placement {new} overlaps placement {existing}")]
    Overlap { new: usize, existing: usize },
    #[error("coincident creases at {at} disagree on class ({a:?} vs {b:?})")]
    InconsistentClass {
        at: Point2,
        a: CreaseClass,
        b: CreaseClass,
    },
    #[error("creases {a} and {b} cross away from a shared vertex")]
    NonPlanar { a: usize, b: usize },
    #[error(transparent)]
    Molecule(#[from] MoleculeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CreaseClass {
    Axial,
    Ridge,
    Hinge,
    Border,
    /// Loaded from a foreign file with no class information.
    Unknown,
}

impl CreaseClass {
    pub fn as_str(self) -> &'static str {
        match self {
            CreaseClass::Axial => "axial",
            CreaseClass::Ridge => "ridge",
            CreaseClass::Hinge => "hinge",
            CreaseClass::Border => "border",
            CreaseClass::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FoldAssignment {
    #[serde(rename = "M")]
    Mountain,
    #[serde(rename = "V")]
    Valley,
    #[serde(rename = "F")]
    Flat,
    #[serde(rename = "B")]
    Boundary,
}

impl FoldAssignment {
    pub fn letter(self) -> &'static str {
        match self {
            FoldAssignment::Mountain => "M",
            FoldAssignment::Valley => "V",
            FoldAssignment::Flat => "F",
            FoldAssignment::Boundary => "B",
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s {
            "M" | "m" => Some(FoldAssignment::Mountain),
            "V" | "v" => Some(FoldAssignment::Valley),
            "F" | "f" => Some(FoldAssignment::Flat),
            "B" | "b" => Some(FoldAssignment::Boundary),
            _ => None,
        }
    }

    fn flipped(self, reversed: bool) -> Self {
        match (self, reversed) {
            (FoldAssignment::Mountain, true) => FoldAssignment::Valley,
            (FoldAssignment::Valley, true) => FoldAssignment::Mountain,
            (a, _) => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crease {
    pub endpoints: (usize, usize),
    pub class: CreaseClass,
    pub assignment: FoldAssignment,
    /// Placement the crease belongs to (the lowest one for shared axial creases).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub molecule_id: Option<usize>,
    /// Hinge index within the placed molecule, for hinge creases.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hinge: Option<usize>,
}

impl Crease {
    pub fn other(&self, v: usize) -> usize {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }

    pub fn is_active_hinge(&self) -> bool {
        self.class == CreaseClass::Hinge && self.assignment != FoldAssignment::Flat
    }
}

/// An uncovered interior face of the crease graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Floor {
    /// Boundary vertex ids, counter-clockwise, including collinear ones.
    pub vertices: Vec<usize>,
    pub polygon: Vec<Point2>,
    pub border_creases: Vec<usize>,
}

impl Floor {
    pub fn area(&self) -> f64 {
        signed_area2(&self.polygon) * 0.5
    }

    /// Indices into `vertices` of the true corners (collinear ones dropped).
    pub fn corner_positions(&self, eps: f64) -> Vec<usize> {
        corner_positions(&self.polygon, eps)
    }

    pub fn corners(&self, eps: f64) -> Vec<Point2> {
        self.corner_positions(eps)
            .into_iter()
            .map(|i| self.polygon[i])
            .collect()
    }
}

pub(crate) fn corner_positions(poly: &[Point2], eps: f64) -> Vec<usize> {
    let n = poly.len();
    (0..n)
        .filter(|&i| {
            let p = poly[(i + n - 1) % n];
            let q = poly[i];
            let r = poly[(i + 1) % n];
            let d = r - p;
            // distance of q from the chord p-r
            let l = d.norm();
            l <= eps || (d.cross(q - p) / l).abs() > eps || (q - p).dot(r - q) < 0.0
        })
        .collect()
}

/// A molecule placed in the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub molecule: Arc<Molecule>,
    pub activation: Activation,
    pub isometry: Isometry,
}

impl Placement {
    /// Outline in world coordinates, counter-clockwise.
    pub fn outline(&self) -> Vec<Point2> {
        self.molecule.outline().transformed(&self.isometry)
    }

    /// Edge `i` of the local outline mapped to world coordinates.
    pub fn edge(&self, i: usize) -> Segment {
        let e = self.molecule.outline().edge(i);
        Segment::new(self.isometry.apply(e.a), self.isometry.apply(e.b))
    }

    pub fn foot(&self, hinge: usize) -> Point2 {
        self.isometry.apply(self.molecule.hinges()[hinge].foot)
    }

    pub fn hinge_segment(&self, hinge: usize) -> Segment {
        let s = self.molecule.hinge_segment(hinge);
        Segment::new(self.isometry.apply(s.a), self.isometry.apply(s.b))
    }

    pub fn ridge_segments(&self) -> Vec<Segment> {
        self.molecule
            .ridge_edges()
            .iter()
            .map(|s| Segment::new(self.isometry.apply(s.a), self.isometry.apply(s.b)))
            .collect()
    }

    pub fn bbox(&self) -> Bbox {
        Bbox::of(self.outline())
    }

    pub fn area(&self) -> f64 {
        self.molecule.outline().area()
    }
}

/// Where a pattern came from, carried into exported files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    pub params: serde_json::Value,
}

/// One placement of a unit cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellMember {
    pub isometry: Isometry,
    pub activation: Activation,
}

/// Periodic structure: cell members repeated over two lattice vectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitCell {
    pub members: Vec<CellMember>,
    pub lattice: [Point2; 2],
}

impl UnitCell {
    pub fn area(&self) -> f64 {
        self.lattice[0].cross(self.lattice[1]).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CreasePattern {
    pub vertices: Vec<Point2>,
    pub creases: Vec<Crease>,
    pub placements: Vec<Placement>,
    pub floors: Vec<Floor>,
    pub tolerance: Tolerance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    /// Unit cell the pattern repeats, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell: Option<UnitCell>,
}

impl Default for CreasePattern {
    fn default() -> Self {
        Self::new()
    }
}

/// Planar-face structure of a welded pattern.
#[derive(Debug, Clone)]
pub(crate) struct FaceSet {
    /// Vertex cycles; interior faces are CCW with positive area.
    pub cycles: Vec<Vec<usize>>,
    /// Crease id of each cycle step (`cycle[k] -> cycle[k+1]`).
    pub cycle_creases: Vec<Vec<usize>>,
    pub interior: Vec<bool>,
    /// Face on the left of each crease's `a -> b` and `b -> a` direction.
    pub left: Vec<[usize; 2]>,
}

impl CreasePattern {
    pub fn new() -> Self {
        Self {
            vertices: Vec::new(),
            creases: Vec::new(),
            placements: Vec::new(),
            floors: Vec::new(),
            tolerance: Tolerance::default(),
            provenance: None,
            cell: None,
        }
    }

    pub fn bbox(&self) -> Bbox {
        let mut b = Bbox::of(self.vertices.iter().copied());
        for p in &self.placements {
            for q in p.outline() {
                b.include(q);
            }
        }
        b
    }

    /// Working tolerance for this pattern's extent.
    pub fn eps(&self) -> f64 {
        self.tolerance.eps_for(self.bbox().diagonal())
    }

    pub fn segment(&self, crease: usize) -> Segment {
        let (a, b) = self.creases[crease].endpoints;
        Segment::new(self.vertices[a], self.vertices[b])
    }

    /// Crease ids incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.vertices.len()];
        for (i, c) in self.creases.iter().enumerate() {
            inc[c.endpoints.0].push(i);
            inc[c.endpoints.1].push(i);
        }
        inc
    }

    /// Adds a bare crease, reusing an existing vertex within tolerance.
    /// Intended for hand-built and imported patterns; call [`weld`] after.
    pub fn add_crease(
        &mut self,
        a: Point2,
        b: Point2,
        class: CreaseClass,
        assignment: FoldAssignment,
    ) -> usize {
        let ia = self.push_vertex(a);
        let ib = self.push_vertex(b);
        self.creases.push(Crease {
            endpoints: (ia, ib),
            class,
            assignment,
            molecule_id: None,
            hinge: None,
        });
        self.creases.len() - 1
    }

    fn push_vertex(&mut self, p: Point2) -> usize {
        self.vertices.push(p);
        self.vertices.len() - 1
    }

    /// Adds a placement and its creases without welding. Checks overlap.
    pub fn push_placement(
        &mut self,
        molecule: Arc<Molecule>,
        activation: Activation,
        isometry: Isometry,
    ) -> Result<usize, CpError> {
        let placement = Placement {
            molecule,
            activation,
            isometry,
        };
        let id = self.placements.len();
        let outline = placement.outline();
        let bb = Bbox::of(outline.iter().copied());
        let eps = self.tolerance.eps_for(bb.diagonal());
        let area_eps = eps * bb.diagonal() * 10.0;
        for (j, q) in self.placements.iter().enumerate() {
            if !q.bbox().overlaps(&bb, -eps) {
                continue;
            }
            if convex_intersection_area(&outline, &q.outline()) > area_eps {
                return Err(CpError::Overlap {
                    new: id,
                    existing: j,
                });
            }
        }
        self.add_placement_creases(&placement, id);
        self.placements.push(placement);
        Ok(id)
    }

    /// Like [`push_placement`] but skips the overlap test; for patterns whose
    /// layout is known to be overlap-free and for deliberately broken ones.
    pub fn push_placement_unchecked(
        &mut self,
        molecule: Arc<Molecule>,
        activation: Activation,
        isometry: Isometry,
    ) -> usize {
        let placement = Placement {
            molecule,
            activation,
            isometry,
        };
        let id = self.placements.len();
        self.add_placement_creases(&placement, id);
        self.placements.push(placement);
        id
    }

    fn add_placement_creases(&mut self, p: &Placement, id: usize) {
        let rev = p.activation.reversed;
        let m = &p.molecule;
        let add = |cp: &mut Self, s: Segment, class, assignment, hinge| {
            let a = cp.push_vertex(s.a);
            let b = cp.push_vertex(s.b);
            cp.creases.push(Crease {
                endpoints: (a, b),
                class,
                assignment,
                molecule_id: Some(id),
                hinge,
            });
        };
        for i in 0..m.n() {
            add(
                self,
                p.edge(i),
                CreaseClass::Axial,
                FoldAssignment::Valley.flipped(rev),
                None,
            );
        }
        for s in p.ridge_segments() {
            add(
                self,
                s,
                CreaseClass::Ridge,
                FoldAssignment::Mountain.flipped(rev),
                None,
            );
        }
        for h in 0..m.hinges().len() {
            add(
                self,
                p.hinge_segment(h),
                CreaseClass::Hinge,
                hinge_assignment(&p.activation, h),
                Some(h),
            );
        }
    }

    /// Merges coincident vertices, splits creases at vertices lying on them,
    /// drops duplicates and recomputes fold assignments.
    pub fn weld(&self) -> Result<CreasePattern, CpError> {
        let eps = self.eps();
        let n = self.vertices.len();

        // cluster vertices
        let mut grid = Grid::new((eps * 8.0).max(1e-300));
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..n {
            let p = self.vertices[i];
            for j in grid.query_point(p, eps) {
                if self.vertices[j].dist(p) <= eps {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                        parent[hi] = lo;
                    }
                }
            }
            grid.insert_point(i, p);
        }
        let mut new_id = vec![usize::MAX; n];
        let mut vertices: Vec<Point2> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            if new_id[r] == usize::MAX {
                new_id[r] = vertices.len();
                vertices.push(self.vertices[r]);
            }
            new_id[i] = new_id[r];
        }
        // only vertices used by creases survive
        let mut used = vec![false; vertices.len()];
        for c in &self.creases {
            let (a, b) = (new_id[c.endpoints.0], new_id[c.endpoints.1]);
            if a != b {
                used[a] = true;
                used[b] = true;
            }
        }
        let mut compact = vec![usize::MAX; vertices.len()];
        let mut kept = Vec::new();
        for (i, p) in vertices.iter().enumerate() {
            if used[i] {
                compact[i] = kept.len();
                kept.push(*p);
            }
        }
        let vertices = kept;

        // split creases at interior vertices
        let bb = Bbox::of(vertices.iter().copied());
        let mut vgrid = Grid::for_extent(&bb, vertices.len());
        for (i, p) in vertices.iter().enumerate() {
            vgrid.insert_point(i, *p);
        }
        let mut pieces: BTreeMap<(usize, usize), Crease> = BTreeMap::new();
        for c in &self.creases {
            let a = new_id[c.endpoints.0];
            let b = new_id[c.endpoints.1];
            if a == b {
                continue;
            }
            let (a, b) = (compact[a], compact[b]);
            let seg = Segment::new(vertices[a], vertices[b]);
            let len = seg.length();
            let sb = Bbox::of([seg.a, seg.b]);
            let mut cuts: Vec<(f64, usize)> = vgrid
                .query(&sb, eps)
                .into_iter()
                .filter(|&w| w != a && w != b)
                .filter_map(|w| {
                    let p = vertices[w];
                    let t = seg.project_param(p);
                    if t * len <= eps || (1.0 - t) * len <= eps {
                        return None;
                    }
                    (seg.distance_to(p) <= eps).then_some((t, w))
                })
                .collect();
            cuts.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut chain = vec![a];
            chain.extend(cuts.iter().map(|c| c.1));
            chain.push(b);
            for w in chain.windows(2) {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                let piece = Crease {
                    endpoints: key,
                    ..c.clone()
                };
                match pieces.get_mut(&key) {
                    None => {
                        pieces.insert(key, piece);
                    }
                    Some(old) => merge_crease(old, piece, vertices[key.0])?,
                }
            }
        }
        let mut out = CreasePattern {
            vertices,
            creases: pieces.into_values().collect(),
            placements: self.placements.clone(),
            floors: Vec::new(),
            tolerance: self.tolerance,
            provenance: self.provenance.clone(),
            cell: self.cell.clone(),
        };
        if let Ok(faces) = out.face_set() {
            let cover = out.face_cover(&faces);
            out.assign_folds(&faces, &cover);
        } else {
            out.assign_folds_without_faces();
        }
        Ok(out)
    }

    /// Planar faces. Interior faces come back CCW; the unbounded face of
    /// each component is dropped.
    pub fn extract_faces(&self) -> Result<Vec<Vec<Point2>>, CpError> {
        let fs = self.face_set()?;
        Ok(fs
            .cycles
            .iter()
            .zip(&fs.interior)
            .filter(|(_, &i)| i)
            .map(|(c, _)| c.iter().map(|&v| self.vertices[v]).collect())
            .collect())
    }

    /// Pairs of creases that cross in their interiors.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let eps = self.eps();
        let bb = self.bbox();
        let mut grid = Grid::for_extent(&bb, self.creases.len());
        let boxes: Vec<Bbox> = (0..self.creases.len())
            .map(|i| {
                let s = self.segment(i);
                Bbox::of([s.a, s.b])
            })
            .collect();
        for (i, b) in boxes.iter().enumerate() {
            grid.insert_box(i, b);
        }
        let mut out = Vec::new();
        for (i, c) in self.creases.iter().enumerate() {
            let s = self.segment(i);
            for j in grid.query(&boxes[i], eps) {
                if j <= i {
                    continue;
                }
                let d = &self.creases[j];
                let shared = c.endpoints.0 == d.endpoints.0
                    || c.endpoints.0 == d.endpoints.1
                    || c.endpoints.1 == d.endpoints.0
                    || c.endpoints.1 == d.endpoints.1;
                if shared {
                    continue;
                }
                if segments_cross(&s, &self.segment(j), eps) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub(crate) fn face_set(&self) -> Result<FaceSet, CpError> {
        if let Some(&(a, b)) = self.crossings().first() {
            return Err(CpError::NonPlanar { a, b });
        }
        let nv = self.vertices.len();
        // half-edge h: crease h/2, direction a->b when even
        let ne = self.creases.len();
        let from = |h: usize| {
            let c = &self.creases[h / 2];
            if h % 2 == 0 {
                c.endpoints.0
            } else {
                c.endpoints.1
            }
        };
        let to = |h: usize| from(h ^ 1);
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..2 * ne {
            out[from(h)].push(h);
        }
        let mut pos = vec![0usize; 2 * ne];
        for (v, list) in out.iter_mut().enumerate() {
            let p = self.vertices[v];
            list.sort_by(|&x, &y| {
                let ax = (self.vertices[to(x)] - p).angle();
                let ay = (self.vertices[to(y)] - p).angle();
                ax.total_cmp(&ay)
            });
            for (k, &h) in list.iter().enumerate() {
                pos[h] = k;
            }
        }
        let next = |h: usize| {
            let t = h ^ 1;
            let v = from(t);
            let list = &out[v];
            list[(pos[t] + list.len() - 1) % list.len()]
        };
        let mut face_of = vec![usize::MAX; 2 * ne];
        let mut cycles = Vec::new();
        let mut cycle_creases = Vec::new();
        let mut interior = Vec::new();
        for start in 0..2 * ne {
            if face_of[start] != usize::MAX {
                continue;
            }
            let f = cycles.len();
            let mut cyc = Vec::new();
            let mut cc = Vec::new();
            let mut h = start;
            loop {
                face_of[h] = f;
                cyc.push(from(h));
                cc.push(h / 2);
                h = next(h);
                if h == start {
                    break;
                }
            }
            let pts: Vec<Point2> = cyc.iter().map(|&v| self.vertices[v]).collect();
            let eps = self.eps();
            let bbd = Bbox::of(pts.iter().copied()).diagonal();
            interior.push(signed_area2(&pts) > eps * bbd);
            cycles.push(cyc);
            cycle_creases.push(cc);
        }
        let left = (0..ne)
            .map(|i| [face_of[2 * i], face_of[2 * i + 1]])
            .collect();
        Ok(FaceSet {
            cycles,
            cycle_creases,
            interior,
            left,
        })
    }

    /// Placement covering each face, if any. A face lies inside a convex
    /// outline exactly when all its vertices do, since outlines are creases.
    pub(crate) fn face_cover(&self, fs: &FaceSet) -> Vec<Option<usize>> {
        let eps = self.eps();
        let bb = self.bbox();
        let outlines: Vec<Vec<Point2>> = self.placements.iter().map(|p| p.outline()).collect();
        let mut grid = Grid::for_extent(&bb, self.placements.len());
        for (i, o) in outlines.iter().enumerate() {
            grid.insert_box(i, &Bbox::of(o.iter().copied()));
        }
        fs.cycles
            .iter()
            .zip(&fs.interior)
            .map(|(cyc, &inner)| {
                if !inner {
                    return None;
                }
                let pts: Vec<Point2> = cyc.iter().map(|&v| self.vertices[v]).collect();
                let fb = Bbox::of(pts.iter().copied());
                grid.query(&fb, eps).into_iter().find(|&p| {
                    pts.iter()
                        .all(|&q| point_in_closed_convex(&outlines[p], q, eps))
                })
            })
            .collect()
    }

    fn assign_folds(&mut self, fs: &FaceSet, cover: &[Option<usize>]) {
        for i in 0..self.creases.len() {
            let c = &self.creases[i];
            let a = match c.class {
                CreaseClass::Axial => {
                    let sides = fs.left[i];
                    if sides.iter().any(|&f| !fs.interior[f]) {
                        FoldAssignment::Boundary
                    } else {
                        let owners: Vec<usize> =
                            sides.iter().filter_map(|&f| cover[f]).collect();
                        axial_assignment(&self.placements, &owners)
                    }
                }
                _ => self.intrinsic_assignment(c),
            };
            self.creases[i].assignment = a;
        }
    }

    fn assign_folds_without_faces(&mut self) {
        for i in 0..self.creases.len() {
            let c = &self.creases[i];
            if c.class != CreaseClass::Axial {
                let a = self.intrinsic_assignment(c);
                self.creases[i].assignment = a;
            }
        }
    }

    fn intrinsic_assignment(&self, c: &Crease) -> FoldAssignment {
        let Some(p) = c.molecule_id.and_then(|m| self.placements.get(m)) else {
            return c.assignment;
        };
        match c.class {
            CreaseClass::Ridge => FoldAssignment::Mountain.flipped(p.activation.reversed),
            CreaseClass::Hinge => match c.hinge {
                Some(h) => hinge_assignment(&p.activation, h),
                None => c.assignment,
            },
            _ => c.assignment,
        }
    }

    /// Uncovered interior faces become floors. Patterns with no placements
    /// (foreign files) get none.
    pub fn infer_floors(&self) -> Result<CreasePattern, CpError> {
        let mut out = self.clone();
        out.floors.clear();
        if self.placements.is_empty() {
            return Ok(out);
        }
        let fs = self.face_set()?;
        let cover = self.face_cover(&fs);
        for (f, cyc) in fs.cycles.iter().enumerate() {
            if !fs.interior[f] || cover[f].is_some() {
                continue;
            }
            let mut border = fs.cycle_creases[f].clone();
            border.sort_unstable();
            border.dedup();
            out.floors.push(Floor {
                vertices: cyc.clone(),
                polygon: cyc.iter().map(|&v| self.vertices[v]).collect(),
                border_creases: border,
            });
        }
        // deterministic order: by lowest vertex id
        out.floors
            .sort_by_key(|f| f.vertices.iter().copied().min().unwrap_or(0));
        Ok(out)
    }

    /// `weld` followed by `infer_floors`.
    pub fn finish(&self) -> Result<CreasePattern, CpError> {
        self.weld()?.infer_floors()
    }

    /// Applies `iso` to every vertex and placement.
    pub fn transformed(&self, iso: &Isometry) -> CreasePattern {
        let mut out = self.clone();
        for v in &mut out.vertices {
            *v = iso.apply(*v);
        }
        for p in &mut out.placements {
            p.isometry = iso.compose(&p.isometry);
        }
        if let Some(cell) = &mut out.cell {
            for m in &mut cell.members {
                m.isometry = iso.compose(&m.isometry);
            }
            for v in &mut cell.lattice {
                *v = iso.apply_linear(*v);
            }
        }
        for f in &mut out.floors {
            for q in &mut f.polygon {
                *q = iso.apply(*q);
            }
            if iso.reflect {
                f.vertices.reverse();
                f.polygon.reverse();
            }
        }
        out
    }

    pub fn molecule_area(&self) -> f64 {
        self.placements.iter().map(|p| p.area()).sum()
    }

    pub fn floor_area(&self) -> f64 {
        self.floors.iter().map(|f| f.area()).sum()
    }
}

fn hinge_assignment(act: &Activation, h: usize) -> FoldAssignment {
    if act.is_active(h) {
        FoldAssignment::Valley.flipped(act.reversed)
    } else {
        FoldAssignment::Flat
    }
}

/// Shared axial creases take the unreversed molecule's sense when the two
/// neighbours disagree.
fn axial_assignment(placements: &[Placement], owners: &[usize]) -> FoldAssignment {
    let revs: Vec<bool> = owners
        .iter()
        .filter_map(|&o| placements.get(o))
        .map(|p| p.activation.reversed)
        .collect();
    if !revs.is_empty() && revs.iter().all(|&r| r) {
        FoldAssignment::Mountain
    } else {
        FoldAssignment::Valley
    }
}

fn merge_crease(old: &mut Crease, new: Crease, at: Point2) -> Result<(), CpError> {
    use CreaseClass::*;
    let class = match (old.class, new.class) {
        (a, b) if a == b => a,
        (Unknown, b) => b,
        (a, Unknown) => a,
        (Border, Axial) | (Axial, Border) => Axial,
        (a, b) => return Err(CpError::InconsistentClass { at, a, b }),
    };
    old.class = class;
    if let (Some(a), Some(b)) = (old.molecule_id, new.molecule_id) {
        if b < a {
            old.molecule_id = Some(b);
            old.hinge = new.hinge;
            old.assignment = new.assignment;
        }
    } else if old.molecule_id.is_none() {
        old.molecule_id = new.molecule_id;
        old.hinge = new.hinge;
    }
    Ok(())
}

pub(crate) fn point_in_closed_convex(poly: &[Point2], p: Point2, eps: f64) -> bool {
    let n = poly.len();
    (0..n).all(|i| {
        let a = poly[i];
        let d = poly[(i + 1) % n] - a;
        d.cross(p - a) / d.norm() >= -eps
    })
}

/// Adds `m` under `iso` and welds.
pub fn place_molecule(
    cp: &CreasePattern,
    m: Arc<Molecule>,
    act: Activation,
    iso: Isometry,
) -> Result<CreasePattern, CpError> {
    let mut out = cp.clone();
    out.push_placement(m, act, iso)?;
    out.weld()
}

pub fn weld(cp: &CreasePattern) -> Result<CreasePattern, CpError> {
    cp.weld()
}

pub fn extract_faces(cp: &CreasePattern) -> Result<Vec<Vec<Point2>>, CpError> {
    cp.extract_faces()
}

pub fn infer_floors(cp: &CreasePattern) -> Result<CreasePattern, CpError> {
    cp.infer_floors()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molecule::{build_universal_molecule, ConvexPolygon};

    fn mol(poly: ConvexPolygon) -> Arc<Molecule> {
        Arc::new(build_universal_molecule(&poly).unwrap())
    }

    fn tri345() -> Arc<Molecule> {
        mol(ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 3.0),
        ])
        .unwrap())
    }

    fn count(cp: &CreasePattern, class: CreaseClass) -> usize {
        cp.creases.iter().filter(|c| c.class == class).count()
    }

    #[test]
    fn single_triangle() {
        let m = tri345();
        let act = Activation::all(&m);
        let cp = place_molecule(&CreasePattern::new(), m, act, Isometry::IDENTITY).unwrap();
        assert_eq!(cp.vertices.len(), 7);
        assert_eq!(cp.creases.len(), 12);
        assert_eq!(count(&cp, CreaseClass::Axial), 6);
        assert!(cp
            .creases
            .iter()
            .filter(|c| c.class == CreaseClass::Axial)
            .all(|c| c.assignment == FoldAssignment::Boundary));
        assert_eq!(cp.extract_faces().unwrap().len(), 6);
        assert!(cp.infer_floors().unwrap().floors.is_empty());
    }

    #[test]
    fn square_faces() {
        let m = mol(ConvexPolygon::regular(4, 1.0).unwrap());
        let act = Activation::all(&m);
        let cp = place_molecule(&CreasePattern::new(), m, act, Isometry::IDENTITY).unwrap();
        assert_eq!(cp.extract_faces().unwrap().len(), 8);
    }

    #[test]
    fn overlap_rejected() {
        let m = tri345();
        let act = Activation::all(&m);
        let cp =
            place_molecule(&CreasePattern::new(), m.clone(), act.clone(), Isometry::IDENTITY)
                .unwrap();
        assert!(matches!(
            place_molecule(&cp, m, act, Isometry::IDENTITY),
            Err(CpError::Overlap { .. })
        ));
    }

    #[test]
    fn rotated_pair_shares_split_edge() {
        // rotate by pi about the midpoint of the length-4 edge
        let m = tri345();
        let act = Activation::all(&m);
        let cp = place_molecule(
            &CreasePattern::new(),
            m.clone(),
            act.clone(),
            Isometry::IDENTITY,
        )
        .unwrap();
        let iso = Isometry::rotation_about(std::f64::consts::PI, Point2::new(2.0, 0.0));
        let cp = place_molecule(&cp, m, act, iso).unwrap();
        // feet at x = 1 and x = 3 split the shared edge into three pieces
        let on_axis: Vec<&Crease> = cp
            .creases
            .iter()
            .filter(|c| {
                let (a, b) = c.endpoints;
                cp.vertices[a].y.abs() < 1e-12 && cp.vertices[b].y.abs() < 1e-12
            })
            .collect();
        assert_eq!(on_axis.len(), 3);
        assert!(on_axis
            .iter()
            .all(|c| c.class == CreaseClass::Axial && c.assignment == FoldAssignment::Valley));
        let faces = cp.extract_faces().unwrap();
        assert_eq!(faces.len(), 12);
        // V - E + F = 1
        assert_eq!(
            cp.vertices.len() as i64 - cp.creases.len() as i64 + faces.len() as i64,
            1
        );
    }

    #[test]
    fn isoceles_pair_shares_foot() {
        let m = mol(ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 3.0),
        ])
        .unwrap());
        let act = Activation::all(&m);
        let mut cp = CreasePattern::new();
        cp.push_placement(m.clone(), act.clone(), Isometry::IDENTITY)
            .unwrap();
        cp.push_placement(
            m,
            act,
            Isometry::rotation_about(std::f64::consts::PI, Point2::new(1.0, 0.0)),
        )
        .unwrap();
        let cp = cp.weld().unwrap();
        // 2 * 7 - 2 corners - 1 foot
        assert_eq!(cp.vertices.len(), 11);
        let again = cp.weld().unwrap();
        assert_eq!(again, cp);
    }

    #[test]
    fn empty_pattern() {
        let cp = CreasePattern::new().weld().unwrap();
        assert!(cp.extract_faces().unwrap().is_empty());
        assert!(cp.infer_floors().unwrap().floors.is_empty());
    }

    #[test]
    fn crossing_is_nonplanar() {
        let mut cp = CreasePattern::new();
        cp.add_crease(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            CreaseClass::Unknown,
            FoldAssignment::Mountain,
        );
        cp.add_crease(
            Point2::new(0.0, 1.0),
            Point2::new(1.0, 0.0),
            CreaseClass::Unknown,
            FoldAssignment::Mountain,
        );
        assert!(matches!(
            cp.weld().unwrap().extract_faces(),
            Err(CpError::NonPlanar { .. })
        ));
    }

    #[test]
    fn class_conflict() {
        let mut cp = CreasePattern::new();
        let (a, b) = (Point2::new(0.0, 0.0), Point2::new(1.0, 0.0));
        cp.add_crease(a, b, CreaseClass::Ridge, FoldAssignment::Mountain);
        cp.add_crease(b, a, CreaseClass::Hinge, FoldAssignment::Valley);
        assert!(matches!(
            cp.weld(),
            Err(CpError::InconsistentClass { .. })
        ));
    }

    #[test]
    fn enclosed_gap_is_floor() {
        // four unit squares around a unit square hole, pinwheel style
        let m = mol(ConvexPolygon::new(vec![
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap());
        let act = Activation::all(&m);
        let mut cp = CreasePattern::new();
        let r = std::f64::consts::FRAC_PI_2;
        // hole is [1,2]x[1,2]
        let isos = [
            Isometry::translation(Point2::new(0.0, 0.0)),
            Isometry::new(r, Point2::new(3.0, 0.0), false),
            Isometry::new(2.0 * r, Point2::new(3.0, 3.0), false),
            Isometry::new(3.0 * r, Point2::new(0.0, 3.0), false),
        ];
        for iso in isos {
            cp.push_placement(m.clone(), act.clone(), iso).unwrap();
        }
        let cp = cp.finish().unwrap();
        assert_eq!(cp.floors.len(), 1);
        assert!((cp.floors[0].area() - 1.0).abs() < 1e-9);
        assert!((cp.molecule_area() + cp.floor_area() - 9.0).abs() < 1e-9);
        assert_eq!(cp.floors[0].corners(1e-9).len(), 4);
    }
}
