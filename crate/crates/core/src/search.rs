//! Enumeration of periodic tilings by one molecule.
//!
//! A unit cell grows one copy at a time; each new copy is pinned by making
//! one of its anchors (corners and hinge feet) coincide with an anchor of a
//! copy already in the cell. Lattice vectors are drawn from differences of
//! cell anchors. Every (cell, lattice) pair is realized as a patch, checked
//! against the criteria, and kept only if the patch closes up: the floors of
//! one fundamental domain must fill exactly the area the molecules leave.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cp::{CellMember, CreasePattern, UnitCell};
use crate::criteria::{unmatched_hinges, validate, validate_full, ValidationReport};
use crate::families::{classify_polygon, realize, FloorKind};
use crate::geom::{centroid, convex_intersection_area, Bbox, Isometry, Point2, Vec2};
use crate::molecule::{min_active, Activation, Molecule};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("invalid search parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactRule {
    /// New copies share a whole edge with the cell.
    EdgeToEdge,
    /// New copies meet the cell at a corner or hinge foot and share part of
    /// an edge.
    VertexAndFoot,
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub molecule: Arc<Molecule>,
    /// Allowed numbers of active hinges per copy.
    pub activations_allowed: Vec<usize>,
    pub max_copies_per_cell: usize,
    /// Linear parts copies may take; translations are ignored.
    pub orientation_set: Vec<Isometry>,
    pub contact_rule: ContactRule,
    pub time_budget: Duration,
}

impl SearchParams {
    pub fn new(molecule: Arc<Molecule>) -> Self {
        let n = molecule.n();
        Self {
            orientation_set: default_orientations(),
            molecule,
            activations_allowed: vec![n],
            max_copies_per_cell: 2,
            contact_rule: ContactRule::VertexAndFoot,
            time_budget: Duration::from_secs(30),
        }
    }

    pub fn check(&self) -> Result<(), SearchError> {
        let n = self.molecule.n();
        if self.max_copies_per_cell == 0 {
            return Err(SearchError::InvalidParams(
                "max_copies_per_cell must be at least 1".into(),
            ));
        }
        if self.activations_allowed.is_empty() {
            return Err(SearchError::InvalidParams("no activation sizes given".into()));
        }
        for &k in &self.activations_allowed {
            if k < min_active(n) || k > self.molecule.hinges().len() {
                return Err(SearchError::InvalidParams(format!(
                    "activation size {k} is not allowed for an {n}-gon (criterion 6 needs {}..={})",
                    min_active(n),
                    self.molecule.hinges().len()
                )));
            }
        }
        if self.orientation_set.is_empty() {
            return Err(SearchError::InvalidParams("empty orientation set".into()));
        }
        Ok(())
    }
}

/// Identity and the half turn.
pub fn default_orientations() -> Vec<Isometry> {
    vec![Isometry::IDENTITY, Isometry::rotation(std::f64::consts::PI)]
}

/// Rotations by multiples of `pi / 3`, optionally with their mirror images.
pub fn sixfold_orientations(reflections: bool) -> Vec<Isometry> {
    let mut out = Vec::new();
    for r in [false, true] {
        if r && !reflections {
            continue;
        }
        for k in 0..6 {
            out.push(Isometry::new(k as f64 * std::f64::consts::FRAC_PI_3, Point2::ORIGIN, r));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TilingCandidate {
    pub signature: String,
    pub unit_cell: UnitCell,
    pub floor_census: BTreeMap<FloorKind, usize>,
    #[serde(skip)]
    pub cp: CreasePattern,
    #[serde(skip)]
    pub report: Option<ValidationReport>,
}

impl TilingCandidate {
    /// One JSON line: signature, cell, lattice and floor census.
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            signature: &'a str,
            unit_cell: &'a [CellMember],
            lattice: &'a [Vec2; 2],
            floor_census: &'a BTreeMap<FloorKind, usize>,
        }
        serde_json::to_string(&Line {
            signature: &self.signature,
            unit_cell: &self.unit_cell.members,
            lattice: &self.unit_cell.lattice,
            floor_census: &self.floor_census,
        })
        .expect("candidate serializes")
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub candidates: Vec<TilingCandidate>,
    /// False when the time budget ran out first.
    pub exhausted: bool,
}

/// Corners and hinge feet of a placed molecule.
fn anchors(m: &Molecule, iso: &Isometry) -> Vec<Point2> {
    m.outline()
        .vertices()
        .iter()
        .map(|&p| iso.apply(p))
        .chain(m.hinges().iter().map(|h| iso.apply(h.foot)))
        .collect()
}

fn member_outline(m: &Molecule, mem: &CellMember) -> Vec<Point2> {
    m.outline().transformed(&mem.isometry)
}

fn activation_sets(m: &Molecule, sizes: &[usize]) -> Vec<Activation> {
    let h = m.hinges().len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << h) {
        if sizes.contains(&(mask.count_ones() as usize)) {
            out.push(Activation::unchecked((0..h).filter(|i| mask >> i & 1 == 1), false));
        }
    }
    out
}

/// Translation-free description of a placed copy, for comparing copies.
fn shape_key(m: &Molecule, mem: &CellMember, q: f64) -> (Vec<(i64, i64)>, Vec<(i64, i64)>, bool) {
    let outline = member_outline(m, mem);
    let c = centroid(&outline);
    let r = |p: Point2| (((p.x - c.x) / q).round() as i64, ((p.y - c.y) / q).round() as i64);
    let mut vs: Vec<(i64, i64)> = outline.iter().map(|&p| r(p)).collect();
    vs.sort_unstable();
    let mut feet: Vec<(i64, i64)> = mem
        .activation
        .active
        .iter()
        .filter(|&&h| h < m.hinges().len())
        .map(|&h| r(mem.isometry.apply(m.hinges()[h].foot)))
        .collect();
    feet.sort_unstable();
    (vs, feet, mem.activation.reversed)
}

fn overlaps(a: &[Point2], b: &[Point2], area_eps: f64) -> bool {
    let (ba, bb) = (Bbox::of(a.iter().copied()), Bbox::of(b.iter().copied()));
    ba.overlaps(&bb, 0.0) && convex_intersection_area(a, b) > area_eps
}

fn shares_full_edge(a: &[Point2], b: &[Point2], eps: f64) -> bool {
    (0..a.len()).any(|i| {
        let (p, q) = (a[i], a[(i + 1) % a.len()]);
        (0..b.len()).any(|j| {
            let (r, s) = (b[j], b[(j + 1) % b.len()]);
            p.dist(s) <= eps && q.dist(r) <= eps
        })
    })
}

/// Lagrange-Gauss reduction of a lattice basis.
pub fn reduce_basis(mut u: Vec2, mut v: Vec2) -> [Vec2; 2] {
    for _ in 0..64 {
        if u.dot(u) > v.dot(v) {
            std::mem::swap(&mut u, &mut v);
        }
        let mu = (u.dot(v) / u.dot(u)).round();
        if mu == 0.0 {
            break;
        }
        v = v - u * mu;
    }
    if u.dot(u) > v.dot(v) {
        std::mem::swap(&mut u, &mut v);
    }
    [u, v]
}

/// Coordinates of `p` in basis `l`.
fn lattice_coords(l: &[Vec2; 2], p: Vec2) -> (f64, f64) {
    let det = l[0].cross(l[1]);
    (p.cross(l[1]) / det, l[0].cross(p) / det)
}

fn in_lattice(l: &[Vec2; 2], p: Vec2, tol: f64) -> bool {
    let (a, b) = lattice_coords(l, p);
    (a - a.round()).abs() < tol && (b - b.round()).abs() < tol
}

fn same_lattice(a: &[Vec2; 2], b: &[Vec2; 2]) -> bool {
    (a[0].cross(a[1]).abs() - b[0].cross(b[1]).abs()).abs()
        < 1e-7 * a[0].cross(a[1]).abs()
        && in_lattice(b, a[0], 1e-6)
        && in_lattice(b, a[1], 1e-6)
}

/// The cell reduced to its smallest period: extra translations that map the
/// cell onto itself modulo the lattice are folded into the lattice.
pub fn primitive_cell(m: &Molecule, cell: &UnitCell) -> UnitCell {
    let q = 1e-6 * m.outline().bbox().diagonal().max(1e-12);
    let keys: Vec<_> = cell.members.iter().map(|mm| shape_key(m, mm, q)).collect();
    let cents: Vec<Point2> = cell
        .members
        .iter()
        .map(|mm| centroid(&member_outline(m, mm)))
        .collect();
    let l = reduce_basis(cell.lattice[0], cell.lattice[1]);
    let symmetric = |t: Vec2| {
        (0..cell.members.len()).all(|i| {
            (0..cell.members.len())
                .any(|k| keys[k] == keys[i] && in_lattice(&l, cents[k] - cents[i] - t, 1e-6))
        })
    };
    let mut extra: Vec<Vec2> = Vec::new();
    for j in 1..cell.members.len() {
        if keys[j] != keys[0] {
            continue;
        }
        let t = cents[j] - cents[0];
        if in_lattice(&l, t, 1e-6) || !symmetric(t) {
            continue;
        }
        if !extra.iter().any(|&e| in_lattice(&l, e - t, 1e-6)) {
            extra.push(t);
        }
    }
    if extra.is_empty() {
        return UnitCell {
            members: cell.members.clone(),
            lattice: l,
        };
    }
    let index = (extra.len() + 1) as f64;
    let covol = l[0].cross(l[1]).abs() / index;
    let mut cands: Vec<Vec2> = Vec::new();
    for s in std::iter::once(Point2::ORIGIN).chain(extra.iter().copied()) {
        for i in -2..=2 {
            for j in -2..=2 {
                let v = s + l[0] * i as f64 + l[1] * j as f64;
                if v.norm() > q {
                    cands.push(v);
                }
            }
        }
    }
    cands.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let u = cands[0];
    let w = cands
        .iter()
        .copied()
        .find(|w| (u.cross(*w).abs() - covol).abs() < 1e-6 * covol)
        .unwrap_or(l[1]);
    let nl = reduce_basis(u, w);
    let mut members: Vec<CellMember> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..cell.members.len() {
        if reps
            .iter()
            .any(|&r| keys[r] == keys[i] && in_lattice(&nl, cents[i] - cents[r], 1e-6))
        {
            continue;
        }
        reps.push(i);
        members.push(cell.members[i].clone());
    }
    UnitCell {
        members,
        lattice: nl,
    }
}

/// Origin and basis of the fundamental domain at the middle of an
/// `n x n` patch, nudged off lattice-aligned features.
fn central_domain(m: &Molecule, cell: &UnitCell, n: usize) -> (Point2, [Vec2; 2]) {
    let c = cell
        .members
        .iter()
        .map(|mm| centroid(&member_outline(m, mm)))
        .fold(Point2::ORIGIN, |a, b| a + b)
        * (1.0 / cell.members.len() as f64);
    let l = cell.lattice;
    let mid = (n / 2) as f64;
    let origin = c + l[0] * (mid - 0.5 + 0.0123457) + l[1] * (mid - 0.5 + 0.0234567);
    (origin, l)
}

fn in_domain(origin: Point2, l: &[Vec2; 2], p: Point2) -> bool {
    let (a, b) = lattice_coords(l, p - origin);
    (0.0..1.0).contains(&a) && (0.0..1.0).contains(&b)
}

fn short_hash(s: &str) -> String {
    let d = Sha256::digest(s.as_bytes());
    d.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Cyclic token sequence in a form independent of start and direction.
/// Tokens alternate item, gap, item, gap; rotations start at items.
fn canonical_cycle(tokens: &[String]) -> String {
    let n = tokens.len();
    if n == 0 {
        return String::new();
    }
    let mut best: Option<String> = None;
    let rev: Vec<String> = {
        // reversing an item/gap cycle: item0 gap_{n-1} item_{n-1} ...
        let mut r = Vec::with_capacity(n);
        let k = n / 2;
        for i in 0..k {
            let item = &tokens[2 * ((k - i) % k)];
            let gap = &tokens[2 * ((2 * k - i - 1) % k) + 1];
            r.push(item.clone());
            r.push(gap.clone());
        }
        r
    };
    for seq in [tokens, rev.as_slice()] {
        for s in (0..n).step_by(2) {
            let joined = (0..n)
                .map(|i| seq[(s + i) % n].as_str())
                .collect::<Vec<_>>()
                .join(",");
            if best.as_ref().is_none_or(|b| joined < *b) {
                best = Some(joined);
            }
        }
    }
    best.unwrap()
}

fn angle_token(a: f64) -> String {
    format!("{}", (a * 1e5).round() as i64)
}

/// Star of a vertex: crease classes and assignments in angular order with
/// the angles between them.
fn vertex_stars(cp: &CreasePattern) -> Vec<String> {
    let inc = cp.incidence();
    (0..cp.vertices.len())
        .map(|v| {
            let p = cp.vertices[v];
            let mut items: Vec<(f64, String)> = inc[v]
                .iter()
                .map(|&c| {
                    let cr = &cp.creases[c];
                    let a = (cp.vertices[cr.other(v)] - p).angle();
                    (a, format!("{}{}", &cr.class.as_str()[..1], cr.assignment.letter()))
                })
                .collect();
            items.sort_by(|a, b| a.0.total_cmp(&b.0));
            let k = items.len();
            let mut tokens = Vec::with_capacity(2 * k);
            for i in 0..k {
                let mut gap = items[(i + 1) % k].0 - items[i].0;
                if gap <= 0.0 {
                    gap += std::f64::consts::TAU;
                }
                tokens.push(items[i].1.clone());
                tokens.push(angle_token(gap));
            }
            canonical_cycle(&tokens)
        })
        .collect()
}

fn floor_key(poly: &[Point2], eps: f64) -> String {
    let s = classify_polygon(poly, eps);
    let max = s.sides.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let mut tokens = Vec::new();
    for i in 0..s.sides.len() {
        tokens.push(angle_token(s.angles[i]));
        tokens.push(format!("{}", (s.sides[i] / max * 1e5).round() as i64));
    }
    format!("{}[{}]", s.kind.as_str(), canonical_cycle(&tokens))
}

/// Isometry- and lattice-basis-invariant description of a tiling.
///
/// With a known unit cell, the cell is reduced to its primitive period and a
/// patch is grown around one fundamental domain; the signature lists the
/// floors of that domain (shape kind with normalized side ratios and angles)
/// and hashes the vertex stars of the domain after two rounds of neighbour
/// refinement. Without a cell the whole pattern's interior is used as a set.
pub fn canonical_signature(cp: &CreasePattern) -> String {
    let m = cp.placements.first().map(|p| p.molecule.clone());
    match (&cp.cell, m) {
        (Some(cell), Some(m)) if !cell.members.is_empty() => periodic_signature(&m, cell)
            .unwrap_or_else(|| finite_signature(cp)),
        _ => finite_signature(cp),
    }
}

fn refine(cp: &CreasePattern, mut labels: Vec<String>, rounds: usize) -> Vec<String> {
    let inc = cp.incidence();
    for _ in 0..rounds {
        labels = (0..cp.vertices.len())
            .map(|v| {
                let mut nb: Vec<String> = inc[v]
                    .iter()
                    .map(|&c| {
                        let cr = &cp.creases[c];
                        format!("{}{}:{}", cr.class.as_str(), cr.assignment.letter(), labels[cr.other(v)])
                    })
                    .collect();
                nb.sort();
                short_hash(&format!("{}|{}", labels[v], nb.join(";")))
            })
            .collect();
    }
    labels
}

fn periodic_signature(m: &Molecule, cell: &UnitCell) -> Option<String> {
    let prim = primitive_cell(m, cell);
    let prim = compact_cell(m, &prim.members, prim.lattice);
    let n = 5;
    let patch = realize(&Arc::new(m.clone()), &prim, n, n).ok()?;
    let (origin, l) = central_domain(m, &prim, n);
    let eps = patch.eps();
    let mut floors: Vec<String> = patch
        .floors
        .iter()
        .filter(|f| in_domain(origin, &l, centroid(&f.polygon)))
        .map(|f| floor_key(&f.polygon, eps))
        .collect();
    floors.sort();
    let stars = vertex_stars(&patch);
    let labels = refine(&patch, stars, 2);
    let mut dom: Vec<&String> = (0..patch.vertices.len())
        .filter(|&v| in_domain(origin, &l, patch.vertices[v]))
        .map(|v| &labels[v])
        .collect();
    dom.sort();
    let joined: Vec<&str> = dom.iter().map(|s| s.as_str()).collect();
    Some(compose_signature(&floors, &joined.join(",")))
}

fn compose_signature(floors: &[String], graph: &str) -> String {
    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    for f in floors {
        let kind = f.split('[').next().unwrap_or("").to_string();
        *census.entry(kind).or_insert(0) += 1;
    }
    let summary = if census.is_empty() {
        "none".to_string()
    } else {
        census
            .iter()
            .map(|(k, c)| format!("{k}x{c}"))
            .collect::<Vec<_>>()
            .join("+")
    };
    format!(
        "floors={summary};h={}",
        short_hash(&format!("{}#{graph}", floors.join(";")))
    )
}

fn finite_signature(cp: &CreasePattern) -> String {
    let eps = cp.eps();
    let mut floors: Vec<String> = cp.floors.iter().map(|f| floor_key(&f.polygon, eps)).collect();
    floors.sort();
    floors.dedup();
    let mut stars = vertex_stars(cp);
    stars.sort();
    stars.dedup();
    compose_signature(&floors, &stars.join(","))
}

struct Ctx<'a> {
    m: &'a Arc<Molecule>,
    eps: f64,
    area_eps: f64,
    deadline: Instant,
    timed_out: &'a AtomicBool,
}

impl Ctx<'_> {
    fn out_of_time(&self) -> bool {
        if Instant::now() >= self.deadline {
            self.timed_out.store(true, Ordering::Relaxed);
            true
        } else {
            false
        }
    }
}

/// Unit cells with up to `max` copies, copy 0 fixed at the identity.
fn grow_cells(p: &SearchParams, ctx: &Ctx) -> Vec<Vec<CellMember>> {
    let m = ctx.m;
    let acts = activation_sets(m, &p.activations_allowed);
    let local = anchors(m, &Isometry::IDENTITY);
    let q = ctx.eps * 100.0;
    let mut level: Vec<Vec<CellMember>> = acts
        .iter()
        .map(|a| {
            vec![CellMember {
                isometry: Isometry::IDENTITY,
                activation: a.clone(),
            }]
        })
        .collect();
    let mut all = level.clone();
    let mut seen: std::collections::BTreeSet<Vec<(i64, i64, i64, u64, bool)>> =
        std::collections::BTreeSet::new();
    for _ in 1..p.max_copies_per_cell {
        let mut next = Vec::new();
        for cell in &level {
            if ctx.out_of_time() {
                return all;
            }
            let outlines: Vec<Vec<Point2>> = cell.iter().map(|c| member_outline(m, c)).collect();
            let cell_anchors: Vec<Point2> = cell
                .iter()
                .flat_map(|c| anchors(m, &c.isometry))
                .collect();
            for &a in &cell_anchors {
                for o in &p.orientation_set {
                    let lin = Isometry::new(o.rotation, Point2::ORIGIN, o.reflect);
                    for &b in &local {
                        let t = a - lin.apply(b);
                        let iso = Isometry::translation(t).compose(&lin);
                        let outline = m.outline().transformed(&iso);
                        if outlines.iter().any(|o| overlaps(o, &outline, ctx.area_eps)) {
                            continue;
                        }
                        // anchors coincide by construction, which is contact enough
                        // for the vertex-and-foot rule
                        let touches = match p.contact_rule {
                            ContactRule::EdgeToEdge => {
                                outlines.iter().any(|o| shares_full_edge(o, &outline, ctx.eps))
                            }
                            ContactRule::VertexAndFoot => true,
                        };
                        if !touches {
                            continue;
                        }
                        for act in &acts {
                            let mut c = cell.clone();
                            c.push(CellMember {
                                isometry: iso,
                                activation: act.clone(),
                            });
                            let mut key: Vec<_> = c
                                .iter()
                                .map(|mm| {
                                    let (vs, feet, _) = shape_key(m, mm, q);
                                    let cen = centroid(&member_outline(m, mm));
                                    let mut h = 0u64;
                                    for f in vs.iter().chain(feet.iter()) {
                                        h = h.wrapping_mul(1_000_003).wrapping_add(
                                            (f.0 as u64).wrapping_mul(31).wrapping_add(f.1 as u64),
                                        );
                                    }
                                    (
                                        (cen.x / q).round() as i64,
                                        (cen.y / q).round() as i64,
                                        vs.len() as i64,
                                        h,
                                        mm.activation.reversed,
                                    )
                                })
                                .collect();
                            key.sort();
                            if seen.insert(key) {
                                next.push(c);
                            }
                        }
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}

/// Candidate lattices for a cell: pairs of anchor differences that move the
/// cell off itself, reduced and deduplicated.
fn lattices_for(cell: &[CellMember], ctx: &Ctx) -> Vec<[Vec2; 2]> {
    let m = ctx.m;
    let outlines: Vec<Vec<Point2>> = cell.iter().map(|c| member_outline(m, c)).collect();
    let pts: Vec<Point2> = cell.iter().flat_map(|c| anchors(m, &c.isometry)).collect();
    let mol_area: f64 = m.outline().area() * cell.len() as f64;
    let q = ctx.eps * 100.0;
    let mut diffs: Vec<Vec2> = Vec::new();
    let mut keys = std::collections::BTreeSet::new();
    for &a in &pts {
        for &b in &pts {
            let d = a - b;
            if d.norm() <= q {
                continue;
            }
            let key = ((d.x / q).round() as i64, (d.y / q).round() as i64);
            if keys.insert(key) {
                diffs.push(d);
            }
        }
    }
    let clear = |t: Vec2| {
        outlines.iter().all(|a| {
            outlines.iter().all(|b| {
                let shifted: Vec<Point2> = b.iter().map(|&p| p + t).collect();
                !overlaps(a, &shifted, ctx.area_eps)
            })
        })
    };
    let good: Vec<Vec2> = diffs.into_iter().filter(|&t| clear(t)).collect();
    let mut out: Vec<[Vec2; 2]> = Vec::new();
    for i in 0..good.len() {
        for j in (i + 1)..good.len() {
            let det = good[i].cross(good[j]).abs();
            if det < mol_area * (1.0 - 1e-9) || det > mol_area * 3.0 {
                continue;
            }
            let l = reduce_basis(good[i], good[j]);
            if out.iter().any(|o| same_lattice(o, &l)) {
                continue;
            }
            let ok = (-2i32..=2).all(|a| {
                (-2i32..=2).all(|b| (a == 0 && b == 0) || clear(l[0] * a as f64 + l[1] * b as f64))
            });
            if ok {
                out.push(l);
            }
        }
    }
    out
}

/// Checks one (cell, lattice) pair; returns the candidate when the tiling is
/// valid and closed.
/// An active foot that no neighbour touches sits in the middle of a floor
/// side, which criterion 1 forbids.
fn feet_touched(probe: &CreasePattern, first: usize, count: usize, eps: f64) -> bool {
    let outlines: Vec<Vec<Point2>> = probe.placements.iter().map(|p| p.outline()).collect();
    (first..first + count).all(|i| {
        let p = &probe.placements[i];
        p.activation.active.iter().all(|&h| {
            let f = p.foot(h);
            outlines.iter().enumerate().any(|(j, o)| {
                j != i
                    && (0..o.len()).any(|k| {
                        crate::geom::Segment::new(o[k], o[(k + 1) % o.len()]).distance_to(f) <= eps
                    })
            })
        })
    })
}

/// Moves every member by a lattice vector so its centroid lies within half a
/// period of copy 0.
fn compact_cell(m: &Molecule, members: &[CellMember], lattice: [Vec2; 2]) -> UnitCell {
    let c0 = centroid(&member_outline(m, &members[0]));
    let members = members
        .iter()
        .map(|mem| {
            let (a, b) = lattice_coords(&lattice, centroid(&member_outline(m, mem)) - c0);
            let shift = lattice[0] * -a.round() + lattice[1] * -b.round();
            CellMember {
                isometry: Isometry::translation(shift).compose(&mem.isometry),
                activation: mem.activation.clone(),
            }
        })
        .collect();
    UnitCell { members, lattice }
}

fn evaluate(members: &[CellMember], lattice: [Vec2; 2], ctx: &Ctx) -> Option<TilingCandidate> {
    let m = ctx.m;
    let cell = compact_cell(m, members, lattice);
    let members = &cell.members[..];
    // cheap pre-check on placements only
    let mut probe = CreasePattern::new();
    for i in 0..5 {
        for j in 0..5 {
            let shift = lattice[0] * j as f64 + lattice[1] * i as f64;
            for mem in members {
                probe.push_placement_unchecked(
                    m.clone(),
                    mem.activation.clone(),
                    Isometry::translation(shift).compose(&mem.isometry),
                );
            }
        }
    }
    if !unmatched_hinges(&probe).is_empty() {
        return None;
    }
    if !feet_touched(&probe, 12 * members.len(), members.len(), ctx.eps) {
        return None;
    }
    let cp = realize(m, &cell, 2, 2).ok()?;
    let report = validate(&cp);
    if !report.pass {
        return None;
    }
    let n = 5;
    let patch = realize(m, &cell, n, n).ok()?;
    let (done, full) = validate_full(&patch);
    if !full.pass {
        return None;
    }
    let done = done?;
    let (origin, l) = central_domain(m, &cell, n);
    let floor_area: f64 = done
        .floors
        .iter()
        .filter(|f| in_domain(origin, &l, centroid(&f.polygon)))
        .map(|f| f.area())
        .sum();
    let gap = cell.area() - m.outline().area() * members.len() as f64;
    if (floor_area - gap).abs() > 1e-6 * cell.area() {
        return None;
    }
    let signature = canonical_signature(&cp);
    let prim = primitive_cell(m, &cell);
    let prim = compact_cell(m, &prim.members, prim.lattice);
    let census = {
        let big = realize(m, &prim, n, n).ok()?;
        let (o2, l2) = central_domain(m, &prim, n);
        let mut c = BTreeMap::new();
        for f in &big.floors {
            if in_domain(o2, &l2, centroid(&f.polygon)) {
                let k = classify_polygon(&f.polygon, big.eps()).kind;
                *c.entry(k).or_insert(0) += 1;
            }
        }
        c
    };
    Some(TilingCandidate {
        signature,
        unit_cell: cell,
        floor_census: census,
        cp,
        report: Some(report),
    })
}

/// Checks one unit cell as a periodic tiling: valid, closed, and passing on
/// a 2x2 realization. Returns the candidate when it is.
pub fn check_cell(m: &Arc<Molecule>, cell: &UnitCell) -> Option<TilingCandidate> {
    if cell.members.is_empty() || cell.area() <= 0.0 {
        return None;
    }
    let diag = m.outline().bbox().diagonal();
    let eps = crate::geom::Tolerance::default().eps_for(diag * 10.0);
    let timed_out = AtomicBool::new(false);
    let ctx = Ctx {
        m,
        eps,
        area_eps: eps * diag * 10.0,
        deadline: Instant::now() + Duration::from_secs(3600),
        timed_out: &timed_out,
    };
    evaluate(&cell.members, cell.lattice, &ctx)
}

/// Runs the search. Results are deduplicated by signature and sorted by it.
pub fn enumerate(params: &SearchParams) -> Result<SearchOutcome, SearchError> {
    params.check()?;
    let m = &params.molecule;
    let diag = m.outline().bbox().diagonal();
    let eps = crate::geom::Tolerance::default().eps_for(diag * 10.0);
    let timed_out = AtomicBool::new(false);
    let ctx = Ctx {
        m,
        eps,
        area_eps: eps * diag * 10.0,
        deadline: Instant::now() + params.time_budget,
        timed_out: &timed_out,
    };
    let cells = grow_cells(params, &ctx);
    let found: Vec<Vec<TilingCandidate>> = cells
        .par_iter()
        .map(|cell| {
            if ctx.out_of_time() {
                return Vec::new();
            }
            let mut local: Vec<TilingCandidate> = Vec::new();
            for l in lattices_for(cell, &ctx) {
                if ctx.out_of_time() {
                    break;
                }
                if let Some(c) = evaluate(cell, l, &ctx) {
                    if !local.iter().any(|o| o.signature == c.signature) {
                        local.push(c);
                    }
                }
            }
            local
        })
        .collect();
    let mut by_sig: BTreeMap<String, TilingCandidate> = BTreeMap::new();
    for c in found.into_iter().flatten() {
        match by_sig.get(&c.signature) {
            Some(old) if old.unit_cell.members.len() <= c.unit_cell.members.len() => {}
            _ => {
                by_sig.insert(c.signature.clone(), c);
            }
        }
    }
    Ok(SearchOutcome {
        candidates: by_sig.into_values().collect(),
        exhausted: !timed_out.load(Ordering::Relaxed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_reduction() {
        let [u, v] = reduce_basis(Point2::new(1.0, 0.0), Point2::new(5.0, 1.0));
        assert!((u.norm() - 1.0).abs() < 1e-12);
        assert!((v - Point2::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn cycle_canonical_under_rotation_and_reversal() {
        let t = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let a = canonical_cycle(&t(&["A", "1", "B", "2", "C", "3"]));
        let b = canonical_cycle(&t(&["B", "2", "C", "3", "A", "1"]));
        // walking the other way: A, gap to C is 3, C, gap to B is 2, B, gap 1
        let c = canonical_cycle(&t(&["A", "3", "C", "2", "B", "1"]));
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = canonical_cycle(&t(&["A", "1", "C", "2", "B", "3"]));
        assert_ne!(a, d);
    }

    #[test]
    fn zero_activation_rejected() {
        let m = crate::molecule::build_universal_molecule(
            &crate::molecule::ConvexPolygon::equilateral(2.0).unwrap(),
        )
        .unwrap();
        let mut p = SearchParams::new(Arc::new(m));
        p.activations_allowed = vec![0];
        assert!(matches!(enumerate(&p), Err(SearchError::InvalidParams(_))));
    }
}
