//! Generators for the catalogued tessellation families.
//!
//! Every family is a unit cell (placements of one molecule under isometries,
//! each with its own activation) repeated over a two-vector lattice. The
//! triangle families are written against a labelled triangle `A, B, C`
//! (counter-clockwise) with tangent lengths `x, y, z` at the three corners;
//! `-T + t` denotes the copy of the molecule turned half a revolution and
//! shifted by `t`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::FRAC_PI_3;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cp::{CellMember, CpError, CreasePattern, Provenance, UnitCell};
use crate::criteria::{validate_full, Check};
use crate::geom::{interior_angle, Isometry, Point2, Vec2};
use crate::molecule::{
    build_universal_molecule, min_active, Activation, ConvexPolygon, Molecule, MoleculeError,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),
    #[error("cannot correct placement {placement}: it would keep {left} active hinges, below {min}")]
    CannotCorrect {
        placement: usize,
        left: usize,
        min: usize,
    },
    #[error(transparent)]
    Cp(#[from] CpError),
}

impl From<MoleculeError> for FamilyError {
    fn from(e: MoleculeError) -> Self {
        FamilyError::DegenerateTriangle(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    T1,
    T21,
    T22,
    T31,
    T32,
    ET31,
    ET32,
    #[serde(rename = "URCHIN_TRI")]
    UrchinTri,
    #[serde(rename = "URCHIN_SQ")]
    UrchinSq,
    #[serde(rename = "URCHIN_HEX")]
    UrchinHex,
    T3T2,
}

impl FamilyId {
    pub const ALL: [FamilyId; 11] = [
        FamilyId::T1,
        FamilyId::T21,
        FamilyId::T22,
        FamilyId::T31,
        FamilyId::T32,
        FamilyId::ET31,
        FamilyId::ET32,
        FamilyId::UrchinTri,
        FamilyId::UrchinSq,
        FamilyId::UrchinHex,
        FamilyId::T3T2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::T1 => "T1",
            FamilyId::T21 => "T21",
            FamilyId::T22 => "T22",
            FamilyId::T31 => "T31",
            FamilyId::T32 => "T32",
            FamilyId::ET31 => "ET31",
            FamilyId::ET32 => "ET32",
            FamilyId::UrchinTri => "URCHIN_TRI",
            FamilyId::UrchinSq => "URCHIN_SQ",
            FamilyId::UrchinHex => "URCHIN_HEX",
            FamilyId::T3T2 => "T3T2",
        }
    }

    /// Printed pattern name.
    pub fn display_name(self) -> &'static str {
        match self {
            FamilyId::T1 => "T.1",
            FamilyId::T21 => "T.2.1",
            FamilyId::T22 => "T.2.2",
            FamilyId::T31 => "T.3.1",
            FamilyId::T32 => "T.3.2",
            FamilyId::ET31 => "E.T.3.1",
            FamilyId::ET32 => "E.T.3.2",
            FamilyId::UrchinTri => "triangle urchin",
            FamilyId::UrchinSq => "square urchin",
            FamilyId::UrchinHex => "hexagon urchin",
            FamilyId::T3T2 => "T.3.T.2",
        }
    }

    pub fn requires_equilateral(self) -> bool {
        matches!(self, FamilyId::ET31 | FamilyId::ET32)
    }

    pub fn is_urchin(self) -> bool {
        matches!(
            self,
            FamilyId::UrchinTri | FamilyId::UrchinSq | FamilyId::UrchinHex
        )
    }

    /// Active hinges per placement.
    pub fn hinge_counts(self) -> &'static [usize] {
        match self {
            FamilyId::T1 => &[1],
            FamilyId::T21 | FamilyId::T22 => &[2],
            FamilyId::T3T2 => &[3, 2],
            FamilyId::UrchinSq => &[4],
            FamilyId::UrchinHex => &[6],
            _ => &[3],
        }
    }

    /// Expected floor shapes, as a short description.
    pub fn floors(self) -> &'static str {
        match self {
            FamilyId::T1 => "none",
            FamilyId::T21 => "parallelograms (rhombi when equilateral)",
            FamilyId::T22 => "parallelograms",
            FamilyId::T31 => "hexagons with sides equal to the tangent lengths",
            FamilyId::T32 => "two parallelogram classes (rhombi when equilateral)",
            FamilyId::ET31 => "half-size equilateral triangles meeting at corners",
            FamilyId::ET32 => "hexagons",
            FamilyId::UrchinTri | FamilyId::UrchinSq | FamilyId::UrchinHex => "none",
            FamilyId::T3T2 => "hexagons and parallelograms",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect::<String>()
            .to_ascii_uppercase();
        FamilyId::ALL
            .into_iter()
            .find(|f| f.as_str() == key || f.as_str().replace('_', "") == key)
            .ok_or_else(|| FamilyError::BadParams(format!("unknown family {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FamilyParams {
    /// Triangle vertices; any orientation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangle: Option<Vec<Point2>>,
    /// Side length for equilateral and urchin molecules.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<f64>,
    pub rows: usize,
    pub cols: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rings: Option<usize>,
    /// T1 only: which triangle edge carries the active hinge.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hinge_edge: Option<usize>,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            triangle: None,
            side: None,
            rows: 3,
            cols: 3,
            variant: None,
            rings: None,
            hinge_edge: None,
        }
    }
}

impl FamilyParams {
    pub fn triangle(t: &ConvexPolygon) -> Self {
        Self {
            triangle: Some(t.vertices().to_vec()),
            ..Self::default()
        }
    }

    pub fn equilateral(side: f64) -> Self {
        Self {
            side: Some(side),
            ..Self::default()
        }
    }

    pub fn with_extent(mut self, rows: usize, cols: usize) -> Self {
        self.rows = rows;
        self.cols = cols;
        self
    }

    pub fn with_rings(mut self, rings: usize) -> Self {
        self.rings = Some(rings);
        self
    }

    pub fn with_variant(mut self, v: &str) -> Self {
        self.variant = Some(v.to_string());
        self
    }

    fn polygon(&self, id: FamilyId) -> Result<ConvexPolygon, FamilyError> {
        let side = |n: usize| -> Result<ConvexPolygon, FamilyError> {
            let s = self.side.unwrap_or(1.0);
            if !(s > 0.0 && s.is_finite()) {
                return Err(FamilyError::BadParams(format!("side must be positive, got {s}")));
            }
            Ok(ConvexPolygon::regular(n, s)?)
        };
        match id {
            FamilyId::UrchinSq => side(4),
            FamilyId::UrchinHex => side(6),
            FamilyId::UrchinTri => match &self.triangle {
                Some(t) => {
                    let p = triangle_polygon(t)?;
                    if !p.is_equilateral(EQUILATERAL_REL) {
                        return Err(FamilyError::BadParams("equilateral required".into()));
                    }
                    Ok(p)
                }
                None => side(3),
            },
            _ => {
                let p = match (&self.triangle, self.side) {
                    (Some(t), _) => triangle_polygon(t)?,
                    (None, Some(s)) => {
                        if !(s > 0.0 && s.is_finite()) {
                            return Err(FamilyError::BadParams(format!(
                                "side must be positive, got {s}"
                            )));
                        }
                        ConvexPolygon::equilateral(s)?
                    }
                    (None, None) => {
                        return Err(FamilyError::BadParams(
                            "a triangle or a side length is required".into(),
                        ))
                    }
                };
                if id.requires_equilateral() && !p.is_equilateral(EQUILATERAL_REL) {
                    return Err(FamilyError::BadParams("equilateral required".into()));
                }
                Ok(p)
            }
        }
    }
}

/// Relative side-length spread accepted as equilateral.
pub const EQUILATERAL_REL: f64 = 1e-9;

fn triangle_polygon(t: &[Point2]) -> Result<ConvexPolygon, FamilyError> {
    if t.len() != 3 {
        return Err(FamilyError::BadParams(format!(
            "triangle needs 3 vertices, got {}",
            t.len()
        )));
    }
    Ok(ConvexPolygon::new(t.to_vec())?)
}

/// Labelled view of a triangle molecule starting at corner `k`.
#[derive(Debug, Clone, Copy)]
pub struct TriFrame {
    pub a: Point2,
    pub b: Point2,
    pub c: Point2,
    /// Tangent lengths at `a`, `b`, `c`.
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Hinge index on edges `ab`, `bc`, `ca`.
    pub h_ab: usize,
    pub h_bc: usize,
    pub h_ca: usize,
}

impl TriFrame {
    pub fn new(m: &Molecule, k: usize) -> Self {
        let v = m.outline().vertices();
        let (a, b, c) = (v[k % 3], v[(k + 1) % 3], v[(k + 2) % 3]);
        let t = m.tangent_lengths_raw();
        let hinge = |e: usize| m.hinges_on_edge(e % 3).next().expect("triangle hinge");
        Self {
            a,
            b,
            c,
            x: t[k % 3],
            y: t[(k + 1) % 3],
            z: t[(k + 2) % 3],
            h_ab: hinge(k),
            h_bc: hinge(k + 1),
            h_ca: hinge(k + 2),
        }
    }

    fn unit(p: Point2, q: Point2) -> Vec2 {
        (q - p).normalized()
    }

    /// Shift of a half-turned copy meeting edge `ab` edge-to-edge.
    pub fn full_ab(&self) -> Vec2 {
        self.a + self.b
    }
    pub fn full_bc(&self) -> Vec2 {
        self.b + self.c
    }
    pub fn full_ca(&self) -> Vec2 {
        self.c + self.a
    }

    /// Half-turned copy with its corner on this edge's foot (pinwheel).
    pub fn pin_ab(&self) -> Vec2 {
        self.a + self.b + Self::unit(self.a, self.b) * self.x
    }
    pub fn pin_bc(&self) -> Vec2 {
        self.b + self.c + Self::unit(self.b, self.c) * self.y
    }
    pub fn pin_ca(&self) -> Vec2 {
        self.c + self.a + Self::unit(self.c, self.a) * self.z
    }

    /// Pin of the other hand: the copy's first corner sits on the foot.
    pub fn pin_ab_rev(&self) -> Vec2 {
        self.a + self.b - Self::unit(self.a, self.b) * self.y
    }
    pub fn pin_bc_rev(&self) -> Vec2 {
        self.b + self.c - Self::unit(self.b, self.c) * self.z
    }
    pub fn pin_ca_rev(&self) -> Vec2 {
        self.c + self.a - Self::unit(self.c, self.a) * self.x
    }
}

pub fn half_turn(t: Vec2) -> Isometry {
    Isometry::new(std::f64::consts::PI, t, false)
}

fn act(m: &Molecule, hinges: impl IntoIterator<Item = usize>) -> Activation {
    let set: BTreeSet<usize> = hinges.into_iter().collect();
    debug_assert!(set.len() >= min_active(m.n()));
    Activation::unchecked(set, false)
}

fn member(isometry: Isometry, activation: Activation) -> CellMember {
    CellMember {
        isometry,
        activation,
    }
}

/// The molecule a family uses for `params`.
pub fn family_molecule(id: FamilyId, params: &FamilyParams) -> Result<Arc<Molecule>, FamilyError> {
    let poly = params.polygon(id)?;
    Ok(Arc::new(build_universal_molecule(&poly)?))
}

/// Unit cell and lattice of a family.
pub fn unit_cell(id: FamilyId, params: &FamilyParams) -> Result<(Arc<Molecule>, UnitCell), FamilyError> {
    let m = family_molecule(id, params)?;
    let cell = match id {
        FamilyId::T1 => {
            let k = params.hinge_edge.unwrap_or(0);
            if k > 2 {
                return Err(FamilyError::BadParams(format!("hinge_edge must be 0..2, got {k}")));
            }
            let f = TriFrame::new(&m, k);
            // strips of edge-sharing pairs along ab; neighbouring strips meet
            // along ab with matched feet
            let u = TriFrame::unit(f.a, f.b);
            UnitCell {
                members: vec![
                    member(Isometry::IDENTITY, act(&m, [f.h_ab])),
                    member(half_turn(f.full_bc()), act(&m, [f.h_ab])),
                ],
                lattice: [f.b - f.a, (f.c - f.a) + u * (f.y - f.x)],
            }
        }
        FamilyId::T21 => {
            let f = TriFrame::new(&m, 0);
            let all = [f.h_ab, f.h_ca];
            UnitCell {
                members: vec![
                    member(Isometry::IDENTITY, act(&m, all)),
                    member(half_turn(f.full_bc()), act(&m, all)),
                ],
                lattice: [f.pin_ab() - f.full_bc(), f.pin_ca() - f.full_bc()],
            }
        }
        FamilyId::T31 => {
            let f = TriFrame::new(&m, 0);
            let all = [f.h_ab, f.h_bc, f.h_ca];
            UnitCell {
                members: vec![
                    member(Isometry::IDENTITY, act(&m, all)),
                    member(half_turn(f.pin_ab()), act(&m, all)),
                ],
                lattice: [f.pin_bc() - f.pin_ab(), f.pin_ca() - f.pin_ab()],
            }
        }
        FamilyId::ET31 => {
            let f = TriFrame::new(&m, 0);
            let (ab, ac) = (f.b - f.a, f.c - f.a);
            UnitCell {
                members: vec![member(
                    Isometry::IDENTITY,
                    act(&m, [f.h_ab, f.h_bc, f.h_ca]),
                )],
                lattice: [(ab + ac) * 0.5, ac - ab * 0.5],
            }
        }
        FamilyId::UrchinTri => {
            let f = TriFrame::new(&m, 0);
            let all = Activation::all(&m);
            let mut rev = all.clone();
            rev.reversed = true;
            UnitCell {
                members: vec![
                    member(Isometry::IDENTITY, all),
                    member(half_turn(f.full_bc()), rev),
                ],
                lattice: [f.b - f.a, f.c - f.a],
            }
        }
        FamilyId::UrchinSq => {
            let s = m.outline().edge(0).length();
            let all = Activation::all(&m);
            let mut rev = all.clone();
            rev.reversed = true;
            UnitCell {
                members: vec![
                    member(Isometry::IDENTITY, all),
                    member(Isometry::translation(Point2::new(s, 0.0)), rev),
                ],
                lattice: [Point2::new(s, s), Point2::new(s, -s)],
            }
        }
        FamilyId::UrchinHex => {
            let (q, r) = hex_axes(&m);
            let all = Activation::all(&m);
            let mut rev = all.clone();
            rev.reversed = true;
            UnitCell {
                members: vec![
                    member(Isometry::IDENTITY, rev),
                    member(Isometry::translation(q), all.clone()),
                    member(Isometry::translation(q * 2.0), all),
                ],
                lattice: [q * 3.0, r + q],
            }
        }
        FamilyId::T22 | FamilyId::T32 => {
            // strips pinned along ab and (other hand) along ca; bc faces the floors
            let f = TriFrame::new(&m, frame_index(&m, params)?);
            let a = if id == FamilyId::T32 {
                act(&m, [f.h_ab, f.h_bc, f.h_ca])
            } else {
                act(&m, [f.h_bc, f.h_ca])
            };
            UnitCell {
                members: vec![
                    member(Isometry::IDENTITY, a.clone()),
                    member(half_turn(f.pin_ca_rev()), a),
                ],
                lattice: [f.pin_ca_rev() - f.pin_ab(), f.full_ab() - f.pin_bc_rev()],
            }
        }
        FamilyId::ET32 => {
            // pinwheel of six around a hexagon of half side; each corner sits
            // on the next copy's foot
            let f = TriFrame::new(&m, 0);
            let h = (f.b - f.a).norm() * 0.5;
            let u = TriFrame::unit(f.a, f.c);
            let centre = f.a + u.rotated(FRAC_PI_3) * h;
            let all = act(&m, [f.h_ab, f.h_bc, f.h_ca]);
            let l = u.rotated(-2.0 * FRAC_PI_3) * h;
            let l = Point2::new(4.0 * l.x - 3f64.sqrt() * l.y, 3f64.sqrt() * l.x + 4.0 * l.y);
            UnitCell {
                members: (0..6)
                    .map(|k| member(Isometry::rotation_about(k as f64 * FRAC_PI_3, centre), all.clone()))
                    .collect(),
                lattice: [l, l.rotated(2.0 * FRAC_PI_3)],
            }
        }
        FamilyId::T3T2 => {
            let naive = shifted_t31_cell(&m, params)?;
            corrected_cell(&m, &naive)?
        }
    };
    Ok((m, cell))
}

/// Frame for the two-handed strips. By default an isosceles triangle puts its
/// odd edge on `bc`.
fn frame_index(m: &Molecule, params: &FamilyParams) -> Result<usize, FamilyError> {
    let k = match params.hinge_edge {
        Some(k) => k,
        None => {
            let l: Vec<f64> = (0..3).map(|i| m.outline().edge(i).length()).collect();
            let tol = 1e-9 * l.iter().fold(0.0f64, |a, b| a.max(*b));
            let same = |i: usize, j: usize| (l[i] - l[j]).abs() <= tol;
            (0..3)
                .find(|&e| same((e + 1) % 3, (e + 2) % 3) && !same(e, (e + 1) % 3))
                .map_or(0, |e| (e + 2) % 3)
        }
    };
    if k > 2 {
        return Err(FamilyError::BadParams(format!("hinge_edge must be 0..2, got {k}")));
    }
    Ok(k)
}

/// T3T2 layouts: (frame, strips per period).
fn t3t2_layout(variant: Option<&str>) -> Result<(usize, usize), FamilyError> {
    match variant.unwrap_or("a") {
        "a" => Ok((0, 2)),
        "b" => Ok((1, 2)),
        "c" => Ok((0, 3)),
        v => Err(FamilyError::BadParams(format!(
            "unknown T3T2 variant {v:?} (expected a, b or c)"
        ))),
    }
}

/// T31 strips along `bc`, with every `period`-th strip slid so that its
/// `ca` edges meet the previous strip edge-to-edge instead of pinned. All
/// hinges stay active, so the feet on those edges do not line up.
fn shifted_t31_cell(m: &Molecule, params: &FamilyParams) -> Result<UnitCell, FamilyError> {
    let (k, period) = t3t2_layout(params.variant.as_deref())?;
    let f = TriFrame::new(m, k);
    let all = act(m, [f.h_ab, f.h_bc, f.h_ca]);
    let step = f.pin_ca() - f.pin_ab();
    let slid = f.full_ca() - f.pin_ab();
    let mut members = Vec::new();
    let mut off = Point2::ORIGIN;
    for s in 0..period {
        let t = Isometry::translation(off);
        members.push(member(t, all.clone()));
        members.push(member(t.compose(&half_turn(f.pin_ab())), all.clone()));
        off = off + if s + 1 == period { slid } else { step };
    }
    Ok(UnitCell {
        members,
        lattice: [f.pin_bc() - f.pin_ab(), off],
    })
}

/// The cell with every hinge that fails matching in the periodic tiling
/// switched off.
fn corrected_cell(m: &Arc<Molecule>, cell: &UnitCell) -> Result<UnitCell, FamilyError> {
    let mut probe = CreasePattern::new();
    for i in 0..3 {
        for j in 0..3 {
            let shift = cell.lattice[0] * j as f64 + cell.lattice[1] * i as f64;
            for mem in &cell.members {
                probe.push_placement_unchecked(
                    m.clone(),
                    mem.activation.clone(),
                    Isometry::translation(shift).compose(&mem.isometry),
                );
            }
        }
    }
    let bad = crate::criteria::unmatched_hinges(&probe);
    let base = 4 * cell.members.len();
    let min = min_active(m.n());
    let mut members = Vec::with_capacity(cell.members.len());
    for (i, mem) in cell.members.iter().enumerate() {
        let mut a = mem.activation.clone();
        a.active.retain(|h| !bad.contains(&(base + i, *h)));
        if a.active.len() < min {
            return Err(FamilyError::CannotCorrect {
                placement: i,
                left: a.active.len(),
                min,
            });
        }
        members.push(member(mem.isometry, a));
    }
    Ok(UnitCell {
        members,
        lattice: cell.lattice,
    })
}

/// The shifted T31 tiling before correction: some hinges do not line up and
/// the pattern fails validation. `correct_hinges` repairs it.
pub fn shifted_t31(params: &FamilyParams) -> Result<CreasePattern, FamilyError> {
    if params.rows == 0 || params.cols == 0 {
        return Err(FamilyError::BadParams("rows and cols must be at least 1".into()));
    }
    let m = family_molecule(FamilyId::T3T2, params)?;
    let cell = shifted_t31_cell(&m, params)?;
    let mut cp = realize(&m, &cell, params.rows, params.cols)?;
    cp.provenance = Some(Provenance {
        family: "T3T2-naive".to_string(),
        params: serde_json::to_value(params).expect("params serialize"),
    });
    Ok(cp)
}

/// Axial-coordinate steps of the hexagon tiling for a regular hexagon
/// molecule with a horizontal first edge.
fn hex_axes(m: &Molecule) -> (Vec2, Vec2) {
    let s = m.outline().edge(0).length();
    let h = s * 3f64.sqrt();
    (Point2::new(1.5 * s, h / 2.0), Point2::new(0.0, h))
}

/// Places `rows x cols` copies of the cell and welds.
pub fn realize(
    m: &Arc<Molecule>,
    cell: &UnitCell,
    rows: usize,
    cols: usize,
) -> Result<CreasePattern, CpError> {
    let mut cp = CreasePattern::new();
    for i in 0..rows {
        for j in 0..cols {
            let shift = cell.lattice[0] * j as f64 + cell.lattice[1] * i as f64;
            for mem in &cell.members {
                let iso = Isometry::translation(shift).compose(&mem.isometry);
                cp.push_placement_unchecked(m.clone(), mem.activation.clone(), iso);
            }
        }
    }
    cp.cell = Some(cell.clone());
    cp.finish()
}

/// Builds the pattern for a family.
pub fn generate(id: FamilyId, params: &FamilyParams) -> Result<CreasePattern, FamilyError> {
    if params.rows == 0 || params.cols == 0 {
        return Err(FamilyError::BadParams("rows and cols must be at least 1".into()));
    }
    let (m, cell) = unit_cell(id, params)?;
    let mut cp = if id.is_urchin() {
        urchin(id, params)?
    } else {
        realize(&m, &cell, params.rows, params.cols)?
    };
    cp.cell = Some(cell);
    cp.provenance = Some(Provenance {
        family: id.as_str().to_string(),
        params: serde_json::to_value(params).expect("params serialize"),
    });
    Ok(cp)
}

fn urchin(id: FamilyId, params: &FamilyParams) -> Result<CreasePattern, FamilyError> {
    let rings = params.rings.unwrap_or(2);
    if rings == 0 {
        return Err(FamilyError::BadParams("rings must be at least 1".into()));
    }
    let m = family_molecule(id, params)?;
    let all = Activation::all(&m);
    let mut rev = all.clone();
    rev.reversed = true;
    let mut cp = CreasePattern::new();
    let r = rings as i64;
    match id {
        FamilyId::UrchinSq => {
            // 2r x 2r checkerboard centred on the origin
            let s = m.outline().edge(0).length();
            for i in -r..r {
                for j in -r..r {
                    let a = if (i + j).rem_euclid(2) == 0 { &all } else { &rev };
                    let t = Point2::new(j as f64 * s, i as f64 * s);
                    cp.push_placement_unchecked(m.clone(), a.clone(), Isometry::translation(t));
                }
            }
        }
        FamilyId::UrchinTri => {
            // triangles whose centroid lies in the hexagon of side r*s about
            // the origin; the down-pointing ones are reversed
            let f = TriFrame::new(&m, 0);
            let (e1, e2) = (f.b - f.a, f.c - f.a);
            let s = e1.norm();
            let radius = r as f64 * s;
            let hex: Vec<Point2> = (0..6)
                .map(|k| Point2::new(radius, 0.0).rotated(k as f64 * std::f64::consts::PI / 3.0))
                .collect();
            let centroid = (f.a + f.b + f.c) * (1.0 / 3.0);
            for i in -2 * r..=2 * r {
                for j in -2 * r..=2 * r {
                    let t = e1 * j as f64 + e2 * i as f64;
                    let up = Isometry::translation(t);
                    let down = Isometry::translation(t).compose(&half_turn(f.full_bc()));
                    for (iso, a) in [(up, &all), (down, &rev)] {
                        let c = iso.apply(centroid);
                        if crate::geom::point_strictly_in_convex(&hex, c, 1e-9 * s) {
                            cp.push_placement_unchecked(m.clone(), a.clone(), iso);
                        }
                    }
                }
            }
        }
        FamilyId::UrchinHex => {
            // hexagons within r steps of the centre one; one of the three
            // colour classes of the tiling is reversed
            let (q, rr) = hex_axes(&m);
            for a in -r..=r {
                for b in -r..=r {
                    let c = -a - b;
                    if a.abs().max(b.abs()).max(c.abs()) > r {
                        continue;
                    }
                    let t = q * a as f64 + rr * b as f64;
                    let class = (a - b).rem_euclid(3);
                    let ac = if class == 0 { &rev } else { &all };
                    cp.push_placement_unchecked(m.clone(), ac.clone(), Isometry::translation(t));
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(cp.finish()?)
}

/// Deactivates every active hinge whose foot lies inside an edge shared with
/// a neighbour that has no active hinge there.
pub fn correct_hinges(cp: &CreasePattern) -> Result<CreasePattern, FamilyError> {
    let unmatched = crate::criteria::unmatched_hinges(cp);
    if unmatched.is_empty() {
        return Ok(cp.clone());
    }
    let mut placements = cp.placements.clone();
    for (pi, hi) in unmatched {
        placements[pi].activation.active.remove(&hi);
    }
    for (pi, p) in placements.iter().enumerate() {
        let min = min_active(p.molecule.n());
        if p.activation.len() < min {
            return Err(FamilyError::CannotCorrect {
                placement: pi,
                left: p.activation.len(),
                min,
            });
        }
    }
    let mut out = CreasePattern::new();
    out.tolerance = cp.tolerance;
    out.provenance = cp.provenance.clone();
    out.cell = cp.cell.clone();
    for p in placements {
        out.push_placement_unchecked(p.molecule, p.activation, p.isometry);
    }
    let (done, _) = validate_full(&out);
    Ok(done.unwrap_or(out))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FloorKind {
    Triangle,
    EquilateralTriangle,
    Parallelogram,
    Rhombus,
    Quadrilateral,
    Hexagon,
    RegularHexagon,
    Other,
}

impl FloorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FloorKind::Triangle => "triangle",
            FloorKind::EquilateralTriangle => "equilateral_triangle",
            FloorKind::Parallelogram => "parallelogram",
            FloorKind::Rhombus => "rhombus",
            FloorKind::Quadrilateral => "quadrilateral",
            FloorKind::Hexagon => "hexagon",
            FloorKind::RegularHexagon => "regular_hexagon",
            FloorKind::Other => "other",
        }
    }

    pub fn is_parallelogram(self) -> bool {
        matches!(self, FloorKind::Parallelogram | FloorKind::Rhombus)
    }

    pub fn is_hexagon(self) -> bool {
        matches!(self, FloorKind::Hexagon | FloorKind::RegularHexagon)
    }

    pub fn is_triangle(self) -> bool {
        matches!(self, FloorKind::Triangle | FloorKind::EquilateralTriangle)
    }
}

/// Shape of one floor: kind plus its corner-to-corner sides and angles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorShape {
    pub kind: FloorKind,
    pub sides: Vec<f64>,
    pub angles: Vec<f64>,
    pub area: f64,
}

/// Classifies a CCW polygon, ignoring collinear vertices.
pub fn classify_polygon(poly: &[Point2], eps: f64) -> FloorShape {
    let idx = crate::cp::corner_positions(poly, eps);
    let c: Vec<Point2> = idx.iter().map(|&i| poly[i]).collect();
    let k = c.len();
    let sides: Vec<f64> = (0..k).map(|i| c[i].dist(c[(i + 1) % k])).collect();
    let angles: Vec<f64> = (0..k)
        .map(|i| interior_angle(c[(i + k - 1) % k], c[i], c[(i + 1) % k]))
        .collect();
    let area = crate::geom::polygon_area(poly);
    let scale = sides.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let rel = 1e-7;
    let eq = |a: f64, b: f64| (a - b).abs() <= rel * scale;
    let all_sides_equal = sides.iter().all(|&s| eq(s, sides[0]));
    let kind = match k {
        3 => {
            if all_sides_equal {
                FloorKind::EquilateralTriangle
            } else {
                FloorKind::Triangle
            }
        }
        4 => {
            let d0 = c[1] - c[0];
            let d2 = c[3] - c[2];
            let d1 = c[2] - c[1];
            let d3 = c[0] - c[3];
            let para = (d0 + d2).norm() <= rel * scale && (d1 + d3).norm() <= rel * scale;
            match (para, all_sides_equal) {
                (true, true) => FloorKind::Rhombus,
                (true, false) => FloorKind::Parallelogram,
                _ => FloorKind::Quadrilateral,
            }
        }
        6 => {
            let regular = all_sides_equal
                && angles
                    .iter()
                    .all(|a| (a - 2.0 * std::f64::consts::FRAC_PI_3).abs() < 1e-7);
            if regular {
                FloorKind::RegularHexagon
            } else {
                FloorKind::Hexagon
            }
        }
        _ => FloorKind::Other,
    };
    FloorShape {
        kind,
        sides,
        angles,
        area,
    }
}

pub fn floor_shapes(cp: &CreasePattern) -> Vec<FloorShape> {
    let eps = cp.eps();
    cp.floors
        .iter()
        .map(|f| classify_polygon(&f.polygon, eps))
        .collect()
}

/// Histogram of floor kinds.
pub fn floor_census(cp: &CreasePattern) -> BTreeMap<FloorKind, usize> {
    let mut out = BTreeMap::new();
    for s in floor_shapes(cp) {
        *out.entry(s.kind).or_insert(0) += 1;
    }
    out
}

/// Number of distinct congruence classes among parallelogram floors.
pub fn parallelogram_classes(cp: &CreasePattern) -> usize {
    let mut classes: Vec<(f64, f64, f64)> = Vec::new();
    for s in floor_shapes(cp) {
        if !s.kind.is_parallelogram() {
            continue;
        }
        let (mut a, mut b) = (s.sides[0], s.sides[1]);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let key = (a, b, s.area);
        let tol = 1e-6 * b.max(1.0);
        if !classes.iter().any(|c| {
            (c.0 - key.0).abs() < tol && (c.1 - key.1).abs() < tol && (c.2 - key.2).abs() < tol * b
        }) {
            classes.push(key);
        }
    }
    classes.len()
}

/// True when the report contains only violations `correct_hinges` can fix.
pub fn only_hinge_problems(cp: &CreasePattern) -> bool {
    let (_, r) = validate_full(cp);
    r.violations
        .iter()
        .all(|v| matches!(v.criterion, Check::HingeMatching | Check::HingeAtFloorSide))
}
