#![allow(dead_code)]

use std::sync::Arc;

use wbt_core::geom::{Isometry, Point2};
use wbt_core::molecule::{build_universal_molecule, Activation, ConvexPolygon, Molecule};
use wbt_core::CreasePattern;

pub fn p(x: f64, y: f64) -> Point2 {
    Point2::new(x, y)
}

/// Isoceles triangle on base (0,0)-(len,0) with apex height 0.4 * len.
pub fn flap(len: f64) -> Arc<Molecule> {
    let t = ConvexPolygon::new(vec![p(0.0, 0.0), p(len, 0.0), p(len / 2.0, 0.4 * len)]).unwrap();
    Arc::new(build_universal_molecule(&t).unwrap())
}

/// Places a flap outward on the segment `a -> b` of a CCW hole boundary.
/// The base hinge is active only when `base_active`.
pub fn add_flap(cp: &mut CreasePattern, a: Point2, b: Point2, base_active: bool) {
    let m = flap(a.dist(b));
    // local (0,0) -> b, (len,0) -> a puts the flap on the right of a -> b
    let iso = Isometry::new((a - b).angle(), b, false);
    let base: Vec<usize> = m.hinges_on_edge(0).collect();
    let active: Vec<usize> = (0..m.hinges().len())
        .filter(|h| base_active || !base.contains(h))
        .collect();
    cp.push_placement(m, Activation::unchecked(active, false), iso)
        .unwrap();
}

/// Hole polygon (CCW) ringed by outward flaps, one per side.
pub fn wreath(cp: &mut CreasePattern, hole: &[Point2], active_base: &[usize]) {
    let n = hole.len();
    for i in 0..n {
        add_flap(cp, hole[i], hole[(i + 1) % n], active_base.contains(&i));
    }
}

pub fn unit_square_hole(x: f64, y: f64) -> Vec<Point2> {
    vec![p(x, y), p(x + 1.0, y), p(x + 1.0, y + 1.0), p(x, y + 1.0)]
}

/// Random triangle with every angle at least `min_deg`, longest side near 3.
pub fn random_triangle(rng: &mut impl rand::Rng, min_deg: f64) -> ConvexPolygon {
    loop {
        let a = rng.random_range(min_deg..180.0 - 2.0 * min_deg);
        let b = rng.random_range(min_deg..180.0 - a - min_deg);
        let c = 180.0 - a - b;
        if c < min_deg {
            continue;
        }
        let (ra, rb) = (a.to_radians(), b.to_radians());
        let len = rng.random_range(1.0..4.0);
        // base on the x-axis, apex from the two base angles
        let h = len * ra.tan() * rb.tan() / (ra.tan() + rb.tan());
        let x = h / ra.tan();
        if let Ok(t) = ConvexPolygon::new(vec![p(0.0, 0.0), p(len, 0.0), p(x, h)]) {
            return t;
        }
    }
}

/// Hand-built pattern that breaks one criterion at a known place.
pub struct FailCase {
    pub name: &'static str,
    pub criterion: u8,
    pub cp: CreasePattern,
    pub at: Where,
}

pub enum Where {
    Vertex(Point2),
    Crease(Point2, Point2),
    Floor(usize),
    Placement(usize),
}

pub fn fail_cases() -> Vec<FailCase> {
    let mut out = Vec::new();

    let mut cp = CreasePattern::new();
    wreath(&mut cp, &unit_square_hole(0.0, 0.0), &[0]);
    out.push(FailCase { name: "active hinge mid floor side", criterion: 1, cp, at: Where::Vertex(p(0.5, 0.0)) });

    let mut cp = CreasePattern::new();
    let h = unit_square_hole(0.0, 0.0);
    add_flap(&mut cp, h[0], p(0.5, 0.0), false);
    add_flap(&mut cp, p(0.5, 0.0), h[1], false);
    for i in 1..4 {
        add_flap(&mut cp, h[i], h[(i + 1) % 4], false);
    }
    out.push(FailCase { name: "ridge mid floor side", criterion: 2, cp, at: Where::Vertex(p(0.5, 0.0)) });

    let mut cp = CreasePattern::new();
    wreath(&mut cp, &[p(0.0, 0.0), p(2.0, 0.0), p(2.0, 1.0), p(0.0, 1.0)], &[]);
    cp.add_crease(
        p(1.0, 0.0),
        p(1.0, 1.0),
        wbt_core::CreaseClass::Axial,
        wbt_core::FoldAssignment::Valley,
    );
    out.push(FailCase { name: "floors sharing a border", criterion: 3, cp, at: Where::Crease(p(1.0, 0.0), p(1.0, 1.0)) });

    let mut cp = CreasePattern::new();
    wreath(&mut cp, &unit_square_hole(0.0, 0.0), &[]);
    wreath(&mut cp, &unit_square_hole(1.0, 1.0), &[]);
    out.push(FailCase { name: "ripped vertex", criterion: 4, cp, at: Where::Vertex(p(1.0, 1.0)) });

    let mut cp = CreasePattern::new();
    let l = [p(0.0, 0.0), p(2.0, 0.0), p(2.0, 1.0), p(1.0, 1.0), p(1.0, 2.0), p(0.0, 2.0)];
    wreath(&mut cp, &l, &[]);
    out.push(FailCase { name: "concave floor", criterion: 5, cp, at: Where::Floor(0) });

    let mut cp = CreasePattern::new();
    cp.push_placement(flap(1.0), Activation::unchecked([], false), Isometry::IDENTITY)
        .unwrap();
    out.push(FailCase { name: "no active hinges", criterion: 6, cp, at: Where::Placement(0) });

    out
}

/// Runs a case: exactly one violation, with the right number and place.
pub fn run_fail_case(case: &FailCase) -> Result<(), String> {
    use wbt_core::criteria::{validate_full, Location};
    let (done, r) = validate_full(&case.cp);
    let done = done.ok_or("pattern did not weld")?;
    if r.violations.len() != 1 {
        return Err(format!("{}: expected one violation, got {}", case.name, r.to_json()));
    }
    let v = &r.violations[0];
    if v.criterion.number() != Some(case.criterion) {
        return Err(format!("{}: wrong criterion {:?}", case.name, v.criterion));
    }
    let vid = |q: Point2| done.vertices.iter().position(|x| x.dist(q) < 1e-9);
    let want = match case.at {
        Where::Vertex(q) => Location::Vertex { index: vid(q).ok_or("no such vertex")? },
        Where::Crease(a, b) => {
            let (a, b) = (vid(a).ok_or("no such vertex")?, vid(b).ok_or("no such vertex")?);
            let c = done
                .creases
                .iter()
                .position(|c| c.endpoints == (a.min(b), a.max(b)))
                .ok_or("no such crease")?;
            Location::Crease { index: c }
        }
        Where::Floor(i) => Location::Floor { index: i },
        Where::Placement(i) => Location::Placement { index: i },
    };
    if v.location != want {
        return Err(format!("{}: location {:?}, expected {:?}", case.name, v.location, want));
    }
    Ok(())
}
