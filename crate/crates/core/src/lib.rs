//! Design engine for waterbomb-style origami tessellations.
//!
//! Molecules are built on convex polygons, placed into crease patterns,
//! checked against the flat-foldability criteria and exported as FOLD or SVG.

pub mod cp;
pub mod criteria;
pub mod export;
pub mod families;
pub mod geom;
pub mod molecule;
pub mod search;
mod spatial;

pub use geom::{GeomError, Isometry, Point2, Ray, Segment, Tolerance, Vec2};
pub use molecule::{
    activate, build_universal_molecule, tangent_lengths, Activation, ConvexPolygon, Hinge,
    Molecule, MoleculeError,
};
pub use cp::{
    CellMember, CpError, Crease, CreaseClass, CreasePattern, Floor, FoldAssignment, Placement,
    Provenance, UnitCell,
};
pub use export::{from_fold, to_fold, to_svg, ExportError, SvgStyle};
pub use criteria::{validate, Check, Location, ValidationReport, Violation};
pub use families::{
    correct_hinges, floor_census, generate, FamilyError, FamilyId, FamilyParams, FloorKind,
};
