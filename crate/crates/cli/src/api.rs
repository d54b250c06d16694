//! Operations shared by the command line and the HTTP service.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use wbt_core::criteria::{validate, Check, Location, ValidationReport, Violation};
use wbt_core::export::{from_fold, to_fold, to_svg, ExportError, SvgStyle};
use wbt_core::families::{correct_hinges, generate as family_generate, FamilyError, FamilyId, FamilyParams};
use wbt_core::molecule::{min_active, ConvexPolygon};
use wbt_core::CreasePattern;

#[derive(Debug, Error)]
pub enum ApiError {
    /// Malformed input: bad syntax, unknown names, indices out of range.
    #[error("{message}")]
    BadRequest {
        message: String,
        field: Option<String>,
    },
    /// Well-formed but rejected by the engine.
    #[error("{message}")]
    Domain {
        message: String,
        violation: Option<Violation>,
    },
}

impl ApiError {
    pub fn bad(field: &str, message: impl Into<String>) -> Self {
        ApiError::BadRequest {
            message: message.into(),
            field: Some(field.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ApiError::BadRequest { message, field } => {
                serde_json::json!({ "error": message, "field": field })
            }
            ApiError::Domain { message, violation } => {
                serde_json::json!({ "error": message, "violation": violation })
            }
        }
    }
}

impl From<ExportError> for ApiError {
    fn from(e: ExportError) -> Self {
        let field = match &e {
            ExportError::Parse { .. } => "fold".to_string(),
            ExportError::Schema { field, .. } => format!("fold.{field}"),
        };
        ApiError::BadRequest {
            message: e.to_string(),
            field: Some(field),
        }
    }
}

impl From<FamilyError> for ApiError {
    fn from(e: FamilyError) -> Self {
        ApiError::Domain {
            message: e.to_string(),
            violation: None,
        }
    }
}

/// Triangle as three side lengths or an equilateral side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TriangleArg {
    Sides([f64; 3]),
    Side { side: f64 },
}

impl TriangleArg {
    /// `a,b,c` or `eq:<side>`.
    pub fn parse(s: &str) -> Result<Self, ApiError> {
        let s = s.trim();
        if let Some(side) = s.strip_prefix("eq:") {
            let side: f64 = side
                .parse()
                .map_err(|_| ApiError::bad("triangle", format!("bad side length {side:?}")))?;
            return Ok(TriangleArg::Side { side });
        }
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| ApiError::bad("triangle", format!("expected a,b,c or eq:<side>, got {s:?}")))?;
        let sides: [f64; 3] = parts
            .try_into()
            .map_err(|_| ApiError::bad("triangle", "expected exactly three side lengths"))?;
        Ok(TriangleArg::Sides(sides))
    }

    pub fn polygon(&self) -> Result<ConvexPolygon, ApiError> {
        let t = match self {
            TriangleArg::Sides(s) => ConvexPolygon::triangle_from_sides(*s),
            TriangleArg::Side { side } => {
                if !(side.is_finite() && *side > 0.0) {
                    return Err(ApiError::bad("triangle", format!("side must be positive, got {side}")));
                }
                ConvexPolygon::equilateral(*side)
            }
        };
        t.map_err(|e| ApiError::bad("triangle", e.to_string()))
    }

    pub fn params(&self) -> Result<FamilyParams, ApiError> {
        Ok(match self {
            TriangleArg::Sides(_) => FamilyParams::triangle(&self.polygon()?),
            TriangleArg::Side { side } => {
                self.polygon()?;
                FamilyParams::equilateral(*side)
            }
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateRequest {
    pub family: String,
    #[serde(default)]
    pub triangle: Option<TriangleArg>,
    #[serde(default)]
    pub rows: Option<usize>,
    #[serde(default)]
    pub cols: Option<usize>,
    #[serde(default)]
    pub variant: Option<String>,
    #[serde(default)]
    pub hinge_edge: Option<usize>,
    #[serde(default)]
    pub rings: Option<usize>,
}

pub fn generate(req: &GenerateRequest) -> Result<CreasePattern, ApiError> {
    let id: FamilyId = req
        .family
        .parse()
        .map_err(|e: FamilyError| ApiError::bad("family", e.to_string()))?;
    let mut p = match &req.triangle {
        Some(t) => t.params()?,
        None if id.is_urchin() => FamilyParams::equilateral(1.0),
        None => return Err(ApiError::bad("triangle", "a triangle is required")),
    };
    p.rows = req.rows.unwrap_or(p.rows);
    p.cols = req.cols.unwrap_or(p.cols);
    p.variant = req.variant.clone();
    p.hinge_edge = req.hinge_edge;
    p.rings = req.rings;
    Ok(family_generate(id, &p)?)
}

/// Catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyInfo {
    pub id: &'static str,
    pub name: &'static str,
    pub hinge_counts: &'static [usize],
    pub floors: &'static str,
    pub equilateral_only: bool,
}

pub fn families() -> Vec<FamilyInfo> {
    FamilyId::ALL
        .into_iter()
        .map(|f| FamilyInfo {
            id: f.as_str(),
            name: f.display_name(),
            hinge_counts: f.hinge_counts(),
            floors: f.floors(),
            equilateral_only: f.requires_equilateral(),
        })
        .collect()
}

pub fn load(fold: &Value) -> Result<CreasePattern, ApiError> {
    let bytes = serde_json::to_vec(fold).map_err(|e| ApiError::bad("fold", e.to_string()))?;
    Ok(from_fold(&bytes)?)
}

/// FOLD document as a JSON value, identical to the bytes `to_fold` writes.
pub fn fold_value(cp: &CreasePattern) -> Value {
    serde_json::from_slice(&to_fold(cp)).expect("own output parses")
}

/// Flips one hinge. Refuses to leave a placement below the minimum.
pub fn toggle_hinge(cp: &CreasePattern, placement: usize, hinge: usize) -> Result<CreasePattern, ApiError> {
    let p = cp.placements.get(placement).ok_or_else(|| {
        ApiError::bad(
            "placement_index",
            format!("placement {placement} out of range (have {})", cp.placements.len()),
        )
    })?;
    let nh = p.molecule.hinges().len();
    if hinge >= nh {
        return Err(ApiError::bad(
            "hinge_index",
            format!("hinge {hinge} out of range (molecule has {nh})"),
        ));
    }
    let mut act = p.activation.clone();
    if !act.active.remove(&hinge) {
        act.active.insert(hinge);
    }
    let min = min_active(p.molecule.n());
    if act.len() < min {
        let message = format!(
            "placement {placement} would keep {} active hinges; at least {min} are required",
            act.len()
        );
        return Err(ApiError::Domain {
            violation: Some(Violation {
                criterion: Check::TooFewHinges,
                location: Location::Hinge { placement, hinge },
                point: Some(p.foot(hinge)),
                message: message.clone(),
            }),
            message,
        });
    }
    let mut out = cp.clone();
    out.placements[placement].activation = act;
    out.finish().map_err(|e| ApiError::Domain {
        message: e.to_string(),
        violation: None,
    })
}

pub fn correct(cp: &CreasePattern) -> Result<CreasePattern, ApiError> {
    Ok(correct_hinges(cp)?)
}

#[derive(Debug, Serialize)]
pub struct Edited {
    pub fold: Value,
    pub report: ValidationReport,
}

pub fn edited(cp: &CreasePattern) -> Edited {
    Edited {
        fold: fold_value(cp),
        report: validate(cp),
    }
}

pub fn svg(cp: &CreasePattern, style: Option<&SvgStyle>) -> String {
    let bytes = to_svg(cp, &style.cloned().unwrap_or_default());
    String::from_utf8(bytes).expect("svg is utf-8")
}
