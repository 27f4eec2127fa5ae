use clap::ValueEnum;
use serde::Deserialize;
use serde_json::{json, Value};

use wallcube::action::{verify_equivariance, ActionMap};
use wallcube::dual::{build_dual, is_convex, BuildOptions, CubeComplex};
use wallcube::hemi::{dual_sub, induce_hemi, InducedVariant};
use wallcube::io::HemiDoc;
use wallcube::separation::{
    axis_cut_test, ball_ball_separation, bounded_packing_number, compact_wall_separation, degree_profile,
    linear_separation_fit, packing_dimension_bound, subspace_separation, wall_wall_separation, SampleSpec,
    SubspaceKind,
};
use wallcube::{BitSet, Wallspace};

use crate::output::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    /// Fit #(x,y) >= kappa d(x,y) - epsilon.
    Linear,
    BallBall,
    CompactWall,
    WallWall,
    BallWallNbd,
    WallNbdWallNbd,
    /// Packing number of subsets, or of wall loci bounding the dimension.
    Packing,
    /// Hemiwallspace induced by a peripheral set, with its dual subcomplex.
    Hemi,
    /// Vertex degrees of the dual complex.
    Degree,
    /// Powers of a partial action against one wall.
    Axis,
    /// Whether a partial action preserves metric, separation and the dual.
    Equivariance,
}

/// Parameters for every property; each property reads the ones it needs.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    pub r: Option<u64>,
    pub eps_max: Option<u64>,
    pub pairs: Option<Vec<(String, String)>>,
    #[serde(rename = "K")]
    pub k: Option<Vec<String>>,
    #[serde(rename = "Y")]
    pub y: Option<Vec<String>>,
    pub osculating_only: bool,
    pub subsets: Option<Vec<Vec<String>>>,
    pub d: Option<u64>,
    #[serde(rename = "P")]
    pub p: Option<Vec<String>>,
    pub variant: Option<String>,
    pub tau: Option<f64>,
    pub action: Option<Vec<(String, String)>>,
    pub element: Option<String>,
    pub wall: Option<i64>,
    pub n_max: Option<i64>,
}

impl Params {
    pub fn parse(s: Option<&str>) -> Result<Self, Failure> {
        let Some(s) = s else { return Ok(Self::default()) };
        let text = match s.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?,
            None => s.to_string(),
        };
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("--params: {e}")))
    }
}

fn point_set(ws: &Wallspace, names: &[String]) -> Result<BitSet, Failure> {
    let ids = names.iter().map(|n| ws.point(n)).collect::<wallcube::Result<Vec<_>>>()?;
    Ok(BitSet::from_indices(ws.num_points(), ids))
}

fn action(ws: &Wallspace, p: &Params) -> Result<ActionMap, Failure> {
    let pairs = p.action.as_ref().ok_or_else(|| Failure::input("this property needs \"action\": [[from, to], ...]"))?;
    Ok(ActionMap::from_names(ws, p.element.clone().unwrap_or_else(|| "g".into()), pairs)?)
}

/// Variant from its name, defaulting `tau` to half the diameter and the
/// radius to the whole diameter.
fn variant(ws: &Wallspace, p: &Params) -> Result<InducedVariant, Failure> {
    let name = p.variant.as_deref().unwrap_or("U0");
    let diam = ws.metric().map(|m| m.diameter() as f64);
    let need = |what: &str| Failure::input(format!("variant {name} needs a metric or an explicit {what}"));
    let tau = match p.tau {
        Some(t) => Some(t),
        None => diam.map(|d| (d / 2.0).max(1.0)),
    };
    let doc = HemiDoc {
        variant: name.to_string(),
        r: p.r.map(|r| r as f64).or(if name == "Ustar" { diam } else { None }),
        tau,
        p: Vec::new(),
        fixed: Vec::new(),
        independent: Vec::new(),
    };
    match doc.variant() {
        Ok(Some(v)) => Ok(v),
        Ok(None) => Err(Failure::input("variant \"explicit\" cannot be induced")),
        Err(_) if doc.r.is_none() => Err(need("r")),
        Err(_) => Err(need("tau")),
    }
}

pub fn run(
    ws: &Wallspace,
    property: Property,
    p: &Params,
    seed: u64,
    opts: &BuildOptions,
    basepoint: usize,
) -> Result<(Value, bool), Failure> {
    let dual = || -> Result<CubeComplex, Failure> { Ok(build_dual(ws, basepoint, opts)?) };
    let r = p.r.unwrap_or(0);
    let value = match property {
        Property::Linear => {
            let sample = match &p.pairs {
                Some(pairs) => SampleSpec::Explicit(
                    pairs
                        .iter()
                        .map(|(a, b)| Ok((ws.point(a)?, ws.point(b)?)))
                        .collect::<wallcube::Result<_>>()?,
                ),
                None => SampleSpec::Default { seed },
            };
            json!(linear_separation_fit(ws, &sample, p.eps_max.unwrap_or(0))?)
        }
        Property::BallBall => json!(ball_ball_separation(ws, r)?),
        Property::CompactWall => {
            let k = p.k.as_ref().ok_or_else(|| Failure::input("compact-wall needs \"K\": [points]"))?;
            json!(compact_wall_separation(ws, &point_set(ws, k)?)?)
        }
        Property::WallWall => json!(wall_wall_separation(ws)?),
        Property::BallWallNbd | Property::WallNbdWallNbd => {
            let y = match &p.y {
                Some(y) => point_set(ws, y)?,
                None => ws.full_set(),
            };
            let kind = if property == Property::BallWallNbd {
                SubspaceKind::BallWallNbd
            } else {
                SubspaceKind::WallNbdWallNbd {
                    osculating_only: p.osculating_only,
                }
            };
            json!(subspace_separation(ws, &y, kind, r)?)
        }
        Property::Packing => match (&p.subsets, p.d) {
            (Some(subsets), Some(d)) => {
                let sets = subsets.iter().map(|s| point_set(ws, s)).collect::<Result<Vec<_>, _>>()?;
                json!(bounded_packing_number(ws.require_metric()?, &sets, d)?)
            }
            (None, None) => {
                let cc = dual()?;
                json!({ "bound": packing_dimension_bound(ws)?, "dimension": cc.dimension() })
            }
            _ => return Err(Failure::input("packing needs both \"subsets\" and \"d\", or neither")),
        },
        Property::Hemi => {
            let pset = point_set(ws, p.p.as_ref().ok_or_else(|| Failure::input("hemi needs \"P\": [points]"))?)?;
            let h = induce_hemi(ws, &pset, variant(ws, p)?)?;
            let cc = dual()?;
            let sub = dual_sub(&cc, &h)?;
            let convex = is_convex(&cc, &sub);
            json!({
                "hemiwallspace": HemiDoc::from_hemi(ws, &h),
                "subcomplex_vertices": sub.len(),
                "convex": convex.convex,
                "witness": convex.witness,
            })
        }
        Property::Degree => json!(degree_profile(&dual()?)),
        Property::Axis => {
            let g = action(ws, p)?;
            let label = p.wall.ok_or_else(|| Failure::input("axis needs \"wall\": label"))?;
            let w = ws
                .wall_by_label(label)
                .ok_or_else(|| Failure::input(format!("no wall labelled {label}")))?;
            let cc = if g.is_total() { Some(dual()?) } else { None };
            json!(axis_cut_test(ws, &g, w, p.n_max.unwrap_or(4), cc.as_ref())?)
        }
        Property::Equivariance => {
            let g = action(ws, p)?;
            let rep = verify_equivariance(ws, &g, &dual()?, opts)?;
            let ok = rep.ok;
            return Ok((json!(rep), ok));
        }
    };
    Ok((value, true))
}
