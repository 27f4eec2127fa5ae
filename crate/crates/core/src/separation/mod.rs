//! Metric separation diagnostics on finite wallspaces.
//!
//! Each property asks for a constant beyond which far-apart objects are
//! separated by a wall. On a finite instance the least such constant always
//! exists, so a report [fails](Verdict::Fails) when that constant only works
//! vacuously: every unseparated item sits at the largest distance measured.

mod axis;
mod linear;
mod packing;
mod threshold;

pub use axis::{axis_cut_test, AxisCutReport, AxisCutStep, FixedVertex};
pub use linear::{linear_separation_fit, LinearFit, PairSample, SampleSpec, DEFAULT_PAIR_LIMIT, KAPPA_DENOMINATOR};
pub use packing::{bounded_packing_number, packing_dimension_bound, transverse_distance_threshold, PackingReport};
pub use threshold::{
    ball_ball_separation, compact_wall_separation, subspace_separation, wall_wall_separation, SubspaceKind,
};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::metric::Metric;
use crate::wallspace::Wallspace;

/// How distances to abstract walls are measured, recorded in every report.
pub const WALL_DISTANCE_CONVENTION: &str =
    "distance to a wall is measured to its carrier U∩V when nonempty, otherwise to the union of the frontiers of U and V";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Property {
    LinearSeparation,
    BallBall,
    CompactWall,
    WallWall,
    BallWallNbd,
    WallNbdWallNbd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    HoldsAtScale,
    Fails,
}

/// An item (point pair, point and wall, wall pair) left unseparated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub items: Vec<String>,
    pub distance: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationReport {
    pub property: Property,
    pub parameters: serde_json::Value,
    /// Least constant making the property hold on this instance.
    pub constant: u64,
    pub verdict: Verdict,
    pub items_checked: usize,
    pub unseparated: usize,
    /// Unseparated items at the binding distance, sorted.
    pub witnesses: Vec<Witness>,
    /// Walls with no carrier and no frontier, excluded from distance tests.
    pub unmeasurable_walls: Vec<i64>,
    pub convention: &'static str,
}

pub(crate) struct Item {
    pub names: Vec<String>,
    pub distance: u64,
    pub separated: bool,
}

const MAX_WITNESSES: usize = 64;

/// `strict`: the property reads "d > c implies separated"; otherwise
/// "d >= c implies separated".
pub(crate) fn summarize(
    property: Property,
    parameters: serde_json::Value,
    items: Vec<Item>,
    strict: bool,
    unmeasurable_walls: Vec<i64>,
) -> SeparationReport {
    let max_d = items.iter().map(|i| i.distance).max().unwrap_or(0);
    let bad: Vec<&Item> = items.iter().filter(|i| !i.separated).collect();
    let t = bad.iter().map(|i| i.distance).max();
    let constant = match t {
        None => 0,
        Some(t) if strict => t,
        Some(t) => t + 1,
    };
    let verdict = match t {
        Some(t) if t > 0 && t == max_d => Verdict::Fails,
        _ => Verdict::HoldsAtScale,
    };
    let mut witnesses: Vec<Witness> = bad
        .iter()
        .filter(|i| Some(i.distance) == t)
        .map(|i| Witness {
            items: i.names.clone(),
            distance: i.distance,
        })
        .collect();
    witnesses.sort_by(|a, b| a.items.cmp(&b.items));
    witnesses.truncate(MAX_WITNESSES);
    SeparationReport {
        property,
        parameters,
        constant,
        verdict,
        items_checked: items.len(),
        unseparated: bad.len(),
        witnesses,
        unmeasurable_walls,
        convention: WALL_DISTANCE_CONVENTION,
    }
}

/// The set a wall's distance is measured to; `None` when it is empty.
pub fn wall_locus(ws: &Wallspace, metric: &Metric, w: usize) -> Option<BitSet> {
    let wall = ws.wall(w);
    let carrier = wall.carrier();
    if !carrier.is_empty() {
        return Some(carrier);
    }
    let f = metric.frontier(&wall.left, &wall.right).union(&metric.frontier(&wall.right, &wall.left));
    (!f.is_empty()).then_some(f)
}

/// Degree statistics of the dual complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub vertices: usize,
    pub max_degree: usize,
    /// Degree to number of vertices with that degree.
    pub histogram: std::collections::BTreeMap<usize, usize>,
}

pub fn degree_profile(cc: &crate::dual::CubeComplex) -> DegreeProfile {
    let mut histogram = std::collections::BTreeMap::new();
    for v in 0..cc.vertices().len() {
        *histogram.entry(cc.degree(v)).or_insert(0) += 1;
    }
    DegreeProfile {
        vertices: cc.vertices().len(),
        max_degree: cc.max_degree(),
        histogram,
    }
}
