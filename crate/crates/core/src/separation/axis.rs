use serde::Serialize;

use crate::action::ActionMap;
use crate::dual::CubeComplex;
use crate::error::Result;
use crate::wallspace::Wallspace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisCutStep {
    pub n: i64,
    /// Label of `g^n W`; `None` when the truncated translate is vacuous.
    pub image: Option<i64>,
    pub distinct: Option<bool>,
    pub left_meets: Option<bool>,
    pub right_meets: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "vertex")]
pub enum FixedVertex {
    Found(usize),
    NoneFixed,
    /// The action is partial, so `c -> gc` is not a map of the complex.
    NotEvaluated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxisCutReport {
    pub element: String,
    pub wall: i64,
    pub n_max: i64,
    pub steps: Vec<AxisCutStep>,
    /// Conditions (distinct, both halfspace overlaps) at every defined power.
    pub premises_hold: bool,
    pub defined_powers: usize,
    /// Labels of the distinct translates found.
    pub translates: Vec<i64>,
    pub translates_pairwise_transverse: bool,
    pub non_transverse_pairs: Vec<(i64, i64)>,
    pub fixed_vertex: FixedVertex,
    pub caveat: &'static str,
}

const CAVEAT: &str = "only the hypotheses and the transversality of translates are checked; \
an infinite transverse family cannot be exhibited on a finite instance";

/// Evaluates, for `0 < |n| <= n_max`, whether `g^n W != W`, `U ∩ g^n U` and
/// `V ∩ g^n V` are nonempty, using the wall matched by the restricted action.
pub fn axis_cut_test(
    ws: &Wallspace,
    g: &ActionMap,
    w: usize,
    n_max: i64,
    cc: Option<&CubeComplex>,
) -> Result<AxisCutReport> {
    ws.check_wall(w)?;
    let perm = g.wall_permutation(ws)?;
    let wall = ws.wall(w);
    let mut steps = Vec::new();
    let mut translates = vec![w];
    for n in (-n_max..=n_max).filter(|&n| n != 0) {
        let step = match g.power(n).wall_image(ws, w)? {
            None => AxisCutStep {
                n,
                image: None,
                distinct: None,
                left_meets: None,
                right_meets: None,
            },
            Some((k, flip)) => {
                let img = ws.wall(k);
                let (u2, v2) = if flip { (&img.right, &img.left) } else { (&img.left, &img.right) };
                if !translates.contains(&k) {
                    translates.push(k);
                }
                AxisCutStep {
                    n,
                    image: Some(img.label),
                    distinct: Some(k != w),
                    left_meets: Some(wall.left.intersects(u2)),
                    right_meets: Some(wall.right.intersects(v2)),
                }
            }
        };
        steps.push(step);
    }
    let defined: Vec<&AxisCutStep> = steps.iter().filter(|s| s.image.is_some()).collect();
    let premises_hold = !defined.is_empty()
        && defined
            .iter()
            .all(|s| s.distinct == Some(true) && s.left_meets == Some(true) && s.right_meets == Some(true));
    translates.sort_unstable();
    let mut non_transverse_pairs = Vec::new();
    for (a, &i) in translates.iter().enumerate() {
        for &j in &translates[a + 1..] {
            if !ws.is_transverse(i, j) {
                non_transverse_pairs.push((ws.wall(i).label, ws.wall(j).label));
            }
        }
    }
    let fixed_vertex = match cc {
        Some(cc) if g.is_total() => {
            let moved = |o: &crate::bitset::BitSet| {
                perm.iter()
                    .enumerate()
                    .any(|(v, img)| img.is_some_and(|(k, flip)| o.contains(k) != (o.contains(v) ^ flip)))
            };
            match (0..cc.vertices().len()).find(|&v| !moved(cc.vertex(v))) {
                Some(v) => FixedVertex::Found(v),
                None => FixedVertex::NoneFixed,
            }
        }
        _ => FixedVertex::NotEvaluated,
    };
    Ok(AxisCutReport {
        element: g.element.clone(),
        wall: wall.label,
        n_max,
        defined_powers: defined.len(),
        steps,
        premises_hold,
        translates: translates.iter().map(|&k| ws.wall(k).label).collect(),
        translates_pairwise_transverse: non_transverse_pairs.is_empty(),
        non_transverse_pairs,
        fixed_vertex,
        caveat: CAVEAT,
    })
}
