use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::wallspace::Wallspace;

use super::{summarize, wall_locus, Item, Property, SeparationReport};

/// Least `m` such that points more than `m` apart have radius-`r` balls in
/// distinct open halfspaces of some wall.
pub fn ball_ball_separation(ws: &Wallspace, r: u64) -> Result<SeparationReport> {
    let m = ws.require_metric()?;
    let n = ws.num_points();
    let balls: Vec<BitSet> = (0..n)
        .map(|x| m.neighborhood(&BitSet::from_indices(n, [x]), r))
        .collect();
    let mut items = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            items.push(Item {
                names: vec![ws.point_name(x).into(), ws.point_name(y).into()],
                distance: m.d(x, y),
                separated: ws.sets_separated(&balls[x], &balls[y]).is_some(),
            });
        }
    }
    Ok(summarize(Property::BallBall, json!({ "r": r }), items, true, Vec::new()))
}

/// Least `f` such that every wall at distance at least `f` from `k` is
/// separated from `k` by another wall: `k` in one open halfspace of the
/// separating wall and a closed halfspace of the far wall in the other.
pub fn compact_wall_separation(ws: &Wallspace, k: &BitSet) -> Result<SeparationReport> {
    let m = ws.require_metric()?;
    if k.is_empty() {
        return Err(Error::Invalid("compact set is empty".into()));
    }
    let mut items = Vec::new();
    let mut unmeasurable = Vec::new();
    for w in 0..ws.num_walls() {
        let Some(locus) = wall_locus(ws, m, w) else {
            unmeasurable.push(ws.wall(w).label);
            continue;
        };
        items.push(Item {
            names: vec![ws.wall(w).label.to_string()],
            distance: m.set_distance(k, &locus).expect("both sets nonempty"),
            separated: (0..ws.num_walls()).any(|s| s != w && ws.separates_set_from_wall(s, k, w)),
        });
    }
    let names: Vec<&str> = k.iter().map(|x| ws.point_name(x)).collect();
    Ok(summarize(Property::CompactWall, json!({ "K": names }), items, false, unmeasurable))
}

/// Least `D` such that walls more than `D` apart are separated by a third
/// wall. Transverse pairs are never separated.
pub fn wall_wall_separation(ws: &Wallspace) -> Result<SeparationReport> {
    let m = ws.require_metric()?;
    let mut unmeasurable = Vec::new();
    let mut loci = Vec::new();
    for w in 0..ws.num_walls() {
        match wall_locus(ws, m, w) {
            Some(l) => loci.push((w, l)),
            None => unmeasurable.push(ws.wall(w).label),
        }
    }
    let mut items = Vec::new();
    for (a, (i, li)) in loci.iter().enumerate() {
        for (j, lj) in &loci[a + 1..] {
            let separated = (0..ws.num_walls()).any(|k| k != *i && k != *j && ws.separates_unchecked(k, *i, *j));
            items.push(Item {
                names: vec![ws.wall(*i).label.to_string(), ws.wall(*j).label.to_string()],
                distance: m.set_distance(li, lj).expect("loci are nonempty"),
                separated,
            });
        }
    }
    Ok(summarize(Property::WallWall, json!({}), items, true, unmeasurable))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubspaceKind {
    BallWallNbd,
    /// `osculating_only` restricts to osculating wall pairs.
    WallNbdWallNbd { osculating_only: bool },
}

/// Separation inside a connected subspace `y` by walls induced on `y`:
/// radius-`r` neighbourhoods (of a point of `y` and a wall, or of two walls)
/// intersected with `y`. Empty intersections are separated vacuously.
pub fn subspace_separation(ws: &Wallspace, y: &BitSet, kind: SubspaceKind, r: u64) -> Result<SeparationReport> {
    let m = ws.require_metric()?;
    if m.components(y).len() != 1 {
        return Err(Error::Invalid("subspace is not connected".into()));
    }
    let sub = ws.subwallspace(y)?;
    let to_sub = |s: &BitSet| {
        BitSet::from_indices(
            sub.point_map.len(),
            sub.point_map.iter().enumerate().filter(|(_, &p)| s.contains(p)).map(|(i, _)| i),
        )
    };
    let mut unmeasurable = Vec::new();
    let nbhd: Vec<Option<BitSet>> = (0..ws.num_walls())
        .map(|w| {
            let l = wall_locus(ws, m, w);
            if l.is_none() {
                unmeasurable.push(ws.wall(w).label);
            }
            l.map(|l| m.neighborhood(&l, r).intersection(y))
        })
        .collect();
    let mut items = Vec::new();
    let mut check = |names: Vec<String>, a: &BitSet, b: &BitSet| {
        if a.is_empty() || b.is_empty() {
            return;
        }
        items.push(Item {
            names,
            distance: m.set_distance(a, b).expect("nonempty"),
            separated: sub.ws.sets_separated(&to_sub(a), &to_sub(b)).is_some(),
        });
    };
    let label = |w: usize| ws.wall(w).label.to_string();
    match kind {
        SubspaceKind::BallWallNbd => {
            for q in y.iter() {
                let ball = m.neighborhood(&BitSet::from_indices(ws.num_points(), [q]), r).intersection(y);
                for (w, nb) in nbhd.iter().enumerate() {
                    if let Some(nb) = nb {
                        check(vec![ws.point_name(q).into(), label(w)], &ball, nb);
                    }
                }
            }
        }
        SubspaceKind::WallNbdWallNbd { osculating_only } => {
            for i in 0..ws.num_walls() {
                for j in i + 1..ws.num_walls() {
                    if osculating_only && !ws.osculate_unchecked(i, j) {
                        continue;
                    }
                    if let (Some(a), Some(b)) = (&nbhd[i], &nbhd[j]) {
                        check(vec![label(i), label(j)], a, b);
                    }
                }
            }
        }
    }
    let (property, params) = match kind {
        SubspaceKind::BallWallNbd => (Property::BallWallNbd, json!({ "r": r })),
        SubspaceKind::WallNbdWallNbd { osculating_only } => (
            Property::WallNbdWallNbd,
            json!({ "r": r, "osculating_only": osculating_only }),
        ),
    };
    let mut report = summarize(property, params, items, true, unmeasurable);
    report.parameters["Y"] = json!(y.iter().map(|x| ws.point_name(x)).collect::<Vec<_>>());
    Ok(report)
}
