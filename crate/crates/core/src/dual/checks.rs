//! Structural checks tying the dual complex back to its wallspace.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::wallspace::Wallspace;

use super::complex::{Cube, CubeComplex};
use super::order;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub ok: bool,
    pub maximal_cubes: usize,
    pub families: usize,
    /// Wall sets of maximal cubes that are not maximal transverse families.
    pub unmatched_cubes: Vec<Vec<usize>>,
    /// Families with no maximal cube.
    pub unmatched_families: Vec<Vec<usize>>,
    /// Wall sets carried by more than one maximal cube.
    pub repeated: Vec<Vec<usize>>,
}

/// Compares maximal cubes with maximal transverse families of nonvacuous
/// walls. With no nonvacuous walls the single vertex matches the empty family.
pub fn maximal_bijection(ws: &Wallspace, cc: &CubeComplex) -> BijectionReport {
    let (mut fams, _) = ws.max_transverse_families();
    if fams.is_empty() {
        fams.push(Vec::new());
    }
    let fam_set: BTreeSet<Vec<usize>> = fams.iter().cloned().collect();
    let cubes = cc.maximal_cubes();
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in &cubes {
        *seen.entry(c.walls.clone()).or_default() += 1;
    }
    let unmatched_cubes = seen.keys().filter(|k| !fam_set.contains(*k)).cloned().collect::<Vec<_>>();
    let unmatched_families = fams.iter().filter(|f| !seen.contains_key(*f)).cloned().collect::<Vec<_>>();
    let repeated = seen.iter().filter(|(_, &n)| n > 1).map(|(k, _)| k.clone()).collect::<Vec<_>>();
    BijectionReport {
        ok: unmatched_cubes.is_empty() && unmatched_families.is_empty() && repeated.is_empty(),
        maximal_cubes: cubes.len(),
        families: fams.len(),
        unmatched_cubes,
        unmatched_families,
        repeated,
    }
}

/// Edges dual to walls `i` and `j` meet at a vertex without spanning a square.
pub fn hyperplanes_osculate(cc: &CubeComplex, i: usize, j: usize) -> bool {
    (0..cc.vertices().len()).any(|v| {
        let labels: Vec<usize> = cc.neighbors(v).iter().map(|&(_, e)| cc.edges()[e].wall).collect();
        labels.contains(&i) && labels.contains(&j) && cc.square_at(v, i, j).is_none()
    })
}

/// A vertex with a flippable wall whose oriented pair is not minimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConverseWitness {
    pub vertex: usize,
    pub wall: usize,
    /// A wall whose oriented pair strictly precedes that of `wall`.
    pub below: usize,
}

pub fn converse_witness(ws: &Wallspace, cc: &CubeComplex) -> Option<ConverseWitness> {
    let all: Vec<usize> = (0..ws.num_walls()).collect();
    for (v, o) in cc.vertices().iter().enumerate() {
        for &(_, e) in cc.neighbors(v) {
            let w = cc.edges()[e].wall;
            let p = order::oriented_pair(ws, o, w);
            if let Some(&below) = all
                .iter()
                .find(|&&u| u != w && order::strictly_precedes(order::oriented_pair(ws, o, u), p))
            {
                return Some(ConverseWitness { vertex: v, wall: w, below });
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperplaneProfile {
    /// Number of dual edges per wall (walls with none are omitted).
    pub edges_per_wall: BTreeMap<usize, usize>,
    pub degrees: Vec<usize>,
    pub max_degree: usize,
}

pub fn hyperplane_profile(cc: &CubeComplex) -> HyperplaneProfile {
    let degrees: Vec<usize> = (0..cc.vertices().len()).map(|v| cc.degree(v)).collect();
    HyperplaneProfile {
        edges_per_wall: cc.hyperplanes().into_iter().map(|(w, es)| (w, es.len())).collect(),
        max_degree: degrees.iter().copied().max().unwrap_or(0),
        degrees,
    }
}

/// Canonical cube of every point, in point order.
pub fn canonical_cubes(ws: &Wallspace) -> Vec<Cube> {
    (0..ws.num_points())
        .map(|x| super::build::canonical_cube(ws, x).expect("point in range"))
        .collect()
}
