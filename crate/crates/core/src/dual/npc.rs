//! Link condition: every vertex link is a simplicial flag complex.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::clique;

use super::complex::{Cube, CubeComplex, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NpcViolation {
    /// Edge endpoints do not differ in exactly the labelled wall.
    EdgeLabelMismatch { edge: usize, wall: usize, differing: Vec<usize> },
    /// A cube corner pair that should be joined by an edge is not.
    MissingCubeEdge { vertex: usize, cube_walls: Vec<usize>, wall: usize },
    /// Two edges at a vertex reach the same neighbour or cross the same wall.
    RepeatedLinkVertex { vertex: usize, edges: [usize; 2] },
    /// Two cubes at a vertex span the same link simplex.
    RepeatedSimplex { vertex: usize, edges: Vec<usize> },
    /// A face of a link simplex is not itself a simplex.
    MissingFace { vertex: usize, simplex: Vec<usize>, face: Vec<usize> },
    /// Pairwise adjacent link vertices with no simplex spanning them.
    EmptySimplex { vertex: usize, edges: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NpcReport {
    pub ok: bool,
    pub vertices_checked: usize,
    pub violations: Vec<NpcViolation>,
}

pub fn verify_npc(cc: &CubeComplex) -> NpcReport {
    let mut violations = Vec::new();
    for (k, e) in cc.edges().iter().enumerate() {
        let differing = cc.vertex(e.u).symmetric_difference(cc.vertex(e.v)).to_vec();
        if differing != [e.wall] {
            violations.push(NpcViolation::EdgeLabelMismatch {
                edge: k,
                wall: e.wall,
                differing,
            });
        }
    }
    let mut cubes_at: Vec<Vec<usize>> = vec![Vec::new(); cc.vertices().len()];
    for (i, c) in cc.higher_cubes().iter().enumerate() {
        for &v in &c.vertices {
            cubes_at[v].push(i);
        }
    }
    for v in 0..cc.vertices().len() {
        check_vertex(cc, v, &cubes_at[v], &mut violations);
    }
    NpcReport {
        ok: violations.is_empty(),
        vertices_checked: cc.vertices().len(),
        violations,
    }
}

fn check_vertex(cc: &CubeComplex, v: usize, cubes: &[usize], out: &mut Vec<NpcViolation>) {
    let nb = cc.neighbors(v);
    for i in 0..nb.len() {
        for j in i + 1..nb.len() {
            let (a, b) = (nb[i], nb[j]);
            if a.0 == b.0 || cc.edges()[a.1].wall == cc.edges()[b.1].wall {
                out.push(NpcViolation::RepeatedLinkVertex {
                    vertex: v,
                    edges: [a.1.min(b.1), a.1.max(b.1)],
                });
            }
        }
    }
    // Link vertex = position in `nb`; edge id kept for reporting.
    let pos: HashMap<usize, usize> = nb.iter().enumerate().map(|(i, &(u, _))| (u, i)).collect();
    let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut adj = vec![BitSet::new(nb.len()); nb.len()];
    for &ci in cubes {
        let cube = &cc.higher_cubes()[ci].cube;
        let here = cc.vertex(v);
        let mut simplex = Vec::new();
        for &w in &cube.walls {
            match cc.vertex_id(&here.toggled(w)).and_then(|u| pos.get(&u)) {
                Some(&p) => simplex.push(p),
                None => out.push(NpcViolation::MissingCubeEdge {
                    vertex: v,
                    cube_walls: cube.walls.clone(),
                    wall: w,
                }),
            }
        }
        simplex.sort_unstable();
        if simplex.len() != cube.dim() {
            continue;
        }
        if !simplices.insert(simplex.clone()) {
            out.push(NpcViolation::RepeatedSimplex {
                vertex: v,
                edges: simplex.iter().map(|&p| nb[p].1).collect(),
            });
        }
        if simplex.len() == 2 {
            adj[simplex[0]].insert(simplex[1]);
            adj[simplex[1]].insert(simplex[0]);
        }
    }
    for s in &simplices {
        if s.len() < 3 {
            continue;
        }
        for skip in 0..s.len() {
            let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
            if !simplices.contains(&face) {
                out.push(NpcViolation::MissingFace {
                    vertex: v,
                    simplex: s.iter().map(|&p| nb[p].1).collect(),
                    face: face.iter().map(|&p| nb[p].1).collect(),
                });
            }
        }
    }
    clique::for_each_clique(&adj, &BitSet::full(nb.len()), 3, |c| {
        if !simplices.contains(c) {
            out.push(NpcViolation::EmptySimplex {
                vertex: v,
                edges: c.iter().map(|&p| nb[p].1).collect(),
            });
        }
    });
}

/// Seven corners of a 3-cube with the three squares at the origin and no 3-cube.
pub fn non_flag_corner() -> CubeComplex {
    let vertices: Vec<BitSet> = (0..7usize).map(|m| BitSet::from_indices(3, (0..3).filter(|b| m >> b & 1 == 1))).collect();
    let mut edges = Vec::new();
    for u in 0..7usize {
        for w in 0..3 {
            let v = u ^ (1 << w);
            if u & (1 << w) == 0 && v < 7 {
                edges.push(Edge { u, v, wall: w });
            }
        }
    }
    let origin = BitSet::new(3);
    let cubes = vec![
        Cube::new(vec![0, 1], origin.clone()),
        Cube::new(vec![0, 2], origin.clone()),
        Cube::new(vec![1, 2], origin),
    ];
    CubeComplex::from_parts(3, vertices, edges, cubes).expect("fixture is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::build::{build_dual, BuildOptions};
    use crate::generators;

    #[test]
    fn dual_complexes_pass() {
        for ws in [generators::fig3(), generators::grid(3)] {
            let cc = build_dual(&ws, 0, &BuildOptions::default()).unwrap();
            let r = verify_npc(&cc);
            assert!(r.ok, "{:?}", r.violations);
        }
    }

    #[test]
    fn empty_triangle_is_found() {
        let r = verify_npc(&non_flag_corner());
        assert!(!r.ok);
        assert_eq!(r.violations.len(), 1);
        assert!(matches!(&r.violations[0], NpcViolation::EmptySimplex { vertex: 0, edges } if edges.len() == 3));
    }

    #[test]
    fn corrupted_label_is_found() {
        let cc = build_dual(&generators::fig3(), 0, &BuildOptions::default()).unwrap();
        let mut edges = cc.edges().to_vec();
        edges[0].wall = (edges[0].wall + 1) % cc.num_walls();
        let cubes = cc.higher_cubes().iter().map(|c| c.cube.clone()).collect();
        let broken = CubeComplex::from_parts(cc.num_walls(), cc.vertices().to_vec(), edges, cubes).unwrap();
        let r = verify_npc(&broken);
        assert!(r.violations.iter().any(|v| matches!(v, NpcViolation::EdgeLabelMismatch { edge: 0, .. })));
    }
}
