use std::collections::BTreeSet;

use serde::Serialize;

use crate::action::ActionMap;
use crate::bitset::BitSet;
use crate::error::Result;

use super::{CayleyBall, Element, SubgroupSpec};

/// Left multiplication by `g`, defined where the product stays in the ball.
pub fn left_multiplication(ball: &CayleyBall, g: &Element) -> Result<ActionMap> {
    ActionMap::from_fn(ball.len(), g.to_string(), |x| {
        ball.index_of(&ball.spec.mul(g, &ball.elements[x]))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub size: usize,
    /// Reaches the boundary sphere of the ball.
    pub deep: bool,
    /// Points adjacent to the removed neighbourhood.
    pub frontier_size: usize,
    /// Orbits of the frontier under partial translation by `H` in the ball.
    pub frontier_orbits: usize,
    /// Class of the component under partial translation by `H`.
    pub orbit_class: usize,
    pub sample: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodimOneReport {
    pub radius: u64,
    pub d: u64,
    pub subgroup_in_ball: usize,
    pub neighbourhood_size: usize,
    pub components: Vec<ComponentInfo>,
    pub deep_components: usize,
    /// Number of distinct orbit classes among deep components.
    pub deep_orbit_classes: usize,
    pub caveat: &'static str,
}

const CAVEAT: &str = "deep means reaching the sphere of the ball; every conclusion holds at this radius only";

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a.max(b)] = a.min(b);
    }
}

/// Components of the ball minus the `d`-neighbourhood of `H`, with the
/// statistics used to judge whether `H` separates the group.
pub fn codim_one_analysis(ball: &CayleyBall, h: &SubgroupSpec, d: u64) -> Result<CodimOneReport> {
    let n = ball.len();
    let mut h_elems = Vec::new();
    for x in 0..n {
        if h.contains(&ball.spec, &ball.elements[x])? {
            h_elems.push(x);
        }
    }
    let hset = BitSet::from_indices(n, h_elems.iter().copied());
    let nbhd = ball.metric.neighborhood(&hset, d);
    let comps = ball.metric.components(&nbhd.complement());
    let mut owner = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for x in c.iter() {
            owner[x] = i;
        }
    }
    let translate = |g: usize, x: usize| ball.index_of(&ball.spec.mul(&ball.elements[g], &ball.elements[x]));
    let mut classes = UnionFind::new(comps.len());
    for &g in &h_elems {
        for x in 0..n {
            if owner[x] == usize::MAX {
                continue;
            }
            if let Some(y) = translate(g, x).filter(|&y| owner[y] != usize::MAX) {
                classes.union(owner[x], owner[y]);
            }
        }
    }
    let mut components = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let frontier = ball.metric.frontier(c, &nbhd);
        let mut uf = UnionFind::new(n);
        for &g in &h_elems {
            for x in frontier.iter() {
                if let Some(y) = translate(g, x).filter(|&y| frontier.contains(y)) {
                    uf.union(x, y);
                }
            }
        }
        let orbits: BTreeSet<usize> = frontier.iter().map(|x| uf.find(x)).collect();
        components.push(ComponentInfo {
            size: c.count(),
            deep: c.iter().any(|x| ball.on_sphere(x)),
            frontier_size: frontier.count(),
            frontier_orbits: orbits.len(),
            orbit_class: classes.find(i),
            sample: ball.elements[c.first().expect("components are nonempty")].to_string(),
        });
    }
    let deep: Vec<&ComponentInfo> = components.iter().filter(|c| c.deep).collect();
    let deep_orbit_classes = deep.iter().map(|c| c.orbit_class).collect::<BTreeSet<_>>().len();
    Ok(CodimOneReport {
        radius: ball.radius,
        d,
        subgroup_in_ball: h_elems.len(),
        neighbourhood_size: nbhd.count(),
        deep_components: deep.len(),
        deep_orbit_classes,
        components,
        caveat: CAVEAT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cayley_ball, GroupSpec};

    #[test]
    fn plane_minus_a_line() {
        let ball = cayley_ball(&GroupSpec::FreeAbelian { rank: 2 }, 4, 1000).unwrap();
        let r = codim_one_analysis(&ball, &SubgroupSpec::Coordinate { axes: vec![0] }, 0).unwrap();
        assert_eq!(r.deep_components, 2);
        assert_eq!(r.deep_orbit_classes, 2);
    }

    #[test]
    fn free_group_axis_branches_grow() {
        let f2 = GroupSpec::Free { rank: 2 };
        let mut last = 0;
        for r in [3, 4, 5] {
            let ball = cayley_ball(&f2, r, 10_000).unwrap();
            let rep = codim_one_analysis(&ball, &SubgroupSpec::Factor { index: 0 }, 0).unwrap();
            assert_eq!(rep.deep_components, 2 * (2 * r as usize - 1));
            assert_eq!(rep.deep_orbit_classes, 2);
            assert!(rep.deep_components > last);
            last = rep.deep_components;
        }
    }

    #[test]
    fn whole_group_leaves_nothing() {
        let ball = cayley_ball(&GroupSpec::Free { rank: 2 }, 2, 1000).unwrap();
        let r = codim_one_analysis(&ball, &SubgroupSpec::Whole, 0).unwrap();
        assert!(r.components.is_empty());
    }

    #[test]
    fn translation_is_partial() {
        let ball = cayley_ball(&GroupSpec::FreeAbelian { rank: 1 }, 2, 1000).unwrap();
        let g = left_multiplication(&ball, &ball.spec.parse("a").unwrap()).unwrap();
        assert_eq!(g.domain().count(), 4);
    }
}
