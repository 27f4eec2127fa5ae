use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::metric::Metric;

use super::{Element, GroupSpec};

/// The ball of a given radius about the identity in the Cayley graph.
/// Points are listed in breadth-first order over the canonical generators.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub spec: GroupSpec,
    pub radius: u64,
    pub elements: Vec<Element>,
    index: HashMap<Element, usize>,
    /// Undirected edges `(x, x s)` with the generator label seen from `x`.
    pub edges: Vec<(usize, usize, String)>,
    pub metric: Metric,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn names(&self) -> Vec<String> {
        self.elements.iter().map(Element::to_string).collect()
    }

    /// Points of the boundary sphere.
    pub fn on_sphere(&self, x: usize) -> bool {
        self.spec.length(&self.elements[x]) == self.radius
    }
}

/// Enumerates the ball, refusing more than `max_points` elements.
pub fn cayley_ball(spec: &GroupSpec, radius: u64, max_points: usize) -> Result<CayleyBall> {
    spec.validate()?;
    let gens = spec.generators();
    let mut elements = vec![spec.identity()];
    let mut index = HashMap::from([(spec.identity(), 0)]);
    let mut edge_set = BTreeSet::new();
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (label, s) in &gens {
            let y = spec.mul(&elements[x], s);
            if spec.length(&y) > radius {
                continue;
            }
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    if elements.len() >= max_points {
                        return Err(Error::cap("Cayley ball points", max_points));
                    }
                    let j = elements.len();
                    index.insert(y.clone(), j);
                    elements.push(y);
                    queue.push_back(j);
                    j
                }
            };
            if edge_set.insert((x.min(j), x.max(j))) {
                edges.push((x, j, label.clone()));
            }
        }
    }
    let n = elements.len();
    let weighted: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b, _)| (a, b, 1)).collect();
    let table: Vec<Vec<u64>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| spec.distance(a, b)).collect())
        .collect();
    let path = Metric::from_edges(n, &weighted)?;
    let metric = if path.table() == table.as_slice() {
        path
    } else {
        Metric::from_table(&weighted, table)?
    };
    Ok(CayleyBall {
        spec: spec.clone(),
        radius,
        elements,
        index,
        edges,
        metric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_sizes() {
        let z2 = GroupSpec::FreeAbelian { rank: 2 };
        assert_eq!(cayley_ball(&z2, 2, 1000).unwrap().len(), 13);
        let f2 = GroupSpec::Free { rank: 2 };
        for (r, size) in [(0, 1), (1, 5), (2, 17), (3, 53)] {
            assert_eq!(cayley_ball(&f2, r, 1000).unwrap().len(), size);
        }
        assert!(matches!(cayley_ball(&f2, 3, 20), Err(Error::StateSpaceCap { .. })));
    }

    #[test]
    fn word_metric_matches_paths_in_free_groups() {
        let f2 = GroupSpec::Free { rank: 2 };
        let b = cayley_ball(&f2, 3, 1000).unwrap();
        assert!(!b.metric.is_explicit());
        assert_eq!(b.edges.len(), b.len() - 1);
    }

    #[test]
    fn free_product_with_torsion() {
        let g = GroupSpec::FreeProduct { orders: vec![2, 3] };
        let b = cayley_ball(&g, 2, 1000).unwrap();
        // e; a, b, B; ab, aB, ba, Ba.
        assert_eq!(b.len(), 8);
        assert!(b.on_sphere(b.index_of(&g.parse("ab").unwrap()).unwrap()));
    }
}
