//! Wallspaces whose walls are subgraphs separating a connected graph in two.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::wallspace::{Wall, Wallspace};

/// Builds the wallspace of a connected unit-weight graph and wall subgraphs.
/// Each wall subgraph must be connected and its removal must leave exactly
/// two components `U`, `V`; the halfspaces are `W ∪ U` and `W ∪ V`, with
/// `U` the component holding the smaller vertex index.
pub fn from_geometric_walls(
    points: Vec<String>,
    edges: &[(usize, usize)],
    walls: &[BitSet],
) -> Result<Wallspace> {
    let n = points.len();
    let weighted: Vec<(usize, usize, u64)> = edges.iter().map(|&(a, b)| (a, b, 1)).collect();
    let metric = Metric::from_edges(n, &weighted).map_err(|_| Error::Invalid("graph is not connected".into()))?;
    let mut out = Vec::with_capacity(walls.len());
    for (i, w) in walls.iter().enumerate() {
        if w.domain() != n {
            return Err(Error::Invalid(format!("wall subgraph {i} is not over the vertex set")));
        }
        if metric.components(w).len() != 1 {
            return Err(Error::NotConnected(i));
        }
        let comps = metric.components(&w.complement());
        if comps.len() != 2 {
            return Err(Error::WrongComponentCount {
                wall: i,
                count: comps.len(),
            });
        }
        out.push(Wall::new(i as i64, w.union(&comps[0]), w.union(&comps[1])));
    }
    Wallspace::new(points, out, Some(metric))
}
