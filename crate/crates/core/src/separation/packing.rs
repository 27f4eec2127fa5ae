use serde::Serialize;

use crate::bitset::BitSet;
use crate::clique::maximum_clique;
use crate::error::Result;
use crate::metric::Metric;
use crate::wallspace::Wallspace;

use super::wall_locus;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PackingReport {
    pub d: u64,
    /// Largest number of the subsets that are pairwise `d`-close.
    pub k: usize,
    /// Indices of a family achieving `k`.
    pub witness_family: Vec<usize>,
}

/// Largest pairwise `d`-close family, where two sets are `d`-close when
/// their distance is strictly below `d`. Empty sets are close to nothing.
pub fn bounded_packing_number(metric: &Metric, subsets: &[BitSet], d: u64) -> Result<PackingReport> {
    let n = subsets.len();
    let mut adj = vec![BitSet::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if metric.set_distance(&subsets[i], &subsets[j]).is_some_and(|x| x < d) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let live = BitSet::from_indices(n, (0..n).filter(|&i| !subsets[i].is_empty()));
    let witness_family = maximum_clique(&adj, &live);
    Ok(PackingReport {
        d,
        k: witness_family.len(),
        witness_family,
    })
}

/// Largest distance between the loci of two transverse walls; `None` when
/// no pair is transverse or a transverse wall is unmeasurable.
pub fn transverse_distance_threshold(ws: &Wallspace) -> Result<Option<u64>> {
    let m = ws.require_metric()?;
    let mut best = None;
    for i in 0..ws.num_walls() {
        for j in i + 1..ws.num_walls() {
            if !ws.is_transverse(i, j) {
                continue;
            }
            let (Some(a), Some(b)) = (wall_locus(ws, m, i), wall_locus(ws, m, j)) else {
                return Ok(None);
            };
            let d = m.set_distance(&a, &b).expect("loci are nonempty");
            best = Some(best.map_or(d, |x: u64| x.max(d)));
        }
    }
    Ok(best)
}

/// Packing number of the wall loci at one past the transverse threshold.
/// Pairwise transverse walls are pairwise close there, so this bounds the
/// dimension of the dual complex. `None` if some nonvacuous wall has no locus.
pub fn packing_dimension_bound(ws: &Wallspace) -> Result<Option<PackingReport>> {
    let m = ws.require_metric()?;
    let d = transverse_distance_threshold(ws)?.unwrap_or(0) + 1;
    let mut loci = Vec::new();
    for w in 0..ws.num_walls() {
        if ws.wall(w).is_vacuous() {
            continue;
        }
        match wall_locus(ws, m, w) {
            Some(l) => loci.push(l),
            None => return Ok(None),
        }
    }
    bounded_packing_number(m, &loci, d).map(Some)
}
