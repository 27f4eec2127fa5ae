//! Integer path metrics on finite point sets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A finite metric given by a weighted graph, optionally with an explicit
/// distance table that overrides the graph's path lengths.
///
/// The graph is kept even when a table is supplied: wall frontiers are
/// defined through adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metric {
    edges: Vec<(usize, usize, u64)>,
    adjacency: Vec<Vec<(usize, u64)>>,
    dist: Vec<Vec<u64>>,
    explicit: bool,
}

fn adjacency_of(n: usize, edges: &[(usize, usize, u64)]) -> Result<Vec<Vec<(usize, u64)>>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, w) in edges {
        if a >= n || b >= n {
            return Err(Error::InvalidMetric(format!("edge ({a},{b}) outside ground set")));
        }
        if w == 0 && a != b {
            return Err(Error::InvalidMetric(format!("edge ({a},{b}) has zero weight")));
        }
        if a == b {
            continue;
        }
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup_by_key(|e| e.0);
    }
    Ok(adj)
}

fn dijkstra(adj: &[Vec<(usize, u64)>], src: usize) -> Vec<u64> {
    let mut d = vec![u64::MAX; adj.len()];
    d[src] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, src))]);
    while let Some(Reverse((du, u))) = heap.pop() {
        if du > d[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = du + w;
            if nd < d[v] {
                d[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
    d
}

impl Metric {
    /// Path metric of a connected weighted graph on `n` points.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let adjacency = adjacency_of(n, edges)?;
        let mut dist = Vec::with_capacity(n);
        for s in 0..n {
            let row = dijkstra(&adjacency, s);
            if let Some(t) = row.iter().position(|&x| x == u64::MAX) {
                return Err(Error::InvalidMetric(format!(
                    "graph is disconnected: no path from point {s} to point {t}"
                )));
            }
            dist.push(row);
        }
        Ok(Self {
            edges: edges.to_vec(),
            adjacency,
            dist,
            explicit: false,
        })
    }

    /// Explicit distance table plus an adjacency graph used for frontiers.
    /// The table must satisfy the metric axioms.
    pub fn from_table(edges: &[(usize, usize, u64)], table: Vec<Vec<u64>>) -> Result<Self> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMetric("distance table is not square".into()));
        }
        for x in 0..n {
            if table[x][x] != 0 {
                return Err(Error::InvalidMetric(format!("d({x},{x}) != 0")));
            }
            for y in 0..n {
                if table[x][y] != table[y][x] {
                    return Err(Error::InvalidMetric(format!("d({x},{y}) is not symmetric")));
                }
                if x != y && table[x][y] == 0 {
                    return Err(Error::InvalidMetric(format!("d({x},{y}) = 0 for distinct points")));
                }
            }
        }
        for z in 0..n {
            for x in 0..n {
                for y in 0..n {
                    if table[x][y] > table[x][z] + table[z][y] {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails for ({x},{y}) via {z}"
                        )));
                    }
                }
            }
        }
        let adjacency = adjacency_of(n, edges)?;
        let path = Self::from_edges(n, edges).ok();
        let explicit = path.map_or(true, |p| p.dist != table);
        Ok(Self {
            edges: edges.to_vec(),
            adjacency,
            dist: table,
            explicit,
        })
    }

    /// Restriction of the metric to `subset`, reindexed in increasing order.
    /// Distances stay ambient; adjacency is the induced subgraph.
    pub fn restrict(&self, subset: &BitSet) -> Self {
        let idx: Vec<usize> = subset.to_vec();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &p) in idx.iter().enumerate() {
            pos[p] = i;
        }
        let edges: Vec<(usize, usize, u64)> = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| pos[a] != usize::MAX && pos[b] != usize::MAX)
            .map(|&(a, b, w)| (pos[a], pos[b], w))
            .collect();
        let dist: Vec<Vec<u64>> = idx
            .iter()
            .map(|&a| idx.iter().map(|&b| self.dist[a][b]).collect())
            .collect();
        let adjacency = adjacency_of(idx.len(), &edges).expect("restricted edges are in range");
        let path = Self::from_edges(idx.len(), &edges).ok();
        let explicit = path.map_or(true, |p| p.dist != dist);
        Self {
            edges,
            adjacency,
            dist,
            explicit,
        }
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> u64 {
        self.dist[x][y]
    }

    pub fn edges(&self) -> &[(usize, usize, u64)] {
        &self.edges
    }

    /// True when the distance table differs from the graph's path metric.
    pub fn is_explicit(&self) -> bool {
        self.explicit
    }

    pub fn table(&self) -> &[Vec<u64>] {
        &self.dist
    }

    pub fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[x].iter().map(|&(y, _)| y)
    }

    pub fn diameter(&self) -> u64 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Diameter of a subset in the ambient metric; 0 for empty sets and singletons.
    pub fn diameter_of(&self, set: &BitSet) -> u64 {
        let pts = set.to_vec();
        let mut best = 0;
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                best = best.max(self.dist[a][b]);
            }
        }
        best
    }

    /// Closed neighbourhood `{x : d(x, set) <= r}`.
    pub fn neighborhood(&self, set: &BitSet, r: u64) -> BitSet {
        let n = self.len();
        let members = set.to_vec();
        BitSet::from_indices(n, (0..n).filter(|&x| members.iter().any(|&p| self.dist[x][p] <= r)))
    }

    /// Minimum distance between two sets, `None` if either is empty.
    pub fn set_distance(&self, a: &BitSet, b: &BitSet) -> Option<u64> {
        let bs = b.to_vec();
        a.iter()
            .flat_map(|x| bs.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.dist[x][y])
            .min()
    }

    /// Points of `a` adjacent in the graph to a point of `b`.
    pub fn frontier(&self, a: &BitSet, b: &BitSet) -> BitSet {
        let mut out = BitSet::new(self.len());
        for x in a.iter() {
            if self.neighbors(x).any(|y| b.contains(y)) {
                out.insert(x);
            }
        }
        out
    }

    /// Connected components of the subgraph induced on `set`.
    pub fn components(&self, set: &BitSet) -> Vec<BitSet> {
        let n = self.len();
        let mut seen = BitSet::new(n);
        let mut out = Vec::new();
        for s in set.iter() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = BitSet::new(n);
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for v in self.neighbors(u) {
                    if set.contains(v) && !seen.contains(v) {
                        seen.insert(v);
                        stack.push(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}
