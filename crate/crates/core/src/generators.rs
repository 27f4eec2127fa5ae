//! Deterministic fixture families and a seeded random wallspace sampler.

use rand::Rng;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometric::from_geometric_walls;
use crate::metric::Metric;
use crate::wallspace::{Wall, Wallspace};

/// Six points `a..f` with five walls, labelled 1 to 5. Walls 3 and 5 are
/// the same non-partition wall and wall 4 is a genuine partition.
pub fn fig3() -> Wallspace {
    Wallspace::from_names(
        &["a", "b", "c", "d", "e", "f"],
        &[
            (&["a", "b", "f"], &["b", "c", "d", "e"]),
            (&["a", "b"], &["a", "c", "d", "e", "f"]),
            (&["a", "b", "c", "e", "f"], &["d", "e"]),
            (&["a", "b", "c", "e"], &["d", "f"]),
            (&["a", "b", "c", "e", "f"], &["d", "e"]),
        ],
        1,
    )
    .expect("fixture is valid")
}

/// `X = {x, y, z}` with the single wall `({x, z}, {y, z})`, unit triangle metric.
pub fn non_hausdorff3() -> Wallspace {
    Wallspace::from_names(&["x", "y", "z"], &[(&["x", "z"], &["y", "z"])], 0)
        .and_then(|ws| ws.with_metric(Metric::from_edges(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)])?))
        .expect("fixture is valid")
}

/// `X = {1, 2, 3}` with walls `({1,2}, {1,2,3})` and `({2,3}, {1})`.
/// A vertex here has a flippable wall whose halfspace pair is not minimal.
pub fn order_converse() -> Wallspace {
    Wallspace::from_names(&["1", "2", "3"], &[(&["1", "2"], &["1", "2", "3"]), (&["2", "3"], &["1"])], 1)
        .expect("fixture is valid")
}

pub fn grid_point_name(i: usize, j: usize) -> String {
    format!("({i},{j})")
}

/// Lattice points `(i, j)` with `0 <= i, j <= n` under the grid-graph
/// metric, with partition walls `x <= k | x >= k+1` (labels `0..n`) and
/// `y <= k | y >= k+1` (labels `n..2n`).
pub fn grid(n: usize) -> Wallspace {
    let side = n + 1;
    let id = |i: usize, j: usize| i * side + j;
    let points = (0..side).flat_map(|i| (0..side).map(move |j| grid_point_name(i, j))).collect();
    let total = side * side;
    let mut walls = Vec::with_capacity(2 * n);
    for axis in 0..2 {
        for k in 0..n {
            let coord = |p: usize| if axis == 0 { p / side } else { p % side };
            let left = BitSet::from_indices(total, (0..total).filter(|&p| coord(p) <= k));
            walls.push(Wall::new((axis * n + k) as i64, left.clone(), left.complement()));
        }
    }
    let mut edges = Vec::new();
    for i in 0..side {
        for j in 0..side {
            if i + 1 < side {
                edges.push((id(i, j), id(i + 1, j), 1));
            }
            if j + 1 < side {
                edges.push((id(i, j), id(i, j + 1), 1));
            }
        }
    }
    let metric = Metric::from_edges(total, &edges).expect("grid graph is connected");
    Wallspace::new(points, walls, Some(metric)).expect("grid walls are valid")
}

/// Path `0..=3n` with interval walls `{<= k} | {>= k}` at `k = n, 2n` and a
/// singleton wall `{r} | X - {r}` at every point.
pub fn rbad(n: usize) -> Result<Wallspace> {
    if n == 0 {
        return Err(Error::Invalid("rbad needs n >= 1".into()));
    }
    let len = 3 * n + 1;
    let points = (0..len).map(|i| i.to_string()).collect();
    let mut walls = Vec::new();
    for k in [n, 2 * n] {
        walls.push(Wall::new(
            walls.len() as i64,
            BitSet::from_indices(len, 0..=k),
            BitSet::from_indices(len, k..len),
        ));
    }
    for r in 0..len {
        let single = BitSet::from_indices(len, [r]);
        walls.push(Wall::new(walls.len() as i64, single.clone(), single.complement()));
    }
    let edges: Vec<(usize, usize, u64)> = (0..len - 1).map(|i| (i, i + 1, 1)).collect();
    Wallspace::new(points, walls, Some(Metric::from_edges(len, &edges)?))
}

/// Compact set used for rbad diagnostics: the midpoint of the path.
pub fn rbad_midpoint(n: usize) -> usize {
    3 * n / 2
}

/// Every wall with a singleton side is oriented toward its larger side.
pub fn is_line_vertex(ws: &Wallspace, orientation: &BitSet) -> bool {
    ws.walls().iter().enumerate().all(|(i, w)| {
        let (l, r) = (w.left.count(), w.right.count());
        if l == 1 && r > 1 {
            orientation.contains(i)
        } else if r == 1 && l > 1 {
            !orientation.contains(i)
        } else {
            true
        }
    })
}

/// Path `0..=n` with a vertex wall at each interior vertex.
pub fn geom_path(n: usize) -> Result<Wallspace> {
    let points = (0..=n).map(|i| i.to_string()).collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
    let walls: Vec<BitSet> = (1..n).map(|k| BitSet::from_indices(n + 1, [k])).collect();
    from_geometric_walls(points, &edges, &walls)
}

/// `(n+1) x (n+1)` grid graph whose walls are the interior rows and columns.
pub fn geom_grid(n: usize) -> Result<Wallspace> {
    let side = n + 1;
    let id = |i: usize, j: usize| i * side + j;
    let points = (0..side).flat_map(|i| (0..side).map(move |j| grid_point_name(i, j))).collect();
    let mut edges = Vec::new();
    for i in 0..side {
        for j in 0..side {
            if i + 1 < side {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < side {
                edges.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    let mut walls = Vec::new();
    for k in 1..n {
        walls.push(BitSet::from_indices(side * side, (0..side).map(|j| id(k, j))));
        walls.push(BitSet::from_indices(side * side, (0..side).map(|i| id(i, k))));
    }
    from_geometric_walls(points, &edges, &walls)
}

/// Random tree on `n` vertices with a wall at every degree-2 vertex.
pub fn geom_tree<R: Rng>(rng: &mut R, n: usize) -> Result<Wallspace> {
    let points: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    let mut degree = vec![0usize; n];
    for &(a, b) in &edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    let walls: Vec<BitSet> = (0..n).filter(|&v| degree[v] == 2).map(|v| BitSet::from_indices(n, [v])).collect();
    from_geometric_walls(points, &edges, &walls)
}

/// Random wallspace with at most `max_points` points and `max_walls` walls.
/// Vacuous walls and duplicated non-partition walls occur; duplicated
/// genuine partitions are resampled. The metric is a random connected
/// graph with weights 1 or 2.
pub fn random_wallspace<R: Rng>(rng: &mut R, max_points: usize, max_walls: usize) -> Wallspace {
    let n = rng.gen_range(1..=max_points.max(1));
    let m = rng.gen_range(0..=max_walls);
    let full = BitSet::full(n);
    let mut walls: Vec<Wall> = Vec::new();
    let mut tries = 0;
    while walls.len() < m && tries < 200 {
        tries += 1;
        let r: f64 = rng.gen();
        let (left, right) = if r < 0.08 {
            (full.clone(), BitSet::new(n))
        } else if r < 0.15 && !walls.is_empty() {
            let w = &walls[rng.gen_range(0..walls.len())];
            (w.left.clone(), w.right.clone())
        } else {
            let left = BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)));
            let mut right = left.complement();
            for x in left.iter() {
                if rng.gen_bool(0.25) {
                    right.insert(x);
                }
            }
            (left, right)
        };
        let cand = Wall::new(walls.len() as i64, left, right);
        if cand.is_genuine_partition() && walls.iter().any(|w| w.same_halfspaces(&cand)) {
            continue;
        }
        walls.push(cand);
    }
    let mut edges: Vec<(usize, usize, u64)> = (1..n).map(|i| (rng.gen_range(0..i), i, rng.gen_range(1..=2))).collect();
    for _ in 0..n / 2 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.push((a, b, rng.gen_range(1..=2)));
        }
    }
    let metric = Metric::from_edges(n, &edges).expect("spanning tree keeps it connected");
    let points = (0..n).map(|i| format!("p{i}")).collect();
    Wallspace::new(points, walls, Some(metric)).expect("sampler only emits valid wallspaces")
}

/// Names accepted by [`by_name`].
pub const GENERATOR_NAMES: &[&str] = &["fig3", "grid", "rbad", "nonHausdorff3", "geomPath", "orderConverse"];

/// Looks a generator up by name; `n` is required by the parametrised ones.
pub fn by_name(name: &str, n: Option<usize>) -> Result<Wallspace> {
    let need = || n.ok_or_else(|| Error::Invalid(format!("generator {name} needs a size parameter")));
    match name {
        "fig3" => Ok(fig3()),
        "nonHausdorff3" => Ok(non_hausdorff3()),
        "orderConverse" => Ok(order_converse()),
        "grid" => Ok(grid(need()?)),
        "rbad" => rbad(need()?),
        "geomPath" => geom_path(need()?),
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}
