//! Contracting closed edge paths by square swaps and backtrack removals.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::complex::CubeComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum Move {
    /// Edges at `position`, `position + 1` (walls `walls[0]`, `walls[1]`)
    /// replaced by the opposite two sides of the square anchored at vertex `corner`.
    SquareSwap { position: usize, walls: [usize; 2], corner: usize },
    /// Edges at `position`, `position + 1` cross the same wall and cancel.
    Backtrack { position: usize, wall: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopTrace {
    pub initial_length: usize,
    pub moves: Vec<Move>,
}

fn labels(cc: &CubeComplex, path: &[usize]) -> Result<Vec<usize>> {
    path.windows(2)
        .enumerate()
        .map(|(i, w)| {
            cc.edge_between(w[0], w[1])
                .map(|e| cc.edges()[e].wall)
                .ok_or_else(|| Error::NotALoop(format!("vertices {} and {} at step {i} are not adjacent", w[0], w[1])))
        })
        .collect()
}

/// Reduces a closed vertex path to a single vertex.
///
/// Repeatedly picks the pair of edges crossing the same wall with the
/// smallest `(p, q - p)` whose interior crosses distinct other walls, slides
/// edge `p` forward across squares until it meets edge `q`, then cancels the pair.
pub fn contract_loop(cc: &CubeComplex, closed: &[usize]) -> Result<LoopTrace> {
    if closed.is_empty() || closed.first() != closed.last() {
        return Err(Error::NotALoop("path must start and end at the same vertex".into()));
    }
    if let Some(&v) = closed.iter().find(|&&v| v >= cc.vertices().len()) {
        return Err(Error::NotALoop(format!("vertex {v} is not in the complex")));
    }
    let mut path = closed.to_vec();
    let mut moves = Vec::new();
    let initial_length = path.len() - 1;
    while path.len() > 1 {
        let l = labels(cc, &path)?;
        let (p, q) = innermost_pair(&l).ok_or(Error::StuckLoop { position: 0 })?;
        for k in p..q - 1 {
            let (w, u) = (l_at(cc, &path, k)?, l_at(cc, &path, k + 1)?);
            let a = path[k];
            if cc.square_at(a, w, u).is_none() {
                return Err(Error::StuckLoop { position: k });
            }
            let b = cc
                .vertex_id(&cc.vertex(a).toggled(u))
                .ok_or(Error::StuckLoop { position: k })?;
            path[k + 1] = b;
            moves.push(Move::SquareSwap {
                position: k,
                walls: [w, u],
                corner: a,
            });
        }
        let wall = l_at(cc, &path, q - 1)?;
        if path[q - 1] != path[q + 1] {
            return Err(Error::StuckLoop { position: q - 1 });
        }
        path.drain(q..q + 2);
        moves.push(Move::Backtrack { position: q - 1, wall });
    }
    Ok(LoopTrace { initial_length, moves })
}

fn l_at(cc: &CubeComplex, path: &[usize], k: usize) -> Result<usize> {
    cc.edge_between(path[k], path[k + 1])
        .map(|e| cc.edges()[e].wall)
        .ok_or_else(|| Error::NotALoop(format!("step {k} is not an edge")))
}

fn innermost_pair(l: &[usize]) -> Option<(usize, usize)> {
    for p in 0..l.len() {
        let Some(off) = l[p + 1..].iter().position(|&x| x == l[p]) else {
            continue;
        };
        let q = p + 1 + off;
        let inner = &l[p + 1..q];
        let distinct = inner.iter().enumerate().all(|(i, x)| !inner[i + 1..].contains(x));
        if distinct {
            return Some((p, q));
        }
    }
    None
}

/// A random closed path: a random walk of at most 8 steps followed by a
/// shortest path back, trimmed so the total stays within `max_len`.
pub fn sample_loop<R: Rng>(cc: &CubeComplex, rng: &mut R, max_len: usize) -> Vec<usize> {
    let n = cc.vertices().len();
    let start = rng.gen_range(0..n);
    let steps = rng.gen_range(1..=8usize.min(max_len / 2).max(1));
    let mut walk = vec![start];
    for _ in 0..steps {
        let nb = cc.neighbors(*walk.last().expect("walk is nonempty"));
        if nb.is_empty() {
            break;
        }
        walk.push(nb[rng.gen_range(0..nb.len())].0);
    }
    let dist = cc.bfs(&[start]);
    while walk.len() - 1 + dist[*walk.last().expect("walk is nonempty")] > max_len {
        walk.pop();
    }
    let mut cur = *walk.last().expect("walk is nonempty");
    while cur != start {
        cur = cc
            .neighbors(cur)
            .iter()
            .map(|&(v, _)| v)
            .find(|&v| dist[v] + 1 == dist[cur])
            .expect("bfs layers are connected");
        walk.push(cur);
    }
    walk
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::build::{build_dual, BuildOptions};
    use crate::generators;

    fn grid_cc(n: usize) -> (crate::wallspace::Wallspace, CubeComplex) {
        let ws = generators::grid(n);
        let cc = build_dual(&ws, 0, &BuildOptions::default()).unwrap();
        (ws, cc)
    }

    fn vid(ws: &crate::wallspace::Wallspace, cc: &CubeComplex, p: &str) -> usize {
        cc.vertex_id(&ws.orientation_toward(ws.point(p).unwrap())).unwrap()
    }

    #[test]
    fn square_boundary() {
        let (ws, cc) = grid_cc(1);
        let l: Vec<usize> = ["(0,0)", "(1,0)", "(1,1)", "(0,1)", "(0,0)"]
            .iter()
            .map(|p| vid(&ws, &cc, p))
            .collect();
        let t = contract_loop(&cc, &l).unwrap();
        let swaps = t.moves.iter().filter(|m| matches!(m, Move::SquareSwap { .. })).count();
        let backs = t.moves.len() - swaps;
        assert_eq!((swaps, backs), (1, 2));
    }

    #[test]
    fn backtrack_only() {
        let (_, cc) = grid_cc(1);
        let b = cc.neighbors(0)[0].0;
        let t = contract_loop(&cc, &[0, b, 0]).unwrap();
        assert_eq!(t.moves, vec![Move::Backtrack { position: 0, wall: cc.edges()[cc.edge_between(0, b).unwrap()].wall }]);
    }

    #[test]
    fn rectangle_in_grid2() {
        let (ws, cc) = grid_cc(2);
        let l: Vec<usize> = ["(0,0)", "(1,0)", "(2,0)", "(2,1)", "(1,1)", "(0,1)", "(0,0)"]
            .iter()
            .map(|p| vid(&ws, &cc, p))
            .collect();
        assert!(contract_loop(&cc, &l).is_ok());
    }

    #[test]
    fn open_path_is_rejected() {
        let (_, cc) = grid_cc(1);
        assert!(matches!(contract_loop(&cc, &[0, 1]), Err(Error::NotALoop(_))));
    }
}
