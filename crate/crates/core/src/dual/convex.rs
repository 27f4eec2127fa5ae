use serde::Serialize;

use crate::bitset::BitSet;

use super::complex::CubeComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvexityReport {
    pub convex: bool,
    /// A geodesic between two members that leaves the set.
    pub witness: Option<Vec<usize>>,
}

/// Whether every geodesic of the 1-skeleton between two members of `sub`
/// stays inside `sub`. A vertex lies on some geodesic from `a` to `b`
/// exactly when `d(a, v) + d(v, b) = d(a, b)`.
pub fn is_convex(cc: &CubeComplex, sub: &[usize]) -> ConvexityReport {
    let n = cc.vertices().len();
    let members = BitSet::from_indices(n, sub.iter().copied());
    let dists: Vec<Vec<usize>> = sub.iter().map(|&a| cc.bfs(&[a])).collect();
    for (i, &a) in sub.iter().enumerate() {
        for (j, &b) in sub.iter().enumerate().skip(i + 1) {
            let (da, db) = (&dists[i], &dists[j]);
            let total = da[b];
            if total == usize::MAX {
                continue;
            }
            if let Some(v) = (0..n).find(|&v| !members.contains(v) && da[v] != usize::MAX && db[v] != usize::MAX && da[v] + db[v] == total) {
                return ConvexityReport {
                    convex: false,
                    witness: Some(geodesic_through(cc, a, v, b, da, db)),
                };
            }
        }
    }
    ConvexityReport {
        convex: true,
        witness: None,
    }
}

fn geodesic_through(cc: &CubeComplex, a: usize, v: usize, b: usize, da: &[usize], db: &[usize]) -> Vec<usize> {
    let descend = |start: usize, d: &[usize]| {
        let mut path = vec![start];
        let mut cur = start;
        while d[cur] > 0 {
            cur = cc
                .neighbors(cur)
                .iter()
                .map(|&(u, _)| u)
                .find(|&u| d[u] + 1 == d[cur])
                .expect("bfs layers are connected");
            path.push(cur);
        }
        path
    };
    let mut left = descend(v, da);
    left.reverse();
    debug_assert_eq!(left[0], a);
    let right = descend(v, db);
    debug_assert_eq!(*right.last().expect("nonempty"), b);
    left.extend(right.into_iter().skip(1));
    left
}
