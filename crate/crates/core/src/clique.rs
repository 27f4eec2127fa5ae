//! Clique enumeration over graphs stored as adjacency bit sets.

use crate::bitset::BitSet;

/// All maximal cliques of the subgraph induced on `vertices`, each sorted,
/// the list sorted lexicographically. Isolated vertices give singletons;
/// an empty vertex set gives no cliques.
pub fn maximal_cliques(adj: &[BitSet], vertices: &BitSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if vertices.is_empty() {
        return out;
    }
    let mut r = Vec::new();
    bron_kerbosch(adj, &mut r, vertices.clone(), BitSet::new(vertices.domain()), &mut out);
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn bron_kerbosch(adj: &[BitSet], r: &mut Vec<usize>, p: BitSet, mut x: BitSet, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| adj[u].intersection(&p).count())
        .expect("p is nonempty");
    let mut p = p;
    for v in p.difference(&adj[pivot]).to_vec() {
        r.push(v);
        bron_kerbosch(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// A maximum clique, ties broken toward the lexicographically smallest.
pub fn maximum_clique(adj: &[BitSet], vertices: &BitSet) -> Vec<usize> {
    maximal_cliques(adj, vertices)
        .into_iter()
        .fold(Vec::new(), |best, c| if c.len() > best.len() { c } else { best })
}

/// Calls `f` on every clique (including non-maximal ones) drawn from
/// `candidates` with at least `min_size` members, each in increasing order.
pub fn for_each_clique(adj: &[BitSet], candidates: &BitSet, min_size: usize, mut f: impl FnMut(&[usize])) {
    let mut cur = Vec::new();
    extend(adj, candidates, min_size, &mut cur, &mut f);
}

fn extend(adj: &[BitSet], cand: &BitSet, min_size: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() >= min_size {
        f(cur);
    }
    for v in cand.iter() {
        let mut next = cand.intersection(&adj[v]);
        // Only extend upward so each clique is produced once.
        for u in cand.iter().take_while(|&u| u <= v) {
            next.remove(u);
        }
        cur.push(v);
        extend(adj, &next, min_size, cur, f);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<BitSet> {
        let mut adj = vec![BitSet::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn triangle_with_tail() {
        let adj = graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let all = BitSet::full(4);
        assert_eq!(maximal_cliques(&adj, &all), vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(maximum_clique(&adj, &all), vec![0, 1, 2]);
        let mut count = 0;
        for_each_clique(&adj, &all, 0, |_| count += 1);
        // empty, 4 singletons, 4 edges, 1 triangle
        assert_eq!(count, 10);
    }

    #[test]
    fn empty_graph_has_no_cliques() {
        assert!(maximal_cliques(&[], &BitSet::new(0)).is_empty());
    }

    fn is_clique(adj: &[BitSet], c: &[usize]) -> bool {
        c.iter().enumerate().all(|(i, &a)| c[i + 1..].iter().all(|&b| adj[a].contains(b)))
    }

    proptest! {
        #[test]
        fn maximal_cliques_match_brute_force(n in 1usize..9, bits in proptest::collection::vec(any::<bool>(), 36)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k % bits.len()] { edges.push((a, b)); }
                    k += 1;
                }
            }
            let adj = graph(n, &edges);
            let mut brute: Vec<Vec<usize>> = Vec::new();
            for mask in 1u32..(1 << n) {
                let c: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if !is_clique(&adj, &c) { continue; }
                let maximal = (0..n).all(|v| c.contains(&v) || !c.iter().all(|&u| adj[u].contains(v)));
                if maximal { brute.push(c); }
            }
            brute.sort();
            prop_assert_eq!(maximal_cliques(&adj, &BitSet::full(n)), brute);
        }
    }
}
