//! The partial order on ordered halfspace pairs.
//!
//! `(U, V) ≼ (U', V')` when `U ⊊ U'`, or `U = U'` and `V ⊇ V'`.

use crate::bitset::BitSet;
use crate::wallspace::{Side, Wallspace};

pub fn precedes(a: (&BitSet, &BitSet), b: (&BitSet, &BitSet)) -> bool {
    a.0.is_proper_subset(b.0) || (a.0 == b.0 && b.1.is_subset(a.1))
}

pub fn strictly_precedes(a: (&BitSet, &BitSet), b: (&BitSet, &BitSet)) -> bool {
    precedes(a, b) && a != b
}

/// `(←o(w), →o(w))`: the chosen side first.
pub fn oriented_pair<'a>(ws: &'a Wallspace, o: &BitSet, w: usize) -> (&'a BitSet, &'a BitSet) {
    let s = o.contains(w) as Side;
    (ws.wall(w).side(s), ws.wall(w).side(1 - s))
}

/// Members of `among` whose oriented pair has no strict predecessor in `among`.
pub fn minimal_walls(ws: &Wallspace, o: &BitSet, among: &[usize]) -> Vec<usize> {
    among
        .iter()
        .copied()
        .filter(|&w| {
            let p = oriented_pair(ws, o, w);
            !among.iter().any(|&v| v != w && strictly_precedes(oriented_pair(ws, o, v), p))
        })
        .collect()
}

/// Whether the strict order on the oriented pairs at `o` is acyclic
/// (Kahn's algorithm succeeds).
pub fn has_descending_order(ws: &Wallspace, o: &BitSet) -> bool {
    let m = ws.num_walls();
    let pairs: Vec<_> = (0..m).map(|w| oriented_pair(ws, o, w)).collect();
    let mut indeg = vec![0usize; m];
    let mut succ = vec![Vec::new(); m];
    for a in 0..m {
        for b in 0..m {
            if a != b && strictly_precedes(pairs[a], pairs[b]) {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = (0..m).filter(|&w| indeg[w] == 0).collect();
    let mut seen = 0;
    while let Some(a) = stack.pop() {
        seen += 1;
        for &b in &succ[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                stack.push(b);
            }
        }
    }
    seen == m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, bits: u8) -> BitSet {
        BitSet::from_indices(n, (0..n).filter(|i| bits >> i & 1 == 1))
    }

    proptest! {
        #[test]
        fn is_a_partial_order(a in 0u8..16, b in 0u8..16, c in 0u8..16, d in 0u8..16, e in 0u8..16, f in 0u8..16) {
            let (a, b, c, d, e, f) = (set(4, a), set(4, b), set(4, c), set(4, d), set(4, e), set(4, f));
            let (x, y, z) = ((&a, &b), (&c, &d), (&e, &f));
            prop_assert!(precedes(x, x));
            if precedes(x, y) && precedes(y, x) {
                prop_assert!(x == y);
            }
            if precedes(x, y) && precedes(y, z) {
                prop_assert!(precedes(x, z));
            }
        }
    }

    #[test]
    fn ties_on_the_first_set_compare_the_second() {
        let u = set(3, 0b011);
        let big = set(3, 0b111);
        let small = set(3, 0b100);
        assert!(strictly_precedes((&u, &big), (&u, &small)));
        assert!(!precedes((&u, &small), (&u, &big)));
    }
}
