use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wallcube::generators;
use wallcube::{BitSet, WallPairClass, Wallspace};

fn random_ws(seed: u64) -> Wallspace {
    generators::random_wallspace(&mut ChaCha8Rng::seed_from_u64(seed), 10, 10)
}

/// Open halfspace membership straight from the wall's two sets.
fn separated_by(ws: &Wallspace, w: usize, x: usize, y: usize) -> bool {
    let wall = ws.wall(w);
    let only = |s: &BitSet, o: &BitSet, p: usize| s.contains(p) && !o.contains(p);
    (only(&wall.left, &wall.right, x) && only(&wall.right, &wall.left, y))
        || (only(&wall.right, &wall.left, x) && only(&wall.left, &wall.right, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_wallspaces_validate(seed in any::<u64>()) {
        let ws = random_ws(seed);
        prop_assert!(ws.validate().ok);
        for w in ws.walls() {
            prop_assert!(w.left.union(&w.right).is_full());
        }
    }

    #[test]
    fn metric_axioms(seed in any::<u64>()) {
        let ws = random_ws(seed);
        let m = ws.metric().unwrap();
        let n = ws.num_points();
        for x in 0..n {
            prop_assert_eq!(m.d(x, x), 0);
            for y in 0..n {
                prop_assert_eq!(m.d(x, y), m.d(y, x));
                for z in 0..n {
                    prop_assert!(m.d(x, z) <= m.d(x, y) + m.d(y, z));
                }
            }
        }
    }

    #[test]
    fn separation_count_is_symmetric_and_matches_definition(seed in any::<u64>()) {
        let ws = random_ws(seed);
        for x in 0..ws.num_points() {
            for y in 0..ws.num_points() {
                let c = ws.separation_count(x, y).unwrap();
                prop_assert_eq!(c, ws.separation_count(y, x).unwrap());
                let direct = (0..ws.num_walls()).filter(|&w| separated_by(&ws, w, x, y)).count();
                prop_assert_eq!(c, direct);
            }
        }
    }

    #[test]
    fn betwixt_set_is_the_carrier_membership(seed in any::<u64>()) {
        let ws = random_ws(seed);
        for x in 0..ws.num_points() {
            let b = ws.betwixt_set(x).unwrap();
            let direct: Vec<usize> = (0..ws.num_walls())
                .filter(|&w| ws.wall(w).left.contains(x) && ws.wall(w).right.contains(x))
                .collect();
            prop_assert!(b.len() <= ws.num_walls());
            prop_assert_eq!(b, direct);
        }
    }

    #[test]
    fn one_relation_per_pair(seed in any::<u64>()) {
        let ws = random_ws(seed);
        for i in 0..ws.num_walls() {
            for j in 0..ws.num_walls() {
                if i == j {
                    continue;
                }
                let class = ws.pair_class(i, j).unwrap();
                prop_assert_eq!(class, ws.pair_class(j, i).unwrap());
                let (a, b) = (ws.wall(i), ws.wall(j));
                let four = [(&a.left, &b.left), (&a.left, &b.right), (&a.right, &b.left), (&a.right, &b.right)]
                    .iter()
                    .all(|(p, q)| p.intersects(q));
                prop_assert_eq!(ws.transverse(i, j).unwrap(), four);
                prop_assert_eq!(class == WallPairClass::Transverse, four);
                if class == WallPairClass::Osculating {
                    prop_assert!(ws.osculate(i, j).unwrap());
                }
                if a.same_halfspaces(b) && !a.is_genuine_partition() && !a.is_vacuous() {
                    prop_assert!(four, "duplicated non-partition walls are transverse");
                }
            }
        }
    }

    #[test]
    fn geometric_transversality_is_intersection(seed in any::<u64>(), n in 3usize..14) {
        let ws = generators::geom_tree(&mut ChaCha8Rng::seed_from_u64(seed), n).unwrap();
        for i in 0..ws.num_walls() {
            for j in i + 1..ws.num_walls() {
                let meet = ws.wall(i).carrier().intersects(&ws.wall(j).carrier());
                prop_assert_eq!(ws.is_transverse(i, j), meet);
            }
        }
    }
}

#[test]
fn geometric_grids_and_paths() {
    for ws in [generators::geom_grid(4).unwrap(), generators::geom_path(6).unwrap()] {
        for i in 0..ws.num_walls() {
            for j in i + 1..ws.num_walls() {
                let meet = ws.wall(i).carrier().intersects(&ws.wall(j).carrier());
                assert_eq!(ws.is_transverse(i, j), meet);
            }
        }
    }
}

#[test]
fn non_hausdorff_counts() {
    let ws = generators::non_hausdorff3();
    assert_eq!(ws.separation_count(0, 1).unwrap(), 1);
    assert_eq!(ws.separation_count(0, 2).unwrap(), 0);
    assert_eq!(ws.separation_count(1, 2).unwrap(), 0);
}

#[test]
fn duplicate_genuine_partitions_are_rejected() {
    let r = Wallspace::from_names(&["p", "q"], &[(&["p"], &["q"]), (&["p"], &["q"])], 0);
    assert!(r.is_err());
    let ok = Wallspace::from_names(&["p", "q"], &[(&["p", "q"], &["q"]), (&["p", "q"], &["q"])], 0).unwrap();
    assert!(ok.is_transverse(0, 1));
}
