use proptest::prelude::*;

use wallcube::action::{verify_equivariance, ComplexCheck};
use wallcube::dual::{build_dual, BuildOptions};
use wallcube::groups::{
    cayley_ball, generate_hwall_system, left_multiplication, CayleyBall, Element, GroupSpec, HWallSpec, HWallSystem,
};
use wallcube::separation::transverse_distance_threshold;

fn z2(radius: u64) -> CayleyBall {
    cayley_ball(&GroupSpec::FreeAbelian { rank: 2 }, radius, 10_000).unwrap()
}

fn f2(radius: u64) -> CayleyBall {
    cayley_ball(&GroupSpec::Free { rank: 2 }, radius, 10_000).unwrap()
}

fn coordinate_system(ball: &CayleyBall, thick: bool) -> HWallSystem {
    let specs = [
        HWallSpec::CoordinateHalfspace { axis: 0, thick },
        HWallSpec::CoordinateHalfspace { axis: 1, thick },
    ];
    generate_hwall_system(ball, &specs).unwrap()
}

fn axis_system(ball: &CayleyBall) -> HWallSystem {
    let spec = HWallSpec::CyclicAxis {
        generator: 0,
        left_letters: vec!["b".into()],
    };
    generate_hwall_system(ball, &[spec]).unwrap()
}

fn specs() -> impl Strategy<Value = (GroupSpec, Vec<HWallSpec>)> {
    prop_oneof![
        any::<bool>().prop_map(|thick| (
            GroupSpec::FreeAbelian { rank: 2 },
            vec![
                HWallSpec::CoordinateHalfspace { axis: 0, thick },
                HWallSpec::CoordinateHalfspace { axis: 1, thick },
            ]
        )),
        Just((
            GroupSpec::Free { rank: 2 },
            vec![HWallSpec::CyclicAxis { generator: 0, left_letters: vec!["b".into()] }]
        )),
        Just((
            GroupSpec::Free { rank: 2 },
            vec![HWallSpec::FreeFactorSplit { factor: 0 }, HWallSpec::FreeFactorSplit { factor: 1 }]
        )),
        Just((GroupSpec::FreeProduct { orders: vec![2, 3] }, vec![HWallSpec::FreeFactorSplit { factor: 1 }])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_systems_validate((group, hw) in specs(), radius in 1u64..5) {
        let ball = cayley_ball(&group, radius, 10_000).unwrap();
        let sys = generate_hwall_system(&ball, &hw).unwrap();
        prop_assert!(sys.ws.validate().ok);
    }

    #[test]
    fn generators_act_equivariantly((group, hw) in specs(), radius in 1u64..4) {
        let ball = cayley_ball(&group, radius, 10_000).unwrap();
        let sys = generate_hwall_system(&ball, &hw).unwrap();
        let cc = build_dual(&sys.ws, 0, &BuildOptions::default()).unwrap();
        for (name, g) in group.generators() {
            let action = left_multiplication(&ball, &g).unwrap();
            let rep = verify_equivariance(&sys.ws, &action, &cc, &BuildOptions::default()).unwrap();
            prop_assert!(rep.ok, "generator {}: {:?}", name, rep);
            prop_assert!(!matches!(rep.complex, ComplexCheck::Failed(_)));
        }
    }
}

#[test]
fn ball_is_prefix_closed_with_generator_edges() {
    for ball in [z2(3), f2(3), cayley_ball(&GroupSpec::FreeProduct { orders: vec![2, 3] }, 4, 1000).unwrap()] {
        let gens = ball.spec.generators();
        for g in &ball.elements {
            if ball.spec.length(g) > 0 {
                let has_parent = gens.iter().any(|(_, s)| {
                    let p = ball.spec.mul(g, s);
                    ball.spec.length(&p) + 1 == ball.spec.length(g) && ball.index_of(&p).is_some()
                });
                assert!(has_parent, "{g} has no shorter neighbour in the ball");
            }
        }
        let mut expected = 0;
        for (i, g) in ball.elements.iter().enumerate() {
            for (_, s) in &gens {
                if let Some(j) = ball.index_of(&ball.spec.mul(g, s)) {
                    let found = ball.edges.iter().any(|(a, b, _)| (*a, *b) == (i, j) || (*a, *b) == (j, i));
                    assert!(found, "missing edge {g} -> {}", ball.elements[j]);
                    expected += 1;
                }
            }
        }
        assert!(ball.edges.len() * 2 >= expected);
        assert_eq!(ball.elements, cayley_ball(&ball.spec, ball.radius, 10_000).unwrap().elements);
    }
}

/// Along one axis walls nest; across axes they are transverse exactly when
/// all four quadrants meet the truncated ball.
#[test]
fn coordinate_walls_nest_or_cross() {
    for radius in 1..=4 {
        let ball = z2(radius);
        let sys = coordinate_system(&ball, false);
        let coords: Vec<(i64, i64)> = ball
            .elements
            .iter()
            .map(|e| match e {
                Element::Vector(v) => (v[0], v[1]),
                Element::Word(_) => unreachable!(),
            })
            .collect();
        let cut = |w: usize| {
            let wall = sys.ws.wall(w);
            let axis = sys.origins[w].spec;
            let key = |p: (i64, i64)| if axis == 0 { p.0 } else { p.1 };
            let k = wall.left.iter().map(|p| key(coords[p])).max().unwrap();
            (axis, k)
        };
        for i in 0..sys.ws.num_walls() {
            for j in i + 1..sys.ws.num_walls() {
                let ((ai, ki), (aj, kj)) = (cut(i), cut(j));
                let t = sys.ws.is_transverse(i, j);
                if ai == aj {
                    assert!(!t, "parallel walls {i}, {j} cross");
                } else {
                    let (kx, ky) = if ai == 0 { (ki, kj) } else { (kj, ki) };
                    let quadrants = [(true, true), (true, false), (false, true), (false, false)].iter().all(|&(l, b)| {
                        coords.iter().any(|&(x, y)| (x <= kx) == l && (y <= ky) == b)
                    });
                    assert_eq!(t, quadrants, "walls {i}, {j} at radius {radius}");
                }
            }
        }
    }
}

#[test]
fn free_group_axis_walls_form_a_tree() {
    for radius in 1..=5 {
        let ball = f2(radius);
        let sys = axis_system(&ball);
        assert!(sys.ws.transversality_graph().iter().all(|row| row.is_empty()));
        let cc = build_dual(&sys.ws, 0, &BuildOptions::default()).unwrap();
        assert!(cc.dimension() <= 1);
        assert!(cc.is_connected());
        assert_eq!(cc.edges().len() + 1, cc.vertices().len());
    }
}

#[test]
fn transverse_walls_stay_close() {
    let mut last = 0;
    for radius in 2..=5 {
        let sys = coordinate_system(&z2(radius), true);
        let d = transverse_distance_threshold(&sys.ws).unwrap().expect("coordinate walls cross");
        assert!(d >= last, "threshold dropped from {last} to {d} at radius {radius}");
        last = d;
    }
}
