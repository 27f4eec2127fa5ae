//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wallcube::action::wall_map_via_points;
use wallcube::dual::{
    build_dual, check_labelled_isomorphism, contract_loop, converse_witness, enumerate_all_orientations,
    hyperplanes_osculate, is_convex, maximal_bijection, sample_loop, verify_npc, BuildOptions, Cube, CubeComplex,
};
use wallcube::generators::{self, grid_point_name};
use wallcube::groups::{cayley_ball, generate_hwall_system, rel_cocompact_check, CubeClass, Element, GroupSpec, HWallSpec};
use wallcube::hemi::{dual_sub, induce_hemi, InducedVariant};
use wallcube::separation::{compact_wall_separation, linear_separation_fit, SampleSpec};
use wallcube::{BitSet, Error, Metric, Wall, Wallspace};

const SEED: u64 = 0x5eed;
const RANDOM_INSTANCES: usize = 500;

type Outcome = Result<String, String>;

fn instances() -> Vec<Wallspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..RANDOM_INSTANCES)
        .map(|_| generators::random_wallspace(&mut rng, 8, 8))
        .collect()
}

fn named_generators() -> Vec<Wallspace> {
    let mut out = vec![generators::fig3(), generators::non_hausdorff3(), generators::order_converse()];
    out.extend((1..=4).map(generators::grid));
    for n in [1, 2, 3] {
        out.push(generators::rbad(n).unwrap());
    }
    out.push(generators::geom_path(5).unwrap());
    out
}

fn dual(ws: &Wallspace) -> CubeComplex {
    build_dual(ws, 0, &BuildOptions::default()).expect("dual builds")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_fig3() -> Outcome {
    let ws = generators::fig3();
    let cc = dual(&ws);
    let counts = cc.counts_by_dim();
    check(cc.dimension() == 3, || format!("dimension {}", cc.dimension()))?;
    check(counts.get(3) == Some(&1), || format!("cube counts by dimension {counts:?}"))?;
    let dims: Vec<usize> = (0..6)
        .map(|x| wallcube::dual::canonical_cube(&ws, x).unwrap().dim())
        .collect();
    check(dims == [1, 1, 0, 0, 3, 0], || {
        format!("canonical cube dimensions for a..f are {dims:?}, expected [1, 1, 0, 0, 3, 0]")
    })?;
    Ok(format!("dimension 3, one 3-cube, canonical dims {dims:?}"))
}

fn c2_bijection(all: &[Wallspace]) -> Outcome {
    for (i, ws) in all.iter().enumerate() {
        let r = maximal_bijection(ws, &dual(ws));
        check(r.ok, || format!("instance {i}: {r:?}"))?;
    }
    Ok(format!("{} instances", all.len()))
}

fn c3_connectivity(all: &[Wallspace]) -> Outcome {
    let opts = BuildOptions::default();
    let mut builds = 0;
    for (i, ws) in all.iter().enumerate() {
        let full = enumerate_all_orientations(ws, &opts).unwrap();
        let (v, c) = (full.sorted_vertex_set(), full.sorted_cube_set());
        for x in 0..ws.num_points() {
            let cc = build_dual(ws, x, &opts).unwrap();
            check(cc.sorted_vertex_set() == v && cc.sorted_cube_set() == c, || {
                format!("instance {i}, basepoint {x}: {} vertices reached, {} enumerated", cc.vertices().len(), v.len())
            })?;
            builds += 1;
        }
    }
    Ok(format!("{builds} basepoint builds"))
}

/// Graph distance between the corner sets of two cubes.
fn corner_distance(cc: &CubeComplex, a: &Cube, b: &Cube) -> usize {
    let src = cc.cube_vertex_ids(a).expect("cube in complex");
    let dist = cc.bfs(&src);
    cc.cube_vertex_ids(b).expect("cube in complex").iter().map(|&v| dist[v]).min().unwrap()
}

fn c4_distance(all: &[Wallspace]) -> Outcome {
    let mut pairs = 0;
    for (i, ws) in all.iter().enumerate() {
        let cc = dual(ws);
        let canon = wallcube::dual::checks::canonical_cubes(ws);
        for x in 0..ws.num_points() {
            for y in 0..ws.num_points() {
                let count = ws.separation_count(x, y).unwrap();
                let d = corner_distance(&cc, &canon[x], &canon[y]);
                check(count == d, || format!("instance {i}: #({x},{y}) = {count}, complex distance {d}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} ordered pairs"))
}

fn c5_npc(all: &[Wallspace]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut loops = 0;
    for (i, ws) in all.iter().enumerate() {
        let cc = dual(ws);
        let npc = verify_npc(&cc);
        check(npc.ok, || format!("instance {i}: {:?}", npc.violations.first()))?;
        for _ in 0..3 {
            let l = sample_loop(&cc, &mut rng, 12);
            check(l.len() <= 13, || format!("instance {i}: loop of length {}", l.len() - 1))?;
            contract_loop(&cc, &l).map_err(|e| format!("instance {i}: loop {l:?}: {e}"))?;
            loops += 1;
        }
    }
    check(loops >= 1000, || format!("only {loops} loops"))?;
    Ok(format!("{} complexes, {loops} loops contracted", all.len()))
}

fn random_variant(rng: &mut ChaCha8Rng) -> InducedVariant {
    let r = rng.gen_range(0..3) as f64;
    let tau = rng.gen_range(1..4) as f64;
    match rng.gen_range(0..5) {
        0 => InducedVariant::U0,
        1 => InducedVariant::Ur { r },
        2 => InducedVariant::Uinf { tau },
        3 => InducedVariant::Ustar { r_max: r, tau },
        _ => InducedVariant::UrStar { r, tau },
    }
}

fn c6_convexity(all: &[Wallspace]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 6);
    let (mut done, mut attempts, mut empty) = (0, 0, 0);
    while done < 200 {
        attempts += 1;
        check(attempts < 100_000, || format!("only {done} hemiwallspaces found"))?;
        let ws = &all[rng.gen_range(0..all.len())];
        let n = ws.num_points();
        let p = BitSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.4)));
        if p.is_empty() {
            continue;
        }
        let variant = random_variant(&mut rng);
        let Ok(h) = induce_hemi(ws, &p, variant) else { continue };
        let cc = dual(ws);
        match dual_sub(&cc, &h) {
            Ok(sub) => {
                let r = is_convex(&cc, &sub);
                check(r.convex, || format!("{variant:?} on P = {:?}: geodesic {:?} leaves", p.to_vec(), r.witness))?;
            }
            Err(Error::EmptySubcomplex) => empty += 1,
            Err(e) => return Err(e.to_string()),
        }
        done += 1;
    }
    Ok(format!("200 triples from {attempts} draws, {empty} with empty dual"))
}

fn c7_converse() -> Outcome {
    let ws = generators::order_converse();
    let cc = dual(&ws);
    let w = converse_witness(&ws, &cc).ok_or("no vertex with a flippable non-minimal wall")?;
    check(ws.flippable(cc.vertex(w.vertex), w.wall).unwrap(), || "witness wall is not flippable".into())?;
    Ok(format!("vertex {} flips wall {} above wall {}", w.vertex, ws.wall(w.wall).label, ws.wall(w.below).label))
}

fn c8_non_hausdorff() -> Outcome {
    let ws = generators::non_hausdorff3();
    let c = |a: &str, b: &str| ws.separation_count(ws.point(a).unwrap(), ws.point(b).unwrap()).unwrap();
    let got = (c("x", "y"), c("x", "z"), c("y", "z"));
    check(got == (1, 0, 0), || format!("(#xy, #xz, #yz) = {got:?}"))?;
    Ok("#(x,y)=1, #(x,z)=#(y,z)=0".into())
}

/// Counts 0-cubes, edges and squares of the grid dual by brute force over
/// all orientations: every chosen halfspace pair must meet.
fn grid_oracle(n: usize) -> (usize, usize, usize) {
    let m = 2 * n;
    // Wall k < n is x <= k | x >= k+1; wall n + k the same in y.
    let side_of = |o: u32, w: usize| (o >> w) & 1;
    let valid = |o: u32| {
        let bound = |axis: usize| {
            let (mut lo, mut hi) = (0i64, n as i64);
            for k in 0..n {
                if side_of(o, axis * n + k) == 0 {
                    hi = hi.min(k as i64);
                } else {
                    lo = lo.max(k as i64 + 1);
                }
            }
            lo <= hi
        };
        bound(0) && bound(1)
    };
    let verts: Vec<u32> = (0..1u32 << m).filter(|&o| valid(o)).collect();
    let mut edges = 0;
    let mut squares = 0;
    for &o in &verts {
        for a in 0..m {
            if valid(o ^ (1 << a)) {
                edges += 1;
            }
            for b in a + 1..m {
                if valid(o ^ (1 << a)) && valid(o ^ (1 << b)) && valid(o ^ (1 << a) ^ (1 << b)) {
                    squares += 1;
                }
            }
        }
    }
    (verts.len(), edges / 2, squares / 4)
}

fn c9_grid() -> Outcome {
    for n in 1..=6 {
        let ws = generators::grid(n);
        let cc = dual(&ws);
        let counts = cc.counts_by_dim();
        let got = (counts[0], counts[1], counts.get(2).copied().unwrap_or(0));
        let oracle = grid_oracle(n);
        check(got == oracle, || format!("grid({n}): complex {got:?}, oracle {oracle:?}"))?;
        check(oracle == ((n + 1).pow(2), 2 * n * (n + 1), n * n), || format!("grid({n}): oracle {oracle:?}"))?;
        check(cc.dimension() == 2, || format!("grid({n}): dimension {}", cc.dimension()))?;
        let side = n + 1;
        for x in 0..side * side {
            for y in 0..side * side {
                let l1 = (x / side).abs_diff(y / side) + (x % side).abs_diff(y % side);
                check(ws.separation_count(x, y).unwrap() == l1, || format!("grid({n}): #({x},{y}) != L1"))?;
            }
        }
        let fit = linear_separation_fit(&ws, &SampleSpec::Default { seed: SEED }, 0).unwrap();
        check(fit.kappa == "1" && fit.epsilon == "0", || {
            format!("grid({n}): kappa {}, epsilon {}", fit.kappa, fit.epsilon)
        })?;
    }
    Ok("n = 1..6 match the enumeration oracle; kappa 1, epsilon 0".into())
}

fn c10_rbad() -> Outcome {
    let mut degrees = Vec::new();
    for n in [2, 4, 8, 16] {
        let ws = generators::rbad(n).unwrap();
        let cc = dual(&ws);
        let deg = (0..cc.vertices().len())
            .filter(|&v| generators::is_line_vertex(&ws, cc.vertex(v)))
            .map(|v| cc.degree(v))
            .max()
            .ok_or_else(|| format!("rbad({n}) has no line vertex"))?;
        check(deg >= n, || format!("rbad({n}): line degree {deg} < {n}"))?;
        let k = BitSet::from_indices(ws.num_points(), [generators::rbad_midpoint(n)]);
        let rep = compact_wall_separation(&ws, &k).map_err(|e| format!("rbad({n}): {e}"))?;
        degrees.push((n, deg, rep.constant));
    }
    check(degrees.windows(2).all(|w| w[0].1 <= w[1].1), || format!("degrees {degrees:?}"))?;
    let shown: Vec<String> = degrees.iter().map(|(n, d, f)| format!("n={n}: deg {d}, f {f}")).collect();
    Ok(shown.join("; "))
}

fn c11_cayley() -> Outcome {
    let f2 = cayley_ball(&GroupSpec::Free { rank: 2 }, 4, 10_000).unwrap();
    let sys = generate_hwall_system(
        &f2,
        &[HWallSpec::CyclicAxis {
            generator: 0,
            left_letters: vec!["b".into()],
        }],
    )
    .map_err(|e| e.to_string())?;
    let tree = dual(&sys.ws);
    check(tree.dimension() == 1, || format!("F2 dual has dimension {}", tree.dimension()))?;
    check(tree.is_connected() && tree.edges().len() + 1 == tree.vertices().len(), || {
        format!("F2 dual has {} vertices, {} edges", tree.vertices().len(), tree.edges().len())
    })?;

    let z2 = cayley_ball(&GroupSpec::FreeAbelian { rank: 2 }, 4, 10_000).unwrap();
    let specs = [
        HWallSpec::CoordinateHalfspace { axis: 0, thick: false },
        HWallSpec::CoordinateHalfspace { axis: 1, thick: false },
    ];
    let sys = generate_hwall_system(&z2, &specs).map_err(|e| e.to_string())?;
    // The radius-4 ball is the diamond |x| + |y| <= 4 inside grid(8) shifted by (4, 4).
    let grid = generators::grid(8);
    let diamond: Vec<usize> = (0..grid.num_points())
        .filter(|&p| (p / 9).abs_diff(4) + (p % 9).abs_diff(4) <= 4)
        .collect();
    let patch = grid.subwallspace(&BitSet::from_indices(grid.num_points(), diamond)).unwrap().ws;
    let phi: Vec<usize> = z2
        .elements
        .iter()
        .map(|e| {
            let Element::Vector(v) = e else { unreachable!() };
            let name = grid_point_name((v[0] + 4) as usize, (v[1] + 4) as usize);
            patch.point(&name).unwrap()
        })
        .collect();
    let map = wall_map_via_points(&sys.ws, &patch, &phi).map_err(|e| e.to_string())?;
    check(sys.ws.num_walls() == patch.num_walls(), || {
        format!("{} Cayley walls, {} grid walls", sys.ws.num_walls(), patch.num_walls())
    })?;
    let (a, b) = (dual(&sys.ws), dual(&patch));
    check_labelled_isomorphism(&a, &b, &map, None)?;
    Ok(format!(
        "F2 tree with {} vertices; Z2 patch with {} vertices isomorphic to the grid patch",
        tree.vertices().len(),
        a.vertices().len()
    ))
}

fn c12_osculation(all: &[Wallspace]) -> Outcome {
    let mut pairs = 0;
    for (k, ws) in all.iter().enumerate() {
        let cc = dual(ws);
        let live = ws.nonvacuous_walls();
        for i in live.iter() {
            for j in live.iter().filter(|&j| j > i) {
                let a = ws.osculate(i, j).unwrap();
                let b = hyperplanes_osculate(&cc, i, j);
                check(a == b, || format!("instance {k}: walls {i}, {j}: osculate {a}, hyperplanes {b}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} nonvacuous wall pairs"))
}

/// Points of even weight in {0,1}^4 with the four coordinate walls; the dual
/// is the full 4-cube and the odd vertices sit at depth one.
fn hypercube_fixture() -> Wallspace {
    let pts: Vec<u32> = (0..16u32).filter(|v| v.count_ones() % 2 == 0).collect();
    let names = pts.iter().map(|v| format!("{v:04b}")).collect();
    let walls = (0..4)
        .map(|w| {
            let left = BitSet::from_indices(pts.len(), (0..pts.len()).filter(|&i| pts[i] >> w & 1 == 0));
            Wall::new(w as i64, left.clone(), left.complement())
        })
        .collect();
    let edges: Vec<(usize, usize, u64)> = (0..pts.len())
        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| (pts[i] ^ pts[j]).count_ones() == 2)
        .map(|(i, j)| (i, j, 1))
        .collect();
    Wallspace::new(names, walls, Some(Metric::from_edges(pts.len(), &edges).unwrap())).unwrap()
}

type CubeKey = (Vec<i64>, Vec<i64>);

/// Scans the 81 cubes of the 4-cube directly from the definitions.
fn rel_oracle(peripheries: &[Vec<u32>], m: usize) -> BTreeMap<CubeKey, (usize, Vec<usize>, CubeClass)> {
    let pts: Vec<u32> = (0..16u32).filter(|v| v.count_ones() % 2 == 0).collect();
    let mut out = BTreeMap::new();
    for code in 0..81u32 {
        // Per coordinate: 0, 1, or 2 for free.
        let digits: Vec<u32> = (0..4).map(|w| code / 3u32.pow(w) % 3).collect();
        let depth = pts
            .iter()
            .map(|p| (0..4).filter(|&w| digits[w] != 2 && digits[w] != (p >> w & 1)).count())
            .min()
            .unwrap();
        let retained = |per: &[u32], w: usize, s: u32| per.iter().any(|p| (p >> w & 1) == s);
        let reps: Vec<usize> = (0..peripheries.len())
            .filter(|&i| {
                (0..4).all(|w| match digits[w] {
                    2 => retained(&peripheries[i], w, 0) && retained(&peripheries[i], w, 1),
                    s => retained(&peripheries[i], w, s),
                })
            })
            .collect();
        let class = match (depth < m, reps.len()) {
            (true, _) => CubeClass::KPart,
            (false, 0) => CubeClass::Coverage,
            (false, 1) => CubeClass::Unique(reps[0]),
            _ => CubeClass::Isolation,
        };
        let walls = (0..4).filter(|&w| digits[w] == 2).map(|w| w as i64).collect();
        let right = (0..4).filter(|&w| digits[w] == 1).map(|w| w as i64).collect();
        out.insert((walls, right), (depth, reps, class));
    }
    out
}

fn c13_rel_cocompact() -> Outcome {
    let ws = hypercube_fixture();
    let cc = dual(&ws);
    let pts: Vec<u32> = (0..16u32).filter(|v| v.count_ones() % 2 == 0).collect();
    // First coordinate 0, and second coordinate 1: they overlap in a square.
    let per: Vec<Vec<u32>> = vec![
        pts.iter().copied().filter(|p| p & 1 == 0).collect(),
        pts.iter().copied().filter(|p| p >> 1 & 1 == 1).collect(),
    ];
    let sets: Vec<BitSet> = per
        .iter()
        .map(|q| BitSet::from_indices(pts.len(), q.iter().map(|p| pts.iter().position(|x| x == p).unwrap())))
        .collect();
    let mut summary = Vec::new();
    for m in 0..=2 {
        let rep = rel_cocompact_check(&ws, &cc, &sets, InducedVariant::U0, m);
        let oracle = rel_oracle(&per, m);
        let got: BTreeMap<CubeKey, (usize, Vec<usize>, CubeClass)> = rep
            .classified
            .iter()
            .map(|c| ((c.walls.clone(), c.anchor_right.clone()), (c.depth, c.peripheries.clone(), c.class.clone())))
            .collect();
        check(rep.cubes == 81 && got.len() == 81, || format!("m={m}: {} cubes", rep.cubes))?;
        if got != oracle {
            let diff = oracle.iter().find(|(k, v)| got.get(*k) != Some(v));
            return Err(format!("m={m}: first disagreement {diff:?}"));
        }
        let least = oracle
            .values()
            .filter(|(_, reps, _)| reps.is_empty())
            .map(|(d, _, _)| d + 1)
            .max()
            .unwrap_or(0);
        check(rep.least_m == least, || format!("m={m}: least_m {} vs {least}", rep.least_m))?;
        summary.push(format!(
            "m={m}: {} K, {:?} unique, {} isolation",
            rep.k_part,
            rep.unique,
            rep.isolation_violations.len()
        ));
    }
    Ok(summary.join("; "))
}

fn main() {
    let t = Instant::now();
    let mut all = instances();
    let n_random = all.len();
    all.extend(named_generators());
    eprintln!("prepared {n_random} random instances and {} generators in {:?}", all.len() - n_random, t.elapsed());

    let random = &all[..n_random];
    type Run<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, u64, Run)> = vec![
        ("fig3 reproduction", 1, Box::new(c1_fig3)),
        ("maximal cube bijection", 30, Box::new(|| c2_bijection(random))),
        ("connectivity oracle", 60, Box::new(|| c3_connectivity(&all))),
        ("distance law", 30, Box::new(|| c4_distance(&all))),
        ("NPC and loop contraction", 60, Box::new(|| c5_npc(&all))),
        ("hemiwallspace convexity", 60, Box::new(|| c6_convexity(random))),
        ("order converse counterexample", 1, Box::new(c7_converse)),
        ("non-Hausdorff fixture", 1, Box::new(c8_non_hausdorff)),
        ("grid family", 10, Box::new(c9_grid)),
        ("rbad trend", 30, Box::new(c10_rbad)),
        ("Cayley systems", 30, Box::new(c11_cayley)),
        ("osculation correspondence", 30, Box::new(|| c12_osculation(random))),
        ("relative cocompactness partition", 5, Box::new(c13_rel_cocompact)),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if took > Duration::from_secs(*budget) => Err(format!("{msg}; took {took:?}, budget {budget} s")),
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
