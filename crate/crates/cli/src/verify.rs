use clap::ValueEnum;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::Serialize;

use wallcube::dual::order::has_descending_order;
use wallcube::dual::{
    build_dual, canonical_cube, contract_loop, enumerate_all_orientations, hyperplanes_osculate, maximal_bijection,
    sample_loop, verify_npc, CubeComplex,
};
use wallcube::Wallspace;

use crate::output::Failure;
use crate::Ctx;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// Wallspace axioms.
    Validate,
    /// Every basepoint reaches every valid orientation.
    Connectivity,
    /// #(x,y) equals the distance between canonical cubes.
    Distance,
    /// Maximal cubes match maximal transverse families.
    Bijection,
    /// Vertex links are flag complexes and edge labels are consistent.
    Npc,
    /// Sampled closed loops contract.
    Loops,
    /// Osculating walls are exactly those with touching hyperplanes.
    Osculation,
    /// The transverse cube detector agrees with literal completion.
    Skeleton,
    /// The halfspace order at each vertex is acyclic.
    Descending,
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub basepoint: String,
    pub vertices: usize,
    pub dimension: usize,
    pub supplied_complex: bool,
    pub checks: Vec<CheckResult>,
}

fn result(check: &str, failure: Option<String>, pass: String) -> CheckResult {
    CheckResult {
        check: check.into(),
        ok: failure.is_none(),
        detail: failure.unwrap_or(pass),
    }
}

pub fn run(
    ws: &Wallspace,
    supplied: Option<CubeComplex>,
    bp: usize,
    checks: &[Check],
    loops: usize,
    ctx: &Ctx,
) -> Result<VerifyReport, Failure> {
    let all = Check::value_variants();
    let checks = if checks.is_empty() { all } else { checks };
    let validation = ws.validate();
    let mut out = Vec::new();
    if checks.contains(&Check::Validate) || !validation.ok {
        let failure = validation.first_error().map(|e| e.to_string());
        out.push(result("validate", failure, format!("{} walls", ws.num_walls())));
    }
    if !validation.ok {
        return Ok(VerifyReport {
            ok: false,
            basepoint: ws.point_name(bp).into(),
            vertices: 0,
            dimension: 0,
            supplied_complex: supplied.is_some(),
            checks: out,
        });
    }
    let opts = ctx.opts();
    let built = build_dual(ws, bp, &opts)?;
    let is_supplied = supplied.is_some();
    let cc = match supplied {
        Some(cc) => {
            if cc.num_walls() != ws.num_walls() {
                return Err(Failure::input(format!(
                    "complex has {} walls, wallspace has {}",
                    cc.num_walls(),
                    ws.num_walls()
                )));
            }
            let (mine, dual) = (cc.sorted_cube_set(), built.sorted_cube_set());
            let extra = mine.iter().filter(|c| dual.binary_search(c).is_err()).count();
            let missing = dual.iter().filter(|c| mine.binary_search(c).is_err()).count();
            let same = extra == 0 && missing == 0 && cc.sorted_vertex_set() == built.sorted_vertex_set();
            let failure = (!same).then(|| {
                format!(
                    "supplied complex has {} vertices and {} cubes, {extra} not in the dual; the dual has {} vertices and {missing} cubes not supplied",
                    cc.vertices().len(),
                    mine.len(),
                    built.vertices().len(),
                )
            });
            out.push(result("matches-dual", failure, "same vertices and cubes".into()));
            cc
        }
        None => built,
    };
    for check in checks.iter().filter(|&&c| c != Check::Validate) {
        let name = check.to_possible_value().expect("no skipped variants").get_name().to_string();
        let (failure, pass) = match check {
            Check::Validate => unreachable!(),
            Check::Connectivity => {
                let full = enumerate_all_orientations(ws, &opts)?.sorted_vertex_set();
                let mut failure = None;
                for x in 0..ws.num_points() {
                    let v = build_dual(ws, x, &opts)?.sorted_vertex_set();
                    if v != full {
                        failure = Some(format!("basepoint {} reaches {} of {} orientations", ws.point_name(x), v.len(), full.len()));
                        break;
                    }
                }
                (failure, format!("{} orientations from every basepoint", full.len()))
            }
            Check::Distance => {
                let canon: Vec<_> = (0..ws.num_points()).map(|x| canonical_cube(ws, x)).collect::<Result<_, _>>()?;
                let mut failure = None;
                'outer: for x in 0..ws.num_points() {
                    for y in x + 1..ws.num_points() {
                        let count = ws.separation_count(x, y)?;
                        let d = cc.cube_distance(&canon[x], &canon[y]);
                        if d.as_ref().ok() != Some(&count) {
                            failure = Some(format!(
                                "#({}, {}) = {count} but cube distance is {d:?}",
                                ws.point_name(x),
                                ws.point_name(y)
                            ));
                            break 'outer;
                        }
                    }
                }
                (failure, "all point pairs".into())
            }
            Check::Bijection => {
                let r = maximal_bijection(ws, &cc);
                ((!r.ok).then(|| format!("{r:?}")), format!("{} maximal cubes", r.maximal_cubes))
            }
            Check::Npc => {
                let r = verify_npc(&cc);
                (
                    r.violations.first().map(|v| serde_json::to_string(v).expect("violations serialize")),
                    format!("{} vertex links", r.vertices_checked),
                )
            }
            Check::Loops => {
                let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
                let mut failure = None;
                for _ in 0..loops {
                    let l = sample_loop(&cc, &mut rng, 12);
                    if let Err(e) = contract_loop(&cc, &l) {
                        failure = Some(format!("loop {l:?}: {e}"));
                        break;
                    }
                }
                (failure, format!("{loops} loops contracted"))
            }
            Check::Osculation => {
                let live = ws.nonvacuous_walls();
                let mut failure = None;
                'pairs: for i in live.iter() {
                    for j in live.iter().filter(|&j| j > i) {
                        let (a, b) = (ws.osculate(i, j)?, hyperplanes_osculate(&cc, i, j));
                        if a != b {
                            failure = Some(format!(
                                "walls {} and {}: osculate {a}, hyperplanes touch without a square {b}",
                                ws.wall(i).label,
                                ws.wall(j).label
                            ));
                            break 'pairs;
                        }
                    }
                }
                (failure, "all nonvacuous wall pairs".into())
            }
            Check::Skeleton => {
                let literal = build_dual(ws, bp, &opts.literal())?;
                let same = literal.sorted_cube_set() == cc.sorted_cube_set();
                ((!same).then(|| "literal completion finds different cubes".to_string()), "cube sets agree".into())
            }
            Check::Descending => {
                let bad = (0..cc.vertices().len()).find(|&v| !has_descending_order(ws, cc.vertex(v)));
                (bad.map(|v| format!("vertex {v} has a cyclic order")), "every vertex".into())
            }
        };
        out.push(result(&name, failure, pass));
    }
    Ok(VerifyReport {
        ok: out.iter().all(|c| c.ok),
        basepoint: ws.point_name(bp).into(),
        vertices: cc.vertices().len(),
        dimension: cc.dimension(),
        supplied_complex: is_supplied,
        checks: out,
    })
}
