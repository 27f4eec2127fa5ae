use serde_json::{json, Map, Value};

use wallcube::dual::build_dual;
use wallcube::generators;
use wallcube::groups::{cayley_ball, generate_hwall_system, GroupSpec, HWallSpec};
use wallcube::Wallspace;

use crate::diagnose::{self, Params, Property};
use crate::output::Failure;
use crate::Ctx;

pub const FAMILIES: &[&str] = &["grid", "rbad", "geomPath", "geomGrid", "z2", "f2"];

fn instance(family: &str, n: usize, ctx: &Ctx) -> Result<Wallspace, Failure> {
    let hwalls = |group: GroupSpec, specs: &[HWallSpec]| -> Result<Wallspace, Failure> {
        let ball = cayley_ball(&group, n as u64, ctx.caps.points)?;
        Ok(generate_hwall_system(&ball, specs)?.ws)
    };
    match family {
        "grid" | "rbad" | "geomPath" => Ok(generators::by_name(family, Some(n))?),
        "geomGrid" => Ok(generators::geom_grid(n)?),
        "z2" => hwalls(
            GroupSpec::FreeAbelian { rank: 2 },
            &[
                HWallSpec::CoordinateHalfspace { axis: 0, thick: false },
                HWallSpec::CoordinateHalfspace { axis: 1, thick: false },
            ],
        ),
        "f2" => hwalls(
            GroupSpec::Free { rank: 2 },
            &[HWallSpec::CyclicAxis {
                generator: 0,
                left_letters: vec!["b".into()],
            }],
        ),
        other => Err(Failure::input(format!(
            "unknown family {other}; expected one of {}",
            FAMILIES.join(", ")
        ))),
    }
}

/// Copies the scalar fields of `value` into `row` without overwriting.
fn merge_scalars(row: &mut Map<String, Value>, value: Value) {
    if let Value::Object(map) = value {
        for (k, v) in map {
            if k != "convention" && !matches!(v, Value::Array(_) | Value::Object(_)) {
                row.entry(k).or_insert(v);
            }
        }
    }
}

pub fn run(family: &str, sizes: &[usize], property: Option<Property>, p: &Params, ctx: &Ctx) -> Result<Vec<Value>, Failure> {
    let opts = ctx.opts();
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let ws = instance(family, n, ctx)?;
        ctx.caps.check_ground(ws.num_points(), ws.num_walls())?;
        let cc = build_dual(&ws, 0, &opts)?;
        let mut row = Map::new();
        row.insert("scale".into(), json!(n));
        row.insert("points".into(), json!(ws.num_points()));
        row.insert("walls".into(), json!(ws.num_walls()));
        row.insert("vertices".into(), json!(cc.vertices().len()));
        row.insert("dimension".into(), json!(cc.dimension()));
        row.insert("max_degree".into(), json!(cc.max_degree()));
        if family == "rbad" {
            let line = (0..cc.vertices().len())
                .filter(|&v| generators::is_line_vertex(&ws, cc.vertex(v)))
                .map(|v| cc.degree(v))
                .max();
            row.insert("line_max_degree".into(), json!(line));
        }
        if let Some(property) = property {
            let mut params = p.clone();
            if property == Property::CompactWall && params.k.is_none() {
                let k = if family == "rbad" { generators::rbad_midpoint(n) } else { 0 };
                params.k = Some(vec![ws.point_name(k).to_string()]);
            }
            let (value, _) = diagnose::run(&ws, property, &params, ctx.seed, &opts, 0)?;
            merge_scalars(&mut row, value);
        }
        rows.push(Value::Object(row));
    }
    Ok(rows)
}
