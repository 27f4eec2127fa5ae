use serde::{Deserialize, Serialize};
use serde_json::json;

use wallcube::action::{verify_equivariance, EquivarianceReport};
use wallcube::dual::build_dual;
use wallcube::groups::{
    cayley_ball, codim_one_analysis, generate_hwall_system, left_multiplication, rel_cocompact_check, GroupSpec,
    HWallSpec, SubgroupSpec,
};
use wallcube::hemi::InducedVariant;
use wallcube::io::{complex_to_dot, WallspaceDoc};
use wallcube::BitSet;

use crate::output::{pretty, with_meta, Failure, Meta};
use crate::{Ctx, Format, Outcome};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CodimSpec {
    subgroup: SubgroupSpec,
    #[serde(default)]
    d: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActSpec {
    group: GroupSpec,
    radius: u64,
    hwalls: Vec<HWallSpec>,
    /// Element lists, e.g. `["e", "a", "A"]`.
    #[serde(default)]
    peripheries: Vec<Vec<String>>,
    variant: Option<InducedVariant>,
    /// Depth threshold; the least threshold with full coverage when absent.
    m: Option<usize>,
    codim: Option<CodimSpec>,
}

#[derive(Debug, Serialize)]
struct Origin {
    spec: usize,
    element: String,
}

pub fn run(bytes: &[u8], ctx: &Ctx, format: Format, wallspace_only: bool) -> Result<Outcome, Failure> {
    let meta = Meta::new(ctx.seed, ctx.caps, bytes);
    let spec: ActSpec = serde_json::from_slice(bytes).map_err(|e| Failure::input(format!("group action: {e}")))?;
    spec.group.validate()?;
    let ball = cayley_ball(&spec.group, spec.radius, ctx.caps.points)?;
    let sys = generate_hwall_system(&ball, &spec.hwalls)?;
    ctx.caps.check_ground(sys.ws.num_points(), sys.ws.num_walls())?;
    if wallspace_only {
        return Ok((pretty(&with_meta(WallspaceDoc::from_wallspace(&sys.ws), &meta)), true));
    }
    let cc = build_dual(&sys.ws, 0, &ctx.opts())?;
    if format == Format::Dot {
        return Ok((meta.comment("//") + &complex_to_dot(&sys.ws, &cc), true));
    }
    let mut equivariance: Vec<EquivarianceReport> = Vec::new();
    for (_, g) in spec.group.generators() {
        let action = left_multiplication(&ball, &g)?;
        equivariance.push(verify_equivariance(&sys.ws, &action, &cc, &ctx.opts())?);
    }
    let ok = equivariance.iter().all(|r| r.ok);
    let mut peripheries = Vec::new();
    for (i, names) in spec.peripheries.iter().enumerate() {
        let mut set = BitSet::new(ball.len());
        for n in names {
            let g = spec.group.parse(n)?;
            let x = ball
                .index_of(&g)
                .ok_or_else(|| Failure::input(format!("periphery {i}: {n} lies outside the ball")))?;
            set.insert(x);
        }
        peripheries.push(set);
    }
    let decomposition = if peripheries.is_empty() {
        None
    } else {
        let variant = spec.variant.unwrap_or(InducedVariant::U0);
        let m = match spec.m {
            Some(m) => m,
            None => rel_cocompact_check(&sys.ws, &cc, &peripheries, variant, 0).least_m,
        };
        Some(rel_cocompact_check(&sys.ws, &cc, &peripheries, variant, m))
    };
    let codim = match &spec.codim {
        Some(c) => Some(codim_one_analysis(&ball, &c.subgroup, c.d)?),
        None => None,
    };
    let origins: Vec<Origin> = sys
        .origins
        .iter()
        .map(|o| Origin {
            spec: o.spec,
            element: o.element.to_string(),
        })
        .collect();
    let out = json!({
        "wallspace": WallspaceDoc::from_wallspace(&sys.ws),
        "system": {
            "ball_size": ball.len(),
            "walls": sys.ws.num_walls(),
            "dropped_vacuous": sys.dropped_vacuous,
            "dropped_duplicates": sys.dropped_duplicates,
            "origins": origins,
            "hwall_reports": sys.reports,
        },
        "complex": {
            "vertices": cc.vertices().len(),
            "edges": cc.edges().len(),
            "dimension": cc.dimension(),
            "counts_by_dim": cc.counts_by_dim(),
        },
        "equivariance": equivariance,
        "decomposition": decomposition,
        "codim_one": codim,
    });
    Ok((pretty(&with_meta(out, &meta)), ok))
}
