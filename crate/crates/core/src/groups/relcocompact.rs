use serde::Serialize;

use crate::bitset::BitSet;
use crate::dual::{Cube, CubeComplex};
use crate::hemi::{induce_hemi, Hemiwallspace, InducedVariant};
use crate::wallspace::Wallspace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "class", content = "periphery")]
pub enum CubeClass {
    /// Depth below the threshold.
    KPart,
    Unique(usize),
    /// Represented in two or more peripheries.
    Isolation,
    /// Represented in none.
    Coverage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifiedCube {
    pub walls: Vec<i64>,
    /// Points of the anchor orientation: wall labels oriented right.
    pub anchor_right: Vec<i64>,
    pub dim: usize,
    pub depth: usize,
    pub peripheries: Vec<usize>,
    pub class: CubeClass,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub m: usize,
    pub variant: InducedVariant,
    pub cubes: usize,
    pub max_depth: usize,
    pub k_part: usize,
    /// Uniquely represented cube count per periphery.
    pub unique: Vec<usize>,
    pub isolation_violations: Vec<ClassifiedCube>,
    pub coverage_violations: Vec<ClassifiedCube>,
    /// Least threshold with no coverage violations.
    pub least_m: usize,
    /// Periphery pairs sharing a cube of depth at least `m`, with the count.
    pub intersection_violations: Vec<(usize, usize, usize)>,
    /// Peripheries that do not induce a hemiwallspace, with the reason.
    pub periphery_errors: Vec<(usize, String)>,
    pub caveat: &'static str,
    #[serde(skip)]
    pub classified: Vec<ClassifiedCube>,
}

const CAVEAT: &str = "depths and representation are computed on a finite truncation; cubes near the boundary of the \
ground set may be deeper or less represented than in the untruncated complex";

/// Sorts every cube of `cc` into the part of depth below `m`, cubes
/// represented in exactly one periphery, in several, and in none. Depth is
/// the number of walls separating a cube from the nearest canonical cube.
pub fn rel_cocompact_check(
    ws: &Wallspace,
    cc: &CubeComplex,
    peripheries: &[BitSet],
    variant: InducedVariant,
    m: usize,
) -> DecompositionReport {
    let mut hemis: Vec<Option<Hemiwallspace>> = Vec::new();
    let mut periphery_errors = Vec::new();
    for (i, p) in peripheries.iter().enumerate() {
        match induce_hemi(ws, p, variant) {
            Ok(h) => hemis.push(Some(h)),
            Err(e) => {
                periphery_errors.push((i, e.to_string()));
                hemis.push(None);
            }
        }
    }
    let canon = crate::dual::checks::canonical_cubes(ws);
    let label = |w: &usize| ws.wall(*w).label;
    let mut classified = Vec::new();
    let mut unique = vec![0; peripheries.len()];
    let mut least_m = 0;
    let mut pair_counts = std::collections::BTreeMap::new();
    for cube in cc.all_cubes() {
        let depth = canon.iter().map(|c| cube.separating_walls(c).len()).min().unwrap_or(0);
        let reps: Vec<usize> = hemis
            .iter()
            .enumerate()
            .filter(|(_, h)| h.as_ref().is_some_and(|h| h.represents(&cube)))
            .map(|(i, _)| i)
            .collect();
        if reps.is_empty() {
            least_m = least_m.max(depth + 1);
        }
        let class = if depth < m {
            CubeClass::KPart
        } else {
            for (a, &i) in reps.iter().enumerate() {
                for &j in &reps[a + 1..] {
                    *pair_counts.entry((i, j)).or_insert(0) += 1;
                }
            }
            match reps.len() {
                0 => CubeClass::Coverage,
                1 => {
                    unique[reps[0]] += 1;
                    CubeClass::Unique(reps[0])
                }
                _ => CubeClass::Isolation,
            }
        };
        classified.push(classify(&cube, depth, reps, class, &label));
    }
    let pick = |c: CubeClass| classified.iter().filter(|x| x.class == c).cloned().collect::<Vec<_>>();
    DecompositionReport {
        m,
        variant,
        cubes: classified.len(),
        max_depth: classified.iter().map(|c| c.depth).max().unwrap_or(0),
        k_part: classified.iter().filter(|c| c.class == CubeClass::KPart).count(),
        unique,
        isolation_violations: pick(CubeClass::Isolation),
        coverage_violations: pick(CubeClass::Coverage),
        least_m,
        intersection_violations: pair_counts.into_iter().map(|((i, j), n)| (i, j, n)).collect(),
        periphery_errors,
        caveat: CAVEAT,
        classified,
    }
}

fn classify(cube: &Cube, depth: usize, peripheries: Vec<usize>, class: CubeClass, label: &impl Fn(&usize) -> i64) -> ClassifiedCube {
    ClassifiedCube {
        walls: cube.walls.iter().map(label).collect(),
        anchor_right: cube.anchor.iter().map(|w| label(&w)).collect(),
        dim: cube.dim(),
        depth,
        peripheries,
        class,
    }
}
