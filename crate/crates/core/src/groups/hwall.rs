use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::wallspace::{Wall, Wallspace};

use super::{CayleyBall, Element, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SubgroupSpec {
    /// Vectors supported on the listed axes.
    Coordinate { axes: Vec<usize> },
    Cyclic { word: String },
    /// A free factor, or the axis subgroup of a free abelian group.
    Factor { index: usize },
    Whole,
    Trivial,
}

impl SubgroupSpec {
    pub fn contains(&self, spec: &GroupSpec, g: &Element) -> Result<bool> {
        Ok(match (self, g) {
            (Self::Whole, _) => true,
            (Self::Trivial, _) => *g == spec.identity(),
            (Self::Coordinate { axes }, Element::Vector(v)) => {
                v.iter().enumerate().all(|(i, &x)| x == 0 || axes.contains(&i))
            }
            (Self::Factor { index }, Element::Vector(v)) => v.iter().enumerate().all(|(i, &x)| x == 0 || i == *index),
            (Self::Factor { index }, Element::Word(w)) => w.is_empty() || (w.len() == 1 && w[0].0 == *index),
            (Self::Cyclic { word }, _) => {
                let w = spec.parse(word)?;
                if w == spec.identity() {
                    return Ok(*g == w);
                }
                if let (Element::Vector(v), Element::Vector(x)) = (&w, g) {
                    let i = v.iter().position(|&c| c != 0).expect("nonzero vector");
                    if x[i] % v[i] != 0 {
                        return Ok(false);
                    }
                    let k = x[i] / v[i];
                    return Ok(v.iter().zip(x).all(|(a, b)| a * k == *b));
                }
                // |w^k| >= |k| unless w has finite order, which is at most the
                // largest factor order.
                let max_order = match spec {
                    GroupSpec::FreeProduct { orders } => orders.iter().copied().max().unwrap_or(0) as i64,
                    _ => 0,
                };
                let bound = (spec.length(g) as i64).max(max_order) + 1;
                let inv = spec.inv(&w);
                let mut pos = spec.identity();
                let mut neg = spec.identity();
                for _ in 0..=bound {
                    if pos == *g || neg == *g {
                        return Ok(true);
                    }
                    pos = spec.mul(&pos, &w);
                    neg = spec.mul(&neg, &inv);
                }
                false
            }
            (Self::Coordinate { .. }, Element::Word(_)) => {
                return Err(Error::Invalid("coordinate subgroups need a free abelian group".into()))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SideSet {
    Left,
    Right,
    Both,
}

impl SideSet {
    fn in_left(self) -> bool {
        self != SideSet::Right
    }

    fn in_right(self) -> bool {
        self != SideSet::Left
    }

    fn swapped(self) -> Self {
        match self {
            Self::Left => Self::Right,
            Self::Right => Self::Left,
            Self::Both => Self::Both,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum HWallSpec {
    /// `x[axis] <= 0` against `x[axis] >= 0` when thick (carrier is the
    /// coordinate hyperplane), against `x[axis] >= 1` when thin.
    CoordinateHalfspace { axis: usize, thick: bool },
    /// Writing `g = a^k r` with `a` the generator and `r` not starting with
    /// `a`, the side is chosen by the first letter of `r`: left when that
    /// letter is listed. Elements of `<a>` lie in both sides.
    CyclicAxis { generator: usize, left_letters: Vec<String> },
    /// As for [`HWallSpec::CyclicAxis`], with the side chosen by the sign of
    /// the exponent of the first syllable after the factor.
    FreeFactorSplit { factor: usize },
    /// Sides listed element by element; used only untranslated.
    Explicit {
        left: Vec<String>,
        right: Vec<String>,
        subgroup: SubgroupSpec,
    },
}

impl HWallSpec {
    pub fn subgroup(&self, spec: &GroupSpec) -> SubgroupSpec {
        match self {
            Self::CoordinateHalfspace { axis, .. } => SubgroupSpec::Coordinate {
                axes: (0..spec.rank()).filter(|i| i != axis).collect(),
            },
            Self::CyclicAxis { generator, .. } => SubgroupSpec::Factor { index: *generator },
            Self::FreeFactorSplit { factor } => SubgroupSpec::Factor { index: *factor },
            Self::Explicit { subgroup, .. } => subgroup.clone(),
        }
    }

    fn check(&self, spec: &GroupSpec) -> Result<()> {
        let rank = spec.rank();
        let ok = match self {
            Self::CoordinateHalfspace { axis, .. } => spec.is_abelian() && *axis < rank,
            Self::CyclicAxis { generator, .. } => !spec.is_abelian() && *generator < rank,
            Self::FreeFactorSplit { factor } => !spec.is_abelian() && *factor < rank,
            Self::Explicit { .. } => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("H-wall {self:?} does not fit group {spec:?}")))
        }
    }

    fn is_explicit(&self) -> bool {
        matches!(self, Self::Explicit { .. })
    }
}

/// Side rule of an H-wall, defined on the whole group except for explicit
/// walls, which only know the listed elements.
struct Sides<'a> {
    wall: &'a HWallSpec,
    explicit: Option<(HashSet<Element>, HashSet<Element>)>,
}

impl<'a> Sides<'a> {
    fn new(spec: &'a GroupSpec, wall: &'a HWallSpec) -> Result<Self> {
        wall.check(spec)?;
        let explicit = match wall {
            HWallSpec::Explicit { left, right, .. } => {
                let parse = |v: &[String]| v.iter().map(|s| spec.parse(s)).collect::<Result<HashSet<_>>>();
                Some((parse(left)?, parse(right)?))
            }
            _ => None,
        };
        Ok(Self { wall, explicit })
    }

    fn side(&self, g: &Element) -> Option<SideSet> {
        let after = |w: &[(usize, i64)], f: usize| -> Option<(usize, i64)> {
            let rest = if w.first().is_some_and(|s| s.0 == f) { &w[1..] } else { w };
            rest.first().copied()
        };
        match (self.wall, g) {
            (HWallSpec::CoordinateHalfspace { axis, thick }, Element::Vector(v)) => Some(match (v[*axis], thick) {
                (0, true) => SideSet::Both,
                (x, _) if x <= 0 => SideSet::Left,
                _ => SideSet::Right,
            }),
            (HWallSpec::CyclicAxis { generator, left_letters }, Element::Word(w)) => Some(match after(w, *generator) {
                None => SideSet::Both,
                Some((f, e)) => {
                    let c = (b'a' + f as u8) as char;
                    let c = if e < 0 { c.to_ascii_uppercase() } else { c };
                    if left_letters.iter().any(|l| l.starts_with(c)) {
                        SideSet::Left
                    } else {
                        SideSet::Right
                    }
                }
            }),
            (HWallSpec::FreeFactorSplit { factor }, Element::Word(w)) => Some(match after(w, *factor) {
                None => SideSet::Both,
                Some((_, e)) if e > 0 => SideSet::Left,
                _ => SideSet::Right,
            }),
            (HWallSpec::Explicit { .. }, g) => {
                let (l, r) = self.explicit.as_ref().expect("parsed");
                match (l.contains(g), r.contains(g)) {
                    (true, true) => Some(SideSet::Both),
                    (true, false) => Some(SideSet::Left),
                    (false, true) => Some(SideSet::Right),
                    (false, false) => None,
                }
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum FrontierStatus {
    /// Frontiers are invariant under the side-preserving part of `H` seen in the ball.
    Verified,
    /// No nontrivial side-preserving element of `H` lies in the ball.
    VacuousAtRadius,
    Violated { element: String, witness: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HWallReport {
    pub subgroup: SubgroupSpec,
    pub subgroup_in_ball: usize,
    pub side_preserving: usize,
    pub side_swapping: usize,
    /// `(h, x)` pairs checked for invariance, and pairs skipped because
    /// `h x` left the ball.
    pub invariance_checked: usize,
    pub invariance_truncated: usize,
    pub carrier_size: usize,
    /// Orbits of the carrier under partial translation by `H` within the ball.
    pub carrier_orbits: usize,
    pub frontier_sizes: [usize; 2],
    /// Orbits of each frontier under the side-preserving elements in the ball.
    pub frontier_orbits: [usize; 2],
    pub frontier_status: FrontierStatus,
    pub truncated: bool,
}

fn orbit_count(ball: &CayleyBall, set: &BitSet, elements: &[usize]) -> usize {
    let n = ball.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for &h in elements {
        for x in set.iter() {
            let y = ball.spec.mul(&ball.elements[h], &ball.elements[x]);
            if let Some(j) = ball.index_of(&y).filter(|&j| set.contains(j)) {
                let (a, b) = (find(&mut parent, x), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots: HashSet<usize> = set.iter().map(|x| find(&mut parent, x)).collect();
    roots.len()
}

/// Builds the untranslated wall and checks the H-wall conditions on the
/// part of the group visible in the ball.
pub fn build_hwall(ball: &CayleyBall, spec: &HWallSpec) -> Result<(Wall, HWallReport)> {
    let sides = Sides::new(&ball.spec, spec)?;
    let n = ball.len();
    let mut side = Vec::with_capacity(n);
    let mut missing = Vec::new();
    for x in 0..n {
        match sides.side(&ball.elements[x]) {
            Some(s) => side.push(s),
            None => {
                missing.push(x);
                side.push(SideSet::Both);
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::CoverageViolation { wall: 0, missing });
    }
    let left = BitSet::from_indices(n, (0..n).filter(|&x| side[x].in_left()));
    let right = BitSet::from_indices(n, (0..n).filter(|&x| side[x].in_right()));
    let subgroup = spec.subgroup(&ball.spec);
    let h_elems: Vec<usize> = (0..n)
        .filter_map(|x| match subgroup.contains(&ball.spec, &ball.elements[x]) {
            Ok(true) => Some(Ok(x)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let (mut checked, mut truncated) = (0, 0);
    let mut preserving = Vec::new();
    let mut swapping = 0;
    for &h in &h_elems {
        let (mut keep, mut swap) = (true, true);
        for x in 0..n {
            let y = ball.spec.mul(&ball.elements[h], &ball.elements[x]);
            let Some(j) = ball.index_of(&y) else {
                truncated += 1;
                continue;
            };
            checked += 1;
            keep &= side[j] == side[x];
            swap &= side[j] == side[x].swapped();
            if !keep && !swap {
                return Err(Error::InvarianceViolation {
                    element: ball.elements[h].to_string(),
                    witness: ball.elements[x].to_string(),
                });
            }
        }
        if keep {
            preserving.push(h);
        } else {
            swapping += 1;
        }
    }
    let carrier = left.intersection(&right);
    let gens = ball.spec.generators();
    let frontier = |inside: fn(SideSet) -> bool| {
        let mut out = BitSet::new(n);
        for x in 0..n {
            if !inside(side[x]) {
                continue;
            }
            let mut edge = false;
            for (_, s) in &gens {
                let y = ball.spec.mul(&ball.elements[x], s);
                let sy = match ball.index_of(&y) {
                    Some(j) => Some(side[j]),
                    None if spec.is_explicit() => None,
                    None => sides.side(&y),
                };
                edge |= sy.is_some_and(|t| !inside(t));
            }
            if edge {
                out.insert(x);
            }
        }
        out
    };
    let fronts = [frontier(SideSet::in_left), frontier(SideSet::in_right)];
    let nontrivial: Vec<usize> = preserving.iter().copied().filter(|&h| h != 0).collect();
    let mut status = if nontrivial.is_empty() {
        FrontierStatus::VacuousAtRadius
    } else {
        FrontierStatus::Verified
    };
    'outer: for &h in &nontrivial {
        for f in &fronts {
            for x in f.iter() {
                let y = ball.spec.mul(&ball.elements[h], &ball.elements[x]);
                if let Some(j) = ball.index_of(&y) {
                    let unknown_outside = spec.is_explicit() && ball.on_sphere(j);
                    if !f.contains(j) && !unknown_outside {
                        status = FrontierStatus::Violated {
                            element: ball.elements[h].to_string(),
                            witness: ball.elements[x].to_string(),
                        };
                        break 'outer;
                    }
                }
            }
        }
    }
    let report = HWallReport {
        subgroup,
        subgroup_in_ball: h_elems.len(),
        side_preserving: preserving.len(),
        side_swapping: swapping,
        invariance_checked: checked,
        invariance_truncated: truncated,
        carrier_size: carrier.count(),
        carrier_orbits: orbit_count(ball, &carrier, &h_elems),
        frontier_sizes: [fronts[0].count(), fronts[1].count()],
        frontier_orbits: [orbit_count(ball, &fronts[0], &preserving), orbit_count(ball, &fronts[1], &preserving)],
        frontier_status: status,
        truncated: truncated > 0,
    };
    Ok((Wall::new(0, left, right), report))
}

/// Where a wall of a generated system came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WallOrigin {
    pub spec: usize,
    pub element: String,
}

#[derive(Debug, Clone)]
pub struct HWallSystem {
    pub ws: Wallspace,
    pub origins: Vec<WallOrigin>,
    pub reports: Vec<HWallReport>,
    pub dropped_vacuous: usize,
    pub dropped_duplicates: usize,
}

/// Translates of each H-wall by every ball element, intersected with the
/// ball. Equal halfspace pairs from the same H-wall are one wall; vacuous
/// truncations and genuine partitions repeating another H-wall's are
/// dropped and counted. Explicit walls are not translated.
pub fn generate_hwall_system(ball: &CayleyBall, specs: &[HWallSpec]) -> Result<HWallSystem> {
    let n = ball.len();
    let mut walls: Vec<Wall> = Vec::new();
    let mut origins = Vec::new();
    let mut reports = Vec::new();
    let mut seen: HashSet<(BitSet, BitSet, usize)> = HashSet::new();
    let (mut dropped_vacuous, mut dropped_duplicates) = (0, 0);
    for (i, spec) in specs.iter().enumerate() {
        let (base, report) = build_hwall(ball, spec).map_err(|e| match e {
            Error::CoverageViolation { missing, .. } => Error::CoverageViolation { wall: i, missing },
            e => e,
        })?;
        reports.push(report);
        let sides = Sides::new(&ball.spec, spec)?;
        let translates: Vec<usize> = if spec.is_explicit() { vec![0] } else { (0..n).collect() };
        for g in translates {
            let (left, right) = if g == 0 {
                (base.left.clone(), base.right.clone())
            } else {
                let ginv = ball.spec.inv(&ball.elements[g]);
                let mut l = BitSet::new(n);
                let mut r = BitSet::new(n);
                for y in 0..n {
                    let s = sides.side(&ball.spec.mul(&ginv, &ball.elements[y])).expect("rule is total");
                    l.set(y, s.in_left());
                    r.set(y, s.in_right());
                }
                (l, r)
            };
            let key = if left <= right {
                (left.clone(), right.clone(), i)
            } else {
                (right.clone(), left.clone(), i)
            };
            if !seen.insert(key) {
                continue;
            }
            let wall = Wall::new(walls.len() as i64, left, right);
            if wall.is_vacuous() {
                dropped_vacuous += 1;
                continue;
            }
            if wall.is_genuine_partition() && walls.iter().any(|w| w.same_halfspaces(&wall)) {
                dropped_duplicates += 1;
                continue;
            }
            walls.push(wall);
            origins.push(WallOrigin {
                spec: i,
                element: ball.elements[g].to_string(),
            });
        }
    }
    let ws = Wallspace::new(ball.names(), walls, Some(ball.metric.clone()))?;
    Ok(HWallSystem {
        ws,
        origins,
        reports,
        dropped_vacuous,
        dropped_duplicates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{build_dual, BuildOptions};
    use crate::groups::cayley_ball;

    fn z2(r: u64) -> CayleyBall {
        cayley_ball(&GroupSpec::FreeAbelian { rank: 2 }, r, 10_000).unwrap()
    }

    fn f2(r: u64) -> CayleyBall {
        cayley_ball(&GroupSpec::Free { rank: 2 }, r, 10_000).unwrap()
    }

    #[test]
    fn horizontal_line_wall() {
        let ball = z2(3);
        let (wall, rep) = build_hwall(&ball, &HWallSpec::CoordinateHalfspace { axis: 1, thick: true }).unwrap();
        assert_eq!(wall.carrier().count(), 7);
        assert_eq!(rep.carrier_orbits, 1);
        assert_eq!(rep.side_swapping, 0);
        assert_eq!(rep.frontier_status, FrontierStatus::Verified);
    }

    #[test]
    fn axis_wall_in_free_group() {
        let ball = f2(3);
        let spec = HWallSpec::CyclicAxis {
            generator: 0,
            left_letters: vec!["b".into()],
        };
        let (wall, rep) = build_hwall(&ball, &spec).unwrap();
        // The axis a^k, |k| <= 3.
        assert_eq!(wall.carrier().count(), 7);
        assert_eq!(rep.carrier_orbits, 1);
        assert_eq!(rep.frontier_status, FrontierStatus::Verified);
    }

    #[test]
    fn explicit_wall_must_cover() {
        let ball = f2(1);
        let spec = HWallSpec::Explicit {
            left: vec!["e".into(), "a".into(), "A".into()],
            right: vec!["e".into(), "b".into()],
            subgroup: SubgroupSpec::Trivial,
        };
        assert!(matches!(build_hwall(&ball, &spec), Err(Error::CoverageViolation { .. })));
    }

    #[test]
    fn invariance_violation_is_reported() {
        let ball = z2(2);
        let spec = HWallSpec::Explicit {
            left: ["(0,0)", "(-1,0)", "(-2,0)", "(0,1)", "(0,-1)", "(-1,1)", "(-1,-1)", "(0,2)", "(0,-2)"]
                .map(String::from)
                .to_vec(),
            right: ["(1,0)", "(2,0)", "(1,1)", "(1,-1)"].map(String::from).to_vec(),
            subgroup: SubgroupSpec::Coordinate { axes: vec![0] },
        };
        assert!(matches!(build_hwall(&ball, &spec), Err(Error::InvarianceViolation { .. })));
    }

    #[test]
    fn free_group_axis_system_is_a_tree() {
        let ball = f2(3);
        let sys = generate_hwall_system(
            &ball,
            &[HWallSpec::CyclicAxis {
                generator: 0,
                left_letters: vec!["b".into()],
            }],
        )
        .unwrap();
        assert!(sys.ws.validate().ok);
        let cc = build_dual(&sys.ws, 0, &BuildOptions::default()).unwrap();
        assert_eq!(cc.dimension(), 1);
        assert_eq!(cc.edges().len() + 1, cc.vertices().len());
    }

    #[test]
    fn empty_spec_list() {
        let sys = generate_hwall_system(&z2(1), &[]).unwrap();
        assert_eq!(sys.ws.num_walls(), 0);
    }

    #[test]
    fn thin_coordinate_walls_on_z2() {
        let ball = z2(4);
        let specs = [
            HWallSpec::CoordinateHalfspace { axis: 0, thick: false },
            HWallSpec::CoordinateHalfspace { axis: 1, thick: false },
        ];
        let sys = generate_hwall_system(&ball, &specs).unwrap();
        assert_eq!(sys.ws.num_points(), 41);
        assert_eq!(sys.ws.num_walls(), 16);
        assert_eq!(sys.dropped_vacuous, 2);
    }

    #[test]
    fn cyclic_membership() {
        let f = GroupSpec::Free { rank: 2 };
        let h = SubgroupSpec::Cyclic { word: "ab".into() };
        assert!(h.contains(&f, &f.parse("ababab").unwrap()).unwrap());
        assert!(h.contains(&f, &f.parse("BABA").unwrap()).unwrap());
        assert!(!h.contains(&f, &f.parse("aba").unwrap()).unwrap());
        let z = GroupSpec::FreeAbelian { rank: 2 };
        let h = SubgroupSpec::Cyclic { word: "ab".into() };
        assert!(h.contains(&z, &z.parse("(-2,-2)").unwrap()).unwrap());
        assert!(!h.contains(&z, &z.parse("(2,1)").unwrap()).unwrap());
    }
}
