//! Finite wallspaces: a ground set with an indexed family of halfspace pairs.
//!
//! Walls are identified by their position in the wall list. Each wall also
//! carries an integer `label` used for display and serialization. Two walls
//! with equal halfspaces but different positions are different walls.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::BitSet;
use crate::clique;
use crate::error::{Error, Result};
use crate::metric::Metric;

/// Side tag of a wall: 0 selects `left`, 1 selects `right`.
pub type Side = u8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub label: i64,
    pub left: BitSet,
    pub right: BitSet,
}

impl Wall {
    pub fn new(label: i64, left: BitSet, right: BitSet) -> Self {
        assert_eq!(left.domain(), right.domain(), "halfspaces over different ground sets");
        Self { label, left, right }
    }

    #[inline]
    pub fn side(&self, s: Side) -> &BitSet {
        if s == 0 {
            &self.left
        } else {
            &self.right
        }
    }

    /// The side minus the other side.
    pub fn open_side(&self, s: Side) -> BitSet {
        self.side(s).difference(self.side(1 - s))
    }

    pub fn carrier(&self) -> BitSet {
        self.left.intersection(&self.right)
    }

    pub fn is_genuine_partition(&self) -> bool {
        !self.left.is_empty() && !self.right.is_empty() && !self.left.intersects(&self.right)
    }

    pub fn is_vacuous(&self) -> bool {
        (self.left.is_full() && self.right.is_empty()) || (self.right.is_full() && self.left.is_empty())
    }

    pub fn uncovered(&self) -> BitSet {
        self.left.union(&self.right).complement()
    }

    /// Equal as unordered pairs of halfspaces.
    pub fn same_halfspaces(&self, other: &Wall) -> bool {
        (self.left == other.left && self.right == other.right)
            || (self.left == other.right && self.right == other.left)
    }

    /// Side containing `x` when `x` lies in exactly one side.
    pub fn side_of(&self, x: usize) -> Option<Side> {
        match (self.left.contains(x), self.right.contains(x)) {
            (true, false) => Some(0),
            (false, true) => Some(1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WallPairClass {
    Transverse,
    EqualAsIndexedWalls,
    Osculating,
    Separated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageIssue {
    pub wall: usize,
    pub missing: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub coverage_violations: Vec<CoverageIssue>,
    pub duplicate_genuine_partitions: Vec<(usize, usize)>,
    pub duplicate_non_partitions: Vec<(usize, usize)>,
    pub vacuous_walls: Vec<usize>,
    pub genuine_partitions: Vec<usize>,
    pub betwixt_counts: Vec<usize>,
}

impl ValidationReport {
    pub fn first_error(&self) -> Option<Error> {
        if let Some(c) = self.coverage_violations.first() {
            return Some(Error::CoverageViolation {
                wall: c.wall,
                missing: c.missing.clone(),
            });
        }
        self.duplicate_genuine_partitions
            .first()
            .map(|&(i, j)| Error::DuplicateGenuinePartition(i, j))
    }
}

#[derive(Debug, Clone)]
pub struct Wallspace {
    points: Vec<String>,
    point_index: HashMap<String, usize>,
    walls: Vec<Wall>,
    metric: Option<Metric>,
    /// `meets[h]` is the set of halfspaces meeting halfspace `h = 2w + side`.
    meets: Vec<BitSet>,
}

impl PartialEq for Wallspace {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.walls == other.walls && self.metric == other.metric
    }
}

impl Eq for Wallspace {}

#[inline]
pub fn halfspace(w: usize, s: Side) -> usize {
    2 * w + s as usize
}

impl Wallspace {
    /// Builds and validates. Fails on the first coverage violation or
    /// duplicated genuine partition.
    pub fn new(points: Vec<String>, walls: Vec<Wall>, metric: Option<Metric>) -> Result<Self> {
        let ws = Self::unchecked(points, walls, metric)?;
        match ws.validate().first_error() {
            Some(e) => Err(e),
            None => Ok(ws),
        }
    }

    /// Checks only structural consistency (unique names, matching domains,
    /// distinct labels); the wallspace axioms are left to [`Self::validate`].
    pub fn unchecked(points: Vec<String>, walls: Vec<Wall>, metric: Option<Metric>) -> Result<Self> {
        let n = points.len();
        let mut point_index = HashMap::with_capacity(n);
        for (i, p) in points.iter().enumerate() {
            if point_index.insert(p.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate point id {p:?}")));
            }
        }
        let mut labels = HashMap::new();
        for (i, w) in walls.iter().enumerate() {
            if w.left.domain() != n || w.right.domain() != n {
                return Err(Error::Invalid(format!("wall {i} is not over the ground set")));
            }
            if let Some(j) = labels.insert(w.label, i) {
                return Err(Error::Invalid(format!(
                    "walls {j} and {i} share the index {}",
                    w.label
                )));
            }
        }
        if let Some(m) = &metric {
            if m.len() != n {
                return Err(Error::InvalidMetric("metric size differs from ground set".into()));
            }
        }
        let meets = meets_table(&walls);
        Ok(Self {
            points,
            point_index,
            walls,
            metric,
            meets,
        })
    }

    /// Convenience constructor from point names and `(left, right)` name lists.
    /// Wall labels are `first_label, first_label + 1, ...`.
    pub fn from_names(points: &[&str], walls: &[(&[&str], &[&str])], first_label: i64) -> Result<Self> {
        let names: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let idx: HashMap<&str, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let n = points.len();
        let set = |xs: &[&str]| -> Result<BitSet> {
            let mut b = BitSet::new(n);
            for x in xs {
                b.insert(*idx.get(x).ok_or_else(|| Error::UnknownPoint(x.to_string()))?);
            }
            Ok(b)
        };
        let mut ws = Vec::new();
        for (i, (l, r)) in walls.iter().enumerate() {
            ws.push(Wall::new(first_label + i as i64, set(l)?, set(r)?));
        }
        Self::new(names, ws, None)
    }

    pub fn with_metric(mut self, metric: Metric) -> Result<Self> {
        if metric.len() != self.points.len() {
            return Err(Error::InvalidMetric("metric size differs from ground set".into()));
        }
        self.metric = Some(metric);
        Ok(self)
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_walls(&self) -> usize {
        self.walls.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn point(&self, name: &str) -> Result<usize> {
        self.point_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn wall(&self, i: usize) -> &Wall {
        &self.walls[i]
    }

    /// Position of the wall with the given label.
    pub fn wall_by_label(&self, label: i64) -> Option<usize> {
        self.walls.iter().position(|w| w.label == label)
    }

    pub fn metric(&self) -> Option<&Metric> {
        self.metric.as_ref()
    }

    pub fn require_metric(&self) -> Result<&Metric> {
        self.metric.as_ref().ok_or(Error::MetricRequired)
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::full(self.num_points())
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.num_points())
    }

    pub fn check_point(&self, x: usize) -> Result<()> {
        if x < self.points.len() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(format!("#{x}")))
        }
    }

    pub fn check_wall(&self, i: usize) -> Result<()> {
        if i < self.walls.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                count: self.walls.len(),
            })
        }
    }

    /// `meets[2w+s]`: halfspaces with nonempty intersection with side `s` of wall `w`.
    #[inline]
    pub fn meets(&self, h: usize) -> &BitSet {
        &self.meets[h]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut coverage_violations = Vec::new();
        let mut vacuous_walls = Vec::new();
        let mut genuine_partitions = Vec::new();
        for (i, w) in self.walls.iter().enumerate() {
            let missing = w.uncovered();
            if !missing.is_empty() {
                coverage_violations.push(CoverageIssue {
                    wall: i,
                    missing: missing.to_vec(),
                });
            }
            if w.is_vacuous() {
                vacuous_walls.push(i);
            }
            if w.is_genuine_partition() {
                genuine_partitions.push(i);
            }
        }
        let mut duplicate_genuine_partitions = Vec::new();
        let mut duplicate_non_partitions = Vec::new();
        for i in 0..self.walls.len() {
            for j in i + 1..self.walls.len() {
                if self.walls[i].same_halfspaces(&self.walls[j]) {
                    if self.walls[i].is_genuine_partition() {
                        duplicate_genuine_partitions.push((i, j));
                    } else {
                        duplicate_non_partitions.push((i, j));
                    }
                }
            }
        }
        let betwixt_counts = (0..self.num_points()).map(|x| self.betwixt_walls(x).count()).collect();
        ValidationReport {
            ok: coverage_violations.is_empty() && duplicate_genuine_partitions.is_empty(),
            coverage_violations,
            duplicate_genuine_partitions,
            duplicate_non_partitions,
            vacuous_walls,
            genuine_partitions,
            betwixt_counts,
        }
    }

    /// Walls whose open halfspaces separate `x` and `y`.
    pub fn separating_walls(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok((0..self.walls.len())
            .filter(|&i| {
                let w = &self.walls[i];
                match (w.side_of(x), w.side_of(y)) {
                    (Some(a), Some(b)) => a != b,
                    _ => false,
                }
            })
            .collect())
    }

    /// `#(x, y)`.
    pub fn separation_count(&self, x: usize, y: usize) -> Result<usize> {
        Ok(self.separating_walls(x, y)?.len())
    }

    fn betwixt_walls(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.walls.len()).filter(move |&i| self.walls[i].left.contains(x) && self.walls[i].right.contains(x))
    }

    pub fn betwixt_set(&self, x: usize) -> Result<Vec<usize>> {
        self.check_point(x)?;
        Ok(self.betwixt_walls(x).collect())
    }

    /// Unchecked transversality test for valid indices (equal indices allowed).
    #[inline]
    pub fn is_transverse(&self, i: usize, j: usize) -> bool {
        let m = &self.meets;
        let (a0, a1) = (halfspace(i, 0), halfspace(i, 1));
        let (b0, b1) = (halfspace(j, 0), halfspace(j, 1));
        m[a0].contains(b0) && m[a0].contains(b1) && m[a1].contains(b0) && m[a1].contains(b1)
    }

    pub fn transverse(&self, i: usize, j: usize) -> Result<bool> {
        self.check_pair(i, j)?;
        Ok(self.is_transverse(i, j))
    }

    fn check_pair(&self, i: usize, j: usize) -> Result<()> {
        self.check_wall(i)?;
        self.check_wall(j)?;
        if i == j {
            return Err(Error::SameWall(i));
        }
        Ok(())
    }

    /// Wall `k` separates walls `i` and `j` when some side of `i` and some
    /// side of `j` lie in different open halfspaces of `k`.
    pub fn wall_separates_walls(&self, k: usize, i: usize, j: usize) -> Result<bool> {
        self.check_wall(k)?;
        self.check_pair(i, j)?;
        if k == i || k == j {
            return Err(Error::SameWall(k));
        }
        Ok(self.separates_unchecked(k, i, j))
    }

    pub(crate) fn separates_unchecked(&self, k: usize, i: usize, j: usize) -> bool {
        let wk = &self.walls[k];
        let open = [wk.open_side(0), wk.open_side(1)];
        let (wi, wj) = (&self.walls[i], &self.walls[j]);
        for si in 0..2 {
            for sj in 0..2 {
                let (a, b) = (wi.side(si), wj.side(sj));
                if (a.is_subset(&open[0]) && b.is_subset(&open[1])) || (a.is_subset(&open[1]) && b.is_subset(&open[0])) {
                    return true;
                }
            }
        }
        false
    }

    /// Separates `set` from wall `w`: `set` inside one open halfspace of
    /// `k` and a side of `w` inside the other.
    pub fn separates_set_from_wall(&self, k: usize, set: &BitSet, w: usize) -> bool {
        let wk = &self.walls[k];
        let ww = &self.walls[w];
        (0..2).any(|s| set.is_subset(&wk.open_side(s)) && (0..2).any(|t| ww.side(t).is_subset(&wk.open_side(1 - s))))
    }

    /// Some wall has `a` and `b` in distinct open halfspaces.
    pub fn sets_separated(&self, a: &BitSet, b: &BitSet) -> Option<usize> {
        (0..self.walls.len()).find(|&k| self.wall_separates_sets(k, a, b))
    }

    pub fn wall_separates_sets(&self, k: usize, a: &BitSet, b: &BitSet) -> bool {
        let wk = &self.walls[k];
        let (o0, o1) = (wk.open_side(0), wk.open_side(1));
        (a.is_subset(&o0) && b.is_subset(&o1)) || (a.is_subset(&o1) && b.is_subset(&o0))
    }

    pub fn osculate(&self, i: usize, j: usize) -> Result<bool> {
        self.check_pair(i, j)?;
        Ok(self.osculate_unchecked(i, j))
    }

    pub(crate) fn osculate_unchecked(&self, i: usize, j: usize) -> bool {
        !self.is_transverse(i, j) && !(0..self.walls.len()).any(|k| k != i && k != j && self.separates_unchecked(k, i, j))
    }

    pub fn pair_class(&self, i: usize, j: usize) -> Result<WallPairClass> {
        self.check_pair(i, j)?;
        Ok(if self.is_transverse(i, j) {
            WallPairClass::Transverse
        } else if self.walls[i].same_halfspaces(&self.walls[j]) {
            WallPairClass::EqualAsIndexedWalls
        } else if self.osculate_unchecked(i, j) {
            WallPairClass::Osculating
        } else {
            WallPairClass::Separated
        })
    }

    /// Transversality graph on all walls (vacuous walls are isolated).
    pub fn transversality_graph(&self) -> Vec<BitSet> {
        let m = self.walls.len();
        let mut adj = vec![BitSet::new(m); m];
        for i in 0..m {
            for j in i + 1..m {
                if self.is_transverse(i, j) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        adj
    }

    pub fn nonvacuous_walls(&self) -> BitSet {
        BitSet::from_indices(self.walls.len(), (0..self.walls.len()).filter(|&i| !self.walls[i].is_vacuous()))
    }

    /// Maximal pairwise-transverse families of nonvacuous walls and the
    /// largest family size.
    pub fn max_transverse_families(&self) -> (Vec<Vec<usize>>, usize) {
        let fams = clique::maximal_cliques(&self.transversality_graph(), &self.nonvacuous_walls());
        let k = fams.iter().map(Vec::len).max().unwrap_or(0);
        (fams, k)
    }

    /// Induced wallspace on `y`. Induced vacuous walls are dropped.
    pub fn subwallspace(&self, y: &BitSet) -> Result<Subwallspace> {
        if y.is_empty() {
            return Err(Error::Invalid("subwallspace of an empty set".into()));
        }
        let point_map = y.to_vec();
        let restrict = |s: &BitSet| {
            BitSet::from_indices(point_map.len(), point_map.iter().enumerate().filter(|(_, &p)| s.contains(p)).map(|(i, _)| i))
        };
        let mut walls = Vec::new();
        let mut wall_map = Vec::new();
        for (i, w) in self.walls.iter().enumerate() {
            let nw = Wall::new(w.label, restrict(&w.left), restrict(&w.right));
            if nw.is_vacuous() {
                continue;
            }
            if let Some(k) = walls.iter().position(|o: &Wall| o.same_halfspaces(&nw) && nw.is_genuine_partition()) {
                return Err(Error::DuplicateInducedPartition(wall_map[k], i));
            }
            walls.push(nw);
            wall_map.push(i);
        }
        let points = point_map.iter().map(|&p| self.points[p].clone()).collect();
        let metric = self.metric.as_ref().map(|m| m.restrict(y));
        let ws = Wallspace::new(points, walls, metric)?;
        Ok(Subwallspace { ws, point_map, wall_map })
    }

    /// Same points and metric, keeping only the walls in `keep` (in order).
    pub fn restrict_walls(&self, keep: &[usize]) -> Result<Wallspace> {
        let walls = keep.iter().map(|&i| self.walls[i].clone()).collect();
        Wallspace::new(self.points.clone(), walls, self.metric.clone())
    }

    /// Chosen-halfspace set `{2w + o(w)}` of an orientation.
    pub fn chosen(&self, orientation: &BitSet) -> BitSet {
        let m = self.walls.len();
        BitSet::from_indices(2 * m, (0..m).map(|w| halfspace(w, orientation.contains(w) as Side)))
    }

    fn check_orientation(&self, o: &BitSet) -> Result<()> {
        let m = self.walls.len();
        if o.domain() < m {
            return Err(Error::IncompleteOrientation((o.domain()..m).collect()));
        }
        if o.domain() > m {
            return Err(Error::Invalid(format!("orientation has {} sides for {m} walls", o.domain())));
        }
        Ok(())
    }

    /// Every pair of chosen halfspaces meets, including each with itself.
    pub fn is_zero_cube(&self, orientation: &BitSet) -> Result<bool> {
        self.check_orientation(orientation)?;
        Ok(self.is_zero_cube_unchecked(orientation))
    }

    pub(crate) fn is_zero_cube_unchecked(&self, orientation: &BitSet) -> bool {
        let c = self.chosen(orientation);
        c.iter().all(|h| c.is_subset(&self.meets[h]))
    }

    /// Whether reversing only wall `w` yields another 0-cube.
    pub fn flippable(&self, orientation: &BitSet, w: usize) -> Result<bool> {
        self.check_orientation(orientation)?;
        self.check_wall(w)?;
        if !self.is_zero_cube_unchecked(orientation) {
            return Err(Error::InvalidZeroCube);
        }
        Ok(self.flippable_chosen(&self.chosen(orientation), orientation, w))
    }

    /// Flippability given the precomputed chosen-halfspace set of a valid 0-cube.
    #[inline]
    pub(crate) fn flippable_chosen(&self, chosen: &BitSet, orientation: &BitSet, w: usize) -> bool {
        let s = orientation.contains(w) as Side;
        let (old, new) = (halfspace(w, s), halfspace(w, 1 - s));
        let row = &self.meets[new];
        if !row.contains(new) {
            return false;
        }
        chosen.iter().all(|h| h == old || row.contains(h))
    }

    /// Orientation from an explicit side list; `None` entries are reported missing.
    pub fn orientation_from_sides(&self, sides: &[Option<Side>]) -> Result<BitSet> {
        let m = self.walls.len();
        let missing: Vec<usize> = (0..m).filter(|&i| sides.get(i).copied().flatten().is_none()).collect();
        if !missing.is_empty() {
            return Err(Error::IncompleteOrientation(missing));
        }
        Ok(BitSet::from_indices(m, (0..m).filter(|&i| sides[i] == Some(1))))
    }

    /// Oriented toward `x` where `x` lies in one open side, left-first otherwise.
    pub fn orientation_toward(&self, x: usize) -> BitSet {
        let m = self.walls.len();
        BitSet::from_indices(m, (0..m).filter(|&i| self.walls[i].side_of(x) == Some(1)))
    }
}

fn meets_table(walls: &[Wall]) -> Vec<BitSet> {
    let m = walls.len();
    let mut meets = vec![BitSet::new(2 * m); 2 * m];
    for i in 0..m {
        for si in 0..2u8 {
            let a = walls[i].side(si);
            for j in i..m {
                for sj in 0..2u8 {
                    if a.intersects(walls[j].side(sj)) {
                        let (h, k) = (halfspace(i, si), halfspace(j, sj));
                        meets[h].insert(k);
                        meets[k].insert(h);
                    }
                }
            }
        }
    }
    meets
}

/// An induced wallspace with maps back to the parent.
#[derive(Debug, Clone)]
pub struct Subwallspace {
    pub ws: Wallspace,
    /// Sub point index to parent point index.
    pub point_map: Vec<usize>,
    /// Sub wall index to parent wall index.
    pub wall_map: Vec<usize>,
}
