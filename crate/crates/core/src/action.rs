//! Partial actions on the ground set and the maps they induce on walls and
//! on the dual complex.

use serde::Serialize;

use crate::bitset::BitSet;
use crate::dual::{build_dual, check_labelled_isomorphism, BuildOptions, CubeComplex, WallMap};
use crate::error::{Error, Result};
use crate::wallspace::Wallspace;

/// A partial injective map on points, typically left multiplication by a
/// group element on a truncated Cayley ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionMap {
    pub element: String,
    pub points: Vec<Option<usize>>,
}

impl ActionMap {
    pub fn new(element: impl Into<String>, points: Vec<Option<usize>>) -> Result<Self> {
        let element = element.into();
        let n = points.len();
        let mut seen = BitSet::new(n);
        for (x, y) in points.iter().enumerate() {
            if let Some(y) = *y {
                if y >= n {
                    return Err(Error::IndexOutOfRange { index: y, count: n });
                }
                if seen.contains(y) {
                    return Err(Error::NotAnAutomorphism(format!("{element} sends two points to {y}; first clash at {x}")));
                }
                seen.insert(y);
            }
        }
        Ok(Self { element, points })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            element: "e".into(),
            points: (0..n).map(Some).collect(),
        }
    }

    pub fn from_fn(n: usize, element: impl Into<String>, f: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        Self::new(element, (0..n).map(f).collect())
    }

    /// Map given by point names; unnamed points are outside the domain.
    pub fn from_names(ws: &Wallspace, element: impl Into<String>, pairs: &[(String, String)]) -> Result<Self> {
        let mut points = vec![None; ws.num_points()];
        for (a, b) in pairs {
            points[ws.point(a)?] = Some(ws.point(b)?);
        }
        Self::new(element, points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.points[x]
    }

    pub fn domain(&self) -> BitSet {
        BitSet::from_indices(self.len(), (0..self.len()).filter(|&x| self.points[x].is_some()))
    }

    pub fn image(&self) -> BitSet {
        BitSet::from_indices(self.len(), self.points.iter().flatten().copied())
    }

    pub fn is_total(&self) -> bool {
        self.points.iter().all(Option::is_some)
    }

    /// Image of the part of `set` inside the domain.
    pub fn apply_set(&self, set: &BitSet) -> BitSet {
        BitSet::from_indices(self.len(), set.iter().filter_map(|x| self.points[x]))
    }

    pub fn inverse(&self) -> Self {
        let mut points = vec![None; self.len()];
        for (x, y) in self.points.iter().enumerate() {
            if let Some(y) = *y {
                points[y] = Some(x);
            }
        }
        Self {
            element: format!("({})^-1", self.element),
            points,
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            element: format!("{}*{}", self.element, other.element),
            points: other.points.iter().map(|y| y.and_then(|y| self.points[y])).collect(),
        }
    }

    pub fn power(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity(self.len());
        for _ in 0..n.unsigned_abs() {
            out = base.compose(&out);
        }
        out.element = format!("({})^{n}", self.element);
        out
    }

    /// The wall whose restriction to the image equals the image of the
    /// restriction of wall `w` to the domain, with a flag for swapped sides.
    /// `None` when the restriction is vacuous.
    pub fn wall_image(&self, ws: &Wallspace, w: usize) -> Result<Option<(usize, bool)>> {
        let dom = self.domain();
        let img = self.image();
        let wall = ws.wall(w);
        let a = self.apply_set(&wall.left.intersection(&dom));
        let b = self.apply_set(&wall.right.intersection(&dom));
        if a.is_empty() || b.is_empty() {
            return Ok(None);
        }
        for (k, other) in ws.walls().iter().enumerate() {
            let (l, r) = (other.left.intersection(&img), other.right.intersection(&img));
            if l == a && r == b {
                return Ok(Some((k, false)));
            }
            if l == b && r == a {
                return Ok(Some((k, true)));
            }
        }
        Err(Error::NotAnAutomorphism(format!(
            "wall {} has no image under {}",
            wall.label, self.element
        )))
    }

    /// Induced partial wall permutation. Images must be distinct.
    pub fn wall_permutation(&self, ws: &Wallspace) -> Result<Vec<Option<(usize, bool)>>> {
        if self.len() != ws.num_points() {
            return Err(Error::Invalid(format!(
                "action is on {} points, wallspace has {}",
                self.len(),
                ws.num_points()
            )));
        }
        let mut used = BitSet::new(ws.num_walls());
        let mut out = Vec::with_capacity(ws.num_walls());
        for w in 0..ws.num_walls() {
            let img = self.wall_image(ws, w)?;
            if let Some((k, _)) = img {
                if used.contains(k) {
                    return Err(Error::NotAnAutomorphism(format!(
                        "two walls map to wall {} under {}",
                        ws.wall(k).label,
                        self.element
                    )));
                }
                used.insert(k);
            }
            out.push(img);
        }
        Ok(out)
    }
}

/// Wall map carrying the dual of `src` to the dual of `dst` along a point
/// bijection `phi` (source index to target index).
pub fn wall_map_via_points(src: &Wallspace, dst: &Wallspace, phi: &[usize]) -> Result<WallMap> {
    if phi.len() != src.num_points() || src.num_points() != dst.num_points() {
        return Err(Error::Invalid("point bijection has the wrong size".into()));
    }
    let n = dst.num_points();
    let push = |s: &BitSet| BitSet::from_indices(n, s.iter().map(|x| phi[x]));
    let mut map = Vec::with_capacity(src.num_walls());
    for w in src.walls() {
        let (a, b) = (push(&w.left), push(&w.right));
        let hit = dst.walls().iter().enumerate().find_map(|(k, v)| {
            if v.left == a && v.right == b {
                Some((k, false))
            } else if v.left == b && v.right == a {
                Some((k, true))
            } else {
                None
            }
        });
        map.push(hit.ok_or_else(|| Error::Invalid(format!("wall {} has no counterpart", w.label)))?);
    }
    Ok(WallMap {
        map,
        base: BitSet::new(dst.num_walls()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail")]
pub enum ComplexCheck {
    /// The action is total and induces an automorphism of the whole complex.
    Automorphism,
    /// The dual of the domain maps isomorphically onto the dual of the image.
    InteriorIsomorphism,
    Failed(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivarianceReport {
    pub element: String,
    pub total: bool,
    pub domain_size: usize,
    pub walls_mapped: usize,
    pub walls_undefined: usize,
    /// Point pairs `(x, y)` in the domain with `d(x, y) != d(gx, gy)`.
    pub metric_mismatches: Vec<(String, String)>,
    /// Point pairs with `#(x, y) != #(gx, gy)`.
    pub separation_mismatches: Vec<(String, String)>,
    pub complex: ComplexCheck,
    pub ok: bool,
}

/// Checks that the action preserves the metric, separation counts and the
/// dual complex with its hyperplane labels. For a total action the vertex
/// map `c -> gc` is checked on `cc`; otherwise the duals of the domain and
/// image subwallspaces are built and compared.
pub fn verify_equivariance(
    ws: &Wallspace,
    action: &ActionMap,
    cc: &CubeComplex,
    opts: &BuildOptions,
) -> Result<EquivarianceReport> {
    let perm = action.wall_permutation(ws)?;
    let dom = action.domain().to_vec();
    let name = |x: usize| ws.point_name(x).to_string();
    let mut metric_mismatches = Vec::new();
    let mut separation_mismatches = Vec::new();
    for (i, &x) in dom.iter().enumerate() {
        for &y in &dom[i + 1..] {
            let (gx, gy) = (action.points[x].expect("in domain"), action.points[y].expect("in domain"));
            if let Some(m) = ws.metric() {
                if m.d(x, y) != m.d(gx, gy) {
                    metric_mismatches.push((name(x), name(y)));
                }
            }
            if ws.separation_count(x, y)? != ws.separation_count(gx, gy)? {
                separation_mismatches.push((name(x), name(y)));
            }
        }
    }
    let total = action.is_total();
    let complex = if total {
        let map = WallMap {
            map: perm
                .iter()
                .enumerate()
                .map(|(w, img)| img.unwrap_or((w, false)))
                .collect(),
            base: BitSet::new(ws.num_walls()),
        };
        match check_labelled_isomorphism(cc, cc, &map, None) {
            Ok(()) => ComplexCheck::Automorphism,
            Err(e) => ComplexCheck::Failed(e),
        }
    } else {
        interior_check(ws, action, &perm, opts)?
    };
    let ok = metric_mismatches.is_empty()
        && separation_mismatches.is_empty()
        && matches!(complex, ComplexCheck::Automorphism | ComplexCheck::InteriorIsomorphism);
    Ok(EquivarianceReport {
        element: action.element.clone(),
        total,
        domain_size: dom.len(),
        walls_mapped: perm.iter().flatten().count(),
        walls_undefined: perm.iter().filter(|p| p.is_none()).count(),
        metric_mismatches,
        separation_mismatches,
        complex,
        ok,
    })
}

fn interior_check(
    ws: &Wallspace,
    action: &ActionMap,
    perm: &[Option<(usize, bool)>],
    opts: &BuildOptions,
) -> Result<ComplexCheck> {
    let dom = action.domain();
    if dom.is_empty() {
        return Ok(ComplexCheck::Skipped("empty domain".into()));
    }
    let (src, dst) = match (ws.subwallspace(&dom), ws.subwallspace(&action.image())) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Ok(ComplexCheck::Skipped(e.to_string())),
    };
    let mut map = Vec::with_capacity(src.wall_map.len());
    for &parent in &src.wall_map {
        let Some((img, flip)) = perm[parent] else {
            return Ok(ComplexCheck::Failed(format!("wall {} is nonvacuous on the domain but has no image", ws.wall(parent).label)));
        };
        let Some(k) = dst.wall_map.iter().position(|&p| p == img) else {
            return Ok(ComplexCheck::Failed(format!("image of wall {} is vacuous on the image", ws.wall(parent).label)));
        };
        // Sub wallspaces list sides in parent order, so the flip carries over.
        map.push((k, flip));
    }
    let map = WallMap {
        map,
        base: BitSet::new(dst.ws.num_walls()),
    };
    let a = build_dual(&src.ws, 0, opts)?;
    let b = build_dual(&dst.ws, 0, opts)?;
    Ok(match check_labelled_isomorphism(&a, &b, &map, None) {
        Ok(()) => ComplexCheck::InteriorIsomorphism,
        Err(e) => ComplexCheck::Failed(e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, grid_point_name};

    fn shift(ws: &Wallspace, n: usize) -> ActionMap {
        ActionMap::from_fn(ws.num_points(), "x+1", |p| {
            let (i, j) = (p / (n + 1), p % (n + 1));
            (i < n).then(|| ws.point(&grid_point_name(i + 1, j)).unwrap())
        })
        .unwrap()
    }

    #[test]
    fn grid_shift_is_equivariant_on_the_interior() {
        let ws = generators::grid(3);
        let cc = build_dual(&ws, 0, &BuildOptions::default()).unwrap();
        let g = shift(&ws, 3);
        let r = verify_equivariance(&ws, &g, &cc, &BuildOptions::default()).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.complex, ComplexCheck::InteriorIsomorphism);
        assert_eq!(r.walls_undefined, 1);
        assert_eq!(g.wall_image(&ws, 0).unwrap(), Some((1, false)));
    }

    #[test]
    fn identity_and_reflection_are_automorphisms() {
        let ws = generators::grid(2);
        let cc = build_dual(&ws, 0, &BuildOptions::default()).unwrap();
        let id = ActionMap::identity(ws.num_points());
        let r = verify_equivariance(&ws, &id, &cc, &BuildOptions::default()).unwrap();
        assert_eq!(r.complex, ComplexCheck::Automorphism);
        let flip = ActionMap::from_fn(9, "reflect", |p| Some((2 - p / 3) * 3 + p % 3)).unwrap();
        let r = verify_equivariance(&ws, &flip, &cc, &BuildOptions::default()).unwrap();
        assert!(r.ok, "{r:?}");
        assert_eq!(flip.wall_image(&ws, 0).unwrap(), Some((1, true)));
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let ws = generators::grid(2);
        let cc = build_dual(&ws, 0, &BuildOptions::default()).unwrap();
        // Swap two points of the first column only.
        let bad = ActionMap::from_fn(9, "swap", |p| Some(match p {
            0 => 1,
            1 => 0,
            x => x,
        }))
        .unwrap();
        assert!(matches!(
            verify_equivariance(&ws, &bad, &cc, &BuildOptions::default()),
            Err(Error::NotAnAutomorphism(_))
        ));
        assert!(matches!(
            ActionMap::new("clash", vec![Some(0), Some(0)]),
            Err(Error::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn powers_compose() {
        let ws = generators::grid(3);
        let g = shift(&ws, 3);
        let g2 = g.power(2);
        assert_eq!(g2.domain().count(), 8);
        assert_eq!(g.power(-1).apply(ws.point("(1,0)").unwrap()), Some(0));
        assert_eq!(g.power(0), ActionMap { element: "(x+1)^0".into(), ..ActionMap::identity(16) });
    }
}
