//! Hemiwallspaces: a choice of retained halfspaces that fixes the side of
//! every wall with only one retained halfspace. Their duals are convex
//! subcomplexes of the full dual complex.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::dual::{Cube, CubeComplex, WallMap};
use crate::error::{Error, Result};
use crate::wallspace::{Side, Wallspace};

/// Rule selecting retained halfspaces from a peripheral set `P`.
/// Radii are in metric units; `tau` stands in for infinite diameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InducedVariant {
    /// `U ∩ P` nonempty.
    U0,
    /// `U ∩ N_r(P)` nonempty.
    Ur { r: f64 },
    /// `diam(U ∩ P) >= tau`.
    Uinf { tau: f64 },
    /// `diam(U ∩ N_r(P)) >= tau` for some `r <= r_max`; by monotonicity in
    /// `r` this is evaluated at `r = r_max`.
    Ustar { r_max: f64, tau: f64 },
    /// `diam(U ∩ N_r(P)) >= tau`.
    UrStar { r: f64, tau: f64 },
}

impl InducedVariant {
    pub fn name(&self) -> &'static str {
        match self {
            Self::U0 => "U0",
            Self::Ur { .. } => "Ur",
            Self::Uinf { .. } => "Uinf",
            Self::Ustar { .. } => "Ustar",
            Self::UrStar { .. } => "UrStar",
        }
    }

    fn check(&self) -> Result<()> {
        let (r, tau) = match *self {
            Self::U0 => (0.0, 1.0),
            Self::Ur { r } => (r, 1.0),
            Self::Uinf { tau } => (0.0, tau),
            Self::Ustar { r_max, tau } => (r_max, tau),
            Self::UrStar { r, tau } => (r, tau),
        };
        if !(r >= 0.0) || !(tau >= 1.0) {
            return Err(Error::Invalid(format!("variant {} needs r >= 0 and tau >= 1", self.name())));
        }
        Ok(())
    }

    pub fn radius(&self) -> Option<f64> {
        match *self {
            Self::Ur { r } | Self::UrStar { r, .. } => Some(r),
            Self::Ustar { r_max, .. } => Some(r_max),
            _ => None,
        }
    }

    pub fn tau(&self) -> Option<f64> {
        match *self {
            Self::Uinf { tau } | Self::Ustar { tau, .. } | Self::UrStar { tau, .. } => Some(tau),
            _ => None,
        }
    }
}

/// Per wall: `None` when both halfspaces are retained (independent),
/// otherwise the single retained side.
#[derive(Debug, Clone, PartialEq)]
pub struct Hemiwallspace {
    pub fixed: Vec<Option<Side>>,
    pub variant: Option<InducedVariant>,
    pub periphery: Option<BitSet>,
}

impl Hemiwallspace {
    /// Hemiwallspace from explicit fixed sides, without a generating set.
    pub fn from_fixed(fixed: Vec<Option<Side>>) -> Self {
        Self {
            fixed,
            variant: None,
            periphery: None,
        }
    }

    pub fn independent(&self) -> Vec<usize> {
        (0..self.fixed.len()).filter(|&w| self.fixed[w].is_none()).collect()
    }

    pub fn dependent(&self) -> Vec<usize> {
        (0..self.fixed.len()).filter(|&w| self.fixed[w].is_some()).collect()
    }

    pub fn retains(&self, w: usize, s: Side) -> bool {
        self.fixed[w].is_none_or(|f| f == s)
    }

    pub fn contains_orientation(&self, o: &BitSet) -> bool {
        self.fixed
            .iter()
            .enumerate()
            .all(|(w, f)| f.is_none_or(|s| o.contains(w) == (s == 1)))
    }

    /// Every halfspace used by the cube (both sides of its free walls, the
    /// anchor side of the rest) is retained.
    pub fn represents(&self, cube: &Cube) -> bool {
        (0..self.fixed.len()).all(|w| {
            if cube.walls.binary_search(&w).is_ok() {
                self.fixed[w].is_none()
            } else {
                self.retains(w, cube.anchor.contains(w) as Side)
            }
        })
    }
}

/// Retained halfspaces per wall for the given variant.
pub fn retained(ws: &Wallspace, p: &BitSet, v: &InducedVariant) -> Result<Vec<[bool; 2]>> {
    v.check()?;
    if p.is_empty() {
        return Err(Error::Invalid("peripheral set is empty".into()));
    }
    let near = |r: f64| -> Result<BitSet> {
        let m = ws.require_metric()?;
        Ok(m.neighborhood(p, r.floor() as u64))
    };
    let diam_at_least = |s: &BitSet, tau: f64| -> Result<bool> { Ok(ws.require_metric()?.diameter_of(s) as f64 >= tau) };
    let mut out = Vec::with_capacity(ws.num_walls());
    let region = match *v {
        InducedVariant::U0 | InducedVariant::Uinf { .. } => p.clone(),
        InducedVariant::Ur { r } | InducedVariant::UrStar { r, .. } => near(r)?,
        InducedVariant::Ustar { r_max, .. } => near(r_max)?,
    };
    for wall in ws.walls() {
        let mut keep = [false; 2];
        for s in 0..2u8 {
            let meet = wall.side(s).intersection(&region);
            keep[s as usize] = match v.tau() {
                None => !meet.is_empty(),
                Some(tau) => diam_at_least(&meet, tau)?,
            };
        }
        out.push(keep);
    }
    Ok(out)
}

/// The hemiwallspace induced by `p` under `variant`.
pub fn induce_hemi(ws: &Wallspace, p: &BitSet, variant: InducedVariant) -> Result<Hemiwallspace> {
    let keep = retained(ws, p, &variant)?;
    let bad: Vec<usize> = (0..keep.len()).filter(|&w| keep[w] == [false, false]).collect();
    if !bad.is_empty() {
        return Err(Error::NotAHemiwallspace(bad));
    }
    let fixed = keep
        .iter()
        .map(|k| match k {
            [true, true] => None,
            [true, false] => Some(0),
            _ => Some(1),
        })
        .collect();
    Ok(Hemiwallspace {
        fixed,
        variant: Some(variant),
        periphery: Some(p.clone()),
    })
}

/// Vertex ids of the full subcomplex agreeing with every fixed side.
pub fn dual_sub(cc: &CubeComplex, hemi: &Hemiwallspace) -> Result<Vec<usize>> {
    if hemi.fixed.len() != cc.num_walls() {
        return Err(Error::Invalid("hemiwallspace and complex have different walls".into()));
    }
    let out: Vec<usize> = (0..cc.vertices().len())
        .filter(|&v| hemi.contains_orientation(cc.vertex(v)))
        .collect();
    if out.is_empty() {
        return Err(Error::EmptySubcomplex);
    }
    Ok(out)
}

pub fn represented_in(cube: &Cube, hemi: &Hemiwallspace) -> bool {
    hemi.represents(cube)
}

/// The wallspace with dependent walls deleted, and the wall map carrying its
/// dual onto the subcomplex of the parent dual.
pub fn forget_dependent(ws: &Wallspace, hemi: &Hemiwallspace) -> Result<(Wallspace, WallMap)> {
    let keep = hemi.independent();
    let sub = ws.restrict_walls(&keep)?;
    let base = BitSet::from_indices(ws.num_walls(), (0..ws.num_walls()).filter(|&w| hemi.fixed[w] == Some(1)));
    let map = WallMap {
        map: keep.iter().map(|&w| (w, false)).collect(),
        base,
    };
    Ok((sub, map))
}
