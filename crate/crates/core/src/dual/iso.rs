//! Isomorphisms of dual complexes induced by maps between wall sets.

use crate::bitset::BitSet;

use super::complex::{Cube, CubeComplex};

/// Sends source wall `w` to target wall `map[w].0`, swapping sides when
/// `map[w].1` is set. Target walls outside the image take their side from `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallMap {
    pub map: Vec<(usize, bool)>,
    pub base: BitSet,
}

impl WallMap {
    pub fn apply(&self, o: &BitSet) -> BitSet {
        let mut out = self.base.clone();
        for (w, &(t, flip)) in self.map.iter().enumerate() {
            out.set(t, o.contains(w) ^ flip);
        }
        out
    }

    pub fn apply_cube(&self, c: &Cube) -> Cube {
        Cube::new(c.walls.iter().map(|&w| self.map[w].0).collect(), self.apply(&c.anchor))
    }
}

/// Checks that `map` carries `src` isomorphically onto the full subcomplex
/// of `dst` spanned by `target` (all of `dst` when `None`), matching edge
/// labels and cubes. Returns a description of the first mismatch.
pub fn check_labelled_isomorphism(
    src: &CubeComplex,
    dst: &CubeComplex,
    map: &WallMap,
    target: Option<&[usize]>,
) -> Result<(), String> {
    let n_dst = dst.vertices().len();
    let target: BitSet = match target {
        Some(t) => BitSet::from_indices(n_dst, t.iter().copied()),
        None => BitSet::full(n_dst),
    };
    let mut image = BitSet::new(n_dst);
    let mut vmap = Vec::with_capacity(src.vertices().len());
    for (i, o) in src.vertices().iter().enumerate() {
        let Some(j) = dst.vertex_id(&map.apply(o)) else {
            return Err(format!("vertex {i} has no image"));
        };
        if image.contains(j) {
            return Err(format!("vertex {i} collides with another image"));
        }
        image.insert(j);
        vmap.push(j);
    }
    if image != target {
        return Err(format!(
            "image has {} vertices, target has {}",
            image.count(),
            target.count()
        ));
    }
    for (k, e) in src.edges().iter().enumerate() {
        let ok = dst
            .edge_between(vmap[e.u], vmap[e.v])
            .is_some_and(|f| dst.edges()[f].wall == map.map[e.wall].0);
        if !ok {
            return Err(format!("edge {k} does not map to an edge with the mapped label"));
        }
    }
    let dst_edges = dst
        .edges()
        .iter()
        .filter(|e| target.contains(e.u) && target.contains(e.v))
        .count();
    if dst_edges != src.edges().len() {
        return Err(format!("edge counts differ: {} vs {dst_edges}", src.edges().len()));
    }
    for c in src.higher_cubes() {
        if !dst.contains_cube(&map.apply_cube(&c.cube)) {
            return Err(format!("cube on walls {:?} has no image", c.cube.walls));
        }
    }
    let dst_cubes = dst
        .higher_cubes()
        .iter()
        .filter(|c| c.vertices.iter().all(|&v| target.contains(v)))
        .count();
    if dst_cubes != src.higher_cubes().len() {
        return Err(format!(
            "higher cube counts differ: {} vs {dst_cubes}",
            src.higher_cubes().len()
        ));
    }
    Ok(())
}
