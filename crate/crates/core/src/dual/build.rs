use std::collections::{HashMap, HashSet, VecDeque};

use crate::bitset::BitSet;
use crate::caps::Caps;
use crate::clique;
use crate::error::{Error, Result};
use crate::wallspace::{Side, Wallspace};

use super::complex::{Cube, CubeComplex, Edge};
use super::order;

/// How cubes of dimension two and up are found once the vertices are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CubeMethod {
    /// Repeatedly add every cube whose boundary faces are all present.
    Literal,
    /// At each vertex, every set of pairwise transverse flippable walls spans a cube.
    #[default]
    Transverse,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct BuildOptions {
    pub caps: Caps,
    pub method: CubeMethod,
}

impl BuildOptions {
    pub fn with_caps(caps: Caps) -> Self {
        Self {
            caps,
            ..Self::default()
        }
    }

    pub fn literal(mut self) -> Self {
        self.method = CubeMethod::Literal;
        self
    }
}

/// The dual complex reached from the canonical cube of `basepoint` by
/// flipping one wall at a time, with cubes filled in afterwards.
pub fn build_dual(ws: &Wallspace, basepoint: usize, opts: &BuildOptions) -> Result<CubeComplex> {
    ws.check_point(basepoint)?;
    opts.caps.check_ground(ws.num_points(), ws.num_walls())?;
    let m = ws.num_walls();
    let seed = canonical_cube(ws, basepoint)?.anchor;
    let mut index: HashMap<BitSet, usize> = HashMap::from([(seed.clone(), 0)]);
    let mut vertices = vec![seed];
    let mut queue = VecDeque::from([0usize]);
    while let Some(id) = queue.pop_front() {
        let o = vertices[id].clone();
        let chosen = ws.chosen(&o);
        for w in 0..m {
            if !ws.flippable_chosen(&chosen, &o, w) {
                continue;
            }
            let next = o.toggled(w);
            if index.contains_key(&next) {
                continue;
            }
            if vertices.len() >= opts.caps.vertices {
                return Err(Error::cap("vertex", opts.caps.vertices));
            }
            index.insert(next.clone(), vertices.len());
            queue.push_back(vertices.len());
            vertices.push(next);
        }
    }
    complete(ws, vertices, opts.method)
}

/// Every orientation satisfying the pairwise-intersection condition, found
/// by backtracking over walls in index order. Ground-truth oracle for
/// [`build_dual`].
pub fn enumerate_all_orientations(ws: &Wallspace, opts: &BuildOptions) -> Result<CubeComplex> {
    opts.caps.check_ground(ws.num_points(), ws.num_walls())?;
    let m = ws.num_walls();
    let mut found = Vec::new();
    let mut cur = BitSet::new(m);
    let mut chosen: Vec<usize> = Vec::with_capacity(m);
    backtrack(ws, 0, &mut cur, &mut chosen, &mut found, opts.caps.vertices)?;
    found.sort();
    complete(ws, found, opts.method)
}

fn backtrack(
    ws: &Wallspace,
    w: usize,
    cur: &mut BitSet,
    chosen: &mut Vec<usize>,
    out: &mut Vec<BitSet>,
    cap: usize,
) -> Result<()> {
    if w == ws.num_walls() {
        if out.len() >= cap {
            return Err(Error::cap("vertex", cap));
        }
        out.push(cur.clone());
        return Ok(());
    }
    for s in 0..2u8 {
        let h = 2 * w + s as usize;
        let row = ws.meets(h);
        if row.contains(h) && chosen.iter().all(|&c| row.contains(c)) {
            cur.set(w, s == 1);
            chosen.push(h);
            backtrack(ws, w + 1, cur, chosen, out, cap)?;
            chosen.pop();
        }
    }
    cur.remove(w);
    Ok(())
}

/// Adds edges between vertices differing on one wall, then higher cubes.
pub fn complete(ws: &Wallspace, vertices: Vec<BitSet>, method: CubeMethod) -> Result<CubeComplex> {
    let m = ws.num_walls();
    let index: HashMap<&BitSet, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    let mut flips: Vec<BitSet> = Vec::with_capacity(vertices.len());
    for (u, o) in vertices.iter().enumerate() {
        let mut f = BitSet::new(m);
        for w in 0..m {
            if let Some(&v) = index.get(&o.toggled(w)) {
                f.insert(w);
                if !o.contains(w) {
                    edges.push(Edge { u, v, wall: w });
                }
            }
        }
        flips.push(f);
    }
    let cubes = match method {
        CubeMethod::Transverse => transverse_cubes(ws, &vertices, &flips),
        CubeMethod::Literal => literal_cubes(&vertices, &edges, &index),
    };
    CubeComplex::from_parts(m, vertices, edges, cubes)
}

fn transverse_cubes(ws: &Wallspace, vertices: &[BitSet], flips: &[BitSet]) -> Vec<Cube> {
    let adj = ws.transversality_graph();
    let mut out = Vec::new();
    for (o, f) in vertices.iter().zip(flips) {
        // Anchor: the vertex sits on side 0 of every free wall.
        let up = f.difference(o);
        clique::for_each_clique(&adj, &up, 2, |walls| out.push(Cube::new(walls.to_vec(), o.clone())));
    }
    out.sort();
    out
}

fn literal_cubes(vertices: &[BitSet], edges: &[Edge], index: &HashMap<&BitSet, usize>) -> Vec<Cube> {
    let mut layer: HashSet<Cube> = edges
        .iter()
        .map(|e| Cube::new(vec![e.wall], vertices[e.u].clone()))
        .collect();
    let mut out = Vec::new();
    loop {
        let mut next: HashSet<Cube> = HashSet::new();
        for c in &layer {
            let top = *c.walls.last().expect("cubes here have dimension >= 1");
            let m = c.anchor.domain();
            for w in top + 1..m {
                if c.anchor.contains(w) || !index.contains_key(&c.anchor.toggled(w)) {
                    continue;
                }
                let mut walls = c.walls.clone();
                walls.push(w);
                let cand = Cube::new(walls, c.anchor.clone());
                if facets(&cand).all(|f| layer.contains(&f)) {
                    next.insert(cand);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out.sort();
    out
}

/// The `2k` codimension-one faces of a cube.
pub fn facets(c: &Cube) -> impl Iterator<Item = Cube> + '_ {
    c.walls.iter().flat_map(move |&t| {
        let rest: Vec<usize> = c.walls.iter().copied().filter(|&w| w != t).collect();
        [Cube::new(rest.clone(), c.anchor.clone()), Cube::new(rest, c.anchor.toggled(t))]
    })
}

/// Betwixting walls free, every other wall oriented toward `x`.
pub fn canonical_cube(ws: &Wallspace, x: usize) -> Result<Cube> {
    let betwixt = ws.betwixt_set(x)?;
    Ok(Cube::new(betwixt, ws.orientation_toward(x)))
}

/// Cube whose free walls are `family` plus the walls betwixting `p` that are
/// transverse to all of `family`. Walls crossing no member of the family
/// face it; the rest face `p`.
pub fn cube_from_family(ws: &Wallspace, family: &[usize], p: usize) -> Result<Cube> {
    ws.check_point(p)?;
    for &i in family {
        ws.check_wall(i)?;
        if ws.wall(i).is_vacuous() {
            return Err(Error::Invalid(format!("wall {i} is vacuous")));
        }
    }
    for (a, &i) in family.iter().enumerate() {
        for &j in &family[a + 1..] {
            if i == j {
                return Err(Error::SameWall(i));
            }
            if !ws.is_transverse(i, j) {
                return Err(Error::NotTransverse(i, j));
            }
        }
    }
    let mut free: Vec<usize> = family.to_vec();
    let mut anchor = BitSet::new(ws.num_walls());
    for w in 0..ws.num_walls() {
        if family.contains(&w) {
            continue;
        }
        let wall = ws.wall(w);
        let crossed_all = family.iter().all(|&i| ws.is_transverse(w, i));
        if crossed_all {
            let betwixts = wall.left.contains(p) && wall.right.contains(p);
            if betwixts {
                free.push(w);
            } else {
                anchor.set(w, wall.side_of(p) == Some(1));
            }
            continue;
        }
        // Only the side meeting both sides of each non-crossed member works;
        // non-transversality leaves at most one such side per member.
        let mut allowed = [true, true];
        for &i in family.iter().filter(|&&i| !ws.is_transverse(w, i)) {
            let fi = ws.wall(i);
            for s in 0..2u8 {
                if !(wall.side(s).intersects(&fi.left) && wall.side(s).intersects(&fi.right)) {
                    allowed[s as usize] = false;
                }
            }
        }
        match allowed {
            [true, false] => anchor.remove(w),
            [false, true] => anchor.insert(w),
            _ => return Err(Error::OrientationConflict(w)),
        }
    }
    Ok(Cube::new(free, anchor))
}

/// Result of walking a vertex to the canonical cube of a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathToCanonical {
    /// Walls flipped, in order.
    pub flips: Vec<usize>,
    /// Orientations visited, starting with the input and ending in the canonical cube.
    pub vertices: Vec<BitSet>,
}

/// Flips, one at a time, a minimal misoriented wall until every wall not
/// betwixting `x0` faces it. The lowest index breaks ties.
pub fn path_to_canonical(ws: &Wallspace, c: &BitSet, x0: usize) -> Result<PathToCanonical> {
    ws.check_point(x0)?;
    if !ws.is_zero_cube(c)? {
        return Err(Error::InvalidZeroCube);
    }
    let mut cur = c.clone();
    let mut flips = Vec::new();
    let mut visited = vec![cur.clone()];
    loop {
        let mis: Vec<usize> = (0..ws.num_walls())
            .filter(|&w| !ws.wall(w).side(cur.contains(w) as Side).contains(x0))
            .collect();
        let Some(&w) = order::minimal_walls(ws, &cur, &mis).first() else {
            break;
        };
        cur.toggle(w);
        if !ws.is_zero_cube_unchecked(&cur) {
            return Err(Error::InvalidZeroCube);
        }
        flips.push(w);
        visited.push(cur.clone());
    }
    Ok(PathToCanonical {
        flips,
        vertices: visited,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn opts() -> BuildOptions {
        BuildOptions::default()
    }

    #[test]
    fn fig3_has_one_three_cube() {
        let ws = generators::fig3();
        let cc = build_dual(&ws, 0, &opts()).unwrap();
        assert_eq!(cc.dimension(), 3);
        assert_eq!(cc.counts_by_dim().get(3), Some(&1));
        let all = enumerate_all_orientations(&ws, &opts()).unwrap();
        assert_eq!(cc.sorted_vertex_set(), all.sorted_vertex_set());
        assert_eq!(cc.sorted_cube_set(), all.sorted_cube_set());
    }

    #[test]
    fn grid_counts() {
        for n in 1..=4 {
            let cc = build_dual(&generators::grid(n), 0, &opts()).unwrap();
            assert_eq!(cc.counts_by_dim(), vec![(n + 1) * (n + 1), 2 * n * (n + 1), n * n]);
        }
    }

    #[test]
    fn empty_and_vacuous_walls_give_a_point() {
        let ws = Wallspace::from_names(&["p"], &[], 0).unwrap();
        assert_eq!(build_dual(&ws, 0, &opts()).unwrap().counts_by_dim(), vec![1]);
        // A lone vacuous wall must face the whole set: its empty side meets nothing.
        let vac = Wallspace::from_names(&["p", "q"], &[(&["p", "q"], &[])], 0).unwrap();
        let all = enumerate_all_orientations(&vac, &opts()).unwrap();
        assert_eq!(all.counts_by_dim(), vec![1]);
    }

    #[test]
    fn non_hausdorff_is_one_edge() {
        let ws = generators::non_hausdorff3();
        let all = enumerate_all_orientations(&ws, &opts()).unwrap();
        assert_eq!(all.counts_by_dim(), vec![2, 1]);
    }

    #[test]
    fn literal_and_transverse_agree_on_fig3() {
        let ws = generators::fig3();
        let a = build_dual(&ws, 2, &opts()).unwrap();
        let b = build_dual(&ws, 2, &opts().literal()).unwrap();
        assert_eq!(a.sorted_cube_set(), b.sorted_cube_set());
    }

    #[test]
    fn vertex_cap_is_enforced() {
        let ws = generators::grid(3);
        let caps = Caps {
            vertices: 5,
            ..Caps::default()
        };
        assert!(matches!(
            build_dual(&ws, 0, &BuildOptions::with_caps(caps)),
            Err(Error::StateSpaceCap { .. })
        ));
    }

    #[test]
    fn fig3_cube_from_family() {
        let ws = generators::fig3();
        let a = ws.point("a").unwrap();
        let c = cube_from_family(&ws, &[2, 3], a).unwrap();
        assert_eq!(c.walls, vec![2, 3]);
        let cc = build_dual(&ws, a, &opts()).unwrap();
        assert!(cc.contains_cube(&c));
        assert_eq!(cube_from_family(&ws, &[1, 2], a), Err(Error::NotTransverse(1, 2)));
        let canon = cube_from_family(&ws, &[], ws.point("c").unwrap()).unwrap();
        assert_eq!(canon, canonical_cube(&ws, ws.point("c").unwrap()).unwrap());
    }

    #[test]
    fn grid_path_to_origin() {
        let ws = generators::grid(2);
        let far = ws.orientation_toward(ws.point("(2,2)").unwrap());
        let p = path_to_canonical(&ws, &far, 0).unwrap();
        assert_eq!(p.flips.len(), 4);
        let canon = canonical_cube(&ws, 0).unwrap();
        assert!(canon.contains_orientation(p.vertices.last().unwrap()));
        let here = path_to_canonical(&ws, &canon.anchor, 0).unwrap();
        assert!(here.flips.is_empty());
    }
}
