use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A cube of the dual complex: its free walls plus the orientation of its
/// vertex with every free wall on side 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub walls: Vec<usize>,
    pub anchor: BitSet,
}

impl Cube {
    pub fn new(mut walls: Vec<usize>, mut anchor: BitSet) -> Self {
        walls.sort_unstable();
        walls.dedup();
        for &w in &walls {
            anchor.remove(w);
        }
        Self { walls, anchor }
    }

    pub fn vertex(orientation: BitSet) -> Self {
        Self {
            walls: Vec::new(),
            anchor: orientation,
        }
    }

    pub fn dim(&self) -> usize {
        self.walls.len()
    }

    /// Vertex selected by `mask`: bit `k` of the mask flips `walls[k]`.
    pub fn corner(&self, mask: usize) -> BitSet {
        let mut o = self.anchor.clone();
        for (k, &w) in self.walls.iter().enumerate() {
            if mask >> k & 1 == 1 {
                o.insert(w);
            }
        }
        o
    }

    pub fn corners(&self) -> impl Iterator<Item = BitSet> + '_ {
        (0..1usize << self.dim()).map(move |m| self.corner(m))
    }

    pub fn contains_orientation(&self, o: &BitSet) -> bool {
        let mut diff = o.symmetric_difference(&self.anchor);
        for &w in &self.walls {
            diff.remove(w);
        }
        diff.is_empty()
    }

    pub fn is_face_of(&self, other: &Cube) -> bool {
        self.walls.iter().all(|w| other.walls.binary_search(w).is_ok()) && other.contains_orientation(&self.anchor)
    }

    /// Walls on which every vertex of `self` disagrees with every vertex of `other`.
    pub fn separating_walls(&self, other: &Cube) -> Vec<usize> {
        let mut diff = self.anchor.symmetric_difference(&other.anchor);
        for w in self.walls.iter().chain(&other.walls) {
            diff.remove(*w);
        }
        diff.to_vec()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub wall: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredCube {
    pub cube: Cube,
    /// Vertex ids in corner order (see [`Cube::corner`]).
    pub vertices: Vec<usize>,
}

/// Vertices, wall-labelled edges and cubes of dimension at least two.
#[derive(Debug, Clone)]
pub struct CubeComplex {
    num_walls: usize,
    vertices: Vec<BitSet>,
    index: HashMap<BitSet, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    cubes: Vec<StoredCube>,
    cube_index: HashMap<Cube, usize>,
}

impl PartialEq for CubeComplex {
    fn eq(&self, other: &Self) -> bool {
        self.num_walls == other.num_walls
            && self.vertices == other.vertices
            && self.edges == other.edges
            && self.cubes == other.cubes
    }
}

impl CubeComplex {
    /// Assembles a complex from raw parts. Only referential integrity is
    /// checked here; structural consistency is left to the verifiers so that
    /// broken inputs can be diagnosed rather than rejected.
    pub fn from_parts(num_walls: usize, vertices: Vec<BitSet>, edges: Vec<Edge>, cubes: Vec<Cube>) -> Result<Self> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.domain() != num_walls {
                return Err(Error::Invalid(format!("vertex {i} has {} sides for {num_walls} walls", v.domain())));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("vertex {i} repeats an orientation")));
            }
        }
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (k, e) in edges.iter().enumerate() {
            if e.u >= vertices.len() || e.v >= vertices.len() || e.wall >= num_walls.max(1) {
                return Err(Error::Invalid(format!("edge {k} refers to a missing vertex or wall")));
            }
            adjacency[e.u].push((e.v, k));
            adjacency[e.v].push((e.u, k));
        }
        let mut stored = Vec::with_capacity(cubes.len());
        let mut cube_index = HashMap::with_capacity(cubes.len());
        for cube in cubes {
            let ids: Option<Vec<usize>> = cube.corners().map(|o| index.get(&o).copied()).collect();
            let ids = ids.ok_or_else(|| Error::Invalid(format!("cube on walls {:?} has a missing vertex", cube.walls)))?;
            cube_index.insert(cube.clone(), stored.len());
            stored.push(StoredCube { cube, vertices: ids });
        }
        Ok(Self {
            num_walls,
            vertices,
            index,
            edges,
            adjacency,
            cubes: stored,
            cube_index,
        })
    }

    pub fn num_walls(&self) -> usize {
        self.num_walls
    }

    pub fn vertices(&self) -> &[BitSet] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &BitSet {
        &self.vertices[id]
    }

    pub fn vertex_id(&self, o: &BitSet) -> Option<usize> {
        self.index.get(o).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Stored cubes of dimension two and higher.
    pub fn higher_cubes(&self) -> &[StoredCube] {
        &self.cubes
    }

    /// `(neighbour, edge id)` pairs at a vertex.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertices.len()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn dimension(&self) -> usize {
        match self.cubes.iter().map(|c| c.cube.dim()).max() {
            Some(d) => d,
            None if !self.edges.is_empty() => 1,
            None => 0,
        }
    }

    /// Number of cubes in each dimension, starting at 0.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = vec![self.vertices.len()];
        if !self.edges.is_empty() || !self.cubes.is_empty() {
            out.push(self.edges.len());
        }
        for c in &self.cubes {
            let d = c.cube.dim();
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    /// Vertex ids of a cube's corners, if every corner is a vertex.
    pub fn cube_vertex_ids(&self, cube: &Cube) -> Option<Vec<usize>> {
        cube.corners().map(|o| self.vertex_id(&o)).collect()
    }

    pub fn contains_cube(&self, cube: &Cube) -> bool {
        match cube.dim() {
            0 => self.index.contains_key(&cube.anchor),
            1 => {
                let w = cube.walls[0];
                let Some(a) = self.vertex_id(&cube.anchor) else {
                    return false;
                };
                let other = cube.anchor.toggled(w);
                self.adjacency[a]
                    .iter()
                    .any(|&(b, e)| self.edges[e].wall == w && self.vertices[b] == other)
            }
            _ => self.cube_index.contains_key(cube),
        }
    }

    /// Every cube of every dimension: vertices, then edges, then stored cubes.
    pub fn all_cubes(&self) -> Vec<Cube> {
        let mut out: Vec<Cube> = self.vertices.iter().cloned().map(Cube::vertex).collect();
        for e in &self.edges {
            out.push(Cube::new(vec![e.wall], self.vertices[e.u].clone()));
        }
        out.extend(self.cubes.iter().map(|c| c.cube.clone()));
        out
    }

    /// Cubes not properly contained in another cube.
    pub fn maximal_cubes(&self) -> Vec<Cube> {
        let mut out: Vec<Cube> = self
            .all_cubes()
            .into_iter()
            .filter(|c| {
                (0..self.num_walls).all(|w| {
                    if c.walls.binary_search(&w).is_ok() {
                        return true;
                    }
                    let mut walls = c.walls.clone();
                    walls.push(w);
                    !self.contains_cube(&Cube::new(walls, c.anchor.clone()))
                })
            })
            .collect();
        out.sort();
        out
    }

    /// Number of walls separating the two cubes; both must be in the complex.
    pub fn cube_distance(&self, a: &Cube, b: &Cube) -> Result<usize> {
        if !self.contains_cube(a) || !self.contains_cube(b) {
            return Err(Error::NotInComplex);
        }
        Ok(a.separating_walls(b).len())
    }

    /// Edge ids grouped by wall.
    pub fn hyperplanes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut out: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, e) in self.edges.iter().enumerate() {
            out.entry(e.wall).or_default().push(k);
        }
        out
    }

    /// Breadth-first distances from a set of sources; `usize::MAX` when unreachable.
    pub fn bfs(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] != 0 {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.vertices.is_empty() || self.bfs(&[0]).iter().all(|&d| d != usize::MAX)
    }

    /// Edge id joining two vertices, if any.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency[a].iter().find(|&&(x, _)| x == b).map(|&(_, e)| e)
    }

    /// Whether two vertices of a 1-skeleton path span a square at `v`
    /// flipping walls `w1`, `w2`.
    pub fn square_at(&self, v: usize, w1: usize, w2: usize) -> Option<Cube> {
        let sq = Cube::new(vec![w1, w2], self.vertices[v].clone());
        if sq.dim() == 2 && self.contains_cube(&sq) {
            Some(sq)
        } else {
            None
        }
    }

    /// Vertices sorted by orientation, for order-independent comparison.
    pub fn sorted_vertex_set(&self) -> Vec<BitSet> {
        let mut v = self.vertices.clone();
        v.sort();
        v
    }

    /// Every cube of every dimension, sorted.
    pub fn sorted_cube_set(&self) -> Vec<Cube> {
        let mut c = self.all_cubes();
        c.sort();
        c
    }
}
