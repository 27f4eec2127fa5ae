//! JSON documents for wallspaces, complexes and hemiwallspaces, plus DOT
//! export. JSON is the only input format; DOT is export-only.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::dual::{Cube, CubeComplex, Edge};
use crate::error::{Error, Result};
use crate::hemi::{Hemiwallspace, InducedVariant};
use crate::metric::Metric;
use crate::wallspace::{Wall, Wallspace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallDoc {
    pub index: i64,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricDoc {
    /// `[from, to, weight]` with positive integer weights.
    pub edges: Vec<(String, String, u64)>,
    /// Full distance table in point order, when it differs from path lengths.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallspaceDoc {
    pub points: Vec<String>,
    pub walls: Vec<WallDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<MetricDoc>,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

impl WallspaceDoc {
    pub fn from_wallspace(ws: &Wallspace) -> Self {
        let names = |s: &BitSet| s.iter().map(|x| ws.point_name(x).to_string()).collect();
        Self {
            points: ws.points().to_vec(),
            walls: ws
                .walls()
                .iter()
                .map(|w| WallDoc {
                    index: w.label,
                    left: names(&w.left),
                    right: names(&w.right),
                })
                .collect(),
            metric: ws.metric().map(|m| MetricDoc {
                edges: m
                    .edges()
                    .iter()
                    .map(|&(a, b, w)| (ws.point_name(a).to_string(), ws.point_name(b).to_string(), w))
                    .collect(),
                distances: m.is_explicit().then(|| m.table().to_vec()),
            }),
        }
    }

    /// Builds the wallspace without validating the walls, so that
    /// validation problems can be reported rather than rejected.
    pub fn to_wallspace(&self) -> Result<Wallspace> {
        let n = self.points.len();
        let index: std::collections::HashMap<&str, usize> =
            self.points.iter().enumerate().map(|(i, p)| (p.as_str(), i)).collect();
        let lookup = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownPoint(name.to_string()));
        let set = |names: &[String]| -> Result<BitSet> {
            let mut s = BitSet::new(n);
            for p in names {
                s.insert(lookup(p)?);
            }
            Ok(s)
        };
        let walls = self
            .walls
            .iter()
            .map(|w| Ok(Wall::new(w.index, set(&w.left)?, set(&w.right)?)))
            .collect::<Result<Vec<_>>>()?;
        let metric = match &self.metric {
            None => None,
            Some(m) => {
                let edges = m
                    .edges
                    .iter()
                    .map(|(a, b, w)| Ok((lookup(a)?, lookup(b)?, *w)))
                    .collect::<Result<Vec<_>>>()?;
                Some(match &m.distances {
                    Some(t) => Metric::from_table(&edges, t.clone())?,
                    None => Metric::from_edges(n, &edges)?,
                })
            }
        };
        Wallspace::unchecked(self.points.clone(), walls, metric)
    }
}

pub fn wallspace_to_json(ws: &Wallspace) -> String {
    serde_json::to_string_pretty(&WallspaceDoc::from_wallspace(ws)).expect("documents serialize")
}

/// Parses a wallspace document without validating its walls.
pub fn wallspace_from_json(s: &str) -> Result<Wallspace> {
    serde_json::from_str::<WallspaceDoc>(s).map_err(parse_err)?.to_wallspace()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: usize,
    pub orientation: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeDoc {
    pub dim: usize,
    pub walls: Vec<usize>,
    pub vertices: Vec<usize>,
}

/// Vertices with their orientations, edges labelled by wall position, and
/// the cubes of dimension two and up with their corners.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub num_walls: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<Edge>,
    pub cubes: Vec<CubeDoc>,
}

impl ComplexDoc {
    pub fn from_complex(cc: &CubeComplex) -> Self {
        Self {
            num_walls: cc.num_walls(),
            vertices: cc
                .vertices()
                .iter()
                .enumerate()
                .map(|(id, o)| VertexDoc {
                    id,
                    orientation: (0..cc.num_walls()).map(|w| o.contains(w) as u8).collect(),
                })
                .collect(),
            edges: cc.edges().to_vec(),
            cubes: cc
                .higher_cubes()
                .iter()
                .map(|c| CubeDoc {
                    dim: c.cube.dim(),
                    walls: c.cube.walls.clone(),
                    vertices: c.vertices.clone(),
                })
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<CubeComplex> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.id != i {
                return Err(Error::Invalid(format!("vertex ids must be 0..n in order; found {} at {i}", v.id)));
            }
            if v.orientation.len() != self.num_walls || v.orientation.iter().any(|&b| b > 1) {
                return Err(Error::Invalid(format!("vertex {i} has a malformed orientation")));
            }
            vertices.push(BitSet::from_indices(
                self.num_walls,
                (0..self.num_walls).filter(|&w| v.orientation[w] == 1),
            ));
        }
        let mut cubes = Vec::with_capacity(self.cubes.len());
        for (k, c) in self.cubes.iter().enumerate() {
            let first = c
                .vertices
                .first()
                .and_then(|&v| vertices.get(v))
                .ok_or_else(|| Error::Invalid(format!("cube {k} has no valid corner")))?;
            let cube = Cube::new(c.walls.clone(), first.clone());
            if cube.dim() != c.dim || c.walls.iter().any(|&w| w >= self.num_walls) {
                return Err(Error::Invalid(format!("cube {k} has inconsistent walls")));
            }
            cubes.push(cube);
        }
        let cc = CubeComplex::from_parts(self.num_walls, vertices, self.edges.clone(), cubes)?;
        for (k, c) in self.cubes.iter().enumerate() {
            let stored: BTreeSet<usize> = cc.higher_cubes()[k].vertices.iter().copied().collect();
            if stored != c.vertices.iter().copied().collect() {
                return Err(Error::Invalid(format!("cube {k} lists corners that do not span it")));
            }
        }
        Ok(cc)
    }
}

pub fn complex_to_json(cc: &CubeComplex) -> String {
    serde_json::to_string_pretty(&ComplexDoc::from_complex(cc)).expect("documents serialize")
}

pub fn complex_from_json(s: &str) -> Result<CubeComplex> {
    serde_json::from_str::<ComplexDoc>(s).map_err(parse_err)?.to_complex()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedDoc {
    pub wall: i64,
    pub side: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HemiDoc {
    /// Variant name, or `explicit` when no generating set is known.
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(rename = "P", default)]
    pub p: Vec<String>,
    pub fixed: Vec<FixedDoc>,
    pub independent: Vec<i64>,
}

impl HemiDoc {
    pub fn from_hemi(ws: &Wallspace, h: &Hemiwallspace) -> Self {
        let label = |w: usize| ws.wall(w).label;
        Self {
            variant: h.variant.map_or("explicit".to_string(), |v| v.name().to_string()),
            r: h.variant.and_then(|v| v.radius()),
            tau: h.variant.and_then(|v| v.tau()),
            p: h
                .periphery
                .as_ref()
                .map(|p| p.iter().map(|x| ws.point_name(x).to_string()).collect())
                .unwrap_or_default(),
            fixed: h
                .fixed
                .iter()
                .enumerate()
                .filter_map(|(w, s)| s.map(|side| FixedDoc { wall: label(w), side }))
                .collect(),
            independent: h.independent().into_iter().map(label).collect(),
        }
    }

    pub fn variant(&self) -> Result<Option<InducedVariant>> {
        let need = |v: Option<f64>, what: &str| v.ok_or_else(|| Error::Parse(format!("variant {} needs {what}", self.variant)));
        Ok(Some(match self.variant.as_str() {
            "explicit" => return Ok(None),
            "U0" => InducedVariant::U0,
            "Ur" => InducedVariant::Ur { r: need(self.r, "r")? },
            "Uinf" => InducedVariant::Uinf { tau: need(self.tau, "tau")? },
            "Ustar" => InducedVariant::Ustar {
                r_max: need(self.r, "r")?,
                tau: need(self.tau, "tau")?,
            },
            "UrStar" => InducedVariant::UrStar {
                r: need(self.r, "r")?,
                tau: need(self.tau, "tau")?,
            },
            other => return Err(Error::Parse(format!("unknown variant {other:?}"))),
        }))
    }

    pub fn to_hemi(&self, ws: &Wallspace) -> Result<Hemiwallspace> {
        let pos = |label: i64| {
            ws.wall_by_label(label)
                .ok_or(Error::IndexOutOfRange { index: label as usize, count: ws.num_walls() })
        };
        let mut fixed = vec![None; ws.num_walls()];
        for f in &self.fixed {
            if f.side > 1 {
                return Err(Error::Parse(format!("side {} of wall {} is not 0 or 1", f.side, f.wall)));
            }
            fixed[pos(f.wall)?] = Some(f.side);
        }
        let listed: BTreeSet<usize> = self.independent.iter().map(|&l| pos(l)).collect::<Result<_>>()?;
        let actual: BTreeSet<usize> = (0..ws.num_walls()).filter(|&w| fixed[w].is_none()).collect();
        if listed != actual {
            return Err(Error::Invalid("independent walls disagree with the fixed list".into()));
        }
        let periphery = if self.p.is_empty() {
            None
        } else {
            Some(BitSet::from_indices(
                ws.num_points(),
                self.p.iter().map(|n| ws.point(n)).collect::<Result<Vec<_>>>()?,
            ))
        };
        Ok(Hemiwallspace {
            fixed,
            variant: self.variant()?,
            periphery,
        })
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The 1-skeleton with wall labels on edges; nodes and edges sorted.
pub fn complex_to_dot(ws: &Wallspace, cc: &CubeComplex) -> String {
    let mut out = String::from("graph dual {\n");
    for (i, o) in cc.vertices().iter().enumerate() {
        let bits: String = (0..cc.num_walls()).map(|w| if o.contains(w) { '1' } else { '0' }).collect();
        let _ = writeln!(out, "  v{i} [label={}];", dot_id(&bits));
    }
    let mut edges: Vec<(usize, usize, i64)> = cc
        .edges()
        .iter()
        .map(|e| (e.u.min(e.v), e.u.max(e.v), ws.wall(e.wall).label))
        .collect();
    edges.sort_unstable();
    for (u, v, l) in edges {
        let _ = writeln!(out, "  v{u} -- v{v} [label=\"{l}\"];");
    }
    out.push_str("}\n");
    out
}

/// Walls as nodes, transverse pairs as edges.
pub fn transversality_to_dot(ws: &Wallspace) -> String {
    let mut out = String::from("graph transversality {\n");
    for w in ws.walls() {
        let _ = writeln!(out, "  w{} [label=\"{}\"];", w.label.unsigned_abs(), w.label);
    }
    for i in 0..ws.num_walls() {
        for j in i + 1..ws.num_walls() {
            if ws.is_transverse(i, j) {
                let _ = writeln!(out, "  w{} -- w{};", ws.wall(i).label.unsigned_abs(), ws.wall(j).label.unsigned_abs());
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{build_dual, BuildOptions};
    use crate::generators;
    use crate::groups::{cayley_ball, generate_hwall_system, GroupSpec, HWallSpec};
    use crate::hemi::induce_hemi;

    #[test]
    fn fig3_document_lists_the_five_walls() {
        let doc = WallspaceDoc::from_wallspace(&generators::fig3());
        assert_eq!(doc.points, ["a", "b", "c", "d", "e", "f"]);
        assert_eq!(doc.walls.len(), 5);
        assert_eq!(doc.walls[0].index, 1);
        assert!(doc.metric.is_none());
    }

    #[test]
    fn wallspace_round_trip() {
        for ws in [generators::fig3(), generators::grid(3), generators::non_hausdorff3()] {
            let back = wallspace_from_json(&wallspace_to_json(&ws)).unwrap();
            assert_eq!(back, ws);
        }
    }

    #[test]
    fn explicit_distances_round_trip() {
        let ball = cayley_ball(&GroupSpec::FreeProduct { orders: vec![5, 0] }, 3, 1000).unwrap();
        let sys = generate_hwall_system(&ball, &[HWallSpec::FreeFactorSplit { factor: 1 }]).unwrap();
        let json = wallspace_to_json(&sys.ws);
        assert_eq!(wallspace_from_json(&json).unwrap(), sys.ws);
    }

    #[test]
    fn complex_round_trip() {
        let ws = generators::fig3();
        let cc = build_dual(&ws, 0, &BuildOptions::default()).unwrap();
        let json = complex_to_json(&cc);
        let back = complex_from_json(&json).unwrap();
        assert_eq!(back, cc);
        assert_eq!(complex_to_json(&back), json);
    }

    #[test]
    fn hemi_round_trip() {
        let ws = generators::grid(3);
        let p = BitSet::from_indices(16, [0, 1, 2, 3]);
        let h = induce_hemi(&ws, &p, InducedVariant::UrStar { r: 1.0, tau: 2.0 }).unwrap();
        let doc = HemiDoc::from_hemi(&ws, &h);
        let json = serde_json::to_string(&doc).unwrap();
        let back: HemiDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_hemi(&ws).unwrap(), h);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(wallspace_from_json("{"), Err(Error::Parse(_))));
        let bad = r#"{"points":["x"],"walls":[{"index":0,"left":["y"],"right":[]}]}"#;
        assert_eq!(wallspace_from_json(bad), Err(Error::UnknownPoint("y".into())));
    }

    #[test]
    fn dot_is_stable() {
        let ws = generators::grid(1);
        let cc = build_dual(&ws, 0, &BuildOptions::default()).unwrap();
        let a = complex_to_dot(&ws, &cc);
        assert_eq!(a, complex_to_dot(&ws, &cc));
        assert_eq!(a.matches(" -- ").count(), 4);
        assert_eq!(transversality_to_dot(&ws).matches(" -- ").count(), 1);
    }
}
