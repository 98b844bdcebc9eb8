//! Combinatorial embeddings of planar graphs and the face operations used to
//! push a cover towards a cone.
//!
//! An embedding is a rotation system: for every vertex, the cyclic order of
//! its neighbours. Faces are traced by the rule that the edge after `u → v`
//! is `v → w`, where `w` follows `u` in the rotation at `v`.

mod embed;
mod fill;
mod pipeline;
mod thicken;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};

pub use embed::{embed_planar, is_planar};
pub use fill::{face_interior, fill_face};
pub use pipeline::{face_filling_pipeline, CrossingCheck, PipelineStep, PipelineTrace};
pub use thicken::{lift_cover, thicken, Thickening};

/// A rotation system on a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    graph: Graph,
    /// Neighbour indices of each vertex in cyclic order.
    rotation: Vec<Vec<usize>>,
}

/// A face, given by its closed boundary walk of directed edges (as labels).
/// The walk starts at its smallest directed edge.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub walk: Vec<(Label, Label)>,
}

impl Face {
    /// Vertices in walk order (a vertex repeats if the walk revisits it).
    pub fn boundary(&self) -> Vec<Label> {
        self.walk.iter().map(|e| e.0).collect()
    }

    /// Distinct vertices on the walk, sorted.
    pub fn vertex_set(&self) -> Vec<Label> {
        let mut v = self.boundary();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn contains_edge(&self, from: Label, to: Label) -> bool {
        self.walk.contains(&(from, to))
    }

    /// True when the walk visits no vertex twice.
    pub fn is_simple_cycle(&self) -> bool {
        self.walk.len() >= 3 && self.vertex_set().len() == self.walk.len()
    }
}

impl Embedding {
    /// Checks that each rotation lists the neighbours of its vertex once.
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Embedding> {
        if rotation.len() != graph.order() {
            return Err(Error::input("one rotation per vertex is required"));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut seen = graph.empty_set();
            for &u in rot {
                if u >= graph.order() || !graph.has_edge_idx(u, v) || seen.put(u) {
                    return Err(Error::input(format!(
                        "rotation at {} is not a listing of its neighbours",
                        graph.label(v)
                    )));
                }
            }
            if seen != *graph.neighbors(v) {
                return Err(Error::input(format!(
                    "rotation at {} misses a neighbour",
                    graph.label(v)
                )));
            }
        }
        Ok(Embedding { graph, rotation })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Neighbour indices of vertex `v` in rotation order.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    /// The neighbour following `u` in the rotation at `v`.
    pub(crate) fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let p = rot
            .iter()
            .position(|&w| w == u)
            .expect("u is a neighbour of v");
        rot[(p + 1) % rot.len()]
    }

    /// The neighbour preceding `u` in the rotation at `v`.
    pub(crate) fn pred(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let p = rot
            .iter()
            .position(|&w| w == u)
            .expect("u is a neighbour of v");
        rot[(p + rot.len() - 1) % rot.len()]
    }

    /// Faces as walks of index pairs, each directed edge in exactly one.
    pub(crate) fn index_faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut darts: Vec<(usize, usize)> = Vec::new();
        for v in 0..self.graph.order() {
            for &u in &self.rotation[v] {
                darts.push((v, u));
            }
        }
        darts.sort_unstable();
        let mut used: BTreeMap<(usize, usize), bool> = darts.iter().map(|&d| (d, false)).collect();
        let mut out = Vec::new();
        for &start in &darts {
            if used[&start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            loop {
                used.insert(d, true);
                walk.push(d);
                let (u, v) = d;
                d = (v, self.succ(v, u));
                if d == start {
                    break;
                }
            }
            out.push(walk);
        }
        out
    }

    /// All faces, ordered by their walks.
    pub fn faces(&self) -> Vec<Face> {
        let mut faces: Vec<Face> = self
            .index_faces()
            .into_iter()
            .map(|w| Face {
                walk: w
                    .into_iter()
                    .map(|(a, b)| (self.graph.label(a), self.graph.label(b)))
                    .collect(),
            })
            .collect();
        faces.sort();
        faces
    }

    /// Number of faces counting one face for each isolated vertex.
    pub fn face_count(&self) -> usize {
        let isolated = (0..self.graph.order())
            .filter(|&v| self.graph.degree(v) == 0)
            .count();
        self.index_faces().len() + isolated
    }

    /// Euler's formula V − E + F = 2 on every component, i.e. the rotation
    /// system describes a sphere embedding.
    pub fn is_spherical(&self) -> bool {
        let n = self.graph.order() as i64;
        let m = self.graph.size() as i64;
        let f = self.face_count() as i64;
        let c = self.graph.components().len() as i64;
        n - m + f == 2 * c
    }

    /// The embedding of `G[set]` obtained by dropping the other vertices
    /// from every rotation.
    pub fn restrict(&self, set: &FixedBitSet) -> Embedding {
        let sub = self.graph.induced(set);
        let mut pos = vec![usize::MAX; self.graph.order()];
        for (k, v) in set.ones().enumerate() {
            pos[v] = k;
        }
        let rotation = set
            .ones()
            .map(|v| {
                self.rotation[v]
                    .iter()
                    .filter(|&&u| set.contains(u))
                    .map(|&u| pos[u])
                    .collect()
            })
            .collect();
        Embedding {
            graph: sub,
            rotation,
        }
    }

    /// One line per vertex: `v: n1 n2 ... nk` with neighbours in rotation
    /// order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.graph.order() {
            let _ = write!(out, "{}:", self.graph.label(v));
            for &u in &self.rotation[v] {
                let _ = write!(out, " {}", self.graph.label(u));
            }
            out.push('\n');
        }
        out
    }

    /// Parses the format of [`Embedding::to_text`]. The graph is read off
    /// the rotations, which must be symmetric.
    pub fn parse_text(text: &str) -> Result<Embedding> {
        let mut rows: Vec<(Label, Vec<Label>)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line.split_once(':').ok_or_else(|| {
                Error::input(format!("line {}: expected `v: neighbours`", no + 1))
            })?;
            let parse = |t: &str| {
                t.parse::<Label>()
                    .map_err(|_| Error::input(format!("line {}: bad vertex {t:?}", no + 1)))
            };
            let v = parse(head.trim())?;
            let nbrs = rest
                .split_whitespace()
                .map(parse)
                .collect::<Result<Vec<_>>>()?;
            rows.push((v, nbrs));
        }
        let mut edges = Vec::new();
        for (v, nbrs) in &rows {
            for &u in nbrs {
                edges.push((*v, u));
            }
        }
        let g = Graph::new(rows.iter().map(|r| r.0), edges)?;
        let mut rotation = vec![Vec::new(); g.order()];
        for (v, nbrs) in &rows {
            let i = g.require_index(*v)?;
            if !rotation[i].is_empty() {
                return Err(Error::input(format!("vertex {v} listed twice")));
            }
            rotation[i] = nbrs
                .iter()
                .map(|&u| g.require_index(u))
                .collect::<Result<_>>()?;
        }
        Embedding::new(g, rotation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};

    fn k4() -> Embedding {
        // Vertex 3 in the middle of triangle 0 1 2.
        let g = named_graph(&NamedGraph::Complete(4)).unwrap();
        Embedding::new(
            g,
            vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn k4_has_four_triangles() {
        let e = k4();
        let faces = e.faces();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3 && f.is_simple_cycle()));
        assert!(e.is_spherical());
    }

    #[test]
    fn square_has_two_faces() {
        let g = named_graph(&NamedGraph::Cycle(4)).unwrap();
        let rot = (0..4).map(|i| vec![(i + 1) % 4, (i + 3) % 4]).collect();
        let e = Embedding::new(g, rot).unwrap();
        let faces = e.faces();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.vertex_set() == vec![0, 1, 2, 3]));
    }

    #[test]
    fn bad_rotation_gives_torus() {
        // Swapping two neighbours at one vertex of K4 breaks Euler's formula.
        let g = named_graph(&NamedGraph::Complete(4)).unwrap();
        let e = Embedding::new(
            g,
            vec![vec![1, 2, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        )
        .unwrap();
        assert!(!e.is_spherical());
    }

    #[test]
    fn rejects_non_rotations() {
        let g = named_graph(&NamedGraph::Complete(3)).unwrap();
        assert!(Embedding::new(g.clone(), vec![vec![1], vec![0, 2], vec![0, 1]]).is_err());
        assert!(Embedding::new(g, vec![vec![1, 1], vec![0, 2], vec![0, 1]]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let e = k4();
        let text = e.to_text();
        assert_eq!(text.lines().next(), Some("0: 1 3 2"));
        assert_eq!(Embedding::parse_text(&text).unwrap(), e);
        assert!(Embedding::parse_text("0: 1\n").is_err());
    }

    #[test]
    fn restriction_drops_vertices() {
        let e = k4();
        let mut s = e.graph().full_set();
        s.set(3, false);
        let r = e.restrict(&s);
        assert_eq!(r.faces().len(), 2);
        assert!(r.is_spherical());
    }

    #[test]
    fn isolated_vertex_is_spherical() {
        let e = Embedding::new(Graph::new([5], []).unwrap(), vec![vec![]]).unwrap();
        assert!(e.is_spherical());
        assert!(e.faces().is_empty());
    }
}
