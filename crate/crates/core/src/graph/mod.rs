//! Finite simple undirected graphs with integer vertex labels.
//!
//! A [`Graph`] is an immutable value. Vertices are kept sorted by label and
//! addressed internally by their position ("index"); vertex subsets are
//! [`FixedBitSet`]s over those indices. Every transformation returns a new
//! graph.

mod cliquesum;
mod io;
mod minor;
mod named;

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cliquesum::{find_clique_sum_split, glue_clique_sum, CliqueSumSplit};
pub use io::{parse_edge_list, parse_graph, parse_graph6, to_edge_list, to_graph6};
pub use minor::{hadwiger_number, has_minor, verify_certificate, Hadwiger, MinorCertificate};
pub use named::{named_graph, NamedGraph};

/// Vertex label.
pub type Label = u32;

/// A finite simple undirected graph.
///
/// Serializes as `{"vertices": [...], "edges": [[u, v], ...]}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    labels: Vec<Label>,
    adj: Vec<FixedBitSet>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    vertices: Vec<Label>,
    edges: Vec<(Label, Label)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> GraphRepr {
        GraphRepr {
            edges: g.edges(),
            vertices: g.labels,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Graph> {
        Graph::new(r.vertices, r.edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.labels)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds a graph from a vertex list and an edge list.
    ///
    /// Repeated vertices and repeated edges are merged. Self-loops and edges
    /// with an endpoint outside the vertex list are rejected.
    pub fn new(
        vertices: impl IntoIterator<Item = Label>,
        edges: impl IntoIterator<Item = (Label, Label)>,
    ) -> Result<Graph> {
        let labels: Vec<Label> = vertices
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = labels.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in edges {
            if a == b {
                return Err(Error::input(format!("self-loop at vertex {a}")));
            }
            let i = labels
                .binary_search(&a)
                .map_err(|_| Error::input(format!("edge endpoint {a} is not a vertex")))?;
            let j = labels
                .binary_search(&b)
                .map_err(|_| Error::input(format!("edge endpoint {b} is not a vertex")))?;
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(Graph { labels, adj })
    }

    /// Builds a graph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = (Label, Label)>) -> Result<Graph> {
        let edges: Vec<_> = edges.into_iter().collect();
        let vertices: Vec<Label> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Graph::new(vertices, edges)
    }

    /// Builds a graph on labels `0..n` from index pairs.
    pub(crate) fn from_index_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Graph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (i, j) in edges {
            debug_assert!(i != j && i < n && j < n);
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Graph {
            labels: (0..n as Label).collect(),
            adj,
        }
    }

    pub fn empty() -> Graph {
        Graph {
            labels: Vec::new(),
            adj: Vec::new(),
        }
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Label {
        self.labels[index]
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub(crate) fn require_index(&self, label: Label) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::input(format!("unknown vertex label {label}")))
    }

    pub fn neighbors(&self, index: usize) -> &FixedBitSet {
        &self.adj[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adj[index].count_ones(..)
    }

    pub fn has_edge_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    /// Edge test by labels; unknown labels are simply not adjacent.
    pub fn has_edge(&self, a: Label, b: Label) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i].contains(j),
            _ => false,
        }
    }

    /// Edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.order() {
            for j in self.adj[i].ones() {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Edges as label pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        self.edge_indices()
            .into_iter()
            .map(|(i, j)| (self.labels[i], self.labels[j]))
            .collect()
    }

    /// An empty index set sized for this graph.
    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.order())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    /// Converts vertex labels to an index set.
    pub fn set_from_labels(&self, labels: impl IntoIterator<Item = Label>) -> Result<FixedBitSet> {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.require_index(l)?);
        }
        Ok(s)
    }

    /// Sorted labels of an index set.
    pub fn labels_of(&self, set: &FixedBitSet) -> Vec<Label> {
        set.ones().map(|i| self.labels[i]).collect()
    }

    /// The induced subgraph `G[s]` for a set of labels.
    pub fn induced_subgraph(&self, labels: &[Label]) -> Result<Graph> {
        let set = self.set_from_labels(labels.iter().copied())?;
        Ok(self.induced(&set))
    }

    /// The induced subgraph on an index set; labels are preserved.
    pub fn induced(&self, set: &FixedBitSet) -> Graph {
        let keep: Vec<usize> = set.ones().collect();
        let mut pos = vec![usize::MAX; self.order()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let n = keep.len();
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for (k, &i) in keep.iter().enumerate() {
            for j in self.adj[i].ones() {
                if pos[j] != usize::MAX {
                    adj[k].insert(pos[j]);
                }
            }
        }
        Graph {
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            adj,
        }
    }

    /// Deletes one vertex (by index).
    pub fn remove_vertex(&self, index: usize) -> Graph {
        let mut s = self.full_set();
        s.set(index, false);
        self.induced(&s)
    }

    /// Renames vertices with an injective label map.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> Result<Graph> {
        let vertices: Vec<Label> = self.labels.iter().map(|&l| f(l)).collect();
        let distinct: BTreeSet<Label> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::input("relabelling is not injective"));
        }
        Graph::new(
            vertices,
            self.edges().into_iter().map(|(a, b)| (f(a), f(b))),
        )
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&self.full_set())
    }

    /// Whether the subgraph induced by `set` is connected. The empty set is
    /// not connected.
    pub fn is_connected_within(&self, set: &FixedBitSet) -> bool {
        let Some(start) = set.ones().next() else {
            return false;
        };
        let reached = self.reach_within(set, start);
        reached.count_ones(..) == set.count_ones(..)
    }

    /// Vertices of `set` reachable from `start` inside `G[set]`.
    pub fn reach_within(&self, set: &FixedBitSet, start: usize) -> FixedBitSet {
        let mut seen = self.empty_set();
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in self.adj[u].ones() {
                if set.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Connected components of `G[set]`, ordered by smallest index.
    pub fn components_within(&self, set: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut left = set.clone();
        let mut out = Vec::new();
        while let Some(s) = left.ones().next() {
            let comp = self.reach_within(&left, s);
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<FixedBitSet> {
        self.components_within(&self.full_set())
    }

    /// 2-connectivity. A single edge (K2) counts as 2-connected; a single
    /// vertex does not.
    pub fn is_2_connected(&self) -> bool {
        self.is_2_connected_within(&self.full_set())
    }

    pub fn is_2_connected_within(&self, set: &FixedBitSet) -> bool {
        let n = set.count_ones(..);
        if n < 2 || !self.is_connected_within(set) {
            return false;
        }
        if n == 2 {
            return true;
        }
        self.cut_vertices_within(set).is_clear()
    }

    /// Cut vertices of `G[set]` (Hopcroft–Tarjan lowpoints, iterative).
    pub fn cut_vertices_within(&self, set: &FixedBitSet) -> FixedBitSet {
        let n = self.order();
        let mut cut = self.empty_set();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        for root in set.ones() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, neighbour iterator position)
            let mut stack: Vec<(usize, usize, Vec<usize>)> = vec![(
                root,
                usize::MAX,
                self.adj[root].ones().filter(|&w| set.contains(w)).collect(),
            )];
            while let Some((u, parent, mut rest)) = stack.pop() {
                if let Some(w) = rest.pop() {
                    stack.push((u, parent, rest));
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        let next: Vec<usize> =
                            self.adj[w].ones().filter(|&x| set.contains(x)).collect();
                        stack.push((w, u, next));
                    } else if w != parent {
                        low[u] = low[u].min(disc[w]);
                    }
                } else if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if parent != root && low[u] >= disc[parent] {
                        cut.insert(parent);
                    }
                }
            }
            if root_children > 1 {
                cut.insert(root);
            }
        }
        cut
    }

    /// Whether the graph has no cycles.
    pub fn is_forest(&self) -> bool {
        self.size() + self.components().len() == self.order()
    }

    /// Whether `set` induces a complete graph.
    pub fn is_clique(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|i| {
            let mut others = set.clone();
            others.set(i, false);
            others.is_subset(&self.adj[i])
        })
    }

    /// A shortest path inside `G[within]` from any vertex of `sources` to any
    /// vertex of `targets`. Ties are broken towards smaller labels (vertices
    /// are explored in index order, which is label order).
    pub fn shortest_path_within(
        &self,
        within: &FixedBitSet,
        sources: &FixedBitSet,
        targets: &FixedBitSet,
    ) -> Option<Vec<usize>> {
        let n = self.order();
        let mut prev = vec![usize::MAX; n];
        let mut seen = self.empty_set();
        let mut queue = VecDeque::new();
        for s in sources.ones().filter(|&s| within.contains(s)) {
            seen.insert(s);
            queue.push_back(s);
        }
        while let Some(u) = queue.pop_front() {
            if targets.contains(u) {
                let mut path = vec![u];
                let mut cur = u;
                while prev[cur] != usize::MAX {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for v in self.adj[u].ones() {
                if within.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        Graph::from_edges((1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    #[test]
    fn induced_subgraph_examples() {
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let k3 = k4.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(k3.order(), 3);
        assert_eq!(k3.size(), 3);

        let empty = k4.induced_subgraph(&[]).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.size(), 0);

        let c5 = cycle(5);
        let h = c5.induced_subgraph(&[1, 2, 4]).unwrap();
        assert_eq!(h.edges(), vec![(1, 2)]);
        assert_eq!(h.labels(), &[1, 2, 4]);
    }

    #[test]
    fn induced_subgraph_rejects_unknown_label() {
        let c5 = cycle(5);
        assert!(matches!(c5.induced_subgraph(&[1, 9]), Err(Error::Input(_))));
    }

    #[test]
    fn construction_rejects_loops_and_foreign_endpoints() {
        assert!(Graph::new([1, 2], [(1, 1)]).is_err());
        assert!(Graph::new([1, 2], [(1, 3)]).is_err());
        let g = Graph::new([1, 2, 2], [(1, 2), (2, 1)]).unwrap();
        assert_eq!((g.order(), g.size()), (2, 1));
    }

    #[test]
    fn connectivity_examples() {
        let single = Graph::new([7], []).unwrap();
        assert!(single.is_connected());
        assert!(!single.is_2_connected());

        let c4 = cycle(4);
        assert!(c4.is_connected());
        assert!(c4.is_2_connected());

        let p3 = Graph::from_edges([(1, 2), (2, 3)]).unwrap();
        assert!(p3.is_connected());
        assert!(!p3.is_2_connected());

        let k2 = Graph::from_edges([(1, 2)]).unwrap();
        assert!(k2.is_2_connected());

        assert!(!Graph::empty().is_connected());
        assert!(!Graph::new([1, 2], []).unwrap().is_connected());
    }

    #[test]
    fn cut_vertices_of_bowtie() {
        let g = Graph::from_edges([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)]).unwrap();
        let cut = g.cut_vertices_within(&g.full_set());
        assert_eq!(g.labels_of(&cut), vec![3]);
        assert!(!g.is_2_connected());
    }

    #[test]
    fn forest_detection() {
        assert!(Graph::from_edges([(1, 2), (2, 3), (4, 5)])
            .unwrap()
            .is_forest());
        assert!(!cycle(3).is_forest());
    }

    #[test]
    fn shortest_path_prefers_small_labels() {
        let c4 = cycle(4);
        let within = c4.full_set();
        let src = c4.set_from_labels([1]).unwrap();
        let dst = c4.set_from_labels([3]).unwrap();
        let path = c4.shortest_path_within(&within, &src, &dst).unwrap();
        assert_eq!(
            path.iter().map(|&i| c4.label(i)).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
    }
}
