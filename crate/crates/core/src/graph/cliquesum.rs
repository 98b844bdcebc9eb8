use serde::{Deserialize, Serialize};

use super::{Graph, Label};
use crate::error::{Error, Result};

/// A decomposition of a graph as a clique-sum of `G[left]` and `G[right]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueSumSplit {
    pub left: Vec<Label>,
    pub right: Vec<Label>,
}

impl CliqueSumSplit {
    /// The shared clique `left ∩ right`.
    pub fn separator(&self) -> Vec<Label> {
        self.left
            .iter()
            .copied()
            .filter(|l| self.right.binary_search(l).is_ok())
            .collect()
    }

    /// Checks the clique-sum conditions against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let l = g.set_from_labels(self.left.iter().copied())?;
        let r = g.set_from_labels(self.right.iter().copied())?;
        let mut union = l.clone();
        union.union_with(&r);
        if union.count_ones(..) != g.order() {
            return Err(Error::input("split sides do not cover the graph"));
        }
        let mut shared = l.clone();
        shared.intersect_with(&r);
        if shared.is_clear() {
            return Err(Error::input("split sides are disjoint"));
        }
        if !g.is_clique(&shared) {
            return Err(Error::input("shared vertices do not form a clique"));
        }
        let mut only_l = l.clone();
        only_l.difference_with(&r);
        let mut only_r = r;
        only_r.difference_with(&l);
        if only_l.ones().any(|v| !g.neighbors(v).is_disjoint(&only_r)) {
            return Err(Error::input(
                "an edge joins the two sides outside the clique",
            ));
        }
        Ok(())
    }
}

/// Finds a nontrivial clique-sum split of a connected graph, trying clique
/// separators by increasing size. The left side is the separator plus the
/// component of the remainder containing the smallest vertex.
pub fn find_clique_sum_split(g: &Graph) -> Result<Option<CliqueSumSplit>> {
    if !g.is_connected() {
        return Err(Error::input("clique-sum splitting needs a connected graph"));
    }
    let n = g.order();
    // Cliques grouped by size, each as a sorted index list.
    let mut layer: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    while !layer.is_empty() {
        for clique in &layer {
            let mut rest = g.full_set();
            for &v in clique {
                rest.set(v, false);
            }
            let comps = g.components_within(&rest);
            if comps.len() >= 2 {
                let mut left = comps[0].clone();
                let mut right = rest;
                right.difference_with(&comps[0]);
                for &v in clique {
                    left.insert(v);
                    right.insert(v);
                }
                return Ok(Some(CliqueSumSplit {
                    left: g.labels_of(&left),
                    right: g.labels_of(&right),
                }));
            }
        }
        let mut next = Vec::new();
        for clique in &layer {
            let last = *clique.last().unwrap();
            for w in g.neighbors(last).ones().filter(|&w| w > last) {
                if clique.iter().all(|&u| g.has_edge_idx(u, w)) {
                    let mut c = clique.clone();
                    c.push(w);
                    next.push(c);
                }
            }
        }
        layer = next;
    }
    Ok(None)
}

/// Glues two graphs along their common labels, which must induce the same
/// clique in both.
pub fn glue_clique_sum(a: &Graph, b: &Graph) -> Result<Graph> {
    let shared: Vec<Label> = a
        .labels()
        .iter()
        .copied()
        .filter(|&l| b.index_of(l).is_some())
        .collect();
    if shared.is_empty() {
        return Err(Error::input("graphs share no vertices"));
    }
    for (i, &x) in shared.iter().enumerate() {
        for &y in &shared[i + 1..] {
            if !a.has_edge(x, y) || !b.has_edge(x, y) {
                return Err(Error::input(format!(
                    "shared vertices {x} and {y} are not adjacent in both graphs"
                )));
            }
        }
    }
    Graph::new(
        a.labels().iter().chain(b.labels()).copied(),
        a.edges().into_iter().chain(b.edges()),
    )
}
