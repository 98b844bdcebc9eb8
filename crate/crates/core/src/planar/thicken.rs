use fixedbitset::FixedBitSet;

use super::Embedding;
use crate::covers::{validate_cover, Cover};
use crate::error::{Error, Result};
use crate::graph::{Graph, MinorCertificate};

/// The circle-and-arc thickening of an embedded graph.
///
/// A vertex v of degree k becomes 2k vertices on a circle, two per incident
/// edge in rotation order; each edge vw becomes two non-crossing connector
/// edges between the arcs it meets. Vertices of the new graph are numbered
/// `0..4|E|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thickening {
    pub graph: Graph,
    pub embedding: Embedding,
    /// For each vertex index of the original graph, its circle.
    pub circles: Vec<FixedBitSet>,
}

impl Thickening {
    /// The original graph as a minor of the thickening, circles as branch
    /// sets.
    pub fn certificate(&self, original: &Graph) -> MinorCertificate {
        MinorCertificate {
            pattern: original.clone(),
            branch_sets: self
                .circles
                .iter()
                .map(|c| c.ones().map(|v| v as u32).collect())
                .collect(),
        }
    }
}

pub fn thicken(g: &Graph, e: &Embedding) -> Result<Thickening> {
    if e.graph() != g {
        return Err(Error::input("the embedding is of a different graph"));
    }
    if !g.is_connected() {
        return Err(Error::input("thickening needs a connected graph"));
    }
    if g.size() == 0 {
        return Err(Error::input("thickening needs at least one edge"));
    }
    let n = g.order();
    let mut offset = vec![0; n + 1];
    for v in 0..n {
        offset[v + 1] = offset[v] + 2 * g.degree(v);
    }
    let total = offset[n];
    // Arc endpoint s ∈ {0, 1} of the i-th edge in the rotation at v.
    let id = |v: usize, i: usize, s: usize| offset[v] + 2 * i + s;
    let slot = |v: usize, u: usize| e.rotation(v).iter().position(|&w| w == u).unwrap();

    let mut rotation = vec![Vec::new(); total];
    let mut edges = Vec::new();
    for v in 0..n {
        let k = g.degree(v);
        for (i, &w) in e.rotation(v).iter().enumerate() {
            let j = slot(w, v);
            let (a0, a1) = (id(v, i, 0), id(v, i, 1));
            let (out0, out1) = (id(w, j, 1), id(w, j, 0));
            if k == 1 {
                rotation[a0] = vec![out0, a1];
                rotation[a1] = vec![out1, a0];
            } else {
                let before = id(v, (i + k - 1) % k, 1);
                let after = id(v, (i + 1) % k, 0);
                rotation[a0] = vec![out0, a1, before];
                rotation[a1] = vec![out1, after, a0];
            }
            edges.push((a0, a1));
            edges.push((a1, id(v, (i + 1) % k, 0)));
            edges.push((a0, out0));
            edges.push((a1, out1));
        }
    }
    let graph = Graph::from_index_edges(total, edges.into_iter().filter(|(a, b)| a != b));
    let embedding = Embedding::new(graph.clone(), rotation)?;
    let circles = (0..n)
        .map(|v| {
            let mut c = graph.empty_set();
            c.insert_range(offset[v]..offset[v + 1]);
            c
        })
        .collect();
    Ok(Thickening {
        graph,
        embedding,
        circles,
    })
}

/// Replaces each member by the union of its vertices' circles.
pub fn lift_cover(c: &Cover, t: &Thickening) -> Result<Cover> {
    if c.ambient().order() != t.circles.len() {
        return Err(Error::input("the cover lives on a different graph"));
    }
    if let Some(v) = validate_cover(c).violation {
        return Err(Error::input(format!(
            "cover is not connected at face {:?}",
            v.face
        )));
    }
    let members = c
        .members()
        .iter()
        .map(|m| {
            let mut out = t.graph.empty_set();
            for v in m.ones() {
                out.union_with(&t.circles[v]);
            }
            out
        })
        .collect();
    Cover::from_sets(t.graph.clone(), members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::covers::canonical_cover_from_minor;
    use crate::graph::{has_minor, named_graph, verify_certificate, NamedGraph};
    use crate::planar::embed_planar;

    fn thick(g: &Graph) -> Thickening {
        let e = embed_planar(g, &Caps::default()).unwrap().unwrap();
        thicken(g, &e).unwrap()
    }

    #[test]
    fn single_edge_gives_square() {
        let g = named_graph(&NamedGraph::Path(2)).unwrap();
        let t = thick(&g);
        assert_eq!(t.graph.order(), 4);
        assert_eq!(t.graph.size(), 4);
        assert!(t.graph.is_2_connected());
        assert!(t.embedding.is_spherical());
    }

    #[test]
    fn sizes_connectivity_and_minor() {
        for g in [
            named_graph(&NamedGraph::Complete(4)).unwrap(),
            named_graph(&NamedGraph::Path(4)).unwrap(),
            Graph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap(),
        ] {
            let t = thick(&g);
            assert_eq!(t.graph.order(), 4 * g.size());
            assert!(t.graph.is_2_connected());
            assert!(t.embedding.is_spherical(), "{}", t.embedding.to_text());
            assert!(embed_planar(&t.graph, &Caps::default()).unwrap().is_some());
            verify_certificate(&t.graph, &t.certificate(&g)).unwrap();
        }
    }

    #[test]
    fn minor_survives_deleting_any_vertex() {
        let g = named_graph(&NamedGraph::Path(3)).unwrap();
        let t = thick(&g);
        for v in 0..t.graph.order() {
            let h = t.graph.remove_vertex(v);
            assert!(has_minor(&h, &g, &Caps::default()).unwrap().is_some());
        }
    }

    #[test]
    fn lifted_triangle_cover() {
        let k3 = named_graph(&NamedGraph::Complete(3)).unwrap();
        let c = canonical_cover_from_minor(&MinorCertificate::identity(&k3), &k3).unwrap();
        let t = thick(&k3);
        assert_eq!(t.graph.order(), 12);
        let lifted = lift_cover(&c, &t).unwrap();
        assert!(validate_cover(&lifted).valid);
        assert_eq!(lifted.nerve().unwrap(), c.nerve().unwrap());
        for m in lifted.members() {
            assert!(t.graph.is_2_connected_within(m));
        }
    }

    #[test]
    fn edgeless_and_disconnected_inputs() {
        let k1 = Graph::new([0], []).unwrap();
        let e = embed_planar(&k1, &Caps::default()).unwrap().unwrap();
        assert!(thicken(&k1, &e).is_err());
        let g = Graph::new([0, 1, 2, 3], [(0, 1), (2, 3)]).unwrap();
        let e = embed_planar(&g, &Caps::default()).unwrap().unwrap();
        assert!(thicken(&g, &e).is_err());
    }
}
