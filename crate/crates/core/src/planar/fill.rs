use fixedbitset::FixedBitSet;

use super::{Embedding, Face};
use crate::error::{Error, Result};
use crate::graph::Graph;

fn check_face(e: &Embedding, h: &FixedBitSet, f: &Face) -> Result<()> {
    let g = e.graph();
    if !g.is_2_connected_within(h) {
        return Err(Error::input("the subgraph to fill is not 2-connected"));
    }
    if !e.restrict(h).faces().contains(f) {
        return Err(Error::input(
            "not a face of the induced embedding of the subgraph",
        ));
    }
    Ok(())
}

/// Vertices of G lying inside the face `f` of the embedded induced subgraph
/// `G[h]`.
///
/// Each component of G − h sits in a single face of `G[h]`. Take an edge
/// h₀c from the component to `h`, and the last neighbour u in `h` before c
/// in the rotation at h₀; the component lies in the face whose walk
/// contains u → h₀.
pub fn face_interior(e: &Embedding, h: &FixedBitSet, f: &Face) -> Result<FixedBitSet> {
    check_face(e, h, f)?;
    Ok(interior_unchecked(e, h, f))
}

pub(crate) fn interior_unchecked(e: &Embedding, h: &FixedBitSet, f: &Face) -> FixedBitSet {
    let g = e.graph();
    let mut rest = g.full_set();
    rest.difference_with(h);
    let mut inside = g.empty_set();
    for comp in g.components_within(&rest) {
        let (c, h0) = comp
            .ones()
            .find_map(|c| {
                g.neighbors(c)
                    .ones()
                    .find(|&x| h.contains(x))
                    .map(|x| (c, x))
            })
            .expect("G is connected, so every component attaches to h");
        let mut u = e.pred(h0, c);
        while !h.contains(u) {
            u = e.pred(h0, u);
        }
        if f.contains_edge(g.label(u), g.label(h0)) {
            inside.union_with(&comp);
        }
    }
    inside
}

/// `h` together with the vertices inside `f`. The result induces a
/// 2-connected subgraph; this is checked.
pub fn fill_face(g: &Graph, e: &Embedding, h: &FixedBitSet, f: &Face) -> Result<FixedBitSet> {
    if e.graph() != g {
        return Err(Error::input("the embedding is of a different graph"));
    }
    if !g.is_connected() {
        return Err(Error::input("face filling needs a connected graph"));
    }
    let mut out = face_interior(e, h, f)?;
    out.union_with(h);
    if !g.is_2_connected_within(&out) {
        return Err(Error::internal("filled subgraph is not 2-connected"));
    }
    Ok(out)
}
