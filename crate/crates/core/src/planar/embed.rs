use std::collections::{BTreeSet, VecDeque};

use fixedbitset::FixedBitSet;

use super::Embedding;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{has_minor, named_graph, Graph, NamedGraph};

/// Vertex sets of the blocks (maximal 2-connected pieces, bridges, isolated
/// vertices), from a depth-first search with an edge stack.
fn blocks(g: &Graph) -> Vec<FixedBitSet> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    fn dfs(
        g: &Graph,
        v: usize,
        parent: usize,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<(usize, usize)>,
        out: &mut Vec<FixedBitSet>,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        for u in g.neighbors(v).ones() {
            if disc[u] == usize::MAX {
                stack.push((v, u));
                dfs(g, u, v, disc, low, time, stack, out);
                low[v] = low[v].min(low[u]);
                if low[u] >= disc[v] {
                    let mut b = g.empty_set();
                    while let Some((a, c)) = stack.pop() {
                        b.insert(a);
                        b.insert(c);
                        if (a, c) == (v, u) {
                            break;
                        }
                    }
                    out.push(b);
                }
            } else if u != parent && disc[u] < disc[v] {
                stack.push((v, u));
                low[v] = low[v].min(disc[u]);
            }
        }
    }

    for v in 0..n {
        if disc[v] == usize::MAX {
            if g.degree(v) == 0 {
                disc[v] = time;
                time += 1;
                let mut b = g.empty_set();
                b.insert(v);
                out.push(b);
            } else {
                dfs(
                    g,
                    v,
                    usize::MAX,
                    &mut disc,
                    &mut low,
                    &mut time,
                    &mut stack,
                    &mut out,
                );
            }
        }
    }
    out
}

/// A cycle through the edge {0, first neighbour of 0}.
fn initial_cycle(b: &Graph) -> Vec<usize> {
    let w = b
        .neighbors(0)
        .ones()
        .next()
        .expect("blocks with 3+ vertices have edges");
    let mut prev = vec![usize::MAX; b.order()];
    let mut seen = b.empty_set();
    seen.insert(w);
    let mut queue = VecDeque::from([w]);
    while let Some(u) = queue.pop_front() {
        for v in b.neighbors(u).ones() {
            if (u == w && v == 0) || seen.contains(v) {
                continue;
            }
            seen.insert(v);
            prev[v] = u;
            queue.push_back(v);
        }
    }
    // Path w → ... → 0, closed by the edge 0 – w.
    let mut path = vec![0];
    let mut cur = 0;
    while cur != w {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// A piece of the block not yet drawn: its attachment vertices on the drawn
/// part and a path between two of them.
struct Fragment {
    attachments: Vec<usize>,
    path: Vec<usize>,
}

fn fragments(
    b: &Graph,
    drawn: &FixedBitSet,
    drawn_edges: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (u, v) in b.edge_indices() {
        if drawn.contains(u) && drawn.contains(v) && !drawn_edges.contains(&(u, v)) {
            out.push(Fragment {
                attachments: vec![u, v],
                path: vec![u, v],
            });
        }
    }
    let mut rest = b.full_set();
    rest.difference_with(drawn);
    for comp in b.components_within(&rest) {
        let mut att = b.empty_set();
        for c in comp.ones() {
            att.union_with(b.neighbors(c));
        }
        att.intersect_with(drawn);
        let attachments: Vec<usize> = att.ones().collect();
        let (a, z) = (attachments[0], attachments[1]);
        let mut from = b.neighbors(a).clone();
        from.intersect_with(&comp);
        let mut to = b.neighbors(z).clone();
        to.intersect_with(&comp);
        let inner = b
            .shortest_path_within(&comp, &from, &to)
            .expect("a component is connected");
        let mut path = vec![a];
        path.extend(inner);
        path.push(z);
        out.push(Fragment { attachments, path });
    }
    out
}

/// Demoucron–Malgrange–Pertuiset on a 2-connected graph with at least three
/// vertices: faces are kept as consistently oriented vertex cycles and each
/// step draws a path of some fragment into a face holding all of its
/// attachments, preferring fragments with a single such face.
fn embed_biconnected(b: &Graph) -> Option<Vec<Vec<usize>>> {
    let cycle = initial_cycle(b);
    let mut drawn = b.empty_set();
    let mut drawn_edges = BTreeSet::new();
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        drawn.insert(u);
        drawn_edges.insert((u.min(v), u.max(v)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    loop {
        let frags = fragments(b, &drawn, &drawn_edges);
        if frags.is_empty() {
            break;
        }
        let mut choice: Option<(usize, usize)> = None;
        for (fi, f) in frags.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&k| f.attachments.iter().all(|a| faces[k].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, k) = choice.expect("some fragment was seen");
        let path = &frags[fi].path;
        let face = faces.swap_remove(k);
        let (a, z) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&v| v == a).unwrap();
        let iz = face.iter().position(|&v| v == z).unwrap();
        let arc = |from: usize, to: usize| -> Vec<usize> {
            let mut out = vec![face[from]];
            let mut i = from;
            while i != to {
                i = (i + 1) % face.len();
                out.push(face[i]);
            }
            out
        };
        let interior = &path[1..path.len() - 1];
        let mut f1 = arc(ia, iz);
        f1.extend(interior.iter().rev());
        let mut f2 = arc(iz, ia);
        f2.extend(interior.iter());
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            drawn.insert(w[0]);
            drawn.insert(w[1]);
            drawn_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    // Read the rotation off the faces: consecutive u → v → w on a face means
    // w follows u at v.
    let n = b.order();
    let mut succ = vec![vec![usize::MAX; n]; n];
    for f in &faces {
        for i in 0..f.len() {
            let (u, v, w) = (f[i], f[(i + 1) % f.len()], f[(i + 2) % f.len()]);
            succ[v][u] = w;
        }
    }
    let rotation = (0..n)
        .map(|v| {
            let start = b.neighbors(v).ones().next().unwrap();
            let mut rot = vec![start];
            let mut cur = succ[v][start];
            while cur != start {
                rot.push(cur);
                cur = succ[v][cur];
            }
            rot
        })
        .collect();
    Some(rotation)
}

/// A sphere embedding of `g`, or `None` if `g` is not planar.
///
/// Each block is embedded by path insertion and the block rotations are
/// concatenated at cut vertices. When `g` is small enough for the minor
/// engine, the answer is checked against the absence of K5 and K3,3 minors.
pub fn embed_planar(g: &Graph, caps: &Caps) -> Result<Option<Embedding>> {
    Error::check_cap("graph vertices", g.order(), caps.embed_vertices)?;
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    let mut planar = true;
    for block in blocks(g) {
        let verts: Vec<usize> = block.ones().collect();
        let sub = g.induced(&block);
        let local = if verts.len() <= 2 {
            (0..verts.len())
                .map(|i| (0..verts.len()).filter(|&j| j != i).collect())
                .collect()
        } else {
            match embed_biconnected(&sub) {
                Some(r) => r,
                None => {
                    planar = false;
                    break;
                }
            }
        };
        for (i, rot) in local.into_iter().enumerate() {
            rotation[verts[i]].extend(rot.into_iter().map(|j| verts[j]));
        }
    }
    if g.order() <= caps.minor_graph_vertices {
        let by_minors = !has_kuratowski_minor(g, caps)?;
        if by_minors != planar {
            return Err(Error::internal(format!(
                "planarity by path insertion ({planar}) disagrees with forbidden minors ({by_minors})"
            )));
        }
    }
    if !planar {
        return Ok(None);
    }
    let e = Embedding::new(g.clone(), rotation)?;
    if !e.is_spherical() {
        return Err(Error::internal(
            "constructed rotation system is not a sphere embedding",
        ));
    }
    Ok(Some(e))
}

fn has_kuratowski_minor(g: &Graph, caps: &Caps) -> Result<bool> {
    let k5 = named_graph(&NamedGraph::Complete(5))?;
    let k33 = named_graph(&NamedGraph::Multipartite(vec![3, 3]))?;
    Ok(has_minor(g, &k5, caps)?.is_some() || has_minor(g, &k33, caps)?.is_some())
}

pub fn is_planar(g: &Graph, caps: &Caps) -> Result<bool> {
    Ok(embed_planar(g, caps)?.is_some())
}
