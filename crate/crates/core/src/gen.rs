//! Seeded random instances: graphs, connected covers, clique-sums, chains.
//!
//! Everything is driven by a `ChaCha8Rng` so that a seed pins the instance
//! on every platform.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::covers::Cover;
use crate::graph::{glue_clique_sum, Graph, Label};
use crate::planar::is_planar;
use crate::simplicial::{Chain, Simplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi G(n, p), redrawn until connected.
pub fn random_connected_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    assert!(n >= 1);
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_index_edges(n, edges);
        if g.is_connected() {
            return g;
        }
    }
}

/// G(n, p) conditioned on being connected and planar, by rejection. The
/// edge probability is drawn per attempt so that both sparse and dense
/// planar graphs show up.
pub fn random_planar_er(n: usize, rng: &mut impl Rng) -> Graph {
    let caps = Caps::default();
    loop {
        let p = if n <= 2 {
            1.0
        } else {
            rng.gen_range(1.2..3.5) / (n as f64 - 1.0)
        };
        let g = random_connected_graph(n, p.min(1.0), rng);
        if is_planar(&g, &caps).expect("within the embedding cap") {
            return g;
        }
    }
}

/// A random triangulation of the sphere: stacked insertions into random
/// faces followed by random edge flips. Needs n ≥ 3.
pub fn random_maximal_planar(n: usize, rng: &mut impl Rng) -> Graph {
    assert!(n >= 3);
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    let mut edges: BTreeSet<(usize, usize)> = [(0, 1), (0, 2), (1, 2)].into();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
        edges.extend([key(a, v), key(b, v), key(c, v)]);
    }
    for _ in 0..2 * n {
        let &(a, b) = edges.iter().nth(rng.gen_range(0..edges.len())).unwrap();
        let sides: Vec<usize> = (0..faces.len())
            .filter(|&i| faces[i].contains(&a) && faces[i].contains(&b))
            .collect();
        if sides.len() != 2 {
            continue;
        }
        let apex = |f: [usize; 3]| *f.iter().find(|&&x| x != a && x != b).unwrap();
        let (c, d) = (apex(faces[sides[0]]), apex(faces[sides[1]]));
        if c == d || edges.contains(&key(c, d)) {
            continue;
        }
        edges.remove(&(a, b));
        edges.insert(key(c, d));
        faces[sides[0]] = [a, c, d];
        faces[sides[1]] = [b, c, d];
    }
    Graph::from_index_edges(n, edges)
}

/// Deletes each edge with probability `p` unless that disconnects the graph.
pub fn thin_edges(g: &Graph, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = g.edge_indices();
    edges.shuffle(rng);
    let mut kept = edges.clone();
    for e in edges {
        if !rng.gen_bool(p) {
            continue;
        }
        let trial: Vec<(usize, usize)> = kept.iter().copied().filter(|&f| f != e).collect();
        if Graph::from_index_edges(g.order(), trial.clone()).is_connected() {
            kept = trial;
        }
    }
    Graph::from_index_edges(g.order(), kept)
}

/// A connected planar graph from either generator, chosen by coin flip.
pub fn random_planar_graph(n: usize, rng: &mut impl Rng) -> Graph {
    if n >= 4 && rng.gen_bool(0.5) {
        let g = random_maximal_planar(n, rng);
        let p = rng.gen_range(0.0..0.6);
        thin_edges(&g, p, rng)
    } else {
        random_planar_er(n, rng)
    }
}

/// A connected subgraph of a random 2-tree, hence without a K4 minor.
pub fn random_k4_minor_free(n: usize, rng: &mut impl Rng) -> Graph {
    assert!(n >= 1);
    let mut edges: Vec<(usize, usize)> = if n >= 2 { vec![(0, 1)] } else { vec![] };
    for v in 2..n {
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        edges.push((a, v));
        edges.push((b, v));
    }
    let g = Graph::from_index_edges(n, edges);
    let p = rng.gen_range(0.0..0.5);
    thin_edges(&g, p, rng)
}

/// A random connected vertex set of size `size` (or the whole component)
/// grown from `start`.
pub fn random_connected_set(
    g: &Graph,
    start: usize,
    size: usize,
    rng: &mut impl Rng,
) -> FixedBitSet {
    let mut set = g.empty_set();
    set.insert(start);
    let mut frontier: Vec<usize> = g.neighbors(start).ones().collect();
    while set.count_ones(..) < size && !frontier.is_empty() {
        let v = frontier.swap_remove(rng.gen_range(0..frontier.len()));
        if set.contains(v) {
            continue;
        }
        set.insert(v);
        frontier.extend(g.neighbors(v).ones().filter(|&w| !set.contains(w)));
    }
    set
}

/// A connected cover with up to `members` distinct members, grown one
/// member at a time: a candidate is kept only if the family stays
/// connected. If candidates keep failing, unused single vertices are added,
/// which never break connectivity.
pub fn random_connected_cover(g: &Graph, members: usize, rng: &mut impl Rng) -> Cover {
    random_cover_with(g, Vec::new(), members, rng, |g, rng| {
        let start = rng.gen_range(0..g.order());
        let size = rng.gen_range(1..=g.order());
        random_connected_set(g, start, size, rng)
    })
}

/// Like [`random_connected_cover`], but every member contains `hub`.
pub fn random_cover_through(g: &Graph, hub: usize, members: usize, rng: &mut impl Rng) -> Cover {
    random_cover_with(g, Vec::new(), members, rng, |g, rng| {
        let size = rng.gen_range(1..=g.order());
        random_connected_set(g, hub, size, rng)
    })
}

/// Adds random members to a connected cover, keeping it connected, until it
/// has `members` members.
pub fn extend_connected_cover(c: &Cover, members: usize, rng: &mut impl Rng) -> Cover {
    random_cover_with(c.ambient(), c.members().to_vec(), members, rng, |g, rng| {
        let start = rng.gen_range(0..g.order());
        let size = rng.gen_range(1..=g.order());
        random_connected_set(g, start, size, rng)
    })
}

fn random_cover_with<R: Rng>(
    g: &Graph,
    mut sets: Vec<FixedBitSet>,
    members: usize,
    rng: &mut R,
    mut draw: impl FnMut(&Graph, &mut R) -> FixedBitSet,
) -> Cover {
    let mut failures = 0;
    while sets.len() < members && failures < 40 * members {
        let s = draw(g, rng);
        if sets.contains(&s) {
            failures += 1;
            continue;
        }
        sets.push(s);
        let c = Cover::from_sets(g.clone(), sets.clone()).expect("nonempty members");
        if !c.is_valid() {
            sets.pop();
            failures += 1;
        }
    }
    for v in 0..g.order() {
        if sets.len() >= members {
            break;
        }
        let mut s = g.empty_set();
        s.insert(v);
        if !sets.contains(&s) {
            sets.push(s);
        }
    }
    Cover::from_sets(g.clone(), sets).expect("nonempty members")
}

/// A clique-sum instance: the two sides (with the labels they carry inside
/// the sum) and the glued graph.
#[derive(Clone, Debug)]
pub struct CliqueSumInstance {
    pub left: Graph,
    pub right: Graph,
    pub glued: Graph,
    pub clique: Vec<Label>,
}

fn random_clique(g: &Graph, max: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.shuffle(rng);
    let mut clique = vec![order[0]];
    for &v in &order[1..] {
        if clique.len() < max && clique.iter().all(|&u| g.has_edge_idx(u, v)) {
            clique.push(v);
        }
    }
    clique
}

/// Glues two random connected graphs on `2..=max_side` vertices along a
/// random common clique.
pub fn random_clique_sum(max_side: usize, rng: &mut impl Rng) -> CliqueSumInstance {
    let na = rng.gen_range(2..=max_side);
    let nb = rng.gen_range(2..=max_side);
    let pa = rng.gen_range(0.25..0.8);
    let pb = rng.gen_range(0.25..0.8);
    let a = random_connected_graph(na, pa, rng);
    let b = random_connected_graph(nb, pb, rng);
    let want = rng.gen_range(1..=na.min(nb).min(4));
    let ca = random_clique(&a, want, rng);
    let cb = random_clique(&b, ca.len(), rng);
    let ca = &ca[..cb.len()];
    // Rename b: its clique onto a's clique, everything else past a's labels.
    let mut fresh = na as Label;
    let mut rename = vec![0 as Label; nb];
    for (v, slot) in rename.iter_mut().enumerate() {
        *slot = match cb.iter().position(|&u| u == v) {
            Some(k) => a.label(ca[k]),
            None => {
                fresh += 1;
                fresh - 1
            }
        };
    }
    let b = b
        .relabel(|l| rename[l as usize])
        .expect("renaming is injective");
    let glued = glue_clique_sum(&a, &b).expect("shared labels form a clique");
    let mut clique: Vec<Label> = ca.iter().map(|&v| a.label(v)).collect();
    clique.sort_unstable();
    CliqueSumInstance {
        left: a,
        right: b,
        glued,
        clique,
    }
}

/// The boundary of a random 3-chain on `n` vertices with a random order of
/// its triangles. The boundary may be zero.
pub fn random_two_cycle(n: usize, max_tets: usize, rng: &mut impl Rng) -> (Chain, Vec<Simplex>) {
    let all: Vec<usize> = (0..n).collect();
    let count = rng.gen_range(1..=max_tets);
    let tets = (0..count).map(|_| {
        let mut t: Vec<usize> = all.choose_multiple(rng, 4).copied().collect();
        t.sort_unstable();
        Simplex::of(&t)
    });
    let tau = Chain::new(3, tets.collect::<Vec<_>>())
        .expect("3-simplices")
        .boundary();
    let mut order: Vec<Simplex> = tau.simplices().collect();
    order.shuffle(rng);
    (tau, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::validate_cover;
    use crate::graph::{hadwiger_number, has_minor, named_graph, NamedGraph};

    #[test]
    fn seeds_are_reproducible() {
        let a = random_planar_graph(9, &mut rng(7));
        let b = random_planar_graph(9, &mut rng(7));
        assert_eq!(a, b);
        let c1 = random_connected_cover(&a, 6, &mut rng(3));
        let c2 = random_connected_cover(&b, 6, &mut rng(3));
        assert_eq!(c1, c2);
    }

    #[test]
    fn maximal_planar_has_3n_minus_6_edges() {
        let caps = Caps::default();
        for seed in 0..20 {
            let n = 4 + seed as usize % 8;
            let g = random_maximal_planar(n, &mut rng(seed));
            assert_eq!(g.size(), 3 * n - 6);
            assert!(is_planar(&g, &caps).unwrap());
            assert!(g.is_connected());
        }
    }

    #[test]
    fn planar_generators_give_connected_planar_graphs() {
        let caps = Caps::default();
        for seed in 0..30 {
            let g = random_planar_graph(3 + seed as usize % 8, &mut rng(seed));
            assert!(g.is_connected());
            assert!(is_planar(&g, &caps).unwrap());
        }
    }

    #[test]
    fn two_trees_are_k4_minor_free() {
        let caps = Caps::default();
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        for seed in 0..15 {
            let g = random_k4_minor_free(3 + seed as usize % 7, &mut rng(seed));
            assert!(g.is_connected());
            assert!(has_minor(&g, &k4, &caps).unwrap().is_none());
        }
    }

    #[test]
    fn covers_are_connected_and_distinct() {
        for seed in 0..30 {
            let mut r = rng(seed);
            let g = random_planar_graph(8, &mut r);
            let c = random_connected_cover(&g, 7, &mut r);
            assert_eq!(c.len(), 7);
            assert!(!c.has_duplicates());
            assert!(validate_cover(&c).valid);
            let h = random_cover_through(&g, 2, 5, &mut r);
            assert!(validate_cover(&h).valid);
        }
    }

    #[test]
    fn clique_sums_glue_on_a_clique() {
        let caps = Caps::default();
        for seed in 0..10 {
            let s = random_clique_sum(6, &mut rng(seed));
            assert_eq!(
                s.glued.order(),
                s.left.order() + s.right.order() - s.clique.len()
            );
            let set = s.glued.set_from_labels(s.clique.iter().copied()).unwrap();
            assert!(s.glued.is_clique(&set));
            let h = hadwiger_number(&s.glued, &caps).unwrap().number;
            assert!(h >= s.clique.len());
        }
    }

    #[test]
    fn two_cycles_are_cycles() {
        for seed in 0..20 {
            let (tau, order) = random_two_cycle(8, 6, &mut rng(seed));
            assert!(tau.is_cycle());
            assert_eq!(order.len(), tau.len());
        }
    }
}
