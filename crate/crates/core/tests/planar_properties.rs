mod common;

use concover::covers::{clique_sum_restriction, validate_cover};
use concover::gen;
use concover::graph::{find_clique_sum_split, named_graph, verify_certificate, Graph, NamedGraph};
use concover::planar::{embed_planar, fill_face, lift_cover, thicken};
use concover::simplicial::SimplicialComplex;
use concover::Caps;
use rand::Rng;

use common::*;

/// Planarity from the embedder agrees with the absence of K5 and K3,3
/// minors decided by brute force.
#[test]
fn embedder_agrees_with_kuratowski_oracle() {
    let caps = Caps::default();
    let k5 = named_graph(&NamedGraph::Complete(5)).unwrap();
    let k33 = named_graph(&NamedGraph::Multipartite(vec![3, 3])).unwrap();
    let mut rng = gen::rng(5);
    let (mut planar, mut other) = (0, 0);
    for _ in 0..150 {
        let n = rng.gen_range(5..=7);
        let g = gen::random_connected_graph(n, rng.gen_range(0.3..0.9), &mut rng);
        let want = !brute_force_has_minor(&g, &k5) && !brute_force_has_minor(&g, &k33);
        let e = embed_planar(&g, &caps).unwrap();
        assert_eq!(e.is_some(), want, "{:?}", g.edges());
        if let Some(e) = e {
            assert!(e.is_spherical());
            planar += 1;
        } else {
            other += 1;
        }
    }
    assert!(planar > 20 && other > 20, "{planar} planar, {other} not");
}

/// Every face of a 2-connected induced subgraph can be filled, the result
/// is 2-connected, and replacing the member keeps the cover connected.
#[test]
fn face_fills_keep_lifted_covers_connected() {
    let caps = Caps::default();
    for seed in 0..50 {
        let mut rng = gen::rng(seed);
        let n = rng.gen_range(3..=8);
        let g = gen::random_planar_graph(n, &mut rng);
        if g.size() == 0 {
            continue;
        }
        let c = gen::random_connected_cover(&g, rng.gen_range(1..=6), &mut rng);
        let e = embed_planar(&g, &caps).unwrap().unwrap();
        let t = thicken(&g, &e).unwrap();
        verify_certificate(&t.graph, &t.certificate(&g)).unwrap();
        let lifted = lift_cover(&c, &t).unwrap();
        assert!(validate_cover(&lifted).valid, "seed {seed}");
        assert_eq!(lifted.nerve().unwrap(), c.nerve().unwrap());
        for i in 0..lifted.len() {
            let h = &lifted.members()[i];
            for f in t.embedding.restrict(h).faces() {
                let grown = fill_face(&t.graph, &t.embedding, h, &f).unwrap();
                assert!(t.graph.is_2_connected_within(&grown));
                assert!(
                    validate_cover(&lifted.with_member(i, grown)).valid,
                    "seed {seed} member {i}"
                );
            }
        }
    }
}

/// Splitting a clique-sum and gluing the sides back gives the graph, and
/// the nerves of the restricted covers together make up the original nerve.
#[test]
fn clique_sum_splits_reassemble() {
    let mut rng = gen::rng(11);
    let mut split_count = 0;
    for _ in 0..60 {
        let s = gen::random_clique_sum(7, &mut rng);
        let g = &s.glued;
        let Some(split) = find_clique_sum_split(g).unwrap() else {
            continue;
        };
        split_count += 1;
        let left = g.induced_subgraph(&split.left).unwrap();
        let right = g.induced_subgraph(&split.right).unwrap();
        let mut edges = left.edges();
        edges.extend(right.edges());
        let back = Graph::new(g.labels().iter().copied(), edges).unwrap();
        assert_eq!(&back, g);

        let c = gen::random_connected_cover(g, rng.gen_range(1..=7), &mut rng);
        let (a, b) = clique_sum_restriction(&c, &split).unwrap();
        assert!(validate_cover(&a.cover).valid && validate_cover(&b.cover).valid);
        let ka = a.nerve_in_original_indices().unwrap();
        let kb = b.nerve_in_original_indices().unwrap();
        let union = SimplicialComplex::from_faces(ka.faces().chain(kb.faces()));
        assert_eq!(union, c.nerve().unwrap());
    }
    assert!(split_count > 30);
}
