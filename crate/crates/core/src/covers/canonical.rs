use fixedbitset::FixedBitSet;

use super::Cover;
use crate::error::{Error, Result};
use crate::graph::{verify_certificate, Graph, MinorCertificate};

/// Grows the branch sets of a certificate into a partition of V(g): every
/// leftover vertex joins the adjacent branch set of smallest index,
/// repeating until no vertex is left. Branch sets stay connected.
pub fn extend_to_partition(g: &Graph, cert: &MinorCertificate) -> Result<Vec<FixedBitSet>> {
    verify_certificate(g, cert).map_err(|e| Error::input(format!("invalid certificate: {e}")))?;
    if cert.branch_sets.is_empty() {
        return Err(Error::input("certificate has no branch sets"));
    }
    if !g.is_connected() {
        return Err(Error::input(
            "cannot extend to a partition of a disconnected graph",
        ));
    }
    let mut parts: Vec<FixedBitSet> = cert
        .branch_sets
        .iter()
        .map(|b| g.set_from_labels(b.iter().copied()))
        .collect::<Result<_>>()?;
    let mut owner: Vec<Option<usize>> = vec![None; g.order()];
    for (i, p) in parts.iter().enumerate() {
        for v in p.ones() {
            owner[v] = Some(i);
        }
    }
    loop {
        // One sweep assigns against the ownership at the start of the sweep,
        // so the result does not depend on the order within a sweep.
        let snapshot = owner.clone();
        let mut changed = false;
        for v in 0..g.order() {
            if snapshot[v].is_some() {
                continue;
            }
            if let Some(best) = g.neighbors(v).ones().filter_map(|u| snapshot[u]).min() {
                owner[v] = Some(best);
                parts[best].insert(v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(owner.iter().all(|o| o.is_some()));
    Ok(parts)
}

/// The cover {G − V_i} of complements of the parts of a K_{d+2} model
/// extended to a partition. Its nerve is the boundary of the (d+1)-simplex.
pub fn canonical_cover_from_minor(cert: &MinorCertificate, g: &Graph) -> Result<Cover> {
    let k = cert.pattern.order();
    if k < 2 || cert.pattern.size() != k * (k - 1) / 2 {
        return Err(Error::input(
            "canonical covers need a complete pattern on at least 2 vertices",
        ));
    }
    let parts = extend_to_partition(g, cert)?;
    let members = parts
        .iter()
        .map(|p| {
            let mut m = g.full_set();
            m.difference_with(p);
            m
        })
        .collect();
    Cover::from_sets(g.clone(), members)
}

/// Pushes a cover of the pattern graph H through a model of H in g: each
/// member becomes the union of the branch sets of its vertices. The nerve is
/// unchanged because branch sets are disjoint.
pub fn transport_cover(c: &Cover, cert: &MinorCertificate, g: &Graph) -> Result<Cover> {
    if c.ambient() != &cert.pattern {
        return Err(Error::input(
            "the cover does not live on the certificate's pattern",
        ));
    }
    verify_certificate(g, cert).map_err(|e| Error::input(format!("invalid certificate: {e}")))?;
    let branch: Vec<FixedBitSet> = cert
        .branch_sets
        .iter()
        .map(|b| g.set_from_labels(b.iter().copied()))
        .collect::<Result<_>>()?;
    let members = c
        .members()
        .iter()
        .map(|m| {
            let mut out = g.empty_set();
            for h in m.ones() {
                out.union_with(&branch[h]);
            }
            out
        })
        .collect();
    Cover::from_sets(g.clone(), members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::covers::validate_cover;
    use crate::graph::{hadwiger_number, named_graph, NamedGraph};
    use crate::simplicial::{betti, Simplex, SimplicialComplex};

    fn full_boundary(k: usize) -> SimplicialComplex {
        SimplicialComplex::simplex_boundary(Simplex::new(0..k).unwrap())
    }

    #[test]
    fn triangle_gives_circle() {
        let k3 = named_graph(&NamedGraph::Complete(3)).unwrap();
        let c = canonical_cover_from_minor(&MinorCertificate::identity(&k3), &k3).unwrap();
        assert_eq!(c.len(), 3);
        assert!((0..3).all(|i| c.member_labels(i).len() == 2));
        assert_eq!(c.nerve().unwrap(), full_boundary(3));
        assert_eq!(betti(&c.nerve().unwrap()).values, vec![0, 1]);
    }

    #[test]
    fn k5_gives_three_sphere() {
        let k5 = named_graph(&NamedGraph::Complete(5)).unwrap();
        let c = canonical_cover_from_minor(&MinorCertificate::identity(&k5), &k5).unwrap();
        assert!(validate_cover(&c).valid);
        assert_eq!(betti(&c.nerve().unwrap()).values, vec![0, 0, 0, 1]);
    }

    #[test]
    fn wagner_k4_cover() {
        let w = named_graph(&NamedGraph::Wagner).unwrap();
        let h = hadwiger_number(&w, &Caps::default()).unwrap();
        let c = canonical_cover_from_minor(&h.certificate, &w).unwrap();
        assert_eq!(c.len(), 4);
        assert!(validate_cover(&c).valid);
        assert_eq!(c.nerve().unwrap(), full_boundary(4));
        assert_eq!(betti(&c.nerve().unwrap()).get(2), 1);
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = Graph::new([0, 1, 2, 3], [(0, 1), (2, 3)]).unwrap();
        let cert = MinorCertificate {
            pattern: named_graph(&NamedGraph::Complete(2)).unwrap(),
            branch_sets: vec![vec![0], vec![1]],
        };
        assert!(canonical_cover_from_minor(&cert, &g).is_err());
    }

    #[test]
    fn transport_keeps_the_nerve() {
        // The K4 cover transported into the Wagner graph along its K4 model.
        let k4 = named_graph(&NamedGraph::Complete(4)).unwrap();
        let base = canonical_cover_from_minor(&MinorCertificate::identity(&k4), &k4).unwrap();
        let w = named_graph(&NamedGraph::Wagner).unwrap();
        let cert = hadwiger_number(&w, &Caps::default()).unwrap().certificate;
        let moved = transport_cover(&base, &cert, &w).unwrap();
        assert!(validate_cover(&moved).valid);
        assert_eq!(moved.nerve().unwrap(), base.nerve().unwrap());
    }
}
