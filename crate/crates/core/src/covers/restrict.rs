use super::{validate_cover, Cover};
use crate::error::{Error, Result};
use crate::graph::CliqueSumSplit;
use crate::simplicial::{betti_from, SimplicialComplex};

/// A cover obtained by restricting another one, with the index of the
/// original member behind each new member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub cover: Cover,
    pub origin: Vec<usize>,
}

impl Restriction {
    /// The nerve with vertices renamed back to original member indices.
    pub fn nerve_in_original_indices(&self) -> Result<SimplicialComplex> {
        self.cover.nerve()?.relabel(&self.origin)
    }
}

fn restrict_to(
    c: &Cover,
    keep: &fixedbitset::FixedBitSet,
    skip: Option<usize>,
) -> Result<Restriction> {
    let sub = c.ambient().induced(keep);
    // Index map from the ambient graph into the induced subgraph.
    let mut pos = vec![usize::MAX; c.ambient().order()];
    for (k, v) in keep.ones().enumerate() {
        pos[v] = k;
    }
    let mut members = Vec::new();
    let mut origin = Vec::new();
    for (i, m) in c.members().iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let mut common = m.clone();
        common.intersect_with(keep);
        if common.is_clear() {
            continue;
        }
        let mut local = sub.empty_set();
        for v in common.ones() {
            local.insert(pos[v]);
        }
        members.push(local);
        origin.push(i);
    }
    Ok(Restriction {
        cover: Cover::from_sets(sub, members)?,
        origin,
    })
}

/// F_x = {G_i ∩ G_x : i ≠ x, G_i ∩ G_x ≠ ∅}, a cover of G_x whose nerve is
/// the link of x in the nerve of `c`.
pub fn link_restriction_cover(c: &Cover, x: usize) -> Result<Restriction> {
    if x >= c.len() {
        return Err(Error::input(format!("member index {x} out of range")));
    }
    if let Some(v) = validate_cover(c).violation {
        return Err(Error::input(format!(
            "cover is not connected at face {:?}",
            v.face
        )));
    }
    let r = restrict_to(c, &c.members()[x].clone(), Some(x))?;
    let link = c.nerve()?.link(x)?;
    if r.nerve_in_original_indices()? != link {
        return Err(Error::internal("restricted nerve differs from the link"));
    }
    Ok(r)
}

/// The restrictions F_A, F_B of a connected cover to the two sides of a
/// clique-sum split. Both are connected covers and their nerves (in original
/// indices) together make up the nerve of `c`.
pub fn clique_sum_restriction(
    c: &Cover,
    split: &CliqueSumSplit,
) -> Result<(Restriction, Restriction)> {
    split.validate(c.ambient())?;
    if let Some(v) = validate_cover(c).violation {
        return Err(Error::input(format!(
            "cover is not connected at face {:?}",
            v.face
        )));
    }
    let g = c.ambient();
    let a = restrict_to(c, &g.set_from_labels(split.left.iter().copied())?, None)?;
    let b = restrict_to(c, &g.set_from_labels(split.right.iter().copied())?, None)?;
    for (side, r) in [("left", &a), ("right", &b)] {
        if let Some(v) = validate_cover(&r.cover).violation {
            return Err(Error::internal(format!(
                "{side} restriction is not connected at face {:?}",
                v.face
            )));
        }
    }
    Ok((a, b))
}

/// Greedily deletes members while b̃_d of the nerve stays nonzero, until no
/// single deletion keeps it nonzero.
pub fn minimal_cover_reduce(c: &Cover, d: usize) -> Result<Cover> {
    let nonzero = |cover: &Cover| -> Result<bool> {
        Ok(betti_from(&cover.nerve()?, d).first().copied().unwrap_or(0) != 0)
    };
    if !nonzero(c)? {
        return Err(Error::input(format!("b̃_{d} of the nerve is zero")));
    }
    let mut keep: Vec<usize> = (0..c.len()).collect();
    loop {
        let mut removed = false;
        for pos in 0..keep.len() {
            let mut trial = keep.clone();
            trial.remove(pos);
            if nonzero(&c.subfamily(&trial))? {
                keep = trial;
                removed = true;
                break;
            }
        }
        if !removed {
            return Ok(c.subfamily(&keep));
        }
    }
}

/// Union of complexes.
#[cfg(test)]
fn nerve_union(parts: &[SimplicialComplex]) -> SimplicialComplex {
    parts
        .iter()
        .fold(SimplicialComplex::empty(), |acc, p| acc.union(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::canonical_cover_from_minor;
    use crate::graph::{find_clique_sum_split, named_graph, Graph, MinorCertificate, NamedGraph};
    use crate::simplicial::betti;

    fn canonical(n: usize) -> Cover {
        let k = named_graph(&NamedGraph::Complete(n)).unwrap();
        canonical_cover_from_minor(&MinorCertificate::identity(&k), &k).unwrap()
    }

    #[test]
    fn link_of_triangle_cover() {
        let c = canonical(3);
        for x in 0..3 {
            let r = link_restriction_cover(&c, x).unwrap();
            assert_eq!(r.cover.len(), 2);
            assert_eq!(r.cover.ambient().order(), 2);
            let n = r.cover.nerve().unwrap();
            assert_eq!(n.maximal_faces().len(), 2);
            assert_eq!(n.dim(), 0);
        }
    }

    #[test]
    fn isolated_member_has_empty_link_cover() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = Cover::new(g, vec![vec![0], vec![2, 3]]).unwrap();
        let r = link_restriction_cover(&c, 0).unwrap();
        assert!(r.cover.is_empty());
    }

    #[test]
    fn triangles_glued_on_an_edge() {
        // Vertices 0,1,2 and 1,2,3; canonical triangle covers of both sides
        // lifted to the whole graph.
        let g = Graph::from_edges([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let c = Cover::new(
            g.clone(),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 2, 3],
                vec![1, 3],
                vec![2, 3],
            ],
        )
        .unwrap();
        assert!(validate_cover(&c).valid);
        let split = find_clique_sum_split(&g).unwrap().unwrap();
        let (a, b) = clique_sum_restriction(&c, &split).unwrap();
        let union = nerve_union(&[
            a.nerve_in_original_indices().unwrap(),
            b.nerve_in_original_indices().unwrap(),
        ]);
        assert_eq!(union, c.nerve().unwrap());
    }

    #[test]
    fn member_inside_one_side_stays_there() {
        let g = Graph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = Cover::new(g.clone(), vec![vec![0], vec![0, 1, 2, 3]]).unwrap();
        let split = find_clique_sum_split(&g).unwrap().unwrap();
        let (a, b) = clique_sum_restriction(&c, &split).unwrap();
        let in_a = a.origin.contains(&0);
        let in_b = b.origin.contains(&0);
        assert!(in_a != in_b);
    }

    #[test]
    fn reduce_drops_redundant_member() {
        let base = canonical(4);
        let g = base.ambient().clone();
        let mut members: Vec<_> = base.members().to_vec();
        members.push(g.full_set());
        let c = Cover::from_sets(g, members).unwrap();
        // A whole-graph member makes the nerve a cone, so there is nothing
        // to reduce.
        assert_eq!(betti(&c.nerve().unwrap()).get(2), 0);
        assert!(minimal_cover_reduce(&c, 2).is_err());
        // A single-vertex member is redundant without killing homology.
        let mut members: Vec<_> = base.members().to_vec();
        let mut extra = base.ambient().empty_set();
        extra.insert(0);
        members.push(extra);
        let c = Cover::from_sets(base.ambient().clone(), members).unwrap();
        assert_eq!(betti(&c.nerve().unwrap()).get(2), 1);
        let reduced = minimal_cover_reduce(&c, 2).unwrap();
        assert_eq!(reduced.len(), 4);
        assert_eq!(minimal_cover_reduce(&base, 2).unwrap(), base);
        assert!(minimal_cover_reduce(&base, 1).is_err());
    }

    #[test]
    fn reduced_members_carry_lower_homology() {
        let c = canonical(5);
        let reduced = minimal_cover_reduce(&c, 3).unwrap();
        for x in 0..reduced.len() {
            let r = link_restriction_cover(&reduced, x).unwrap();
            assert_ne!(betti(&r.cover.nerve().unwrap()).get(2), 0);
        }
    }
}
