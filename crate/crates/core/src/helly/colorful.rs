use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::membership_masks;
use crate::covers::{validate_cover, Cover};
use crate::error::{Error, Result};
use crate::graph::{named_graph, verify_certificate, MinorCertificate, NamedGraph};

/// Colour classes for the colourful builders: `singles` are classes with
/// one member each, `a` and `b` have r members, and `c` lists the
/// C(r, 2) members C_{i,j} in the order (1,2), (1,3), …, (r−1,r).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorfulPartition {
    #[serde(default)]
    pub singles: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ColorfulOutcome {
    /// Member indices with a common vertex.
    Intersecting {
        members: Vec<usize>,
        vertex: u32,
    },
    Minor {
        certificate: MinorCertificate,
    },
}

/// K5 version: |A| = |B| = 5, |C| = 10, no single classes.
pub fn colorful_k5_builder(c: &Cover, partition: &ColorfulPartition) -> Result<ColorfulOutcome> {
    if !partition.singles.is_empty() {
        return Err(Error::input(
            "the K5 builder takes exactly three colour classes",
        ));
    }
    generalized_colorful_builder(c, partition, 5, 3)
}

fn pair_index(r: usize, i: usize, j: usize) -> usize {
    // Position of (i, j), i < j, in lexicographic order of pairs of 0..r.
    i * (2 * r - i - 1) / 2 + (j - i - 1)
}

/// Either N+1 members with a common vertex, or a K_r model.
///
/// With Z the common part of the single classes, the model has branch sets
/// G'_j = G_j ∪ ⋃_{i<j} π_{i,j} where G_i = (A_i ∩ B_i) ∪ ⋃_{j>i} (A_i ∩ C_{i,j})
/// inside Z, and π_{i,j} is a shortest path in (B_j ∩ C_{i,j} ∩ Z) ∖ A_i from
/// A_j ∩ B_j to a neighbour of A_i ∩ C_{i,j}.
pub fn generalized_colorful_builder(
    c: &Cover,
    partition: &ColorfulPartition,
    r: usize,
    n_classes: usize,
) -> Result<ColorfulOutcome> {
    let ColorfulPartition {
        singles,
        a,
        b,
        c: cs,
    } = partition;
    if r < 2 || n_classes < 3 {
        return Err(Error::input("need r ≥ 2 and at least three colour classes"));
    }
    if singles.len() != n_classes - 3 || a.len() != r || b.len() != r || cs.len() != r * (r - 1) / 2
    {
        return Err(Error::input(format!(
            "class sizes must be {} singles, {r}, {r} and {}",
            n_classes - 3,
            r * (r - 1) / 2
        )));
    }
    let mut seen = vec![false; c.len()];
    for &i in singles.iter().chain(a).chain(b).chain(cs) {
        if i >= c.len() || std::mem::replace(&mut seen[i], true) {
            return Err(Error::input(format!(
                "member {i} is out of range or used twice"
            )));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::input("the classes must partition the family"));
    }
    if let Some(v) = validate_cover(c).violation {
        return Err(Error::input(format!(
            "cover is not connected at face {:?}",
            v.face
        )));
    }
    let g = c.ambient();
    let mut z = g.full_set();
    for &s in singles {
        z.intersect_with(&c.members()[s]);
    }
    let meet = |ids: &[usize]| -> FixedBitSet {
        let mut acc = z.clone();
        for &i in ids {
            acc.intersect_with(&c.members()[i]);
        }
        acc
    };
    for &x in a {
        for &y in b {
            for &w in cs {
                if meet(&[x, y, w]).is_clear() {
                    return Err(Error::input(format!(
                        "colourful transversal {x}, {y}, {w} does not intersect"
                    )));
                }
            }
        }
    }

    // Any N+1 members sharing a vertex settle the question.
    let masks = membership_masks(c);
    if let Some((v, m)) = masks
        .iter()
        .enumerate()
        .find(|(_, m)| m.count_ones() as usize > n_classes)
    {
        let members: Vec<usize> = (0..64)
            .filter(|i| m >> i & 1 == 1)
            .take(n_classes + 1)
            .collect();
        return Ok(ColorfulOutcome::Intersecting {
            members,
            vertex: g.label(v),
        });
    }

    let mut parts: Vec<FixedBitSet> = (0..r)
        .map(|i| {
            let mut gi = meet(&[a[i], b[i]]);
            for j in i + 1..r {
                gi.union_with(&meet(&[a[i], cs[pair_index(r, i, j)]]));
            }
            gi
        })
        .collect();
    for j in 0..r {
        for i in 0..j {
            let cij = cs[pair_index(r, i, j)];
            let mut within = meet(&[b[j], cij]);
            within.difference_with(&c.members()[a[i]]);
            let mut from = meet(&[a[j], b[j]]);
            from.intersect_with(&within);
            let anchor = meet(&[a[i], cij]);
            let mut to = g.empty_set();
            for v in anchor.ones() {
                to.union_with(g.neighbors(v));
            }
            to.intersect_with(&within);
            let path = g
                .shortest_path_within(&within, &from, &to)
                .ok_or_else(|| Error::internal(format!("no path π for the pair ({i}, {j})")))?;
            for v in path {
                parts[j].insert(v);
            }
        }
    }
    let cert = MinorCertificate {
        pattern: named_graph(&NamedGraph::Complete(r))?,
        branch_sets: parts.iter().map(|p| g.labels_of(p)).collect(),
    };
    verify_certificate(g, &cert)
        .map_err(|e| Error::internal(format!("colourful model fails: {e}")))?;
    Ok(ColorfulOutcome::Minor { certificate: cert })
}
