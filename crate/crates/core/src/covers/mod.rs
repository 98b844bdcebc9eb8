//! Connected covers of graphs.
//!
//! A cover is a list of vertex sets of an ambient graph, each standing for
//! the subgraph it induces. It is *connected* when every nonempty
//! intersection of members induces a connected subgraph.

mod canonical;
mod gamma;
mod json;
mod restrict;
mod search;

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::simplicial::{Simplex, SimplicialComplex};

pub use canonical::{canonical_cover_from_minor, extend_to_partition, transport_cover};
pub use gamma::{gamma_bounds, GammaBounds, LowerWitness, UpperRule};
pub use json::CoverJson;
pub use restrict::{
    clique_sum_restriction, link_restriction_cover, minimal_cover_reduce, Restriction,
};
pub use search::{search_cover_with_homology, SearchBudget, SearchOutcome};

/// Nerve faces are 64-bit masks, which bounds the number of members.
pub const MAX_MEMBERS: usize = crate::simplicial::MAX_VERTICES;

/// A family of vertex sets of an ambient graph.
///
/// Covers built from user input have distinct members. Covers derived by
/// restriction may repeat a member, so that their nerve matches the
/// corresponding subcomplex exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    ambient: Graph,
    members: Vec<FixedBitSet>,
}

/// Outcome of [`validate_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// The first face σ (in simplex order) whose intersection is
    /// disconnected, with the intersection's vertex labels.
    pub violation: Option<Violation>,
    /// Number of distinct nonempty intersections examined.
    pub intersections_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub face: Vec<usize>,
    pub intersection: Vec<Label>,
}

impl Cover {
    /// Builds a cover from member label lists. Members must be nonempty,
    /// distinct, and use labels of `ambient`.
    pub fn new(ambient: Graph, members: Vec<Vec<Label>>) -> Result<Cover> {
        Error::check_cap("cover members", members.len(), MAX_MEMBERS)?;
        let sets = members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                if m.is_empty() {
                    return Err(Error::input(format!("member {i} is empty")));
                }
                ambient
                    .set_from_labels(m.iter().copied())
                    .map_err(|e| Error::input(format!("member {i}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        for i in 0..sets.len() {
            for j in 0..i {
                if sets[i] == sets[j] {
                    return Err(Error::input(format!("members {j} and {i} coincide")));
                }
            }
        }
        Ok(Cover {
            ambient,
            members: sets,
        })
    }

    /// Builds from index sets; repeats are allowed, empty members are not.
    pub fn from_sets(ambient: Graph, members: Vec<FixedBitSet>) -> Result<Cover> {
        Error::check_cap("cover members", members.len(), MAX_MEMBERS)?;
        let n = ambient.order();
        let mut members = members;
        for (i, m) in members.iter_mut().enumerate() {
            if m.is_clear() {
                return Err(Error::input(format!("member {i} is empty")));
            }
            if m.ones().any(|v| v >= n) {
                return Err(Error::input(format!(
                    "member {i} has a vertex index out of range"
                )));
            }
            m.grow(n);
        }
        Ok(Cover { ambient, members })
    }

    pub fn ambient(&self) -> &Graph {
        &self.ambient
    }

    pub fn members(&self) -> &[FixedBitSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Labels of member `i`.
    pub fn member_labels(&self, i: usize) -> Vec<Label> {
        self.ambient.labels_of(&self.members[i])
    }

    pub fn has_duplicates(&self) -> bool {
        (0..self.members.len()).any(|i| (0..i).any(|j| self.members[i] == self.members[j]))
    }

    /// The common vertices of the members in `face`.
    pub fn intersection(&self, face: Simplex) -> FixedBitSet {
        let mut it = face.vertices();
        let Some(first) = it.next() else {
            return self.ambient.full_set();
        };
        let mut acc = self.members[first].clone();
        for i in it {
            acc.intersect_with(&self.members[i]);
        }
        acc
    }

    /// The subfamily with the given member indices, in that order.
    pub fn subfamily(&self, indices: &[usize]) -> Cover {
        Cover {
            ambient: self.ambient.clone(),
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
        }
    }

    /// Replaces member `i`.
    pub fn with_member(&self, i: usize, set: FixedBitSet) -> Cover {
        let mut c = self.clone();
        c.members[i] = set;
        c
    }

    /// Members sorted by their label lists, duplicates removed.
    pub fn canonical(&self) -> Cover {
        let mut keyed: Vec<(Vec<Label>, FixedBitSet)> = self
            .members
            .iter()
            .map(|m| (self.ambient.labels_of(m), m.clone()))
            .collect();
        keyed.sort();
        keyed.dedup_by(|a, b| a.0 == b.0);
        Cover {
            ambient: self.ambient.clone(),
            members: keyed.into_iter().map(|(_, m)| m).collect(),
        }
    }

    pub fn nerve(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::nerve(&self.members)
    }

    pub fn is_valid(&self) -> bool {
        intersection_closure(self)
            .iter()
            .all(|s| self.ambient.is_connected_within(s))
    }
}

/// Nerve faces with their intersections, found by extending faces in
/// increasing index order while the intersection stays nonempty.
pub(crate) fn faces_with_intersections(c: &Cover) -> Vec<(Simplex, FixedBitSet)> {
    let mut out = Vec::new();
    fn grow(
        c: &Cover,
        face: Simplex,
        common: &FixedBitSet,
        from: usize,
        out: &mut Vec<(Simplex, FixedBitSet)>,
    ) {
        for i in from..c.members.len() {
            let mut next = common.clone();
            next.intersect_with(&c.members[i]);
            if !next.is_clear() {
                let f = face.with(i);
                grow(c, f, &next, i + 1, out);
                out.push((f, next));
            }
        }
    }
    grow(c, Simplex::EMPTY, &c.ambient.full_set(), 0, &mut out);
    out.sort_by_key(|a| a.0);
    out
}

/// Distinct nonempty intersections of subfamilies: the members closed
/// under intersecting with members. Usually far fewer than nerve faces.
fn intersection_closure(c: &Cover) -> Vec<FixedBitSet> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut queue: Vec<FixedBitSet> = Vec::new();
    for m in &c.members {
        if seen.insert(m.clone()) {
            queue.push(m.clone());
        }
    }
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        for m in &c.members {
            let mut t = s.clone();
            t.intersect_with(m);
            if !t.is_clear() && !seen.contains(&t) {
                seen.insert(t.clone());
                queue.push(t);
            }
        }
        out.push(s);
    }
    out
}

/// Checks that every nonempty intersection of members is connected.
///
/// The distinct intersections are checked first; only when one of them is
/// disconnected are the nerve faces enumerated to name the first violating
/// face.
pub fn validate_cover(c: &Cover) -> ValidationReport {
    let sets = intersection_closure(c);
    let checked = sets.len();
    if sets.iter().all(|s| c.ambient.is_connected_within(s)) {
        return ValidationReport {
            valid: true,
            violation: None,
            intersections_checked: checked,
        };
    }
    let (face, common) = faces_with_intersections(c)
        .into_iter()
        .find(|(_, common)| !c.ambient.is_connected_within(common))
        .expect("a disconnected intersection belongs to some face");
    ValidationReport {
        valid: false,
        violation: Some(Violation {
            face: face.vertices().collect(),
            intersection: c.ambient.labels_of(&common),
        }),
        intersections_checked: checked,
    }
}
