use std::collections::{BTreeMap, HashSet};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{validate_cover, Cover, MAX_MEMBERS};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::simplicial::{betti_from, Simplex, SimplicialComplex};

/// Limits for cover searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Largest family size tried.
    pub members: usize,
    /// Largest number of candidate connected subgraphs.
    pub pool: usize,
    /// Families visited per subtree: one subtree per first member, and per
    /// family size when a single dimension is searched.
    pub nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            members: 8,
            pool: 64,
            nodes: 200_000,
        }
    }
}

/// Result of [`search_cover_with_homology`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Found {
        cover: Cover,
    },
    /// Every family in the enumerated space was checked. `complete` means
    /// that space contains every connected cover of the graph up to
    /// repeated members.
    ProvenAbsent {
        complete: bool,
    },
    BudgetExhausted,
}

/// Connected vertex subsets ordered by size then by vertex list, at most
/// `limit` of them. The flag tells whether all of them were listed.
pub(crate) fn connected_subsets(g: &Graph, limit: usize) -> (Vec<FixedBitSet>, bool) {
    let mut out: Vec<FixedBitSet> = Vec::new();
    let mut level: Vec<FixedBitSet> = (0..g.order())
        .map(|v| {
            let mut s = g.empty_set();
            s.insert(v);
            s
        })
        .collect();
    while !level.is_empty() {
        if out.len() + level.len() > limit {
            out.extend(level.into_iter().take(limit - out.len()));
            return (out, false);
        }
        let mut next: HashSet<FixedBitSet> = HashSet::new();
        for s in &level {
            for v in s.ones() {
                for u in g.neighbors(v).ones() {
                    if !s.contains(u) {
                        let mut t = s.clone();
                        t.insert(u);
                        next.insert(t);
                    }
                }
            }
        }
        out.append(&mut level);
        let mut next: Vec<(Vec<usize>, FixedBitSet)> =
            next.into_iter().map(|s| (s.ones().collect(), s)).collect();
        next.sort();
        level = next.into_iter().map(|(_, s)| s).collect();
    }
    (out, true)
}

/// What one subtree of the family search found.
#[derive(Default)]
struct Subtree {
    found: BTreeMap<usize, Vec<usize>>,
    exhausted: bool,
}

struct Walker<'a> {
    g: &'a Graph,
    pool: &'a [FixedBitSet],
    dims: &'a [usize],
    max_members: usize,
    /// Only families of exactly `max_members` are tested for homology.
    exact_size: bool,
    nodes_left: u64,
    stop_on_first: bool,
    out: Subtree,
}

impl Walker<'_> {
    fn done(&self) -> bool {
        self.out.exhausted
            || (self.stop_on_first && !self.out.found.is_empty())
            || self.out.found.len() == self.dims.len()
    }

    /// `faces` holds every nonempty-intersection face of the current family
    /// (pool indices `family`) with its intersection.
    fn visit(&mut self, family: &mut Vec<usize>, faces: &[(Simplex, FixedBitSet)]) {
        if self.nodes_left == 0 {
            self.out.exhausted = true;
            return;
        }
        self.nodes_left -= 1;
        let k = family.len();
        let pending: Vec<usize> = self
            .dims
            .iter()
            .copied()
            .filter(|d| k >= d + 2 && !self.out.found.contains_key(d))
            .filter(|_| !self.exact_size || k == self.max_members)
            .collect();
        if let Some(&low) = pending.first() {
            let mut set: std::collections::BTreeSet<Simplex> = faces.iter().map(|f| f.0).collect();
            set.insert(Simplex::EMPTY);
            let nerve = SimplicialComplex::from_closed(set);
            let b = betti_from(&nerve, low);
            for d in pending {
                if b.get(d - low).copied().unwrap_or(0) != 0 {
                    self.out.found.insert(d, family.clone());
                }
            }
            if self.done() {
                return;
            }
        }
        if k == self.max_members {
            return;
        }
        let start = family.last().map_or(0, |&l| l + 1);
        for next in start..self.pool.len() {
            let p = &self.pool[next];
            let mut grown = Vec::with_capacity(faces.len() * 2 + 1);
            let mut ok = true;
            for (s, common) in faces {
                let mut c = common.clone();
                c.intersect_with(p);
                if !c.is_clear() {
                    if !self.g.is_connected_within(&c) {
                        ok = false;
                        break;
                    }
                    grown.push((s.with(k), c));
                }
            }
            if !ok {
                continue;
            }
            grown.push((Simplex::vertex(k), p.clone()));
            grown.extend(faces.iter().cloned());
            family.push(next);
            self.visit(family, &grown);
            family.pop();
            if self.done() {
                return;
            }
        }
    }
}

pub(crate) struct FamilySearch {
    /// For each requested dimension found, the pool indices of a witness.
    pub found: BTreeMap<usize, Cover>,
    pub exhausted: bool,
    pub complete: bool,
}

/// Depth-first search over families of distinct connected subsets in
/// increasing pool order. Invalid families are pruned, which is sound since
/// every subfamily of a connected cover is one. Subtrees rooted at each
/// first member run in parallel, each with its own node budget, and are
/// merged in index order so the answer does not depend on scheduling.
pub(crate) fn search_families(
    g: &Graph,
    dims: &[usize],
    budget: &SearchBudget,
    stop_on_first: bool,
) -> Result<FamilySearch> {
    if !g.is_connected() {
        return Err(Error::input("cover search needs a connected graph"));
    }
    let (pool, pool_complete) = connected_subsets(g, budget.pool);
    let max_members = budget.members.min(pool.len()).min(MAX_MEMBERS);
    let run = |first: usize, size: usize, exact_size: bool| -> Subtree {
        let mut w = Walker {
            g,
            pool: &pool,
            dims,
            max_members: size,
            exact_size,
            nodes_left: budget.nodes,
            stop_on_first,
            out: Subtree::default(),
        };
        let faces = vec![(Simplex::vertex(0), pool[first].clone())];
        w.visit(&mut vec![first], &faces);
        w.out
    };
    let mut subtrees: Vec<Subtree> = Vec::new();
    let mut exhausted = false;
    if stop_on_first {
        // Family sizes in increasing order, so the witness is as small as
        // possible; within a size the first subtree in index order decides.
        let smallest = dims.iter().min().map_or(1, |d| d + 2).max(1);
        for size in smallest..=max_members {
            subtrees = (0..pool.len())
                .into_par_iter()
                .map(|i| run(i, size, true))
                .collect();
            exhausted |= subtrees.iter().any(|s| s.exhausted);
            if let Some(i) = subtrees.iter().position(|s| !s.found.is_empty()) {
                subtrees.drain(..i);
                subtrees.truncate(1);
                break;
            }
        }
    } else if max_members > 0 {
        subtrees = (0..pool.len())
            .into_par_iter()
            .map(|i| run(i, max_members, false))
            .collect();
    }
    let mut found = BTreeMap::new();
    for s in subtrees {
        exhausted |= s.exhausted;
        for (d, family) in s.found {
            found.entry(d).or_insert_with(|| {
                Cover::from_sets(g.clone(), family.iter().map(|&i| pool[i].clone()).collect())
                    .expect("pool members are nonempty")
            });
        }
    }
    for c in found.values() {
        if let Some(v) = validate_cover(c).violation {
            return Err(Error::internal(format!(
                "search produced an invalid cover at {:?}",
                v.face
            )));
        }
    }
    Ok(FamilySearch {
        found,
        exhausted,
        complete: pool_complete && budget.members >= pool.len(),
    })
}

/// Looks for a connected cover of `g` whose nerve has b̃_d ≠ 0.
pub fn search_cover_with_homology(
    g: &Graph,
    d: usize,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    let r = search_families(g, &[d], budget, true)?;
    Ok(match r.found.into_values().next() {
        Some(cover) => SearchOutcome::Found { cover },
        None if r.exhausted => SearchOutcome::BudgetExhausted,
        None => SearchOutcome::ProvenAbsent {
            complete: r.complete,
        },
    })
}
