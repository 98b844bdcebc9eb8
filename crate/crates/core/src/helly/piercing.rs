use serde::{Deserialize, Serialize};

use super::membership_masks;
use crate::caps::Caps;
use crate::covers::Cover;
use crate::error::{Error, Result};
use crate::graph::Label;

/// A smallest set of ambient vertices meeting every member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingSolution {
    pub vertices: Vec<Label>,
    /// For each member, the chosen vertex it contains.
    pub assignment: Vec<Label>,
}

struct Solver<'a> {
    /// Candidate vertices (index, member mask), undominated only.
    cands: &'a [(usize, u64)],
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl Solver<'_> {
    /// Members pairwise disjoint need distinct vertices: pack greedily.
    fn lower_bound(&self, uncovered: u64) -> usize {
        let mut rest = uncovered;
        let mut count = 0;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            count += 1;
            // Drop every member sharing a vertex with member i.
            let mut touching = 0u64;
            for &(_, m) in self.cands {
                if m >> i & 1 == 1 {
                    touching |= m;
                }
            }
            rest &= !touching;
        }
        count
    }

    fn search(&mut self, uncovered: u64) {
        if uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + self.lower_bound(uncovered) >= self.best.len() {
            return;
        }
        // Branch on the uncovered member with the fewest candidates.
        let member = (0..64)
            .filter(|&i| uncovered >> i & 1 == 1)
            .min_by_key(|&i| self.cands.iter().filter(|c| c.1 >> i & 1 == 1).count())
            .unwrap();
        let mut options: Vec<(usize, u64)> = self
            .cands
            .iter()
            .copied()
            .filter(|c| c.1 >> member & 1 == 1)
            .collect();
        options.sort_by_key(|&(v, m)| (std::cmp::Reverse((m & uncovered).count_ones()), v));
        for (v, m) in options {
            self.chosen.push(v);
            self.search(uncovered & !m);
            self.chosen.pop();
        }
    }
}

/// Exact minimum hitting set of the members by ambient vertices, by
/// branch and bound with a greedy start and a disjoint-packing bound.
pub fn piercing_number(c: &Cover, caps: &Caps) -> Result<PiercingSolution> {
    Error::check_cap("cover members", c.len(), caps.pierce_members.min(64))?;
    Error::check_cap(
        "ambient vertices",
        c.ambient().order(),
        caps.pierce_vertices,
    )?;
    let masks = membership_masks(c);
    let all: u64 = if c.len() == 64 {
        u64::MAX
    } else {
        (1u64 << c.len()) - 1
    };
    // Keep a vertex only if no other vertex lies in a strict superset of its
    // members (the smaller index wins on ties).
    let cands: Vec<(usize, u64)> = masks
        .iter()
        .enumerate()
        .filter(|&(v, &m)| {
            m != 0
                && !masks
                    .iter()
                    .enumerate()
                    .any(|(w, &o)| w != v && o & m == m && (o != m || w < v))
        })
        .map(|(v, &m)| (v, m))
        .collect();
    // Greedy: repeatedly take the vertex covering most uncovered members.
    let mut greedy = Vec::new();
    let mut left = all;
    while left != 0 {
        let &(v, m) = cands
            .iter()
            .max_by_key(|&&(v, m)| ((m & left).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        greedy.push(v);
        left &= !m;
    }
    let mut solver = Solver {
        cands: &cands,
        best: greedy,
        chosen: Vec::new(),
    };
    solver.search(all);
    let mut best = solver.best;
    best.sort_unstable();
    let assignment = (0..c.len())
        .map(|i| {
            let v = *best.iter().find(|&&v| masks[v] >> i & 1 == 1).unwrap();
            c.ambient().label(v)
        })
        .collect();
    Ok(PiercingSolution {
        vertices: best.iter().map(|&v| c.ambient().label(v)).collect(),
        assignment,
    })
}
