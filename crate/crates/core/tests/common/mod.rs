//! Independent oracles: slow, direct definitions used to check the library.
#![allow(dead_code)]

use concover::covers::Cover;
use concover::graph::{Graph, MinorCertificate};
use concover::simplicial::{Simplex, SimplicialComplex};

/// Adjacency as bit masks, for graphs with at most 64 vertices.
pub fn masks(g: &Graph) -> Vec<u64> {
    (0..g.order())
        .map(|v| g.neighbors(v).ones().fold(0u64, |m, w| m | 1 << w))
        .collect()
}

pub fn connected_mask(adj: &[u64], set: u64) -> bool {
    if set == 0 {
        return false;
    }
    let mut reach = set & set.wrapping_neg();
    loop {
        let mut next = reach;
        for v in 0..adj.len() {
            if reach >> v & 1 == 1 {
                next |= adj[v] & set;
            }
        }
        if next == reach {
            return reach == set;
        }
        reach = next;
    }
}

/// Whether `h` is a minor of `g`, by trying every assignment of the
/// vertices of `g` to a branch set of `h` or to nothing.
pub fn brute_force_has_minor(g: &Graph, h: &Graph) -> bool {
    let n = g.order();
    let k = h.order();
    if k == 0 {
        return true;
    }
    if k > n {
        return false;
    }
    let adj = masks(g);
    let pattern: Vec<(usize, usize)> = h.edge_indices();
    let mut assign = vec![0; n];
    loop {
        let mut branch = vec![0u64; k];
        for (v, &a) in assign.iter().enumerate() {
            if a < k {
                branch[a] |= 1 << v;
            }
        }
        if branch.iter().all(|&b| connected_mask(&adj, b))
            && pattern
                .iter()
                .all(|&(i, j)| (0..n).any(|v| branch[i] >> v & 1 == 1 && adj[v] & branch[j] != 0))
        {
            return true;
        }
        // Next assignment, counting in base k + 1 (digit k = unused).
        let mut pos = 0;
        loop {
            if pos == n {
                return false;
            }
            assign[pos] += 1;
            if assign[pos] > k {
                assign[pos] = 0;
                pos += 1;
            } else {
                break;
            }
        }
    }
}

/// Checks a minor model directly from the definition.
pub fn certificate_holds(g: &Graph, cert: &MinorCertificate) -> bool {
    let n = g.order();
    let mut owner = vec![usize::MAX; n];
    for (i, b) in cert.branch_sets.iter().enumerate() {
        for &l in b {
            match g.index_of(l) {
                Some(v) if owner[v] == usize::MAX => owner[v] = i,
                _ => return false,
            }
        }
    }
    let k = cert.pattern.order();
    if cert.branch_sets.len() != k {
        return false;
    }
    // Each branch set must be nonempty and connected: search from its first
    // vertex inside the set.
    for i in 0..k {
        let Some(start) = (0..n).find(|&v| owner[v] == i) else {
            return false;
        };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v).ones() {
                if owner[w] == i && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if (0..n).any(|v| owner[v] == i && !seen[v]) {
            return false;
        }
    }
    cert.pattern
        .edge_indices()
        .into_iter()
        .all(|(i, j)| (0..n).any(|v| owner[v] == i && g.neighbors(v).ones().any(|w| owner[w] == j)))
}

/// Minimum number of vertices meeting every member, trying vertex sets in
/// order of size.
pub fn brute_force_piercing(c: &Cover) -> usize {
    let n = c.ambient().order();
    assert!(n <= 20);
    let members: Vec<u64> = c
        .members()
        .iter()
        .map(|m| m.ones().fold(0u64, |a, v| a | 1 << v))
        .collect();
    (0..=n)
        .find(|&k| {
            (0u64..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .any(|s| members.iter().all(|&m| m & s != 0))
        })
        .unwrap()
}

/// Whether members `family` (as a bit mask of indices) share a vertex.
pub fn family_intersects(c: &Cover, family: u64) -> bool {
    let mut common = c.ambient().full_set();
    for (i, m) in c.members().iter().enumerate() {
        if family >> i & 1 == 1 {
            common.intersect_with(m);
        }
    }
    !common.is_clear()
}

/// Rank over GF(2) of a dense 0/1 matrix, by row reduction.
pub fn dense_rank(mut rows: Vec<Vec<u8>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] == 1) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] == 1 {
                for c in col..cols {
                    rows[r][c] ^= rows[rank][c];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers b̃_0..=b̃_top from dense boundary matrices, with
/// the augmentation as the boundary of vertices.
pub fn dense_betti(k: &SimplicialComplex) -> Vec<usize> {
    let faces: Vec<Simplex> = k.faces().filter(|f| !f.is_empty()).collect();
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let by_size =
        |s: usize| -> Vec<Simplex> { faces.iter().copied().filter(|f| f.len() == s).collect() };
    // rank of ∂ from size s to size s − 1 (size 1 maps onto the empty face).
    let rank = |s: usize| -> usize {
        if s == 0 || s > top {
            return 0;
        }
        let cols = by_size(s);
        let rows: Vec<Simplex> = if s == 1 {
            vec![Simplex::EMPTY]
        } else {
            by_size(s - 1)
        };
        let matrix: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| cols.iter().map(|c| u8::from(r.is_subset(*c))).collect())
            .collect();
        dense_rank(matrix)
    };
    (1..=top.max(1))
        .map(|s| by_size(s).len() - rank(s) - rank(s + 1))
        .collect()
}
