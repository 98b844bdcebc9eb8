//! Exact minor testing with branch-set certificates.
//!
//! The search works on a quotient of the host graph. Every node of the
//! quotient is a connected set of host vertices; a node is *frozen* once it
//! has been committed as a whole branch set. At each step the unfrozen node
//! of least degree is either deleted, frozen, or contracted into an unfrozen
//! neighbour. Any model of the pattern can be steered through these moves,
//! so the search is complete. Failed states are memoized.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Graph, Label};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// A model of `pattern` in a host graph: `branch_sets[i]` is the branch set
/// of the pattern vertex with index `i` (host labels, sorted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub pattern: Graph,
    pub branch_sets: Vec<Vec<Label>>,
}

impl MinorCertificate {
    /// The model of `g` in itself with singleton branch sets.
    pub fn identity(g: &Graph) -> MinorCertificate {
        MinorCertificate {
            pattern: g.clone(),
            branch_sets: g.labels().iter().map(|&l| vec![l]).collect(),
        }
    }
}

/// Checks a certificate against a host graph without trusting the search
/// that produced it.
pub fn verify_certificate(g: &Graph, cert: &MinorCertificate) -> std::result::Result<(), String> {
    let h = &cert.pattern;
    if cert.branch_sets.len() != h.order() {
        return Err(format!(
            "{} branch sets for a pattern on {} vertices",
            cert.branch_sets.len(),
            h.order()
        ));
    }
    let mut used = g.empty_set();
    let mut sets = Vec::with_capacity(h.order());
    for (i, bs) in cert.branch_sets.iter().enumerate() {
        if bs.is_empty() {
            return Err(format!("branch set {i} is empty"));
        }
        let set = g
            .set_from_labels(bs.iter().copied())
            .map_err(|e| format!("branch set {i}: {e}"))?;
        if set.count_ones(..) != bs.len() {
            return Err(format!("branch set {i} repeats a vertex"));
        }
        if !used.is_disjoint(&set) {
            return Err(format!("branch set {i} overlaps an earlier one"));
        }
        if !g.is_connected_within(&set) {
            return Err(format!("branch set {i} is not connected"));
        }
        used.union_with(&set);
        sets.push(set);
    }
    for (a, b) in h.edge_indices() {
        let touches = sets[a]
            .ones()
            .any(|u| !g.neighbors(u).is_disjoint(&sets[b]));
        if !touches {
            return Err(format!(
                "no edge between the branch sets of pattern vertices {} and {}",
                h.label(a),
                h.label(b)
            ));
        }
    }
    Ok(())
}

/// Result of a Hadwiger number computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hadwiger {
    pub number: usize,
    /// A `K_number` model.
    pub certificate: MinorCertificate,
}

/// Searches for `h` as a minor of `g`, subject to the caps in `caps`.
pub fn has_minor(g: &Graph, h: &Graph, caps: &Caps) -> Result<Option<MinorCertificate>> {
    Error::check_cap("pattern vertices", h.order(), caps.minor_pattern_vertices)?;
    Error::check_cap("host vertices", g.order(), caps.minor_graph_vertices)?;
    Ok(search(g, h))
}

/// The largest `s` with `K_s ≺ g`, with a model. Only the host cap applies:
/// the pattern size is bounded by the host.
pub fn hadwiger_number(g: &Graph, caps: &Caps) -> Result<Hadwiger> {
    Error::check_cap("host vertices", g.order(), caps.minor_graph_vertices)?;
    let clique = max_clique(g);
    let mut best = MinorCertificate {
        pattern: complete(clique.len()),
        branch_sets: clique.iter().map(|&i| vec![g.label(i)]).collect(),
    };
    let m = g.size();
    for k in clique.len() + 1..=g.order() {
        if k * (k - 1) / 2 > m {
            break;
        }
        match search(g, &complete(k)) {
            Some(cert) => best = cert,
            None => break,
        }
    }
    Ok(Hadwiger {
        number: best.pattern.order(),
        certificate: best,
    })
}

fn complete(k: usize) -> Graph {
    Graph::from_index_edges(k, (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))))
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Indices of a maximum clique (lexicographically first among maximum ones).
fn max_clique(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let adj: Vec<u64> = (0..n)
        .map(|i| g.neighbors(i).ones().fold(0u64, |m, j| m | 1 << j))
        .collect();
    fn grow(adj: &[u64], cur: u64, cand: u64, best: &mut u64) {
        if cur.count_ones() + cand.count_ones() <= best.count_ones() {
            return;
        }
        if cand == 0 {
            *best = cur;
            return;
        }
        for v in bits(cand) {
            let later = cand & !((1u64 << (v + 1)) - 1);
            grow(adj, cur | 1 << v, later & adj[v], best);
            if cur.count_ones() + 1 + (later.count_ones()) <= best.count_ones() {
                break;
            }
        }
    }
    let mut best = 0u64;
    if n > 0 {
        grow(&adj, 0, (1u64 << n) - 1, &mut best);
    }
    bits(best).collect()
}

struct Pattern {
    k: usize,
    adj: Vec<u64>,
    edges: usize,
    min_degree: usize,
    is_clique: bool,
    /// Pattern vertices ordered for backtracking embedding (most constrained first).
    order: Vec<usize>,
}

impl Pattern {
    fn new(h: &Graph) -> Pattern {
        let k = h.order();
        let adj: Vec<u64> = (0..k)
            .map(|i| h.neighbors(i).ones().fold(0u64, |m, j| m | 1 << j))
            .collect();
        let edges = h.size();
        let min_degree = (0..k).map(|i| h.degree(i)).min().unwrap_or(0);
        // Greedy order: start at max degree, then repeatedly take the vertex
        // with most already-placed neighbours.
        let mut order = Vec::with_capacity(k);
        let mut placed = 0u64;
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| placed & 1 << v == 0)
                .max_by_key(|&v| {
                    (
                        (adj[v] & placed).count_ones(),
                        adj[v].count_ones(),
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            placed |= 1 << next;
            order.push(next);
        }
        Pattern {
            k,
            adj,
            edges,
            min_degree,
            is_clique: edges == k * k.saturating_sub(1) / 2,
            order,
        }
    }
}

#[derive(Clone)]
struct Quotient {
    /// Host-vertex sets of the nodes.
    sets: Vec<u64>,
    frozen: Vec<bool>,
}

struct Searcher<'a> {
    host_adj: Vec<u64>,
    pat: &'a Pattern,
    failed: HashSet<Vec<u64>>,
}

const FROZEN_BIT: u64 = 1 << 63;

impl Searcher<'_> {
    fn node_adjacency(&self, q: &Quotient) -> Vec<u64> {
        let nb: Vec<u64> = q
            .sets
            .iter()
            .map(|&s| bits(s).fold(0u64, |m, v| m | self.host_adj[v]) & !s)
            .collect();
        (0..q.sets.len())
            .map(|i| {
                (0..q.sets.len())
                    .filter(|&j| j != i && nb[i] & q.sets[j] != 0)
                    .fold(0u64, |m, j| m | 1 << j)
            })
            .collect()
    }

    fn key(q: &Quotient) -> Vec<u64> {
        let mut key: Vec<u64> = q
            .sets
            .iter()
            .zip(&q.frozen)
            .map(|(&s, &f)| if f { s | FROZEN_BIT } else { s })
            .collect();
        key.sort_unstable();
        key
    }

    /// Embeds the pattern as a subgraph of the quotient; returns node indices
    /// per pattern vertex.
    fn embed(&self, adj: &[u64], allowed: u64) -> Option<Vec<usize>> {
        let k = self.pat.k;
        let mut image = vec![usize::MAX; k];
        fn go(
            s: &Searcher<'_>,
            adj: &[u64],
            allowed: u64,
            depth: usize,
            used: u64,
            image: &mut Vec<usize>,
        ) -> bool {
            let pat = s.pat;
            if depth == pat.k {
                return true;
            }
            let p = pat.order[depth];
            let mut cand = allowed & !used;
            for &prev in &pat.order[..depth] {
                if pat.adj[p] & 1 << prev != 0 {
                    cand &= adj[image[prev]];
                }
            }
            let need = pat.adj[p].count_ones();
            for c in bits(cand) {
                if adj[c].count_ones() < need {
                    continue;
                }
                image[p] = c;
                if go(s, adj, allowed, depth + 1, used | 1 << c, image) {
                    return true;
                }
            }
            image[p] = usize::MAX;
            false
        }
        if go(self, adj, allowed, 0, 0, &mut image) {
            Some(image)
        } else {
            None
        }
    }

    fn contract(q: &Quotient, from: usize, into: usize) -> Quotient {
        let mut r = q.clone();
        r.sets[into] |= r.sets[from];
        r.sets.remove(from);
        r.frozen.remove(from);
        r
    }

    fn delete(q: &Quotient, v: usize) -> Quotient {
        let mut r = q.clone();
        r.sets.remove(v);
        r.frozen.remove(v);
        r
    }

    /// Applies the degree-based reductions until none fires.
    fn reduce(&self, mut q: Quotient) -> Quotient {
        let d = self.pat.min_degree;
        'outer: loop {
            let adj = self.node_adjacency(&q);
            for v in 0..q.sets.len() {
                if q.frozen[v] {
                    continue;
                }
                let deg = adj[v].count_ones() as usize;
                if (deg == 0 && d >= 1) || (deg == 1 && d >= 2) {
                    q = Self::delete(&q, v);
                    continue 'outer;
                }
                if deg == 2 && d >= 3 {
                    let nbrs: Vec<usize> = bits(adj[v]).collect();
                    let into = nbrs
                        .iter()
                        .copied()
                        .find(|&u| !q.frozen[u])
                        .unwrap_or(nbrs[0]);
                    q = Self::contract(&q, v, into);
                    continue 'outer;
                }
            }
            return q;
        }
    }

    fn run(&mut self, q: Quotient) -> Option<Quotient> {
        let q = self.reduce(q);
        let pat = self.pat;
        let n = q.sets.len();
        if n < pat.k {
            return None;
        }
        let adj = self.node_adjacency(&q);
        let edges: usize = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
        if edges < pat.edges {
            return None;
        }
        let frozen_mask = (0..n)
            .filter(|&i| q.frozen[i])
            .fold(0u64, |m, i| m | 1 << i);
        let fcount = frozen_mask.count_ones() as usize;
        if fcount > pat.k {
            return None;
        }
        for f in bits(frozen_mask) {
            if (adj[f].count_ones() as usize) < pat.min_degree {
                return None;
            }
        }
        if pat.is_clique {
            for f in bits(frozen_mask) {
                if frozen_mask & !(1 << f) & !adj[f] != 0 {
                    return None;
                }
                if ((adj[f] & !frozen_mask).count_ones() as usize) < pat.k - fcount {
                    return None;
                }
            }
        }
        if self.embed(&adj, (1u64 << n) - 1).is_some() {
            return Some(q);
        }
        if fcount == pat.k {
            return None;
        }
        let key = Self::key(&q);
        if self.failed.contains(&key) {
            return None;
        }
        let v = (0..n)
            .filter(|&i| !q.frozen[i])
            .min_by_key(|&i| (adj[i].count_ones(), q.sets[i].trailing_zeros()))
            .expect("an unfrozen node exists when fewer than k are frozen and no embedding exists");
        let deg = adj[v].count_ones() as usize;
        if deg >= pat.min_degree {
            let mut r = q.clone();
            r.frozen[v] = true;
            if let Some(found) = self.run(r) {
                return Some(found);
            }
        }
        for u in bits(adj[v]) {
            if !q.frozen[u] {
                if let Some(found) = self.run(Self::contract(&q, v, u)) {
                    return Some(found);
                }
            }
        }
        if let Some(found) = self.run(Self::delete(&q, v)) {
            return Some(found);
        }
        self.failed.insert(key);
        None
    }
}

fn search(g: &Graph, h: &Graph) -> Option<MinorCertificate> {
    assert!(g.order() < 63, "host too large for the bitmask search");
    let pat = Pattern::new(h);
    if pat.k == 0 {
        return Some(MinorCertificate {
            pattern: h.clone(),
            branch_sets: Vec::new(),
        });
    }
    let host_adj: Vec<u64> = (0..g.order())
        .map(|i| g.neighbors(i).ones().fold(0u64, |m, j| m | 1 << j))
        .collect();
    let mut s = Searcher {
        host_adj,
        pat: &pat,
        failed: HashSet::new(),
    };
    let start = Quotient {
        sets: (0..g.order()).map(|i| 1u64 << i).collect(),
        frozen: vec![false; g.order()],
    };
    let q = s.run(start)?;
    let adj = s.node_adjacency(&q);
    let image = s
        .embed(&adj, (1u64 << q.sets.len()) - 1)
        .expect("search returned a state with an embedding");
    let cert = MinorCertificate {
        pattern: h.clone(),
        branch_sets: image
            .iter()
            .map(|&node| bits(q.sets[node]).map(|v| g.label(v)).collect())
            .collect(),
    };
    debug_assert_eq!(verify_certificate(g, &cert), Ok(()));
    Some(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};
    use proptest::prelude::*;

    /// Exhaustive reference: tries every map from host vertices to pattern
    /// vertices or "unused". Only for tiny inputs.
    fn brute_force_has_minor(g: &Graph, h: &Graph) -> bool {
        let n = g.order();
        let k = h.order();
        assert!(n <= 10, "brute force is for tiny hosts");
        if k == 0 {
            return true;
        }
        let adj: Vec<u64> = (0..n)
            .map(|i| g.neighbors(i).ones().fold(0u64, |m, j| m | 1 << j))
            .collect();
        let connected = |set: u64| {
            if set == 0 {
                return false;
            }
            let mut seen = set & set.wrapping_neg();
            loop {
                let mut grow = seen;
                for v in bits(seen) {
                    grow |= adj[v] & set;
                }
                if grow == seen {
                    return seen == set;
                }
                seen = grow;
            }
        };
        let hedges = h.edge_indices();
        let mut assign = vec![0usize; n];
        loop {
            let mut sets = vec![0u64; k];
            for (v, &a) in assign.iter().enumerate() {
                if a < k {
                    sets[a] |= 1 << v;
                }
            }
            if sets.iter().all(|&s| connected(s))
                && hedges
                    .iter()
                    .all(|&(a, b)| bits(sets[a]).any(|u| adj[u] & sets[b] != 0))
            {
                return true;
            }
            // Next assignment in base k+1.
            let mut pos = 0;
            loop {
                if pos == n {
                    return false;
                }
                assign[pos] += 1;
                if assign[pos] <= k {
                    break;
                }
                assign[pos] = 0;
                pos += 1;
            }
        }
    }

    fn caps() -> Caps {
        Caps::default()
    }

    fn k(n: usize) -> Graph {
        named_graph(&NamedGraph::Complete(n)).unwrap()
    }

    fn k33() -> Graph {
        named_graph(&NamedGraph::Multipartite(vec![3, 3])).unwrap()
    }

    #[test]
    fn wagner_has_k4_but_not_k5() {
        let w = named_graph(&NamedGraph::Wagner).unwrap();
        let cert = has_minor(&w, &k(4), &caps()).unwrap().unwrap();
        assert_eq!(verify_certificate(&w, &cert), Ok(()));
        assert!(has_minor(&w, &k(5), &caps()).unwrap().is_none());
        assert!(has_minor(&w, &k33(), &caps()).unwrap().is_some());
    }

    #[test]
    fn k5_in_itself_uses_singletons() {
        let cert = has_minor(&k(5), &k(5), &caps()).unwrap().unwrap();
        assert!(cert.branch_sets.iter().all(|b| b.len() == 1));
        assert_eq!(verify_certificate(&k(5), &cert), Ok(()));
    }

    #[test]
    fn hadwiger_examples() {
        for n in 1..=7 {
            assert_eq!(hadwiger_number(&k(n), &caps()).unwrap().number, n);
        }
        let w = named_graph(&NamedGraph::Wagner).unwrap();
        let hw = hadwiger_number(&w, &caps()).unwrap();
        assert_eq!(hw.number, 4);
        assert_eq!(verify_certificate(&w, &hw.certificate), Ok(()));
        let oct = named_graph(&NamedGraph::Multipartite(vec![2, 2, 2])).unwrap();
        assert_eq!(hadwiger_number(&oct, &caps()).unwrap().number, 4);
        assert_eq!(hadwiger_number(&Graph::empty(), &caps()).unwrap().number, 0);
        let petersen = Graph::from_index_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        );
        let hp = hadwiger_number(&petersen, &caps()).unwrap();
        assert_eq!(hp.number, 5);
        assert_eq!(verify_certificate(&petersen, &hp.certificate), Ok(()));
    }

    #[test]
    fn caps_are_enforced() {
        let big = named_graph(&NamedGraph::Cycle(20)).unwrap();
        assert!(matches!(
            has_minor(&big, &k(3), &caps()),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            has_minor(&k(8), &k(7), &caps()),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            hadwiger_number(&big, &caps()),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn checker_rejects_bad_models() {
        let c4 = named_graph(&NamedGraph::Cycle(4)).unwrap();
        let bad = MinorCertificate {
            pattern: k(2),
            branch_sets: vec![vec![0, 2], vec![1]],
        };
        assert!(verify_certificate(&c4, &bad)
            .unwrap_err()
            .contains("not connected"));
        let overlap = MinorCertificate {
            pattern: k(2),
            branch_sets: vec![vec![0, 1], vec![1]],
        };
        assert!(verify_certificate(&c4, &overlap).is_err());
        let no_edge = MinorCertificate {
            pattern: k(2),
            branch_sets: vec![vec![0], vec![2]],
        };
        assert!(verify_certificate(&c4, &no_edge).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut t = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[t] {
                            edges.push((i, j));
                        }
                        t += 1;
                    }
                }
                Graph::from_index_edges(n, edges)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn agrees_with_brute_force(g in arb_graph(7), h in arb_graph(4)) {
            let found = has_minor(&g, &h, &caps()).unwrap();
            if let Some(cert) = &found {
                prop_assert_eq!(verify_certificate(&g, cert), Ok(()));
            }
            prop_assert_eq!(found.is_some(), brute_force_has_minor(&g, &h));
        }
    }
}
