//! The 3-chain T_(τ,≺) of a linearly ordered 2-cycle, whose boundary is τ.
//!
//! For τ₁ ≺ … ≺ τ_m, T sums η = (τ_i ∩ τ_k) ∪ (τ_j ∩ τ_l) over all
//! i < j < k < l for which η has four vertices. Two distinct triangles meet
//! in at most an edge, so η is nonzero exactly when (τ_i, τ_k) and
//! (τ_j, τ_l) are two interleaved pairs sharing disjoint edges. The crossing
//! variant enumerates only such pairs.

use std::collections::HashSet;

use super::{Chain, Simplex};
use crate::error::{Error, Result};

fn validate(tau: &Chain, order: &[Simplex]) -> Result<()> {
    if tau.dim() != 2 && !tau.is_zero() {
        return Err(Error::input(format!(
            "expected a 2-chain, got dimension {}",
            tau.dim()
        )));
    }
    if !tau.is_cycle() {
        return Err(Error::input("τ is not a cycle"));
    }
    let mut seen = HashSet::new();
    for s in order {
        if !tau.contains(*s) {
            return Err(Error::input(format!("ordered simplex {s:?} is not in τ")));
        }
        if !seen.insert(*s) {
            return Err(Error::input(format!("simplex {s:?} is listed twice")));
        }
    }
    if seen.len() != tau.len() {
        return Err(Error::input("the ordering omits simplices of τ"));
    }
    Ok(())
}

/// T_(τ,≺) straight from the definition, in O(m⁴).
pub fn tchain(tau: &Chain, order: &[Simplex]) -> Result<Chain> {
    validate(tau, order)?;
    let m = order.len();
    let mut t = Chain::zero(3);
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let ik = order[i].intersection(order[k]);
                if ik.len() != 2 {
                    continue;
                }
                for l in k + 1..m {
                    let eta = ik.union(order[j].intersection(order[l]));
                    if eta.len() == 4 {
                        t.toggle(eta);
                    }
                }
            }
        }
    }
    Ok(t)
}

/// T_(τ,≺) from crossing pairs of edge-sharing triangles.
pub fn tchain_crossing(tau: &Chain, order: &[Simplex]) -> Result<Chain> {
    validate(tau, order)?;
    let m = order.len();
    // Pairs (a, c), a < c, whose triangles share an edge.
    let mut chords: Vec<(usize, usize, Simplex)> = Vec::new();
    for a in 0..m {
        for c in a + 1..m {
            let e = order[a].intersection(order[c]);
            if e.len() == 2 {
                chords.push((a, c, e));
            }
        }
    }
    let mut t = Chain::zero(3);
    for (x, &(a, c, e)) in chords.iter().enumerate() {
        for &(b, d, f) in &chords[x + 1..] {
            // Chords sorted by first endpoint: a <= b. Need a < b < c < d.
            if a < b && b < c && c < d && e.intersection(f).is_empty() {
                t.toggle(e.union(f));
            }
        }
    }
    Ok(t)
}
