use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{betti_from, Simplex, SimplicialComplex};
use crate::caps::Caps;
use crate::error::{Error, Result};

/// An induced subcomplex with nonvanishing homology in some dimension ≥ d.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayViolation {
    pub vertices: Simplex,
    pub dimension: usize,
}

/// Checks d-Leray: every induced subcomplex has b̃_i = 0 for all i ≥ d.
/// Returns the first violation in vertex-mask order, or `None`.
pub fn is_d_leray(k: &SimplicialComplex, d: usize, caps: &Caps) -> Result<Option<LerayViolation>> {
    let verts: Vec<usize> = k.vertices();
    Error::check_cap("complex vertices", verts.len(), caps.leray_vertices)?;
    // Only faces of dimension ≥ d − 1 influence b̃_i for i ≥ d, so induced
    // subcomplexes are formed from those faces alone.
    let relevant: Vec<Simplex> = k.faces().filter(|f| f.len() + 1 >= d).collect();
    if !relevant.iter().any(|f| f.len() > d) {
        return Ok(None);
    }
    let n = verts.len();
    let first = (1u64..1 << n).into_par_iter().find_first(|&mask| {
        let w = Simplex::from_bits(spread(mask, &verts));
        let faces = relevant.iter().copied().filter(|f| f.is_subset(w));
        let sub = SimplicialComplex::from_closed_partial(faces);
        betti_from(&sub, d).iter().any(|&b| b != 0)
    });
    Ok(first.map(|mask| {
        let w = Simplex::from_bits(spread(mask, &verts));
        let sub = k.induced(w);
        let dimension = d + betti_from(&sub, d).iter().position(|&b| b != 0).unwrap();
        LerayViolation {
            vertices: w,
            dimension,
        }
    }))
}

/// Maps bit i of `mask` to vertex `verts[i]`.
fn spread(mask: u64, verts: &[usize]) -> u64 {
    verts
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .fold(0u64, |m, (_, &v)| m | 1 << v)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Face-count form of the upper bound theorem for d-Leray complexes: if
/// f_d > C(n, d+1) − C(n−r, d+1) then f_{d+r} > 0. Returns whether the
/// implication holds on `k` (n is the number of vertices).
pub fn kalai_facecount_check(k: &SimplicialComplex, d: usize, r: usize) -> bool {
    let n = k.vertices().len();
    let bound = binomial(n, d + 1) - binomial(n.saturating_sub(r), d + 1);
    let fd = k.f(d) as u128;
    fd <= bound || k.f(d + r) > 0
}

impl SimplicialComplex {
    /// Complex built from a family closed under taking faces of dimension
    /// at least some threshold; lower faces are not required. Homology is
    /// then only meaningful above that threshold.
    pub(crate) fn from_closed_partial(faces: impl Iterator<Item = Simplex>) -> SimplicialComplex {
        let mut all: std::collections::BTreeSet<Simplex> = faces.collect();
        all.insert(Simplex::EMPTY);
        SimplicialComplex::from_set_unchecked(all)
    }
}
