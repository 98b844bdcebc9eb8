use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, Basis};

/// Reduced Z₂ Betti numbers b̃₀, …, b̃_dim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub values: Vec<usize>,
}

impl BettiVector {
    /// b̃_i, zero beyond the stored range.
    pub fn get(&self, i: usize) -> usize {
        self.values.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&b| b == 0)
    }

    /// Largest i with b̃_i ≠ 0.
    pub fn top_nonzero(&self) -> Option<usize> {
        self.values.iter().rposition(|&b| b != 0)
    }
}

/// Faces grouped by vertex count, each group sorted.
fn faces_by_len(k: &SimplicialComplex, max_len: usize) -> Vec<Vec<Simplex>> {
    let mut out = vec![Vec::new(); max_len + 1];
    for f in k.faces() {
        if f.len() <= max_len {
            out[f.len()].push(f);
        }
    }
    out
}

fn index(faces: &[Simplex]) -> HashMap<Simplex, usize> {
    faces.iter().enumerate().map(|(i, &f)| (f, i)).collect()
}

fn boundary_vector(s: Simplex, lower: &HashMap<Simplex, usize>) -> FixedBitSet {
    let mut v = FixedBitSet::with_capacity(lower.len());
    for f in s.facets() {
        v.insert(lower[&f]);
    }
    v
}

/// Rank of ∂ from faces with `len` vertices to faces with `len − 1`.
fn boundary_rank(by_len: &[Vec<Simplex>], len: usize) -> usize {
    if len == 1 {
        // Augmentation onto the empty face.
        return usize::from(!by_len[1].is_empty());
    }
    if len >= by_len.len() || by_len[len].is_empty() {
        return 0;
    }
    let lower = index(&by_len[len - 1]);
    linalg::rank(by_len[len].iter().map(|&s| boundary_vector(s, &lower)))
}

/// Reduced Z₂ Betti numbers via boundary-matrix ranks.
pub fn betti(k: &SimplicialComplex) -> BettiVector {
    let top = (k.dim() + 1).max(0) as usize;
    BettiVector {
        values: betti_range(k, 0, top),
    }
}

/// b̃_i for i = d, d+1, …, dim (index 0 of the result is b̃_d). Only faces of
/// dimension ≥ d − 1 are touched, which makes high-dimensional checks cheap.
pub fn betti_from(k: &SimplicialComplex, d: usize) -> Vec<usize> {
    let top = (k.dim() + 1).max(0) as usize;
    betti_range(k, d, top)
}

fn betti_range(k: &SimplicialComplex, lo: usize, top_len: usize) -> Vec<usize> {
    if lo + 1 > top_len {
        return Vec::new();
    }
    let by_len = faces_by_len(k, top_len + 1);
    // Ranks of ∂ out of faces with len vertices, for len = lo+1 ..= top_len+1.
    let ranks: Vec<usize> = (lo + 1..=top_len + 1)
        .into_par_iter()
        .map(|len| boundary_rank(&by_len, len))
        .collect();
    (lo..top_len)
        .map(|i| {
            let n = by_len[i + 1].len();
            n - ranks[i - lo] - ranks[i - lo + 1]
        })
        .collect()
}

/// A chain β in K with ∂β = γ, if γ bounds in K.
pub fn bounding_chain(k: &SimplicialComplex, gamma: &Chain) -> Result<Option<Chain>> {
    let d = gamma.dim();
    if let Some(s) = gamma.simplices().find(|s| !k.contains(*s)) {
        return Err(Error::input(format!(
            "simplex {s:?} of the chain is not in the complex"
        )));
    }
    let by_len = faces_by_len(k, d + 2);
    let lower = index(&by_len[d + 1]);
    let upper = &by_len[d + 2];
    let mut basis = Basis::new();
    for &s in upper {
        basis.insert(boundary_vector(s, &lower));
    }
    let mut target = FixedBitSet::with_capacity(lower.len());
    for s in gamma.simplices() {
        target.insert(lower[&s]);
    }
    Ok(basis.solve(&target).map(|combo| {
        Chain::new(d + 1, combo.ones().map(|i| upper[i])).expect("faces have d+2 vertices")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> Simplex {
        Simplex::of(v)
    }

    #[test]
    fn spheres_and_points() {
        let s3 = SimplicialComplex::simplex_boundary(s(&[0, 1, 2, 3, 4]));
        assert_eq!(betti(&s3).values, vec![0, 0, 0, 1]);
        let point = SimplicialComplex::simplex(s(&[7]));
        assert_eq!(betti(&point).values, vec![0]);
        let empty = SimplicialComplex::empty();
        assert!(betti(&empty).values.is_empty());
        assert!(empty.is_empty());
    }

    #[test]
    fn six_triangle_sphere() {
        let k = SimplicialComplex::from_faces(
            [
                [1, 2, 3],
                [2, 4, 5],
                [3, 4, 5],
                [1, 3, 4],
                [2, 3, 5],
                [1, 2, 4],
            ]
            .map(|f| s(&f)),
        );
        assert_eq!(betti(&k).values, vec![0, 0, 1]);
    }

    #[test]
    fn disjoint_points_and_circle() {
        let pts = SimplicialComplex::from_faces([s(&[0]), s(&[1]), s(&[2])]);
        assert_eq!(betti(&pts).values, vec![2]);
        let circle = SimplicialComplex::simplex_boundary(s(&[0, 1, 2]));
        assert_eq!(betti(&circle).values, vec![0, 1]);
        assert_eq!(betti_from(&circle, 1), vec![1]);
        assert!(betti_from(&circle, 2).is_empty());
    }

    #[test]
    fn bounding_chains() {
        let tet = SimplicialComplex::simplex(s(&[0, 1, 2, 3]));
        let sphere = Chain::from_simplices(s(&[0, 1, 2, 3]).facets()).unwrap();
        let beta = bounding_chain(&tet, &sphere).unwrap().unwrap();
        assert_eq!(beta.boundary(), sphere);
        let hollow = SimplicialComplex::simplex_boundary(s(&[0, 1, 2, 3]));
        assert!(bounding_chain(&hollow, &sphere).unwrap().is_none());
        let foreign = Chain::from_simplices([s(&[5, 6, 7])]).unwrap();
        assert!(bounding_chain(&hollow, &foreign).is_err());
    }
}
