use std::collections::BTreeSet;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use super::Simplex;
use crate::error::{Error, Result};

/// A Z₂ chain: a set of simplices of one dimension, summed.
///
/// The augmentation is not represented, so the boundary of a 0-chain is
/// zero.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Chain {
    dim: usize,
    simplices: BTreeSet<Simplex>,
}

impl Chain {
    pub fn zero(dim: usize) -> Chain {
        Chain {
            dim,
            simplices: BTreeSet::new(),
        }
    }

    /// Sums the given simplices (repeats cancel in pairs). All must have
    /// `dim + 1` vertices.
    pub fn new(dim: usize, simplices: impl IntoIterator<Item = Simplex>) -> Result<Chain> {
        let mut c = Chain::zero(dim);
        for s in simplices {
            if s.len() != dim + 1 {
                return Err(Error::input(format!(
                    "simplex {s:?} has {} vertices, expected {}",
                    s.len(),
                    dim + 1
                )));
            }
            c.toggle(s);
        }
        Ok(c)
    }

    /// Infers the dimension from the first simplex; an empty list is an
    /// error because the dimension would be unknown.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Result<Chain> {
        let v: Vec<Simplex> = simplices.into_iter().collect();
        let first = v
            .first()
            .ok_or_else(|| Error::input("cannot infer the dimension of an empty chain"))?;
        if first.is_empty() {
            return Err(Error::input(
                "chains of the empty simplex are not supported",
            ));
        }
        Chain::new(first.len() - 1, v)
    }

    pub(crate) fn toggle(&mut self, s: Simplex) {
        debug_assert_eq!(s.len(), self.dim + 1);
        if !self.simplices.remove(&s) {
            self.simplices.insert(s);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.simplices.contains(&s)
    }

    /// Simplices in sorted order.
    pub fn simplices(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.simplices.iter().copied()
    }

    /// Union of the vertices of all simplices.
    pub fn support(&self) -> Simplex {
        self.simplices
            .iter()
            .fold(Simplex::EMPTY, |a, s| a.union(*s))
    }

    pub fn boundary(&self) -> Chain {
        if self.dim == 0 {
            return Chain::zero(0);
        }
        let mut out = Chain::zero(self.dim - 1);
        for s in &self.simplices {
            for f in s.facets() {
                out.toggle(f);
            }
        }
        out
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary().is_zero()
    }

    /// Chain sum; dimensions must agree.
    pub fn sum(&self, other: &Chain) -> Result<Chain> {
        if self.dim != other.dim && !self.is_zero() && !other.is_zero() {
            return Err(Error::input(format!(
                "cannot add a {}-chain and a {}-chain",
                self.dim, other.dim
            )));
        }
        let dim = if self.is_zero() { other.dim } else { self.dim };
        Ok(Chain {
            dim,
            simplices: self
                .simplices
                .symmetric_difference(&other.simplices)
                .copied()
                .collect(),
        })
    }
}

impl Add for &Chain {
    type Output = Chain;

    /// Panics on a dimension mismatch between two nonzero chains.
    fn add(self, rhs: &Chain) -> Chain {
        self.sum(rhs).expect("chain dimensions differ")
    }
}

impl AddAssign<&Chain> for Chain {
    fn add_assign(&mut self, rhs: &Chain) {
        *self = &*self + rhs;
    }
}

/// The cone [x, α] = Σ (σ ∪ {x}). The apex must not occur in α.
pub fn cone_chain(x: usize, a: &Chain) -> Result<Chain> {
    if x >= super::MAX_VERTICES {
        return Err(Error::input(format!("apex {x} out of range")));
    }
    if let Some(s) = a.simplices().find(|s| s.contains(x)) {
        return Err(Error::input(format!("apex {x} already occurs in {s:?}")));
    }
    Ok(Chain {
        dim: a.dim + 1,
        simplices: a.simplices().map(|s| s.with(x)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[usize]) -> Simplex {
        Simplex::of(v)
    }

    fn chain(v: &[&[usize]]) -> Chain {
        Chain::from_simplices(v.iter().map(|x| s(x))).unwrap()
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(
            chain(&[&[1, 2, 3]]).boundary(),
            chain(&[&[1, 2], &[1, 3], &[2, 3]])
        );
        assert_eq!(chain(&[&[1, 2], &[2, 3]]).boundary(), chain(&[&[1], &[3]]));
        assert!(chain(&[&[4]]).boundary().is_zero());
    }

    #[test]
    fn cone_examples() {
        let a = chain(&[&[1, 2], &[2, 3]]);
        assert_eq!(cone_chain(0, &a).unwrap(), chain(&[&[0, 1, 2], &[0, 2, 3]]));
        assert!(cone_chain(0, &Chain::zero(1)).unwrap().is_zero());
        assert!(cone_chain(2, &a).is_err());
    }

    #[test]
    fn dimension_checks() {
        assert!(Chain::new(1, [s(&[1, 2, 3])]).is_err());
        assert!(chain(&[&[1, 2]]).sum(&chain(&[&[1, 2, 3]])).is_err());
        assert_eq!(
            Chain::new(1, [s(&[1, 2]), s(&[1, 2])]).unwrap(),
            Chain::zero(1)
        );
    }

    fn arb_chain(max_dim: usize, verts: usize) -> impl Strategy<Value = Chain> {
        (0..=max_dim).prop_flat_map(move |d| {
            proptest::collection::vec(
                proptest::sample::subsequence((0..verts).collect::<Vec<_>>(), d + 1),
                0..12,
            )
            .prop_map(move |faces| {
                Chain::new(d, faces.into_iter().map(|f| Simplex::of(&f))).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(600))]

        #[test]
        fn boundary_of_boundary_vanishes(c in arb_chain(4, 9)) {
            prop_assert!(c.boundary().boundary().is_zero());
        }

        #[test]
        fn cone_product_rule(c in arb_chain(3, 9).prop_filter("needs dim >= 1", |c| c.dim() >= 1)) {
            // Apex outside the vertex range of the chain.
            let x = 20;
            let lhs = cone_chain(x, &c).unwrap().boundary();
            let rhs = &c + &cone_chain(x, &c.boundary()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
