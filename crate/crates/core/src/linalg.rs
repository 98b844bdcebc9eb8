//! Linear algebra over GF(2) on bitset vectors.
//!
//! Vectors are [`FixedBitSet`]s; elimination pivots on the lowest set bit.

use fixedbitset::FixedBitSet;

/// Rank of a family of vectors.
pub fn rank(vectors: impl IntoIterator<Item = FixedBitSet>) -> usize {
    let mut pivots: Vec<Option<FixedBitSet>> = Vec::new();
    let mut r = 0;
    for mut v in vectors {
        while let Some(p) = v.ones().next() {
            if p >= pivots.len() {
                pivots.resize(p + 1, None);
            }
            match &pivots[p] {
                Some(row) => v.symmetric_difference_with(row),
                None => {
                    pivots[p] = Some(v);
                    r += 1;
                    break;
                }
            }
        }
    }
    r
}

/// An incrementally built echelon basis that remembers, for every reduced
/// vector, which inserted generators it is the sum of.
#[derive(Clone, Debug, Default)]
pub struct Basis {
    /// Indexed by pivot bit: (reduced vector, combination of generators).
    pivots: Vec<Option<(FixedBitSet, FixedBitSet)>>,
    generators: usize,
}

impl Basis {
    pub fn new() -> Basis {
        Basis::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    /// Number of generators inserted so far.
    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Inserts the next generator. If it depends on earlier generators,
    /// returns the dependency: a set of generator indices (including the new
    /// one) whose vectors sum to zero.
    pub fn insert(&mut self, v: FixedBitSet) -> Option<FixedBitSet> {
        let id = self.generators;
        self.generators += 1;
        let mut combo = FixedBitSet::with_capacity(id + 1);
        combo.insert(id);
        let (residual, mut combo) = self.reduce_with(v, combo);
        match residual.ones().next() {
            Some(p) => {
                if p >= self.pivots.len() {
                    self.pivots.resize(p + 1, None);
                }
                self.pivots[p] = Some((residual, combo));
                None
            }
            None => {
                combo.grow(self.generators);
                Some(combo)
            }
        }
    }

    fn reduce_with(
        &self,
        mut v: FixedBitSet,
        mut combo: FixedBitSet,
    ) -> (FixedBitSet, FixedBitSet) {
        let mut from = 0;
        loop {
            let next = v.ones().find(|&b| b >= from);
            let Some(p) = next else {
                return (v, combo);
            };
            match self.pivots.get(p).and_then(|x| x.as_ref()) {
                Some((row, c)) => {
                    grow_to(&mut v, row.len());
                    v.symmetric_difference_with(row);
                    grow_to(&mut combo, c.len());
                    combo.symmetric_difference_with(c);
                }
                None => from = p + 1,
            }
        }
    }

    /// Expresses `target` as a sum of generators, if it lies in their span.
    pub fn solve(&self, target: &FixedBitSet) -> Option<FixedBitSet> {
        let (residual, mut combo) =
            self.reduce_with(target.clone(), FixedBitSet::with_capacity(self.generators));
        if residual.is_clear() {
            combo.grow(self.generators);
            Some(combo)
        } else {
            None
        }
    }

    /// Whether `target` lies in the span.
    pub fn contains(&self, target: &FixedBitSet) -> bool {
        self.solve(target).is_some()
    }
}

fn grow_to(v: &mut FixedBitSet, len: usize) {
    if v.len() < len {
        v.grow(len);
    }
}

/// A basis of the kernel of the linear map sending generator `i` to
/// `images[i]`; each kernel vector is a set of generator indices.
pub fn kernel(images: impl IntoIterator<Item = FixedBitSet>) -> Vec<FixedBitSet> {
    let mut basis = Basis::new();
    let mut out = Vec::new();
    for v in images {
        if let Some(dep) = basis.insert(v) {
            out.push(dep);
        }
    }
    let n = basis.generators();
    for k in &mut out {
        k.grow(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(len: usize, bits: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(len);
        for &b in bits {
            s.insert(b);
        }
        s
    }

    /// Rank by dense row reduction on boolean matrices.
    fn dense_rank(rows: &[Vec<bool>]) -> usize {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| m[i][c]) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && m[i][c] {
                    for j in 0..cols {
                        let x = m[r][j];
                        m[i][j] ^= x;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(Vec::new()), 0);
        assert_eq!(rank(vec![set(3, &[]), set(3, &[])]), 0);
        assert_eq!(
            rank(vec![set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 2])]),
            2
        );
        assert_eq!(rank(vec![set(3, &[0]), set(3, &[1]), set(3, &[2])]), 3);
    }

    #[test]
    fn solve_and_kernel() {
        let gens = vec![set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 2])];
        let mut b = Basis::new();
        assert!(b.insert(gens[0].clone()).is_none());
        assert!(b.insert(gens[1].clone()).is_none());
        let dep = b.insert(gens[2].clone()).unwrap();
        assert_eq!(dep.ones().collect::<Vec<_>>(), vec![0, 1, 2]);
        let x = b.solve(&set(3, &[0, 2])).unwrap();
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0, 1]);
        assert!(b.solve(&set(3, &[0])).is_none());
        assert_eq!(kernel(gens).len(), 1);
    }

    proptest! {
        #[test]
        fn rank_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 9), 0..12)) {
            let sets: Vec<FixedBitSet> = rows.iter().map(|r| {
                let bits: Vec<usize> = r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
                set(9, &bits)
            }).collect();
            prop_assert_eq!(rank(sets.clone()), dense_rank(&rows));
            let ker = kernel(sets.clone());
            prop_assert_eq!(ker.len(), rows.len() - dense_rank(&rows));
            for k in ker {
                let mut sum = FixedBitSet::with_capacity(9);
                for i in k.ones() {
                    sum.symmetric_difference_with(&sets[i]);
                }
                prop_assert!(sum.is_clear());
            }
        }

        #[test]
        fn solutions_reproduce_target(rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 7), 1..10), pick in any::<u16>()) {
            let sets: Vec<FixedBitSet> = rows.iter().map(|r| {
                let bits: Vec<usize> = r.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect();
                set(7, &bits)
            }).collect();
            let mut target = FixedBitSet::with_capacity(7);
            for (i, s) in sets.iter().enumerate() {
                if pick & (1 << (i % 16)) != 0 {
                    target.symmetric_difference_with(s);
                }
            }
            let mut b = Basis::new();
            for s in &sets {
                b.insert(s.clone());
            }
            let x = b.solve(&target).expect("target is in the span by construction");
            let mut sum = FixedBitSet::with_capacity(7);
            for i in x.ones() {
                sum.symmetric_difference_with(&sets[i]);
            }
            prop_assert_eq!(sum, target);
        }
    }
}
