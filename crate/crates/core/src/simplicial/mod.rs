//! Abstract simplicial complexes and Z₂ chains.
//!
//! Vertices are small integers (`0..64`) and a simplex is the bitmask of its
//! vertices, so face arithmetic is a handful of word operations. A complex
//! stores its full face set, the empty face included.

mod chain;
mod critical;
mod homology;
mod leray;
mod tchain;

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use chain::{cone_chain, Chain};
pub use critical::{critical_normal_form, CriticalForm};
pub use homology::{betti, betti_from, bounding_chain, BettiVector};
pub use leray::{is_d_leray, kalai_facecount_check, LerayViolation};
pub use tchain::{tchain, tchain_crossing};

/// Largest vertex label a simplex can carry, plus one.
pub const MAX_VERTICES: usize = 64;

/// A finite set of vertices in `0..64`.
///
/// Simplices are ordered by cardinality first, then lexicographically by
/// their sorted vertex lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Simplex(u64);

impl Simplex {
    pub const EMPTY: Simplex = Simplex(0);

    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Result<Simplex> {
        let mut bits = 0u64;
        for v in vertices {
            if v >= MAX_VERTICES {
                return Err(Error::input(format!(
                    "simplex vertex {v} out of range (labels must be below {MAX_VERTICES})"
                )));
            }
            bits |= 1 << v;
        }
        Ok(Simplex(bits))
    }

    /// Panicking constructor for literals in code and tests.
    pub fn of(vertices: &[usize]) -> Simplex {
        Simplex::new(vertices.iter().copied()).expect("simplex literal out of range")
    }

    pub fn vertex(v: usize) -> Simplex {
        Simplex::of(&[v])
    }

    pub fn from_bits(bits: u64) -> Simplex {
        Simplex(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Number of vertices.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Dimension (`len − 1`); the empty simplex has dimension −1.
    pub fn dim(self) -> isize {
        self.len() as isize - 1
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & (1 << v) != 0
    }

    pub fn is_subset(self, other: Simplex) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Simplex) -> Simplex {
        Simplex(self.0 | other.0)
    }

    pub fn intersection(self, other: Simplex) -> Simplex {
        Simplex(self.0 & other.0)
    }

    pub fn with(self, v: usize) -> Simplex {
        Simplex(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Simplex {
        Simplex(self.0 & !(1 << v))
    }

    /// Sorted vertices.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
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

    /// Codimension-one faces.
    pub fn facets(self) -> impl Iterator<Item = Simplex> {
        let s = self;
        self.vertices().map(move |v| s.without(v))
    }

    /// All subsets, the empty one and `self` included.
    pub fn subsets(self) -> impl Iterator<Item = Simplex> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Simplex(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                std::cmp::Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.vertices())
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Simplex::new(v).map_err(serde::de::Error::custom)
    }
}

/// A downward-closed family of simplices, always containing the empty face.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    faces: BTreeSet<Simplex>,
}

impl Default for SimplicialComplex {
    fn default() -> Self {
        SimplicialComplex::empty()
    }
}

impl SimplicialComplex {
    /// The complex whose only face is ∅.
    pub fn empty() -> SimplicialComplex {
        SimplicialComplex {
            faces: BTreeSet::from([Simplex::EMPTY]),
        }
    }

    /// Downward closure of the given faces.
    pub fn from_faces(generators: impl IntoIterator<Item = Simplex>) -> SimplicialComplex {
        let mut faces = BTreeSet::from([Simplex::EMPTY]);
        for g in generators {
            if faces.contains(&g) {
                continue;
            }
            faces.extend(g.subsets());
        }
        SimplicialComplex { faces }
    }

    /// The full simplex on `vertex`.
    pub fn simplex(s: Simplex) -> SimplicialComplex {
        SimplicialComplex::from_faces([s])
    }

    /// The boundary of the simplex `s` (all proper faces).
    pub fn simplex_boundary(s: Simplex) -> SimplicialComplex {
        SimplicialComplex::from_faces(s.facets())
    }

    /// Builds from a set that is already downward closed. Used where closure
    /// holds by construction.
    pub(crate) fn from_closed(faces: BTreeSet<Simplex>) -> SimplicialComplex {
        let mut faces = faces;
        faces.insert(Simplex::EMPTY);
        debug_assert!(faces.iter().all(|f| f.facets().all(|g| faces.contains(&g))));
        SimplicialComplex { faces }
    }

    pub(crate) fn from_set_unchecked(faces: BTreeSet<Simplex>) -> SimplicialComplex {
        SimplicialComplex { faces }
    }

    /// The nerve of a family of sets: one vertex per set, one face per
    /// subfamily with a common element.
    pub fn nerve(sets: &[FixedBitSet]) -> Result<SimplicialComplex> {
        if sets.len() > MAX_VERTICES {
            return Err(Error::Resource {
                what: "nerve vertices",
                actual: sets.len(),
                cap: MAX_VERTICES,
            });
        }
        if let Some(i) = sets.iter().position(|s| s.is_clear()) {
            return Err(Error::input(format!("member {i} is empty")));
        }
        let mut faces = BTreeSet::from([Simplex::EMPTY]);
        fn grow(
            sets: &[FixedBitSet],
            face: Simplex,
            common: &FixedBitSet,
            from: usize,
            faces: &mut BTreeSet<Simplex>,
        ) {
            for i in from..sets.len() {
                let mut next = common.clone();
                next.intersect_with(&sets[i]);
                if !next.is_clear() {
                    let f = face.with(i);
                    faces.insert(f);
                    grow(sets, f, &next, i + 1, faces);
                }
            }
        }
        for i in 0..sets.len() {
            let f = Simplex::vertex(i);
            faces.insert(f);
            grow(sets, f, &sets[i], i + 1, &mut faces);
        }
        Ok(SimplicialComplex { faces })
    }

    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.faces.iter().copied()
    }

    /// Faces with exactly `k` vertices.
    pub fn faces_of_len(&self, k: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.faces.iter().copied().filter(move |f| f.len() == k)
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.faces.contains(&s)
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// The union of all faces.
    pub fn vertex_set(&self) -> Simplex {
        self.faces.iter().fold(Simplex::EMPTY, |acc, f| {
            if f.len() == 1 {
                acc.union(*f)
            } else {
                acc
            }
        })
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.vertex_set().vertices().collect()
    }

    /// Whether the only face is ∅.
    pub fn is_empty(&self) -> bool {
        self.faces.len() == 1
    }

    /// Maximum face cardinality minus one; −1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.iter().next_back().map_or(-1, |f| f.dim())
    }

    /// `f[i]` is the number of faces with `i + 1` vertices, for `i` up to the
    /// dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for s in &self.faces {
            if !s.is_empty() {
                f[s.len() - 1] += 1;
            }
        }
        f
    }

    /// Number of faces of dimension `d`.
    pub fn f(&self, d: usize) -> usize {
        self.faces_of_len(d + 1).count()
    }

    /// Inclusion-maximal faces, sorted.
    pub fn maximal_faces(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        let mut seen: Vec<Simplex> = Vec::new();
        // Largest first, so anything contained in a kept face is skipped.
        for &f in self.faces.iter().rev() {
            if seen.iter().any(|m| f.is_subset(*m)) {
                continue;
            }
            seen.push(f);
            out.push(f);
        }
        if out.len() > 1 {
            out.retain(|f| !f.is_empty());
        }
        out.sort();
        out
    }

    fn require_vertex(&self, x: usize) -> Result<()> {
        if x < MAX_VERTICES && self.contains(Simplex::vertex(x)) {
            Ok(())
        } else {
            Err(Error::input(format!("{x} is not a vertex of the complex")))
        }
    }

    /// Closed star: all faces τ with τ ∪ {x} a face.
    pub fn star(&self, x: usize) -> Result<SimplicialComplex> {
        self.require_vertex(x)?;
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| self.faces.contains(&f.with(x)))
            .collect();
        Ok(SimplicialComplex::from_closed(faces))
    }

    /// Link: faces τ ∌ x with τ ∪ {x} a face.
    pub fn link(&self, x: usize) -> Result<SimplicialComplex> {
        self.require_vertex(x)?;
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| !f.contains(x) && self.faces.contains(&f.with(x)))
            .collect();
        Ok(SimplicialComplex::from_closed(faces))
    }

    /// Deletion K − x: faces not containing x.
    pub fn delete(&self, x: usize) -> Result<SimplicialComplex> {
        self.require_vertex(x)?;
        Ok(self.without_vertex(x))
    }

    pub(crate) fn without_vertex(&self, x: usize) -> SimplicialComplex {
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| !f.contains(x))
            .collect();
        SimplicialComplex::from_closed(faces)
    }

    /// Induced subcomplex on a vertex set.
    pub fn induced(&self, w: Simplex) -> SimplicialComplex {
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|f| f.is_subset(w))
            .collect();
        SimplicialComplex::from_closed(faces)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.faces.is_subset(&other.faces)
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            faces: self.faces.union(&other.faces).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex {
            faces: self.faces.intersection(&other.faces).copied().collect(),
        }
    }

    /// Whether the complex is a cone: some vertex x with σ ∪ {x} a face for
    /// every face σ. Returns the smallest such apex.
    pub fn cone_apex(&self) -> Option<usize> {
        self.vertex_set()
            .vertices()
            .find(|&x| self.faces.iter().all(|f| self.faces.contains(&f.with(x))))
    }

    /// K_(x,L) = K ∪ {σ ∪ {x} : σ ∈ L}, for L a subcomplex of K − x.
    ///
    /// An empty L (only the empty face) leaves K unchanged rather than adding
    /// x as an isolated vertex.
    pub fn cone_extension(&self, x: usize, l: &SimplicialComplex) -> Result<SimplicialComplex> {
        if x >= MAX_VERTICES {
            return Err(Error::input(format!("apex {x} out of range")));
        }
        for f in l.faces() {
            if f.contains(x) {
                return Err(Error::input(format!("face {f:?} of L contains the apex")));
            }
            if !self.contains(f) {
                return Err(Error::input(format!("face {f:?} of L is not a face of K")));
            }
        }
        let mut faces = self.faces.clone();
        if !l.is_empty() {
            faces.extend(l.faces().map(|f| f.with(x)));
        }
        Ok(SimplicialComplex { faces })
    }

    /// Renames vertices via `map[v]`; `map` must be injective on the vertices.
    pub fn relabel(&self, map: &[usize]) -> Result<SimplicialComplex> {
        let faces: Result<BTreeSet<Simplex>> = self
            .faces
            .iter()
            .map(|f| Simplex::new(f.vertices().map(|v| map[v])))
            .collect();
        let faces = faces?;
        if faces.len() != self.faces.len() {
            return Err(Error::input("vertex relabelling is not injective"));
        }
        Ok(SimplicialComplex { faces })
    }

    /// Text format: one maximal face per line, vertices separated by spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in self.maximal_faces() {
            if f.is_empty() {
                continue;
            }
            let words: Vec<String> = f.vertices().map(|v| v.to_string()).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text format; blank lines and `#` comments are ignored.
    pub fn parse_text(text: &str) -> Result<SimplicialComplex> {
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let verts: Vec<usize> = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::input(format!("line {}: bad vertex {t:?}", lineno + 1)))
                })
                .collect::<Result<_>>()?;
            gens.push(Simplex::new(verts)?);
        }
        Ok(SimplicialComplex::from_faces(gens))
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.maximal_faces().into_iter().filter(|f| !f.is_empty()))
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let gens = Vec::<Simplex>::deserialize(d)?;
        Ok(SimplicialComplex::from_faces(gens))
    }
}
