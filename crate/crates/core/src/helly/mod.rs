//! Helly-type quantities of connected covers.
//!
//! A subfamily is *intersecting* when its members share an ambient vertex,
//! which for induced subgraphs is the same as a nonempty intersection.

mod colorful;
mod piercing;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::covers::{validate_cover, Cover};
use crate::error::{Error, Result};
use crate::graph::{
    hadwiger_number, named_graph, verify_certificate, MinorCertificate, NamedGraph,
};
use crate::simplicial::Simplex;

pub use colorful::{
    colorful_k5_builder, generalized_colorful_builder, ColorfulOutcome, ColorfulPartition,
};
pub use piercing::{piercing_number, PiercingSolution};

/// Members whose proper subfamilies all intersect while the whole does not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HellyConfiguration {
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HellyNumber {
    /// 1 when the whole family intersects, 0 for the empty family.
    pub number: usize,
    pub configuration: Option<HellyConfiguration>,
}

/// For each ambient vertex, the members containing it as a bit mask.
pub(crate) fn membership_masks(c: &Cover) -> Vec<u64> {
    let mut masks = vec![0u64; c.ambient().order()];
    for (i, m) in c.members().iter().enumerate() {
        for v in m.ones() {
            masks[v] |= 1 << i;
        }
    }
    masks
}

/// Distinct maximal membership masks: a family intersects iff it fits in
/// one of them.
fn maximal_masks(c: &Cover) -> Vec<u64> {
    let mut masks = membership_masks(c);
    masks.sort_unstable();
    masks.dedup();
    let all = masks.clone();
    masks.retain(|&m| m != 0 && !all.iter().any(|&o| o != m && o & m == m));
    masks
}

fn intersects(maximal: &[u64], family: u64) -> bool {
    maximal.iter().any(|&m| m & family == family)
}

/// Helly number from the minimal non-faces of the nerve. Among the largest,
/// the first in simplex order is returned.
pub fn helly_number(c: &Cover, caps: &Caps) -> Result<HellyNumber> {
    Error::check_cap("cover members", c.len(), caps.helly_members)?;
    if let Some(v) = validate_cover(c).violation {
        return Err(Error::input(format!(
            "cover is not connected at face {:?}",
            v.face
        )));
    }
    if c.is_empty() {
        return Ok(HellyNumber {
            number: 0,
            configuration: None,
        });
    }
    let nerve = c.nerve()?;
    let m = c.len();
    let mut best: Option<Simplex> = None;
    for tau in nerve.faces() {
        if tau.is_empty() {
            continue;
        }
        let top = tau.vertices().last().unwrap();
        for i in top + 1..m {
            let sigma = tau.with(i);
            if nerve.contains(sigma) || !sigma.facets().all(|f| nerve.contains(f)) {
                continue;
            }
            if best.is_none_or(|b| sigma.len() > b.len() || (sigma.len() == b.len() && sigma < b)) {
                best = Some(sigma);
            }
        }
    }
    Ok(match best {
        None => HellyNumber {
            number: 1,
            configuration: None,
        },
        Some(s) => HellyNumber {
            number: s.len(),
            configuration: Some(HellyConfiguration {
                members: s.vertices().collect(),
            }),
        },
    })
}

/// Builds a K_m model from an m-member Helly configuration: branch set i is
/// the common part of all members but i, extended by the interiors of
/// shortest paths to the later branch sets, each path running inside the
/// common part of all members but i and j.
pub fn minor_from_helly_configuration(
    c: &Cover,
    hc: &HellyConfiguration,
) -> Result<MinorCertificate> {
    if let Some(v) = validate_cover(c).violation {
        return Err(Error::input(format!(
            "cover is not connected at face {:?}",
            v.face
        )));
    }
    let idx = &hc.members;
    let m = idx.len();
    if m < 3 {
        return Err(Error::input("configurations need at least three members"));
    }
    if idx.iter().any(|&i| i >= c.len()) || idx.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input(
            "configuration members must be increasing member indices",
        ));
    }
    let g = c.ambient();
    let common = |skip: &[usize]| -> FixedBitSet {
        let mut acc = g.full_set();
        for (k, &i) in idx.iter().enumerate() {
            if !skip.contains(&k) {
                acc.intersect_with(&c.members()[i]);
            }
        }
        acc
    };
    if !common(&[]).is_clear() {
        return Err(Error::input("the configuration's members intersect"));
    }
    let mut branch: Vec<FixedBitSet> = (0..m).map(|i| common(&[i])).collect();
    if let Some(i) = branch.iter().position(|b| b.is_clear()) {
        return Err(Error::input(format!(
            "the members other than {} do not intersect",
            idx[i]
        )));
    }
    let cores = branch.clone();
    for i in 0..m {
        for j in i + 1..m {
            let within = common(&[i, j]);
            let path = g
                .shortest_path_within(&within, &cores[i], &cores[j])
                .ok_or_else(|| {
                    Error::internal("intersection of a connected cover is disconnected")
                })?;
            for &v in &path[1..path.len() - 1] {
                branch[i].insert(v);
            }
        }
    }
    let cert = MinorCertificate {
        pattern: named_graph(&NamedGraph::Complete(m))?,
        branch_sets: branch.iter().map(|b| g.labels_of(b)).collect(),
    };
    verify_certificate(g, &cert).map_err(|e| Error::internal(format!("Helly model fails: {e}")))?;
    Ok(cert)
}

/// Whether among any p members some q share a vertex.
pub fn pq_property(c: &Cover, p: usize, q: usize, caps: &Caps) -> Result<bool> {
    if q < 2 || p < q || p > c.len() {
        return Err(Error::input(format!(
            "need 2 ≤ q ≤ p ≤ {} members, got p = {p}, q = {q}",
            c.len()
        )));
    }
    Error::check_cap("cover members", c.len(), caps.helly_members)?;
    let maximal = maximal_masks(c);
    // A p-set has an intersecting q-subset iff some vertex lies in q of its
    // members.
    let ok = KSubsets::new(c.len(), p).all(|set| {
        maximal
            .iter()
            .any(|&m| (m & set).count_ones() as usize >= q)
    });
    Ok(ok)
}

/// The k-subsets of 0..n as bit masks, in colexicographic order.
pub(crate) struct KSubsets {
    next: Option<u64>,
    n: usize,
}

impl KSubsets {
    pub(crate) fn new(n: usize, k: usize) -> KSubsets {
        let next = if k > n || n > 63 {
            None
        } else {
            Some((1u64 << k) - 1)
        };
        KSubsets { next, n }
    }
}

impl Iterator for KSubsets {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        // Gosper's hack.
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let nxt = (((r ^ cur) >> 2) / c) | r;
            (nxt < (1u64 << self.n)).then_some(nxt)
        };
        Some(cur)
    }
}

/// Exact rationals serialised as `"p/q"`.
mod ratio_text {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let text = String::deserialize(d)?;
        let (a, b) = text
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom("expected p/q"))?;
        let a = a.parse().map_err(serde::de::Error::custom)?;
        let b: u64 = b.parse().map_err(serde::de::Error::custom)?;
        if b == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalStats {
    pub k: usize,
    /// Fraction of k-member subfamilies that intersect.
    #[serde(with = "ratio_text")]
    pub alpha: Ratio<u64>,
    /// Largest intersecting subfamily as a fraction of the family.
    #[serde(with = "ratio_text")]
    pub beta_emp: Ratio<u64>,
}

impl FractionalStats {
    /// 1 − (1 − α)^{1/4} − 1/|F|, the bound beta_emp should meet on covers
    /// in K5-minor-free graphs.
    pub fn k4_bound(&self, members: usize) -> f64 {
        let alpha = *self.alpha.numer() as f64 / *self.alpha.denom() as f64;
        1.0 - (1.0 - alpha).powf(0.25) - 1.0 / members as f64
    }

    pub fn beta_emp_f64(&self) -> f64 {
        *self.beta_emp.numer() as f64 / *self.beta_emp.denom() as f64
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

pub fn fractional_helly_stats(c: &Cover, k: usize, caps: &Caps) -> Result<FractionalStats> {
    if !(k == 3 || k == 4) {
        return Err(Error::input(format!("k must be 3 or 4, got {k}")));
    }
    Error::check_cap("cover members", c.len(), caps.helly_members)?;
    let n = c.len();
    if n < k {
        return Err(Error::input(format!(
            "the family has fewer than {k} members"
        )));
    }
    let maximal = maximal_masks(c);
    let hits = KSubsets::new(n, k)
        .filter(|&s| intersects(&maximal, s))
        .count() as u64;
    let largest = membership_masks(c)
        .iter()
        .map(|m| m.count_ones())
        .max()
        .unwrap_or(0) as u64;
    Ok(FractionalStats {
        k,
        alpha: Ratio::new(hits, binomial(n, k)),
        beta_emp: Ratio::new(largest, n as u64),
    })
}

/// One line of a Helly experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub instance: String,
    pub members: usize,
    #[serde(with = "ratio_text")]
    pub alpha: Ratio<u64>,
    #[serde(with = "ratio_text")]
    pub beta_emp: Ratio<u64>,
    pub helly: usize,
    pub piercing: usize,
    pub hadwiger: usize,
}

/// Runs the Helly measurements on one cover (k = 4 for the fractional
/// statistics; families with fewer than four members report α = 1).
pub fn experiment_record(instance: &str, c: &Cover, caps: &Caps) -> Result<ExperimentRecord> {
    let (alpha, beta_emp) = if c.len() >= 4 {
        let s = fractional_helly_stats(c, 4, caps)?;
        (s.alpha, s.beta_emp)
    } else {
        let largest = membership_masks(c)
            .iter()
            .map(|m| m.count_ones())
            .max()
            .unwrap_or(0) as u64;
        (
            Ratio::from_integer(1),
            Ratio::new(largest, c.len().max(1) as u64),
        )
    };
    Ok(ExperimentRecord {
        instance: instance.to_string(),
        members: c.len(),
        alpha,
        beta_emp,
        helly: helly_number(c, caps)?.number,
        piercing: piercing_number(c, caps)?.vertices.len(),
        hadwiger: hadwiger_number(c.ambient(), caps)?.number,
    })
}
