use serde::{Deserialize, Serialize};

use super::search::search_families;
use super::{canonical_cover_from_minor, validate_cover, Cover, SearchBudget};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{
    find_clique_sum_split, hadwiger_number, has_minor, named_graph, Graph, MinorCertificate,
    NamedGraph,
};
use crate::simplicial::betti;

/// Which fact produced the upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperRule {
    /// K1: every cover is empty or a single member.
    SingleVertex,
    Forest,
    /// No K4 minor: a subgraph of clique-sums of triangles.
    K4MinorFree,
    Planar,
    /// No K5 minor: built from planar pieces and W8 by clique-sums.
    K5MinorFree,
    /// Complete multipartite graphs have γ equal to Hadwiger number − 2.
    CompleteMultipartite,
    /// Maximum over the two sides of a clique-sum.
    CliqueSum,
    /// A completed search over every cover.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerWitness {
    pub cover: Cover,
    pub dimension: usize,
}

/// Bounds on γ(G), the largest d such that some connected cover has
/// b̃_d(nerve) ≠ 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaBounds {
    pub lower: i64,
    /// Absent only for K1, where the bound −1 needs no witness.
    pub lower_witness: Option<LowerWitness>,
    #[serde(with = "unknown_as_string")]
    pub upper: Option<i64>,
    pub upper_rule: Option<UpperRule>,
    pub hadwiger: usize,
    /// Set when an exhaustive search ran out of budget before settling the
    /// upper bound.
    pub budget_exhausted: bool,
}

mod unknown_as_string {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Known(i64),
        Unknown(String),
    }

    pub fn serialize<S: Serializer>(v: &Option<i64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => Repr::Known(*x),
            None => Repr::Unknown("unknown".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<i64>, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Known(x) => Ok(Some(x)),
            Repr::Unknown(s) if s == "unknown" => Ok(None),
            Repr::Unknown(s) => Err(serde::de::Error::custom(format!("bad bound {s:?}"))),
        }
    }
}

/// Complement is a disjoint union of cliques, i.e. non-adjacency is
/// transitive.
fn is_complete_multipartite(g: &Graph) -> bool {
    let n = g.order();
    (0..n).all(|u| {
        (0..n).all(|v| {
            u == v
                || g.has_edge_idx(u, v)
                || (0..n).all(|w| w == u || w == v || g.has_edge_idx(v, w) || !g.has_edge_idx(u, w))
        })
    })
}

fn edge_certificate(g: &Graph) -> MinorCertificate {
    let (u, v) = g.edges()[0];
    MinorCertificate {
        pattern: named_graph(&NamedGraph::Complete(2)).expect("K2"),
        branch_sets: vec![vec![u], vec![v]],
    }
}

fn witness(g: &Graph, cert: &MinorCertificate) -> Result<LowerWitness> {
    let cover = canonical_cover_from_minor(cert, g)?;
    let dimension = cert.pattern.order() - 2;
    if !validate_cover(&cover).valid || betti(&cover.nerve()?).get(dimension) == 0 {
        return Err(Error::internal(
            "canonical cover does not witness the lower bound",
        ));
    }
    Ok(LowerWitness { cover, dimension })
}

/// Lower bound from the Hadwiger number with its canonical cover, upper
/// bound from the first structural rule that applies. With `exhaustive`,
/// graphs no rule covers are searched over all covers within the budget.
pub fn gamma_bounds(
    g: &Graph,
    caps: &Caps,
    exhaustive: Option<&SearchBudget>,
) -> Result<GammaBounds> {
    if !g.is_connected() {
        return Err(Error::input("γ bounds need a connected graph"));
    }
    let n = g.order();
    if n == 1 {
        return Ok(GammaBounds {
            lower: -1,
            lower_witness: None,
            upper: Some(-1),
            upper_rule: Some(UpperRule::SingleVertex),
            hadwiger: 1,
            budget_exhausted: false,
        });
    }
    let (hadwiger, cert) = if g.is_forest() {
        (2, edge_certificate(g))
    } else {
        let h = hadwiger_number(g, caps)?;
        (h.number, h.certificate)
    };
    let lower = hadwiger as i64 - 2;
    let lower_witness = Some(witness(g, &cert)?);
    let mut out = GammaBounds {
        lower,
        lower_witness,
        upper: None,
        upper_rule: None,
        hadwiger,
        budget_exhausted: false,
    };
    let mut set = |upper: i64, rule: UpperRule| {
        out.upper = Some(upper);
        out.upper_rule = Some(rule);
    };
    if g.is_forest() {
        set(0, UpperRule::Forest);
    } else if hadwiger <= 3 {
        set(1, UpperRule::K4MinorFree);
    } else if hadwiger == 4 {
        let k33 = named_graph(&NamedGraph::Multipartite(vec![3, 3]))?;
        if has_minor(g, &k33, caps)?.is_none() {
            set(2, UpperRule::Planar);
        } else {
            set(2, UpperRule::K5MinorFree);
        }
    } else if is_complete_multipartite(g) {
        set(lower, UpperRule::CompleteMultipartite);
    } else if let Some(upper) = clique_sum_upper(g, caps, exhaustive)? {
        set(upper, UpperRule::CliqueSum);
    }
    if out.upper.is_none() {
        if let Some(budget) = exhaustive {
            exhaustive_search(g, budget, &mut out)?;
        }
    }
    if let Some(u) = out.upper {
        if u < out.lower {
            return Err(Error::internal(format!(
                "lower bound {} exceeds upper bound {u}",
                out.lower
            )));
        }
    }
    Ok(out)
}

fn clique_sum_upper(
    g: &Graph,
    caps: &Caps,
    exhaustive: Option<&SearchBudget>,
) -> Result<Option<i64>> {
    let Some(split) = find_clique_sum_split(g)? else {
        return Ok(None);
    };
    let a = gamma_bounds(&g.induced_subgraph(&split.left)?, caps, exhaustive)?;
    let b = gamma_bounds(&g.induced_subgraph(&split.right)?, caps, exhaustive)?;
    Ok(match (a.upper, b.upper) {
        (Some(x), Some(y)) => Some(x.max(y)),
        _ => None,
    })
}

/// Searches for covers with homology in every dimension above the lower
/// bound. Nerves of covers of an n-vertex graph have no homology above
/// n − 2 (the dual family has n members), so a complete search settles γ.
fn exhaustive_search(g: &Graph, budget: &SearchBudget, out: &mut GammaBounds) -> Result<()> {
    let top = g.order() as i64 - 2;
    let dims: Vec<usize> = ((out.lower + 1).max(0)..=top).map(|d| d as usize).collect();
    if dims.is_empty() {
        out.upper = Some(out.lower);
        out.upper_rule = Some(UpperRule::Exhaustive);
        return Ok(());
    }
    let r = search_families(g, &dims, budget, false)?;
    if let Some((&d, cover)) = r.found.iter().next_back() {
        out.lower = d as i64;
        out.lower_witness = Some(LowerWitness {
            cover: cover.clone(),
            dimension: d,
        });
    }
    if r.exhausted || !r.complete {
        out.budget_exhausted = true;
    } else {
        out.upper = Some(out.lower);
        out.upper_rule = Some(UpperRule::Exhaustive);
    }
    Ok(())
}
