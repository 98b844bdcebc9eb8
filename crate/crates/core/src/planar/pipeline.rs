use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::fill::interior_unchecked;
use super::{embed_planar, lift_cover, thicken, Face};
use crate::caps::Caps;
use crate::covers::{faces_with_intersections, validate_cover, Cover};
use crate::error::{Error, Result};
use crate::graph::Label;
use crate::simplicial::{betti, tchain, BettiVector, Chain, Simplex, SimplicialComplex};

/// One face fill of the designated member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStep {
    /// Boundary walk of the filled face, in thickened-graph vertices.
    pub face: Vec<Label>,
    pub added: Vec<Label>,
    /// Betti vector of the nerve after the fill.
    pub betti: BettiVector,
}

/// Outcome of the crossing-paths check: for 3-chains β of simplices whose
/// intersections lie inside the filled face, with every 2-face of ∂β meeting
/// the designated member, each 3-simplex of T(∂β, ≺) (≺ taken from where
/// the 2-faces touch the face boundary) must also meet the member.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingCheck {
    pub chains_checked: usize,
    pub simplices_checked: usize,
    /// 3-simplices of some T whose intersection misses the member.
    pub violations: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub members: usize,
    pub thickened_vertices: usize,
    pub initial_betti: BettiVector,
    pub steps: Vec<PipelineStep>,
    /// b̃₃ of the nerve vanished before and after every step.
    pub b3_zero_throughout: bool,
    /// The final nerve is a cone with apex the designated member.
    pub ends_in_cone: bool,
    pub crossing: CrossingCheck,
}

impl PipelineTrace {
    pub fn holds(&self) -> bool {
        self.b3_zero_throughout && self.ends_in_cone && self.crossing.violations.is_empty()
    }
}

/// Thickens the graph, lifts the cover, then fills faces of the first
/// member (smallest face with something inside first) until it is the
/// whole graph, recording the nerve's homology after each fill.
///
/// Every intermediate family is checked to be a connected cover whose
/// nerve is the cone extension of the previous nerve over the simplices
/// living inside the filled face.
pub fn face_filling_pipeline(c: &Cover, caps: &Caps) -> Result<PipelineTrace> {
    let g = c.ambient();
    if c.is_empty() {
        return Err(Error::input("the cover has no members"));
    }
    if !g.is_connected() {
        return Err(Error::input("the pipeline needs a connected graph"));
    }
    if let Some(v) = validate_cover(c).violation {
        return Err(Error::input(format!(
            "cover is not connected at face {:?}",
            v.face
        )));
    }
    let e = embed_planar(g, caps)?.ok_or_else(|| Error::input("the graph is not planar"))?;
    let nerve = c.nerve()?;
    let initial_betti = betti(&nerve);
    let mut trace = PipelineTrace {
        members: c.len(),
        thickened_vertices: 0,
        b3_zero_throughout: initial_betti.get(3) == 0,
        initial_betti,
        steps: Vec::new(),
        ends_in_cone: false,
        crossing: CrossingCheck::default(),
    };
    let x = 0;
    if g.size() == 0 {
        trace.ends_in_cone = is_cone_at(&nerve, x);
        return Ok(trace);
    }

    let t = thicken(g, &e)?;
    trace.thickened_vertices = t.graph.order();
    let mut cover = lift_cover(c, &t)?;
    if cover.nerve()? != nerve || !validate_cover(&cover).valid {
        return Err(Error::internal(
            "lifting changed the nerve or broke connectivity",
        ));
    }
    if let Some(i) = (0..cover.len()).find(|&i| !t.graph.is_2_connected_within(&cover.members()[i]))
    {
        return Err(Error::internal(format!(
            "lifted member {i} is not 2-connected"
        )));
    }

    let ge = &t.embedding;
    let full = t.graph.full_set();
    let mut k = nerve;
    while cover.members()[x] != full {
        let h = cover.members()[x].clone();
        let (face, inside) = ge
            .restrict(&h)
            .faces()
            .into_iter()
            .map(|f| {
                let u = interior_unchecked(ge, &h, &f);
                (f, u)
            })
            .find(|(_, u)| !u.is_clear())
            .ok_or_else(|| Error::internal("a proper member has no face to fill"))?;

        crossing_check(&cover, x, &face, &inside, &mut trace.crossing)?;

        let mut grown = h.clone();
        grown.union_with(&inside);
        if !t.graph.is_2_connected_within(&grown) {
            return Err(Error::internal("filled member is not 2-connected"));
        }
        let next = cover.with_member(x, grown);
        if let Some(v) = validate_cover(&next).violation {
            return Err(Error::internal(format!(
                "filling broke connectivity at {:?}",
                v.face
            )));
        }
        let next_nerve = next.nerve()?;
        let l = inside_complex(&cover, x, &inside);
        if k.cone_extension(x, &l)? != next_nerve {
            return Err(Error::internal(
                "new nerve is not the cone extension over the filled face",
            ));
        }
        let b = betti(&next_nerve);
        trace.b3_zero_throughout &= b.get(3) == 0;
        trace.steps.push(PipelineStep {
            face: face.boundary(),
            added: t.graph.labels_of(&inside),
            betti: b,
        });
        cover = next;
        k = next_nerve;
    }
    trace.ends_in_cone = is_cone_at(&k, x) && betti(&k).is_zero();
    Ok(trace)
}

fn is_cone_at(k: &SimplicialComplex, x: usize) -> bool {
    k.maximal_faces().iter().all(|f| f.contains(x))
}

/// The complex generated by the faces σ whose intersection lies inside
/// `inside`.
fn inside_complex(c: &Cover, x: usize, inside: &FixedBitSet) -> SimplicialComplex {
    SimplicialComplex::from_faces(
        faces_with_intersections(c)
            .into_iter()
            .filter(|(s, common)| !s.contains(x) && common.is_subset(inside))
            .map(|(s, _)| s),
    )
}

fn crossing_check(
    c: &Cover,
    x: usize,
    face: &Face,
    inside: &FixedBitSet,
    out: &mut CrossingCheck,
) -> Result<()> {
    let gx = &c.members()[x];
    let meets_x = |s: Simplex| {
        let mut common = c.intersection(s);
        common.intersect_with(gx);
        !common.is_clear()
    };
    let cells: Vec<Simplex> = faces_with_intersections(c)
        .into_iter()
        .filter(|(s, common)| s.len() == 4 && !s.contains(x) && common.is_subset(inside))
        .map(|(s, _)| s)
        .collect();
    let mut betas: Vec<Vec<Simplex>> = cells.iter().map(|&s| vec![s]).collect();
    for i in 0..cells.len() {
        for j in i + 1..cells.len() {
            betas.push(vec![cells[i], cells[j]]);
        }
    }
    let boundary: Vec<Label> = face.boundary();
    for beta in betas {
        let db = Chain::from_simplices(beta)?.boundary();
        if db.is_zero() || !db.simplices().all(meets_x) {
            continue;
        }
        // Position on the face boundary of the first vertex each 2-face's
        // intersection reaches.
        let mut keyed = Vec::new();
        for tau in db.simplices() {
            let common = c.intersection(tau);
            let p = boundary
                .iter()
                .position(|&v| common.contains(v as usize))
                .ok_or_else(|| Error::internal("a boundary triangle misses the face's cycle"))?;
            keyed.push((p, tau));
        }
        keyed.sort();
        let order: Vec<Simplex> = keyed.into_iter().map(|(_, s)| s).collect();
        let t = tchain(&db, &order)?;
        out.chains_checked += 1;
        for s in t.simplices() {
            out.simplices_checked += 1;
            if !meets_x(s) {
                out.violations.push(s.vertices().collect());
            }
        }
    }
    Ok(())
}
