//! Normal form of cycles that die when a cone is attached.
//!
//! Let γ₀ be a d-cycle of K that does not bound in K but bounds in
//! K_(x,L). Solving γ₀ = ∂β₀ in the extension and keeping the part of β₀
//! outside K gives β₀′ = [x, β] with β a d-chain of L, and γ = ∂[x, β]
//! differs from γ₀ by ∂ of the part of β₀ inside K.

use serde::{Deserialize, Serialize};

use super::{bounding_chain, cone_chain, Chain, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalForm {
    /// A d-chain of L whose simplices all leave K when coned with x.
    pub beta: Chain,
    /// γ = ∂[x, β], homologous to γ₀ in K.
    pub gamma: Chain,
}

/// Rewrites a critical cycle as a boundary of a cone chain.
///
/// The result is not unique; this returns the one coming from the first
/// solution of the GF(2) system.
pub fn critical_normal_form(
    k: &SimplicialComplex,
    x: usize,
    l: &SimplicialComplex,
    gamma0: &Chain,
) -> Result<CriticalForm> {
    if gamma0.is_zero() {
        return Err(Error::precondition("the zero cycle is never critical"));
    }
    if !gamma0.is_cycle() {
        return Err(Error::input("γ₀ is not a cycle"));
    }
    if let Some(s) = gamma0.simplices().find(|s| !k.contains(*s)) {
        return Err(Error::input(format!("simplex {s:?} of γ₀ is not in K")));
    }
    let ext = k.cone_extension(x, l)?;
    if bounding_chain(k, gamma0)?.is_some() {
        return Err(Error::precondition("γ₀ already bounds in K"));
    }
    let beta0 = bounding_chain(&ext, gamma0)?
        .ok_or_else(|| Error::precondition("γ₀ does not bound in the cone extension"))?;

    let d = gamma0.dim();
    let outside: Vec<_> = beta0.simplices().filter(|s| !k.contains(*s)).collect();
    let inside = Chain::new(d + 1, beta0.simplices().filter(|s| k.contains(*s)))?;
    let beta = Chain::new(d, outside.iter().map(|s| s.without(x)))?;
    let gamma = cone_chain(x, &beta)?.boundary();

    // The three defining properties, checked rather than trusted.
    for s in &outside {
        if !s.contains(x) || !l.contains(s.without(x)) {
            return Err(Error::internal(format!(
                "simplex {s:?} of the extension is neither in K nor a cone over L"
            )));
        }
    }
    let tail = cone_chain(x, &beta.boundary())?;
    if tail.simplices().any(|s| !k.contains(s)) {
        return Err(Error::internal("[x, ∂β] leaves K"));
    }
    if (gamma0 + &gamma) != inside.boundary() {
        return Err(Error::internal("γ₀ + γ is not the boundary of the K-part"));
    }
    Ok(CriticalForm { beta, gamma })
}
