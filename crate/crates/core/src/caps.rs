use serde::{Deserialize, Serialize};

/// Hard limits on the exact (exponential) searches.
///
/// Exceeding any of these is reported as [`crate::Error::Resource`]; no
/// operation silently falls back to an approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest pattern accepted by [`crate::graph::has_minor`].
    pub minor_pattern_vertices: usize,
    /// Largest host graph accepted by minor searches. Planarity answers are
    /// cross-checked against forbidden minors up to this size.
    pub minor_graph_vertices: usize,
    /// Largest graph accepted by the planar embedder.
    pub embed_vertices: usize,
    /// Largest complex accepted by the d-Leray check (it visits 2^n subcomplexes).
    pub leray_vertices: usize,
    /// Largest family accepted by Helly-number and fractional-Helly scans.
    pub helly_members: usize,
    /// Largest family accepted by the exact piercing solver.
    pub pierce_members: usize,
    /// Largest ambient graph accepted by the exact piercing solver.
    pub pierce_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            minor_pattern_vertices: 6,
            minor_graph_vertices: 16,
            embed_vertices: 512,
            leray_vertices: 15,
            helly_members: 20,
            pierce_members: 64,
            pierce_vertices: 512,
        }
    }
}
