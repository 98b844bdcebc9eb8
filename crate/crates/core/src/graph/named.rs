use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Standard graph families. Vertices are labelled `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedGraph {
    Complete(usize),
    /// Complete multipartite graph with the given part sizes.
    Multipartite(Vec<usize>),
    Cycle(usize),
    /// Path on `n` vertices.
    Path(usize),
    /// The Wagner graph: an 8-cycle plus its four antipodal chords.
    Wagner,
}

pub fn named_graph(name: &NamedGraph) -> Result<Graph> {
    match name {
        NamedGraph::Complete(n) => {
            positive(*n, "complete")?;
            Ok(Graph::from_index_edges(
                *n,
                (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j))),
            ))
        }
        NamedGraph::Multipartite(parts) => {
            if parts.is_empty() {
                return Err(Error::input("multipartite: no parts given"));
            }
            let mut part_of = Vec::new();
            for (p, &size) in parts.iter().enumerate() {
                positive(size, "multipartite part")?;
                part_of.extend(std::iter::repeat_n(p, size));
            }
            let n = part_of.len();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if part_of[i] != part_of[j] {
                        edges.push((i, j));
                    }
                }
            }
            Ok(Graph::from_index_edges(n, edges))
        }
        NamedGraph::Cycle(n) => {
            if *n < 3 {
                return Err(Error::input(format!(
                    "cycle needs at least 3 vertices, got {n}"
                )));
            }
            Ok(Graph::from_index_edges(
                *n,
                (0..*n).map(|i| (i, (i + 1) % n)),
            ))
        }
        NamedGraph::Path(n) => {
            positive(*n, "path")?;
            Ok(Graph::from_index_edges(*n, (1..*n).map(|i| (i - 1, i))))
        }
        NamedGraph::Wagner => Ok(Graph::from_index_edges(
            8,
            (0..8)
                .map(|i| (i, (i + 1) % 8))
                .chain((0..4).map(|i| (i, i + 4))),
        )),
    }
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::input(format!("{what}: parameter must be positive")));
    }
    Ok(())
}

impl fmt::Display for NamedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGraph::Complete(n) => write!(f, "complete:{n}"),
            NamedGraph::Multipartite(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "multipartite:{}", parts.join(","))
            }
            NamedGraph::Cycle(n) => write!(f, "cycle:{n}"),
            NamedGraph::Path(n) => write!(f, "path:{n}"),
            NamedGraph::Wagner => write!(f, "wagner"),
        }
    }
}

/// Parses `complete:5`, `k5`, `multipartite:2,2,3`, `cycle:6`, `path:4`,
/// `wagner` / `w8`.
impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let num = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::input(format!("bad number {t:?} in graph name")))
        };
        if s == "wagner" || s == "w8" {
            return Ok(NamedGraph::Wagner);
        }
        if let Some((kind, arg)) = s.split_once(':') {
            return match kind {
                "complete" | "k" => Ok(NamedGraph::Complete(num(arg)?)),
                "cycle" | "c" => Ok(NamedGraph::Cycle(num(arg)?)),
                "path" | "p" => Ok(NamedGraph::Path(num(arg)?)),
                "multipartite" => Ok(NamedGraph::Multipartite(
                    arg.split(',').map(num).collect::<Result<_>>()?,
                )),
                _ => Err(Error::input(format!("unknown graph family {kind:?}"))),
            };
        }
        if let Some(rest) = s.strip_prefix('k') {
            return Ok(NamedGraph::Complete(num(rest)?));
        }
        Err(Error::input(format!("unknown graph name {s:?}")))
    }
}
