//! Reading graphs, covers, complexes and cycles from arguments.

use std::io::Read;
use std::path::Path;

use concover::covers::{Cover, CoverJson};
use concover::graph::{named_graph, parse_graph, to_graph6, Graph, NamedGraph};
use concover::simplicial::{Simplex, SimplicialComplex};
use concover::{Error, Result};

fn read_path(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// `-` reads stdin, an existing path is read as a file, then family names,
/// and anything else is parsed as graph text.
pub fn graph(arg: &str) -> Result<Graph> {
    if arg == "-" || Path::new(arg).is_file() {
        return parse_graph(&read_path(Path::new(arg))?);
    }
    if let Ok(name) = arg.parse::<NamedGraph>() {
        return named_graph(&name);
    }
    parse_graph(arg)
}

pub fn cover(path: &Path) -> Result<Cover> {
    CoverJson::parse(&read_path(path)?)
}

pub fn complex(path: &Path) -> Result<SimplicialComplex> {
    SimplicialComplex::parse_text(&read_path(path)?)
}

/// Triangles, one per line in the given order (`#` starts a comment).
pub fn triangles(path: &Path) -> Result<Vec<Simplex>> {
    let text = read_path(path)?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let verts = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| {
                    Error::Input(format!(
                        "{} line {}: bad vertex {t:?}",
                        path.display(),
                        lineno + 1
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let s = Simplex::new(verts.iter().copied())?;
        if s.len() != 3 || verts.len() != 3 {
            return Err(Error::Input(format!(
                "{} line {}: expected three distinct vertices",
                path.display(),
                lineno + 1
            )));
        }
        out.push(s);
    }
    Ok(out)
}

/// Canonical texts hashed into the report.
pub fn graph_text(g: &Graph) -> String {
    to_graph6(g)
}

/// Members keep their input order, since nerve vertices refer to it.
pub fn cover_text(c: &Cover) -> String {
    let j = CoverJson {
        graph: to_graph6(c.ambient()),
        members: (0..c.len())
            .map(|i| c.members()[i].ones().map(|v| v as u32).collect())
            .collect(),
    };
    serde_json::to_string(&j).expect("cover JSON")
}

pub fn triangles_text(order: &[Simplex]) -> String {
    order
        .iter()
        .map(|s| {
            s.vertices()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect()
}
