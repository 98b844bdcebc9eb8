//! graph6 and edge-list text formats.
//!
//! graph6 carries no labels: parsing yields vertices `0..n`, and emitting
//! writes vertices in label order (so labels are replaced by their rank).

use super::{Graph, Label};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut String) {
    if n < 63 {
        out.push((n as u8 + 63) as char);
    } else if n < 258_048 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

/// Encodes a graph in graph6.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge_idx(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

fn sextet(b: u8) -> Result<usize> {
    if !(63..=126).contains(&b) {
        return Err(Error::input(format!("graph6: byte {b:#04x} out of range")));
    }
    Ok((b - 63) as usize)
}

/// Decodes a graph6 string (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    if s.is_empty() {
        return Err(Error::input("graph6: empty input"));
    }
    let (n, body) = if s[0] != b'~' {
        (sextet(s[0])?, &s[1..])
    } else if s.len() >= 2 && s[1] == b'~' {
        if s.len() < 8 {
            return Err(Error::input("graph6: truncated size field"));
        }
        let mut n = 0;
        for &b in &s[2..8] {
            n = (n << 6) | sextet(b)?;
        }
        (n, &s[8..])
    } else {
        if s.len() < 4 {
            return Err(Error::input("graph6: truncated size field"));
        }
        let mut n = 0;
        for &b in &s[1..4] {
            n = (n << 6) | sextet(b)?;
        }
        (n, &s[4..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::input(format!(
            "graph6: expected {need} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let data: Vec<usize> = body.iter().map(|&b| sextet(b)).collect::<Result<_>>()?;
    let bit = |k: usize| (data[k / 6] >> (5 - k % 6)) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 && data[need - 1] & ((1 << (6 - nbits % 6)) - 1) != 0 {
        return Err(Error::input("graph6: nonzero padding bits"));
    }
    Ok(Graph::from_index_edges(n, edges))
}

/// Parses the edge-list format: one `u v` pair per line, a single label on
/// a line declares an isolated vertex, `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<Label> = line
            .split_whitespace()
            .map(|t| {
                t.parse::<Label>().map_err(|_| {
                    Error::input(format!("line {}: bad vertex label {t:?}", lineno + 1))
                })
            })
            .collect::<Result<_>>()?;
        match nums.as_slice() {
            [v] => vertices.push(*v),
            [u, v] => {
                vertices.extend([*u, *v]);
                edges.push((*u, *v));
            }
            _ => {
                return Err(Error::input(format!(
                    "line {}: expected one or two labels",
                    lineno + 1
                )))
            }
        }
    }
    Graph::new(vertices, edges).map_err(|e| Error::input(format!("edge list: {e}")))
}

/// Writes the edge-list format. Isolated vertices get their own line.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for i in 0..g.order() {
        if g.degree(i) == 0 {
            out.push_str(&format!("{}\n", g.label(i)));
        }
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("{a} {b}\n"));
    }
    out
}

/// Parses either format. A single non-comment token containing a character
/// outside `0-9` is taken to be graph6.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let content: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let looks_graph6 = content.len() == 1
        && !content[0].contains(char::is_whitespace)
        && !content[0].chars().all(|c| c.is_ascii_digit());
    if looks_graph6 || text.trim_start().starts_with(HEADER) {
        parse_graph6(text.trim())
    } else {
        parse_edge_list(text)
    }
}
