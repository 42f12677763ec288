//! Text formats: graph6 and a plain edge list.
//!
//! Edge-list format:
//!
//! ```text
//! # comment
//! n 3
//! 0 1
//! 1 2
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "edgelist" | "edge-list" => Ok(Format::EdgeList),
            other => Err(Error::UnknownName(format!("graph format '{other}'"))),
        }
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    match format {
        Format::Graph6 => {
            let line = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| parse_err(1, "empty graph6 input"))?;
            from_graph6(line)
        }
        Format::EdgeList => parse_edge_list(text),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        bytes.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let data: Vec<u8> = s.bytes().collect();
    if let Some(&b) = data.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("graph6 byte {b} outside 63..=126")));
    }
    let (n, body) = match data.as_slice() {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(parse_err(1, "truncated graph6 size field"));
            }
            (decode_size(&rest[..6]), &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(1, "truncated graph6 size field"));
            }
            (decode_size(&rest[..3]), &rest[3..])
        }
        [b, rest @ ..] => ((*b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(parse_err(
            1,
            format!("graph6 body has {} bytes, expected {need} for n = {n}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn decode_size(bytes: &[u8]) -> usize {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize)
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some(count) = n else {
            match fields.as_slice() {
                ["n", c] => {
                    n = Some(c.parse().map_err(|_| parse_err(line, format!("bad vertex count '{c}'")))?);
                    continue;
                }
                _ => return Err(parse_err(line, "expected header 'n <count>'")),
            }
        };
        let [a, b] = fields.as_slice() else {
            return Err(parse_err(line, format!("expected 'u v', got '{content}'")));
        };
        let parse = |t: &str| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad vertex '{t}'")));
        let (u, v) = (parse(a)?, parse(b)?);
        for x in [u, v] {
            if x >= count {
                return Err(Error::VertexOutOfRange { line, vertex: x, n: count });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line, vertex: u });
        }
        let e = (u.min(v), u.max(v));
        if !seen.insert(e) {
            return Err(Error::DuplicateEdge { line, u: e.0, v: e.1 });
        }
        edges.push(e);
    }
    let n = n.ok_or_else(|| parse_err(1, "missing header 'n <count>'"))?;
    Graph::from_edges(n, &edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_triangle() {
        let g = parse_edge_list("n 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g, Graph::complete(3).unwrap());
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("n 3\n0 0\n"),
            Err(Error::SelfLoop { line: 2, vertex: 0 })
        );
        assert_eq!(
            parse_edge_list("# x\nn 3\n0 1\n\n1 0\n"),
            Err(Error::DuplicateEdge { line: 5, u: 0, v: 1 })
        );
        assert_eq!(
            parse_edge_list("n 3\n0 3\n"),
            Err(Error::VertexOutOfRange { line: 2, vertex: 3, n: 3 })
        );
        assert!(matches!(parse_edge_list("0 1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("n 3\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("n 3\n0 1 2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
        assert_eq!(parse_edge_list("n 4 # isolated\n").unwrap(), Graph::empty(4));
    }

    #[test]
    fn graph6_known_strings() {
        let k6 = from_graph6("E~~w").unwrap();
        assert_eq!(k6, Graph::complete(6).unwrap());
        assert_eq!(to_graph6(&Graph::complete(6).unwrap()), "E~~w");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(from_graph6("Bg").unwrap(), Graph::path(3).unwrap());
    }

    #[test]
    fn graph6_large_header() {
        let g = Graph::cycle(70).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_malformed() {
        assert!(from_graph6("").is_err());
        assert!(from_graph6("E~~").is_err());
        assert!(from_graph6("E~~ww").is_err());
        assert!(from_graph6("E~\n~").is_err());
        assert!(from_graph6("~?").is_err());
    }
}
