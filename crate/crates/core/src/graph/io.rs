//! Plain-text edge-list format.
//!
//! ```text
//! bip <m> <n>
//! # comment
//! e <i> <j>        1 <= i <= m, 1 <= j <= n
//! ```

use std::fmt::Write;

use super::BipartiteGraph;
use crate::error::{Error, Result};

fn parse_index(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        msg: format!("{what} {tok:?} is not a non-negative integer"),
    })
}

pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let kind = toks.next().unwrap_or_default();
        match (kind, header) {
            ("bip", None) => {
                let m = parse_index(toks.next(), line, "m")?;
                let n = parse_index(toks.next(), line, "n")?;
                if m == 0 || n == 0 {
                    return Err(Error::Parse {
                        line,
                        msg: "part sizes must be positive".into(),
                    });
                }
                header = Some((m, n));
            }
            ("bip", Some(_)) => {
                return Err(Error::Parse {
                    line,
                    msg: "repeated header".into(),
                })
            }
            (_, None) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected header `bip <m> <n>`, found {trimmed:?}"),
                })
            }
            ("e", Some((m, n))) => {
                let i = parse_index(toks.next(), line, "X index")?;
                let j = parse_index(toks.next(), line, "Y index")?;
                if i == 0 || i > m {
                    return Err(Error::VertexOutOfRange { index: i, size: m });
                }
                if j == 0 || j > n {
                    return Err(Error::VertexOutOfRange { index: j, size: n });
                }
                edges.push((i - 1, j - 1));
            }
            (other, Some(_)) => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown record {other:?}"),
                })
            }
        }
        if let Some(extra) = toks.next() {
            return Err(Error::Parse {
                line,
                msg: format!("trailing token {extra:?}"),
            });
        }
    }
    let (m, n) = header.ok_or(Error::Parse {
        line: 0,
        msg: "missing header `bip <m> <n>`".into(),
    })?;
    BipartiteGraph::from_edges(m, n, edges).map_err(|e| match e {
        // report duplicates 1-indexed, like the file
        Error::DuplicateEdge { x, y } => Error::DuplicateEdge { x: x + 1, y: y + 1 },
        other => other,
    })
}

/// Canonical text: header, then edges in lexicographic order.
pub fn serialize_graph(g: &BipartiteGraph) -> String {
    let mut out = format!("bip {} {}\n", g.m(), g.n());
    for e in g.edges() {
        writeln!(out, "e {} {}", e.x + 1, e.y + 1).unwrap();
    }
    out
}
