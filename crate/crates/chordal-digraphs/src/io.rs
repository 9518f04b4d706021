//! The text interchange format and DOT export.
//!
//! Text format: the first significant line holds the vertex count `n`;
//! every following significant line holds one arc `u v` (0-based). `#`
//! starts a comment anywhere in a line, blank lines are skipped, and a
//! digon appears as two lines.

use crate::digraph::{Digraph, PairRelation};
use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut n: Option<usize> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        match n {
            None => {
                let count = fields.next().unwrap();
                if fields.next().is_some() {
                    return Err(Error::Parse {
                        line,
                        msg: "expected a single vertex count".into(),
                    });
                }
                n = Some(count.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid vertex count '{count}'"),
                })?);
            }
            Some(n) => {
                let (u, v) = match (fields.next(), fields.next(), fields.next()) {
                    (Some(u), Some(v), None) => (u, v),
                    _ => {
                        return Err(Error::Parse {
                            line,
                            msg: "expected an arc 'u v'".into(),
                        })
                    }
                };
                let u: usize = u.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid vertex '{u}'"),
                })?;
                let v: usize = v.parse().map_err(|_| Error::Parse {
                    line,
                    msg: format!("invalid vertex '{v}'"),
                })?;
                if u == v {
                    return Err(Error::Parse {
                        line,
                        msg: format!("loop ({u}, {v}) not allowed"),
                    });
                }
                if u >= n || v >= n {
                    return Err(Error::Parse {
                        line,
                        msg: format!("arc ({u}, {v}) out of range for {n} vertices"),
                    });
                }
                arcs.push((u, v));
            }
        }
    }
    match n {
        Some(n) => Digraph::from_arcs(n, arcs),
        None => Err(Error::Parse {
            line: text.lines().count().max(1),
            msg: "missing vertex count".into(),
        }),
    }
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", d.n());
    for (u, v) in d.arcs() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// DOT export: one edge per adjacent pair, `dir=both` marking digons.
pub fn write_dot(d: &Digraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {name} {{");
    for v in d.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for u in d.vertices() {
        for v in u + 1..d.n() {
            match d.pair_relation(u, v) {
                PairRelation::NonAdjacent => {}
                PairRelation::Forward => {
                    let _ = writeln!(out, "  {u} -> {v};");
                }
                PairRelation::Backward => {
                    let _ = writeln!(out, "  {v} -> {u};");
                }
                PairRelation::Symmetric => {
                    let _ = writeln!(out, "  {u} -> {v} [dir=both];");
                }
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixture() {
        let fa = fixtures::obstruction_a();
        assert_eq!(parse_digraph(&write_digraph(&fa)).unwrap(), fa);
    }

    #[test]
    fn comments_and_blanks() {
        let text = "# a digon\n\n2\n0 1 # forward\n1 0\n";
        assert_eq!(parse_digraph(text).unwrap(), fixtures::digon());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_digraph("3\n0 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_digraph("3\n1 1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_digraph("x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(parse_digraph("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn dot_renders_digons_once() {
        let dot = write_dot(&fixtures::digon(), "d");
        assert!(dot.contains("0 -> 1 [dir=both];"));
        assert!(!dot.contains("1 -> 0"));

        let dot = write_dot(&fixtures::directed_cycle(3), "d");
        assert!(dot.contains("0 -> 1;"));
        assert!(dot.contains("2 -> 0;"));
    }
}
