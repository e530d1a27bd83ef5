//! Plain-text file formats.
//!
//! ```text
//! # two arcs                 matrix 2            bipartite 2 1
//! digraph 3                  1 *                 w0 b0
//! 0 1                        * 0                 w1 b0
//! 1 2                                            embed w0 w1
//!                                                list b0 b0
//! ```
//!
//! Blank lines and everything after `#` are ignored. The header is the first
//! remaining line. Line numbers in errors are 1-based.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::bipartite::{BipartiteInstance, Vertex};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::matrix::{Entry, PartitionMatrix};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, split into tokens.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_err(line, format!("expected a number, found {token:?}")))
}

fn in_range(line: usize, index: usize, bound: usize) -> Result<usize> {
    if index < bound {
        Ok(index)
    } else {
        Err(Error::Range { line, index, bound })
    }
}

/// Reads the header `keyword <numbers...>` and returns the numbers plus
/// the remaining lines.
fn header<'a, I>(lines: &mut I, keyword: &str, count: usize) -> Result<Vec<usize>>
where
    I: Iterator<Item = (usize, Vec<&'a str>)>,
{
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| parse_err(0, format!("missing \"{keyword}\" header")))?;
    if tokens[0] != keyword || tokens.len() != count + 1 {
        return Err(parse_err(
            line,
            format!("expected header \"{keyword}\" with {count} size(s)"),
        ));
    }
    tokens[1..].iter().map(|t| number(line, t)).collect()
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "digraph", 1)?[0];
    let mut d = Digraph::empty(n);
    for (line, tokens) in lines {
        let [u, v] = tokens[..] else {
            return Err(parse_err(line, "expected an arc \"u v\""));
        };
        let u = in_range(line, number(line, u)?, n)?;
        let v = in_range(line, number(line, v)?, n)?;
        if u == v {
            return Err(parse_err(line, format!("loop at {u}")));
        }
        if d.has_arc(u, v) {
            return Err(parse_err(line, format!("arc {u} {v} repeated")));
        }
        d.add_arc(u, v);
    }
    Ok(d)
}

pub fn write_digraph(d: &Digraph) -> String {
    let mut out = format!("digraph {}\n", d.n());
    for (u, v) in d.arcs() {
        writeln!(out, "{u} {v}").expect("writing to a string");
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<PartitionMatrix> {
    let mut lines = content_lines(text);
    let m = header(&mut lines, "matrix", 1)?[0];
    let mut rows = Vec::with_capacity(m);
    let mut last = 0;
    for (line, tokens) in lines {
        last = line;
        if rows.len() == m {
            return Err(parse_err(line, format!("more than {m} rows")));
        }
        // rows may also be written without spaces, as in "1*0"
        let symbols: Vec<String> = if tokens.len() == 1 && m > 1 {
            tokens[0].chars().map(String::from).collect()
        } else {
            tokens.iter().map(|t| t.to_string()).collect()
        };
        if symbols.len() != m {
            return Err(parse_err(line, format!("expected {m} entries, found {}", symbols.len())));
        }
        let row = symbols
            .iter()
            .map(|s| {
                Entry::from_symbol(s)
                    .ok_or_else(|| parse_err(line, format!("entry {s:?} is not 0, 1 or *")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != m {
        return Err(parse_err(last, format!("expected {m} rows, found {}", rows.len())));
    }
    PartitionMatrix::from_rows(rows)
}

pub fn write_matrix(m: &PartitionMatrix) -> String {
    let mut out = format!("matrix {}\n", m.m());
    for row in m.rows() {
        let symbols: Vec<String> = row.iter().map(|e| e.symbol().to_string()).collect();
        out.push_str(&symbols.join(" "));
        out.push('\n');
    }
    out
}

fn vertex(line: usize, token: &str) -> Result<Vertex> {
    token.parse().map_err(|e: String| parse_err(line, e))
}

/// A vertex of the instance itself, range-checked against its sides.
fn own_vertex(line: usize, token: &str, whites: usize, blacks: usize) -> Result<Vertex> {
    let v = vertex(line, token)?;
    match v {
        Vertex::White(i) => in_range(line, i, whites)?,
        Vertex::Black(j) => in_range(line, j, blacks)?,
    };
    Ok(v)
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteInstance> {
    let mut lines = content_lines(text);
    let sizes = header(&mut lines, "bipartite", 2)?;
    let (p, q) = (sizes[0], sizes[1]);
    let mut edges = Vec::new();
    let mut embedding = Vec::new();
    let mut lists = BTreeMap::new();
    for (line, tokens) in lines {
        match tokens[0] {
            "embed" => {
                let [_, x, g] = tokens[..] else {
                    return Err(parse_err(line, "expected \"embed <target vertex> <vertex>\""));
                };
                let (x, g) = (vertex(line, x)?, own_vertex(line, g, p, q)?);
                embedding.push((x, g));
            }
            "list" => {
                if tokens.len() < 2 {
                    return Err(parse_err(line, "expected \"list <vertex> <targets...>\""));
                }
                let v = own_vertex(line, tokens[1], p, q)?;
                let targets = tokens[2..]
                    .iter()
                    .map(|t| vertex(line, t))
                    .collect::<Result<Vec<_>>>()?;
                if lists.insert(v, targets).is_some() {
                    return Err(parse_err(line, format!("second list for {v}")));
                }
            }
            _ => {
                let [a, b] = tokens[..] else {
                    return Err(parse_err(line, "expected an edge \"w<i> b<j>\""));
                };
                match (own_vertex(line, a, p, q)?, own_vertex(line, b, p, q)?) {
                    (Vertex::White(w), Vertex::Black(b)) => {
                        if edges.contains(&(w, b)) {
                            return Err(parse_err(line, format!("edge w{w} b{b} repeated")));
                        }
                        edges.push((w, b));
                    }
                    _ => return Err(parse_err(line, "edges join a white vertex to a black one")),
                }
            }
        }
    }
    BipartiteInstance::new(p, q, edges)?
        .with_embedding(embedding)?
        .with_lists(lists)
}

pub fn write_bipartite(inst: &BipartiteInstance) -> String {
    let mut out = format!("bipartite {} {}\n", inst.whites(), inst.blacks());
    for (w, b) in inst.edges() {
        writeln!(out, "w{w} b{b}").expect("writing to a string");
    }
    for (x, g) in inst.embedding() {
        writeln!(out, "embed {x} {g}").expect("writing to a string");
    }
    for (v, targets) in inst.lists() {
        write!(out, "list {v}").expect("writing to a string");
        for t in targets {
            write!(out, " {t}").expect("writing to a string");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_single_arc() {
        assert_eq!(
            parse_digraph("digraph 2\n0 1\n").unwrap(),
            Digraph::transitive_tournament(2)
        );
    }

    #[test]
    fn reads_a_one_by_one_matrix() {
        assert_eq!(
            parse_matrix("matrix 1\n1\n").unwrap(),
            PartitionMatrix::filled(1, Entry::One)
        );
    }

    #[test]
    fn compact_matrix_rows() {
        assert_eq!(
            parse_matrix("matrix 2\n1*\n* 0\n").unwrap(),
            PartitionMatrix::from_strs(&["1*", "*0"]).unwrap()
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header follows\n\ndigraph 3 # three vertices\n0 2\n\n# done\n";
        assert_eq!(parse_digraph(text).unwrap().arc_count(), 1);
    }

    #[test]
    fn digraph_errors_carry_lines() {
        assert_eq!(
            parse_digraph("digraph 2\n0 2\n"),
            Err(Error::Range { line: 2, index: 2, bound: 2 })
        );
        assert!(matches!(parse_digraph("digraph 2\n1 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_digraph("digraph 2\n0 1\n0 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_digraph("matrix 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_digraph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_digraph("digraph x\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn matrix_errors() {
        assert!(matches!(parse_matrix("matrix 2\n1 *\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrix("matrix 1\n2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_matrix("matrix 1\n1\n0\n"), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn bipartite_with_marks_and_lists() {
        let text = "bipartite 2 1\nw0 b0\nw1 b0\nembed w0 w1\nembed b0 b0\nlist b0 b0\n";
        let inst = parse_bipartite(text).unwrap();
        assert_eq!(inst.edges(), &[(0, 0), (1, 0)]);
        assert_eq!(inst.embedding_of(&BipartiteInstance::single_edge()).unwrap(), vec![1, 2]);
        assert_eq!(inst.lists()[&Vertex::Black(0)], vec![Vertex::Black(0)]);
        assert_eq!(write_bipartite(&inst), text);
    }

    #[test]
    fn bipartite_errors() {
        assert_eq!(
            parse_bipartite("bipartite 1 1\nw0 b3\n"),
            Err(Error::Range { line: 2, index: 3, bound: 1 })
        );
        assert!(matches!(parse_bipartite("bipartite 1 1\nb0 w0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_bipartite("bipartite 1 1\nq0 b0\n"), Err(Error::Parse { line: 2, .. })));
    }
}
