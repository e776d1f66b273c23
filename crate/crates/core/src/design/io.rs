//! Plain-text formats for triple systems, graphs and embedding certificates.
//!
//! Output is byte-stable: labels, blocks and edges are written in natural
//! label order (digit runs compare numerically), so writing, reading and
//! writing again gives the same bytes.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::graph::LabeledGraph;
use super::partition::{EmbeddingCertificate, PointPartition};
use super::system::{Block, Point, TripleSystem};
use super::DesignError;

/// Orders labels so that `2 < 10` and `3_4 < 3_10 < inf_1`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let nx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ny = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let tx = trim_zeros(&x[..nx]);
                let ty = trim_zeros(&y[..ny]);
                let ord = tx.len().cmp(&ty.len()).then_with(|| tx.cmp(ty));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[nx..];
                y = &y[ny..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let k = s.iter().take_while(|&&c| c == b'0').count();
    &s[k.min(s.len().saturating_sub(1))..]
}

fn sorted_labels<'a>(labels: impl IntoIterator<Item = &'a str>) -> Vec<&'a str> {
    let mut v: Vec<&str> = labels.into_iter().collect();
    v.sort_by(|a, b| natural_cmp(a, b));
    v
}

fn block_labels<'a>(ts: &'a TripleSystem, b: &Block) -> [&'a str; 3] {
    let mut l = b.points().map(|p| ts.label(p));
    l.sort_by(|a, b| natural_cmp(a, b));
    l
}

fn cmp_triples(a: &[&str; 3], b: &[&str; 3]) -> Ordering {
    a.iter().zip(b).map(|(x, y)| natural_cmp(x, y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

pub fn write_sts(ts: &TripleSystem) -> String {
    let mut out = format!("v={}\n", ts.v());
    let mut rows: Vec<[&str; 3]> = ts.blocks().iter().map(|b| block_labels(ts, b)).collect();
    rows.sort_by(cmp_triples);
    for [x, y, z] in rows {
        let _ = writeln!(out, "{x} {y} {z}");
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> DesignError {
    DesignError::Parse { line, msg: msg.into() }
}

/// Reads the `v=` header and block lines. Points are ordered naturally by label.
pub fn parse_sts(text: &str) -> Result<TripleSystem, DesignError> {
    parse_sts_lines(content_lines(text))
}

fn parse_sts_lines<'a>(mut lines: impl Iterator<Item = (usize, &'a str)>) -> Result<TripleSystem, DesignError> {
    let (ln, header) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let v: usize = header
        .strip_prefix("v=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| parse_err(ln, format!("expected `v=<int>`, found `{header}`")))?;
    let mut triples: Vec<[String; 3]> = Vec::new();
    let mut seen = BTreeSet::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [a, b, c] = toks[..] else {
            return Err(parse_err(ln, format!("expected three labels, found `{line}`")));
        };
        if a == b || b == c || a == c {
            return Err(parse_err(ln, format!("repeated point in block `{line}`")));
        }
        for t in [a, b, c] {
            seen.insert(t.to_string());
        }
        triples.push([a.to_string(), b.to_string(), c.to_string()]);
    }
    if seen.len() != v {
        return Err(parse_err(ln, format!("header says v={v} but blocks use {} points", seen.len())));
    }
    let mut labels: Vec<String> = seen.into_iter().collect();
    labels.sort_by(|a, b| natural_cmp(a, b));
    TripleSystem::from_labeled(&labels, &triples)
}

fn write_label_line(out: &mut String, tag: &str, ts: &TripleSystem, pts: &[Point]) {
    let labels = sorted_labels(pts.iter().map(|&p| ts.label(p)));
    out.push_str(tag);
    for l in labels {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
}

fn write_edges(out: &mut String, g: &LabeledGraph) {
    let mut rows: Vec<[&str; 2]> = g
        .edges()
        .iter()
        .map(|&(x, y)| {
            let mut e = [g.vertices()[x].as_str(), g.vertices()[y].as_str()];
            e.sort_by(|a, b| natural_cmp(a, b));
            e
        })
        .collect();
    rows.sort_by(|a, b| natural_cmp(a[0], b[0]).then_with(|| natural_cmp(a[1], b[1])));
    for [x, y] in rows {
        let _ = writeln!(out, "{x} {y}");
    }
}

pub fn write_certificate(cert: &EmbeddingCertificate) -> String {
    let mut out = String::new();
    write_label_line(&mut out, "P:", &cert.ts, cert.partition.played());
    write_label_line(&mut out, "A:", &cert.ts, cert.partition.available());
    write_label_line(&mut out, "U:", &cert.ts, cert.partition.unplayable());
    out.push_str("EDGES:\n");
    write_edges(&mut out, &cert.graph);
    out.push_str("BLOCKS:\n");
    out.push_str(&write_sts(&cert.ts));
    out
}

fn section<'a>(ln: usize, line: &'a str, tag: &str) -> Result<Vec<&'a str>, DesignError> {
    line.strip_prefix(tag)
        .map(|rest| rest.split_whitespace().collect())
        .ok_or_else(|| parse_err(ln, format!("expected `{tag}` section, found `{line}`")))
}

pub fn parse_certificate(text: &str) -> Result<EmbeddingCertificate, DesignError> {
    let mut lines = content_lines(text).peekable();
    let mut next = |tag: &str| -> Result<(usize, &str), DesignError> {
        lines.next().ok_or_else(|| parse_err(0, format!("missing `{tag}` section")))
    };
    let (l1, s1) = next("P:")?;
    let p = section(l1, s1, "P:")?;
    let (l2, s2) = next("A:")?;
    let a = section(l2, s2, "A:")?;
    let (l3, s3) = next("U:")?;
    let u = section(l3, s3, "U:")?;
    let (l4, s4) = next("EDGES:")?;
    if s4 != "EDGES:" {
        return Err(parse_err(l4, format!("expected `EDGES:`, found `{s4}`")));
    }
    let mut edges = Vec::new();
    loop {
        let (ln, line) = lines.next().ok_or_else(|| parse_err(0, "missing `BLOCKS:` section"))?;
        if line == "BLOCKS:" {
            break;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [x, y] = toks[..] else {
            return Err(parse_err(ln, format!("expected an edge `x y`, found `{line}`")));
        };
        edges.push((x, y));
    }
    let ts = parse_sts_lines(lines)?;
    let part = PointPartition::from_labels(&ts, &p, &a, &u)?;
    let vertices: Vec<&str> = sorted_labels(a.iter().copied());
    let graph = LabeledGraph::from_labeled_edges(&vertices, &edges)?;
    EmbeddingCertificate::new(ts, part, graph)
}

pub fn write_graph(g: &LabeledGraph) -> String {
    let mut out = String::from("VERTICES:");
    for l in sorted_labels(g.vertices().iter().map(String::as_str)) {
        out.push(' ');
        out.push_str(l);
    }
    out.push_str("\nEDGES:\n");
    write_edges(&mut out, g);
    out
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph, DesignError> {
    let mut lines = content_lines(text);
    let (ln, first) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let vertices = section(ln, first, "VERTICES:")?;
    let mut edges = Vec::new();
    let mut in_edges = false;
    for (ln, line) in lines {
        if line == "EDGES:" && !in_edges {
            in_edges = true;
            continue;
        }
        if !in_edges {
            return Err(parse_err(ln, "expected `EDGES:`"));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [x, y] = toks[..] else {
            return Err(parse_err(ln, format!("expected an edge `x y`, found `{line}`")));
        };
        edges.push((x, y));
    }
    let vertices = sorted_labels(vertices);
    LabeledGraph::from_labeled_edges(&vertices, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::fixtures;

    #[test]
    fn natural_order() {
        let mut v = vec!["10", "2", "inf_1", "3_10", "3_4", "1"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["1", "2", "3_4", "3_10", "10", "inf_1"]);
        assert_ne!(natural_cmp("007", "7"), Ordering::Equal);
    }

    #[test]
    fn sts_round_trip_is_byte_stable() {
        let ts = fixtures::sts9();
        let text = write_sts(&ts);
        assert!(text.starts_with("v=9\n1 2 3\n"));
        let back = parse_sts(&text).unwrap();
        assert_eq!(write_sts(&back), text);
        assert!(back.is_sts());
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(parse_sts("v=3\n1 2\n"), Err(DesignError::Parse { line: 2, .. })));
        assert!(parse_sts("w=3\n1 2 3\n").is_err());
        assert!(parse_sts("v=4\n1 2 3\n").is_err());
        assert!(parse_sts("# comment\nv=3\n1 2 3 # trailing\n").is_ok());
    }

    #[test]
    fn graph_round_trip() {
        let g = LabeledGraph::from_labeled_edges(&["b", "a", "c"], &[("c", "a"), ("a", "b")]).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "VERTICES: a b c\nEDGES:\na b\na c\n");
        assert_eq!(write_graph(&parse_graph(&text).unwrap()), text);
    }
}
