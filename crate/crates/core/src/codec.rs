//! digraph6 and the plain-text mixed-graph format.
//!
//! digraph6 stores the `n x n` adjacency bit matrix row by row, six bits per
//! printable character offset by 63, after a size character `n + 63`. A
//! mixed graph goes in with every edge written as a pair of opposite arcs,
//! and comes out with every symmetric off-diagonal pair read as an edge. The
//! standard form starts with `&`; the bare form omits it.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, MixedGraph};

/// Largest order encodable with a one-character size field.
pub const MAX_DIGRAPH6_ORDER: usize = 62;

const HEADER: &str = ">>digraph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("expected {expected} payload characters, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("character {0:?} outside the printable range 63..=126")]
    BadCharacter(char),
    #[error("order {0} needs a multi-byte size field (max {MAX_DIGRAPH6_ORDER})")]
    SizeOverflow(usize),
    #[error("graph has both edges and digons; digraph6 cannot tell them apart")]
    HasEdgeDigonAmbiguity,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn decode_digraph6(s: &str) -> Result<MixedGraph, CodecError> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let s = s.strip_prefix('&').unwrap_or(s);
    let mut chars = s.chars();
    let first = chars.next().ok_or(CodecError::BadLength { expected: 1, found: 0 })?;
    let size = sixbits(first)?;
    if size == 63 {
        return Err(CodecError::SizeOverflow(size as usize));
    }
    let n = size as usize;
    let payload: Vec<char> = chars.collect();
    let expected = (n * n).div_ceil(6);
    if payload.len() != expected {
        return Err(CodecError::BadLength { expected, found: payload.len() });
    }
    let mut bits = Vec::with_capacity(expected * 6);
    for &c in &payload {
        let v = sixbits(c)?;
        bits.extend((0..6).rev().map(|b| (v >> b) & 1 == 1));
    }
    let adj = |u: usize, v: usize| bits[u * n + v];
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if !adj(u, v) {
                continue;
            }
            if u != v && adj(v, u) {
                if u < v {
                    edges.push((u, v));
                }
            } else {
                arcs.push((u, v));
            }
        }
    }
    Ok(MixedGraph::build(n, edges, arcs)?)
}

/// Encode with edges as digons. `emit_amp` selects the standard `&`-prefixed
/// form; without it the bare form is produced.
pub fn encode_digraph6(g: &MixedGraph, emit_amp: bool) -> Result<String, CodecError> {
    let n = g.order();
    if n > MAX_DIGRAPH6_ORDER {
        return Err(CodecError::SizeOverflow(n));
    }
    if !g.edges().is_empty() && g.has_digons() {
        return Err(CodecError::HasEdgeDigonAmbiguity);
    }
    let mut bits = vec![false; n * n];
    for &(u, v) in g.edges() {
        bits[u * n + v] = true;
        bits[v * n + u] = true;
    }
    for &(u, v) in g.arcs() {
        bits[u * n + v] = true;
    }
    bits.resize((n * n).div_ceil(6) * 6, false);
    let mut out = String::with_capacity(2 + bits.len() / 6);
    if emit_amp {
        out.push('&');
    }
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let v = chunk.iter().fold(0u8, |acc, &b| (acc << 1) | b as u8);
        out.push((v + 63) as char);
    }
    Ok(out)
}

fn sixbits(c: char) -> Result<u8, CodecError> {
    match c as u32 {
        63..=126 => Ok(c as u8 - 63),
        _ => Err(CodecError::BadCharacter(c)),
    }
}

/// Parse the plain-text format: `mixed <n>`, then `e u v` and `a u v` lines.
/// Blank lines and `#` comments are ignored.
pub fn parse_text(src: &str) -> Result<MixedGraph, CodecError> {
    let mut n = None;
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| CodecError::Parse { line: i + 1, msg: msg.to_string() };
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| err(&format!("bad integer {t:?}")));
        match (n, toks.as_slice()) {
            (None, ["mixed", count]) => n = Some(num(count)?),
            (None, _) => return Err(err("expected `mixed <n>` header")),
            (Some(_), ["e", u, v]) => edges.push((num(u)?, num(v)?)),
            (Some(_), ["a", u, v]) => arcs.push((num(u)?, num(v)?)),
            (Some(_), _) => return Err(err(&format!("unrecognized line {line:?}"))),
        }
    }
    let n = n.ok_or(CodecError::Parse { line: 0, msg: "empty input".into() })?;
    Ok(MixedGraph::build(n, edges, arcs)?)
}

pub fn write_text(g: &MixedGraph) -> String {
    let mut s = format!("mixed {}\n", g.order());
    for &(u, v) in g.edges() {
        writeln!(s, "e {u} {v}").unwrap();
    }
    for &(u, v) in g.arcs() {
        writeln!(s, "a {u} {v}").unwrap();
    }
    s
}

/// Read either format: text when the first meaningful line starts with
/// `mixed`, otherwise a single digraph6 line.
pub fn read_graph(src: &str) -> Result<MixedGraph, CodecError> {
    let first = src.lines().map(|l| l.split('#').next().unwrap().trim()).find(|l| !l.is_empty());
    match first {
        Some(l) if l.starts_with("mixed") => parse_text(src),
        Some(l) => decode_digraph6(l),
        None => Err(CodecError::Parse { line: 0, msg: "empty input".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_packs_by_hand() {
        // Bits 0110 padded to 011000 = 24, plus 63 is 'W'; size char 2+63 = 'A'.
        let g = MixedGraph::build(2, [(0, 1)], []).unwrap();
        assert_eq!(encode_digraph6(&g, false).unwrap(), "AW");
        assert_eq!(encode_digraph6(&g, true).unwrap(), "&AW");
        assert_eq!(decode_digraph6("&AW").unwrap(), g);
        assert_eq!(decode_digraph6(">>digraph6<<&AW").unwrap(), g);
    }

    #[test]
    fn decode_errors() {
        assert_eq!(decode_digraph6("AWW"), Err(CodecError::BadLength { expected: 1, found: 2 }));
        assert_eq!(decode_digraph6("A!"), Err(CodecError::BadCharacter('!')));
        assert_eq!(decode_digraph6("~AAAA"), Err(CodecError::SizeOverflow(63)));
    }

    #[test]
    fn edges_with_digon_refuse_to_encode() {
        let g = MixedGraph::build(4, [(0, 1)], [(2, 3), (3, 2)]).unwrap();
        assert_eq!(encode_digraph6(&g, true), Err(CodecError::HasEdgeDigonAmbiguity));
    }

    #[test]
    fn pure_digon_decodes_as_edge() {
        let g = MixedGraph::build(2, [], [(0, 1), (1, 0)]).unwrap();
        let s = encode_digraph6(&g, true).unwrap();
        let back = decode_digraph6(&s).unwrap();
        assert_eq!(back.edges(), &[(0, 1)]);
        assert!(back.arcs().is_empty());
    }

    #[test]
    fn text_round_trip_and_comments() {
        let src = "# a path\nmixed 3\n\ne 0 1   # edge\na 1 2\na 2 2\n";
        let g = parse_text(src).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.arcs(), &[(1, 2), (2, 2)]);
        assert_eq!(parse_text(&write_text(&g)).unwrap(), g);
    }

    #[test]
    fn text_errors() {
        assert!(matches!(parse_text("e 0 1"), Err(CodecError::Parse { line: 1, .. })));
        assert!(matches!(parse_text("mixed 2\nx 0 1"), Err(CodecError::Parse { line: 2, .. })));
        assert!(matches!(
            parse_text("mixed 2\ne 0 1\na 0 1\na 1 0"),
            Err(CodecError::Graph(GraphError::EdgeDigonClash { .. }))
        ));
    }
}
