//! graph6 text encoding (header-less). [`Graph`] handles orders up to 16;
//! [`DenseGraph`] uses the long order prefix for anything larger.

use super::{DenseGraph, Graph, MAX_ORDER};
use crate::error::{Error, Result};
use std::io::{BufRead, Write};

/// Encodes the canonical form of `g`.
pub fn emit_graph6(g: &Graph) -> String {
    encode(&g.canonical())
}

/// Encodes `g` exactly as labeled.
pub fn graph6_labeled(g: &Graph) -> String {
    encode(g)
}

fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(2 + n * n / 12);
    out.push((63 + n as u8) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((63 + acc) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((63 + (acc << (6 - filled))) as char);
    }
    out
}

/// Decodes one graph6 line. Trailing whitespace is ignored; the graph is
/// returned as labeled in the input (not canonicalized).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    parse_at(line, 0)
}

fn parse_at(line: &str, base: usize) -> Result<Graph> {
    let bytes = line.trim_end().as_bytes();
    let err = |offset: usize, reason: String| Error::Graph6 {
        offset: base + offset,
        reason,
    };
    let Some(&first) = bytes.first() else {
        return Err(err(0, "empty input".into()));
    };
    if !(63..=126).contains(&first) {
        return Err(err(0, format!("invalid order byte {first}")));
    }
    if first == 126 {
        return Err(err(0, format!("order above {MAX_ORDER} not supported")));
    }
    let n = (first - 63) as usize;
    if n > MAX_ORDER {
        return Err(err(0, format!("order {n} above {MAX_ORDER} not supported")));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(err(
            bytes.len().min(1 + nbytes),
            format!("expected {} data bytes for order {n}, found {}", nbytes, bytes.len() - 1),
        ));
    }
    let mut g = Graph::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let offset = 1 + k / 6;
            let byte = bytes[offset];
            if !(63..=126).contains(&byte) {
                return Err(err(offset, format!("invalid data byte {byte}")));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let last = bytes[nbytes];
        if !(63..=126).contains(&last) {
            return Err(err(nbytes, format!("invalid data byte {last}")));
        }
        let pad = 6 - nbits % 6;
        if (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(err(nbytes, "non-zero padding bits".into()));
        }
    }
    Ok(g)
}

/// Parses a newline-delimited graph6 corpus. Blank lines are skipped; error
/// offsets are byte offsets into the whole input.
pub fn parse_graph6_lines<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut base = 0;
    for line in reader.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            graphs.push(parse_at(&line, base)?);
        }
        base += line.len() + 1;
    }
    Ok(graphs)
}

pub fn write_graph6_lines<W: Write>(mut out: W, graphs: &[Graph]) -> Result<()> {
    for g in graphs {
        writeln!(out, "{}", emit_graph6(g))?;
    }
    Ok(())
}

/// Encodes a graph of any order (up to 258047) as labeled.
pub fn dense_graph6(g: &DenseGraph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((63 + n as u8) as char);
    } else {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((63 + ((n >> shift) & 63) as u8) as char);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((63 + acc) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((63 + (acc << (6 - filled))) as char);
    }
    out
}

/// Decodes one graph6 line of any order up to 258047, as labeled.
pub fn parse_graph6_dense(line: &str) -> Result<DenseGraph> {
    let bytes = line.trim_end().as_bytes();
    let err = |offset: usize, reason: String| Error::Graph6 { offset, reason };
    if let Some(&b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        let offset = bytes.iter().position(|x| *x == b).unwrap_or(0);
        return Err(err(offset, format!("invalid byte {b}")));
    }
    let (n, start) = match bytes {
        [] => return Err(err(0, "empty input".into())),
        [126, 126, ..] => return Err(err(1, "orders above 258047 not supported".into())),
        [126, rest @ ..] if rest.len() >= 3 => (
            rest[..3].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize),
            4,
        ),
        [126, ..] => return Err(err(1, "truncated order".into())),
        [first, ..] => ((first - 63) as usize, 1),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != start + nbytes {
        return Err(err(
            bytes.len().min(start + nbytes),
            format!("expected {nbytes} data bytes for order {n}, found {}", bytes.len() - start),
        ));
    }
    let mut g = DenseGraph::new(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (bytes[start + k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}
