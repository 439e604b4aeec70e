//! graph6 encoding, as produced by nauty's `geng` and `showg`.
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix,
//! column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ..`), packed big-endian
//! into 6-bit groups, each group offset by 63. Orders above 62 use the
//! `~` prefix and three further bytes. Only orders up to
//! [`MAX_ORDER`](crate::graph::MAX_ORDER) are accepted.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse { offset, reason: reason.into() }
}

/// Decodes one graph6 line. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored; byte offsets in errors refer to the
/// trimmed text after the header.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim();
    let body = line.strip_prefix(HEADER).unwrap_or(line).as_bytes();

    if body.is_empty() {
        return Err(err(0, "empty input"));
    }
    if body[0] == b':' || body[0] == b'&' {
        return Err(err(0, "sparse6 and digraph6 are not supported"));
    }
    for (i, &c) in body.iter().enumerate() {
        if !(63..=126).contains(&c) {
            return Err(err(i, format!("byte {c:#04x} outside the printable graph6 range")));
        }
    }

    let (n, header_len) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else {
        if body.len() >= 2 && body[1] == 126 {
            return Err(err(1, "8-byte order encoding exceeds supported capacity"));
        }
        if body.len() < 4 {
            return Err(err(body.len(), "truncated order field"));
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &c| (acc << 6) | (c - 63) as usize);
        if n <= 62 {
            return Err(err(1, format!("order {n} must use the short encoding")));
        }
        (n, 4)
    };
    if n > MAX_ORDER {
        return Err(Error::capacity("graph6 order", n, MAX_ORDER));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let payload = &body[header_len..];
    if payload.len() < need {
        return Err(err(
            header_len + payload.len(),
            format!("truncated payload: expected {need} bytes, found {}", payload.len()),
        ));
    }
    if payload.len() > need {
        return Err(err(header_len + need, "trailing bytes after payload"));
    }

    let mut g = Graph::new(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = payload[need - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(header_len + need - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

impl Graph {
    pub fn from_graph6(line: &str) -> Result<Graph> {
        parse_graph6(line)
    }

    pub fn to_graph6(&self) -> String {
        encode_graph6(self)
    }
}
