//! graph6 encoding: a size prefix followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte
//! (each byte offset by 63).

use thiserror::Error;

use crate::graph::{Edge, SimpleGraph};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated graph6 string: expected {expected} bytes, found {found} (offset {found})")]
    Truncated { expected: usize, found: usize },
    #[error("unexpected trailing data at offset {offset}")]
    Trailing { offset: usize },
    #[error("non-zero padding bits in final byte at offset {offset}")]
    Padding { offset: usize },
    #[error("vertex count {0} exceeds the graph6 limit")]
    TooLarge(usize),
}

impl Graph6Error {
    /// Byte offset (relative to the start of the input line) where the
    /// problem was detected.
    pub fn offset(&self) -> usize {
        match *self {
            Graph6Error::Empty | Graph6Error::TooLarge(_) => 0,
            Graph6Error::InvalidByte { offset, .. } => offset,
            Graph6Error::Truncated { found, .. } => found,
            Graph6Error::Trailing { offset } => offset,
            Graph6Error::Padding { offset } => offset,
        }
    }
}

fn size_prefix(n: usize) -> Result<Vec<u8>, Graph6Error> {
    if n <= 62 {
        Ok(vec![n as u8 + 63])
    } else if n <= 258_047 {
        Ok(vec![126, ((n >> 12) & 63) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63])
    } else if n <= 68_719_476_735 {
        let mut out = vec![126, 126];
        for shift in (0..6).rev() {
            out.push(((n >> (6 * shift)) & 63) as u8 + 63);
        }
        Ok(out)
    } else {
        Err(Graph6Error::TooLarge(n))
    }
}

/// Encodes `g` without the optional `>>graph6<<` header.
pub fn write_graph6(g: &SimpleGraph) -> String {
    let bytes = encode_bytes(g.vertex_count(), g.edges());
    String::from_utf8(bytes).expect("graph6 output is ASCII")
}

/// Encodes an edge list directly; shared with the canonical labeling search.
pub(crate) fn encode_bytes(n: usize, edges: &[Edge]) -> Vec<u8> {
    let mut out = size_prefix(n).expect("vertex count within graph6 limits");
    let nbits = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u8; nbits.div_ceil(6)];
    for &(u, v) in edges {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        let k = j * (j - 1) / 2 + i;
        bits[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(bits.into_iter().map(|b| b + 63));
    out
}

/// Decodes one graph6 string. Surrounding whitespace and an optional
/// `>>graph6<<` header are accepted.
pub fn read_graph6(text: &str) -> Result<SimpleGraph, Graph6Error> {
    let lead = text.len() - text.trim_start().len();
    let mut s = text.trim();
    let mut base = lead;
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
        base += HEADER.len();
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { offset: base + i, byte: b });
        }
    }
    let need = |len: usize| -> Result<(), Graph6Error> {
        if bytes.len() < len {
            Err(Graph6Error::Truncated { expected: base + len, found: base + bytes.len() })
        } else {
            Ok(())
        }
    };
    let digit = |i: usize| (bytes[i] - 63) as usize;
    let (n, mut pos) = if bytes[0] != 126 {
        (digit(0), 1)
    } else {
        need(2)?;
        if bytes[1] != 126 {
            need(4)?;
            ((digit(1) << 12) | (digit(2) << 6) | digit(3), 4)
        } else {
            need(8)?;
            ((2..8).fold(0usize, |acc, i| (acc << 6) | digit(i)), 8)
        }
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    need(pos + nbytes)?;
    if bytes.len() > pos + nbytes {
        return Err(Graph6Error::Trailing { offset: base + pos + nbytes });
    }
    if nbits % 6 != 0 {
        let last = digit(pos + nbytes - 1);
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Graph6Error::Padding { offset: base + pos + nbytes - 1 });
        }
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (digit(pos + k / 6) >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    pos += nbytes;
    debug_assert_eq!(pos, bytes.len());
    Ok(SimpleGraph::new(n, edges).expect("graph6 bits describe a simple graph"))
}
