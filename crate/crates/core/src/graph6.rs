//! graph6 encoding: an order header followed by the upper triangle of the
//! adjacency matrix, column by column (`x(0,1), x(0,2), x(1,2), x(0,3), …`),
//! packed big-endian into 6-bit groups, each group offset by 63.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Optional file header written by nauty tools.
pub const HEADER: &str = ">>graph6<<";

/// Orders above this are refused; dense bitset storage is quadratic.
pub const MAX_GRAPH6_ORDER: usize = 1 << 16;

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64> {
    let b = *bytes
        .get(offset)
        .ok_or_else(|| err(offset, "truncated input"))?;
    if !(63..=126).contains(&b) {
        return Err(err(offset, format!("byte {b:#04x} outside the printable range 63..=126")));
    }
    Ok((b - 63) as u64)
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize)> {
    let first = sextet(bytes, 0)?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    let (start, width) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    let mut n = 0u64;
    for k in 0..width {
        n = (n << 6) | sextet(bytes, start + k)?;
    }
    Ok((n as usize, start + width))
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and a trailing
/// line terminator are tolerated; anything else after the edge bits is an
/// error.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let base = if line.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = line[base..].trim_end_matches(['\n', '\r']).as_bytes();
    let at = |o: usize| o + base;
    if bytes.is_empty() {
        return Err(err(at(0), "empty input"));
    }
    let (n, header_len) = decode_order(bytes).map_err(|e| match e {
        Error::Graph6 { offset, message } => err(at(offset), message),
        other => other,
    })?;
    if n == 0 {
        return Err(err(at(0), "graph has no vertices"));
    }
    if n > MAX_GRAPH6_ORDER {
        return Err(Error::Capacity {
            what: "graph6 order",
            n,
            limit: MAX_GRAPH6_ORDER,
        });
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() < nbytes {
        return Err(err(at(bytes.len()), format!("truncated: expected {nbytes} edge bytes, got {}", body.len())));
    }
    if body.len() > nbytes {
        return Err(err(at(header_len + nbytes), "trailing bytes after edge data"));
    }
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    let (mut i, mut j) = (0usize, 1usize);
    for (k, _) in body.iter().enumerate() {
        let value = sextet(body, k).map_err(|_| {
            err(at(header_len + k), format!("byte {:#04x} outside the printable range 63..=126", body[k]))
        })?;
        for bit in (0..6).rev() {
            let pos = k * 6 + (5 - bit);
            let set = (value >> bit) & 1 == 1;
            if pos >= nbits {
                if set {
                    return Err(err(at(header_len + k), "non-zero padding bits"));
                }
                continue;
            }
            if set {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::with_capacity(8 + n * n / 12);
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        let width = if n <= 258_047 {
            3
        } else {
            out.push(126);
            6
        };
        for k in (0..width).rev() {
            out.push(((n >> (6 * k)) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
