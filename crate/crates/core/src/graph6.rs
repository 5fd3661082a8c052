//! The graph6 text encoding (printable ASCII 63..=126).
//!
//! A record is a size header followed by the upper triangle of the adjacency
//! matrix in column order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits
//! per byte, most significant bit first, each byte offset by 63.

use crate::error::GraphError;
use crate::graph::Graph;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";
const MAX_SMALL: usize = 62;
const MAX_MEDIUM: usize = 258_047;
const MAX_LARGE: usize = (1 << 36) - 1;

fn malformed(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 record. A leading `>>graph6<<` header and trailing
/// line terminators are accepted. Edges are indexed in column order.
pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let (start, body) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if let Some(i) = body.iter().position(|b| !(OFFSET..=126).contains(b)) {
        return Err(malformed(
            start + i,
            format!("byte {:#04x} outside the graph6 alphabet", body[i]),
        ));
    }
    let six = |i: usize| (body[i] - OFFSET) as usize;

    let (n, mut pos) = match body {
        [] => return Err(malformed(start, "empty record")),
        [126, 126, ..] => {
            if body.len() < 8 {
                return Err(malformed(start + body.len(), "truncated 36-bit size"));
            }
            ((2..8).fold(0, |acc, i| (acc << 6) | six(i)), 8)
        }
        [126, ..] => {
            if body.len() < 4 {
                return Err(malformed(start + body.len(), "truncated 18-bit size"));
            }
            ((1..4).fold(0, |acc, i| (acc << 6) | six(i)), 4)
        }
        _ => (six(0), 1),
    };

    let bits = n * n.saturating_sub(1) / 2;
    let expected = pos + bits.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(
            start + body.len().min(expected),
            format!("expected {expected} bytes for n={n}, found {}", body.len()),
        ));
    }

    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(pos + k / 6);
            if byte >> (5 - k % 6) & 1 == 1 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        pos += bits / 6;
        let pad = 6 - bits % 6;
        if six(pos) & ((1 << pad) - 1) != 0 {
            return Err(malformed(start + pos, "non-zero padding bits"));
        }
    }
    Graph::new(n, &pairs)
}

/// Encodes `g` as a canonical graph6 record (no header, no newline).
/// Weights are dropped.
pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= MAX_SMALL {
        out.push(n as u8 + OFFSET);
    } else if n <= MAX_MEDIUM {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + OFFSET));
    } else if n <= MAX_LARGE {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + OFFSET));
    } else {
        return Err(GraphError::Graph6TooLarge { n });
    }

    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    for e in g.edges() {
        let (i, j) = e.key();
        let k = j * (j - 1) / 2 + i;
        packed[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(packed.into_iter().map(|b| b + OFFSET));
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
