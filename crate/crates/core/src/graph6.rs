//! graph6 encoding of simple undirected graphs.
//!
//! The format packs the upper adjacency triangle in column order
//! x(0,1), x(0,2), x(1,2), x(0,3), ... into 6-bit groups; each group is
//! stored as one printable byte (value + 63). Padding bits must be zero.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Parses one graph6 line (an optional `>>graph6<<` prefix is accepted).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let base = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let skip = text.len() - base.len();
    let bytes = base.as_bytes();
    if bytes.is_empty() {
        return Err(err(skip, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(skip + i, format!("byte {b} outside graph6 range 63..=126")));
        }
    }

    let (n, header_len) = parse_order(bytes, skip)?;
    let body = &bytes[header_len..];
    let bits = n * (n.saturating_sub(1)) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(err(
            skip + bytes.len(),
            format!("truncated: need {need} body bytes for n={n}, got {}", body.len()),
        ));
    }
    if body.len() > need {
        return Err(err(
            skip + header_len + need,
            format!("trailing data: expected {need} body bytes for n={n}"),
        ));
    }

    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    for col in 1..n {
        for row in 0..col {
            let byte = body[bit_index / 6] - 63;
            let bit = (byte >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                edges.push((row, col));
            }
            bit_index += 1;
        }
    }
    // padding bits of the final byte must be zero
    if bits % 6 != 0 {
        let last = body[need - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(skip + header_len + need - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, &edges)
}

fn parse_order(bytes: &[u8], skip: usize) -> Result<(usize, usize)> {
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, 1));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        // 36-bit order
        if bytes.len() < 8 {
            return Err(err(skip + bytes.len(), "truncated 36-bit order header"));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - 63) as usize;
        }
        Ok((n, 8))
    } else {
        // 18-bit order
        if bytes.len() < 4 {
            return Err(err(skip + bytes.len(), "truncated 18-bit order header"));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - 63) as usize;
        }
        if n <= 62 {
            return Err(err(skip, format!("order {n} must use the short header")));
        }
        Ok((n, 4))
    }
}

/// Encodes a graph as a graph6 string.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..36).step_by(6).rev() {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            group <<= 1;
            if g.has_edge(row, col) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    String::from_utf8(out).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_is_a_underscore() {
        let g = parse_graph6("A_").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
        assert_eq!(encode_graph6(&g), "A_");
    }

    #[test]
    fn bw_is_the_triangle() {
        // 'B' -> n=3; 'w' = 119-63 = 56 = 111000b -> x(0,1)=x(0,2)=x(1,2)=1
        let g = parse_graph6("Bw").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn dqc_roundtrips() {
        let g = parse_graph6("DQc").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn header_prefix_accepted() {
        assert_eq!(parse_graph6(">>graph6<<A_").unwrap().edges(), vec![(0, 1)]);
    }

    #[test]
    fn empty_and_single_vertex() {
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn bad_bytes_name_their_offset() {
        match parse_graph6("A ").unwrap_err() {
            Error::Graph6 { offset, .. } => assert_eq!(offset, 1),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn truncation_and_trailing_data_rejected() {
        assert!(parse_graph6("D").is_err());
        assert!(parse_graph6("A_A").is_err());
    }

    #[test]
    fn nonzero_padding_rejected() {
        // n=2 needs 1 bit; 5 padding bits must be zero. '~' has them set.
        // byte value 63+1=64 ('@') encodes bit pattern 000001 -> bad padding.
        let err = parse_graph6("A@").unwrap_err();
        match err {
            Error::Graph6 { offset, reason } => {
                assert_eq!(offset, 1);
                assert!(reason.contains("padding"));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn long_header_roundtrip() {
        let g = Graph::path(70);
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back, g);
    }
}
