//! graph6 corpus format: read/write for simple graphs of order <= 62.
//!
//! A line is the byte `n + 63` followed by the upper triangle of the
//! adjacency matrix in column order x(0,1), x(0,2), x(1,2), x(0,3), ...,
//! packed 6 bits per byte (MSB first), each byte offset by 63, with zero
//! padding to a byte boundary.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Graph6Error {
    Empty,
    OrderTooLarge,
    ByteOutOfRange(u8),
    WrongLength { expected: usize, got: usize },
    NonzeroPadding,
}

impl fmt::Display for Graph6Error {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Graph6Error::Empty => write!(out, "empty line"),
            Graph6Error::OrderTooLarge => {
                write!(out, "orders above 62 (multi-byte size) are not supported")
            }
            Graph6Error::ByteOutOfRange(b) => write!(out, "byte {b} outside the graph6 range"),
            Graph6Error::WrongLength { expected, got } => {
                write!(out, "expected {expected} data bytes, got {got}")
            }
            Graph6Error::NonzeroPadding => write!(out, "nonzero padding bits"),
        }
    }
}

impl std::error::Error for Graph6Error {}

/// Decode one graph6 line into (order, edge list).
pub fn decode(line: &str) -> Result<(usize, Vec<(usize, usize)>), Graph6Error> {
    let line = line.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if bytes[0] == 126 {
        return Err(Graph6Error::OrderTooLarge);
    }
    if !(63..=125).contains(&bytes[0]) {
        return Err(Graph6Error::ByteOutOfRange(bytes[0]));
    }
    let n = (bytes[0] - 63) as usize;
    let nbits = n * (n.saturating_sub(1)) / 2;
    let nbytes = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() != nbytes {
        return Err(Graph6Error::WrongLength {
            expected: nbytes,
            got: data.len(),
        });
    }
    let mut bits = Vec::with_capacity(nbytes * 6);
    for &b in data {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::ByteOutOfRange(b));
        }
        let v = b - 63;
        for shift in (0..6).rev() {
            bits.push((v >> shift) & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Graph6Error::NonzeroPadding);
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Ok((n, edges))
}

/// Encode a simple graph as one graph6 line. Edges must have distinct
/// endpoints below `n`; duplicates collapse (the format is simple-graph).
pub fn encode(n: usize, edges: &[(usize, usize)]) -> Result<String, Graph6Error> {
    if n > 62 {
        return Err(Graph6Error::OrderTooLarge);
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let mut bits = vec![false; nbits];
    let slot = |i: usize, j: usize| j * (j - 1) / 2 + i;
    for &(u, v) in edges {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        assert!(i != j && j < n, "edge ({u}, {v}) invalid for order {n}");
        bits[slot(i, j)] = true;
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (pos, &bit) in chunk.iter().enumerate() {
            if bit {
                v |= 1 << (5 - pos);
            }
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_decoded_goldens() {
        // 4-cycle 0-1-2-3-0
        let (n, edges) = decode("Cl").unwrap();
        assert_eq!(n, 4);
        assert_eq!(edges, vec![(0, 1), (1, 2), (0, 3), (2, 3)]);

        // complete graph on 4 vertices
        let (n, edges) = decode("C~").unwrap();
        assert_eq!(n, 4);
        assert_eq!(edges.len(), 6);

        // complete bipartite 2+3
        let (n, edges) = decode("D]o").unwrap();
        assert_eq!(n, 5);
        assert_eq!(edges, vec![(0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]);
    }

    #[test]
    fn encode_round_trips() {
        for line in ["Cl", "C~", "D]o", "A_", "B?", "@"] {
            let (n, edges) = decode(line).unwrap();
            assert_eq!(encode(n, &edges).unwrap(), line, "line {line}");
        }
    }

    #[test]
    fn header_prefix_is_tolerated() {
        let (n, _) = decode(">>graph6<<Cl").unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(matches!(decode(""), Err(Graph6Error::Empty)));
        assert!(matches!(decode("~~~"), Err(Graph6Error::OrderTooLarge)));
        assert!(matches!(
            decode("C"),
            Err(Graph6Error::WrongLength { expected: 1, got: 0 })
        ));
        assert!(matches!(
            decode("Cll"),
            Err(Graph6Error::WrongLength { expected: 1, got: 2 })
        ));
        // order 3 uses 3 bits; set a padding bit: byte 63 + 0b000001 = '@'+1
        let bad = format!("B{}", (63u8 + 1) as char);
        assert!(matches!(decode(&bad), Err(Graph6Error::NonzeroPadding)));
        assert!(decode("C ").is_err());
    }
}
