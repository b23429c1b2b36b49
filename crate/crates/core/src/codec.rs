//! Graph codecs: graph6 and DIMACS edge format.
//!
//! graph6 is the compact interchange format used by standard
//! graph-enumeration tooling: a size header N(n) followed by the upper
//! triangle in column order, six bits per printable byte offset by 63.
//! DIMACS ("p edge n m" with 1-indexed "e u v" lines) is kept for
//! human-auditable exchange.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn malformed(offset: usize, detail: impl Into<String>) -> Error {
    Error::MalformedInput { offset, detail: detail.into() }
}

/// Encodes a graph as a graph6 string.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    } else {
        assert!(n <= 68_719_476_735, "graph6 caps at 2^36 - 1 vertices");
        bytes.push(126);
        bytes.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 string; accepts an optional `>>graph6<<` prefix and
/// trailing whitespace.
pub fn decode_graph6(text: &str) -> Result<Graph> {
    let mut data = text.as_bytes();
    let mut base = 0usize;
    if let Some(rest) = data.strip_prefix(b">>graph6<<") {
        data = rest;
        base = 10;
    }
    while let Some((last, head)) = data.split_last() {
        if last.is_ascii_whitespace() {
            data = head;
        } else {
            break;
        }
    }
    if data.is_empty() {
        return Err(malformed(base, "empty graph6 input"));
    }
    let at = |i: usize| base + i;
    let sextet = |i: usize| -> Result<u64> {
        let b = *data.get(i).ok_or_else(|| malformed(at(i), "truncated size header"))?;
        if !(63..=126).contains(&b) {
            return Err(malformed(at(i), format!("byte {b} outside graph6 range 63..=126")));
        }
        Ok((b - 63) as u64)
    };

    let (n, mut pos): (usize, usize) = if data[0] != 126 {
        (sextet(0)? as usize, 1)
    } else if data.len() > 1 && data[1] != 126 {
        let mut n = 0u64;
        for i in 1..4 {
            n = (n << 6) | sextet(i)?;
        }
        (n as usize, 4)
    } else {
        let mut n = 0u64;
        for i in 2..8 {
            n = (n << 6) | sextet(i)?;
        }
        (n as usize, 8)
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let body_bytes = bit_count.div_ceil(6);
    if data.len() - pos != body_bytes {
        return Err(malformed(
            at(data.len().min(pos)),
            format!("expected {body_bytes} body bytes for n={n}, found {}", data.len() - pos),
        ));
    }

    let mut g = Graph::empty(n);
    let mut current = 0u64;
    let mut remaining = 0u8;
    for v in 1..n {
        for u in 0..v {
            if remaining == 0 {
                current = sextet(pos)?;
                pos += 1;
                remaining = 6;
            }
            remaining -= 1;
            if current >> remaining & 1 == 1 {
                g.add_edge(u, v);
            }
        }
    }
    // padding bits of the final sextet must be zero
    if remaining > 0 && current & ((1 << remaining) - 1) != 0 {
        return Err(malformed(at(pos - 1), "nonzero padding bits"));
    }
    Ok(g)
}

/// Result of a DIMACS decode: the graph plus how many duplicate edge lines
/// were collapsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsDecoded {
    pub graph: Graph,
    pub duplicate_edges: usize,
}

/// Decodes DIMACS edge format. Vertices are 1-indexed in the file.
pub fn decode_dimacs(text: &str) -> Result<DimacsDecoded> {
    let mut graph: Option<Graph> = None;
    let mut duplicates = 0usize;
    let mut offset = 0usize;
    for line in text.lines() {
        let line_offset = offset;
        offset += line.len() + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("p") => {
                if graph.is_some() {
                    return Err(malformed(line_offset, "second problem line"));
                }
                if tokens.next() != Some("edge") {
                    return Err(malformed(line_offset, "problem line is not 'p edge n m'"));
                }
                let n: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed(line_offset, "bad vertex count"))?;
                let _declared_edges: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed(line_offset, "bad edge count"))?;
                graph = Some(Graph::empty(n));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| malformed(line_offset, "edge line before problem line"))?;
                let u: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed(line_offset, "bad edge endpoint"))?;
                let v: usize = tokens
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| malformed(line_offset, "bad edge endpoint"))?;
                if u == 0 || v == 0 {
                    return Err(malformed(line_offset, "DIMACS vertices are 1-indexed"));
                }
                if u > g.vertex_count() || v > g.vertex_count() {
                    return Err(malformed(line_offset, "edge endpoint exceeds vertex count"));
                }
                if u == v {
                    return Err(malformed(line_offset, "self-loop"));
                }
                if g.has_edge(u - 1, v - 1) {
                    duplicates += 1;
                } else {
                    g.add_edge(u - 1, v - 1);
                }
            }
            Some(other) => {
                return Err(malformed(line_offset, format!("unrecognized line kind '{other}'")));
            }
            None => {}
        }
    }
    let graph = graph.ok_or_else(|| malformed(0, "missing problem line"))?;
    Ok(DimacsDecoded { graph, duplicate_edges: duplicates })
}

/// Encodes a graph in DIMACS edge format with sorted edge lines.
pub fn encode_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn graph6_empty_graph_is_question_mark() {
        let g = Graph::empty(0);
        assert_eq!(encode_graph6(&g), "?");
        assert_eq!(decode_graph6("?").unwrap(), g);
    }

    #[test]
    fn graph6_known_small_strings() {
        // the format's documented example: edges {0,2},{0,4},{1,3},{3,4} on
        // five vertices encode as "DQc"
        let doc = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(encode_graph6(&doc), "DQc");
        assert_eq!(decode_graph6("DQc").unwrap(), doc);
        assert_eq!(encode_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(decode_graph6("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn graph6_round_trip_on_random_graphs() {
        let mut rng = crate::stream::child_stream(905, "codec");
        for _ in 0..100 {
            let n = rng.gen_range(0..40usize);
            let p = rng.gen::<f64>();
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen::<f64>() < p {
                        g.add_edge(u, v);
                    }
                }
            }
            assert_eq!(decode_graph6(&encode_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn graph6_long_form_header() {
        let g = Graph::from_edges(100, &[(0, 99), (50, 51)]);
        let enc = encode_graph6(&g);
        assert_eq!(enc.as_bytes()[0], 126);
        assert_eq!(decode_graph6(&enc).unwrap(), g);
    }

    #[test]
    fn graph6_rejects_truncation_and_garbage() {
        let enc = encode_graph6(&Graph::complete(5));
        assert!(matches!(
            decode_graph6(&enc[..enc.len() - 1]),
            Err(Error::MalformedInput { .. })
        ));
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("B\u{7f}").is_err());
        assert!(decode_graph6("D??").is_err()); // too short for n=5
    }

    #[test]
    fn graph6_accepts_format_prefix_and_newline() {
        let enc = format!(">>graph6<<{}\n", encode_graph6(&Graph::cycle(5)));
        assert_eq!(decode_graph6(&enc).unwrap(), Graph::cycle(5));
    }

    #[test]
    fn dimacs_k3_round_trip() {
        let text = "c tiny\np edge 3 3\ne 1 2\ne 1 3\ne 2 3\n";
        let dec = decode_dimacs(text).unwrap();
        assert_eq!(dec.graph, Graph::complete(3));
        assert_eq!(dec.duplicate_edges, 0);
        assert_eq!(decode_dimacs(&encode_dimacs(&dec.graph)).unwrap().graph, dec.graph);
    }

    #[test]
    fn dimacs_duplicate_edges_are_collapsed_with_warning() {
        let text = "p edge 3 2\ne 1 2\ne 2 1\n";
        let dec = decode_dimacs(text).unwrap();
        assert_eq!(dec.graph.edge_count(), 1);
        assert_eq!(dec.duplicate_edges, 1);
    }

    #[test]
    fn dimacs_rejects_zero_index() {
        let text = "p edge 3 1\ne 0 2\n";
        assert!(matches!(decode_dimacs(text), Err(Error::MalformedInput { .. })));
    }
}
