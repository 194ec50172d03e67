//! Bit-exact serialization of decomposition trees and the line-oriented
//! `.bg` graph text format.
//!
//! A serialized tree starts with the magic `BCT1` and the instance size n
//! as 32-bit big-endian words, followed by a pre-order walk of the tree:
//! a 3-bit tag per node, leaf payloads of `L` label bits plus one side
//! bit, and chain payloads of three `L`-bit fields plus one handedness
//! bit, where `L = max(1, ceil(log2 n))`. Fixed-width fields keep the
//! total length inside an explicit n·log n envelope.

use std::fmt;

use thiserror::Error;

use crate::bigraph::{BipartiteGraph, Side, VertexId};
use crate::chain::Handedness;
use crate::dectree::{node_count_bound, DecompositionTree, NodeLabel};

pub const MAGIC: [u8; 4] = *b"BCT1";
pub const HEADER_BITS: usize = 64;

const TAG_LEAF: u64 = 0;
const TAG_UNION: u64 = 1;
const TAG_CO_UNION: u64 = 2;
const TAG_CHAIN: u64 = 3;
const TAG_CO_CHAIN: u64 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodecError {
    #[error("label or layer count {value} does not fit an instance of size {n}")]
    LabelOverflow { value: u32, n: u32 },
    #[error("stream does not start with the BCT1 magic")]
    BadMagic,
    #[error("stream ended in the middle of a node")]
    TruncatedStream,
    #[error("invalid node tag {tag}")]
    InvalidTag { tag: u8 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: edge {u}-{v} joins two vertices of the same side")]
    SameSideEdge { line: usize, u: u32, v: u32 },
    #[error("graph labels are not exactly 1..=n; the text format cannot express gaps")]
    NonContiguousLabels,
}

/// A growable big-endian bit sequence. Byte padding appears only at the
/// end, and only once the stream is viewed as bytes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitStream {
    bytes: Vec<u8>,
    bit_len: usize,
}

impl BitStream {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interprets whole bytes as a stream; `bit_len` becomes `8 * len`.
    pub fn from_bytes(bytes: Vec<u8>) -> Self {
        let bit_len = bytes.len() * 8;
        Self { bytes, bit_len }
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    /// Appends the `width` low bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        debug_assert!(width == 64 || value < 1 << width);
        for i in (0..width).rev() {
            let bit = (value >> i) & 1;
            let byte = self.bit_len / 8;
            if byte == self.bytes.len() {
                self.bytes.push(0);
            }
            self.bytes[byte] |= (bit as u8) << (7 - self.bit_len % 8);
            self.bit_len += 1;
        }
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader {
            stream: self,
            pos: 0,
        }
    }
}

pub struct BitReader<'a> {
    stream: &'a BitStream,
    pos: usize,
}

impl BitReader<'_> {
    pub fn read_bits(&mut self, width: u32) -> Result<u64, CodecError> {
        if self.pos + width as usize > self.stream.bit_len {
            return Err(CodecError::TruncatedStream);
        }
        let mut value = 0u64;
        for _ in 0..width {
            let byte = self.stream.bytes[self.pos / 8];
            let bit = (byte >> (7 - self.pos % 8)) & 1;
            value = value << 1 | bit as u64;
            self.pos += 1;
        }
        Ok(value)
    }
}

/// Width of a label field for instances of size `n`.
pub fn label_width(n: u32) -> u32 {
    if n <= 1 {
        1
    } else {
        32 - (n - 1).leading_zeros()
    }
}

/// Upper envelope for the encoded size of any tree built for an n-vertex
/// graph, in bits. Defined for n >= 3.
pub fn bit_length_bound(n: usize) -> Option<usize> {
    let nodes = node_count_bound(n)?;
    Some(HEADER_BITS + nodes * (4 + 3 * label_width(n as u32) as usize))
}

/// Serializes a tree whose labels are all at most `n`.
pub fn encode_tree(t: &DecompositionTree, n: u32) -> Result<BitStream, CodecError> {
    let mut s = BitStream::new();
    for byte in MAGIC {
        s.push_bits(byte as u64, 8);
    }
    s.push_bits(n as u64, 32);
    let width = label_width(n);
    encode_node(t, n, width, &mut s)?;
    Ok(s)
}

fn encode_node(
    t: &DecompositionTree,
    n: u32,
    width: u32,
    s: &mut BitStream,
) -> Result<(), CodecError> {
    let fit = |value: u32| -> Result<u64, CodecError> {
        if value == 0 || value > n {
            Err(CodecError::LabelOverflow { value, n })
        } else {
            Ok((value - 1) as u64)
        }
    };
    match *t.label() {
        NodeLabel::Leaf { v, side } => {
            s.push_bits(TAG_LEAF, 3);
            s.push_bits(fit(v.0)?, width);
            s.push_bits(side_bit(side), 1);
        }
        NodeLabel::Union => s.push_bits(TAG_UNION, 3),
        NodeLabel::CoUnion => s.push_bits(TAG_CO_UNION, 3),
        NodeLabel::Chain {
            k,
            v1,
            v2,
            handedness,
        }
        | NodeLabel::CoChain {
            k,
            v1,
            v2,
            handedness,
        } => {
            let tag = if matches!(t.label(), NodeLabel::Chain { .. }) {
                TAG_CHAIN
            } else {
                TAG_CO_CHAIN
            };
            s.push_bits(tag, 3);
            s.push_bits(fit(k as u32)?, width);
            s.push_bits(fit(v1.0)?, width);
            s.push_bits(fit(v2.0)?, width);
            s.push_bits(hand_bit(handedness), 1);
        }
    }
    if let Some((l, r)) = t.children() {
        encode_node(l, n, width, s)?;
        encode_node(r, n, width, s)?;
    }
    Ok(())
}

fn side_bit(side: Side) -> u64 {
    match side {
        Side::Left => 0,
        Side::Right => 1,
    }
}

fn hand_bit(h: Handedness) -> u64 {
    match h {
        Handedness::Left => 0,
        Handedness::Right => 1,
    }
}

/// Exact inverse of [`encode_tree`]; trailing padding bits are ignored.
pub fn decode_stream(s: &BitStream) -> Result<DecompositionTree, CodecError> {
    let mut r = s.reader();
    for expected in MAGIC {
        if r.read_bits(8).map_err(|_| CodecError::BadMagic)? != expected as u64 {
            return Err(CodecError::BadMagic);
        }
    }
    let n = r.read_bits(32)? as u32;
    let width = label_width(n);
    decode_node(&mut r, width)
}

fn decode_node(r: &mut BitReader<'_>, width: u32) -> Result<DecompositionTree, CodecError> {
    let tag = r.read_bits(3)?;
    let label = match tag {
        TAG_LEAF => {
            let v = VertexId(r.read_bits(width)? as u32 + 1);
            let side = if r.read_bits(1)? == 0 {
                Side::Left
            } else {
                Side::Right
            };
            return Ok(DecompositionTree::leaf(v, side));
        }
        TAG_UNION => NodeLabel::Union,
        TAG_CO_UNION => NodeLabel::CoUnion,
        TAG_CHAIN | TAG_CO_CHAIN => {
            let k = r.read_bits(width)? as usize + 1;
            let v1 = VertexId(r.read_bits(width)? as u32 + 1);
            let v2 = VertexId(r.read_bits(width)? as u32 + 1);
            let handedness = if r.read_bits(1)? == 0 {
                Handedness::Left
            } else {
                Handedness::Right
            };
            if tag == TAG_CHAIN {
                NodeLabel::Chain {
                    k,
                    v1,
                    v2,
                    handedness,
                }
            } else {
                NodeLabel::CoChain {
                    k,
                    v1,
                    v2,
                    handedness,
                }
            }
        }
        other => return Err(CodecError::InvalidTag { tag: other as u8 }),
    };
    let first = decode_node(r, width)?;
    let second = decode_node(r, width)?;
    Ok(DecompositionTree::internal(label, first, second))
}

/// Parses the `.bg` text format. Comment lines start with `#`; blank
/// lines are skipped. Edge lines may give either endpoint first and are
/// normalized to left-first.
pub fn read_graph(text: &str) -> Result<BipartiteGraph, CodecError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let last_line = text.lines().count();

    let (line, header) = lines.next().ok_or(CodecError::Parse {
        line: last_line,
        msg: "missing header line".into(),
    })?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("bigraph") {
        return Err(CodecError::Parse {
            line,
            msg: "expected `bigraph <n> <m>`".into(),
        });
    }
    let n: u32 = parse_num(parts.next(), line, "n")?;
    let m: usize = parse_num(parts.next(), line, "m")?;

    let (line, sides_line) = lines.next().ok_or(CodecError::Parse {
        line: last_line,
        msg: "missing sides line".into(),
    })?;
    let mut parts = sides_line.split_whitespace();
    if parts.next() != Some("sides") {
        return Err(CodecError::Parse {
            line,
            msg: "expected `sides <s>`".into(),
        });
    }
    let side_str = parts.next().unwrap_or("");
    if side_str.len() != n as usize {
        return Err(CodecError::Parse {
            line,
            msg: format!("sides string has length {}, expected {n}", side_str.len()),
        });
    }
    let mut sides = Vec::with_capacity(n as usize);
    for ch in side_str.chars() {
        sides.push(match ch {
            'L' => Side::Left,
            'R' => Side::Right,
            other => {
                return Err(CodecError::Parse {
                    line,
                    msg: format!("invalid side character {other:?}"),
                })
            }
        });
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..m {
        let (line, edge_line) = lines.next().ok_or(CodecError::Parse {
            line: last_line,
            msg: format!("expected {m} edge lines"),
        })?;
        let mut parts = edge_line.split_whitespace();
        if parts.next() != Some("e") {
            return Err(CodecError::Parse {
                line,
                msg: "expected `e <u> <v>`".into(),
            });
        }
        let u: u32 = parse_num(parts.next(), line, "u")?;
        let v: u32 = parse_num(parts.next(), line, "v")?;
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(CodecError::Parse {
                    line,
                    msg: format!("vertex {x} out of range 1..={n}"),
                });
            }
        }
        if u == v {
            return Err(CodecError::Parse {
                line,
                msg: format!("edge {u}-{v} is a self-loop"),
            });
        }
        let (su, sv) = (sides[u as usize - 1], sides[v as usize - 1]);
        if su == sv {
            return Err(CodecError::SameSideEdge { line, u, v });
        }
        let (u, v) = if su == Side::Left { (u, v) } else { (v, u) };
        if !seen.insert((u, v)) {
            return Err(CodecError::Parse {
                line,
                msg: format!("duplicate edge {u}-{v}"),
            });
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next() {
        return Err(CodecError::Parse {
            line,
            msg: "unexpected content after the edge list".into(),
        });
    }

    BipartiteGraph::new(&sides, edges).map_err(|e| CodecError::Parse {
        line: last_line,
        msg: e.to_string(),
    })
}

fn parse_num<T: std::str::FromStr>(
    token: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, CodecError> {
    token
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CodecError::Parse {
            line,
            msg: format!("missing or invalid {what}"),
        })
}

/// Writes the canonical `.bg` text: header, sides string, then edges in
/// ascending lexicographic order with the left endpoint first.
pub fn write_graph(g: &BipartiteGraph) -> Result<String, CodecError> {
    let n = g.vertex_count() as u32;
    let contiguous = g.vertices().zip(1..=n).all(|(v, expected)| v.0 == expected);
    if !contiguous {
        return Err(CodecError::NonContiguousLabels);
    }
    let mut out = String::new();
    fmt::Write::write_fmt(&mut out, format_args!("bigraph {n} {}\n", g.edge_count())).unwrap();
    let sides: String = (1..=n)
        .map(|v| match g.side(VertexId(v)).unwrap() {
            Side::Left => 'L',
            Side::Right => 'R',
        })
        .collect();
    fmt::Write::write_fmt(&mut out, format_args!("sides {sides}\n")).unwrap();
    for (u, v) in g.edges() {
        fmt::Write::write_fmt(&mut out, format_args!("e {u} {v}\n")).unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dectree::{build_tree, tree_metrics};
    use crate::fixtures;

    #[test]
    fn single_leaf_stream_is_five_body_bits() {
        let t = DecompositionTree::leaf(VertexId(1), Side::Left);
        let s = encode_tree(&t, 1).unwrap();
        assert_eq!(s.bit_len() - HEADER_BITS, 5);
        assert_eq!(decode_stream(&s).unwrap(), t);
    }

    #[test]
    fn two_k2_body_is_exactly_33_bits() {
        let t = build_tree(&fixtures::two_k2()).unwrap();
        let s = encode_tree(&t, 4).unwrap();
        assert_eq!(s.bit_len() - HEADER_BITS, 33);
    }

    #[test]
    fn g8_stream_fits_the_envelope() {
        let t = build_tree(&fixtures::g8()).unwrap();
        let s = encode_tree(&t, 8).unwrap();
        assert!(s.bit_len() <= bit_length_bound(8).unwrap());
        assert_eq!(decode_stream(&s).unwrap(), t);
    }

    #[test]
    fn byte_round_trip_ignores_padding() {
        let t = build_tree(&fixtures::g8()).unwrap();
        let s = encode_tree(&t, 8).unwrap();
        let reloaded = BitStream::from_bytes(s.as_bytes().to_vec());
        assert_eq!(decode_stream(&reloaded).unwrap(), t);
    }

    #[test]
    fn label_widths() {
        assert_eq!(label_width(1), 1);
        assert_eq!(label_width(2), 1);
        assert_eq!(label_width(3), 2);
        assert_eq!(label_width(4), 2);
        assert_eq!(label_width(5), 3);
        assert_eq!(label_width(8), 3);
        assert_eq!(label_width(9), 4);
    }

    #[test]
    fn label_overflow_is_rejected() {
        let t = DecompositionTree::leaf(VertexId(9), Side::Left);
        assert_eq!(
            encode_tree(&t, 8).unwrap_err(),
            CodecError::LabelOverflow { value: 9, n: 8 }
        );
    }

    #[test]
    fn bad_magic_and_invalid_tag_and_truncation() {
        let mut s = BitStream::new();
        s.push_bits(u64::from_be_bytes(*b"XXXXXXXX"), 64);
        assert_eq!(decode_stream(&s).unwrap_err(), CodecError::BadMagic);

        let mut s = BitStream::new();
        for byte in MAGIC {
            s.push_bits(byte as u64, 8);
        }
        s.push_bits(4, 32);
        s.push_bits(7, 3); // tag 7 does not exist
        assert_eq!(
            decode_stream(&s).unwrap_err(),
            CodecError::InvalidTag { tag: 7 }
        );

        let mut s = BitStream::new();
        for byte in MAGIC {
            s.push_bits(byte as u64, 8);
        }
        s.push_bits(4, 32);
        s.push_bits(TAG_CHAIN, 3);
        s.push_bits(1, 2); // payload cut short
        assert_eq!(decode_stream(&s).unwrap_err(), CodecError::TruncatedStream);
    }

    #[test]
    fn bg_round_trip_for_fixtures() {
        for g in [
            fixtures::p7(),
            fixtures::two_k2(),
            fixtures::c6(),
            fixtures::g8(),
        ] {
            let text = write_graph(&g).unwrap();
            assert_eq!(read_graph(&text).unwrap(), g);
            assert_eq!(write_graph(&read_graph(&text).unwrap()).unwrap(), text);
        }
    }

    #[test]
    fn g8_text_is_canonical() {
        let expected =
            "bigraph 8 7\nsides LLLLRRRR\ne 1 5\ne 2 5\ne 2 6\ne 3 7\ne 4 5\ne 4 7\ne 4 8\n";
        assert_eq!(write_graph(&fixtures::g8()).unwrap(), expected);
    }

    #[test]
    fn reversed_edge_orientation_is_normalized() {
        let text = "bigraph 2 1\nsides LR\ne 2 1\n";
        let g = read_graph(text).unwrap();
        assert_eq!(g, fixtures::path(2));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a comment\n\nbigraph 2 1\n# another\nsides LR\ne 1 2\n";
        assert_eq!(read_graph(text).unwrap(), fixtures::path(2));
    }

    #[test]
    fn duplicate_edge_is_a_parse_error() {
        let text = "bigraph 2 2\nsides LR\ne 1 2\ne 2 1\n";
        let err = read_graph(text).unwrap_err();
        assert!(matches!(err, CodecError::Parse { line: 4, .. }));
    }

    #[test]
    fn same_side_edge_is_reported_with_line() {
        let text = "bigraph 3 1\nsides LLR\ne 1 2\n";
        assert_eq!(
            read_graph(text).unwrap_err(),
            CodecError::SameSideEdge {
                line: 3,
                u: 1,
                v: 2
            }
        );
    }

    #[test]
    fn envelope_matches_node_arithmetic() {
        let t = build_tree(&fixtures::g8()).unwrap();
        let m = tree_metrics(&t);
        let per_node = 4 + 3 * label_width(8) as usize;
        assert!(encode_tree(&t, 8).unwrap().bit_len() <= HEADER_BITS + m.nodes * per_node);
    }
}
