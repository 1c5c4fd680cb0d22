//! graph6 codec.
//!
//! Size prefix: one byte `n + 63` for `n ≤ 62`, otherwise `126` followed by
//! three 6-bit groups of `n` (big-endian). Payload: the upper triangle in
//! column-major order `x(0,1), x(0,2), x(1,2), x(0,3), …`, zero-padded to a
//! multiple of six bits, each group stored as `value + 63`.

use super::Graph;
use crate::error::{Error, Result};

pub const G6_HEADER: &[u8] = b">>graph6<<";
pub const G6_MAX_VERTICES: usize = 258_047;

const BIAS: u8 = 63;

pub fn g6_encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > G6_MAX_VERTICES {
        return Err(Error::invalid(format!(
            "graph6 supports at most {G6_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(4 + nbits.div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes one graph6 record. An optional `>>graph6<<` header and trailing
/// ASCII whitespace are ignored; offsets in errors refer to the input bytes.
pub fn g6_decode(text: &[u8]) -> Result<Graph> {
    let mut start = 0;
    if text.starts_with(G6_HEADER) {
        start = G6_HEADER.len();
    }
    let mut end = text.len();
    while end > start && text[end - 1].is_ascii_whitespace() {
        end -= 1;
    }
    let body = &text[start..end];

    if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(
            start + pos,
            format!("byte {:#04x} outside the graph6 range 63..=126", body[pos]),
        ));
    }
    let Some(&first) = body.first() else {
        return Err(Error::parse(start, "empty graph6 string"));
    };

    let (n, header_len) = if first < 126 {
        ((first - BIAS) as usize, 1)
    } else {
        if body.len() < 4 {
            return Err(Error::parse(start + body.len(), "truncated vertex count"));
        }
        if body[1] == 126 {
            return Err(Error::parse(
                start + 1,
                format!("8-byte size form is not supported (max {G6_MAX_VERTICES} vertices)"),
            ));
        }
        let n = body[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        (n, 4)
    };
    if n == 0 {
        return Err(Error::parse(start, "graph with zero vertices"));
    }

    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    let payload = &body[header_len..];
    if payload.len() < need {
        return Err(Error::parse(
            start + body.len(),
            format!("truncated payload: expected {need} bytes, found {}", payload.len()),
        ));
    }
    if payload.len() > need {
        return Err(Error::parse(
            start + header_len + need,
            format!("{} trailing bytes after payload", payload.len() - need),
        ));
    }
    let pad = need * 6 - nbits;
    if pad > 0 {
        let last = payload[need - 1] - BIAS;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::parse(start + header_len + need - 1, "non-zero padding bits"));
        }
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[bit / 6] - BIAS;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.set(i, j, true);
            }
            bit += 1;
        }
    }
    Ok(g)
}
