//! graph6 line format.
//!
//! A line is a size header followed by the upper triangle of the adjacency
//! matrix, column by column (`(0,1), (0,2), (1,2), (0,3), ...`), packed six
//! bits per byte, each byte offset by 63. Orders up to 62 use a single header
//! byte; larger orders use `~` plus three bytes (or `~~` plus six).

use std::io::BufRead;

use thiserror::Error;

use super::{Graph, MAX_ORDER};
use crate::error::{self, Error};

const OPTIONAL_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty line")]
    Empty,
    #[error("malformed size header")]
    MalformedHeader,
    #[error("order {0} is not supported (must be between 1 and {MAX_ORDER})")]
    UnsupportedOrder(usize),
    #[error("byte {byte:#04x} at position {pos} is outside the printable range 63..=126")]
    InvalidCharacter { pos: usize, byte: u8 },
    #[error("payload has {found} bytes, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("nonzero padding bits in the last payload byte")]
    NonzeroPadding,
}

fn check_char(pos: usize, byte: u8) -> Result<u8, ParseError> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(ParseError::InvalidCharacter { pos, byte })
    }
}

fn parse_header(bytes: &[u8]) -> Result<(usize, usize), ParseError> {
    let first = *bytes.first().ok_or(ParseError::Empty)?;
    if first != b'~' {
        let n = check_char(0, first)? as usize;
        return Ok((n, 1));
    }
    let (start, count) = if bytes.get(1) == Some(&b'~') { (2, 6) } else { (1, 3) };
    if bytes.len() < start + count {
        return Err(ParseError::MalformedHeader);
    }
    let mut n = 0usize;
    for (i, &b) in bytes[start..start + count].iter().enumerate() {
        let v = check_char(start + i, b).map_err(|_| ParseError::MalformedHeader)?;
        n = (n << 6) | v as usize;
    }
    // the long forms are only valid for orders the short forms cannot express
    let min = if count == 3 { 63 } else { 258_048 };
    if n < min {
        return Err(ParseError::MalformedHeader);
    }
    Ok((n, start + count))
}

/// Parses one graph6 line. A trailing `\n` or `\r\n` is accepted, anything
/// else after the payload is an error.
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let line = line.strip_suffix('\n').unwrap_or(line);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let line = line.strip_prefix(OPTIONAL_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();

    let (n, offset) = parse_header(bytes)?;
    if n == 0 || n > MAX_ORDER {
        return Err(ParseError::UnsupportedOrder(n));
    }
    let bits = n * (n - 1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &bytes[offset..];
    if payload.len() != expected {
        return Err(ParseError::WrongLength { expected, found: payload.len() });
    }

    let mut g = Graph::empty(n);
    let (mut i, mut j) = (0usize, 1usize);
    let mut k = 0usize;
    for (p, &b) in payload.iter().enumerate() {
        let val = check_char(offset + p, b)?;
        for shift in (0..6).rev() {
            let bit = val >> shift & 1;
            if k >= bits {
                if bit != 0 {
                    return Err(ParseError::NonzeroPadding);
                }
                continue;
            }
            if bit == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(g)
}

fn push_header(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
}

/// Encodes a graph as a graph6 line (without the newline).
pub fn write_graph6(g: &Graph) -> error::Result<String> {
    let n = g.order();
    if n == 0 {
        return Err(Error::OrderTooSmall { n, min: 1, what: "graph6 encoding" });
    }
    let mut out = String::with_capacity(4 + (n * n) / 12);
    push_header(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.neighbors(j);
        for i in 0..j {
            acc = acc << 1 | row.contains(i) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

/// Reads a graph6 stream: one graph per line, blank lines and `#` comment
/// lines skipped. Errors carry the 1-based line number.
pub fn read_graph6<R: BufRead>(reader: R) -> impl Iterator<Item = error::Result<Graph>> {
    reader.lines().enumerate().filter_map(|(idx, line)| match line {
        Err(e) => Some(Err(Error::Io(e))),
        Ok(l) => {
            let t = l.trim_end();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some(parse_graph6(t).map_err(|source| Error::Corpus { line: idx + 1, source }))
            }
        }
    })
}
