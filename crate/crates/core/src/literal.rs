//! Text literals `n: e e .. | e .. | ..`, e.g. `4: 1 4 | 2 3`.
//!
//! Blocks may be given in any order and elements within a block in any
//! order; whitespace is free. Errors carry the byte offset they refer to.

use std::str::FromStr;

use crate::error::{NcpError, Result};
use crate::partition::{make_partition, NoncrossingPartition, Partition};

struct Token {
    value: usize,
    offset: usize,
}

struct Parsed {
    n: usize,
    blocks: Vec<Vec<Token>>,
    /// Offset of the first byte of each block.
    block_starts: Vec<usize>,
}

fn parse_error(offset: usize, reason: impl Into<String>) -> NcpError {
    NcpError::Parse { offset, reason: reason.into() }
}

fn located(offset: usize, source: NcpError) -> NcpError {
    NcpError::Located { offset, source: Box::new(source) }
}

fn skip_ws(bytes: &[u8], mut pos: usize) -> usize {
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    pos
}

fn number(text: &str, pos: usize) -> Result<(usize, usize)> {
    let bytes = text.as_bytes();
    let end = pos + bytes[pos..].iter().take_while(|b| b.is_ascii_digit()).count();
    if end == pos {
        let found = text[pos..].chars().next().map_or("end of input".to_string(), |c| format!("{c:?}"));
        return Err(parse_error(pos, format!("expected a number, found {found}")));
    }
    let value = text[pos..end].parse().map_err(|_| parse_error(pos, "number too large"))?;
    Ok((value, end))
}

fn tokenize(text: &str) -> Result<Parsed> {
    let bytes = text.as_bytes();
    let mut pos = skip_ws(bytes, 0);
    let (n, after) = number(text, pos)?;
    pos = skip_ws(bytes, after);
    if bytes.get(pos) != Some(&b':') {
        return Err(parse_error(pos, "expected ':' after the size"));
    }
    pos = skip_ws(bytes, pos + 1);
    let mut blocks = Vec::new();
    let mut block_starts = Vec::new();
    if pos == bytes.len() {
        return Ok(Parsed { n, blocks, block_starts });
    }
    loop {
        let start = pos;
        let mut block = Vec::new();
        while pos < bytes.len() && bytes[pos] != b'|' {
            let (value, end) = number(text, pos)?;
            block.push(Token { value, offset: pos });
            pos = skip_ws(bytes, end);
        }
        if block.is_empty() {
            return Err(located(start, NcpError::EmptyBlock));
        }
        blocks.push(block);
        block_starts.push(start);
        if pos == bytes.len() {
            break;
        }
        pos = skip_ws(bytes, pos + 1);
    }
    Ok(Parsed { n, blocks, block_starts })
}

/// Parses a literal into a canonical partition.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let parsed = tokenize(text)?;
    let raw: Vec<Vec<usize>> = parsed.blocks.iter().map(|b| b.iter().map(|t| t.value).collect()).collect();
    make_partition(parsed.n, raw).map_err(|e| {
        let tokens = parsed.blocks.iter().flatten();
        let offset = match &e {
            NcpError::OutOfRange { element, .. } => tokens.clone().find(|t| t.value == *element).map(|t| t.offset),
            // the second occurrence is the duplicate
            NcpError::Overlap { element } => tokens.clone().filter(|t| t.value == *element).nth(1).map(|t| t.offset),
            NcpError::NotACover { .. } => Some(text.trim_end().len()),
            _ => None,
        };
        match offset {
            Some(offset) => located(offset, e),
            None => e,
        }
    })
}

/// Parses a literal and requires it to be noncrossing.
pub fn parse_noncrossing(text: &str) -> Result<NoncrossingPartition> {
    let parsed = tokenize(text)?;
    let p = parse_partition(text)?;
    NoncrossingPartition::new(p).map_err(|e| {
        let offset = match &e {
            NcpError::Crossing { second, .. } => parsed
                .blocks
                .iter()
                .position(|b| b.iter().any(|t| t.value == second[0]))
                .map(|i| parsed.block_starts[i]),
            _ => None,
        };
        match offset {
            Some(offset) => located(offset, e),
            None => e,
        }
    })
}

impl FromStr for Partition {
    type Err = NcpError;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s)
    }
}

impl FromStr for NoncrossingPartition {
    type Err = NcpError;

    fn from_str(s: &str) -> Result<Self> {
        parse_noncrossing(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::enumerate_ncp;

    #[test]
    fn examples() {
        let p: Partition = "4: 1 4 | 2 3".parse().unwrap();
        assert_eq!(p.blocks(), &[vec![1, 4], vec![2, 3]]);
        let q: NoncrossingPartition = "3: 2 | 1 3".parse().unwrap();
        assert_eq!(q.to_string(), "3: 1 3 | 2");
        assert_eq!("  3 :3|1   2 ".parse::<Partition>().unwrap().to_string(), "3: 1 2 | 3");
        assert_eq!("0:".parse::<NoncrossingPartition>().unwrap(), NoncrossingPartition::empty());
    }

    #[test]
    fn errors_carry_offsets() {
        let err = parse_partition("3: 1 2 | 2 3").unwrap_err();
        assert_eq!(err, NcpError::Located { offset: 9, source: Box::new(NcpError::Overlap { element: 2 }) });
        assert_eq!(err.kind(), &NcpError::Overlap { element: 2 });
        let err = parse_partition("3: 1 | 5 2 3").unwrap_err();
        assert_eq!(err, located(7, NcpError::OutOfRange { element: 5, n: 3 }));
        assert_eq!(parse_partition("3: 1 2").unwrap_err(), located(6, NcpError::NotACover { missing: 3 }));
        assert_eq!(parse_partition("3: 1 || 2 3").unwrap_err(), located(6, NcpError::EmptyBlock));
        assert!(matches!(parse_partition("3 1 2 3"), Err(NcpError::Parse { offset: 2, .. })));
        assert!(matches!(parse_partition("3: 1 x | 2 3"), Err(NcpError::Parse { offset: 5, .. })));
        assert!(matches!(parse_partition(""), Err(NcpError::Parse { offset: 0, .. })));
        let err = parse_noncrossing("4: 1 3 | 2 4").unwrap_err();
        assert_eq!(
            err,
            located(9, NcpError::Crossing { first: vec![1, 3], second: vec![2, 4] })
        );
    }

    #[test]
    fn round_trip() {
        for n in 0..=8 {
            for p in enumerate_ncp(n).unwrap() {
                assert_eq!(p.to_string().parse::<NoncrossingPartition>().unwrap(), p);
            }
        }
    }
}
