//! graph6 encoding and decoding.
//!
//! Layout: a size prefix (`chr(n + 63)` for `n <= 62`, `~` plus three bytes
//! for `n <= 258047`, `~~` plus six bytes beyond that), then the upper
//! triangle of the adjacency matrix read column by column
//! (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits per byte, most
//! significant bit first, zero padded, each byte offset by 63.
//!
//! Codes copied from print sometimes carry stray trailing characters (for
//! example `ItNPaGCI_!`); such input is rejected as having the wrong length.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graphs::Graph;

pub const HEADER: &str = ">>graph6<<";
const MAX_ORDER: u64 = 68_719_476_735;

/// What to do with nonzero padding bits after the last adjacency bit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Padding {
    #[default]
    Strict,
    Lenient,
}

pub fn decode_graph6(text: &str) -> Result<Graph> {
    decode_graph6_with(text, Padding::Strict)
}

pub fn decode_graph6_with(text: &str, padding: Padding) -> Result<Graph> {
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::graph6(format!(
            "byte {b:#04x} outside the printable range 63..=126"
        )));
    }
    let (n, body) = parse_order(bytes)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::graph6(format!(
            "{n} vertices need {expected} body bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(body, k) {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    if padding == Padding::Strict && (k..expected * 6).any(|p| bit(body, p)) {
        return Err(Error::graph6("nonzero padding bits"));
    }
    Ok(g)
}

#[inline]
fn bit(body: &[u8], k: usize) -> bool {
    (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1
}

fn parse_order(bytes: &[u8]) -> Result<(usize, &[u8])> {
    let word = |chunk: &[u8]| chunk.iter().fold(0u64, |acc, &b| acc << 6 | u64::from(b - 63));
    match bytes {
        [] => Err(Error::graph6("empty code")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::graph6("truncated 8-byte size prefix"));
            }
            let n = word(&rest[..6]);
            let n = usize::try_from(n).map_err(|_| Error::graph6("order too large"))?;
            Ok((n, &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::graph6("truncated 4-byte size prefix"));
            }
            Ok((word(&rest[..3]) as usize, &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
    }
}

/// Minimal-length graph6 code of `g`, without header.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n as u64 <= MAX_ORDER, "graph too large for graph6");
    let mut out = Vec::with_capacity(8 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n as u64 >> (6 * s)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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

/// Line-oriented graph6 reader. Blank lines are skipped and a leading
/// `>>graph6<<` header is tolerated on any line. Each item carries its own
/// error so callers can choose to skip or abort.
pub struct Graph6Reader<R> {
    source: R,
    line: usize,
    padding: Padding,
    buf: String,
}

pub fn stream_graph6<R: BufRead>(source: R) -> Graph6Reader<R> {
    Graph6Reader {
        source,
        line: 0,
        padding: Padding::Strict,
        buf: String::new(),
    }
}

impl<R> Graph6Reader<R> {
    pub fn with_padding(mut self, padding: Padding) -> Self {
        self.padding = padding;
        self
    }

    /// 1-based number of the last line read.
    pub fn line(&self) -> usize {
        self.line
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.source.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    self.line += 1;
                    return Some(Err(Error::MalformedGraph6 {
                        line: Some(self.line),
                        reason: e.to_string(),
                    }));
                }
            }
            self.line += 1;
            let text = self.buf.trim_end_matches(['\n', '\r']);
            let text = text.strip_prefix(HEADER).unwrap_or(text);
            if text.trim().is_empty() {
                continue;
            }
            let line = self.line;
            return Some(decode_graph6_with(text, self.padding).map_err(|e| match e {
                Error::MalformedGraph6 { reason, .. } => Error::MalformedGraph6 {
                    line: Some(line),
                    reason,
                },
                other => other,
            }));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex() {
        let g = decode_graph6("@").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(encode_graph6(&Graph::empty(1)), "@");
        assert_eq!(encode_graph6(&Graph::empty(0)), "?");
    }

    #[test]
    fn known_small_codes() {
        // P3 with edges 0-1, 1-2: bits (0,1)=1 (0,2)=0 (1,2)=1 -> 101000 = 40
        assert_eq!(encode_graph6(&Graph::path(3)), "Bg");
        assert_eq!(decode_graph6("Bg").unwrap(), Graph::path(3));
        assert_eq!(encode_graph6(&Graph::complete(4)), "C~");
    }

    #[test]
    fn catalog_codes_round_trip() {
        for code in ["GE{SZW", "F{|Xw", "ItNPaGCI_", "JCO_?c]@_S?", "O@?KAC@?G?t?O???_?G?A"] {
            assert_eq!(encode_graph6(&decode_graph6(code).unwrap()), code);
        }
    }

    #[test]
    fn stray_trailing_character_is_rejected() {
        let err = decode_graph6("ItNPaGCI_!").unwrap_err();
        assert!(matches!(err, Error::MalformedGraph6 { .. }));
    }

    #[test]
    fn rejects_bad_bytes_and_lengths() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("F{|X").is_err());
        assert!(decode_graph6("F{|Xw?").is_err());
        assert!(decode_graph6("F{|X\u{7f}").is_err());
        assert!(decode_graph6("F{ Xw").is_err());
        assert!(decode_graph6("~??").is_err());
    }

    #[test]
    fn padding_strictness() {
        // n = 2 has one adjacency bit; "A_" sets it, "A`" also sets a pad bit.
        assert_eq!(decode_graph6("A_").unwrap().edge_count(), 1);
        assert!(decode_graph6("A`").is_err());
        assert_eq!(decode_graph6_with("A`", Padding::Lenient).unwrap().edge_count(), 1);
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::path(70);
        let code = encode_graph6(&g);
        assert!(code.starts_with("~?@E"));
        assert_eq!(decode_graph6(&code).unwrap(), g);
    }

    #[test]
    fn stream_reports_line_numbers() {
        let data = ">>graph6<<F{|Xw\n\nFzE}w\r\nbad!\n@\n";
        let items: Vec<_> = stream_graph6(data.as_bytes()).collect();
        assert_eq!(items.len(), 4);
        assert_eq!(items[0].as_ref().unwrap().order(), 7);
        assert_eq!(items[1].as_ref().unwrap().order(), 7);
        assert!(matches!(
            items[2],
            Err(Error::MalformedGraph6 { line: Some(4), .. })
        ));
        assert_eq!(items[3].as_ref().unwrap().order(), 1);
        assert_eq!(stream_graph6(&b""[..]).count(), 0);
    }
}
