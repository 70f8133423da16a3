//! Parsing of command-line values.

use std::io::BufRead;

use anyhow::{bail, Context};

use cospectral::codec::decode_graph6;
use cospectral::graphs::{Graph, Partition, RootedGraph};
use cospectral::matrices::MatrixKind;

/// A graph6 code, or `-` for the next nonempty line of stdin.
pub fn graph(arg: &str) -> anyhow::Result<Graph> {
    let code = if arg == "-" {
        let stdin = std::io::stdin();
        let mut line = String::new();
        loop {
            line.clear();
            if stdin.lock().read_line(&mut line)? == 0 {
                bail!("stdin ended before a graph6 code");
            }
            if !line.trim().is_empty() {
                break line.trim().to_string();
            }
        }
    } else {
        arg.to_string()
    };
    decode_graph6(&code).with_context(|| format!("reading graph {code:?}"))
}

pub fn kind(arg: &str) -> anyhow::Result<MatrixKind> {
    arg.parse().with_context(|| format!("reading matrix kind {arg:?}"))
}

pub fn partition(n: usize, arg: Option<&str>) -> anyhow::Result<Partition> {
    match arg {
        None => Ok(Partition::whole(n)),
        Some(text) => Partition::parse_one_based(n, text).with_context(|| format!("reading partition {text:?}")),
    }
}

/// `graph6:root` with a 1-based root, or just `graph6` for root 1.
pub fn rooted(arg: &str) -> anyhow::Result<RootedGraph> {
    let (code, root) = match arg.rsplit_once(':') {
        Some((code, root)) => {
            let root: usize = root.parse().with_context(|| format!("reading root of {arg:?}"))?;
            if root == 0 {
                bail!("roots are 1-based in {arg:?}");
            }
            (code, root - 1)
        }
        None => (arg, 0),
    };
    let g = decode_graph6(code).with_context(|| format!("reading attachment {code:?}"))?;
    Ok(RootedGraph::new(g, root)?)
}

pub fn attachments(arg: &str) -> anyhow::Result<Vec<RootedGraph>> {
    arg.split(',').map(|s| rooted(s.trim())).collect()
}

/// 1-based comma-separated vertex list, returned 0-based.
pub fn vertices(n: usize, arg: &str) -> anyhow::Result<Vec<usize>> {
    arg.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let v: usize = s.trim().parse().with_context(|| format!("reading vertex {s:?}"))?;
            if v == 0 || v > n {
                bail!("vertex {v} is not in 1..={n}");
            }
            Ok(v - 1)
        })
        .collect()
}

/// Edges such as `1-2,2-3`, returned 0-based.
pub fn edges(arg: &str) -> anyhow::Result<Vec<(usize, usize)>> {
    arg.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (a, b) = s.split_once('-').with_context(|| format!("edge {s:?} is not of the form u-v"))?;
            let parse = |t: &str| -> anyhow::Result<usize> {
                let v: usize = t.trim().parse().with_context(|| format!("reading vertex {t:?}"))?;
                if v == 0 {
                    bail!("vertices are 1-based");
                }
                Ok(v - 1)
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_and_edges() {
        let h = rooted("Bg:2").unwrap();
        assert_eq!(h.order(), 3);
        assert_eq!(h.graph().degree(0), 2);
        assert!(rooted("Bg:0").is_err());
        assert_eq!(edges("1-2, 2-3").unwrap(), vec![(0, 1), (1, 2)]);
        assert!(edges("1-2-").is_err());
        assert_eq!(vertices(4, "4,1").unwrap(), vec![3, 0]);
        assert!(vertices(4, "5").is_err());
    }
}
