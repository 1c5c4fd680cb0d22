use std::cmp::Ordering;
use std::io::BufRead;

use super::{compare_candidates, objective, Method, SearchResult};
use crate::error::{Error, Result};
use crate::graph::{g6_decode, g6_encode, G6_HEADER};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum StreamMode {
    /// Any malformed line is an error.
    #[default]
    Strict,
    /// Malformed lines are logged and skipped.
    SkipInvalid,
}

/// Maximum limit ratio over a stream of graph6 lines. Blank lines and a
/// `>>graph6<<` header are ignored. Line numbers in errors are 1-based.
pub fn stream_max<R: BufRead>(k: usize, reader: R, mode: StreamMode) -> Result<SearchResult> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut best: Option<(f64, String, usize)> = None;
    let mut evaluations = 0u64;
    let mut history = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Stream {
            line: lineno,
            message: e.to_string(),
        })?;
        let text = line.trim();
        let text = text
            .strip_prefix(std::str::from_utf8(G6_HEADER).expect("ascii"))
            .unwrap_or(text);
        if text.is_empty() {
            continue;
        }
        let scored = g6_decode(text.as_bytes()).and_then(|g| {
            if g.n() < k {
                return Err(Error::invalid(format!(
                    "graph has {} vertices, fewer than k = {k}",
                    g.n()
                )));
            }
            Ok((objective(&g, k)?, g6_encode(&g)?, g.n()))
        });
        let (ratio, g6, n) = match scored {
            Ok(v) => v,
            Err(e) => match mode {
                StreamMode::Strict => {
                    return Err(Error::Stream {
                        line: lineno,
                        message: e.to_string(),
                    })
                }
                StreamMode::SkipInvalid => {
                    log::warn!("line {lineno}: skipped: {e}");
                    continue;
                }
            },
        };
        evaluations += 1;
        let better = match &best {
            None => true,
            Some((br, bs, _)) => compare_candidates((ratio, &g6), (*br, bs)) == Ordering::Less,
        };
        if better {
            if best.as_ref().is_none_or(|b| ratio > b.0) {
                history.push((evaluations, ratio));
            }
            best = Some((ratio, g6, n));
        }
    }

    let (best_ratio, best_graph, n) = best.ok_or(Error::NoCandidates)?;
    let result = SearchResult {
        k,
        n,
        method: Method::Stream,
        seed: None,
        best_ratio,
        best_graph,
        evaluations,
        baseline_ratio: None,
        history,
    };
    result.self_check()?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_triangle() {
        let r = stream_max(1, "Bw\n".as_bytes(), StreamMode::Strict).unwrap();
        assert!((r.best_ratio - 1.0).abs() < 1e-12);
        assert_eq!(r.best_graph, "Bw");
    }

    #[test]
    fn empty_stream() {
        assert_eq!(
            stream_max(1, "".as_bytes(), StreamMode::Strict),
            Err(Error::NoCandidates)
        );
        assert_eq!(
            stream_max(1, ">>graph6<<\n\n".as_bytes(), StreamMode::Strict),
            Err(Error::NoCandidates)
        );
    }

    #[test]
    fn bad_lines() {
        let input = "Bw\nB!\nB?\n";
        match stream_max(1, input.as_bytes(), StreamMode::Strict) {
            Err(Error::Stream { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let r = stream_max(1, input.as_bytes(), StreamMode::SkipInvalid).unwrap();
        assert_eq!(r.evaluations, 2);
        // too few vertices for k
        assert!(matches!(
            stream_max(3, "A_\n".as_bytes(), StreamMode::Strict),
            Err(Error::Stream { line: 1, .. })
        ));
    }

    #[test]
    fn ties_prefer_smallest_string() {
        // C6 and 3K2 both give 1/3 at k = 3; input order must not matter
        let c6 = crate::graph::g6_encode(&crate::graph::cycle(6).unwrap()).unwrap();
        let three_k2 =
            crate::graph::g6_encode(&crate::graph::Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap()).unwrap();
        let a = stream_max(3, format!("{c6}\n{three_k2}\n").as_bytes(), StreamMode::Strict).unwrap();
        let b = stream_max(3, format!("{three_k2}\n{c6}\n").as_bytes(), StreamMode::Strict).unwrap();
        assert_eq!(a.best_graph, b.best_graph);
        assert_eq!(a.best_graph, std::cmp::min(c6, three_k2));
    }
}
