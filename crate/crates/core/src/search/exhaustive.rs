use std::cmp::Ordering;

use rayon::prelude::*;

use super::{compare_candidates, objective, Method, SearchResult};
use crate::error::{Error, Result};
use crate::graph::{g6_encode, Graph};

/// Largest `n` searched without [`ExhaustiveOptions::allow_n8`].
pub const EXHAUSTIVE_MAX_N: usize = 7;

const CHUNKS: u64 = 256;

#[derive(Clone, Copy, Debug, Default)]
pub struct ExhaustiveOptions {
    /// Permit `n = 8` (2^28 candidates).
    pub allow_n8: bool,
}

/// Graph whose edges are the set bits of `mask`, in graph6 bit order
/// `(0,1), (0,2), (1,2), (0,3), …`.
fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n).expect("n >= 1");
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if mask >> bit & 1 == 1 {
                g.set(i, j, true);
            }
            bit += 1;
        }
    }
    g
}

/// Maximum of `(λ_k + 1)/n` over all labelled graphs on `n` vertices.
///
/// Candidates are split into fixed chunks evaluated in parallel; the merge
/// uses [`compare_candidates`], so the witness matches a serial scan.
pub fn exhaustive_max(k: usize, n: usize, opts: ExhaustiveOptions) -> Result<SearchResult> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::invalid(format!(
            "exhaustive search needs 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    let cap = if opts.allow_n8 { 8 } else { EXHAUSTIVE_MAX_N };
    if n > cap {
        return Err(Error::invalid(format!(
            "exhaustive search refused for n = {n}: limit is {EXHAUSTIVE_MAX_N} (8 with explicit acknowledgment); use stream mode with an external enumerator"
        )));
    }
    let total = 1u64 << (n * (n - 1) / 2);
    let chunks = CHUNKS.min(total);
    let per = total.div_ceil(chunks);

    let best = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Option<(f64, String)>> {
            let mut best: Option<(f64, String)> = None;
            let mut best_key = f64::NEG_INFINITY;
            for mask in c * per..((c + 1) * per).min(total) {
                let g = graph_from_mask(n, mask);
                let r = objective(&g, k)?;
                // cheap pre-filter before building the graph6 string
                if r < best_key - super::RATIO_TIE_TOLERANCE {
                    continue;
                }
                let s = g6_encode(&g)?;
                let better = match &best {
                    None => true,
                    Some((br, bs)) => compare_candidates((r, &s), (*br, bs)) == Ordering::Less,
                };
                if better {
                    best_key = r;
                    best = Some((r, s));
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .min_by(|a, b| compare_candidates((a.0, &a.1), (b.0, &b.1)))
        .expect("at least one candidate");

    let result = SearchResult {
        k,
        n,
        method: Method::Exhaustive,
        seed: None,
        best_ratio: best.0,
        best_graph: best.1,
        evaluations: total,
        baseline_ratio: None,
        history: Vec::new(),
    };
    result.self_check()?;
    Ok(result)
}
