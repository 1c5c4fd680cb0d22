use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{objective, Method, SearchConfig, SearchResult};
use crate::error::{Error, Result};
use crate::graph::{g6_encode, Graph};

pub const LOCAL_SEARCH_MAX_N: usize = 64;

struct Tracker {
    k: usize,
    evaluations: u64,
    best_ratio: f64,
    best_graph: Option<Graph>,
    history: Vec<(u64, f64)>,
}

impl Tracker {
    fn eval(&mut self, g: &Graph) -> Result<f64> {
        let r = objective(g, self.k)?;
        self.evaluations += 1;
        if r > self.best_ratio {
            self.best_ratio = r;
            self.best_graph = Some(g.clone());
            self.history.push((self.evaluations, r));
        }
        Ok(r)
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("n >= 1");
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(0.5) {
                g.toggle_edge(u, v);
            }
        }
    }
    g
}

/// Seeded local search over edge sets; fully determined by `cfg`.
///
/// Up to `restarts + 1` runs, each from a uniform random graph, share the
/// evaluation budget. A run ends at a local optimum (hill climbing) or
/// after `max_rejections` consecutive rejected moves (annealing); the
/// next run then starts with whatever budget is left.
pub fn local_search(cfg: &SearchConfig) -> Result<SearchResult> {
    let n = cfg
        .n
        .ok_or_else(|| Error::invalid("local search needs a vertex count"))?;
    if !(matches!(cfg.method, Method::HillClimb | Method::Anneal)) {
        return Err(Error::invalid(format!(
            "local search does not run method {:?}",
            cfg.method
        )));
    }
    if n == 0 || n > LOCAL_SEARCH_MAX_N {
        return Err(Error::invalid(format!(
            "local search needs 1 <= n <= {LOCAL_SEARCH_MAX_N}, got {n}"
        )));
    }
    if cfg.k == 0 || cfg.k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got k = {}, n = {n}", cfg.k)));
    }
    if cfg.budget == 0 {
        return Err(Error::invalid("budget must be at least 1"));
    }
    let schedule = cfg.anneal;
    if cfg.method == Method::Anneal
        && !(schedule.initial_temperature > 0.0 && schedule.cooling > 0.0 && schedule.cooling <= 1.0)
    {
        return Err(Error::invalid("anneal needs T0 > 0 and cooling in (0, 1]"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let mut tr = Tracker {
        k: cfg.k,
        evaluations: 0,
        best_ratio: f64::NEG_INFINITY,
        best_graph: None,
        history: Vec::new(),
    };
    let mut baseline = f64::NEG_INFINITY;
    let runs = cfg.restarts as u64 + 1;

    for _ in 0..runs {
        if tr.evaluations >= cfg.budget {
            break;
        }
        let run_end = cfg.budget;
        let mut state = random_graph(&mut rng, n);
        let mut current = tr.eval(&state)?;
        baseline = baseline.max(current);
        if pairs.is_empty() {
            continue;
        }

        match cfg.method {
            Method::HillClimb => {
                'climb: while tr.evaluations < run_end {
                    pairs.shuffle(&mut rng);
                    for &(u, v) in &pairs {
                        if tr.evaluations >= run_end {
                            break 'climb;
                        }
                        state.toggle_edge(u, v);
                        let r = tr.eval(&state)?;
                        if r > current {
                            current = r;
                            continue 'climb;
                        }
                        state.toggle_edge(u, v);
                    }
                    // no single toggle improves: local optimum
                    break;
                }
            }
            Method::Anneal => {
                let mut temperature = schedule.initial_temperature;
                let mut rejections = 0;
                while tr.evaluations < run_end {
                    let (u, v) = pairs[rng.gen_range(0..pairs.len())];
                    state.toggle_edge(u, v);
                    let r = tr.eval(&state)?;
                    let delta = r - current;
                    if delta >= 0.0 || rng.gen::<f64>() < (delta / temperature).exp() {
                        current = r;
                        temperature *= schedule.cooling;
                        rejections = 0;
                    } else {
                        state.toggle_edge(u, v);
                        rejections += 1;
                        if rejections >= schedule.max_rejections {
                            break;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    let best_graph = tr.best_graph.expect("at least one evaluation");
    let result = SearchResult {
        k: cfg.k,
        n,
        method: cfg.method,
        seed: Some(cfg.seed),
        best_ratio: tr.best_ratio,
        best_graph: g6_encode(&best_graph)?,
        evaluations: tr.evaluations,
        baseline_ratio: Some(baseline),
        history: tr.history,
    };
    result.self_check()?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hill_climb_k1_reaches_complete() {
        for seed in 0..5 {
            let cfg = SearchConfig::new(1, 5, Method::HillClimb)
                .seed(seed)
                .budget(1000)
                .restarts(3);
            let r = local_search(&cfg).unwrap();
            assert!((r.best_ratio - 1.0).abs() < 1e-12, "seed {seed}: {r:?}");
            assert_eq!(r.best_graph, "D~{");
        }
    }

    #[test]
    fn deterministic_and_monotone() {
        let cfg = SearchConfig::new(3, 7, Method::Anneal)
            .seed(11)
            .budget(3000)
            .restarts(2);
        let a = local_search(&cfg).unwrap();
        let b = local_search(&cfg).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.best_ratio >= a.baseline_ratio.unwrap());
        assert!(a.evaluations <= 3000);
        assert!(a.history.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
    }

    #[test]
    fn config_errors() {
        assert!(local_search(&SearchConfig::new(3, 2, Method::Anneal)).is_err());
        assert!(local_search(&SearchConfig::new(3, 65, Method::Anneal)).is_err());
        assert!(local_search(&SearchConfig::new(1, 4, Method::Exhaustive)).is_err());
        assert!(local_search(&SearchConfig::new(1, 4, Method::Anneal).budget(0)).is_err());
    }

    #[test]
    fn single_vertex() {
        let r = local_search(&SearchConfig::new(1, 1, Method::HillClimb).budget(10)).unwrap();
        assert_eq!(r.best_ratio, 1.0);
    }
}
