use std::io::Cursor;

use ckbound::bounds::nikiforov_upper;
use ckbound::graph::{g6_encode, Graph};
use ckbound::search::{
    exhaustive_max, local_search, objective, stream_max, ExhaustiveOptions, Method, SearchConfig, StreamMode,
};

fn all_labelled(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).unwrap()
        })
        .collect()
}

fn as_stream(graphs: &[Graph]) -> String {
    let mut s = String::from(">>graph6<<");
    for g in graphs {
        s.push_str(&g6_encode(g).unwrap());
        s.push('\n');
    }
    s
}

#[test]
fn exhaustive_and_stream_agree_up_to_six_vertices() {
    for n in 1..=6 {
        let graphs = all_labelled(n);
        let text = as_stream(&graphs);
        for k in 1..=n {
            let ex = exhaustive_max(k, n, ExhaustiveOptions::default()).unwrap();
            let st = stream_max(k, Cursor::new(text.as_bytes()), StreamMode::Strict).unwrap();
            assert_eq!(ex.best_ratio, st.best_ratio, "n={n} k={k}");
            assert_eq!(ex.best_graph, st.best_graph, "n={n} k={k}");
            assert_eq!(ex.evaluations, st.evaluations);
            ex.self_check().unwrap();
        }
    }
}

#[test]
fn four_vertex_isomorphism_classes_cover_the_exhaustive_maximum() {
    let classes: [&[(usize, usize)]; 11] = [
        &[],
        &[(0, 1)],
        &[(0, 1), (2, 3)],
        &[(0, 1), (1, 2)],
        &[(0, 1), (1, 2), (0, 2)],
        &[(0, 1), (0, 2), (0, 3)],
        &[(0, 1), (1, 2), (2, 3)],
        &[(0, 1), (1, 2), (0, 2), (2, 3)],
        &[(0, 1), (1, 2), (2, 3), (3, 0)],
        &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    ];
    let graphs: Vec<Graph> = classes
        .iter()
        .map(|e| Graph::from_edges(4, e.iter().copied()).unwrap())
        .collect();
    let text = as_stream(&graphs);
    for k in 1..=4 {
        let ex = exhaustive_max(k, 4, ExhaustiveOptions::default()).unwrap();
        let st = stream_max(k, Cursor::new(text.as_bytes()), StreamMode::Strict).unwrap();
        assert!((ex.best_ratio - st.best_ratio).abs() < 1e-12, "k={k}");
    }
    let two = stream_max(2, Cursor::new(text.as_bytes()), StreamMode::Strict).unwrap();
    assert!((two.best_ratio - 0.5).abs() < 1e-12);
}

#[test]
fn stream_reports_line_of_bad_input() {
    let err = stream_max(1, Cursor::new("Bw\n\nB?\n!!\n"), StreamMode::Strict).unwrap_err();
    assert!(matches!(err, ckbound::Error::Stream { line: 4, .. }), "{err:?}");
    let ok = stream_max(1, Cursor::new("Bw\n\nB?\n!!\n"), StreamMode::SkipInvalid).unwrap();
    assert_eq!(ok.best_graph, "Bw");
    assert_eq!(ok.evaluations, 2);
}

#[test]
fn local_search_is_deterministic_and_self_consistent() {
    for method in [Method::HillClimb, Method::Anneal] {
        for seed in [0u64, 7, 1234] {
            let cfg = SearchConfig::new(3, 9, method).seed(seed).budget(3000).restarts(2);
            let a = local_search(&cfg).unwrap();
            let b = local_search(&cfg).unwrap();
            assert_eq!(a, b);
            assert!(a.evaluations <= 3000);
            a.self_check().unwrap();
            assert!(a.best_ratio >= a.baseline_ratio.unwrap());
            assert!(a.best_ratio <= 1.0 / 3.0 + 1e-9);
        }
    }
}

#[test]
fn history_is_strictly_increasing() {
    let cfg = SearchConfig::new(4, 10, Method::Anneal)
        .seed(99)
        .budget(5000)
        .restarts(3);
    let r = local_search(&cfg).unwrap();
    for w in r.history.windows(2) {
        assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1);
    }
    assert_eq!(r.history.last().unwrap().1, r.best_ratio);
}

#[test]
fn witnesses_never_exceed_the_upper_bound() {
    for k in 2..=6 {
        let r = exhaustive_max(k, 6, ExhaustiveOptions::default()).unwrap();
        assert!(r.best_ratio <= nikiforov_upper(k).unwrap());
        let g = ckbound::graph::g6_decode(r.best_graph.as_bytes()).unwrap();
        assert_eq!(objective(&g, k).unwrap(), r.best_ratio);
    }
}
