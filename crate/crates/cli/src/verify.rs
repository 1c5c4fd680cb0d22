use std::io;

use ckbound::bounds::{blowup_spectrum, certify, nikiforov_upper, table_rows, TABLE_K_RANGE};
use ckbound::families::{
    asserted_descriptor, complete_descriptor, cycle_descriptor, drg_spectrum, gosset_array, icosahedron_from_edges,
    icosahedron_spectrum, johnson_descriptor, paley_descriptor, petersen_descriptor, srg_spectrum, SpectralDescriptor,
    SrgParams, ICOSAHEDRON_EDGES,
};
use ckbound::graph::{closed_blowup_graph, g6_decode, g6_encode, Graph};
use ckbound::spectral::{eigen_spectrum, spectrum_invariant_checks, EigenValue};
use ckbound::Spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{exit, Io, VerifyArgs};

/// Agreement required between analytic and numeric spectra.
const SPECTRUM_TOLERANCE: f64 = 1e-8;
const RANDOM_BLOWUP_SEED: u64 = 2024;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Largest deviation observed, where the check is numeric.
    pub residual: Option<f64>,
    pub detail: String,
}

fn check(name: impl Into<String>, residual: f64, tol: f64, detail: impl Into<String>) -> CheckReport {
    CheckReport {
        name: name.into(),
        passed: residual <= tol,
        residual: Some(residual),
        detail: detail.into(),
    }
}

fn failed(name: impl Into<String>, detail: impl Into<String>) -> CheckReport {
    CheckReport {
        name: name.into(),
        passed: false,
        residual: None,
        detail: detail.into(),
    }
}

fn deviation(a: &Spectrum, b: &Spectrum) -> f64 {
    a.max_abs_deviation(b).unwrap_or(f64::INFINITY)
}

fn icosahedron_checks(edges: &[(usize, usize)]) -> Vec<CheckReport> {
    let g = match icosahedron_from_edges(edges) {
        Ok(g) => g,
        Err(e) => return vec![failed("icosahedron spectrum", e.to_string())],
    };
    let stated = icosahedron_spectrum();
    let mut out = vec![match eigen_spectrum(&g) {
        Ok(s) => check(
            "icosahedron spectrum",
            deviation(&s, &stated),
            SPECTRUM_TOLERANCE,
            format!("edge list vs {stated}"),
        ),
        Err(e) => failed("icosahedron spectrum", e.to_string()),
    }];
    let base = asserted_descriptor("icosahedron", 12, stated, "stated spectrum").expect("valid spectrum");
    let mut worst = 0f64;
    for t in 1..=3 {
        let analytic = blowup_spectrum(&base, t).expect("t >= 1").spectrum;
        worst = match closed_blowup_graph(&g, t).and_then(|b| eigen_spectrum(&b)) {
            Ok(s) => worst.max(deviation(&s, &analytic)),
            Err(_) => f64::INFINITY,
        };
    }
    out.push(check(
        "icosahedron blowups t = 1..3",
        worst,
        SPECTRUM_TOLERANCE,
        "analytic vs explicit",
    ));
    out
}

fn random_blowups() -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_BLOWUP_SEED);
    let mut worst = 0f64;
    for _ in 0..50 {
        let n = rng.gen_range(1..=10);
        let mut g = Graph::empty(n).expect("n >= 1");
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(0.5) {
                    g.toggle_edge(i, j);
                }
            }
        }
        let result = SpectralDescriptor::explicit("random", g.clone()).and_then(|d| {
            let mut w = 0f64;
            for t in 1..=3 {
                let analytic = blowup_spectrum(&d, t)?.spectrum;
                let numeric = eigen_spectrum(&closed_blowup_graph(&g, t)?)?;
                w = w.max(deviation(&analytic, &numeric));
            }
            Ok(w)
        });
        worst = worst.max(result.unwrap_or(f64::INFINITY));
    }
    check(
        "random blowups (50 graphs, t = 1..3)",
        worst,
        SPECTRUM_TOLERANCE,
        "analytic vs explicit",
    )
}

/// `Σm = v`, `Σmθ = 0` and `Σmθ² = vk`, in exact arithmetic.
fn moment_check(name: String, d: &SpectralDescriptor, v: u64, k: u64) -> CheckReport {
    let s = d.spectrum();
    let trace = s.power_sum(1);
    let square = s.power_sum(2);
    let ok = s.n() as u64 == v && trace == EigenValue::integer(0) && square == EigenValue::integer((v * k) as i128);
    let residual = (s.n() as f64 - v as f64).abs() + trace.to_f64().abs() + (square.to_f64() - (v * k) as f64).abs();
    CheckReport {
        name,
        passed: ok,
        residual: Some(residual),
        detail: format!("{s}"),
    }
}

fn parameter_checks() -> Vec<CheckReport> {
    let mut out = Vec::new();
    for p in [
        SrgParams::new(9, 4, 1, 2),
        SrgParams::new(10, 3, 0, 1),
        SrgParams::new(57, 24, 11, 9),
        SrgParams::new(125, 72, 45, 36),
        SrgParams::new(243, 132, 81, 60),
    ] {
        out.push(match srg_spectrum(p) {
            Ok(d) => moment_check(format!("{p} identities"), &d, p.v, p.k),
            Err(e) => failed(format!("{p} identities"), e.to_string()),
        });
    }
    let array = gosset_array();
    out.push(match drg_spectrum(&array) {
        Ok(d) => moment_check(format!("gosset {array} identities"), &d, 56, 27),
        Err(e) => failed("gosset identities", e.to_string()),
    });
    let pair = drg_spectrum(&array)
        .and_then(|g| certify(&g, 8))
        .and_then(|g| Ok((g, certify(&johnson_descriptor(8, 2)?, 8)?)));
    out.push(match pair {
        Ok((g, j)) => CheckReport {
            name: "gosset and johnson:8,2 agree at k = 8".into(),
            passed: g.ratio == j.ratio,
            residual: Some((g.ratio.to_f64() - j.ratio.to_f64()).abs()),
            detail: format!("{} vs {}", g.ratio, j.ratio),
        },
        Err(e) => failed("gosset and johnson:8,2 agree at k = 8", e.to_string()),
    });
    out
}

fn family_invariants() -> CheckReport {
    type Builder = fn() -> ckbound::Result<SpectralDescriptor>;
    let builders: [(&str, Builder); 6] = [
        ("petersen", petersen_descriptor),
        ("johnson:8,2", || johnson_descriptor(8, 2)),
        ("paley:13", || paley_descriptor(13)),
        ("cycle:7", || cycle_descriptor(7)),
        ("cycle:6", || cycle_descriptor(6)),
        ("complete:6", || complete_descriptor(6)),
    ];
    let mut worst = 0f64;
    let mut bad = Vec::new();
    for (name, build) in builders {
        match build() {
            Ok(d) => {
                let r = spectrum_invariant_checks(d.graph().expect("explicit"), d.spectrum());
                worst = worst
                    .max(r.trace_residual)
                    .max(r.edge_residual)
                    .max(r.triangle_residual);
                if !r.passed {
                    bad.push(name);
                }
            }
            Err(_) => bad.push(name),
        }
    }
    CheckReport {
        name: "trace, edge and triangle identities".into(),
        passed: bad.is_empty(),
        residual: Some(worst),
        detail: if bad.is_empty() {
            "petersen, johnson:8,2, paley:13, cycle:7, cycle:6, complete:6".into()
        } else {
            format!("failed: {}", bad.join(", "))
        },
    }
}

fn table_checks() -> Vec<CheckReport> {
    let rows = match table_rows(TABLE_K_RANGE) {
        Ok(r) => r,
        Err(e) => return vec![failed("table", e.to_string())],
    };
    let mut out = Vec::new();
    let mut margin = f64::NEG_INFINITY;
    for r in &rows {
        let expected = r.entry.expected.to_f64();
        let residual = r
            .certificates
            .iter()
            .map(|c| (c.ratio.to_f64() - expected).abs())
            .fold(0f64, f64::max);
        for c in &r.certificates {
            margin = margin.max(c.ratio.to_f64() - nikiforov_upper(c.k).expect("k >= 4"));
        }
        out.push(CheckReport {
            name: format!("table row k = {}", r.entry.k),
            passed: r.matched(),
            residual: Some(residual),
            detail: format!(
                "{} ({}) from {}",
                r.entry.expected,
                r.entry.printed_decimal,
                r.entry.sources.join(" + ")
            ),
        });
    }
    out.push(CheckReport {
        name: "table below 1/(2*sqrt(k-1))".into(),
        passed: margin < 0.0,
        residual: Some(margin),
        detail: "largest ratio minus upper bound".into(),
    });
    out
}

fn graph6_check() -> CheckReport {
    let mut count = 0usize;
    let mut bad = 0usize;
    for n in 1..=5usize {
        let m = n * (n - 1) / 2;
        for mask in 0u32..(1 << m) {
            let mut g = Graph::empty(n).expect("n >= 1");
            let mut bit = 0;
            for j in 1..n {
                for i in 0..j {
                    if mask >> bit & 1 == 1 {
                        g.toggle_edge(i, j);
                    }
                    bit += 1;
                }
            }
            count += 1;
            let back = g6_encode(&g).and_then(|s| g6_decode(s.as_bytes()));
            if back.as_ref() != Ok(&g) {
                bad += 1;
            }
        }
    }
    CheckReport {
        name: "graph6 round trip (n <= 5)".into(),
        passed: bad == 0,
        residual: None,
        detail: format!("{count} graphs, {bad} failures"),
    }
}

/// The full cross-check suite, using `icosahedron_edges` for the
/// icosahedron checks.
pub fn run_checks(icosahedron_edges: &[(usize, usize)]) -> Vec<CheckReport> {
    let mut out = icosahedron_checks(icosahedron_edges);
    out.push(random_blowups());
    out.extend(parameter_checks());
    out.push(family_invariants());
    out.extend(table_checks());
    out.push(graph6_check());
    out
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| format!("line {}: {e}", i + 1))?;
        match nums[..] {
            [u, v] => edges.push((u, v)),
            _ => return Err(format!("line {}: expected two vertex numbers", i + 1)),
        }
    }
    Ok(edges)
}

pub fn verify(args: &VerifyArgs, json: bool, io: &mut Io<'_>) -> io::Result<i32> {
    let edges = match &args.icosahedron_edges {
        None => ICOSAHEDRON_EDGES.to_vec(),
        Some(path) => match std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|t| parse_edges(&t))
        {
            Ok(e) => e,
            Err(e) => return io.usage(format!("{}: {e}", path.display())),
        },
    };
    let reports = run_checks(&edges);
    if json {
        io.json(&reports)?;
    } else {
        let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
        for r in &reports {
            let status = if r.passed { "pass" } else { "FAIL" };
            let residual = r.residual.map(|x| format!("{x:.3e}")).unwrap_or_else(|| "-".into());
            writeln!(io.out, "{status}  {:<width$}  {residual:>10}  {}", r.name, r.detail)?;
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(io.err, "{passed}/{} checks passed", reports.len())?;
    Ok(if passed == reports.len() {
        exit::SUCCESS
    } else {
        exit::FAILURE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_file_format() {
        assert_eq!(parse_edges("0 1\n# c\n\n2,3 # x\n").unwrap(), vec![(0, 1), (2, 3)]);
        assert!(parse_edges("0 1 2\n").is_err());
        assert!(parse_edges("0 x\n").is_err());
    }

    #[test]
    fn built_in_checks_pass() {
        let reports = run_checks(&ICOSAHEDRON_EDGES);
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(reports.iter().any(|r| r.name == "table row k = 24"));
    }

    #[test]
    fn swapped_edge_fails_spectrum_check() {
        let mut edges = ICOSAHEDRON_EDGES.to_vec();
        // Replace one edge with a non-edge, keeping 30 edges.
        let g = icosahedron_from_edges(&edges).unwrap();
        let missing = (1..12).find(|&v| !g.has_edge(0, v)).unwrap();
        let pos = edges.iter().position(|&(u, _)| u == 0).unwrap();
        edges[pos] = (0, missing);
        let reports = run_checks(&edges);
        assert!(!reports[0].passed);
        assert!(!reports[1].passed);
        assert!(reports[2..].iter().all(|r| r.passed));
    }
}
