use std::fs::File;
use std::io::{self, BufReader};
use std::path::Path;

use ckbound::bounds::certify;
use ckbound::families::SpectralDescriptor;
use ckbound::graph::g6_decode;
use ckbound::search::{
    c3_campaign, exhaustive_max, local_search, open_threshold, stream_max, AnnealSchedule, CampaignConfig,
    ExhaustiveOptions, Method, SearchConfig, SearchResult, StreamMode, Witness, DEFAULT_SEED, EXCEEDANCE_SLACK,
};
use ckbound::spectral::eigen_spectrum;

use crate::{exit, parse_inclusive_range, CampaignArgs, Io, MethodArg, SearchArgs};

/// Small fraction within `1e-12` of `x`, found from continued fraction
/// convergents. Only used to annotate floating ratios.
fn nearby_fraction(x: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..20 {
        let a = r.floor();
        if a.abs() > 1e9 {
            return None;
        }
        let a = a as i64;
        (h0, h1) = (h1, a.checked_mul(h1)?.checked_add(h0)?);
        (k0, k1) = (k1, a.checked_mul(k1)?.checked_add(k0)?);
        if k1 > 10_000 {
            return None;
        }
        if (h1 as f64 / k1 as f64 - x).abs() <= 1e-12 {
            return Some((h1, k1));
        }
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

pub(crate) fn show_ratio(x: f64) -> String {
    match nearby_fraction(x) {
        Some((p, 1)) => format!("{x} (= {p})"),
        Some((p, q)) => format!("{x} (≈ {p}/{q})"),
        None => x.to_string(),
    }
}

fn write_witness(path: &Path, graph6: &str, k: usize) -> ckbound::Result<Witness> {
    let graph = g6_decode(graph6.as_bytes())?;
    let descriptor = SpectralDescriptor::explicit(format!("g6:{graph6}"), graph.clone())?;
    let witness = Witness {
        graph6: graph6.to_string(),
        spectrum: eigen_spectrum(&graph)?,
        certificate: certify(&descriptor, k)?,
    };
    let text = serde_json::to_string_pretty(&witness).expect("witness serializes");
    std::fs::write(path, text + "\n")
        .map_err(|e| ckbound::Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    Ok(witness)
}

/// Flag combinations that make no sense for the chosen mode.
fn conflicts(a: &SearchArgs) -> Vec<&'static str> {
    let mut bad = Vec::new();
    let local = matches!(a.method, None | Some(MethodArg::HillClimb | MethodArg::Anneal));
    if a.g6_file.is_some() {
        if a.n.is_some() {
            bad.push("--n cannot be combined with --g6-file");
        }
        if a.method.is_some() {
            bad.push("--method cannot be combined with --g6-file");
        }
    } else {
        if a.n.is_none() {
            bad.push("--n is required unless --g6-file is given");
        }
        if a.skip_invalid {
            bad.push("--skip-invalid only applies with --g6-file");
        }
    }
    if a.allow_n8 && a.method != Some(MethodArg::Exhaustive) {
        bad.push("--allow-n8 only applies to --method exhaustive");
    }
    if (a.g6_file.is_some() || !local) && (a.seed.is_some() || a.budget.is_some() || a.restarts.is_some()) {
        bad.push("--seed, --budget and --restarts only apply to hill-climb and anneal");
    }
    let anneal = a.g6_file.is_none() && matches!(a.method, None | Some(MethodArg::Anneal));
    if !anneal && (a.t0.is_some() || a.cooling.is_some() || a.max_rejections.is_some()) {
        bad.push("--t0, --cooling and --max-rejections only apply to anneal");
    }
    bad
}

fn run_search(a: &SearchArgs) -> ckbound::Result<SearchResult> {
    if let Some(path) = &a.g6_file {
        let mode = if a.skip_invalid {
            StreamMode::SkipInvalid
        } else {
            StreamMode::Strict
        };
        if path == "-" {
            return stream_max(a.k, io::stdin().lock(), mode);
        }
        let file = File::open(path).map_err(|e| ckbound::Error::InvalidArgument(format!("{path}: {e}")))?;
        return stream_max(a.k, BufReader::new(file), mode);
    }
    let n = a.n.expect("checked by conflicts");
    let method = match a.method.unwrap_or(MethodArg::Anneal) {
        MethodArg::Exhaustive => return exhaustive_max(a.k, n, ExhaustiveOptions { allow_n8: a.allow_n8 }),
        MethodArg::HillClimb => Method::HillClimb,
        MethodArg::Anneal => Method::Anneal,
    };
    let defaults = AnnealSchedule::default();
    let cfg = SearchConfig {
        k: a.k,
        n: Some(n),
        method,
        seed: a.seed.unwrap_or(DEFAULT_SEED),
        budget: a.budget.unwrap_or(100_000),
        restarts: a.restarts.unwrap_or(0),
        anneal: AnnealSchedule {
            initial_temperature: a.t0.unwrap_or(defaults.initial_temperature),
            cooling: a.cooling.unwrap_or(defaults.cooling),
            max_rejections: a.max_rejections.unwrap_or(defaults.max_rejections),
        },
    };
    local_search(&cfg)
}

pub fn search(a: &SearchArgs, json: bool, io: &mut Io<'_>) -> io::Result<i32> {
    let bad = conflicts(a);
    if !bad.is_empty() {
        return io.usage(bad.join("; "));
    }
    let result = match run_search(a) {
        Ok(r) => r,
        Err(e) => return io.fail(&e),
    };
    if json {
        io.json(&result)?;
    } else {
        writeln!(io.out, "method:       {:?}", result.method)?;
        writeln!(io.out, "k:            {}", result.k)?;
        writeln!(io.out, "n:            {}", result.n)?;
        if let Some(seed) = result.seed {
            writeln!(io.out, "seed:         {seed}")?;
        }
        writeln!(io.out, "best ratio:   {}", show_ratio(result.best_ratio))?;
        writeln!(io.out, "witness:      {}", result.best_graph)?;
        writeln!(io.out, "evaluations:  {}", result.evaluations)?;
        if let Some(b) = result.baseline_ratio {
            writeln!(io.out, "baseline:     {b}")?;
        }
    }
    flag_exceedance(&result, open_threshold(result.k), &a.witness, io)
}

/// Writes the witness and returns exit code 10 when `result` beats
/// `threshold` by more than the search slack.
fn flag_exceedance(result: &SearchResult, threshold: Option<f64>, witness: &Path, io: &mut Io<'_>) -> io::Result<i32> {
    let Some(threshold) = threshold.filter(|t| result.best_ratio > t + EXCEEDANCE_SLACK) else {
        return Ok(exit::SUCCESS);
    };
    writeln!(
        io.err,
        "FOUND: ratio {} exceeds the threshold {threshold} for k = {}",
        result.best_ratio, result.k
    )?;
    match write_witness(witness, &result.best_graph, result.k) {
        Ok(_) => {
            writeln!(io.err, "witness written to {}", witness.display())?;
            Ok(exit::EXCEEDANCE)
        }
        Err(e) => io.fail(&e),
    }
}

pub fn campaign(a: &CampaignArgs, json: bool, io: &mut Io<'_>) -> io::Result<i32> {
    let Some((n0, n1)) = parse_inclusive_range(&a.n) else {
        return io.usage(format!("--n must look like `6..12`, got '{}'", a.n));
    };
    let Some((s0, s1)) = parse_inclusive_range(&a.seeds) else {
        return io.usage(format!("--seeds must look like `1..4`, got '{}'", a.seeds));
    };
    let mut cfg = CampaignConfig::new((n0 as usize..=n1 as usize).collect(), (s0..=s1).collect(), a.budget);
    cfg.restarts = a.restarts;
    let report = match c3_campaign(&cfg) {
        Ok(r) => r,
        Err(e) => return io.fail(&e),
    };
    if json {
        io.json(&report)?;
    } else {
        writeln!(io.out, "n    seed  best ratio                               witness")?;
        for e in &report.per_n {
            writeln!(
                io.out,
                "{:<4} {:<5} {:<40} {}",
                e.n,
                e.seed,
                show_ratio(e.best_ratio),
                e.best_graph
            )?;
        }
        if let Some(g) = &report.global_best {
            writeln!(
                io.out,
                "best: {} at n = {} ({})",
                show_ratio(g.best_ratio),
                g.n,
                g.best_graph
            )?;
        }
    }
    if let Some(w) = &report.witness {
        let text = serde_json::to_string_pretty(w).expect("witness serializes");
        if let Err(e) = std::fs::write(&a.witness, text + "\n") {
            writeln!(io.err, "error: {}: {e}", a.witness.display())?;
            return Ok(exit::FAILURE);
        }
        writeln!(
            io.err,
            "FOUND: ratio above 1/3; witness written to {}",
            a.witness.display()
        )?;
        return Ok(exit::EXCEEDANCE);
    }
    Ok(exit::SUCCESS)
}
