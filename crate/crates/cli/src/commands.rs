use std::io;
use std::time::Instant;

use ckbound::bounds::{certify, finite_ratio, kth_largest_of_blowup, nikiforov_upper, table_rows, TableRow};
use ckbound::families::SpectralDescriptor;
use ckbound::spectral::{format_sig, EigenValue, DISPLAY_MERGE_GAP};
use ckbound::Spectrum;
use serde::{Deserialize, Serialize};

use crate::{exit, parse_inclusive_range, BoundArgs, GraphExpr, Io, SpectrumArgs, TableArgs};

/// Parses and resolves a graph expression, reporting failures on `io.err`.
fn descriptor(src: &str, io: &mut Io<'_>) -> io::Result<Result<SpectralDescriptor, i32>> {
    let expr = match GraphExpr::parse(src) {
        Ok(e) => e,
        Err(e) => {
            writeln!(io.err, "error: {e}")?;
            return Ok(Err(exit::USAGE));
        }
    };
    Ok(match expr.resolve() {
        Ok(d) => Ok(d),
        Err(e) => Err(io.fail(&e)?),
    })
}

/// `ratio ≈ decimal` for exact values, the decimal alone otherwise.
pub(crate) fn show_value(v: &EigenValue) -> String {
    let dec = format_sig(v.to_f64(), 6);
    match v.as_surd() {
        Some(s) if s.is_rational() && s.as_rational().is_some_and(|r| r.is_integer()) => s.to_pretty_string(),
        Some(s) => format!("{} ≈ {dec}", s.to_pretty_string()),
        None => format!("{dec} (numeric)"),
    }
}

#[derive(Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub graph: String,
    pub n: usize,
    pub exact: bool,
    pub spectrum: Spectrum,
}

pub fn spectrum(args: &SpectrumArgs, json: bool, io: &mut Io<'_>) -> io::Result<i32> {
    let d = match descriptor(&args.expr, io)? {
        Ok(d) => d,
        Err(code) => return Ok(code),
    };
    let s = if args.numeric {
        d.spectrum().to_numeric()
    } else {
        d.spectrum().clone()
    };
    if !s.is_exact() {
        if args.exact {
            writeln!(
                io.err,
                "note: no exact spectrum is known for {}; showing numeric values",
                d.name
            )?;
        }
        writeln!(
            io.err,
            "note: numeric values from the Jacobi eigensolver, 6 significant figures, \
             values closer than {DISPLAY_MERGE_GAP:e} merged in the text form"
        )?;
    }
    if json {
        io.json(&SpectrumOutput {
            graph: d.name.clone(),
            n: d.n(),
            exact: s.is_exact(),
            spectrum: s,
        })?;
    } else {
        writeln!(io.out, "{s}")?;
    }
    Ok(exit::SUCCESS)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactPair {
    pub exact: Option<String>,
    pub float: f64,
}

impl From<&EigenValue> for ExactPair {
    fn from(v: &EigenValue) -> Self {
        ExactPair {
            exact: v.to_exact_string(),
            float: v.to_f64(),
        }
    }
}

/// `λ_k(G^[t]) / (n·t)` for one fixed blowup factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteBound {
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub lambda_k: ExactPair,
    pub ratio: ExactPair,
}

fn upper_line(k: usize) -> String {
    match nikiforov_upper(k) {
        Ok(u) => format!("{} (1/(2*sqrt({})))", format_sig(u, 6), k - 1),
        Err(_) => "none for k = 1".into(),
    }
}

pub fn bound(args: &BoundArgs, json: bool, io: &mut Io<'_>) -> io::Result<i32> {
    let t = match args.t.as_str() {
        "sup" => None,
        s => match s.parse::<usize>() {
            Ok(t) if t >= 1 => Some(t),
            _ => return io.usage(format!("--t must be `sup` or a positive integer, got '{s}'")),
        },
    };
    let d = match descriptor(&args.expr, io)? {
        Ok(d) => d,
        Err(code) => return Ok(code),
    };
    let limit = d.n() * t.unwrap_or(1);
    if args.k == 0 || args.k > limit {
        return io.usage(format!("--k must be between 1 and {limit} for {}", d.name));
    }

    match t {
        None => {
            let cert = match certify(&d, args.k) {
                Ok(c) => c,
                Err(e) => return io.fail(&e),
            };
            if json {
                io.json(&cert)?;
            } else {
                writeln!(io.out, "graph:        {} (n = {})", d.name, d.n())?;
                writeln!(io.out, "k:            {}", cert.k)?;
                writeln!(io.out, "ratio:        {}", show_value(&cert.ratio))?;
                if let Some(s) = cert.ratio.to_exact_string() {
                    writeln!(io.out, "exact:        {s}")?;
                }
                let attained = if cert.attained {
                    "yes"
                } else {
                    "no (supremum approached from below)"
                };
                writeln!(io.out, "attained:     {attained}")?;
                writeln!(io.out, "verification: {}", cert.verification)?;
                writeln!(io.out, "upper bound:  {}", upper_line(cert.k))?;
            }
        }
        Some(t) => {
            let (lambda, ratio) =
                match kth_largest_of_blowup(&d, t, args.k).and_then(|l| Ok((l, finite_ratio(&d, t, args.k)?))) {
                    Ok(v) => v,
                    Err(e) => return io.fail(&e),
                };
            if json {
                io.json(&FiniteBound {
                    graph: d.name.clone(),
                    n: d.n(),
                    k: args.k,
                    t,
                    lambda_k: (&lambda).into(),
                    ratio: (&ratio).into(),
                })?;
            } else {
                writeln!(io.out, "graph:        {} (n = {}), blowup t = {t}", d.name, d.n())?;
                writeln!(io.out, "k:            {}", args.k)?;
                writeln!(io.out, "lambda_k:     {}", show_value(&lambda))?;
                writeln!(io.out, "ratio:        {}", show_value(&ratio))?;
                if let Some(s) = ratio.to_exact_string() {
                    writeln!(io.out, "exact:        {s}")?;
                }
            }
        }
    }
    Ok(exit::SUCCESS)
}

#[derive(Serialize)]
struct TableRowOut<'a> {
    k: usize,
    expected: ExactPair,
    printed_decimal: &'a str,
    decimal: String,
    sources: &'a [String],
    certificates: &'a [ckbound::bounds::BoundCertificate],
    upper_bound: f64,
    exact_match: bool,
    decimal_match: bool,
}

/// Writes the table and any mismatches; returns whether every row matched.
pub fn render_table(rows: &[TableRow], json: bool, io: &mut Io<'_>) -> io::Result<bool> {
    let upper = |k: usize| nikiforov_upper(k).expect("table rows have k >= 4");
    if json {
        let out: Vec<TableRowOut> = rows
            .iter()
            .map(|r| TableRowOut {
                k: r.entry.k,
                expected: (&r.entry.expected).into(),
                printed_decimal: r.entry.printed_decimal,
                decimal: format_sig(r.entry.expected.to_f64(), 6),
                sources: &r.entry.sources,
                certificates: &r.certificates,
                upper_bound: upper(r.entry.k),
                exact_match: r.exact_match,
                decimal_match: r.decimal_match,
            })
            .collect();
        io.json(&out)?;
    } else {
        let header = [
            "k",
            "exact",
            "decimal",
            "graphs",
            "verification",
            "upper bound",
            "match",
        ];
        let mut lines: Vec<[String; 7]> = Vec::new();
        for r in rows {
            let verification: Vec<String> = r.certificates.iter().map(|c| c.verification.to_string()).collect();
            lines.push([
                r.entry.k.to_string(),
                r.entry.expected.to_exact_string().unwrap_or_default(),
                format_sig(r.entry.expected.to_f64(), 6),
                r.entry.sources.join(" + "),
                verification.join(" + "),
                format_sig(upper(r.entry.k), 6),
                if r.matched() { "ok" } else { "MISMATCH" }.into(),
            ]);
        }
        let widths: Vec<usize> = (0..7)
            .map(|i| {
                lines
                    .iter()
                    .map(|l| l[i].len())
                    .chain([header[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let fmt_line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(io.out, "{}", fmt_line(header.to_vec()))?;
        for l in &lines {
            writeln!(io.out, "{}", fmt_line(l.iter().map(String::as_str).collect()))?;
        }
    }
    let bad: Vec<&TableRow> = rows.iter().filter(|r| !r.matched()).collect();
    for r in &bad {
        let got: Vec<String> = r
            .certificates
            .iter()
            .map(|c| format!("{} = {}", c.descriptor.name, show_value(&c.ratio)))
            .collect();
        writeln!(
            io.err,
            "mismatch at k = {}: expected {} (printed {}), got {}",
            r.entry.k,
            show_value(&r.entry.expected),
            r.entry.printed_decimal,
            got.join(", ")
        )?;
    }
    Ok(bad.is_empty())
}

pub fn table(args: &TableArgs, json: bool, io: &mut Io<'_>) -> io::Result<i32> {
    let Some((a, b)) = parse_inclusive_range(&args.range) else {
        return io.usage(format!("--range must look like `4..24`, got '{}'", args.range));
    };
    let started = Instant::now();
    let rows = match table_rows(a as usize..=b as usize) {
        Ok(r) => r,
        Err(e) => return io.fail(&e),
    };
    let all = render_table(&rows, json, io)?;
    let matched = rows.iter().filter(|r| r.matched()).count();
    writeln!(
        io.err,
        "{matched}/{} rows match ({:.2} s)",
        rows.len(),
        started.elapsed().as_secs_f64()
    )?;
    Ok(if all { exit::SUCCESS } else { exit::FAILURE })
}
