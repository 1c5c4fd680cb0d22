//! Best known blowup constructions for `4 ≤ k ≤ 24`.

use std::ops::RangeInclusive;

use super::{certify, BoundCertificate};
use crate::error::{Error, Result};
use crate::exact::Surd;
use crate::families::{
    gosset_descriptor, icosahedron_descriptor, johnson_descriptor, paley_descriptor, petersen_descriptor, srg_spectrum,
    taylor_co3_descriptor, SpectralDescriptor, SrgParams,
};
use crate::spectral::EigenValue;

pub const TABLE_K_RANGE: RangeInclusive<usize> = 4..=24;

/// One published row: the bound, its printed decimal and the source graphs.
#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub k: usize,
    pub expected: EigenValue,
    pub printed_decimal: &'static str,
    pub sources: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub entry: TableEntry,
    pub certificates: Vec<BoundCertificate>,
    pub exact_match: bool,
    pub decimal_match: bool,
}

impl TableRow {
    pub fn matched(&self) -> bool {
        self.exact_match && self.decimal_match
    }
}

const ROWS: [(usize, &str, &str); 21] = [
    (4, "1/12+1/12*sqrt(5)", "0.26967"),
    (5, "2/9", "0.2222"),
    (6, "1/5", "0.2"),
    (7, "4/21", "0.190476"),
    (8, "5/28", "0.178571"),
    (9, "1/6", "0.1666"),
    (10, "7/45", "0.1555"),
    (11, "8/55", "0.14545"),
    (12, "3/22", "0.13636"),
    (13, "5/39", "0.128205"),
    (14, "11/91", "0.1208791"),
    (15, "4/35", "0.1142857"),
    (16, "13/120", "0.108333"),
    (17, "2/19", "0.10526"),
    (18, "2/19", "0.10526"),
    (19, "2/19", "0.10526"),
    (20, "13/125", "0.104"),
    (21, "13/125", "0.104"),
    (22, "25/243", "0.10288"),
    (23, "25/243", "0.10288"),
    (24, "56/552", "0.101449"),
];

fn sources(k: usize) -> Vec<String> {
    match k {
        4 => vec!["icosahedron".into()],
        5 => vec!["paley:9".into()],
        6 => vec!["petersen".into(), "johnson:6,2".into()],
        8 => vec!["johnson:8,2".into(), "gosset".into()],
        7..=16 => vec![format!("johnson:{k},2")],
        17..=19 => vec!["srg:57,24,11,9".into()],
        20..=21 => vec!["srg:125,72,45,36".into()],
        22..=23 => vec!["srg:243,132,81,60".into()],
        24 => vec!["taylor-co3".into()],
        _ => vec![],
    }
}

pub fn table_entries() -> Vec<TableEntry> {
    ROWS.iter()
        .map(|&(k, exact, printed)| TableEntry {
            k,
            expected: EigenValue::exact(Surd::parse_exact(exact).expect("static table value")),
            printed_decimal: printed,
            sources: sources(k),
        })
        .collect()
}

fn build_source(name: &str) -> Result<SpectralDescriptor> {
    match name {
        "icosahedron" => icosahedron_descriptor(),
        "paley:9" => paley_descriptor(9),
        "petersen" => petersen_descriptor(),
        "gosset" => gosset_descriptor(),
        "taylor-co3" => taylor_co3_descriptor(),
        "srg:57,24,11,9" => srg_spectrum(SrgParams::new(57, 24, 11, 9)),
        "srg:125,72,45,36" => srg_spectrum(SrgParams::new(125, 72, 45, 36)),
        "srg:243,132,81,60" => srg_spectrum(SrgParams::new(243, 132, 81, 60)),
        _ => match name.strip_prefix("johnson:").and_then(|s| s.strip_suffix(",2")) {
            Some(m) => johnson_descriptor(m.parse().map_err(|_| Error::invalid(name))?, 2),
            None => Err(Error::invalid(format!("unknown table source {name}"))),
        },
    }
}

/// `x` agrees with a printed decimal if either truncating or rounding it to
/// the printed number of places reproduces the printed digits.
pub(crate) fn decimal_matches(x: f64, printed: &str) -> bool {
    let places = printed.split_once('.').map_or(0, |(_, f)| f.len());
    let scale = 10f64.powi(places as i32);
    let truncated = format!("{:.places$}", (x * scale + 1e-9).floor() / scale);
    let rounded = format!("{x:.places$}");
    truncated == printed || rounded == printed
}

/// Certifies every published row with `k` in `range`, without failing on
/// mismatches.
pub fn table_rows(range: RangeInclusive<usize>) -> Result<Vec<TableRow>> {
    if range.is_empty() || range.start() < TABLE_K_RANGE.start() || range.end() > TABLE_K_RANGE.end() {
        return Err(Error::invalid(format!(
            "table range {}..{} outside {}..{}",
            range.start(),
            range.end(),
            TABLE_K_RANGE.start(),
            TABLE_K_RANGE.end()
        )));
    }
    let mut out = Vec::new();
    for entry in table_entries().into_iter().filter(|e| range.contains(&e.k)) {
        let certificates = entry
            .sources
            .iter()
            .map(|s| certify(&build_source(s)?, entry.k))
            .collect::<Result<Vec<_>>>()?;
        let exact_match = certificates.iter().all(|c| c.ratio == entry.expected);
        let decimal_match = decimal_matches(entry.expected.to_f64(), entry.printed_decimal)
            && certificates
                .iter()
                .all(|c| decimal_matches(c.ratio.to_f64(), entry.printed_decimal));
        out.push(TableRow {
            entry,
            certificates,
            exact_match,
            decimal_match,
        });
    }
    Ok(out)
}

/// The full table for `k = 4..=24`; any row that fails to match is an error.
pub fn reproduce_table() -> Result<Vec<TableRow>> {
    let rows = table_rows(TABLE_K_RANGE)?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.matched())
        .map(|r| {
            let got: Vec<String> = r.certificates.iter().map(|c| c.ratio.to_string()).collect();
            format!(
                "k = {}: expected {}, got [{}]",
                r.entry.k,
                r.entry.expected,
                got.join(", ")
            )
        })
        .collect();
    if bad.is_empty() {
        Ok(rows)
    } else {
        Err(Error::TableMismatch(bad.join("; ")))
    }
}
