//! Eigenvalues, spectra and the numerical eigensolver.

mod jacobi;

pub use jacobi::{symmetric_eigenvalues, MAX_SWEEPS, OFF_DIAGONAL_TOLERANCE};

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{Rational, Surd};
use crate::graph::Graph;

/// Tolerance used when an exact value meets a floating one.
pub const MIXED_TOLERANCE: f64 = 1e-9;

/// Gap below which adjacent floating eigenvalues are shown as one value
/// with multiplicity.
pub const DISPLAY_MERGE_GAP: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EigenValue {
    Rational(Rational),
    /// `a + b√d` with `b ≠ 0` and squarefree `d ≥ 2`.
    QuadIrrational(Surd),
    Float(f64),
}

impl EigenValue {
    pub fn exact(s: Surd) -> Self {
        match s.as_rational() {
            Some(r) => EigenValue::Rational(r),
            None => EigenValue::QuadIrrational(s),
        }
    }

    pub fn integer(v: i128) -> Self {
        EigenValue::Rational(Rational::from_integer(v))
    }

    pub fn as_surd(&self) -> Option<Surd> {
        match *self {
            EigenValue::Rational(r) => Some(Surd::rational(r)),
            EigenValue::QuadIrrational(s) => Some(s),
            EigenValue::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, EigenValue::Float(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            EigenValue::Rational(r) => *r.numer() as f64 / *r.denom() as f64,
            EigenValue::QuadIrrational(s) => s.to_f64(),
            EigenValue::Float(x) => *x,
        }
    }

    /// `scale · self + shift`, exact when `self` is.
    pub fn affine(&self, scale: Rational, shift: Rational) -> EigenValue {
        match self.as_surd() {
            Some(s) => EigenValue::exact(s.mul_rational(scale).add_rational(shift)),
            None => {
                let f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
                EigenValue::Float(self.to_f64() * f(scale) + f(shift))
            }
        }
    }

    /// Ordering by numeric value: exact when both sides are exact, IEEE
    /// total order otherwise (no tolerance, so it is a total order).
    pub fn total_cmp(&self, other: &EigenValue) -> Ordering {
        match (self.as_surd(), other.as_surd()) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    /// Exact equality for exact pairs; `|x - y| ≤ tol` otherwise.
    pub fn approx_eq(&self, other: &EigenValue, tol: f64) -> bool {
        match (self.as_surd(), other.as_surd()) {
            (Some(a), Some(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }

    /// Machine form: `p/q`, `a+b*sqrt(d)`, or a decimal for floats.
    pub fn to_exact_string(&self) -> Option<String> {
        self.as_surd().map(|s| s.to_exact_string())
    }

    /// Form used in spectrum listings: exact values as `sqrt5`,
    /// `(-1+sqrt13)/2`, floats to six significant figures.
    pub fn to_pretty_string(&self) -> String {
        match self.as_surd() {
            Some(s) => s.to_pretty_string(),
            None => format_sig(self.to_f64(), 6),
        }
    }

    fn is_nonnegative_integer(&self) -> bool {
        matches!(self, EigenValue::Rational(r) if r.is_integer() && *r.numer() >= 0)
    }
}

impl From<Surd> for EigenValue {
    fn from(s: Surd) -> Self {
        EigenValue::exact(s)
    }
}

impl fmt::Display for EigenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_surd() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "{}", self.to_f64()),
        }
    }
}

impl Serialize for EigenValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_surd() {
            Some(s) => ser.serialize_str(&s.to_exact_string()),
            None => ser.serialize_f64(self.to_f64()),
        }
    }
}

impl<'de> Deserialize<'de> for EigenValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(de)? {
            Repr::Number(x) => Ok(EigenValue::Float(x)),
            Repr::Text(s) => Surd::parse_exact(&s)
                .map(EigenValue::exact)
                .map_err(serde::de::Error::custom),
        }
    }
}

/// Formats `x` with `sig` significant figures in fixed notation.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x:.*}", sig.saturating_sub(1));
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (sig as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s == "-0" || s.starts_with("-0.") && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Eigenvalue multiset sorted in descending order.
///
/// Exact values are merged into multiplicities; floating values are kept
/// unmerged so that near-degenerate clusters are not silently collapsed.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<(EigenValue, usize)>,
}

impl Spectrum {
    /// Drops zero multiplicities, sorts descending and merges equal exact
    /// values.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (EigenValue, usize)>) -> Result<Self> {
        let mut pairs: Vec<_> = pairs.into_iter().filter(|&(_, m)| m > 0).collect();
        if pairs.is_empty() {
            return Err(Error::invalid("a spectrum needs at least one eigenvalue"));
        }
        if pairs.iter().any(|(v, _)| !v.to_f64().is_finite()) {
            return Err(Error::Numeric("non-finite eigenvalue".into()));
        }
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut values: Vec<(EigenValue, usize)> = Vec::with_capacity(pairs.len());
        for (v, m) in pairs {
            match values.last_mut() {
                Some((last, lm)) if last.is_exact() && v.is_exact() && last.total_cmp(&v) == Ordering::Equal => {
                    *lm += m
                }
                _ => values.push((v, m)),
            }
        }
        Ok(Spectrum { values })
    }

    pub fn from_floats(values: impl IntoIterator<Item = f64>) -> Result<Self> {
        Spectrum::from_pairs(values.into_iter().map(|x| (EigenValue::Float(x), 1)))
    }

    /// Number of eigenvalues counted with multiplicity.
    pub fn n(&self) -> usize {
        self.values.iter().map(|&(_, m)| m).sum()
    }

    pub fn pairs(&self) -> &[(EigenValue, usize)] {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(|(v, _)| v.is_exact())
    }

    /// All eigenvalues, repeated by multiplicity, descending.
    pub fn iter_expanded(&self) -> impl Iterator<Item = EigenValue> + '_ {
        self.values.iter().flat_map(|&(v, m)| std::iter::repeat_n(v, m))
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.iter_expanded().map(|v| v.to_f64()).collect()
    }

    /// The `k`-th largest eigenvalue counting multiplicity (1-based).
    pub fn kth_largest(&self, k: usize) -> Result<EigenValue> {
        let n = self.n();
        if k == 0 || k > n {
            return Err(Error::invalid(format!("k = {k} outside 1..={n}")));
        }
        let mut seen = 0;
        for &(v, m) in &self.values {
            seen += m;
            if seen >= k {
                return Ok(v);
            }
        }
        unreachable!("k ≤ n")
    }

    /// `Σ mult · λ^p`, exact when every value is exact and lives in a single
    /// quadratic field, floating otherwise.
    pub fn power_sum(&self, p: u32) -> EigenValue {
        let mut acc = Some(Surd::integer(0));
        for &(v, m) in &self.values {
            acc = acc.and_then(|acc| {
                let s = v.as_surd()?;
                let mut pow = Surd::integer(1);
                for _ in 0..p {
                    pow = pow.checked_mul(&s)?;
                }
                acc.checked_add(&pow.mul_rational(Rational::from_integer(m as i128)))
            });
        }
        match acc {
            Some(s) => EigenValue::exact(s),
            None => EigenValue::Float(
                self.values
                    .iter()
                    .map(|&(v, m)| m as f64 * v.to_f64().powi(p as i32))
                    .sum(),
            ),
        }
    }

    /// Elementwise comparison of the sorted expanded lists.
    pub fn approx_eq(&self, other: &Spectrum, tol: f64) -> bool {
        self.n() == other.n()
            && self
                .iter_expanded()
                .zip(other.iter_expanded())
                .all(|(a, b)| (a.to_f64() - b.to_f64()).abs() <= tol)
    }

    pub fn max_abs_deviation(&self, other: &Spectrum) -> Option<f64> {
        (self.n() == other.n()).then(|| {
            self.iter_expanded()
                .zip(other.iter_expanded())
                .map(|(a, b)| (a.to_f64() - b.to_f64()).abs())
                .fold(0.0, f64::max)
        })
    }

    /// Pairs for display: adjacent floating values closer than `gap` are
    /// merged and shown at their mean.
    pub fn display_pairs(&self, gap: f64) -> Vec<(EigenValue, usize)> {
        let mut out: Vec<(EigenValue, usize, f64)> = Vec::new();
        for &(v, m) in &self.values {
            if let Some((last, lm, sum)) = out.last_mut() {
                if !v.is_exact() && !last.is_exact() && (last.to_f64() - v.to_f64()).abs() < gap {
                    *sum += v.to_f64() * m as f64;
                    *lm += m;
                    *last = EigenValue::Float(*sum / *lm as f64);
                    continue;
                }
            }
            out.push((v, m, v.to_f64() * m as f64));
        }
        out.into_iter().map(|(v, m, _)| (v, m)).collect()
    }

    /// A copy with every value converted to floating point.
    pub fn to_numeric(&self) -> Spectrum {
        Spectrum {
            values: self
                .values
                .iter()
                .map(|&(v, m)| (EigenValue::Float(v.to_f64()), m))
                .collect(),
        }
    }
}

/// `5^1 (sqrt5)^3 (-1)^5 (-sqrt5)^3`: non-negative integers bare, everything
/// else parenthesised.
impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .display_pairs(DISPLAY_MERGE_GAP)
            .iter()
            .map(|(v, m)| {
                if v.is_nonnegative_integer() {
                    format!("{}^{m}", v.to_pretty_string())
                } else {
                    format!("({})^{m}", v.to_pretty_string())
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct SpectrumEntry {
    value: EigenValue,
    mult: usize,
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_seq(self.values.iter().map(|&(value, mult)| SpectrumEntry { value, mult }))
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let entries = Vec::<SpectrumEntry>::deserialize(de)?;
        Spectrum::from_pairs(entries.into_iter().map(|e| (e.value, e.mult))).map_err(serde::de::Error::custom)
    }
}

/// All `n` adjacency eigenvalues of `g`, as floating values, descending.
pub fn eigen_spectrum(g: &Graph) -> Result<Spectrum> {
    Spectrum::from_floats(symmetric_eigenvalues(g.adjacency_matrix(), g.n())?)
}

pub fn kth_largest(s: &Spectrum, k: usize) -> Result<EigenValue> {
    s.kth_largest(k)
}

pub const INVARIANT_TOLERANCE: f64 = 1e-6;

/// Residuals of the closed-walk identities `Σλ = 0`, `Σλ² = 2|E|` and
/// `Σλ³ = 6·(#triangles)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub trace_residual: f64,
    pub edge_residual: f64,
    pub triangle_residual: f64,
    pub passed: bool,
}

pub fn spectrum_invariant_checks(g: &Graph, s: &Spectrum) -> InvariantReport {
    let moment = |p: u32| s.power_sum(p).to_f64();
    let trace_residual = moment(1).abs();
    let edge_residual = (moment(2) - 2.0 * g.edge_count() as f64).abs();
    let triangle_residual = (moment(3) - 6.0 * g.triangle_count() as f64).abs();
    let passed = s.n() == g.n()
        && [trace_residual, edge_residual, triangle_residual]
            .iter()
            .all(|&r| r <= INVARIANT_TOLERANCE);
    InvariantReport {
        trace_residual,
        edge_residual,
        triangle_residual,
        passed,
    }
}
