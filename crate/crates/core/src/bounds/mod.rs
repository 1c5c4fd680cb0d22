//! The closed-blowup spectrum transform and lower-bound certificates.
//!
//! `G^[t]` has eigenvalues `t·λ_i + t - 1` together with `(t-1)·n` extra
//! eigenvalues `-1`. Its `k`-th largest eigenvalue divided by `n·t` tends to
//! `(λ_k + 1) / n` whenever `λ_k ≥ -1`; that limit is what a blowup family
//! certifies as a lower bound on `c_k`.

mod table;

pub use table::{reproduce_table, table_entries, table_rows, TableEntry, TableRow, TABLE_K_RANGE};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{Rational, Surd};
use crate::families::{Provenance, SpectralDescriptor, EXPLICIT_TOLERANCE};
use crate::spectral::{EigenValue, Spectrum, MIXED_TOLERANCE};

/// Slack allowed above `1/(2√(k-1))` before a certificate is rejected.
pub const DOMINANCE_SLACK: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct BlowupSpectrum {
    pub base: SpectralDescriptor,
    pub t: usize,
    pub spectrum: Spectrum,
}

/// Spectrum of `G^[t]` on `n·t` vertices from the spectrum of `G`.
pub fn blowup_spectrum(base: &SpectralDescriptor, t: usize) -> Result<BlowupSpectrum> {
    let spectrum = transformed_spectrum(base.spectrum(), base.n(), t)?;
    Ok(BlowupSpectrum {
        base: base.clone(),
        t,
        spectrum,
    })
}

fn transformed_spectrum(s: &Spectrum, n: usize, t: usize) -> Result<Spectrum> {
    if t == 0 {
        return Err(Error::invalid("blowup factor t must be at least 1"));
    }
    let scale = Rational::from_integer(t as i128);
    let shift = Rational::from_integer(t as i128 - 1);
    let moved = s.pairs().iter().map(|&(v, m)| (v.affine(scale, shift), m));
    let extra = std::iter::once((EigenValue::integer(-1), (t - 1) * n));
    Spectrum::from_pairs(moved.chain(extra))
}

/// `λ_k(G^[t])`, read off the merged multiset (never the shortcut
/// `t·λ_k + t - 1`, which is wrong once `λ_k < -1`).
pub fn kth_largest_of_blowup(base: &SpectralDescriptor, t: usize, k: usize) -> Result<EigenValue> {
    transformed_spectrum(base.spectrum(), base.n(), t)?.kth_largest(k)
}

/// `λ_k(G^[t]) / (n·t)`.
pub fn finite_ratio(base: &SpectralDescriptor, t: usize, k: usize) -> Result<EigenValue> {
    let v = kth_largest_of_blowup(base, t, k)?;
    Ok(v.affine(Rational::new(1, (base.n() * t) as i128), Rational::from_integer(0)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LimitRatio {
    pub value: EigenValue,
    /// `false` when `λ_k ≤ -1`: the supremum `0` is then only approached
    /// from below by `-1/(n·t)`.
    pub attained: bool,
}

/// Limit ratio `(λ + 1)/n` for a `k`-th eigenvalue `λ`, or `0` (not attained)
/// when `λ ≤ -1`. Floating values within `1e-9` of `-1` count as `-1`.
pub fn limit_ratio_of(lambda: EigenValue, n: usize) -> LimitRatio {
    let above = match lambda.as_surd() {
        Some(s) => s > Surd::integer(-1),
        None => lambda.to_f64() + 1.0 > MIXED_TOLERANCE,
    };
    if above {
        let inv = Rational::new(1, n as i128);
        LimitRatio {
            value: lambda.affine(inv, inv),
            attained: true,
        }
    } else {
        LimitRatio {
            value: EigenValue::integer(0),
            attained: false,
        }
    }
}

/// `sup_t λ_k(G^[t]) / (n·t)`.
pub fn limit_ratio(base: &SpectralDescriptor, k: usize) -> Result<LimitRatio> {
    Ok(limit_ratio_of(base.spectrum().kth_largest(k)?, base.n()))
}

/// Proven upper bound `c_k ≤ 1/(2√(k-1))`, `k ≥ 2`.
pub fn nikiforov_upper(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid(format!("upper bound needs k >= 2, got {k}")));
    }
    Ok(1.0 / (2.0 * ((k - 1) as f64).sqrt()))
}

/// Asymptotic lower bound `1/(2√(k-1) + k^{1/3})`, valid only beyond an
/// unspecified threshold; for display.
pub fn nikiforov_asymptotic_lower(k: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid(format!("asymptotic bound needs k >= 2, got {k}")));
    }
    Ok(1.0 / (2.0 * ((k - 1) as f64).sqrt() + (k as f64).cbrt()))
}

/// Prior-art lower bound `c_k ≥ 1/(k - 1/2)`, `k ≥ 5`.
pub fn reference_lower(k: usize) -> Result<f64> {
    if k < 5 {
        return Err(Error::invalid(format!("reference lower bound needs k >= 5, got {k}")));
    }
    Ok(1.0 / (k as f64 - 0.5))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    /// Explicit graph re-solved numerically.
    Verified,
    /// Spectrum from strongly regular parameters or an intersection array.
    ExactFormula,
    Asserted,
}

impl std::fmt::Display for Verification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verification::Verified => "verified",
            Verification::ExactFormula => "exact-formula",
            Verification::Asserted => "asserted",
        })
    }
}

/// Record establishing `c_k ≥ ratio` through closed blowups of `descriptor`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCertificate {
    pub k: usize,
    pub descriptor: SpectralDescriptor,
    pub ratio: EigenValue,
    pub attained: bool,
    pub verification: Verification,
}

pub fn certify(base: &SpectralDescriptor, k: usize) -> Result<BoundCertificate> {
    let limit = limit_ratio(base, k)?;
    let verification = match base.provenance() {
        Provenance::Explicit { .. } => {
            let dev = base.explicit_deviation()?.unwrap_or(f64::INFINITY);
            if dev > EXPLICIT_TOLERANCE {
                return Err(Error::InternalConsistency(format!(
                    "{}: stored spectrum deviates from the eigensolver by {dev:e}",
                    base.name
                )));
            }
            Verification::Verified
        }
        Provenance::Srg(_) | Provenance::IntersectionArray(_) => Verification::ExactFormula,
        Provenance::Asserted { .. } => Verification::Asserted,
    };
    check_dominance(k, limit.value.to_f64(), &base.name)?;
    Ok(BoundCertificate {
        k,
        descriptor: base.clone(),
        ratio: limit.value,
        attained: limit.attained,
        verification,
    })
}

/// Rejects any ratio above the proven upper bound.
pub fn check_dominance(k: usize, ratio: f64, what: &str) -> Result<()> {
    if k >= 2 {
        let upper = nikiforov_upper(k)?;
        if ratio > upper + DOMINANCE_SLACK {
            return Err(Error::InternalConsistency(format!(
                "{what}: ratio {ratio} exceeds the proven bound 1/(2√(k-1)) = {upper} at k = {k}"
            )));
        }
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct RatioRepr {
    exact: Option<String>,
    float: f64,
}

impl From<&EigenValue> for RatioRepr {
    fn from(v: &EigenValue) -> Self {
        RatioRepr {
            exact: v.to_exact_string(),
            float: v.to_f64(),
        }
    }
}

#[derive(Serialize)]
struct CertificateOut<'a> {
    k: usize,
    descriptor: &'a SpectralDescriptor,
    ratio: RatioRepr,
    attained: bool,
    verification: Verification,
}

#[derive(Deserialize)]
struct CertificateIn {
    k: usize,
    descriptor: SpectralDescriptor,
    ratio: RatioRepr,
    #[serde(default = "default_attained")]
    attained: bool,
    verification: Verification,
}

fn default_attained() -> bool {
    true
}

impl Serialize for BoundCertificate {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateOut {
            k: self.k,
            descriptor: &self.descriptor,
            ratio: (&self.ratio).into(),
            attained: self.attained,
            verification: self.verification,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for BoundCertificate {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = CertificateIn::deserialize(de)?;
        let ratio = match raw.ratio.exact {
            Some(s) => EigenValue::exact(Surd::parse_exact(&s).map_err(serde::de::Error::custom)?),
            None => EigenValue::Float(raw.ratio.float),
        };
        Ok(BoundCertificate {
            k: raw.k,
            descriptor: raw.descriptor,
            ratio,
            attained: raw.attained,
            verification: raw.verification,
        })
    }
}

impl BoundCertificate {
    /// Recomputes the ratio from the embedded descriptor.
    pub fn recheck(&self) -> Result<bool> {
        let again = certify(&self.descriptor, self.k)?;
        Ok(again.ratio.approx_eq(&self.ratio, 1e-12) && again.verification == self.verification)
    }
}

#[cfg(test)]
mod tests;
