use serde::{Deserialize, Serialize};

use super::descriptor::{Provenance, SpectralDescriptor};
use crate::error::{Error, Result};
use crate::exact::{Rational, Surd};
use crate::spectral::{EigenValue, Spectrum};

/// Strongly regular parameters `srg(v, k, λ, μ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub const fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// `0 < k < v` and `k(k - λ - 1) = (v - k - 1)μ`.
    pub fn check_feasibility(&self) -> Result<()> {
        let SrgParams { v, k, lambda, mu } = *self;
        if k == 0 || k >= v {
            return Err(Error::InfeasibleParameters(format!("{self}: need 0 < k < v")));
        }
        if lambda + 1 > k {
            return Err(Error::InfeasibleParameters(format!("{self}: need λ < k")));
        }
        if k * (k - lambda - 1) != (v - k - 1) * mu {
            return Err(Error::InfeasibleParameters(format!(
                "{self}: k(k-λ-1) = {} but (v-k-1)μ = {}",
                k * (k - lambda - 1),
                (v - k - 1) * mu
            )));
        }
        Ok(())
    }
}

impl std::fmt::Display for SrgParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "srg({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

fn multiplicity(value: Rational, params: &SrgParams) -> Result<usize> {
    if !value.is_integer() || *value.numer() < 0 {
        return Err(Error::InfeasibleParameters(format!(
            "{params}: eigenvalue multiplicity {value} is not a non-negative integer"
        )));
    }
    Ok(*value.numer() as usize)
}

/// Spectrum `k^1 θ^f τ^g` of a strongly regular graph, in exact arithmetic.
pub fn srg_spectrum(params: SrgParams) -> Result<SpectralDescriptor> {
    params.check_feasibility()?;
    let SrgParams { v, k, lambda, mu } = params;
    let (v, k, lambda, mu) = (v as i128, k as i128, lambda as i128, mu as i128);
    let name = format!("srg:{},{},{},{}", params.v, params.k, params.lambda, params.mu);

    let spectrum = if k == v - 1 {
        // complete graph; μ is vacuous
        Spectrum::from_pairs([(EigenValue::integer(k), 1), (EigenValue::integer(-1), (v - 1) as usize)])?
    } else {
        let s = lambda - mu;
        let disc = s * s + 4 * (k - mu);
        if disc <= 0 {
            return Err(Error::InfeasibleParameters(format!(
                "{params}: non-positive discriminant"
            )));
        }
        let root = Surd::sqrt(disc as u64);
        let half = Rational::new(1, 2);
        let theta = root.add_rational(Rational::from_integer(s)).mul_rational(half);
        let tau = root.neg().add_rational(Rational::from_integer(s)).mul_rational(half);

        let skew = Surd::integer(2 * k + (v - 1) * s)
            .checked_div(&root)
            .expect("root is non-zero");
        let (f, g) = match skew.as_rational() {
            Some(q) => {
                let vm1 = Rational::from_integer(v - 1);
                (
                    multiplicity((vm1 - q) * half, &params)?,
                    multiplicity((vm1 + q) * half, &params)?,
                )
            }
            None => {
                return Err(Error::InfeasibleParameters(format!(
                    "{params}: irrational eigenvalues need 2k + (v-1)(λ-μ) = 0"
                )))
            }
        };
        Spectrum::from_pairs([
            (EigenValue::integer(k), 1),
            (EigenValue::exact(theta), f),
            (EigenValue::exact(tau), g),
        ])?
    };
    if spectrum.n() != v as usize {
        return Err(Error::InfeasibleParameters(format!(
            "{params}: multiplicities sum to {}, expected {v}",
            spectrum.n()
        )));
    }
    if spectrum.power_sum(1) != EigenValue::integer(0) {
        return Err(Error::InfeasibleParameters(format!(
            "{params}: spectrum has non-zero trace"
        )));
    }
    SpectralDescriptor::from_parameters(name, v as usize, spectrum, Provenance::Srg(params))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_identities(p: SrgParams) -> Spectrum {
        let d = srg_spectrum(p).unwrap();
        let s = d.spectrum().clone();
        assert_eq!(s.n() as u64, p.v);
        assert_eq!(s.power_sum(1), EigenValue::integer(0));
        assert_eq!(s.power_sum(2), EigenValue::integer((p.v * p.k) as i128));
        s
    }

    #[test]
    fn table_parameter_sets() {
        assert_eq!(
            check_identities(SrgParams::new(57, 24, 11, 9)).to_string(),
            "24^1 5^18 (-3)^38"
        );
        assert_eq!(
            check_identities(SrgParams::new(125, 72, 45, 36)).to_string(),
            "72^1 12^20 (-3)^104"
        );
        assert_eq!(
            check_identities(SrgParams::new(243, 132, 81, 60)).to_string(),
            "132^1 24^22 (-3)^220"
        );
        assert_eq!(
            check_identities(SrgParams::new(10, 3, 0, 1)).to_string(),
            "3^1 1^5 (-2)^4"
        );
        assert_eq!(
            check_identities(SrgParams::new(9, 4, 1, 2)).to_string(),
            "4^1 1^4 (-2)^4"
        );
    }

    #[test]
    fn conference_case() {
        let s = check_identities(SrgParams::new(13, 6, 2, 3));
        assert_eq!(s.pairs().len(), 3);
        assert!(!s.pairs()[1].0.as_surd().unwrap().is_rational());
        check_identities(SrgParams::new(5, 2, 0, 1));
    }

    #[test]
    fn disconnected_merges_top_eigenvalue() {
        // 3K4
        let s = check_identities(SrgParams::new(12, 3, 2, 0));
        assert_eq!(s.to_string(), "3^3 (-1)^9");
    }

    #[test]
    fn infeasible() {
        // identity fails
        assert!(matches!(
            srg_spectrum(SrgParams::new(10, 3, 1, 1)),
            Err(Error::InfeasibleParameters(_))
        ));
        // identity holds but the eigenvalues are irrational outside the conference case
        assert!(matches!(
            srg_spectrum(SrgParams::new(7, 3, 0, 2)),
            Err(Error::InfeasibleParameters(_))
        ));
        // identity holds, integral eigenvalues, fractional multiplicities
        assert!(matches!(
            srg_spectrum(SrgParams::new(8, 5, 2, 5)),
            Err(Error::InfeasibleParameters(_))
        ));
        assert!(srg_spectrum(SrgParams::new(5, 0, 0, 0)).is_err());
    }
}
