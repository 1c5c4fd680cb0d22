use serde::{Deserialize, Deserializer, Serialize};

use super::drg::IntersectionArray;
use super::srg::SrgParams;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectral::{eigen_spectrum, Spectrum};

/// Agreement required between a stated spectrum and the eigensolver for
/// explicit graphs.
pub const EXPLICIT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    Explicit { graph: Graph },
    Srg(SrgParams),
    IntersectionArray(IntersectionArray),
    Asserted { note: String },
}

/// A vertex count and spectrum, with a record of where the spectrum came
/// from. Lets parameter-defined graphs take part in bounds without an
/// adjacency matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralDescriptor {
    pub name: String,
    n: usize,
    spectrum: Spectrum,
    provenance: Provenance,
}

fn check_counts(n: usize, spectrum: &Spectrum) -> Result<()> {
    if spectrum.n() != n {
        return Err(Error::invalid(format!(
            "multiplicities sum to {}, expected {n}",
            spectrum.n()
        )));
    }
    let trace = spectrum.power_sum(1);
    let ok = match trace.as_surd() {
        Some(s) => s.signum() == 0,
        None => {
            let scale: f64 = spectrum.pairs().iter().map(|(v, m)| v.to_f64().abs() * *m as f64).sum();
            trace.to_f64().abs() <= 1e-9 * scale.max(1.0)
        }
    };
    if !ok {
        return Err(Error::invalid(format!("spectrum trace is {trace}, expected 0")));
    }
    Ok(())
}

impl SpectralDescriptor {
    /// Explicit graph with its numerically computed spectrum.
    pub fn explicit(name: impl Into<String>, graph: Graph) -> Result<Self> {
        let spectrum = eigen_spectrum(&graph)?;
        Ok(SpectralDescriptor {
            name: name.into(),
            n: graph.n(),
            spectrum,
            provenance: Provenance::Explicit { graph },
        })
    }

    /// Explicit graph with a stated (usually exact) spectrum, checked
    /// against the eigensolver.
    pub fn explicit_exact(name: impl Into<String>, graph: Graph, spectrum: Spectrum) -> Result<Self> {
        let name = name.into();
        check_counts(graph.n(), &spectrum)?;
        let numeric = eigen_spectrum(&graph)?;
        if !numeric.approx_eq(&spectrum, EXPLICIT_TOLERANCE) {
            return Err(Error::InternalConsistency(format!(
                "{name}: stated spectrum {spectrum} disagrees with eigensolver {numeric}"
            )));
        }
        Ok(SpectralDescriptor {
            name,
            n: graph.n(),
            spectrum,
            provenance: Provenance::Explicit { graph },
        })
    }

    pub(crate) fn from_parameters(name: String, n: usize, spectrum: Spectrum, provenance: Provenance) -> Result<Self> {
        check_counts(n, &spectrum)?;
        Ok(SpectralDescriptor {
            name,
            n,
            spectrum,
            provenance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn graph(&self) -> Option<&Graph> {
        match &self.provenance {
            Provenance::Explicit { graph } => Some(graph),
            _ => None,
        }
    }

    /// For explicit graphs, the largest deviation between the stored
    /// spectrum and a fresh eigensolve.
    pub fn explicit_deviation(&self) -> Result<Option<f64>> {
        let Some(g) = self.graph() else {
            return Ok(None);
        };
        let numeric = eigen_spectrum(g)?;
        Ok(numeric.max_abs_deviation(&self.spectrum))
    }
}

/// A descriptor whose spectrum is taken on trust from an outside source.
pub fn asserted_descriptor(
    name: impl Into<String>,
    n: usize,
    spectrum: Spectrum,
    note: impl Into<String>,
) -> Result<SpectralDescriptor> {
    SpectralDescriptor::from_parameters(name.into(), n, spectrum, Provenance::Asserted { note: note.into() })
}

impl<'de> Deserialize<'de> for SpectralDescriptor {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            name: String,
            n: usize,
            spectrum: Spectrum,
            provenance: Provenance,
        }
        let raw = Raw::deserialize(de)?;
        let out = match raw.provenance {
            Provenance::Explicit { graph } => {
                if graph.n() != raw.n {
                    return Err(serde::de::Error::custom("graph size does not match n"));
                }
                SpectralDescriptor::explicit_exact(raw.name, graph, raw.spectrum)
            }
            p => SpectralDescriptor::from_parameters(raw.name, raw.n, raw.spectrum, p),
        };
        out.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{icosahedron_descriptor, srg_spectrum};
    use crate::spectral::EigenValue;

    #[test]
    fn asserted_rejects_bad_spectra() {
        let s = Spectrum::from_pairs([(EigenValue::integer(2), 1), (EigenValue::integer(-1), 1)]).unwrap();
        assert!(matches!(
            asserted_descriptor("x", 2, s, "bad trace"),
            Err(Error::InvalidArgument(_))
        ));
        let s = Spectrum::from_pairs([(EigenValue::integer(1), 1), (EigenValue::integer(-1), 1)]).unwrap();
        assert!(matches!(
            asserted_descriptor("x", 3, s.clone(), "bad count"),
            Err(Error::InvalidArgument(_))
        ));
        assert!(asserted_descriptor("k2", 2, s, "ok").is_ok());
    }

    #[test]
    fn explicit_exact_rejects_wrong_spectrum() {
        let g = crate::graph::cycle(4).unwrap();
        let wrong = Spectrum::from_pairs([(EigenValue::integer(1), 2), (EigenValue::integer(-1), 2)]).unwrap();
        assert!(matches!(
            SpectralDescriptor::explicit_exact("c4", g, wrong),
            Err(Error::InternalConsistency(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        for d in [
            icosahedron_descriptor().unwrap(),
            srg_spectrum(SrgParams::new(57, 24, 11, 9)).unwrap(),
            crate::families::gosset_descriptor().unwrap(),
            crate::families::taylor_co3_descriptor().unwrap(),
            SpectralDescriptor::explicit("c7", crate::graph::cycle(7).unwrap()).unwrap(),
        ] {
            let text = serde_json::to_string(&d).unwrap();
            let back: SpectralDescriptor = serde_json::from_str(&text).unwrap();
            assert_eq!(back, d, "{text}");
        }
        let text = serde_json::to_string(&icosahedron_descriptor().unwrap()).unwrap();
        assert!(text.contains(r#""provenance":{"kind":"explicit","graph":"#), "{text}");
    }
}
