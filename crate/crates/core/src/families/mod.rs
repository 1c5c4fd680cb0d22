//! Named graph families with known spectra, and spectral descriptors for
//! graphs that are only given by parameters.

mod descriptor;
mod drg;
mod srg;

pub use descriptor::{asserted_descriptor, Provenance, SpectralDescriptor, EXPLICIT_TOLERANCE};
pub use drg::{drg_spectrum, IntersectionArray};
pub use srg::{srg_spectrum, SrgParams};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exact::Surd;
use crate::graph::{cartesian_product, complement, complete, cycle, Graph};
use crate::spectral::{EigenValue, Spectrum};

/// Antipodal-pair layout: vertex 0 on top, 1..=5 upper ring, 6..=10 lower
/// ring, 11 at the bottom.
pub const ICOSAHEDRON_EDGES: [(usize, usize); 30] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (0, 5),
    (1, 2),
    (2, 3),
    (3, 4),
    (4, 5),
    (1, 5),
    (1, 6),
    (1, 7),
    (2, 7),
    (2, 8),
    (3, 8),
    (3, 9),
    (4, 9),
    (4, 10),
    (5, 10),
    (5, 6),
    (6, 7),
    (7, 8),
    (8, 9),
    (9, 10),
    (6, 10),
    (11, 6),
    (11, 7),
    (11, 8),
    (11, 9),
    (11, 10),
];

/// Intersection array of the Gosset graph (distance-regular, 56 vertices).
pub fn gosset_array() -> IntersectionArray {
    IntersectionArray::new(vec![27, 10, 1], vec![1, 10, 27]).expect("valid preset")
}

fn binomial(m: u64, r: u64) -> u64 {
    if r > m {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
}

/// Johnson graph `J(m, r)`: `r`-subsets of `{0..m}` (lexicographic order),
/// adjacent when they share `r - 1` elements.
pub fn johnson(m: usize, r: usize) -> Result<Graph> {
    if r == 0 || m < 2 * r {
        return Err(Error::invalid(format!(
            "johnson needs m >= 2r >= 2, got m = {m}, r = {r}"
        )));
    }
    if m > 128 {
        return Err(Error::invalid(format!("johnson supports m <= 128, got {m}")));
    }
    let subsets: Vec<u128> = (0..m)
        .combinations(r)
        .map(|c| c.iter().fold(0u128, |acc, &i| acc | 1 << i))
        .collect();
    let mut g = Graph::empty(subsets.len())?;
    for (i, a) in subsets.iter().enumerate() {
        for (j, b) in subsets.iter().enumerate().skip(i + 1) {
            if (a & b).count_ones() as usize == r - 1 {
                g.set(i, j, true);
            }
        }
    }
    Ok(g)
}

/// Exact spectrum of `J(m, r)`: `(r-i)(m-r-i) - i` with multiplicity
/// `C(m,i) - C(m,i-1)` for `i = 0..=r`.
pub fn johnson_spectrum(m: usize, r: usize) -> Result<Spectrum> {
    if r == 0 || m < 2 * r {
        return Err(Error::invalid(format!(
            "johnson needs m >= 2r >= 2, got m = {m}, r = {r}"
        )));
    }
    let (m, r) = (m as i128, r as i128);
    Spectrum::from_pairs((0..=r).map(|i| {
        let theta = (r - i) * (m - r - i) - i;
        let mult = binomial(m as u64, i as u64) - if i > 0 { binomial(m as u64, i as u64 - 1) } else { 0 };
        (EigenValue::integer(theta), mult as usize)
    }))
}

pub fn icosahedron() -> Graph {
    icosahedron_from_edges(&ICOSAHEDRON_EDGES).expect("valid edge list")
}

pub fn icosahedron_from_edges(edges: &[(usize, usize)]) -> Result<Graph> {
    Graph::from_edges(12, edges.iter().copied())
}

/// `5^1 (√5)^3 (-1)^5 (-√5)^3`.
pub fn icosahedron_spectrum() -> Spectrum {
    Spectrum::from_pairs([
        (EigenValue::integer(5), 1),
        (EigenValue::exact(Surd::sqrt(5)), 3),
        (EigenValue::integer(-1), 5),
        (EigenValue::exact(Surd::sqrt(5).neg()), 3),
    ])
    .expect("non-empty")
}

/// Complement of `J(5, 2)`.
pub fn petersen() -> Graph {
    complement(&johnson(5, 2).expect("valid"))
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

/// Paley graph for a prime `q ≡ 1 (mod 4)`, or `q = 9` realised as
/// `K3 □ K3`.
pub fn paley(q: usize) -> Result<Graph> {
    if q == 9 {
        let k3 = complete(3)?;
        return Ok(cartesian_product(&k3, &k3));
    }
    if !is_prime(q) || q % 4 != 1 {
        return Err(Error::invalid(format!(
            "paley needs q prime with q ≡ 1 (mod 4), or q = 9; got {q}"
        )));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    let mut g = Graph::empty(q)?;
    for u in 0..q {
        for v in (u + 1)..q {
            if residue[v - u] {
                g.set(u, v, true);
            }
        }
    }
    Ok(g)
}

pub fn paley_params(q: usize) -> Result<SrgParams> {
    if q != 9 && (!is_prime(q) || q % 4 != 1) {
        return Err(Error::invalid(format!(
            "paley needs q prime with q ≡ 1 (mod 4), or q = 9; got {q}"
        )));
    }
    let q = q as u64;
    Ok(SrgParams::new(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4))
}

/// Exact spectrum of `K_n`.
pub fn complete_spectrum(n: usize) -> Result<Spectrum> {
    Spectrum::from_pairs([
        (EigenValue::integer(n as i128 - 1), 1),
        (EigenValue::integer(-1), n.saturating_sub(1)),
    ])
}

/// Exact spectrum of `C_n` where all values `2cos(2πj/n)` are rational
/// (n = 3, 4, 6); `None` otherwise.
pub fn cycle_spectrum(n: usize) -> Option<Spectrum> {
    let values: &[(i128, usize)] = match n {
        3 => &[(2, 1), (-1, 2)],
        4 => &[(2, 1), (0, 2), (-2, 1)],
        6 => &[(2, 1), (1, 2), (-1, 2), (-2, 1)],
        _ => return None,
    };
    Spectrum::from_pairs(values.iter().map(|&(v, m)| (EigenValue::integer(v), m))).ok()
}

pub fn complete_descriptor(n: usize) -> Result<SpectralDescriptor> {
    SpectralDescriptor::explicit_exact(format!("complete:{n}"), complete(n)?, complete_spectrum(n)?)
}

pub fn cycle_descriptor(n: usize) -> Result<SpectralDescriptor> {
    let g = cycle(n)?;
    match cycle_spectrum(n) {
        Some(s) => SpectralDescriptor::explicit_exact(format!("cycle:{n}"), g, s),
        None => SpectralDescriptor::explicit(format!("cycle:{n}"), g),
    }
}

pub fn johnson_descriptor(m: usize, r: usize) -> Result<SpectralDescriptor> {
    SpectralDescriptor::explicit_exact(format!("johnson:{m},{r}"), johnson(m, r)?, johnson_spectrum(m, r)?)
}

pub fn icosahedron_descriptor() -> Result<SpectralDescriptor> {
    SpectralDescriptor::explicit_exact("icosahedron", icosahedron(), icosahedron_spectrum())
}

pub fn petersen_descriptor() -> Result<SpectralDescriptor> {
    let s = srg_spectrum(SrgParams::new(10, 3, 0, 1))?.spectrum().clone();
    SpectralDescriptor::explicit_exact("petersen", petersen(), s)
}

pub fn paley_descriptor(q: usize) -> Result<SpectralDescriptor> {
    let s = srg_spectrum(paley_params(q)?)?.spectrum().clone();
    SpectralDescriptor::explicit_exact(format!("paley:{q}"), paley(q)?, s)
}

pub fn gosset_descriptor() -> Result<SpectralDescriptor> {
    let mut d = drg_spectrum(&gosset_array())?;
    d.name = "gosset".into();
    Ok(d)
}

/// Spectrum of the Taylor graph on 552 vertices whose automorphism group
/// contains Co₃, taken from its intersection array `{275,112,1; 1,112,275}`
/// in the literature. Carries `Asserted` provenance.
pub fn taylor_co3_descriptor() -> Result<SpectralDescriptor> {
    let pairs = [(275, 1), (55, 23), (-1, 275), (-5, 253)];
    asserted_descriptor(
        "taylor-co3",
        552,
        Spectrum::from_pairs(pairs.iter().map(|&(v, m)| (EigenValue::integer(v), m)))?,
        "Taylor graph from Co3, intersection array {275,112,1;1,112,275} (literature value)",
    )
}
