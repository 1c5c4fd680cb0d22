//! Spectra of distance-regular graphs from their intersection arrays.
//!
//! Distinct eigenvalues are the roots of the characteristic polynomial of
//! the tridiagonal intersection matrix. Integer and quadratic roots are
//! recovered exactly (the polynomial is monic with integer coefficients);
//! anything of higher degree stays floating. Multiplicities come from the
//! standard sequence `u_j(θ)` via `m(θ) = n / Σ k_j u_j²`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::descriptor::{Provenance, SpectralDescriptor};
use crate::error::{Error, Result};
use crate::exact::{Rational, Surd};
use crate::spectral::{symmetric_eigenvalues, EigenValue, Spectrum};

/// Residual allowed when rounding a floating multiplicity.
const MULTIPLICITY_RESIDUAL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl IntersectionArray {
    /// `b = [b₀, …, b_{d-1}]`, `c = [c₁, …, c_d]`.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InfeasibleArray(msg));
        let d = b.len();
        if d == 0 || c.len() != d {
            return bad(format!(
                "need equal non-empty b and c lists, got {} and {}",
                b.len(),
                c.len()
            ));
        }
        if c[0] != 1 {
            return bad(format!("c1 must be 1, got {}", c[0]));
        }
        if b.contains(&0) || c.contains(&0) {
            return bad("entries must be positive".into());
        }
        if b.windows(2).any(|w| w[0] < w[1]) {
            return bad("b must be non-increasing".into());
        }
        if c.windows(2).any(|w| w[0] > w[1]) {
            return bad("c must be non-decreasing".into());
        }
        let a = IntersectionArray { b, c };
        for i in 0..=d {
            if a.b_at(i) + a.c_at(i) > a.b[0] {
                return bad(format!("b{i} + c{i} exceeds the valency"));
            }
        }
        a.distance_sizes()?;
        Ok(a)
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn b(&self) -> &[u64] {
        &self.b
    }

    pub fn c(&self) -> &[u64] {
        &self.c
    }

    fn b_at(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    fn c_at(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    fn a_at(&self, i: usize) -> u64 {
        self.b[0] - self.b_at(i) - self.c_at(i)
    }

    /// `k_j = b₀⋯b_{j-1} / (c₁⋯c_j)`, which must be integral.
    fn distance_sizes(&self) -> Result<Vec<u64>> {
        let mut k = vec![1u64];
        for j in 1..=self.diameter() {
            let num = k[j - 1] as u128 * self.b_at(j - 1) as u128;
            let den = self.c_at(j) as u128;
            if !num.is_multiple_of(den) {
                return Err(Error::InfeasibleArray(format!("k{j} = {num}/{den} is not an integer")));
            }
            k.push((num / den) as u64);
        }
        Ok(k)
    }

    pub fn vertex_count(&self) -> u64 {
        self.distance_sizes().expect("checked at construction").iter().sum()
    }

    /// Monic characteristic polynomial of the intersection matrix,
    /// coefficients from the constant term up.
    fn characteristic_polynomial(&self) -> Vec<i128> {
        // p_{i+1} = (x - a_i) p_i - b_{i-1} c_i p_{i-1}
        let mut prev = vec![1i128];
        let mut cur = vec![-(self.a_at(0) as i128), 1];
        for i in 1..=self.diameter() {
            let mut next = vec![0i128; cur.len() + 1];
            for (j, &coef) in cur.iter().enumerate() {
                next[j + 1] += coef;
                next[j] -= self.a_at(i) as i128 * coef;
            }
            let w = self.b_at(i - 1) as i128 * self.c_at(i) as i128;
            for (j, &coef) in prev.iter().enumerate() {
                next[j] -= w * coef;
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Eigenvalues of the symmetrised tridiagonal intersection matrix.
    fn numeric_roots(&self) -> Result<Vec<f64>> {
        let n = self.diameter() + 1;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = self.a_at(i) as f64;
            if i + 1 < n {
                let off = (self.b_at(i) as f64 * self.c_at(i + 1) as f64).sqrt();
                m[i * n + i + 1] = off;
                m[(i + 1) * n + i] = off;
            }
        }
        let mut roots = symmetric_eigenvalues(m, n)?;
        roots.sort_by(|a, b| b.total_cmp(a));
        Ok(roots)
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

fn eval(poly: &[i128], x: i128) -> i128 {
    poly.iter().rev().fold(0, |acc, &c| acc * x + c)
}

/// Divides a monic polynomial by a monic divisor; `None` unless exact.
fn divide_exact(poly: &[i128], divisor: &[i128]) -> Option<Vec<i128>> {
    let dd = divisor.len() - 1;
    if poly.len() - 1 < dd {
        return None;
    }
    let mut rem = poly.to_vec();
    let mut quot = vec![0i128; poly.len() - dd];
    for i in (0..quot.len()).rev() {
        let coef = rem[i + dd];
        quot[i] = coef;
        for (j, &dc) in divisor.iter().enumerate() {
            rem[i + j] -= coef * dc;
        }
    }
    rem.iter().all(|&r| r == 0).then_some(quot)
}

enum Root {
    Exact(Surd),
    Float(f64),
}

fn recover_roots(mut poly: Vec<i128>, numeric: &[f64]) -> Vec<Root> {
    let mut roots = Vec::new();
    let mut pending = Vec::new();
    for &r in numeric {
        let cand = r.round();
        if (r - cand).abs() < 1e-6 && eval(&poly, cand as i128) == 0 {
            poly = divide_exact(&poly, &[-(cand as i128), 1]).expect("root divides");
            roots.push(Root::Exact(Surd::integer(cand as i128)));
        } else {
            pending.push(r);
        }
    }
    'pairs: while pending.len() >= 2 {
        for i in 0..pending.len() {
            for j in (i + 1)..pending.len() {
                let (x, y) = (pending[i], pending[j]);
                let (s, p) = ((x + y).round(), (x * y).round());
                if (x + y - s).abs() > 1e-6 || (x * y - p).abs() > 1e-6 * p.abs().max(1.0) {
                    continue;
                }
                let (s, p) = (s as i128, p as i128);
                let disc = s * s - 4 * p;
                if disc <= 0 {
                    continue;
                }
                if let Some(q) = divide_exact(&poly, &[p, -s, 1]) {
                    poly = q;
                    let root = Surd::sqrt(disc as u64);
                    let half = Rational::new(1, 2);
                    roots.push(Root::Exact(
                        root.add_rational(Rational::from_integer(s)).mul_rational(half),
                    ));
                    roots.push(Root::Exact(
                        root.neg().add_rational(Rational::from_integer(s)).mul_rational(half),
                    ));
                    pending.remove(j);
                    pending.remove(i);
                    continue 'pairs;
                }
            }
        }
        break;
    }
    roots.extend(pending.into_iter().map(Root::Float));
    roots
}

/// Full spectrum of a distance-regular graph with the given array.
pub fn drg_spectrum(array: &IntersectionArray) -> Result<SpectralDescriptor> {
    let k = array.distance_sizes()?;
    let n: u64 = k.iter().sum();
    let roots = recover_roots(array.characteristic_polynomial(), &array.numeric_roots()?);

    let mut pairs = Vec::with_capacity(roots.len());
    for root in roots {
        let (value, mult) = match root {
            Root::Exact(theta) => (EigenValue::exact(theta), exact_multiplicity(array, &k, n, theta)?),
            Root::Float(theta) => (EigenValue::Float(theta), float_multiplicity(array, &k, n, theta)?),
        };
        pairs.push((value, mult));
    }
    let spectrum = Spectrum::from_pairs(pairs)?;
    if spectrum.n() as u64 != n {
        return Err(Error::InfeasibleArray(format!(
            "{array}: multiplicities sum to {}, expected {n}",
            spectrum.n()
        )));
    }
    let name = format!(
        "drg:{};{}",
        array.b.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        array.c.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
    );
    SpectralDescriptor::from_parameters(name, n as usize, spectrum, Provenance::IntersectionArray(array.clone()))
        .map_err(|e| Error::InfeasibleArray(format!("{array}: {e}")))
}

fn exact_multiplicity(array: &IntersectionArray, k: &[u64], n: u64, theta: Surd) -> Result<usize> {
    let infeasible = || Error::InfeasibleArray(format!("{array}: multiplicity of {theta} is not a positive integer"));
    let d = array.diameter();
    let mut u = vec![
        Surd::integer(1),
        theta.mul_rational(Rational::new(1, array.b[0] as i128)),
    ];
    for j in 1..d {
        let lhs = theta
            .add_rational(Rational::from_integer(-(array.a_at(j) as i128)))
            .checked_mul(&u[j])
            .expect("same field");
        let next = lhs
            .checked_sub(&u[j - 1].mul_rational(Rational::from_integer(array.c_at(j) as i128)))
            .expect("same field")
            .mul_rational(Rational::new(1, array.b_at(j) as i128));
        u.push(next);
    }
    let mut sum = Surd::integer(0);
    for (kj, uj) in k.iter().zip(&u) {
        let sq = uj.checked_mul(uj).expect("same field");
        sum = sum
            .checked_add(&sq.mul_rational(Rational::from_integer(*kj as i128)))
            .expect("same field");
    }
    let sum = sum.as_rational().ok_or_else(infeasible)?;
    if sum <= Rational::from_integer(0) {
        return Err(infeasible());
    }
    let m = Rational::from_integer(n as i128) / sum;
    if !m.is_integer() || *m.numer() <= 0 {
        return Err(infeasible());
    }
    Ok(*m.numer() as usize)
}

fn float_multiplicity(array: &IntersectionArray, k: &[u64], n: u64, theta: f64) -> Result<usize> {
    let d = array.diameter();
    let mut u = vec![1.0, theta / array.b[0] as f64];
    for j in 1..d {
        let next = ((theta - array.a_at(j) as f64) * u[j] - array.c_at(j) as f64 * u[j - 1]) / array.b_at(j) as f64;
        u.push(next);
    }
    let sum: f64 = k.iter().zip(&u).map(|(&kj, uj)| kj as f64 * uj * uj).sum();
    let m = n as f64 / sum;
    let rounded = m.round();
    if !m.is_finite() || rounded < 1.0 || (m - rounded).abs() > MULTIPLICITY_RESIDUAL {
        return Err(Error::InfeasibleArray(format!(
            "{array}: multiplicity of {theta} is {m}, not a positive integer"
        )));
    }
    Ok(rounded as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{srg_spectrum, SrgParams};
    use crate::graph::cycle;
    use crate::spectral::eigen_spectrum;

    fn array(b: &[u64], c: &[u64]) -> IntersectionArray {
        IntersectionArray::new(b.to_vec(), c.to_vec()).unwrap()
    }

    #[test]
    fn gosset() {
        let d = drg_spectrum(&array(&[27, 10, 1], &[1, 10, 27])).unwrap();
        assert_eq!(d.n(), 56);
        assert_eq!(d.spectrum().to_string(), "27^1 9^7 (-1)^27 (-3)^21");
        assert_eq!(d.spectrum().power_sum(2), EigenValue::integer(56 * 27));
        assert_eq!(d.spectrum().kth_largest(8).unwrap(), EigenValue::integer(9));
    }

    #[test]
    fn complete_graph_array() {
        for n in 2..8u64 {
            let d = drg_spectrum(&array(&[n - 1], &[1])).unwrap();
            assert_eq!(d.spectrum().to_string(), format!("{}^1 (-1)^{}", n - 1, n - 1));
        }
    }

    #[test]
    fn srg_consistency() {
        for p in [
            SrgParams::new(10, 3, 0, 1),
            SrgParams::new(9, 4, 1, 2),
            SrgParams::new(13, 6, 2, 3),
            SrgParams::new(57, 24, 11, 9),
            SrgParams::new(125, 72, 45, 36),
            SrgParams::new(243, 132, 81, 60),
            SrgParams::new(16, 5, 0, 2),
        ] {
            let s = srg_spectrum(p).unwrap();
            let a = array(&[p.k, p.k - p.lambda - 1], &[1, p.mu]);
            let d = drg_spectrum(&a).unwrap();
            assert_eq!(s.spectrum(), d.spectrum(), "{p}");
        }
    }

    #[test]
    fn cycles_and_odd_graphs() {
        // C_7 = {2,1,1;1,1,1}: eigenvalues 2cos(2πj/7) are cubic, so they stay floating
        let d = drg_spectrum(&array(&[2, 1, 1], &[1, 1, 1])).unwrap();
        let num = eigen_spectrum(&cycle(7).unwrap()).unwrap();
        assert!(d.spectrum().approx_eq(&num, 1e-9));
        assert!(!d.spectrum().is_exact());
        assert!((d.spectrum().power_sum(2).to_f64() - 14.0).abs() < 1e-9);
        // C_8 = {2,1,1,1;1,1,1,2}: 2, √2, 0, -√2, -2
        let d = drg_spectrum(&array(&[2, 1, 1, 1], &[1, 1, 1, 2])).unwrap();
        assert!(d.spectrum().is_exact());
        assert_eq!(d.spectrum().to_string(), "2^1 (sqrt2)^2 0^2 (-sqrt2)^2 (-2)^1");
        // icosahedron = {5,2,1;1,2,5}
        let d = drg_spectrum(&array(&[5, 2, 1], &[1, 2, 5])).unwrap();
        assert_eq!(d.spectrum(), &crate::families::icosahedron_spectrum());
        // cube Q3 = {3,2,1;1,2,3}
        let d = drg_spectrum(&array(&[3, 2, 1], &[1, 2, 3])).unwrap();
        assert_eq!(d.spectrum().to_string(), "3^1 1^3 (-1)^3 (-3)^1");
    }

    #[test]
    fn invalid_arrays() {
        assert!(matches!(
            IntersectionArray::new(vec![3, 2], vec![2, 3]),
            Err(Error::InfeasibleArray(_))
        ));
        assert!(matches!(
            IntersectionArray::new(vec![3], vec![1, 2]),
            Err(Error::InfeasibleArray(_))
        ));
        assert!(matches!(
            IntersectionArray::new(vec![2, 3], vec![1, 1]),
            Err(Error::InfeasibleArray(_))
        ));
        // k2 = 3·2/4 is not integral
        assert!(matches!(
            IntersectionArray::new(vec![3, 2], vec![1, 4]),
            Err(Error::InfeasibleArray(_))
        ));
        // arrays passing the structural checks but with bad multiplicities:
        // irrational ({3,2;1,2}) and fractional ({4,2;1,4}, {3,1;1,3})
        for (b, c) in [
            (vec![3, 2], vec![1, 2]),
            (vec![4, 2], vec![1, 4]),
            (vec![3, 1], vec![1, 3]),
        ] {
            let a = IntersectionArray::new(b, c).unwrap();
            assert!(matches!(drg_spectrum(&a), Err(Error::InfeasibleArray(_))), "{a}");
        }
        // Petersen {3,2;1,1} is fine
        assert!(drg_spectrum(&IntersectionArray::new(vec![3, 2], vec![1, 1]).unwrap()).is_ok());
    }

    #[test]
    fn polynomial_helpers() {
        // (x - 1)(x + 2) = x² + x - 2
        assert_eq!(divide_exact(&[-2, 1, 1], &[-1, 1]), Some(vec![2, 1]));
        assert_eq!(divide_exact(&[-2, 1, 1], &[-3, 1]), None);
        assert_eq!(eval(&[-2, 1, 1], -2), 0);
    }
}
