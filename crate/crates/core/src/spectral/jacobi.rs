//! Cyclic Jacobi eigenvalue iteration for dense real symmetric matrices.

use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 30;

/// Convergence threshold on the off-diagonal Frobenius norm is
/// `OFF_DIAGONAL_TOLERANCE · n`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Eigenvalues of the row-major symmetric matrix `a` (unsorted). Only the
/// values are computed, no eigenvectors. Deterministic for a fixed input.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n {
        return Err(Error::invalid(format!(
            "matrix has {} entries, expected {n}×{n}",
            a.len()
        )));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }
    let threshold = OFF_DIAGONAL_TOLERANCE * n as f64;

    for _ in 0..=MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= threshold {
            return Ok((0..n).map(|i| a[i * n + i]).collect());
        }
        sweep(&mut a, n);
    }
    Err(Error::Numeric(format!(
        "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps (off-diagonal norm {:e})",
        off_diagonal_norm(&a, n)
    )))
}

fn sweep(a: &mut [f64], n: usize) {
    for p in 0..n {
        for q in (p + 1)..n {
            let apq = a[p * n + q];
            if apq == 0.0 {
                continue;
            }
            let app = a[p * n + p];
            let aqq = a[q * n + q];
            let theta = (aqq - app) / (2.0 * apq);
            let t = if theta.abs() > 1e150 {
                0.5 / theta
            } else {
                theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
            };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let tau = s / (1.0 + c);

            a[p * n + p] = app - t * apq;
            a[q * n + q] = aqq + t * apq;
            a[p * n + q] = 0.0;
            a[q * n + p] = 0.0;
            for r in 0..n {
                if r == p || r == q {
                    continue;
                }
                let arp = a[r * n + p];
                let arq = a[r * n + q];
                let new_rp = arp - s * (arq + tau * arp);
                let new_rq = arq + s * (arp - tau * arq);
                a[r * n + p] = new_rp;
                a[p * n + r] = new_rp;
                a[r * n + q] = new_rq;
                a[q * n + r] = new_rq;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    #[test]
    fn two_by_two() {
        let ev = sorted(symmetric_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2).unwrap());
        assert!((ev[0] - 3.0).abs() < 1e-14);
        assert!((ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_returned() {
        let ev = symmetric_eigenvalues(vec![3.0, 0.0, 0.0, -1.0], 2).unwrap();
        assert_eq!(ev, vec![3.0, -1.0]);
    }

    #[test]
    fn tridiagonal_toeplitz() {
        // eigenvalues 2 + 2cos(jπ/(n+1))
        let n = 9;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 2.0;
            if i + 1 < n {
                a[i * n + i + 1] = 1.0;
                a[(i + 1) * n + i] = 1.0;
            }
        }
        let ev = sorted(symmetric_eigenvalues(a, n).unwrap());
        for (j, v) in ev.iter().enumerate() {
            let want = 2.0 + 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - want).abs() < 1e-12, "{v} vs {want}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            symmetric_eigenvalues(vec![1.0; 3], 2),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            symmetric_eigenvalues(vec![f64::NAN, 0.0, 0.0, 1.0], 2),
            Err(Error::Numeric(_))
        ));
    }
}
