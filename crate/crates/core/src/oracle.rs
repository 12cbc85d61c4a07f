//! Brute-force verification: dense cyclic Jacobi eigensolver over explicit
//! adjacency matrices, multiplicity grouping and spectrum comparison.
//!
//! Nothing in here consults characters or arithmetic functions, so it stays
//! independent of the closed-form routes it checks.

use serde::Serialize;

use crate::cayley::{build_adjacency, ConnectionSet, GroupSpec, DEFAULT_DENSE_CAP};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::spectrum::{Spectrum, DEFAULT_GAP_TOL};

pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
/// Default value tolerance when comparing a closed-form spectrum to the oracle.
pub const DEFAULT_VALUE_TOL: f64 = 1e-7;

/// Knobs shared by every oracle run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub eigen_tol: f64,
    pub gap_tol: f64,
    pub dense_cap: usize,
    pub max_sweeps: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            eigen_tol: DEFAULT_EIGEN_TOL,
            gap_tol: DEFAULT_GAP_TOL,
            dense_cap: DEFAULT_DENSE_CAP,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

/// Eigenvalues of a real symmetric matrix, descending.
pub fn symmetric_eigenvalues(matrix: &Matrix, tol: f64) -> Result<Vec<f64>> {
    symmetric_eigenvalues_with(matrix, tol, DEFAULT_MAX_SWEEPS)
}

/// Cyclic Jacobi: sweep the upper triangle row by row, annihilating each
/// off-diagonal entry with a plane rotation, until the off-diagonal Frobenius
/// norm drops below `tol` times the Frobenius norm of the matrix.
pub fn symmetric_eigenvalues_with(matrix: &Matrix, tol: f64, max_sweeps: usize) -> Result<Vec<f64>> {
    let (row, col, diff) = matrix.max_asymmetry();
    if diff > 1e-12 || diff.is_nan() {
        return Err(Error::NotSymmetric { row, col, diff });
    }
    let n = matrix.size();
    let mut a = matrix.as_slice().to_vec();
    let scale = matrix.frobenius_norm_sq().sqrt();
    if !scale.is_finite() {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let threshold = tol * scale;

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = false;
    for _ in 0..max_sweeps {
        if off_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
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
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = c * akp - s * akq;
                    let new_kq = s * akp + c * akq;
                    a[k * n + p] = new_kp;
                    a[p * n + k] = new_kp;
                    a[k * n + q] = new_kq;
                    a[q * n + k] = new_kq;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    if !converged {
        let off = off_norm(&a);
        if off > threshold {
            return Err(Error::ConvergenceFailure {
                sweeps: max_sweeps,
                off_norm: off,
            });
        }
    }

    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    let sum: f64 = values.iter().sum();
    let trace = matrix.trace();
    if (sum - trace).abs() > 1e-7 * n.max(1) as f64 * (1.0 + scale) {
        return Err(Error::InternalInconsistency(format!(
            "eigenvalue sum {sum} differs from trace {trace}"
        )));
    }
    Ok(values)
}

/// Groups a descending list: consecutive values within `gap_tol` merge into
/// one pair valued at the group mean.
pub fn group_multiplicities(values: &[f64], gap_tol: f64) -> Result<Spectrum> {
    if let Some(i) = values.windows(2).position(|w| w[0] < w[1]) {
        return Err(Error::InvalidInput(format!(
            "values not sorted descending at position {}",
            i + 1
        )));
    }
    Ok(Spectrum::from_entries(
        values.iter().map(|&v| (v, 1)).collect(),
        false,
        gap_tol,
    ))
}

/// Spectrum of the explicit adjacency matrix of `X_S(G)`.
pub fn oracle_spectrum(group: &GroupSpec, s: &ConnectionSet, opts: &OracleOptions) -> Result<Spectrum> {
    let values = oracle_eigenvalues(group, s, opts)?;
    Ok(group_multiplicities(&values, opts.gap_tol)?.with_degree(s.size()))
}

/// Raw descending eigenvalues of the explicit adjacency matrix.
pub fn oracle_eigenvalues(group: &GroupSpec, s: &ConnectionSet, opts: &OracleOptions) -> Result<Vec<f64>> {
    let adj = build_adjacency(group, s, opts.dense_cap)?;
    symmetric_eigenvalues_with(&adj, opts.eigen_tol, opts.max_sweeps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicityMismatch {
    pub value: f64,
    pub closed: usize,
    pub oracle: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub matched: bool,
    pub max_value_error: f64,
    pub multiplicity_mismatches: Vec<MultiplicityMismatch>,
    pub tolerance: f64,
    pub order: usize,
}

/// Compares a closed-form spectrum with the oracle on the explicit graph.
///
/// Every closed pair is matched against the raw oracle eigenvalues lying
/// within `max(tol, gap_tol)` of it; oracle eigenvalues claimed by no pair
/// are reported as mismatches with closed multiplicity 0.
pub fn verify_spectrum(
    closed: &Spectrum,
    group: &GroupSpec,
    s: &ConnectionSet,
    tol: f64,
    opts: &OracleOptions,
) -> Result<VerificationReport> {
    let raw = oracle_eigenvalues(group, s, opts)?;
    Ok(compare_with_eigenvalues(closed, &raw, tol, opts.gap_tol))
}

pub fn compare_with_eigenvalues(
    closed: &Spectrum,
    raw: &[f64],
    tol: f64,
    gap_tol: f64,
) -> VerificationReport {
    let window = tol.max(gap_tol);
    let nearest = |x: f64, ys: &mut dyn Iterator<Item = f64>| -> f64 {
        ys.map(|y| (x - y).abs()).fold(f64::INFINITY, f64::min)
    };

    let mut max_err: f64 = 0.0;
    for p in closed.pairs() {
        max_err = max_err.max(nearest(p.value, &mut raw.iter().copied()));
    }
    for &x in raw {
        max_err = max_err.max(nearest(x, &mut closed.pairs().iter().map(|p| p.value)));
    }
    if closed.is_empty() && !raw.is_empty() {
        max_err = f64::INFINITY;
    }

    let mut mismatches = Vec::new();
    let mut claimed = vec![false; raw.len()];
    for p in closed.pairs() {
        let mut count = 0;
        for (i, &x) in raw.iter().enumerate() {
            if (x - p.value).abs() <= window {
                count += 1;
                claimed[i] = true;
            }
        }
        if count != p.multiplicity {
            mismatches.push(MultiplicityMismatch {
                value: p.value,
                closed: p.multiplicity,
                oracle: count,
            });
        }
    }
    let stray: Vec<f64> = raw
        .iter()
        .zip(&claimed)
        .filter(|(_, &c)| !c)
        .map(|(&x, _)| x)
        .collect();
    if let Ok(grouped) = group_multiplicities(&stray, gap_tol) {
        for p in grouped.pairs() {
            mismatches.push(MultiplicityMismatch {
                value: p.value,
                closed: 0,
                oracle: p.multiplicity,
            });
        }
    }
    VerificationReport {
        matched: max_err <= tol && mismatches.is_empty(),
        max_value_error: max_err,
        multiplicity_mismatches: mismatches,
        tolerance: tol,
        order: raw.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::unitary_connection_set;
    use crate::spectrum::unitary_cyclic_spectrum;

    fn complete(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.set(i, j, 1.0);
                }
            }
        }
        m
    }

    #[test]
    fn eigen_examples() {
        let v = symmetric_eigenvalues(&complete(3), DEFAULT_EIGEN_TOL).unwrap();
        let want = [2.0, -1.0, -1.0];
        for (a, b) in v.iter().zip(want) {
            assert!((a - b).abs() < 1e-10);
        }
        assert_eq!(
            symmetric_eigenvalues(&Matrix::zeros(4), DEFAULT_EIGEN_TOL).unwrap(),
            vec![0.0; 4]
        );
        let c4 = Matrix::from_rows(&[
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let v = symmetric_eigenvalues(&c4, DEFAULT_EIGEN_TOL).unwrap();
        for (a, b) in v.iter().zip([2.0, 0.0, 0.0, -2.0]) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(symmetric_eigenvalues(&Matrix::zeros(0), DEFAULT_EIGEN_TOL)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn non_symmetric_rejected() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            symmetric_eigenvalues(&m, DEFAULT_EIGEN_TOL),
            Err(Error::NotSymmetric { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn sweep_limit_reports_failure() {
        let m = complete(6);
        assert!(matches!(
            symmetric_eigenvalues_with(&m, 1e-14, 0),
            Err(Error::ConvergenceFailure { sweeps: 0, .. })
        ));
    }

    #[test]
    fn diagonal_is_returned_sorted() {
        let d = [3.5, -1.25, 0.0, 7.0, 2.0];
        let v = symmetric_eigenvalues(&Matrix::from_diagonal(&d), DEFAULT_EIGEN_TOL).unwrap();
        let mut want = d.to_vec();
        want.sort_by(|a, b| b.total_cmp(a));
        for (a, b) in v.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn grouping_examples() {
        let s = group_multiplicities(&[2.0, -1.0, -1.0], 1e-6).unwrap();
        let p: Vec<_> = s.pairs().iter().map(|p| (p.value, p.multiplicity)).collect();
        assert_eq!(p, vec![(2.0, 1), (-1.0, 2)]);
        let empty = group_multiplicities(&[], 1e-6).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.order(), 0);
        assert!(group_multiplicities(&[1.0, 2.0], 1e-6).is_err());

        let v = symmetric_eigenvalues(&complete(5), DEFAULT_EIGEN_TOL).unwrap();
        let s = group_multiplicities(&v, 1e-6).unwrap();
        assert_eq!(s.pairs().len(), 2);
        assert!((s.pairs()[0].value - 4.0).abs() < 1e-10);
        assert_eq!(s.pairs()[1].multiplicity, 4);
    }

    #[test]
    fn verify_examples() {
        let opts = OracleOptions::default();
        for n in [6u64, 12] {
            let g = GroupSpec::cyclic(n).unwrap();
            let s = unitary_connection_set(n).unwrap();
            let closed = unitary_cyclic_spectrum(n).unwrap();
            let r = verify_spectrum(&closed, &g, &s, 1e-7, &opts).unwrap();
            assert!(r.matched, "{r:?}");
            assert!(r.max_value_error < 1e-7);
        }
        let o = oracle_spectrum(
            &GroupSpec::cyclic(12).unwrap(),
            &unitary_connection_set(12).unwrap(),
            &opts,
        )
        .unwrap();
        assert_eq!(o.multiplicity_of(0.0, 1e-6), 6);
    }

    #[test]
    fn perturbed_spectrum_is_caught() {
        let g = GroupSpec::cyclic(5).unwrap();
        let s = unitary_connection_set(5).unwrap();
        let bad = Spectrum::from_entries(vec![(4.0, 1), (-1.0, 5)], true, 0.0);
        let r = verify_spectrum(&bad, &g, &s, 1e-7, &OracleOptions::default()).unwrap();
        assert!(!r.matched);
        assert_eq!(
            r.multiplicity_mismatches,
            vec![MultiplicityMismatch {
                value: -1.0,
                closed: 5,
                oracle: 4
            }]
        );

        let shifted = Spectrum::from_entries(vec![(4.0, 1), (-1.1, 4)], false, 1e-6);
        let r = verify_spectrum(&shifted, &g, &s, 1e-7, &OracleOptions::default()).unwrap();
        assert!(!r.matched);
        assert!(r.max_value_error > 0.09);
    }
}
