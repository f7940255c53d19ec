use super::{Matrix, SymMatrix};
use crate::{Error, NumericConfig, Result};

/// Spectral decomposition `S = Q·diag(λ)·Qᵀ` of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomp {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors, one per column, in the order of `eigenvalues`.
    pub basis: Matrix,
}

impl EigenDecomp {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `Q·diag(values)·Qᵀ`.
    pub fn compose(&self, values: &[f64]) -> Matrix {
        let n = self.dim();
        let q = &self.basis;
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for (k, v) in values.iter().enumerate() {
                    s += q[(i, k)] * v * q[(j, k)];
                }
                out[(i, j)] = s;
                out[(j, i)] = s;
            }
        }
        out
    }

    /// `‖Q·Qᵀ − I‖_max`.
    pub fn orthogonality_error(&self) -> f64 {
        let qqt = self
            .basis
            .matmul(&self.basis.transpose())
            .expect("square basis");
        qqt.sub(&Matrix::identity(self.dim()))
            .expect("same shape")
            .max_abs()
    }
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Sweeps over all `(p, q)` pairs until the off-diagonal Frobenius norm drops
/// to `1e-13·‖S‖_F`. Fails with [`Error::NoConvergence`] after
/// `cfg.max_sweeps` sweeps.
pub fn eig_sym(s: &SymMatrix, cfg: &NumericConfig) -> Result<EigenDecomp> {
    jacobi(s.as_matrix(), cfg.max_sweeps)
}

pub(crate) fn jacobi(s: &Matrix, max_sweeps: usize) -> Result<EigenDecomp> {
    const REL_OFF_TOL: f64 = 1e-13;

    let n = s.rows();
    let mut a = s.as_slice().to_vec();
    let mut v = Matrix::identity(n).as_slice().to_vec();
    let threshold = REL_OFF_TOL * s.frobenius_norm();
    let schedule = round_robin(n);
    let mut rots = Vec::with_capacity(n / 2);

    let mut converged = false;
    let mut off = 0.0;
    for sweep in 0..=max_sweeps {
        off = off_diagonal_norm(&a, n);
        if off <= threshold {
            converged = true;
            break;
        }
        for round in &schedule {
            rots.clear();
            for &(p, q) in round {
                let apq = a[p * n + q];
                let (app, aqq) = (a[p * n + p], a[q * n + q]);
                // below rounding of both diagonal entries: drop instead of rotating
                let negligible = sweep > 3
                    && apq.abs() <= f64::EPSILON * 0.5 * app.abs()
                    && apq.abs() <= f64::EPSILON * 0.5 * aqq.abs();
                if negligible {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                } else if apq != 0.0 {
                    rots.push(Rotation::annihilating(p, q, app, aqq, apq));
                }
            }
            apply_round(&mut a, &mut v, n, &rots);
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            method: "jacobi eigensolver",
            iterations: max_sweeps,
            residual: off,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let eigenvalues = order.iter().map(|&i| a[i * n + i]).collect();
    let mut basis = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            basis[(r, col)] = v[r * n + src];
        }
    }
    Ok(EigenDecomp { eigenvalues, basis })
}

/// Cyclic sweep order in which every round is a set of disjoint pairs
/// (circle method), so a round's rotations commute and are computed together.
fn round_robin(n: usize) -> Vec<Vec<(usize, usize)>> {
    let m = n + n % 2;
    let mut ring: Vec<usize> = (0..m).collect();
    let mut rounds = Vec::with_capacity(m.saturating_sub(1));
    for _ in 1..m {
        let round = (0..m / 2)
            .map(|k| (ring[k], ring[m - 1 - k]))
            .filter(|&(p, q)| p < n && q < n)
            .map(|(p, q)| (p.min(q), p.max(q)))
            .collect();
        rounds.push(round);
        ring[1..].rotate_right(1);
    }
    rounds
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[i * n + j] * a[i * n + j];
        }
    }
    (2.0 * s).sqrt()
}

/// Plane rotation in the `(p, q)` plane with `P_pp = P_qq = c`, `P_pq = s`,
/// `P_qp = −s`.
struct Rotation {
    p: usize,
    q: usize,
    c: f64,
    s: f64,
    /// Rotated diagonal entries `a_pp − t·a_pq`, `a_qq + t·a_pq`.
    new_pp: f64,
    new_qq: f64,
}

impl Rotation {
    /// The rotation zeroing `a_pq` of `PᵀAP`.
    fn annihilating(p: usize, q: usize, app: f64, aqq: f64, apq: f64) -> Self {
        let theta = (aqq - app) / (2.0 * apq);
        let t = if theta.abs() > 1e150 {
            0.5 / theta
        } else {
            theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
        };
        let c = 1.0 / (t * t + 1.0).sqrt();
        Self {
            p,
            q,
            c,
            s: t * c,
            new_pp: app - t * apq,
            new_qq: aqq + t * apq,
        }
    }
}

/// `A ← PᵀAP`, `V ← VP` for the product `P` of disjoint rotations.
fn apply_round(a: &mut [f64], v: &mut [f64], n: usize, rots: &[Rotation]) {
    if rots.is_empty() {
        return;
    }
    for r in 0..n {
        let row = &mut a[r * n..(r + 1) * n];
        let vrow = &mut v[r * n..(r + 1) * n];
        for rot in rots {
            let (x, y) = (row[rot.p], row[rot.q]);
            row[rot.p] = rot.c * x - rot.s * y;
            row[rot.q] = rot.s * x + rot.c * y;
            let (x, y) = (vrow[rot.p], vrow[rot.q]);
            vrow[rot.p] = rot.c * x - rot.s * y;
            vrow[rot.q] = rot.s * x + rot.c * y;
        }
    }
    for rot in rots {
        let (p, q) = (rot.p, rot.q);
        for col in 0..n {
            let (x, y) = (a[p * n + col], a[q * n + col]);
            a[p * n + col] = rot.c * x - rot.s * y;
            a[q * n + col] = rot.s * x + rot.c * y;
        }
    }
    // the 2×2 blocks of the pairs only see their own rotation; use the
    // cancellation-free updates there
    for rot in rots {
        let (p, q) = (rot.p, rot.q);
        a[p * n + p] = rot.new_pp;
        a[q * n + q] = rot.new_qq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[f64]]) -> SymMatrix {
        SymMatrix::new(Matrix::from_rows(rows).unwrap(), &NumericConfig::default()).unwrap()
    }

    #[test]
    fn diagonal_input_sorts_ascending() {
        let cfg = NumericConfig::default();
        let e = eig_sym(&sym(&[&[2.0, 0.0], &[0.0, 1.0 / 3.0]]), &cfg).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0 / 3.0, 2.0]);
        // permuted identity
        assert_eq!(e.basis.to_rows(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn golden_ratio_matrix() {
        let cfg = NumericConfig::default();
        let e = eig_sym(&sym(&[&[2.0, 1.0], &[1.0, 1.0]]), &cfg).unwrap();
        let r5 = 5f64.sqrt();
        assert!((e.eigenvalues[0] - (3.0 - r5) / 2.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - (3.0 + r5) / 2.0).abs() < 1e-14);
        assert!(e.orthogonality_error() < 1e-14);
    }

    #[test]
    fn zero_matrix() {
        let cfg = NumericConfig::default();
        let e = eig_sym(&sym(&[&[0.0, 0.0], &[0.0, 0.0]]), &cfg).unwrap();
        assert_eq!(e.eigenvalues, vec![0.0, 0.0]);
    }

    #[test]
    fn sweep_cap_reports_no_convergence() {
        let m = Matrix::from_rows(&[[1.0, 0.3, 0.2], [0.3, 2.0, 0.1], [0.2, 0.1, 3.0]]).unwrap();
        assert!(matches!(jacobi(&m, 0), Err(Error::NoConvergence { .. })));
        assert!(jacobi(&m, 64).is_ok());
    }
}
