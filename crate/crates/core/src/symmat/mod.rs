//! Dense symmetric matrices: eigendecomposition, functional calculus and the
//! Loewner order.
//!
//! [`SymMatrix`] is a validated real symmetric matrix; [`SpdMatrix`] adds a
//! positive-definiteness certificate (smallest eigenvalue > 0) and caches its
//! Cholesky factor and spectral decomposition. All values are immutable and
//! every operation returns a new matrix.

mod eigen;
mod io;
mod matrix;

use std::sync::OnceLock;

pub use eigen::{eig_sym, EigenDecomp};
pub use io::{format_matrix, parse_matrix, read_matrix_file, read_spd_file, write_matrix_file};
pub use matrix::Matrix;

pub(crate) use matrix::{congruence, congruence_inv};

use crate::{Error, NumericConfig, Result};

/// Real symmetric matrix.
#[derive(Clone, PartialEq)]
pub struct SymMatrix {
    m: Matrix,
}

impl SymMatrix {
    /// Validates squareness and symmetry, then stores `(S + Sᵀ)/2`.
    ///
    /// Asymmetry above `sym_tol · max|s_ij|` is rejected rather than repaired.
    pub fn new(m: Matrix, cfg: &NumericConfig) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidInput(format!(
                "matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.rows() == 0 {
            return Err(Error::InvalidInput("matrix dimension must be >= 1".into()));
        }
        if m.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        let asym = m.max_asymmetry();
        let tolerance = cfg.sym_tol * m.max_abs();
        if asym > tolerance {
            return Err(Error::NotSymmetric {
                asymmetry: asym,
                tolerance,
            });
        }
        Ok(Self { m: m.symmetrized() })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?, &NumericConfig::default())
    }

    /// Symmetrizes a computed matrix without a tolerance check.
    pub(crate) fn from_computed(m: Matrix) -> Self {
        debug_assert!(m.is_square());
        Self { m: m.symmetrized() }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: Matrix::identity(n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            m: Matrix::zeros(n, n),
        }
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        Self {
            m: Matrix::from_diag(diag),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn eig(&self, cfg: &NumericConfig) -> Result<EigenDecomp> {
        eig_sym(self, cfg)
    }

    /// Spectral (operator) norm, `max |λ|`.
    pub fn op_norm(&self, cfg: &NumericConfig) -> Result<f64> {
        let e = self.eig(cfg)?;
        Ok(e.min().abs().max(e.max().abs()))
    }

    /// `f(S) = Q·diag(f(λ))·Qᵀ`; fails if `f` is not finite on the spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64, cfg: &NumericConfig) -> Result<SymMatrix> {
        map_decomp(&self.eig(cfg)?, f)
    }

    pub fn exp(&self, cfg: &NumericConfig) -> Result<SpdMatrix> {
        SpdMatrix::from_computed(self.map_spectrum(f64::exp, cfg)?.into_matrix())
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        Ok(Self {
            m: self.m.add(&other.m)?,
        })
    }

    pub fn sub(&self, other: &SymMatrix) -> Result<SymMatrix> {
        Ok(Self {
            m: self.m.sub(&other.m)?,
        })
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        Self { m: self.m.scale(c) }
    }

    /// `S·T·S` for symmetric `S`, `T`.
    pub fn sandwich(&self, inner: &SymMatrix) -> Result<SymMatrix> {
        let st = self.m.matmul(&inner.m)?;
        Ok(Self::from_computed(st.matmul(&self.m)?))
    }

    pub fn square(&self) -> SymMatrix {
        Self::from_computed(self.m.matmul(&self.m).expect("square matrix"))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.frobenius_norm()
    }

    pub fn max_abs_diff(&self, other: &SymMatrix) -> f64 {
        self.m
            .sub(&other.m)
            .map(|d| d.max_abs())
            .unwrap_or(f64::INFINITY)
    }
}

impl std::fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.m.fmt(f)
    }
}

fn map_decomp(e: &EigenDecomp, f: impl Fn(f64) -> f64) -> Result<SymMatrix> {
    let values: Vec<f64> = e.eigenvalues.iter().map(|&l| f(l)).collect();
    if let Some((l, _)) = e
        .eigenvalues
        .iter()
        .zip(&values)
        .find(|(_, v)| !v.is_finite())
    {
        return Err(Error::Domain(format!(
            "function is not finite at eigenvalue {l:e}"
        )));
    }
    Ok(SymMatrix::from_computed(e.compose(&values)))
}

/// Symmetric positive definite matrix.
///
/// Carries its lower Cholesky factor, and its eigendecomposition once it has
/// been requested.
#[derive(Clone)]
pub struct SpdMatrix {
    sym: SymMatrix,
    chol: Matrix,
    eig: OnceLock<EigenDecomp>,
}

impl SpdMatrix {
    /// Validates `λ_min(S) > 0`.
    pub fn new(sym: SymMatrix, cfg: &NumericConfig) -> Result<Self> {
        let e = sym.eig(cfg)?;
        if e.min().is_nan() || e.min() <= 0.0 {
            return Err(Error::NotDefinite {
                min_eigenvalue: e.min(),
            });
        }
        let chol = sym.m.cholesky().ok_or(Error::NotDefinite {
            min_eigenvalue: e.min(),
        })?;
        Ok(Self {
            sym,
            chol,
            eig: OnceLock::from(e),
        })
    }

    /// Parses rows, checks symmetry and definiteness with default tolerances.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cfg = NumericConfig::default();
        Self::new(SymMatrix::new(Matrix::from_rows(rows)?, &cfg)?, &cfg)
    }

    pub fn from_diag(diag: &[f64]) -> Result<Self> {
        Self::new(SymMatrix::from_diag(diag), &NumericConfig::default())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_computed(Matrix::identity(n)).expect("identity is positive definite")
    }

    /// Wraps a matrix produced by a solver; a successful Cholesky
    /// factorization is the definiteness certificate.
    pub(crate) fn from_computed(m: Matrix) -> Result<Self> {
        let m = m.symmetrized();
        match m.cholesky() {
            Some(chol) => Ok(Self {
                sym: SymMatrix { m },
                chol,
                eig: OnceLock::new(),
            }),
            None => {
                let min_eigenvalue = eigen::jacobi(&m, NumericConfig::default().max_sweeps)
                    .map(|e| e.min())
                    .unwrap_or(f64::NAN);
                Err(Error::NotDefinite { min_eigenvalue })
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.sym.dim()
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.sym
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.sym.m
    }

    pub fn into_sym(self) -> SymMatrix {
        self.sym
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.sym.get(i, j)
    }

    /// Lower Cholesky factor `L`, `A = L·Lᵀ`.
    pub fn cholesky(&self) -> &Matrix {
        &self.chol
    }

    pub fn eigen(&self) -> Result<&EigenDecomp> {
        if let Some(e) = self.eig.get() {
            return Ok(e);
        }
        let e = eigen::jacobi(&self.sym.m, NumericConfig::default().max_sweeps)?;
        Ok(self.eig.get_or_init(|| e))
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigen().map(|e| e.min()).unwrap_or(f64::NAN)
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigen().map(|e| e.max()).unwrap_or(f64::NAN)
    }

    /// `λ_max / λ_min`.
    pub fn condition_number(&self) -> f64 {
        self.lambda_max() / self.lambda_min()
    }

    /// Operator norm, equal to `λ_max`.
    pub fn op_norm(&self) -> f64 {
        self.lambda_max()
    }

    pub fn sqrt(&self) -> Result<SpdMatrix> {
        self.map_spd(f64::sqrt)
    }

    pub fn inv_sqrt(&self) -> Result<SpdMatrix> {
        self.map_spd(|l| 1.0 / l.sqrt())
    }

    pub fn inverse(&self) -> Result<SpdMatrix> {
        self.map_spd(|l| 1.0 / l)
    }

    pub fn pow(&self, p: f64) -> Result<SpdMatrix> {
        self.map_spd(|l| l.powf(p))
    }

    pub fn log(&self) -> Result<SymMatrix> {
        map_decomp(self.eigen()?, f64::ln)
    }

    pub fn scale(&self, c: f64) -> Result<SpdMatrix> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::Domain(format!("scale factor {c} is not positive")));
        }
        let mut out = Self::from_computed(self.sym.m.scale(c))?;
        if let Some(e) = self.eig.get() {
            let scaled = EigenDecomp {
                eigenvalues: e.eigenvalues.iter().map(|l| l * c).collect(),
                basis: e.basis.clone(),
            };
            out.eig = OnceLock::from(scaled);
        }
        Ok(out)
    }

    fn map_spd(&self, f: impl Fn(f64) -> f64) -> Result<SpdMatrix> {
        let e = self.eigen()?;
        let values: Vec<f64> = e.eigenvalues.iter().map(|&l| f(l)).collect();
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Domain(
                "function maps the spectrum outside (0, inf)".into(),
            ));
        }
        let mut out = Self::from_computed(e.compose(&values))?;
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        let mut basis = Matrix::zeros(e.dim(), e.dim());
        for (col, &src) in order.iter().enumerate() {
            for r in 0..e.dim() {
                basis[(r, col)] = e.basis[(r, src)];
            }
        }
        out.eig = OnceLock::from(EigenDecomp {
            eigenvalues: order.iter().map(|&i| values[i]).collect(),
            basis,
        });
        Ok(out)
    }
}

impl PartialEq for SpdMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.sym == other.sym
    }
}

impl std::fmt::Debug for SpdMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.sym.fmt(f)
    }
}

/// `f(A) = Q·diag(f(λ_i))·Qᵀ` for a scalar function finite on the spectrum.
pub fn apply_fn(a: &SpdMatrix, f: impl Fn(f64) -> f64, _cfg: &NumericConfig) -> Result<SymMatrix> {
    map_decomp(a.eigen()?, f)
}

/// `λ_min(A − B)`.
///
/// `A ⪰ B` is declared by [`loewner_geq`] when the margin is at least
/// `−loewner_tol · max(1, ‖A‖, ‖B‖)`.
pub fn loewner_margin(a: &SymMatrix, b: &SymMatrix, cfg: &NumericConfig) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::dims(a.dim(), b.dim()));
    }
    Ok(a.sub(b)?.eig(cfg)?.min())
}

/// Loewner-order test `A ⪰ B` with relative slack.
pub fn loewner_geq(a: &SymMatrix, b: &SymMatrix, cfg: &NumericConfig) -> Result<bool> {
    let margin = loewner_margin(a, b, cfg)?;
    let scale = 1f64.max(a.op_norm(cfg)?).max(b.op_norm(cfg)?);
    Ok(margin >= -cfg.loewner_tol * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> NumericConfig {
        NumericConfig::default()
    }

    #[test]
    fn rejects_asymmetric_and_indefinite() {
        let asym = Matrix::from_rows(&[[1.0, 0.5], [0.4, 1.0]]).unwrap();
        assert!(matches!(
            SymMatrix::new(asym, &cfg()),
            Err(Error::NotSymmetric { .. })
        ));
        // tiny asymmetry is symmetrized away
        let nearly = Matrix::from_rows(&[[1.0, 0.5], [0.5 + 1e-14, 1.0]]).unwrap();
        let s = SymMatrix::new(nearly, &cfg()).unwrap();
        assert_eq!(s.get(0, 1), s.get(1, 0));

        let indefinite = SymMatrix::from_rows(&[[1.0, 2.0], [2.0, 1.0]]).unwrap();
        assert!(matches!(
            SpdMatrix::new(indefinite, &cfg()),
            Err(Error::NotDefinite { .. })
        ));
        assert!(SymMatrix::new(Matrix::zeros(2, 3), &cfg()).is_err());
        assert!(SymMatrix::new(Matrix::zeros(0, 0), &cfg()).is_err());
    }

    #[test]
    fn named_functions_on_diagonals() {
        let a = SpdMatrix::from_diag(&[4.0, 9.0]).unwrap();
        assert_eq!(a.sqrt().unwrap().as_matrix().diagonal(), vec![2.0, 3.0]);
        let i = SpdMatrix::identity(3);
        assert_eq!(i.log().unwrap().frobenius_norm(), 0.0);

        let a = SpdMatrix::from_diag(&[2.0, 1.0 / 3.0]).unwrap();
        let b = Matrix::from_diag(&[4.0, 0.5]);
        let prod = a.pow(-1.0).unwrap().as_matrix().matmul(&b).unwrap();
        let d = prod.diagonal();
        assert!((d[0] - 2.0).abs() < 1e-15);
        assert!((d[1] - 1.5).abs() < 1e-15);
        assert_eq!(prod[(0, 1)], 0.0);
    }

    #[test]
    fn log_of_nonpositive_spectrum_is_domain_error() {
        let s = SymMatrix::from_diag(&[1.0, -1.0]);
        assert!(matches!(
            s.map_spectrum(f64::ln, &cfg()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn loewner_margins() {
        let i = SymMatrix::identity(2);
        assert_eq!(loewner_margin(&i, &i, &cfg()).unwrap(), 0.0);
        let a = SymMatrix::from_diag(&[2.0, 3.0]);
        let b = SymMatrix::from_diag(&[1.0, 1.0]);
        assert_eq!(loewner_margin(&a, &b, &cfg()).unwrap(), 1.0);
        assert!(loewner_geq(&a, &b, &cfg()).unwrap());
        assert!(!loewner_geq(&b, &a, &cfg()).unwrap());
        assert!(matches!(
            loewner_margin(&a, &SymMatrix::identity(3), &cfg()),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn scale_keeps_cached_spectrum_consistent() {
        let a = SpdMatrix::from_rows(&[[2.0, 1.0], [1.0, 1.0]]).unwrap();
        let b = a.scale(3.0).unwrap();
        let fresh = b.as_sym().eig(&cfg()).unwrap();
        assert!((b.lambda_max() - fresh.max()).abs() < 1e-13);
        assert!(a.scale(0.0).is_err());
    }
}
