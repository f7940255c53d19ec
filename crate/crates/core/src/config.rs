/// Tolerances and iteration caps shared by every solver in the crate.
///
/// The defaults are tuned for double precision with iterative accumulation:
/// `sym_tol = 1e-12`, `orth_tol = recon_tol = 1e-10`, `loewner_tol = 1e-8`
/// (relative), `fixed_point_tol = 1e-12`, 64 Jacobi sweeps and 5000 fixed-point
/// iterations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericConfig {
    /// Relative asymmetry accepted when building a symmetric matrix.
    pub sym_tol: f64,
    /// Orthonormality tolerance of eigenvector bases.
    pub orth_tol: f64,
    /// Relative reconstruction tolerance of eigendecompositions.
    pub recon_tol: f64,
    /// Relative slack for Loewner-order comparisons.
    pub loewner_tol: f64,
    /// Stopping tolerance of the fixed-point solvers.
    pub fixed_point_tol: f64,
    /// Jacobi sweep cap.
    pub max_sweeps: usize,
    /// Iteration cap of the fixed-point solvers.
    pub max_iters: usize,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            sym_tol: 1e-12,
            orth_tol: 1e-10,
            recon_tol: 1e-10,
            loewner_tol: 1e-8,
            fixed_point_tol: 1e-12,
            max_sweeps: 64,
            max_iters: 5000,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> crate::Result<()> {
        let tols = [
            self.sym_tol,
            self.orth_tol,
            self.recon_tol,
            self.loewner_tol,
            self.fixed_point_tol,
        ];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(crate::Error::InvalidInput(
                "all tolerances must be finite and positive".into(),
            ));
        }
        if self.max_sweeps == 0 || self.max_iters == 0 {
            return Err(crate::Error::InvalidInput(
                "iteration caps must be positive".into(),
            ));
        }
        Ok(())
    }
}
