//! Means of symmetric positive definite matrices.
//!
//! Two-variable weighted geometric mean `A ♯_ν B`, weighted arithmetic and
//! harmonic means, the power means `P_t(ω; 𝔸)` for `t ∈ [−1, 1] \ {0}`, the
//! Karcher mean `Λ(ω; 𝔸)` and the Ando-Li-Mathias geometric mean `G(𝔸)`.
//!
//! The iterative solvers report a [`MeanResult`] whose `residual` certifies the
//! answer: a Thompson distance between successive iterates for power means, the
//! Frobenius norm of the Karcher gradient for the Karcher mean, and the largest
//! pairwise Thompson distance of the final tuple for the ALM mean.

use crate::symmat::{congruence, congruence_inv, Matrix};
use crate::thompson;
use crate::{Error, NumericConfig, Result, SpdMatrix, SymMatrix};

const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Fixed-point iterations also stop once the residual stops decreasing while
/// within this factor of the tolerance: the round-off floor of the residual
/// can sit slightly above a tight tolerance.
const STALL_FACTOR: f64 = 1e3;

fn stalled(residual: f64, previous: f64, cfg: &NumericConfig) -> bool {
    residual >= previous && residual <= STALL_FACTOR * cfg.fixed_point_tol
}

/// Probability vector with every weight in `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights(
                "need at least two weights, each strictly inside (0, 1)".into(),
            ));
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && **w < 1.0)) {
            return Err(Error::InvalidWeights(format!(
                "weight {w} is not in (0, 1)"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {sum}, not 1"
            )));
        }
        Ok(Self(weights))
    }

    /// Equal weights `1/n`.
    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Rescales positive raw weights to sum to one.
    pub fn normalized(raw: &[f64]) -> Result<Self> {
        if raw.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidWeights("raw weights must be positive".into()));
        }
        let sum: f64 = raw.iter().sum();
        Self::new(raw.iter().map(|w| w / sum).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Non-empty tuple of SPD matrices of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SpdTuple(Vec<SpdMatrix>);

impl SpdTuple {
    pub fn new(matrices: Vec<SpdMatrix>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidInput("tuple must hold at least one matrix".into()))?;
        let dim = first.dim();
        if let Some(m) = matrices.iter().find(|m| m.dim() != dim) {
            return Err(Error::dims(dim, m.dim()));
        }
        Ok(Self(matrices))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }

    pub fn as_slice(&self) -> &[SpdMatrix] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SpdMatrix> {
        self.0.iter()
    }

    pub fn into_vec(self) -> Vec<SpdMatrix> {
        self.0
    }

    /// `𝔸⁻¹ = (A₁⁻¹, …, Aₙ⁻¹)`.
    pub fn inverted(&self) -> Result<Self> {
        Ok(Self(
            self.0
                .iter()
                .map(SpdMatrix::inverse)
                .collect::<Result<_>>()?,
        ))
    }

    /// The tuple with entry `i` removed.
    pub fn without(&self, i: usize) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, m)| m.clone())
                .collect(),
        )
    }

    /// `max_i λ_max(A_i)/λ_min(A_i)`.
    pub fn max_condition_number(&self) -> f64 {
        self.0
            .iter()
            .map(SpdMatrix::condition_number)
            .fold(1.0, f64::max)
    }
}

impl<'a> IntoIterator for &'a SpdTuple {
    type Item = &'a SpdMatrix;
    type IntoIter = std::slice::Iter<'a, SpdMatrix>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A solver answer with its convergence diagnostics.
#[derive(Debug, Clone)]
pub struct MeanResult {
    pub value: SpdMatrix,
    pub iterations: usize,
    pub residual: f64,
}

impl MeanResult {
    fn exact(value: SpdMatrix) -> Self {
        Self {
            value,
            iterations: 0,
            residual: 0.0,
        }
    }
}

fn check_weights(w: &WeightVector, t: &SpdTuple) -> Result<()> {
    if w.len() != t.len() {
        return Err(Error::dims(t.len(), w.len()));
    }
    Ok(())
}

/// `A ♯_ν B` given the Cholesky factor `L` of `A`: `L·(L⁻¹BL⁻ᵀ)^ν·Lᵀ`.
fn geo_mean_chol(l: &Matrix, b: &SpdMatrix, nu: f64) -> Result<SymMatrix> {
    let c = SymMatrix::from_computed(congruence_inv(l, b.as_matrix()));
    let c_nu = c.map_spectrum(|x| x.powf(nu), &NumericConfig::default())?;
    Ok(SymMatrix::from_computed(congruence(l, c_nu.as_matrix())))
}

/// Weighted geometric mean `A ♯_ν B = A^{1/2}(A^{-1/2}BA^{-1/2})^ν A^{1/2}`.
///
/// `ν = 0` returns `A` and `ν = 1` returns `B` exactly. Exponents outside
/// `[0, 1]` are accepted (the result is still SPD) for internal use.
pub fn geo_mean(a: &SpdMatrix, b: &SpdMatrix, nu: f64) -> Result<SpdMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::dims(a.dim(), b.dim()));
    }
    if !nu.is_finite() {
        return Err(Error::Domain(format!("exponent must be finite, got {nu}")));
    }
    if nu == 0.0 {
        return Ok(a.clone());
    }
    if nu == 1.0 {
        return Ok(b.clone());
    }
    SpdMatrix::from_computed(geo_mean_chol(a.cholesky(), b, nu)?.into_matrix())
}

/// `Σ w_i A_i`.
pub fn arithmetic_mean(w: &WeightVector, t: &SpdTuple) -> Result<SpdMatrix> {
    check_weights(w, t)?;
    let mut acc = Matrix::zeros(t.dim(), t.dim());
    for (wi, a) in w.as_slice().iter().zip(t) {
        acc.axpy(*wi, a.as_matrix());
    }
    SpdMatrix::from_computed(acc)
}

/// `(Σ w_i A_i⁻¹)⁻¹`.
pub fn harmonic_mean(w: &WeightVector, t: &SpdTuple) -> Result<SpdMatrix> {
    arithmetic_mean(w, &t.inverted()?)?.inverse()
}

/// Weighted power mean `P_t(ω; 𝔸)`.
///
/// For `t ∈ (0, 1]` this is the fixed point of `X ↦ Σ w_i (X ♯_t A_i)`, iterated
/// from the arithmetic mean until successive iterates are within
/// `cfg.fixed_point_tol` in the Thompson metric (the map contracts with rate
/// `1 − t`). For `t ∈ [−1, 0)`, `P_t(ω; 𝔸) = P_{−t}(ω; 𝔸⁻¹)⁻¹`.
pub fn power_mean(
    t: f64,
    w: &WeightVector,
    tuple: &SpdTuple,
    cfg: &NumericConfig,
) -> Result<MeanResult> {
    if !(t != 0.0 && t.abs() <= 1.0) {
        return Err(Error::InvalidT(t));
    }
    check_weights(w, tuple)?;
    if t < 0.0 {
        let dual = power_mean_positive(-t, w, &tuple.inverted()?, cfg)?;
        return Ok(MeanResult {
            value: dual.value.inverse()?,
            ..dual
        });
    }
    power_mean_positive(t, w, tuple, cfg)
}

fn power_mean_positive(
    t: f64,
    w: &WeightVector,
    tuple: &SpdTuple,
    cfg: &NumericConfig,
) -> Result<MeanResult> {
    let mut x = arithmetic_mean(w, tuple)?;
    let mut residual = f64::INFINITY;
    for iter in 1..=cfg.max_iters {
        let next = power_map(t, w, tuple, &x)?;
        let previous = residual;
        residual = thompson::distance(&next, &x)?;
        x = next;
        if residual <= cfg.fixed_point_tol || stalled(residual, previous, cfg) {
            return Ok(MeanResult {
                value: x,
                iterations: iter,
                residual,
            });
        }
    }
    Err(Error::NoConvergence {
        method: "power mean fixed point",
        iterations: cfg.max_iters,
        residual,
    })
}

/// One application of `X ↦ Σ w_i (X ♯_t A_i)`.
pub fn power_map(t: f64, w: &WeightVector, tuple: &SpdTuple, x: &SpdMatrix) -> Result<SpdMatrix> {
    check_weights(w, tuple)?;
    let l = x.cholesky();
    let mut acc = Matrix::zeros(x.dim(), x.dim());
    for (wi, a) in w.as_slice().iter().zip(tuple) {
        let term = if t == 1.0 {
            a.as_sym().clone()
        } else {
            geo_mean_chol(l, a, t)?
        };
        acc.axpy(*wi, term.as_matrix());
    }
    SpdMatrix::from_computed(acc)
}

/// `Σ w_i log(X^{-1/2} A_i X^{-1/2})`, computed in the Cholesky frame of `X`
/// (an orthogonal congruence of the symmetric-root form, so the norm agrees).
fn karcher_gradient(x: &SpdMatrix, w: &WeightVector, tuple: &SpdTuple) -> Result<SymMatrix> {
    let l = x.cholesky();
    let mut acc = Matrix::zeros(x.dim(), x.dim());
    for (wi, a) in w.as_slice().iter().zip(tuple) {
        let c = SymMatrix::from_computed(congruence_inv(l, a.as_matrix()));
        let log_c = c.map_spectrum(f64::ln, &NumericConfig::default())?;
        acc.axpy(*wi, log_c.as_matrix());
    }
    Ok(SymMatrix::from_computed(acc))
}

/// Frobenius norm of `Σ w_i log(X^{-1/2} A_i X^{-1/2})`; zero exactly at the
/// Karcher mean.
pub fn karcher_residual(x: &SpdMatrix, w: &WeightVector, tuple: &SpdTuple) -> Result<f64> {
    check_weights(w, tuple)?;
    if x.dim() != tuple.dim() {
        return Err(Error::dims(tuple.dim(), x.dim()));
    }
    Ok(karcher_gradient(x, w, tuple)?.frobenius_norm())
}

/// Weighted Karcher mean `Λ(ω; 𝔸)`.
///
/// Fixed-point iteration `X ← X^{1/2} exp(θ S(X)) X^{1/2}` with
/// `S(X) = Σ w_i log(X^{-1/2} A_i X^{-1/2})`, started at the arithmetic mean
/// with `θ = 1`. A step that increases the residual is retried with half the
/// step; accepted steps double `θ` back towards 1.
pub fn karcher_mean(w: &WeightVector, tuple: &SpdTuple, cfg: &NumericConfig) -> Result<MeanResult> {
    const MIN_STEP: f64 = 1.0 / (1u64 << 40) as f64;

    check_weights(w, tuple)?;
    let mut x = arithmetic_mean(w, tuple)?;
    let mut grad = karcher_gradient(&x, w, tuple)?;
    let mut residual = grad.frobenius_norm();
    let mut theta = 1.0;
    let mut iterations = 0;
    while residual > cfg.fixed_point_tol {
        if iterations == cfg.max_iters || theta < MIN_STEP {
            return Err(Error::NoConvergence {
                method: "Karcher mean iteration",
                iterations,
                residual,
            });
        }
        iterations += 1;
        let step = grad.scale(theta).exp(&NumericConfig::default())?;
        let candidate = SpdMatrix::from_computed(congruence(x.cholesky(), step.as_matrix()))?;
        let cand_grad = karcher_gradient(&candidate, w, tuple)?;
        let cand_residual = cand_grad.frobenius_norm();
        if cand_residual <= residual {
            x = candidate;
            grad = cand_grad;
            residual = cand_residual;
            theta = (2.0 * theta).min(1.0);
        } else {
            theta *= 0.5;
        }
    }
    Ok(MeanResult {
        value: x,
        iterations,
        residual,
    })
}

/// Ando-Li-Mathias geometric mean `G(A₁, …, Aₙ)`.
///
/// `n = 1` returns `A₁`, `n = 2` returns `A₁ ♯ A₂`. For `n ≥ 3` every round
/// replaces each entry by the `(n−1)`-mean of the others, recursively, until the
/// largest pairwise Thompson distance of the tuple is at most
/// `cfg.fixed_point_tol`.
pub fn alm_mean(tuple: &SpdTuple, cfg: &NumericConfig) -> Result<MeanResult> {
    alm(tuple.as_slice(), cfg, None)
}

/// [`alm_mean`] that also returns the largest pairwise ratio `R` of the tuple
/// at the start of every round (round 0 is the input).
pub fn alm_mean_traced(tuple: &SpdTuple, cfg: &NumericConfig) -> Result<(MeanResult, Vec<f64>)> {
    let mut trace = Vec::new();
    let result = alm(tuple.as_slice(), cfg, Some(&mut trace))?;
    Ok((result, trace))
}

fn alm(
    ms: &[SpdMatrix],
    cfg: &NumericConfig,
    mut trace: Option<&mut Vec<f64>>,
) -> Result<MeanResult> {
    match ms.len() {
        0 => Err(Error::InvalidInput("ALM mean of an empty tuple".into())),
        1 => Ok(MeanResult::exact(ms[0].clone())),
        2 => {
            let g = geo_mean(&ms[0], &ms[1], 0.5)?;
            Ok(MeanResult {
                value: g,
                iterations: 1,
                residual: 0.0,
            })
        }
        n => {
            let mut cur = ms.to_vec();
            let mut previous = f64::INFINITY;
            for round in 0..=cfg.max_iters {
                if let Some(t) = trace.as_deref_mut() {
                    t.push(thompson::max_pairwise_ratio(&cur)?);
                }
                // eigen-free bound on the spread; exact value only on exit
                let bound = thompson::max_pairwise_distance_bound(&cur)?;
                if bound <= cfg.fixed_point_tol || stalled(bound, previous, cfg) {
                    let residual = thompson::max_pairwise_ratio(&cur)?.ln();
                    return Ok(MeanResult {
                        value: cur.swap_remove(0),
                        iterations: round,
                        residual,
                    });
                }
                if round == cfg.max_iters {
                    return Err(Error::NoConvergence {
                        method: "ALM recursion",
                        iterations: round,
                        residual: bound,
                    });
                }
                let mut next = Vec::with_capacity(n);
                let mut rest = Vec::with_capacity(n - 1);
                for i in 0..n {
                    rest.clear();
                    rest.extend(
                        cur.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != i)
                            .map(|(_, m)| m.clone()),
                    );
                    next.push(alm(&rest, cfg, None)?.value);
                }
                cur = next;
                previous = bound;
            }
            unreachable!("loop returns on its last round")
        }
    }
}
