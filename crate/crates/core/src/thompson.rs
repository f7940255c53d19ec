//! Relative spectral bounds and the Thompson metric on the SPD cone.
//!
//! Every spectral radius `r(B⁻¹A)` is read off the symmetric congruence
//! `L⁻¹·A·L⁻ᵀ` with `B = L·Lᵀ`, which has the same spectrum as `B^{-1/2}AB^{-1/2}`;
//! the non-symmetric product `B⁻¹A` is never formed.

use crate::symmat::{congruence_inv, EigenDecomp};
use crate::{Error, NumericConfig, Result, SpdMatrix};

/// Distances at or below this value identify two matrices.
pub const EQUALITY_TOL: f64 = 1e-10;

fn relative_spectrum(a: &SpdMatrix, b: &SpdMatrix) -> Result<EigenDecomp> {
    if a.dim() != b.dim() {
        return Err(Error::dims(b.dim(), a.dim()));
    }
    let c = congruence_inv(b.cholesky(), a.as_matrix());
    crate::SymMatrix::from_computed(c).eig(&NumericConfig::default())
}

/// `r(B⁻¹A) = inf{λ > 0 : A ⪯ λB} = λ_max(B^{-1/2} A B^{-1/2})`.
pub fn rel_sup(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    Ok(relative_spectrum(a, b)?.max())
}

/// `R(A, B) = max{r(A⁻¹B), r(B⁻¹A)}`, never below 1.
pub fn ratio(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    let e = relative_spectrum(a, b)?;
    // r(A⁻¹B) = 1 / λ_min(B^{-1/2} A B^{-1/2})
    Ok(e.max().max(1.0 / e.min()).max(1.0))
}

/// Thompson distance `d(A, B) = log R(A, B)`.
pub fn distance(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    Ok(ratio(a, b)?.ln())
}

/// `A = B` in the sense of the Thompson metric.
pub fn same_point(a: &SpdMatrix, b: &SpdMatrix) -> Result<bool> {
    Ok(distance(a, b)? <= EQUALITY_TOL)
}

/// Largest pairwise `R(A_i, A_j)` over a list of matrices (1 for fewer than two).
pub fn max_pairwise_ratio(ms: &[SpdMatrix]) -> Result<f64> {
    let mut worst: f64 = 1.0;
    for i in 0..ms.len() {
        for j in (i + 1)..ms.len() {
            worst = worst.max(ratio(&ms[i], &ms[j])?);
        }
    }
    Ok(worst)
}

/// Upper bound on `d(A, B)` that needs no eigensolve.
///
/// With `ε = ‖L⁻¹AL⁻ᵀ − I‖_F` the relative spectrum lies in `[1−ε, 1+ε]`, so
/// `d(A, B) ≤ −ln(1−ε)`. Infinite when `ε ≥ 1`.
pub fn distance_upper_bound(a: &SpdMatrix, b: &SpdMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::dims(b.dim(), a.dim()));
    }
    let mut c = congruence_inv(b.cholesky(), a.as_matrix());
    for i in 0..c.rows() {
        c[(i, i)] -= 1.0;
    }
    let eps = c.frobenius_norm();
    Ok(if eps < 1.0 {
        -(-eps).ln_1p()
    } else {
        f64::INFINITY
    })
}

/// Largest pairwise [`distance_upper_bound`].
pub fn max_pairwise_distance_bound(ms: &[SpdMatrix]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..ms.len() {
        for j in (i + 1)..ms.len() {
            worst = worst.max(distance_upper_bound(&ms[i], &ms[j])?);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> (SpdMatrix, SpdMatrix) {
        (
            SpdMatrix::from_diag(&[2.0, 1.0 / 3.0]).unwrap(),
            SpdMatrix::from_diag(&[4.0, 0.5]).unwrap(),
        )
    }

    fn ex2() -> (SpdMatrix, SpdMatrix) {
        (
            SpdMatrix::from_rows(&[[2.0, 1.0], [1.0, 1.0]]).unwrap(),
            SpdMatrix::from_diag(&[1.0, 2.0]).unwrap(),
        )
    }

    #[test]
    fn identical_inputs() {
        let (a, _) = ex2();
        assert!((rel_sup(&a, &a).unwrap() - 1.0).abs() < 1e-14);
        assert!((ratio(&a, &a).unwrap() - 1.0).abs() < 1e-14);
        assert!(distance(&a, &a).unwrap().abs() < 1e-14);
        assert!(same_point(&a, &a).unwrap());
    }

    #[test]
    fn diagonal_pair() {
        let (a, b) = ex1();
        assert!((rel_sup(&b, &a).unwrap() - 2.0).abs() < 1e-14);
        assert!((rel_sup(&a, &b).unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((ratio(&a, &b).unwrap().powi(2) - 4.0).abs() < 1e-13);
        assert!((distance(&a, &b).unwrap() - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn non_commuting_pair() {
        let (c, d) = ex2();
        // C⁻¹D has trace 5 and determinant 2
        let expected = (5.0 + 17f64.sqrt()) / 2.0;
        assert!((rel_sup(&d, &c).unwrap() - expected).abs() < 1e-13);
        assert!((ratio(&c, &d).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn scalar_multiple() {
        let (c, _) = ex2();
        let c2 = c.scale(2.0).unwrap();
        assert!((distance(&c, &c2).unwrap() - 2f64.ln()).abs() < 1e-14);
        assert!(!same_point(&c, &c2).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let a = SpdMatrix::identity(2);
        let b = SpdMatrix::identity(3);
        assert!(matches!(ratio(&a, &b), Err(Error::DimMismatch { .. })));
    }

    #[test]
    fn upper_bound_dominates_distance() {
        let a = SpdMatrix::from_rows(&[[2.0, 0.3], [0.3, 1.0]]).unwrap();
        for c in [1.0, 1.001, 1.1, 1.5] {
            let b = SpdMatrix::from_rows(&[[2.0 * c, 0.3], [0.3, 1.0 / c]]).unwrap();
            let d = distance(&a, &b).unwrap();
            let ub = distance_upper_bound(&a, &b).unwrap();
            assert!(ub >= d - 1e-15, "{ub} < {d}");
        }
        assert_eq!(
            distance_upper_bound(&a, &a.scale(0.2).unwrap()).unwrap(),
            f64::INFINITY
        );
    }
}
