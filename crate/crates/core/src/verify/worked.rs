//! The two hand-computed 2×2 examples comparing `K(R², ·)` with `K(h, ·)`,
//! `h = M₁M₂/(m₁m₂)`.

use serde::Serialize;

use crate::kantorovich::kantorovich;
use crate::symmat::Matrix;
use crate::{thompson, Result, SpdMatrix};

const EXACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Geq,
    #[serde(rename = "<=")]
    Leq,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Geq => ">=",
            Relation::Leq => "<=",
        })
    }
}

/// One stated fact of a worked example, recomputed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExampleCheck {
    pub example: &'static str,
    pub claim: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl ExampleCheck {
    fn new(
        example: &'static str,
        claim: impl Into<String>,
        lhs: f64,
        rel: Relation,
        rhs: f64,
    ) -> Self {
        let pass = match rel {
            Relation::Eq => (lhs - rhs).abs() <= EXACT_TOL * 1f64.max(rhs.abs()),
            Relation::Geq => lhs >= rhs,
            Relation::Leq => lhs <= rhs,
        };
        Self {
            example,
            claim: claim.into(),
            lhs,
            rhs,
            relation: rel,
            pass,
        }
    }
}

/// `M₁M₂/(m₁m₂)` from the spectra.
fn spectral_h(a: &SpdMatrix, b: &SpdMatrix) -> f64 {
    a.lambda_max() * b.lambda_max() / (a.lambda_min() * b.lambda_min())
}

fn product_deviation(x: &SpdMatrix, y: &SpdMatrix, expected: &[[f64; 2]; 2]) -> Result<f64> {
    let p = x.inverse()?.as_matrix().matmul(y.as_matrix())?;
    let e = Matrix::from_rows(expected)?;
    Ok(p.sub(&e)?.max_abs())
}

fn example(
    name: &'static str,
    (a_name, a): (&str, &SpdMatrix),
    (b_name, b): (&str, &SpdMatrix),
    products: [[[f64; 2]; 2]; 2],
    r2_expected: f64,
    h_expected: f64,
    [order, half, two]: [Relation; 3],
) -> Result<Vec<ExampleCheck>> {
    use Relation::Eq;
    let r = thompson::ratio(a, b)?;
    let r2 = r * r;
    let h = spectral_h(a, b);
    Ok(vec![
        ExampleCheck::new(
            name,
            format!("{a_name}⁻¹{b_name} entries"),
            product_deviation(a, b, &products[0])?,
            Eq,
            0.0,
        ),
        ExampleCheck::new(
            name,
            format!("{b_name}⁻¹{a_name} entries"),
            product_deviation(b, a, &products[1])?,
            Eq,
            0.0,
        ),
        ExampleCheck::new(name, "R²", r2, Eq, r2_expected),
        ExampleCheck::new(name, "h = M₁M₂/(m₁m₂)", h, Eq, h_expected),
        ExampleCheck::new(name, "R² vs h", r2, order, h),
        ExampleCheck::new(
            name,
            "K(R², 1/2) vs K(h, 1/2)",
            kantorovich(r2, 0.5)?,
            half,
            kantorovich(h, 0.5)?,
        ),
        ExampleCheck::new(
            name,
            "K(R², 2) vs K(h, 2)",
            kantorovich(r2, 2.0)?,
            two,
            kantorovich(h, 2.0)?,
        ),
    ])
}

/// Recomputes every stated quantity and comparison of both examples.
pub fn run_examples() -> Result<Vec<ExampleCheck>> {
    let a = SpdMatrix::from_diag(&[2.0, 1.0 / 3.0])?;
    let b = SpdMatrix::from_diag(&[4.0, 0.5])?;
    let mut out = example(
        "example 1",
        ("A", &a),
        ("B", &b),
        [[[2.0, 0.0], [0.0, 1.5]], [[0.5, 0.0], [0.0, 2.0 / 3.0]]],
        4.0,
        48.0,
        [Relation::Leq, Relation::Geq, Relation::Leq],
    )?;

    let c = SpdMatrix::from_rows(&[[2.0, 1.0], [1.0, 1.0]])?;
    let d = SpdMatrix::from_diag(&[1.0, 2.0])?;
    let s5 = 5f64.sqrt();
    out.extend(example(
        "example 2",
        ("C", &c),
        ("D", &d),
        [[[1.0, -2.0], [-1.0, 4.0]], [[2.0, 1.0], [0.5, 0.5]]],
        ((5.0 + 17f64.sqrt()) / 2.0).powi(2),
        (3.0 + s5).powi(2) / 2.0,
        [Relation::Geq, Relation::Leq, Relation::Geq],
    )?);
    Ok(out)
}
