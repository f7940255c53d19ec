//! Unital positive linear maps.
//!
//! The catalog is closed: compressions `X ↦ VᵀXV`, pinchings onto a block
//! pattern, vector states `X ↦ ⟨Xx, x⟩`, mixtures of orthogonal conjugations
//! and Schur multiplication by a correlation matrix. Each variant is
//! validated structurally and then checked for unitality (`Φ(I) = I`) when a
//! [`PositiveMap`] is built.
//!
//! Map description files are TOML documents tagged by `kind`:
//!
//! ```toml
//! kind = "compression"
//! isometry = [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]]
//! ```
//!
//! Other kinds: `pinching` (`dim`, `blocks`), `vector_state` (`vector`),
//! `unitary_mixture` (`unitaries`, `weights`), `hadamard_correlation`
//! (`correlation`).

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::means::SpdTuple;
use crate::symmat::Matrix;
use crate::{Error, NumericConfig, Result, SpdMatrix, SymMatrix};

const UNITAL_TOL: f64 = 1e-12;
const STRUCTURE_TOL: f64 = 1e-10;

/// Catalog variant tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Compression,
    Pinching,
    VectorState,
    UnitaryMixture,
    HadamardCorrelation,
}

impl MapKind {
    pub const ALL: [MapKind; 5] = [
        MapKind::Compression,
        MapKind::Pinching,
        MapKind::VectorState,
        MapKind::UnitaryMixture,
        MapKind::HadamardCorrelation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Compression => "compression",
            MapKind::Pinching => "pinching",
            MapKind::VectorState => "vector_state",
            MapKind::UnitaryMixture => "unitary_mixture",
            MapKind::HadamardCorrelation => "hadamard_correlation",
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for MapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown map kind `{s}`")))
    }
}

/// Description of a map in the catalog. Matrices are stored row by row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapSpec {
    /// `X ↦ VᵀXV` for an `in × out` isometry `V`.
    Compression { isometry: Vec<Vec<f64>> },
    /// Keeps the blocks `X[b, b]` of a partition of `0..dim`, zeroes the rest.
    Pinching { dim: usize, blocks: Vec<Vec<usize>> },
    /// `X ↦ [xᵀXx]` for a unit vector `x`.
    VectorState { vector: Vec<f64> },
    /// `X ↦ Σ c_i U_iᵀ X U_i` for orthogonal `U_i` and convex weights `c_i`.
    UnitaryMixture {
        unitaries: Vec<Vec<Vec<f64>>>,
        weights: Vec<f64>,
    },
    /// `X ↦ X ∘ C` for a positive semidefinite `C` with unit diagonal.
    HadamardCorrelation { correlation: Vec<Vec<f64>> },
}

impl MapSpec {
    pub fn kind(&self) -> MapKind {
        match self {
            MapSpec::Compression { .. } => MapKind::Compression,
            MapSpec::Pinching { .. } => MapKind::Pinching,
            MapSpec::VectorState { .. } => MapKind::VectorState,
            MapSpec::UnitaryMixture { .. } => MapKind::UnitaryMixture,
            MapSpec::HadamardCorrelation { .. } => MapKind::HadamardCorrelation,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("map description: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("map descriptions serialize")
    }
}

#[derive(Debug, Clone)]
enum Compiled {
    Compression(Matrix),
    Pinching(Vec<usize>),
    VectorState(Vec<f64>),
    UnitaryMixture(Vec<(f64, Matrix)>),
    Hadamard(Matrix),
}

/// A validated unital positive linear map.
#[derive(Debug, Clone)]
pub struct PositiveMap {
    spec: MapSpec,
    compiled: Compiled,
    in_dim: usize,
    out_dim: usize,
}

impl PositiveMap {
    pub fn new(spec: MapSpec) -> Result<Self> {
        let (compiled, in_dim, out_dim) = compile(&spec)?;
        let map = Self {
            spec,
            compiled,
            in_dim,
            out_dim,
        };
        let image = map.apply(&SymMatrix::identity(in_dim))?;
        let err = image.max_abs_diff(&SymMatrix::identity(out_dim));
        if err > UNITAL_TOL {
            return Err(Error::InvalidMap(format!(
                "map is not unital: ‖Φ(I) − I‖_max = {err:e}"
            )));
        }
        Ok(map)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::new(MapSpec::from_toml(&text)?)
    }

    /// The identity map on `dim × dim` matrices (a pinching with one block).
    pub fn identity(dim: usize) -> Self {
        Self::new(MapSpec::Pinching {
            dim,
            blocks: vec![(0..dim).collect()],
        })
        .expect("identity map is valid")
    }

    pub fn spec(&self) -> &MapSpec {
        &self.spec
    }

    pub fn kind(&self) -> MapKind {
        self.spec.kind()
    }

    pub fn input_dim(&self) -> usize {
        self.in_dim
    }

    pub fn output_dim(&self) -> usize {
        self.out_dim
    }

    pub fn apply(&self, x: &SymMatrix) -> Result<SymMatrix> {
        if x.dim() != self.in_dim {
            return Err(Error::dims(self.in_dim, x.dim()));
        }
        let m = x.as_matrix();
        let out = match &self.compiled {
            Compiled::Compression(v) => v.tr_matmul(&m.matmul(v)?)?,
            Compiled::Pinching(block_of) => {
                let mut out = Matrix::zeros(self.in_dim, self.in_dim);
                for i in 0..self.in_dim {
                    for j in 0..self.in_dim {
                        if block_of[i] == block_of[j] {
                            out[(i, j)] = m[(i, j)];
                        }
                    }
                }
                out
            }
            Compiled::VectorState(v) => {
                let mv = m.mat_vec(v)?;
                let val: f64 = mv.iter().zip(v).map(|(a, b)| a * b).sum();
                Matrix::from_diag(&[val])
            }
            Compiled::UnitaryMixture(terms) => {
                let mut acc = Matrix::zeros(self.in_dim, self.in_dim);
                for (c, u) in terms {
                    let conj = u.tr_matmul(&m.matmul(u)?)?;
                    acc.axpy(*c, &conj);
                }
                acc
            }
            Compiled::Hadamard(c) => m.hadamard(c)?,
        };
        Ok(SymMatrix::from_computed(out))
    }

    /// `Φ(A)` for SPD `A`; fails with [`Error::NotDefinite`] when the image is
    /// numerically singular.
    pub fn apply_spd(&self, a: &SpdMatrix) -> Result<SpdMatrix> {
        let image = self.apply(a.as_sym())?;
        SpdMatrix::new(image, &NumericConfig::default())
    }

    /// `Φ(𝔸) = (Φ(A₁), …, Φ(Aₙ))`.
    pub fn apply_tuple(&self, t: &SpdTuple) -> Result<SpdTuple> {
        SpdTuple::new(t.iter().map(|a| self.apply_spd(a)).collect::<Result<_>>()?)
    }
}

fn to_matrix(rows: &[Vec<f64>], what: &str) -> Result<Matrix> {
    let m = Matrix::from_rows(rows).map_err(|e| Error::InvalidMap(format!("{what}: {e}")))?;
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::InvalidMap(format!("{what} is empty")));
    }
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidMap(format!("{what} has non-finite entries")));
    }
    Ok(m)
}

fn check_orthonormal_columns(v: &Matrix, what: &str) -> Result<()> {
    let gram = v.tr_matmul(v)?;
    let err = gram.sub(&Matrix::identity(v.cols()))?.max_abs();
    if err > STRUCTURE_TOL {
        return Err(Error::InvalidMap(format!(
            "{what} columns are not orthonormal (error {err:e})"
        )));
    }
    Ok(())
}

fn compile(spec: &MapSpec) -> Result<(Compiled, usize, usize)> {
    match spec {
        MapSpec::Compression { isometry } => {
            let v = to_matrix(isometry, "isometry")?;
            if v.cols() > v.rows() {
                return Err(Error::InvalidMap(format!(
                    "isometry must be tall, got {}x{}",
                    v.rows(),
                    v.cols()
                )));
            }
            check_orthonormal_columns(&v, "isometry")?;
            let (i, o) = (v.rows(), v.cols());
            Ok((Compiled::Compression(v), i, o))
        }
        MapSpec::Pinching { dim, blocks } => {
            if *dim == 0 {
                return Err(Error::InvalidMap("pinching dimension must be >= 1".into()));
            }
            let mut block_of = vec![usize::MAX; *dim];
            for (b, block) in blocks.iter().enumerate() {
                if block.is_empty() {
                    return Err(Error::InvalidMap("pinching has an empty block".into()));
                }
                for &i in block {
                    if i >= *dim {
                        return Err(Error::InvalidMap(format!(
                            "pinching index {i} out of range for dimension {dim}"
                        )));
                    }
                    if block_of[i] != usize::MAX {
                        return Err(Error::InvalidMap(format!(
                            "pinching index {i} appears twice"
                        )));
                    }
                    block_of[i] = b;
                }
            }
            if let Some(i) = block_of.iter().position(|b| *b == usize::MAX) {
                return Err(Error::InvalidMap(format!("pinching misses index {i}")));
            }
            Ok((Compiled::Pinching(block_of), *dim, *dim))
        }
        MapSpec::VectorState { vector } => {
            if vector.is_empty() || vector.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidMap(
                    "state vector must be finite and non-empty".into(),
                ));
            }
            let norm2: f64 = vector.iter().map(|v| v * v).sum();
            if (norm2 - 1.0).abs() > STRUCTURE_TOL {
                return Err(Error::InvalidMap(format!(
                    "state vector must have unit length, ‖x‖² = {norm2}"
                )));
            }
            Ok((Compiled::VectorState(vector.clone()), vector.len(), 1))
        }
        MapSpec::UnitaryMixture { unitaries, weights } => {
            if unitaries.is_empty() || unitaries.len() != weights.len() {
                return Err(Error::InvalidMap(
                    "unitary mixture needs one weight per orthogonal matrix".into(),
                ));
            }
            if weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
                return Err(Error::InvalidMap("mixture weights must be positive".into()));
            }
            let sum: f64 = weights.iter().sum();
            if (sum - 1.0).abs() > STRUCTURE_TOL {
                return Err(Error::InvalidMap(format!("mixture weights sum to {sum}")));
            }
            let mut terms = Vec::with_capacity(unitaries.len());
            let mut dim = None;
            for (u, w) in unitaries.iter().zip(weights) {
                let u = to_matrix(u, "orthogonal matrix")?;
                if !u.is_square() || dim.is_some_and(|d| d != u.rows()) {
                    return Err(Error::InvalidMap(
                        "mixture matrices must be square of one dimension".into(),
                    ));
                }
                check_orthonormal_columns(&u, "mixture matrix")?;
                dim = Some(u.rows());
                terms.push((*w, u));
            }
            let d = dim.expect("non-empty mixture");
            Ok((Compiled::UnitaryMixture(terms), d, d))
        }
        MapSpec::HadamardCorrelation { correlation } => {
            let c = to_matrix(correlation, "correlation matrix")?;
            let cfg = NumericConfig::default();
            let sym = SymMatrix::new(c.clone(), &cfg)
                .map_err(|e| Error::InvalidMap(format!("correlation matrix: {e}")))?;
            if c.diagonal().iter().any(|d| (d - 1.0).abs() > STRUCTURE_TOL) {
                return Err(Error::InvalidMap(
                    "correlation matrix must have unit diagonal".into(),
                ));
            }
            let lmin = sym.eig(&cfg)?.min();
            if lmin < -STRUCTURE_TOL {
                return Err(Error::InvalidMap(format!(
                    "correlation matrix is not positive semidefinite (λ_min = {lmin:e})"
                )));
            }
            let d = c.rows();
            Ok((Compiled::Hadamard(sym.into_matrix()), d, d))
        }
    }
}
