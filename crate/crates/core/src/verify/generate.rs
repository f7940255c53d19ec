//! Seeded random instances: SPD matrices with a condition-number cap, weights,
//! unit vectors and one random map per catalog variant.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::means::WeightVector;
use crate::posmaps::{MapKind, MapSpec, PositiveMap};
use crate::symmat::Matrix;
use crate::{Result, SpdMatrix};

/// Range `[1/SCALE_SPREAD, SCALE_SPREAD]` of the log-uniform overall scale.
pub const SCALE_SPREAD: f64 = 2.0;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    Matrix::from_vec(rows, cols, data).expect("sized buffer")
}

/// Orthonormalizes the columns of a full-rank matrix (modified Gram-Schmidt,
/// applied twice for stability).
fn orthonormalize(mut m: Matrix) -> Matrix {
    let (rows, cols) = (m.rows(), m.cols());
    for _pass in 0..2 {
        for j in 0..cols {
            for k in 0..j {
                let dot: f64 = (0..rows).map(|i| m[(i, j)] * m[(i, k)]).sum();
                for i in 0..rows {
                    m[(i, j)] -= dot * m[(i, k)];
                }
            }
            let norm = (0..rows).map(|i| m[(i, j)].powi(2)).sum::<f64>().sqrt();
            for i in 0..rows {
                m[(i, j)] /= norm;
            }
        }
    }
    m
}

/// `rows × cols` matrix with orthonormal columns (`cols ≤ rows`).
pub fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    orthonormalize(gaussian_matrix(rng, rows, cols))
}

pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> Matrix {
    random_isometry(rng, n, n)
}

pub fn random_unit_vector(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    random_isometry(rng, n, 1).column(0)
}

/// `Q·diag(λ)·Qᵀ` with `λ` log-uniform in `[1/cond_cap, 1]`, times a log-uniform
/// scale in `[1/2, 2]`.
pub fn random_spd(rng: &mut impl Rng, dim: usize, cond_cap: f64) -> SpdMatrix {
    let q = random_orthogonal(rng, dim);
    let log_cap = cond_cap.max(1.0).ln();
    let scale = (SCALE_SPREAD.ln() * rng.gen_range(-1.0..=1.0f64)).exp();
    let lambdas: Vec<f64> = (0..dim)
        .map(|_| scale * (-log_cap * rng.gen::<f64>()).exp())
        .collect();
    let d = Matrix::from_diag(&lambdas);
    let m = q.matmul(&d).and_then(|qd| qd.matmul(&q.transpose()));
    SpdMatrix::from_computed(m.expect("square factors")).expect("positive spectrum")
}

/// Deterministic SPD matrix for a seed; see [`random_spd`].
pub fn gen_spd(dim: usize, cond_cap: f64, seed: u64) -> SpdMatrix {
    random_spd(&mut rng_from_seed(seed), dim, cond_cap)
}

/// Random probability vector with every entry in `(0, 1)`.
pub fn random_weights(rng: &mut impl Rng, n: usize) -> Result<WeightVector> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
    WeightVector::normalized(&raw)
}

/// A random instance of the given catalog variant on `dim × dim` inputs.
pub fn random_map(rng: &mut impl Rng, kind: MapKind, dim: usize) -> Result<PositiveMap> {
    let spec = match kind {
        MapKind::Compression => {
            let out = rng.gen_range(1..=dim);
            MapSpec::Compression {
                isometry: random_isometry(rng, dim, out).to_rows(),
            }
        }
        MapKind::Pinching => {
            let nblocks = rng.gen_range(1..=dim);
            let mut idx: Vec<usize> = (0..dim).collect();
            idx.shuffle(rng);
            let mut blocks = vec![Vec::new(); nblocks];
            for (pos, i) in idx.into_iter().enumerate() {
                // the first `nblocks` indices seed distinct blocks
                let b = if pos < nblocks {
                    pos
                } else {
                    rng.gen_range(0..nblocks)
                };
                blocks[b].push(i);
            }
            for b in &mut blocks {
                b.sort_unstable();
            }
            MapSpec::Pinching { dim, blocks }
        }
        MapKind::VectorState => MapSpec::VectorState {
            vector: random_unit_vector(rng, dim),
        },
        MapKind::UnitaryMixture => {
            let terms = rng.gen_range(2..=3);
            let raw: Vec<f64> = (0..terms).map(|_| rng.gen_range(0.1..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            MapSpec::UnitaryMixture {
                unitaries: (0..terms)
                    .map(|_| random_orthogonal(rng, dim).to_rows())
                    .collect(),
                weights: raw.iter().map(|w| w / sum).collect(),
            }
        }
        MapKind::HadamardCorrelation => {
            // Gram matrix of unit vectors; rank may be below dim
            let rank = rng.gen_range(1..=dim);
            let g = gaussian_matrix(rng, dim, rank);
            let mut c = g.matmul(&g.transpose())?;
            let d: Vec<f64> = c.diagonal().iter().map(|x| x.sqrt()).collect();
            for i in 0..dim {
                for j in 0..dim {
                    c[(i, j)] /= d[i] * d[j];
                }
                c[(i, i)] = 1.0;
            }
            MapSpec::HadamardCorrelation {
                correlation: c.symmetrized().to_rows(),
            }
        }
    };
    PositiveMap::new(spec)
}
