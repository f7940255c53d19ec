//! The catalog of unital positive maps, built from descriptions.

use spd_means::posmaps::{MapSpec, PositiveMap};
use spd_means::{SpdMatrix, SymMatrix};

pub fn run_example() -> spd_means::Result<()> {
    let s = 0.5f64.sqrt();
    let specs = [
        MapSpec::Compression {
            isometry: vec![vec![s, 0.0], vec![s, 0.0], vec![0.0, 1.0]],
        },
        MapSpec::Pinching {
            dim: 3,
            blocks: vec![vec![0, 2], vec![1]],
        },
        MapSpec::VectorState {
            vector: vec![0.6, 0.0, 0.8],
        },
        MapSpec::UnitaryMixture {
            unitaries: vec![
                vec![
                    vec![1.0, 0.0, 0.0],
                    vec![0.0, 1.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                ],
                vec![
                    vec![0.0, 1.0, 0.0],
                    vec![1.0, 0.0, 0.0],
                    vec![0.0, 0.0, 1.0],
                ],
            ],
            weights: vec![0.5, 0.5],
        },
        MapSpec::HadamardCorrelation {
            correlation: vec![
                vec![1.0, 0.5, 0.0],
                vec![0.5, 1.0, 0.5],
                vec![0.0, 0.5, 1.0],
            ],
        },
    ];
    let a = SpdMatrix::from_rows(&[[3.0, 1.0, 0.5], [1.0, 2.0, 0.0], [0.5, 0.0, 1.0]])?;
    for spec in specs {
        println!("--- {}", spec.kind());
        print!("{}", spec.to_toml());
        let phi = PositiveMap::new(spec)?;
        let image = phi.apply_spd(&a)?;
        println!("Φ(A) = {:?}", image.as_matrix());
        let unit = phi.apply(&SymMatrix::identity(3))?;
        assert!(unit.max_abs_diff(&SymMatrix::identity(phi.output_dim())) < 1e-12);
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
