//! Weighted geometric means of two SPD matrices and the Thompson metric.
//!
//! `A ♯_ν B` runs along the geodesic from `A` (ν = 0) to `B` (ν = 1); each
//! point sits at Thompson distance `ν·d(A, B)` from `A`.

use spd_means::means::geo_mean;
use spd_means::{thompson, SpdMatrix};

pub fn run_example() -> spd_means::Result<()> {
    let a = SpdMatrix::from_rows(&[[4.0, 1.0, 0.0], [1.0, 3.0, 0.5], [0.0, 0.5, 2.0]])?;
    let b = SpdMatrix::from_rows(&[[1.0, 0.2, 0.1], [0.2, 2.0, 0.0], [0.1, 0.0, 5.0]])?;
    let d = thompson::distance(&a, &b)?;
    println!("d(A, B) = {d:.6}");
    for nu in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let g = geo_mean(&a, &b, nu)?;
        let from_a = thompson::distance(&a, &g)?;
        println!(
            "nu = {nu:4}: d(A, A#B) = {from_a:.6} (nu*d = {:.6})",
            nu * d
        );
        assert!((from_a - nu * d).abs() < 1e-9);
    }
    // symmetric in the arguments at nu = 1/2
    let g1 = geo_mean(&a, &b, 0.5)?;
    let g2 = geo_mean(&b, &a, 0.5)?;
    println!("‖A#B − B#A‖ = {:e}", g1.as_sym().max_abs_diff(g2.as_sym()));
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
