//! The Ando-Li-Mathias mean: every round replaces each matrix by the mean of
//! the others, and the tuple shrinks geometrically.

use spd_means::means::{alm_mean_traced, SpdTuple};
use spd_means::verify::gen_spd;
use spd_means::NumericConfig;

pub fn run_example() -> spd_means::Result<()> {
    let cfg = NumericConfig::default();
    for n in [3usize, 4] {
        let tuple = SpdTuple::new((0..n as u64).map(|i| gen_spd(3, 10.0, 7 * i + 1)).collect())?;
        let (mean, trace) = alm_mean_traced(&tuple, &cfg)?;
        println!(
            "n = {n}: {} rounds, final spread {:e}",
            mean.iterations, mean.residual
        );
        for (round, r) in trace.iter().enumerate().take(5) {
            println!("  round {round}: max pairwise log R = {:.3e}", r.ln());
        }
        // the mean is symmetric in its arguments
        let mut rev = tuple.clone().into_vec();
        rev.reverse();
        let (again, _) = alm_mean_traced(&SpdTuple::new(rev)?, &cfg)?;
        println!(
            "  permutation gap {:e}",
            mean.value.as_sym().max_abs_diff(again.value.as_sym())
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
