//! Power means `P_t` squeezing onto the Karcher mean as `t → 0`.

use spd_means::means::{karcher_mean, karcher_residual, power_mean, SpdTuple, WeightVector};
use spd_means::verify::gen_spd;
use spd_means::{thompson, NumericConfig};

pub fn run_example() -> spd_means::Result<()> {
    let cfg = NumericConfig::default();
    let tuple = SpdTuple::new((0..3).map(|i| gen_spd(4, 10.0, 100 + i)).collect())?;
    let w = WeightVector::new(vec![0.5, 0.3, 0.2])?;

    let k = karcher_mean(&w, &tuple, &cfg)?;
    println!(
        "Karcher mean: {} iterations, residual {:e}",
        k.iterations,
        karcher_residual(&k.value, &w, &tuple)?
    );
    for t in [1.0, 0.5, 0.25, 0.125, 0.0625] {
        let p = power_mean(t, &w, &tuple, &cfg)?;
        let q = power_mean(-t, &w, &tuple, &cfg)?;
        println!(
            "t = {t:<7} d(P_t, Λ) = {:.3e}  d(P_-t, Λ) = {:.3e}  ({} iterations)",
            thompson::distance(&p.value, &k.value)?,
            thompson::distance(&q.value, &k.value)?,
            p.iterations
        );
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
