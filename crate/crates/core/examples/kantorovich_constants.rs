//! The generalized Kantorovich constant `K(h, ν)`.

use spd_means::kantorovich::kantorovich;

pub fn run_example() -> spd_means::Result<()> {
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "h", "nu=0.1", "nu=0.5", "nu=0.9", "nu=2"
    );
    for h in [1.0, 2.0, 4.0, 10.0, 48.0, 100.0] {
        let row: Vec<String> = [0.1, 0.5, 0.9, 2.0]
            .iter()
            .map(|&nu| kantorovich(h, nu).map(|k| format!("{k:10.6}")))
            .collect::<Result<_, _>>()?;
        println!("{h:>6} {}", row.join(" "));
    }
    // symmetric under ν ↦ 1 − ν, equal to 1 at h = 1
    assert!((kantorovich(7.0, 0.3)? - kantorovich(7.0, 0.7)?).abs() < 1e-12);
    assert_eq!(kantorovich(1.0, 0.3)?, 1.0);
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
