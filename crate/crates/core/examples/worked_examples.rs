//! The two 2×2 examples comparing `K(R(A,B)², ν)` with `K(M₁M₂/(m₁m₂), ν)`:
//! neither choice of ratio dominates the other.

use spd_means::verify::run_examples;

pub fn run_example() -> spd_means::Result<()> {
    let checks = run_examples()?;
    for c in &checks {
        println!(
            "{} {:<10} {:<26} {:.10} {} {:.10}",
            if c.pass { "ok  " } else { "FAIL" },
            c.example,
            c.claim,
            c.lhs,
            c.relation,
            c.rhs
        );
    }
    assert!(checks.iter().all(|c| c.pass));
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
