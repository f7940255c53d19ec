//! A small seeded inequality suite with its CSV summary.

use spd_means::verify::{run_suite, TheoremId, TrialSpec};
use spd_means::NumericConfig;

pub fn run_example() -> spd_means::Result<()> {
    let spec = TrialSpec {
        dim: 3,
        count: 10,
        master_seed: 2024,
        theorems: vec![
            TheoremId::WeightedGeo,
            TheoremId::GeoHalf,
            TheoremId::Schwarz,
            TheoremId::PowerMean,
            TheoremId::Order,
            TheoremId::Contraction,
        ],
        ..TrialSpec::default()
    };
    let report = run_suite(&spec, &NumericConfig::default())?;
    print!("{}", report.summary_csv());
    println!(
        "{} records, all pass: {}",
        report.reports.len(),
        report.all_pass()
    );
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
