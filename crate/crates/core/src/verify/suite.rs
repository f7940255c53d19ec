//! Seeded trial runner and report aggregation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{check, Grids, Instance};
use super::generate::{
    mix64, random_map, random_spd, random_unit_vector, random_weights, rng_from_seed,
};
use super::{ConvexFn, InequalityReport, ReportParams, TheoremId};
use crate::posmaps::MapKind;
use crate::{Error, NumericConfig, Result};

/// Everything that determines a suite run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrialSpec {
    pub dim: usize,
    pub count: usize,
    pub master_seed: u64,
    /// Largest condition number of generated matrices.
    pub cond_cap: f64,
    pub nu_grid: Vec<f64>,
    pub t_grid: Vec<f64>,
    pub map_kinds: Vec<MapKind>,
    pub theorems: Vec<TheoremId>,
    /// Tuple lengths for the geometric-mean checks.
    pub alm_sizes: Vec<usize>,
    /// Tuple length for the power and Karcher mean checks.
    pub tuple_size: usize,
    pub convex_fns: Vec<ConvexFn>,
}

impl Default for TrialSpec {
    fn default() -> Self {
        Self {
            dim: 3,
            count: 100,
            master_seed: 0,
            cond_cap: 10.0,
            nu_grid: vec![0.1, 0.25, 0.5, 0.75, 0.9],
            t_grid: vec![0.25, 0.5, 1.0],
            map_kinds: MapKind::ALL.to_vec(),
            theorems: TheoremId::ALL.to_vec(),
            alm_sizes: vec![3, 4],
            tuple_size: 3,
            convex_fns: ConvexFn::DEFAULTS.to_vec(),
        }
    }
}

impl TrialSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: TrialSpec = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if !(2..=16).contains(&self.dim) {
            return bad(format!("dim must be in [2, 16], got {}", self.dim));
        }
        if !(self.cond_cap > 1.0 && self.cond_cap.is_finite()) {
            return bad(format!(
                "cond_cap must be a finite number > 1, got {}",
                self.cond_cap
            ));
        }
        if let Some(nu) = self.nu_grid.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
            return bad(format!("nu grid value {nu} outside (0, 1]"));
        }
        if let Some(t) = self.t_grid.iter().find(|v| !(**v > 0.0 && **v <= 1.0)) {
            return bad(format!("t grid value {t} outside (0, 1]"));
        }
        if let Some(n) = self.alm_sizes.iter().find(|n| **n < 2) {
            return bad(format!("alm size {n} is below 2"));
        }
        if self.tuple_size < 2 {
            return bad(format!("tuple_size must be >= 2, got {}", self.tuple_size));
        }
        Ok(())
    }

    fn grids(&self) -> Grids {
        Grids {
            nu: self.nu_grid.clone(),
            t: self.t_grid.clone(),
            alm_sizes: self.alm_sizes.clone(),
            convex_fns: self.convex_fns.clone(),
        }
    }

    fn matrices_needed(&self) -> usize {
        self.alm_sizes
            .iter()
            .copied()
            .chain([self.tuple_size, 2])
            .max()
            .unwrap_or(2)
    }

    /// The random instance of one trial.
    pub fn instance(&self, seed: u64) -> Result<Instance> {
        let mut rng = rng_from_seed(seed);
        let n = self.matrices_needed();
        let matrices = (0..n)
            .map(|_| random_spd(&mut rng, self.dim, self.cond_cap))
            .collect();
        let partners = (0..n)
            .map(|_| random_spd(&mut rng, self.dim, self.cond_cap))
            .collect();
        let weights = random_weights(&mut rng, self.tuple_size)?;
        let maps = self
            .map_kinds
            .iter()
            .map(|k| random_map(&mut rng, *k, self.dim))
            .collect::<Result<_>>()?;
        let probe = random_unit_vector(&mut rng, self.dim);
        Ok(Instance {
            matrices,
            partners,
            weights,
            maps,
            probe,
        })
    }
}

/// Seed of trial `index` of `theorem`.
pub fn trial_seed(master: u64, theorem: TheoremId, index: u64) -> u64 {
    mix64(mix64(mix64(master) ^ theorem.code()) ^ index)
}

/// Reports of a suite run, in (theorem, trial, grid) order.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub spec: TrialSpec,
    pub reports: Vec<InequalityReport>,
}

/// Aggregate line of the CSV summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub theorem: TheoremId,
    pub trials: usize,
    pub checks: usize,
    pub passes: usize,
    pub failures: usize,
    pub skipped: usize,
    /// Smallest `margin / scale` among evaluated checks.
    pub min_margin: f64,
    /// Mean `margin / scale` of the constant-bearing checks: how far the
    /// reverse bound is from sharp (0 = sharp).
    pub mean_tightness: f64,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InequalityReport> {
        self.reports.iter().filter(|r| !r.pass)
    }

    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut groups: BTreeMap<TheoremId, Vec<&InequalityReport>> = BTreeMap::new();
        for r in &self.reports {
            groups.entry(r.theorem).or_default().push(r);
        }
        groups
            .into_iter()
            .map(|(theorem, rs)| {
                let mut trials: Vec<u64> = rs.iter().map(|r| r.params.trial).collect();
                trials.dedup();
                let evaluated: Vec<_> = rs.iter().filter(|r| r.is_evaluated()).collect();
                let tight: Vec<f64> = evaluated
                    .iter()
                    .filter(|r| r.complementary)
                    .map(|r| r.relative_margin())
                    .collect();
                SummaryRow {
                    theorem,
                    trials: trials.len(),
                    checks: rs.len(),
                    passes: rs.iter().filter(|r| r.pass && r.skipped.is_none()).count(),
                    failures: rs.iter().filter(|r| !r.pass).count(),
                    skipped: rs.iter().filter(|r| r.skipped.is_some()).count(),
                    min_margin: evaluated
                        .iter()
                        .map(|r| r.relative_margin())
                        .fold(f64::INFINITY, f64::min),
                    mean_tightness: if tight.is_empty() {
                        f64::NAN
                    } else {
                        tight.iter().sum::<f64>() / tight.len() as f64
                    },
                }
            })
            .collect()
    }

    /// One JSON object per report and line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("report serializes"));
            out.push('\n');
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from(
            "theorem,trials,checks,passes,failures,skipped,min_margin,mean_tightness\n",
        );
        for s in self.summary() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:e},{:e}",
                s.theorem,
                s.trials,
                s.checks,
                s.passes,
                s.failures,
                s.skipped,
                s.min_margin,
                s.mean_tightness
            );
        }
        out
    }
}

/// Runs `spec.count` trials for every theorem in `spec.theorems`.
///
/// Trials run on the current rayon pool; the output order and contents
/// depend only on the spec.
pub fn run_suite(spec: &TrialSpec, cfg: &NumericConfig) -> Result<SuiteReport> {
    spec.validate()?;
    cfg.validate()?;
    let grids = spec.grids();
    let jobs: Vec<(TheoremId, u64)> = spec
        .theorems
        .iter()
        .flat_map(|&th| (0..spec.count as u64).map(move |i| (th, i)))
        .collect();
    let reports: Vec<Vec<InequalityReport>> = jobs
        .par_iter()
        .map(|&(theorem, index)| {
            let seed = trial_seed(spec.master_seed, theorem, index);
            let params = ReportParams {
                dim: spec.dim,
                trial: index,
                seed,
                ..ReportParams::default()
            };
            let inst = spec.instance(seed)?;
            Ok(check(theorem, &inst, &grids, &params, cfg))
        })
        .collect::<Result<_>>()?;
    Ok(SuiteReport {
        spec: spec.clone(),
        reports: reports.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(theorems: Vec<TheoremId>, count: usize) -> TrialSpec {
        TrialSpec {
            dim: 2,
            count,
            master_seed: 11,
            theorems,
            ..TrialSpec::default()
        }
    }

    #[test]
    fn empty_count_is_vacuous() {
        let rep = run_suite(
            &small(TheoremId::ALL.to_vec(), 0),
            &NumericConfig::default(),
        )
        .unwrap();
        assert!(rep.reports.is_empty());
        assert!(rep.all_pass());
        assert!(rep.summary().is_empty());
    }

    #[test]
    fn weighted_geo_record_count() {
        let spec = small(vec![TheoremId::WeightedGeo], 4);
        let rep = run_suite(&spec, &NumericConfig::default()).unwrap();
        assert_eq!(rep.reports.len(), 4 * 5 * 5 * 2);
        assert!(rep.all_pass());
    }

    #[test]
    fn deterministic_output() {
        let spec = small(vec![TheoremId::GeoHalf, TheoremId::Order], 3);
        let cfg = NumericConfig::default();
        let a = run_suite(&spec, &cfg).unwrap();
        let b = run_suite(&spec, &cfg).unwrap();
        assert_eq!(a.to_jsonl(), b.to_jsonl());
        assert_eq!(a.summary_csv(), b.summary_csv());
    }

    #[test]
    fn toml_round_trip_and_defaults() {
        let spec =
            TrialSpec::from_toml("dim = 5\ncount = 7\ntheorems = [\"T1_WeightedGeo\"]\n").unwrap();
        assert_eq!(spec.dim, 5);
        assert_eq!(spec.nu_grid, TrialSpec::default().nu_grid);
        assert_eq!(TrialSpec::from_toml(&spec.to_toml()).unwrap(), spec);
        assert!(TrialSpec::from_toml("dim = 1").is_err());
        assert!(TrialSpec::from_toml("nu_grid = [1.5]").is_err());
        assert!(TrialSpec::from_toml("bogus = 1").is_err());
    }

    #[test]
    fn seeds_differ_across_theorems_and_trials() {
        let a = trial_seed(1, TheoremId::WeightedGeo, 0);
        assert_ne!(a, trial_seed(1, TheoremId::GeoHalf, 0));
        assert_ne!(a, trial_seed(1, TheoremId::WeightedGeo, 1));
        assert_ne!(a, trial_seed(2, TheoremId::WeightedGeo, 0));
    }
}
