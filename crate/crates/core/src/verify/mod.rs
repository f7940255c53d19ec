//! Numerical verification of the complementary inequalities.
//!
//! Each [`TheoremId`] names one family of operator inequalities. A check
//! evaluates both sides on a concrete instance and records an
//! [`InequalityReport`] per inequality: the Loewner margin
//! `λ_min(larger − smaller)` (or a scalar difference for functionals and
//! norms), the constant involved and a pass flag
//! `margin ≥ −loewner_tol · max(1, ‖larger‖, ‖smaller‖)`.

mod checks;
pub mod generate;
mod suite;
mod worked;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::posmaps::MapKind;
use crate::Error;

pub use checks::{
    check, check_alm, check_contraction, check_functional, check_geo_half, check_karcher,
    check_norm, check_operator_convex, check_order, check_power_mean, check_schwarz,
    check_three_term, check_weighted_geo, Grids, Instance,
};
pub use generate::gen_spd;
pub use suite::{run_suite, trial_seed, SuiteReport, SummaryRow, TrialSpec};
pub use worked::{run_examples, ExampleCheck, Relation};

/// Inequality families under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    /// `K(R², ν)·Φ(A)♯_νΦ(B) ⪯ Φ(A♯_νB) ⪯ Φ(A)♯_νΦ(B)`.
    #[serde(rename = "T1_WeightedGeo")]
    WeightedGeo,
    /// `2R^{1/2}/(1+R)·Φ(A)♯Φ(B) ⪯ Φ(A♯B) ⪯ Φ(A)♯Φ(B)`.
    #[serde(rename = "T_GeoHalf")]
    GeoHalf,
    /// Kadison-Schwarz inequalities and their Kantorovich reverses.
    #[serde(rename = "Schwarz")]
    Schwarz,
    /// `Φ(B)Φ(A)⁻¹Φ(B) ⪯ Φ(BA⁻¹B)` and three reverse forms.
    #[serde(rename = "ThreeTerm")]
    ThreeTerm,
    /// `f(Φ(A)) ⪯ Φ(f(A)) ⪯ K(h,2)·f(Φ(A))` for operator convex `f`.
    #[serde(rename = "T2_OperatorConvex")]
    OperatorConvex,
    /// `K(h₀,1/2)^{1/t}·P_t(Φ(𝔸)) ⪯ Φ(P_t(𝔸)) ⪯ P_t(Φ(𝔸))`.
    #[serde(rename = "T3_PowerMean")]
    PowerMean,
    /// `4ħ/(1+ħ)²·Λ(Φ(𝔸)) ⪯ Φ(Λ(𝔸)) ⪯ Λ(Φ(𝔸))`.
    #[serde(rename = "T4_Karcher")]
    Karcher,
    /// `P_{−t} ⪯ Λ ⪯ P_t`.
    #[serde(rename = "Order")]
    Order,
    /// `(2h₁^{1/2}/(1+h₁))^{n−1}·G(Φ(𝔸)) ⪯ Φ(G(𝔸)) ⪯ G(Φ(𝔸))`.
    #[serde(rename = "T5_ALM")]
    Alm,
    /// Two-sided bound of `⟨G x, x⟩` by `(Π⟨A_j x, x⟩)^{1/n}`.
    #[serde(rename = "C2_Functional")]
    Functional,
    /// Two-sided bound of `‖G‖` by `Π‖A_j‖^{1/n}`.
    #[serde(rename = "C3_Norm")]
    Norm,
    /// `R(G(𝔸), G(𝔹)) ≤ (Π R(A_i, B_i))^{1/n}`.
    #[serde(rename = "Contraction")]
    Contraction,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::WeightedGeo,
        TheoremId::GeoHalf,
        TheoremId::Schwarz,
        TheoremId::ThreeTerm,
        TheoremId::OperatorConvex,
        TheoremId::PowerMean,
        TheoremId::Karcher,
        TheoremId::Order,
        TheoremId::Alm,
        TheoremId::Functional,
        TheoremId::Norm,
        TheoremId::Contraction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::WeightedGeo => "T1_WeightedGeo",
            TheoremId::GeoHalf => "T_GeoHalf",
            TheoremId::Schwarz => "Schwarz",
            TheoremId::ThreeTerm => "ThreeTerm",
            TheoremId::OperatorConvex => "T2_OperatorConvex",
            TheoremId::PowerMean => "T3_PowerMean",
            TheoremId::Karcher => "T4_Karcher",
            TheoremId::Order => "Order",
            TheoremId::Alm => "T5_ALM",
            TheoremId::Functional => "C2_Functional",
            TheoremId::Norm => "C3_Norm",
            TheoremId::Contraction => "Contraction",
        }
    }

    /// Stable small integer used when deriving trial seeds.
    pub fn code(self) -> u64 {
        TheoremId::ALL
            .iter()
            .position(|t| *t == self)
            .expect("listed") as u64
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    /// Accepts the full name (`T1_WeightedGeo`) or its prefix before the
    /// underscore (`T1`), case-insensitively.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        TheoremId::ALL
            .into_iter()
            .find(|t| {
                let name = t.name();
                let short = name.split('_').next().unwrap_or(name);
                name.eq_ignore_ascii_case(s) || (short.len() == 2 && short.eq_ignore_ascii_case(s))
            })
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`")))
    }
}

/// Operator convex functions on `(0, ∞)` used by the operator-convex checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ConvexFn {
    Square,
    Inverse,
    /// `t^p` with `p ∈ [1, 2]`.
    Power(f64),
    /// `−log t`.
    NegLog,
}

impl ConvexFn {
    pub const DEFAULTS: [ConvexFn; 4] = [
        ConvexFn::Square,
        ConvexFn::Inverse,
        ConvexFn::Power(1.5),
        ConvexFn::NegLog,
    ];

    pub fn eval(self, x: f64) -> f64 {
        match self {
            ConvexFn::Square => x * x,
            ConvexFn::Inverse => 1.0 / x,
            ConvexFn::Power(p) => x.powf(p),
            ConvexFn::NegLog => -x.ln(),
        }
    }
}

impl fmt::Display for ConvexFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexFn::Square => f.write_str("t^2"),
            ConvexFn::Inverse => f.write_str("t^-1"),
            ConvexFn::Power(p) => write!(f, "t^{p}"),
            ConvexFn::NegLog => f.write_str("-log t"),
        }
    }
}

impl From<ConvexFn> for String {
    fn from(f: ConvexFn) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for ConvexFn {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl FromStr for ConvexFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match compact.as_str() {
            "t^2" | "square" => Ok(ConvexFn::Square),
            "t^-1" | "inverse" => Ok(ConvexFn::Inverse),
            "-logt" | "neglog" => Ok(ConvexFn::NegLog),
            other => {
                let p: f64 = other
                    .strip_prefix("t^")
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown convex function `{s}`")))?;
                if !(1.0..=2.0).contains(&p) {
                    return Err(Error::Parse(format!(
                        "t^{p} is not operator convex here; need p in [1, 2] or p = -1"
                    )));
                }
                Ok(if p == 2.0 {
                    ConvexFn::Square
                } else {
                    ConvexFn::Power(p)
                })
            }
        }
    }
}

/// Echo of the instance a report was computed on.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportParams {
    pub dim: usize,
    pub trial: u64,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub map: Option<MapKind>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<ConvexFn>,
    /// Ratio parameter fed to the constant (`R`, `h`, `ħ`, `M₀`, ...).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<f64>,
}

/// One inequality evaluated on one instance: `larger ⪰ smaller`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub theorem: TheoremId,
    /// Which inequality of the family (`upper`, `lower`, ...).
    pub bound: String,
    pub params: ReportParams,
    /// The side claimed to dominate.
    pub lhs_tag: String,
    pub rhs_tag: String,
    /// `λ_min(lhs − rhs)`, or `lhs − rhs` for scalar checks.
    pub margin: f64,
    pub scale: f64,
    /// Constant multiplying one side (1 when none).
    pub constant: f64,
    /// True for the constant-bearing (reverse) side of a sandwich.
    pub complementary: bool,
    pub pass: bool,
    /// Set when a hypothesis failed and the inequality was not evaluated.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skipped: Option<String>,
    /// Set when the evaluation itself failed (solver error).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

impl InequalityReport {
    /// `margin / scale`, the quantity compared against `−loewner_tol`.
    pub fn relative_margin(&self) -> f64 {
        self.margin / self.scale
    }

    pub fn is_evaluated(&self) -> bool {
        self.skipped.is_none() && self.error.is_none()
    }
}
