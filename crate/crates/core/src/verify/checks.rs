//! One function per inequality family. Each evaluates every inequality of the
//! family on concrete inputs and returns one report per inequality, larger
//! side first.

use super::{ConvexFn, InequalityReport, ReportParams, TheoremId};
use crate::kantorovich::{kantorovich, kantorovich_two};
use crate::means::{alm_mean, geo_mean, karcher_mean, power_mean, SpdTuple, WeightVector};
use crate::posmaps::PositiveMap;
use crate::symmat::{apply_fn, loewner_margin};
use crate::{thompson, Error, NumericConfig, Result, SpdMatrix, SymMatrix};

/// Inputs shared by every check of one trial.
#[derive(Debug, Clone)]
pub struct Instance {
    /// `A₁, A₂, …`; pairs use the first two, tuples a prefix.
    pub matrices: Vec<SpdMatrix>,
    /// `B₁, B₂, …` for the contraction check.
    pub partners: Vec<SpdMatrix>,
    /// Weights for the weighted means (their length is the tuple size).
    pub weights: WeightVector,
    pub maps: Vec<PositiveMap>,
    /// Unit vector for the functional bounds.
    pub probe: Vec<f64>,
}

/// Parameter grids swept by [`check`].
#[derive(Debug, Clone, PartialEq)]
pub struct Grids {
    pub nu: Vec<f64>,
    pub t: Vec<f64>,
    pub alm_sizes: Vec<usize>,
    pub convex_fns: Vec<ConvexFn>,
}

struct Ctx<'a> {
    theorem: TheoremId,
    params: ReportParams,
    cfg: &'a NumericConfig,
}

impl Ctx<'_> {
    fn new(theorem: TheoremId, params: ReportParams, cfg: &NumericConfig) -> Ctx<'_> {
        Ctx {
            theorem,
            params,
            cfg,
        }
    }

    fn report(
        &self,
        bound: &str,
        lhs_tag: &str,
        rhs_tag: &str,
        margin: f64,
        scale: f64,
        constant: Option<f64>,
    ) -> InequalityReport {
        InequalityReport {
            theorem: self.theorem,
            bound: bound.to_string(),
            params: self.params.clone(),
            lhs_tag: lhs_tag.to_string(),
            rhs_tag: rhs_tag.to_string(),
            margin,
            scale,
            constant: constant.unwrap_or(1.0),
            complementary: constant.is_some(),
            pass: margin >= -self.cfg.loewner_tol * scale,
            skipped: None,
            error: None,
        }
    }

    /// `lhs ⪰ rhs` in the Loewner order.
    fn loewner(
        &self,
        bound: &str,
        (lhs_tag, lhs): (&str, &SymMatrix),
        (rhs_tag, rhs): (&str, &SymMatrix),
        constant: Option<f64>,
    ) -> Result<InequalityReport> {
        let margin = loewner_margin(lhs, rhs, self.cfg)?;
        let scale = 1f64.max(lhs.op_norm(self.cfg)?).max(rhs.op_norm(self.cfg)?);
        Ok(self.report(bound, lhs_tag, rhs_tag, margin, scale, constant))
    }

    /// `lhs ≥ rhs` for reals.
    fn scalar(
        &self,
        bound: &str,
        (lhs_tag, lhs): (&str, f64),
        (rhs_tag, rhs): (&str, f64),
        constant: Option<f64>,
    ) -> InequalityReport {
        let scale = 1f64.max(lhs.abs()).max(rhs.abs());
        self.report(bound, lhs_tag, rhs_tag, lhs - rhs, scale, constant)
    }

    fn skipped(&self, reason: String) -> InequalityReport {
        InequalityReport {
            skipped: Some(reason),
            ..self.report("*", "", "", 0.0, 1.0, None)
        }
    }

    fn failed(&self, err: &Error) -> InequalityReport {
        InequalityReport {
            pass: false,
            error: Some(err.to_string()),
            ..self.report("*", "", "", 0.0, 1.0, None)
        }
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::HypothesisViolation(msg.into())
}

/// `Φ(A)` as an SPD matrix; a singular image is a hypothesis failure.
fn image(phi: &PositiveMap, a: &SpdMatrix) -> Result<SpdMatrix> {
    phi.apply_spd(a).map_err(|e| match e {
        Error::NotDefinite { min_eigenvalue } => hypothesis(format!(
            "image is not positive definite (λmin = {min_eigenvalue:e})"
        )),
        other => other,
    })
}

fn image_tuple(phi: &PositiveMap, t: &SpdTuple) -> Result<SpdTuple> {
    SpdTuple::new(t.iter().map(|a| image(phi, a)).collect::<Result<_>>()?)
}

fn unit_interval(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v <= 1.0 {
        Ok(())
    } else {
        Err(hypothesis(format!("{name} = {v} is outside (0, 1]")))
    }
}

fn with_map(params: &ReportParams, phi: &PositiveMap) -> ReportParams {
    ReportParams {
        map: Some(phi.kind()),
        ..params.clone()
    }
}

/// `K(R², ν)·Φ(A)♯_νΦ(B) ⪯ Φ(A♯_νB) ⪯ Φ(A)♯_νΦ(B)` for `ν ∈ (0, 1]`.
pub fn check_weighted_geo(
    a: &SpdMatrix,
    b: &SpdMatrix,
    phi: &PositiveMap,
    nu: f64,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    unit_interval("nu", nu)?;
    let r = thompson::ratio(a, b)?;
    let k = kantorovich(r * r, nu)?;
    let mut ctx = Ctx::new(TheoremId::WeightedGeo, with_map(params, phi), cfg);
    ctx.params.nu = Some(nu);
    ctx.params.h = Some(r * r);

    let outer = geo_mean(&image(phi, a)?, &image(phi, b)?, nu)?;
    let inner = phi.apply(geo_mean(a, b, nu)?.as_sym())?;
    Ok(vec![
        ctx.loewner(
            "upper",
            ("Φ(A)♯_νΦ(B)", outer.as_sym()),
            ("Φ(A♯_νB)", &inner),
            None,
        )?,
        ctx.loewner(
            "lower",
            ("Φ(A♯_νB)", &inner),
            ("K(R²,ν)·Φ(A)♯_νΦ(B)", &outer.as_sym().scale(k)),
            Some(k),
        )?,
    ])
}

/// `2√R/(1+R)·Φ(A)♯Φ(B) ⪯ Φ(A♯B) ⪯ Φ(A)♯Φ(B)`.
pub fn check_geo_half(
    a: &SpdMatrix,
    b: &SpdMatrix,
    phi: &PositiveMap,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    let r = thompson::ratio(a, b)?;
    let k = 2.0 * r.sqrt() / (1.0 + r);
    let mut ctx = Ctx::new(TheoremId::GeoHalf, with_map(params, phi), cfg);
    ctx.params.h = Some(r);

    let outer = geo_mean(&image(phi, a)?, &image(phi, b)?, 0.5)?;
    let inner = phi.apply(geo_mean(a, b, 0.5)?.as_sym())?;
    Ok(vec![
        ctx.loewner(
            "upper",
            ("Φ(A)♯Φ(B)", outer.as_sym()),
            ("Φ(A♯B)", &inner),
            None,
        )?,
        ctx.loewner(
            "lower",
            ("Φ(A♯B)", &inner),
            ("2√R/(1+R)·Φ(A)♯Φ(B)", &outer.as_sym().scale(k)),
            Some(k),
        )?,
    ])
}

/// Kadison-Schwarz `Φ(A²) ⪰ Φ(A)²`, `Φ(A⁻¹) ⪰ Φ(A)⁻¹` and their reverses
/// with `(m+M)²/(4mM)`, `m, M` the spectral bounds of `A`.
pub fn check_schwarz(
    a: &SpdMatrix,
    phi: &PositiveMap,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    let h = a.condition_number();
    let k = kantorovich_two(h)?;
    let mut ctx = Ctx::new(TheoremId::Schwarz, with_map(params, phi), cfg);
    ctx.params.h = Some(h);

    let pa = image(phi, a)?;
    let pa_sq = pa.as_sym().square();
    let pa_inv = pa.inverse()?;
    let p_sq = phi.apply(&a.as_sym().square())?;
    let p_inv = phi.apply(a.inverse()?.as_sym())?;
    Ok(vec![
        ctx.loewner("square", ("Φ(A²)", &p_sq), ("Φ(A)²", &pa_sq), None)?,
        ctx.loewner(
            "inverse",
            ("Φ(A⁻¹)", &p_inv),
            ("Φ(A)⁻¹", pa_inv.as_sym()),
            None,
        )?,
        ctx.loewner(
            "reverse_square",
            ("K·Φ(A)²", &pa_sq.scale(k)),
            ("Φ(A²)", &p_sq),
            Some(k),
        )?,
        ctx.loewner(
            "reverse_inverse",
            ("K·Φ(A)⁻¹", &pa_inv.as_sym().scale(k)),
            ("Φ(A⁻¹)", &p_inv),
            Some(k),
        )?,
    ])
}

/// `Φ(BA⁻¹B) ⪰ Φ(B)Φ(A)⁻¹Φ(B)` and three reverses: with the joint spectral
/// bounds of `A, B`, with `K(R², 2)`, and with `(1+R²)²/(4R)`.
pub fn check_three_term(
    a: &SpdMatrix,
    b: &SpdMatrix,
    phi: &PositiveMap,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    let m = a.lambda_min().min(b.lambda_min());
    let big_m = a.lambda_max().max(b.lambda_max());
    let k_joint = kantorovich_two(big_m / m)?;
    let r = thompson::ratio(a, b)?;
    let k_r2 = kantorovich_two(r * r)?;
    let k_literal = (1.0 + r * r).powi(2) / (4.0 * r);
    let mut ctx = Ctx::new(TheoremId::ThreeTerm, with_map(params, phi), cfg);

    let pa = image(phi, a)?;
    let pb = image(phi, b)?;
    let inner = phi.apply(&b.as_sym().sandwich(a.inverse()?.as_sym())?)?;
    let outer = pb.as_sym().sandwich(pa.inverse()?.as_sym())?;

    let forward = ctx.loewner(
        "forward",
        ("Φ(BA⁻¹B)", &inner),
        ("Φ(B)Φ(A)⁻¹Φ(B)", &outer),
        None,
    )?;
    ctx.params.h = Some(big_m / m);
    let joint = ctx.loewner(
        "reverse_spectral",
        ("K(M/m,2)·Φ(B)Φ(A)⁻¹Φ(B)", &outer.scale(k_joint)),
        ("Φ(BA⁻¹B)", &inner),
        Some(k_joint),
    )?;
    ctx.params.h = Some(r * r);
    let kr2 = ctx.loewner(
        "reverse_thompson",
        ("K(R²,2)·Φ(B)Φ(A)⁻¹Φ(B)", &outer.scale(k_r2)),
        ("Φ(BA⁻¹B)", &inner),
        Some(k_r2),
    )?;
    let literal = ctx.loewner(
        "reverse_thompson_literal",
        ("(1+R²)²/(4R)·Φ(B)Φ(A)⁻¹Φ(B)", &outer.scale(k_literal)),
        ("Φ(BA⁻¹B)", &inner),
        Some(k_literal),
    )?;
    Ok(vec![forward, joint, kr2, literal])
}

/// `f(Φ(A)) ⪯ Φ(f(A)) ⪯ K(h, 2)·f(Φ(A))` with `h = λmax(A)/λmin(A)`.
pub fn check_operator_convex(
    a: &SpdMatrix,
    phi: &PositiveMap,
    f: ConvexFn,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    let h = a.condition_number();
    let k = kantorovich_two(h)?;
    let mut ctx = Ctx::new(TheoremId::OperatorConvex, with_map(params, phi), cfg);
    ctx.params.f = Some(f);
    ctx.params.h = Some(h);

    let f_of_image = apply_fn(&image(phi, a)?, |x| f.eval(x), cfg)?;
    let image_of_f = phi.apply(&apply_fn(a, |x| f.eval(x), cfg)?)?;
    Ok(vec![
        ctx.loewner(
            "lower",
            ("Φ(f(A))", &image_of_f),
            ("f(Φ(A))", &f_of_image),
            None,
        )?,
        ctx.loewner(
            "upper",
            ("K(h,2)·f(Φ(A))", &f_of_image.scale(k)),
            ("Φ(f(A))", &image_of_f),
            Some(k),
        )?,
    ])
}

/// `K(h₀,1/2)^{1/t}·P_t(Φ(𝔸)) ⪯ Φ(P_t(𝔸)) ⪯ P_t(Φ(𝔸))`, `h₀ = max R²(A_i, A_j)`.
pub fn check_power_mean(
    w: &WeightVector,
    tuple: &SpdTuple,
    phi: &PositiveMap,
    t: f64,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    check_power_mean_with(w, tuple, phi, t, params, cfg, None)
}

/// As [`check_power_mean`], reusing the mean of `tuple` when already known.
fn check_power_mean_with(
    w: &WeightVector,
    tuple: &SpdTuple,
    phi: &PositiveMap,
    t: f64,
    params: &ReportParams,
    cfg: &NumericConfig,
    known: Option<&SpdMatrix>,
) -> Result<Vec<InequalityReport>> {
    unit_interval("t", t)?;
    let h0 = thompson::max_pairwise_ratio(tuple.as_slice())?.powi(2);
    let k = kantorovich(h0, 0.5)?.powf(1.0 / t);
    let mut ctx = Ctx::new(TheoremId::PowerMean, with_map(params, phi), cfg);
    ctx.params.t = Some(t);
    ctx.params.n = Some(tuple.len());
    ctx.params.h = Some(h0);

    let mean = match known {
        Some(m) => m.clone(),
        None => power_mean(t, w, tuple, cfg)?.value,
    };
    let inner = phi.apply(mean.as_sym())?;
    let outer = power_mean(t, w, &image_tuple(phi, tuple)?, cfg)?.value;
    Ok(vec![
        ctx.loewner(
            "upper",
            ("P_t(Φ(𝔸))", outer.as_sym()),
            ("Φ(P_t(𝔸))", &inner),
            None,
        )?,
        ctx.loewner(
            "lower",
            ("Φ(P_t(𝔸))", &inner),
            ("K(h₀,1/2)^{1/t}·P_t(Φ(𝔸))", &outer.as_sym().scale(k)),
            Some(k),
        )?,
    ])
}

/// `4ħ/(1+ħ)²·Λ(Φ(𝔸)) ⪯ Φ(Λ(𝔸)) ⪯ Λ(Φ(𝔸))`, `ħ = max_i λmax(A_i)/λmin(A_i)`.
pub fn check_karcher(
    w: &WeightVector,
    tuple: &SpdTuple,
    phi: &PositiveMap,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    check_karcher_with(w, tuple, phi, params, cfg, None)
}

/// As [`check_karcher`], reusing the mean of `tuple` when already known.
fn check_karcher_with(
    w: &WeightVector,
    tuple: &SpdTuple,
    phi: &PositiveMap,
    params: &ReportParams,
    cfg: &NumericConfig,
    known: Option<&SpdMatrix>,
) -> Result<Vec<InequalityReport>> {
    let hbar = tuple.max_condition_number();
    let k = 4.0 * hbar / (1.0 + hbar).powi(2);
    let mut ctx = Ctx::new(TheoremId::Karcher, with_map(params, phi), cfg);
    ctx.params.n = Some(tuple.len());
    ctx.params.h = Some(hbar);

    let mean = match known {
        Some(m) => m.clone(),
        None => karcher_mean(w, tuple, cfg)?.value,
    };
    let inner = phi.apply(mean.as_sym())?;
    let outer = karcher_mean(w, &image_tuple(phi, tuple)?, cfg)?.value;
    Ok(vec![
        ctx.loewner(
            "upper",
            ("Λ(Φ(𝔸))", outer.as_sym()),
            ("Φ(Λ(𝔸))", &inner),
            None,
        )?,
        ctx.loewner(
            "lower",
            ("Φ(Λ(𝔸))", &inner),
            ("4ħ/(1+ħ)²·Λ(Φ(𝔸))", &outer.as_sym().scale(k)),
            Some(k),
        )?,
    ])
}

/// `P_{−t}(𝔸) ⪯ Λ(𝔸) ⪯ P_t(𝔸)` for `t ∈ (0, 1]`.
pub fn check_order(
    w: &WeightVector,
    tuple: &SpdTuple,
    t: f64,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    unit_interval("t", t)?;
    let mut ctx = Ctx::new(TheoremId::Order, params.clone(), cfg);
    ctx.params.t = Some(t);
    ctx.params.n = Some(tuple.len());

    let karcher = karcher_mean(w, tuple, cfg)?.value;
    let upper = power_mean(t, w, tuple, cfg)?.value;
    let lower = power_mean(-t, w, tuple, cfg)?.value;
    Ok(vec![
        ctx.loewner(
            "upper",
            ("P_t", upper.as_sym()),
            ("Λ", karcher.as_sym()),
            None,
        )?,
        ctx.loewner(
            "lower",
            ("Λ", karcher.as_sym()),
            ("P_{-t}", lower.as_sym()),
            None,
        )?,
    ])
}

/// `(2√h₁/(1+h₁))^{n−1}·G(Φ(𝔸)) ⪯ Φ(G(𝔸)) ⪯ G(Φ(𝔸))`, `h₁ = max R(A_i, A_j)`.
pub fn check_alm(
    tuple: &SpdTuple,
    phi: &PositiveMap,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    check_alm_with(tuple, phi, params, cfg, None)
}

/// As [`check_alm`], reusing the mean of `tuple` when already known.
fn check_alm_with(
    tuple: &SpdTuple,
    phi: &PositiveMap,
    params: &ReportParams,
    cfg: &NumericConfig,
    known: Option<&SpdMatrix>,
) -> Result<Vec<InequalityReport>> {
    let n = tuple.len();
    if n < 2 {
        return Err(hypothesis(format!("needs at least 2 matrices, got {n}")));
    }
    let h1 = thompson::max_pairwise_ratio(tuple.as_slice())?;
    let k = (2.0 * h1.sqrt() / (1.0 + h1)).powi(n as i32 - 1);
    let mut ctx = Ctx::new(TheoremId::Alm, with_map(params, phi), cfg);
    ctx.params.n = Some(n);
    ctx.params.h = Some(h1);

    let mean = match known {
        Some(m) => m.clone(),
        None => alm_mean(tuple, cfg)?.value,
    };
    let inner = phi.apply(mean.as_sym())?;
    let outer = alm_mean(&image_tuple(phi, tuple)?, cfg)?.value;
    Ok(vec![
        ctx.loewner(
            "upper",
            ("G(Φ(𝔸))", outer.as_sym()),
            ("Φ(G(𝔸))", &inner),
            None,
        )?,
        ctx.loewner(
            "lower",
            ("Φ(G(𝔸))", &inner),
            ("(2√h₁/(1+h₁))^{n-1}·G(Φ(𝔸))", &outer.as_sym().scale(k)),
            Some(k),
        )?,
    ])
}

/// `(2√M₀/(1+M₀))^{n−1}`, `M₀ = max_{i,j} λmax(A_i)/λmin(A_j)`.
fn spectral_alm_constant(tuple: &SpdTuple) -> (f64, f64) {
    let big_m = tuple.iter().map(SpdMatrix::lambda_max).fold(0.0, f64::max);
    let m = tuple
        .iter()
        .map(SpdMatrix::lambda_min)
        .fold(f64::INFINITY, f64::min);
    let m0 = big_m / m;
    let k = (2.0 * m0.sqrt() / (1.0 + m0)).powi(tuple.len() as i32 - 1);
    (m0, k)
}

/// `c·(Π⟨A_j x,x⟩)^{1/n} ≤ ⟨G x,x⟩ ≤ (Π⟨A_j x,x⟩)^{1/n}`.
pub fn check_functional(
    tuple: &SpdTuple,
    x: &[f64],
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    let n = tuple.len();
    if n < 2 {
        return Err(hypothesis(format!("needs at least 2 matrices, got {n}")));
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(hypothesis(format!(
            "probe vector has norm {norm}, expected 1"
        )));
    }
    let (m0, k) = spectral_alm_constant(tuple);
    let mut ctx = Ctx::new(TheoremId::Functional, params.clone(), cfg);
    ctx.params.n = Some(n);
    ctx.params.h = Some(m0);

    let quad = |a: &SpdMatrix| -> Result<f64> {
        let ax = a.as_matrix().mat_vec(x)?;
        Ok(ax.iter().zip(x).map(|(p, q)| p * q).sum())
    };
    let g = quad(&alm_mean(tuple, cfg)?.value)?;
    let log_sum = tuple
        .iter()
        .map(|a| quad(a).map(f64::ln))
        .sum::<Result<f64>>()?;
    let p = (log_sum / n as f64).exp();
    Ok(vec![
        ctx.scalar("upper", ("(Π⟨A_j x,x⟩)^{1/n}", p), ("⟨Gx,x⟩", g), None),
        ctx.scalar(
            "lower",
            ("⟨Gx,x⟩", g),
            ("c·(Π⟨A_j x,x⟩)^{1/n}", k * p),
            Some(k),
        ),
    ])
}

/// `c·Π‖A_j‖^{1/n} ≤ ‖G‖ ≤ Π‖A_j‖^{1/n}`.
pub fn check_norm(
    tuple: &SpdTuple,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    let n = tuple.len();
    if n < 2 {
        return Err(hypothesis(format!("needs at least 2 matrices, got {n}")));
    }
    let (m0, k) = spectral_alm_constant(tuple);
    let mut ctx = Ctx::new(TheoremId::Norm, params.clone(), cfg);
    ctx.params.n = Some(n);
    ctx.params.h = Some(m0);

    let g = alm_mean(tuple, cfg)?.value.op_norm();
    let p = (tuple.iter().map(|a| a.op_norm().ln()).sum::<f64>() / n as f64).exp();
    Ok(vec![
        ctx.scalar("upper", ("Π‖A_j‖^{1/n}", p), ("‖G‖", g), None),
        ctx.scalar("lower", ("‖G‖", g), ("c·Π‖A_j‖^{1/n}", k * p), Some(k)),
    ])
}

/// `R(G(𝔸), G(𝔹)) ≤ (Π R(A_i, B_i))^{1/n}`.
pub fn check_contraction(
    a: &SpdTuple,
    b: &SpdTuple,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Result<Vec<InequalityReport>> {
    if a.len() != b.len() {
        return Err(Error::dims(a.len(), b.len()));
    }
    let n = a.len();
    let mut ctx = Ctx::new(TheoremId::Contraction, params.clone(), cfg);
    ctx.params.n = Some(n);

    let lhs = thompson::ratio(&alm_mean(a, cfg)?.value, &alm_mean(b, cfg)?.value)?;
    let log_sum = a
        .iter()
        .zip(b)
        .map(|(x, y)| thompson::ratio(x, y).map(f64::ln))
        .sum::<Result<f64>>()?;
    let rhs = (log_sum / n as f64).exp();
    Ok(vec![ctx.scalar(
        "contraction",
        ("(Π R(A_i,B_i))^{1/n}", rhs),
        ("R(G(𝔸),G(𝔹))", lhs),
        None,
    )])
}

/// Converts a check outcome into reports; hypothesis failures become one
/// skipped report, other errors one failing report.
fn settle(ctx: &Ctx<'_>, outcome: Result<Vec<InequalityReport>>) -> Vec<InequalityReport> {
    match outcome {
        Ok(reports) => reports,
        Err(Error::HypothesisViolation(reason)) => vec![ctx.skipped(reason)],
        Err(e) => vec![ctx.failed(&e)],
    }
}

fn prefix(ms: &[SpdMatrix], n: usize) -> Result<SpdTuple> {
    if ms.len() < n {
        return Err(hypothesis(format!(
            "instance holds {} matrices, need {n}",
            ms.len()
        )));
    }
    SpdTuple::new(ms[..n].to_vec())
}

/// Runs every inequality of `theorem` over the instance and the grids.
pub fn check(
    theorem: TheoremId,
    inst: &Instance,
    grids: &Grids,
    params: &ReportParams,
    cfg: &NumericConfig,
) -> Vec<InequalityReport> {
    let mut out = Vec::new();
    let mut run = |p: ReportParams, f: &dyn Fn(&ReportParams) -> Result<Vec<InequalityReport>>| {
        let ctx = Ctx::new(theorem, p.clone(), cfg);
        out.extend(settle(&ctx, f(&p)));
    };
    let ms = &inst.matrices;
    let pair = || -> Result<(&SpdMatrix, &SpdMatrix)> {
        match ms.as_slice() {
            [a, b, ..] => Ok((a, b)),
            _ => Err(hypothesis("instance needs two matrices")),
        }
    };
    let n_w = inst.weights.len();

    match theorem {
        TheoremId::WeightedGeo => {
            for phi in &inst.maps {
                for &nu in &grids.nu {
                    run(with_map(params, phi), &|p| {
                        let (a, b) = pair()?;
                        check_weighted_geo(a, b, phi, nu, p, cfg)
                    });
                }
            }
        }
        TheoremId::GeoHalf => {
            for phi in &inst.maps {
                run(with_map(params, phi), &|p| {
                    let (a, b) = pair()?;
                    check_geo_half(a, b, phi, p, cfg)
                });
            }
        }
        TheoremId::Schwarz => {
            for phi in &inst.maps {
                run(with_map(params, phi), &|p| {
                    check_schwarz(pair()?.0, phi, p, cfg)
                });
            }
        }
        TheoremId::ThreeTerm => {
            for phi in &inst.maps {
                run(with_map(params, phi), &|p| {
                    let (a, b) = pair()?;
                    check_three_term(a, b, phi, p, cfg)
                });
            }
        }
        TheoremId::OperatorConvex => {
            for phi in &inst.maps {
                for &f in &grids.convex_fns {
                    let p = ReportParams {
                        f: Some(f),
                        ..with_map(params, phi)
                    };
                    run(p, &|p| check_operator_convex(pair()?.0, phi, f, p, cfg));
                }
            }
        }
        TheoremId::PowerMean => {
            // the source-side mean does not depend on the map
            let means: Vec<Option<SpdMatrix>> = grids
                .t
                .iter()
                .map(|&t| {
                    let tuple = prefix(ms, n_w).ok()?;
                    power_mean(t, &inst.weights, &tuple, cfg)
                        .ok()
                        .map(|r| r.value)
                })
                .collect();
            for phi in &inst.maps {
                for (&t, known) in grids.t.iter().zip(&means) {
                    let p = ReportParams {
                        t: Some(t),
                        ..with_map(params, phi)
                    };
                    run(p, &|p| {
                        let tuple = prefix(ms, n_w)?;
                        check_power_mean_with(&inst.weights, &tuple, phi, t, p, cfg, known.as_ref())
                    });
                }
            }
        }
        TheoremId::Karcher => {
            let known = prefix(ms, n_w)
                .ok()
                .and_then(|tuple| karcher_mean(&inst.weights, &tuple, cfg).ok())
                .map(|r| r.value);
            for phi in &inst.maps {
                run(with_map(params, phi), &|p| {
                    let tuple = prefix(ms, n_w)?;
                    check_karcher_with(&inst.weights, &tuple, phi, p, cfg, known.as_ref())
                });
            }
        }
        TheoremId::Order => {
            for &t in &grids.t {
                let p = ReportParams {
                    t: Some(t),
                    ..params.clone()
                };
                run(p, &|p| {
                    check_order(&inst.weights, &prefix(ms, n_w)?, t, p, cfg)
                });
            }
        }
        TheoremId::Alm => {
            let means: Vec<Option<SpdMatrix>> = grids
                .alm_sizes
                .iter()
                .map(|&n| {
                    let tuple = prefix(ms, n).ok()?;
                    alm_mean(&tuple, cfg).ok().map(|r| r.value)
                })
                .collect();
            for phi in &inst.maps {
                for (&n, known) in grids.alm_sizes.iter().zip(&means) {
                    let p = ReportParams {
                        n: Some(n),
                        ..with_map(params, phi)
                    };
                    run(p, &|p| {
                        check_alm_with(&prefix(ms, n)?, phi, p, cfg, known.as_ref())
                    });
                }
            }
        }
        TheoremId::Functional => {
            for &n in &grids.alm_sizes {
                let p = ReportParams {
                    n: Some(n),
                    ..params.clone()
                };
                run(p, &|p| {
                    check_functional(&prefix(ms, n)?, &inst.probe, p, cfg)
                });
            }
        }
        TheoremId::Norm => {
            for &n in &grids.alm_sizes {
                let p = ReportParams {
                    n: Some(n),
                    ..params.clone()
                };
                run(p, &|p| check_norm(&prefix(ms, n)?, p, cfg));
            }
        }
        TheoremId::Contraction => {
            for &n in &grids.alm_sizes {
                let p = ReportParams {
                    n: Some(n),
                    ..params.clone()
                };
                run(p, &|p| {
                    check_contraction(&prefix(ms, n)?, &prefix(&inst.partners, n)?, p, cfg)
                });
            }
        }
    }
    out
}
