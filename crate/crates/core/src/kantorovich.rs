//! The generalized Kantorovich constant
//!
//! ```text
//! K(h, ν) = (h^ν − h) / ((ν − 1)(h − 1)) · ((ν − 1)(h^ν − 1) / (ν(h^ν − h)))^ν
//! ```
//!
//! for a ratio `h ≥ 1` and a real exponent `ν`. The removable singularities at
//! `h = 1`, `ν = 0` and `ν = 1` evaluate to their limit 1.

use crate::{Error, Result};

const H_ONE_TOL: f64 = 1e-9;
const NU_TOL: f64 = 1e-12;

fn check_h(h: f64) -> Result<()> {
    if h.is_nan() || h < 1.0 {
        return Err(Error::Domain(format!(
            "Kantorovich ratio must satisfy h >= 1, got {h}"
        )));
    }
    Ok(())
}

/// `K(h, ν)`.
pub fn kantorovich(h: f64, nu: f64) -> Result<f64> {
    check_h(h)?;
    if !nu.is_finite() {
        return Err(Error::Domain(format!("exponent must be finite, got {nu}")));
    }
    if (h - 1.0).abs() < H_ONE_TOL || nu.abs() < NU_TOL || (nu - 1.0).abs() < NU_TOL {
        return Ok(1.0);
    }
    if nu == 0.5 {
        return kantorovich_half(h);
    }
    if nu == 2.0 || nu == -1.0 {
        return Ok((1.0 + h).powi(2) / (4.0 * h));
    }
    if h.is_infinite() {
        return Err(Error::Domain("Kantorovich ratio must be finite".into()));
    }
    // expm1 keeps the differences accurate when h is close to 1
    let l = h.ln();
    let hnu_minus_h = h * ((nu - 1.0) * l).exp_m1();
    let hnu_minus_one = (nu * l).exp_m1();
    let h_minus_one = l.exp_m1();
    let lead = hnu_minus_h / ((nu - 1.0) * h_minus_one);
    let base = (nu - 1.0) * hnu_minus_one / (nu * hnu_minus_h);
    Ok(lead * base.powf(nu))
}

/// `K(h, 1/2) = 2h^{1/4} / (1 + h^{1/2})`, the minimum of `K(h, ·)`.
pub fn kantorovich_half(h: f64) -> Result<f64> {
    check_h(h)?;
    Ok(2.0 * h.powf(0.25) / (1.0 + h.sqrt()))
}

/// `K(h, 2) = (1 + h)² / (4h)`, the classical Kantorovich constant.
pub fn kantorovich_two(h: f64) -> Result<f64> {
    kantorovich(h, 2.0)
}
