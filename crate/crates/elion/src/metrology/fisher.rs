//! Fisher information of the repeated-probe estimator, with and without
//! electron loss.
//!
//! The detected-electron rotation angle `θ(φ)` from
//! [`rotation_angle`](super::protocol::rotation_angle) has the exact
//! derivative `θ′(φ) = sin(g/2) / (2 (1 + cos(g/2) sin φ))`, so the Fisher
//! information of the binary `|0⟩/|1⟩` measurement after `n` detected
//! electrons is
//!
//! `F(φ) = n² sin²(g/2) / (1 + cos(g/2) sin φ)²`,
//!
//! reaching the Heisenberg-limited `n²` at `g = π` and vanishing at
//! `g = 0`. Losing `m` electrons multiplies the coherence by
//! `c = cos^m(g/2)` and attenuates the information by
//! `4 c² p₀ (1 − p₀) / (1 − c² (1 − 2 p₀)²)`.
//!
//! Under a restart-on-loss strategy every loss discards the run, so the
//! expected information per attempt is `𝔼(F) = n² (1 − ε)ⁿ` with a unique
//! continuous maximum at `n* = −1/ln(1 − ε)`; the gain over the standard
//! quantum limit at that optimum is `−1/(e ln(1 − ε))`, which drops to 1 at
//! `ε = 1 − e^{−1/e} ≈ 0.308`.

use crate::error::{Error, Result};
use crate::metrology::protocol::p0_nonideal;

/// Iterations for the bisection root finders (interval shrinks by 2⁻²⁰⁰).
const BISECTION_STEPS: u32 = 200;

fn require_count(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(format!("{what}: electron count must be at least 1")));
    }
    Ok(())
}

fn require_open_unit(eps: f64, what: &str) -> Result<()> {
    if !eps.is_finite() || eps <= 0.0 || eps >= 1.0 {
        return Err(Error::Domain(format!("{what}: loss probability {eps} outside (0, 1)")));
    }
    Ok(())
}

/// Ideal (`g = π`, lossless) Fisher information: `F = n²`.
///
/// # Errors
///
/// [`Error::Domain`] if `n = 0`.
pub fn fisher_ideal(n: u64) -> Result<f64> {
    require_count(n, "fisher_ideal")?;
    Ok((n as f64).powi(2))
}

/// Expected Fisher information per attempt under restart-on-loss:
/// `𝔼(F) = n² (1 − ε)ⁿ` (an attempt succeeds only if all `n` electrons
/// arrive).
///
/// # Errors
///
/// [`Error::Domain`] if `n = 0` or `ε ∉ [0, 1]`.
pub fn expected_fisher_lossy(n: u64, eps: f64) -> Result<f64> {
    require_count(n, "expected_fisher_lossy")?;
    if !eps.is_finite() || !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!(
            "expected_fisher_lossy: loss probability {eps} outside [0, 1]"
        )));
    }
    let nf = n as f64;
    Ok(nf * nf * (1.0 - eps).powf(nf))
}

/// Electron number maximizing the gain `𝔼(F)/n` over the standard quantum
/// limit, rounding the continuous optimum `n* = −1/ln(1 − ε)` to the
/// nearest integer (ties round up) and clamping to at least 1. `ε = 0` has
/// no finite optimum and returns `None`.
///
/// The optimum is of the *relative* gain `n (1 − ε)ⁿ`; the raw expectation
/// `𝔼(F) = n² (1 − ε)ⁿ` keeps growing until `−2/ln(1 − ε) ≈ 2 n*`.
/// Whenever `(1 − ε)/ε` is an integer the discrete gain ties exactly at
/// that integer and the next one (e.g. 99 and 100 at `ε = 0.01`, where
/// `n* ≈ 99.499` rounds to 99); the tests pin down both facts.
///
/// # Errors
///
/// [`Error::Domain`] if `ε ∉ [0, 1)`.
pub fn optimal_n(eps: f64) -> Result<Option<u64>> {
    if !eps.is_finite() || !(0.0..1.0).contains(&eps) {
        return Err(Error::Domain(format!("optimal_n: loss probability {eps} outside [0, 1)")));
    }
    if eps == 0.0 {
        return Ok(None);
    }
    let n_star = -1.0 / (-eps).ln_1p();
    // `round` is round-half-away-from-zero, i.e. half-up for positive n*.
    Ok(Some((n_star.round() as u64).max(1)))
}

/// Gain of `𝔼(F)` over the standard quantum limit at the optimal electron
/// number: `𝔼(F(n*))/n* = n*(1 − ε)^{n*} = −1/(e ln(1 − ε))`.
///
/// # Errors
///
/// [`Error::Domain`] if `ε ∉ (0, 1)`.
pub fn relative_gain(eps: f64) -> Result<f64> {
    require_open_unit(eps, "relative_gain")?;
    Ok(-1.0 / (std::f64::consts::E * (-eps).ln_1p()))
}

/// Loss probability at which [`relative_gain`] drops to 1, i.e. beyond
/// which even the optimal `n` no longer beats the standard quantum limit.
/// Located by bisection; equals `1 − e^{−1/e} ≈ 0.3078`.
pub fn gain_unity_loss() -> f64 {
    // relative_gain is strictly decreasing: +∞ at ε → 0⁺, → 0 at ε → 1⁻.
    let mut lo = 1e-9;
    let mut hi = 1.0 - 1e-9;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if relative_gain(mid).expect("interior point is in the domain") > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Upper end of the super-classical window: the continuous `n > n*` where
/// `𝔼(F) = n² (1 − ε)ⁿ` falls back to the standard quantum limit `F = n`,
/// found by bisection on `n (1 − ε)ⁿ = 1`.
///
/// # Errors
///
/// [`Error::Domain`] if `ε ∉ (0, 1)` or the expected information never
/// exceeds the standard quantum limit (`ε ≥ 1 − e^{−1/e}`).
pub fn sql_crossing(eps: f64) -> Result<f64> {
    require_open_unit(eps, "sql_crossing")?;
    let excess = |n: f64| n.ln() + n * (-eps).ln_1p();
    let n_star = -1.0 / (-eps).ln_1p();
    if excess(n_star) <= 0.0 {
        return Err(Error::Domain(format!(
            "sql_crossing: no super-classical window at loss probability {eps}"
        )));
    }
    let mut lo = n_star;
    let mut hi = 2.0 * n_star;
    while excess(hi) > 0.0 {
        hi *= 2.0;
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Fisher information of the binary measurement after `n` detected
/// electrons at coupling `g` and phase `φ`:
/// `F = n² sin²(g/2) / (1 + cos(g/2) sin φ)²`. Equals `n²` only at
/// `g = π, φ = 0`; vanishes at `g = 0`.
///
/// # Errors
///
/// [`Error::Domain`] unless `g ∈ [0, π]` and `φ ∈ [0, π)`.
pub fn fisher_nonideal(n: u64, g: f64, phi: f64) -> Result<f64> {
    if !g.is_finite() || !(0.0..=std::f64::consts::PI).contains(&g) {
        return Err(Error::Domain(format!("fisher: coupling {g} outside [0, π]")));
    }
    if !phi.is_finite() || !(0.0..std::f64::consts::PI).contains(&phi) {
        return Err(Error::Domain(format!("fisher: phase {phi} outside [0, π)")));
    }
    let den = 1.0 + (0.5 * g).cos() * phi.sin();
    Ok((n as f64 * (0.5 * g).sin() / den).powi(2))
}

/// Fisher information when `m_lost` electrons were lost (and corrected
/// for) and `n_detected` arrived: the coherence shrinks by
/// `c = cos^{m}(g/2)`, turning `p₀` into the mixed-state
/// `p̃₀ = (1 − c)/2 + c p₀` and attenuating the detected-electron
/// information `F` by `4 c² p₀ (1 − p₀) / (1 − c² (1 − 2 p₀)²)`.
/// `m = 0` reduces to [`fisher_nonideal`]; `g = π` with any loss gives 0
/// (one loss kills the coherence entirely).
///
/// # Errors
///
/// Same domain as [`fisher_nonideal`].
pub fn fisher_lossy_mixed(n_detected: u64, m_lost: u64, g: f64, phi: f64) -> Result<f64> {
    let f = fisher_nonideal(n_detected, g, phi)?;
    if m_lost == 0 {
        return Ok(f);
    }
    if f == 0.0 {
        return Ok(0.0);
    }
    let p0 = p0_nonideal(n_detected, g, phi)?;
    // cos(π/2) rounds to ~6e-17 in binary64; snap the boundary so the
    // maximal-coupling loss kills the information exactly.
    let cg = if g == std::f64::consts::PI { 0.0 } else { (0.5 * g).cos() };
    let c = cg.powi(m_lost as i32);
    let den = 1.0 - c * c * (1.0 - 2.0 * p0).powi(2);
    if den == 0.0 {
        return Ok(0.0);
    }
    Ok(f * 4.0 * c * c * p0 * (1.0 - p0) / den)
}
