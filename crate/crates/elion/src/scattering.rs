//! Transverse scattering of a fast electron on the screened ion potential:
//! the Gaussian-averaged scattering element, its phase shift, and the
//! probability that the electron leaves the coherent (unscattered) beam.
//!
//! The central object is the complex element
//! `Σ_a(b) = Γ(1 − i/v) a^{−2i/v} M(i/v, 1, −b²/a²)`,
//! the average of the eikonal phase factor `|x|^{−2i/v}` over a normalized
//! Gaussian of width `a` centered a distance `b` from the ion. Its argument
//! is the imprinted phase shift; `1 − |Σ|²` is the probability of incoherent
//! scattering out of the beam mode.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{hyp1f1, ln_gamma, Hyp1F1Params};
use crate::units::{BeamConfig, TrapConfig};

/// Grid unwrapping refuses phase increments whose wrapped magnitude exceeds
/// this guard band (conservatively below π, where unwrapping becomes
/// ambiguous).
pub const UNWRAP_GUARD_RAD: f64 = 2.8;

/// Gaussian-averaged scattering element `Σ_width(offset)` for electron speed
/// `v_el` (atomic units throughout).
///
/// # Errors
///
/// [`Error::Domain`] unless `width > 0`, `offset ≥ 0` and `v_el ≥ 1` (beam
/// energies below ~14 eV are outside the fast-beam regime this element
/// models).
pub fn sigma(width: f64, offset: f64, v_el: f64) -> Result<Complex64> {
    validate_geometry(width, offset, v_el)?;
    let a = Complex64::new(0.0, 1.0 / v_el);
    let lg = ln_gamma(Complex64::new(1.0, -1.0 / v_el))?;
    let prefactor = (lg - a * 2.0 * width.ln()).exp();
    let m = hyp1f1(&Hyp1F1Params { a, b: 1.0, z: -(offset / width).powi(2) })?;
    Ok(prefactor * m)
}

/// Principal-branch phase shift `arg Σ_width(offset)` in radians.
pub fn phase_shift(width: f64, offset: f64, v_el: f64) -> Result<f64> {
    Ok(sigma(width, offset, v_el)?.arg())
}

/// Probability that the electron scatters out of the coherent beam mode,
/// `1 − |Σ|²`, clamped to `[0, 1]` against floating-point noise.
pub fn scattering_probability(width: f64, offset: f64, v_el: f64) -> Result<f64> {
    let s = sigma(width, offset, v_el)?;
    Ok((1.0 - s.norm_sqr()).clamp(0.0, 1.0))
}

/// Continuously unwrapped phase shift, anchored at `offset = 0`.
///
/// `arg Σ` only returns the phase modulo 2π; this walks from the beam axis to
/// `offset` in steps small enough that each increment is unambiguous and
/// accumulates them, yielding the physical (monotone, unbounded) phase
/// profile. The value at `offset = 0` is
/// `Im ln Γ(1 − i/v) − (2/v) ln width` (the continuous anchor), so
/// `continuous_phase_shift` and [`phase_shift`] agree modulo 2π everywhere.
pub fn continuous_phase_shift(width: f64, offset: f64, v_el: f64) -> Result<f64> {
    validate_geometry(width, offset, v_el)?;
    let lg = ln_gamma(Complex64::new(1.0, -1.0 / v_el))?;
    let anchor = lg.im - 2.0 / v_el * width.ln();
    Ok(anchor + walk_accumulated_arg(width, offset, v_el)?)
}

/// Accumulated continuous argument of `M(i/v, 1, −(b/a)²)` from the axis out
/// to `offset`, by radial walk.
fn walk_accumulated_arg(width: f64, offset: f64, v_el: f64) -> Result<f64> {
    let mut acc = 0.0;
    let mut prev_arg = 0.0; // M = 1 on the axis
    let mut b = 0.0;
    while b < offset {
        // Linear steps of width/8 out to one width, then geometric growth:
        // the far-field phase slope is −(2/v) per e-fold of offset, so a
        // 12.5% step changes the phase by ≲ 0.24 rad — far inside the guard.
        let step = if b < width { width / 8.0 } else { b * 0.125 };
        b = (b + step).min(offset);
        let m = hyp1f1(&Hyp1F1Params {
            a: Complex64::new(0.0, 1.0 / v_el),
            b: 1.0,
            z: -(b / width).powi(2),
        })?;
        let arg = m.arg();
        let inc = wrap_to_pi(arg - prev_arg);
        debug_assert!(inc.abs() < UNWRAP_GUARD_RAD, "internal walk step too coarse");
        acc += inc;
        prev_arg = arg;
    }
    Ok(acc)
}

/// One row of a phase profile: offset from the beam axis, unwrapped phase
/// relative to the on-axis phase, and scattering probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    /// Transverse offset in atomic units.
    pub offset: f64,
    /// `Δφ(offset) − Δφ(0)`, continuously unwrapped (0 at zero offset).
    pub phase_minus_axis: f64,
    /// `1 − |Σ|²` at this offset.
    pub scattering_probability: f64,
}

/// Unwrapped phase profile and scattering probability over a radial grid of
/// offsets (atomic units).
///
/// The grid must be finite, non-negative and strictly increasing. The first
/// point is reached by an internal fine-stepped walk from the axis; between
/// grid points the principal-branch increments are unwrapped directly, so the
/// caller's grid must be fine enough that true increments stay below
/// [`UNWRAP_GUARD_RAD`].
///
/// # Errors
///
/// [`Error::Domain`] for an invalid grid; [`Error::Unwrap`] when adjacent
/// grid points produce a phase increment inside the ambiguous band, meaning
/// the grid is too coarse to unwrap reliably.
pub fn phase_profile(width: f64, v_el: f64, offsets: &[f64]) -> Result<Vec<PhasePoint>> {
    if offsets.is_empty() {
        return Err(Error::Domain("phase_profile: empty offset grid".into()));
    }
    for pair in offsets.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::Domain(format!(
                "phase_profile: offsets must be strictly increasing ({} then {})",
                pair[0], pair[1]
            )));
        }
    }
    validate_geometry(width, *offsets.last().expect("non-empty"), v_el)?;
    if offsets[0] < 0.0 {
        return Err(Error::Domain(format!(
            "phase_profile: negative offset {}",
            offsets[0]
        )));
    }

    let mut out = Vec::with_capacity(offsets.len());
    // Relative-to-axis phase at the first grid point, via the fine walk.
    let mut acc = walk_accumulated_arg(width, offsets[0], v_el)?;
    let mut prev_arg = {
        let s = sigma(width, offsets[0], v_el)?;
        out.push(PhasePoint {
            offset: offsets[0],
            phase_minus_axis: acc,
            scattering_probability: (1.0 - s.norm_sqr()).clamp(0.0, 1.0),
        });
        hyp1f1(&Hyp1F1Params {
            a: Complex64::new(0.0, 1.0 / v_el),
            b: 1.0,
            z: -(offsets[0] / width).powi(2),
        })?
        .arg()
    };
    for pair in offsets.windows(2) {
        let (left, right) = (pair[0], pair[1]);
        let s = sigma(width, right, v_el)?;
        let arg = hyp1f1(&Hyp1F1Params {
            a: Complex64::new(0.0, 1.0 / v_el),
            b: 1.0,
            z: -(right / width).powi(2),
        })?
        .arg();
        let inc = wrap_to_pi(arg - prev_arg);
        if inc.abs() > UNWRAP_GUARD_RAD {
            return Err(Error::Unwrap { left, right, step: inc });
        }
        acc += inc;
        prev_arg = arg;
        out.push(PhasePoint {
            offset: right,
            phase_minus_axis: acc,
            scattering_probability: (1.0 - s.norm_sqr()).clamp(0.0, 1.0),
        });
    }
    Ok(out)
}

/// Effective Gaussian width seen by the scattering element when a beam of
/// spot width `δ` probes an ion whose motional ground state has width
/// `R0/√2`: the two Gaussians convolve to `√(R0² + 2δ²)`.
pub fn effective_width(beam: &BeamConfig, trap: &TrapConfig) -> f64 {
    let r0 = trap.r0_au();
    let delta = beam.spot_width;
    (r0 * r0 + 2.0 * delta * delta).sqrt()
}

/// Scattering element and derived quantities for a concrete beam/trap pair
/// and an ion displaced by `√2 R0 · displacement` from the trap center
/// (dimensionless displacement, one entry per transverse axis).
#[derive(Clone, Copy, Debug)]
pub struct ScatterElement {
    /// The complex element `Σ`.
    pub element: Complex64,
    /// Principal-branch phase shift (radians).
    pub phase_shift: f64,
    /// `1 − |Σ|²`.
    pub scattering_probability: f64,
    /// Distance between the beam focus and the displaced ion (atomic units).
    pub impact_parameter: f64,
    /// Effective Gaussian width used (atomic units).
    pub effective_width: f64,
}

/// Evaluate the scattering element for a beam focused at
/// [`BeamConfig::focus`] and an ion coherently displaced by `displacement`
/// (in units of `√2 R0` per axis).
pub fn scatter(
    beam: &BeamConfig,
    trap: &TrapConfig,
    displacement: [f64; 2],
) -> Result<ScatterElement> {
    let r0 = trap.r0_au();
    let center = [
        std::f64::consts::SQRT_2 * r0 * displacement[0],
        std::f64::consts::SQRT_2 * r0 * displacement[1],
    ];
    let impact = ((beam.focus[0] - center[0]).powi(2) + (beam.focus[1] - center[1]).powi(2)).sqrt();
    let width = effective_width(beam, trap);
    let element = sigma(width, impact, beam.velocity_au())?;
    Ok(ScatterElement {
        element,
        phase_shift: element.arg(),
        scattering_probability: (1.0 - element.norm_sqr()).clamp(0.0, 1.0),
        impact_parameter: impact,
        effective_width: width,
    })
}

fn validate_geometry(width: f64, offset: f64, v_el: f64) -> Result<()> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::Domain(format!("scattering: width {width} must be positive")));
    }
    if !(offset >= 0.0) || !offset.is_finite() {
        return Err(Error::Domain(format!(
            "scattering: offset {offset} must be non-negative"
        )));
    }
    if !(v_el >= 1.0) || !v_el.is_finite() {
        return Err(Error::Domain(format!(
            "scattering: electron speed {v_el} a.u. below the fast-beam domain (v ≥ 1)"
        )));
    }
    Ok(())
}

/// Wrap an angle to `(−π, π]`.
pub(crate) fn wrap_to_pi(x: f64) -> f64 {
    let w = x - std::f64::consts::TAU * (x / std::f64::consts::TAU).round();
    if w <= -std::f64::consts::PI {
        w + std::f64::consts::TAU
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const V100: f64 = 2.7106655085157323; // 100 eV beam speed, atomic units

    #[test]
    fn on_axis_element_matches_closed_form_modulus() {
        // |Σ(0)|² = (π/v)/sinh(π/v) exactly; frozen value for 100 eV.
        let s = sigma(1.0, 0.0, V100).unwrap();
        let x = std::f64::consts::PI / V100;
        assert_relative_eq!(s.norm_sqr(), x / x.sinh(), max_relative = 1e-13);
        let p = scattering_probability(1.0, 0.0, V100).unwrap();
        assert_relative_eq!(p, 0.1931551795685775, max_relative = 1e-12);
    }

    #[test]
    fn element_matches_frozen_references() {
        let cases = [
            (1.0, 1.3, 0.90458169724196992, -0.2164623269336221),
            (0.7, 3.1, 0.66646864643853938, -0.73598312107836706),
        ];
        for &(w, b, re, im) in &cases {
            let s = sigma(w, b, V100).unwrap();
            let want = Complex64::new(re, im);
            assert!((s - want).norm() < 1e-12 * want.norm(), "w={w} b={b}: {s} vs {want}");
        }
    }

    #[test]
    fn far_field_phase_slope_is_minus_two_over_v() {
        // One e-fold deep in the tail changes the unwrapped phase by −2/v.
        for &v in &[V100, 8.560575676936474] {
            let b1 = 20.0;
            let b2 = b1 * std::f64::consts::E;
            let p1 = continuous_phase_shift(1.0, b1, v).unwrap();
            let p2 = continuous_phase_shift(1.0, b2, v).unwrap();
            assert!(
                ((p2 - p1) + 2.0 / v).abs() < 2e-3,
                "v = {v}: slope {} vs {}",
                p2 - p1,
                -2.0 / v
            );
        }
    }

    #[test]
    fn far_field_scattering_probability_tail() {
        // Leading tail: P ≈ 2/(v² s) · (1 + (1/2 − 1/v²)/s), s = (b/a)².
        let v = V100;
        let s_val: f64 = 100.0;
        let p = scattering_probability(1.0, s_val.sqrt(), v).unwrap();
        let want = 2.0 / (v * v * s_val) * (1.0 + (0.5 - 1.0 / (v * v)) / s_val);
        assert_relative_eq!(p, want, max_relative = 3e-4);
    }

    #[test]
    fn profile_is_anchored_at_zero_and_consistent_with_direct_walk() {
        let offsets: Vec<f64> = (0..120).map(|i| i as f64 * 0.05).collect();
        let prof = phase_profile(1.0, V100, &offsets).unwrap();
        assert_eq!(prof[0].offset, 0.0);
        assert_eq!(prof[0].phase_minus_axis, 0.0);
        // Spot-check interior points against independent from-axis walks.
        for &i in &[13usize, 57, 119] {
            let direct = walk_accumulated_arg(1.0, offsets[i], V100).unwrap();
            assert!(
                (prof[i].phase_minus_axis - direct).abs() < 1e-9,
                "i = {i}: {} vs {direct}",
                prof[i].phase_minus_axis
            );
        }
        // Monotone phase drop.
        for pair in prof.windows(2) {
            assert!(pair[1].phase_minus_axis < pair[0].phase_minus_axis + 1e-12);
        }
    }

    #[test]
    fn coarse_grid_in_the_ambiguous_band_is_refused() {
        // Between offsets 3 and 13.45 at v = 1 the true increment is ≈ −3.0,
        // wrapped well past the guard band.
        match phase_profile(1.0, 1.0, &[3.0, 13.45]) {
            Err(Error::Unwrap { left, right, step }) => {
                assert_eq!(left, 3.0);
                assert_eq!(right, 13.45);
                assert!(step.abs() > UNWRAP_GUARD_RAD);
            }
            other => panic!("expected unwrap refusal, got {other:?}"),
        }
    }

    #[test]
    fn invalid_grids_and_geometry_are_rejected() {
        assert!(phase_profile(1.0, V100, &[]).is_err());
        assert!(phase_profile(1.0, V100, &[0.0, 0.0]).is_err());
        assert!(phase_profile(1.0, V100, &[1.0, 0.5]).is_err());
        assert!(phase_profile(1.0, V100, &[-0.5, 0.5]).is_err());
        assert!(sigma(0.0, 1.0, V100).is_err());
        assert!(sigma(1.0, -1.0, V100).is_err());
        assert!(sigma(1.0, 1.0, 0.5).is_err());
        assert!(sigma(f64::NAN, 1.0, V100).is_err());
    }

    #[test]
    fn scatter_composes_beam_and_trap_geometry() {
        let trap = TrapConfig::ca40(0.5).unwrap();
        let beam = BeamConfig::new(100.0, [0.0, 0.0], 0.0, 0.0).unwrap();
        let r0 = trap.r0_au();
        let el = scatter(&beam, &trap, [1.0, 0.0]).unwrap();
        assert_relative_eq!(el.impact_parameter, std::f64::consts::SQRT_2 * r0, max_relative = 1e-14);
        assert_relative_eq!(el.effective_width, r0, max_relative = 1e-14);
        let direct = sigma(r0, std::f64::consts::SQRT_2 * r0, V100).unwrap();
        assert!((el.element - direct).norm() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Continuous and principal phases agree modulo 2π.
        #[test]
        fn continuous_phase_equals_principal_mod_two_pi(
            v in 1.0f64..40.0,
            b in 0.0f64..18.0,
            w in 0.4f64..2.5,
        ) {
            let cont = continuous_phase_shift(w, b, v).unwrap();
            let principal = phase_shift(w, b, v).unwrap();
            prop_assert!(wrap_to_pi(cont - principal).abs() < 1e-8,
                "cont {cont} vs principal {principal}");
        }

        /// The element never exceeds unit modulus and the scattering
        /// probability decreases away from the axis.
        #[test]
        fn unitarity_and_radial_monotonicity(
            v in 1.0f64..40.0,
            w in 0.4f64..2.5,
        ) {
            let mut prev = f64::INFINITY;
            for i in 0..24 {
                let b = w * 0.8 * i as f64;
                let s = sigma(w, b, v).unwrap();
                prop_assert!(s.norm() <= 1.0 + 1e-12);
                let p = 1.0 - s.norm_sqr();
                prop_assert!(p <= prev + 1e-10, "p grew radially: {p} after {prev}");
                prev = p;
            }
        }
    }
}
