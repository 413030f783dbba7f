//! Principal-branch complex log-gamma via a Lanczos rational approximation
//! with Euler reflection for the left half plane.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `g` parameter of the Lanczos approximation (607/128).
const LANCZOS_G: f64 = 4.742_187_5;

/// Lanczos partial-fraction coefficients for `g = 607/128`, 15 terms
/// (Godfrey's set). Relative error of the rational part is below `1e-14`
/// throughout the right half plane.
const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_092,
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_2,
    -0.491_913_816_097_620_200,
    3.399_464_998_481_188_87e-5,
    4.652_362_892_704_857_57e-5,
    -9.837_447_530_487_956_47e-5,
    1.580_887_032_249_124_89e-4,
    -2.102_644_417_241_048_83e-4,
    2.174_396_181_152_126_43e-4,
    -1.643_181_065_367_638_90e-4,
    8.441_822_398_385_274_33e-5,
    -2.619_083_840_158_140_87e-5,
    3.689_918_265_953_162_27e-6,
];

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_742; // ln(2*pi)/2

/// Natural logarithm of the gamma function for complex argument.
///
/// Uses the 15-term Lanczos sum for `Re z ≥ 1/2` and the Euler reflection
/// formula `ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z)` otherwise. The result
/// always satisfies `exp(ln_gamma(z)) = Γ(z)`; the imaginary part follows the
/// principal branch on the right half plane and may differ from the analytic
/// continuation by a multiple of `2πi` across the reflection seam, which is
/// irrelevant for every caller in this crate (all downstream formulas only
/// exponentiate the result or read it on the right half plane).
///
/// # Errors
///
/// [`Error::GammaPole`] if `z` is zero or a negative integer,
/// [`Error::Domain`] if `z` is not finite.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain("ln_gamma: argument must be finite".into()));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::GammaPole(z.re));
    }
    if z.re >= 0.5 {
        Ok(lanczos_right_half(z))
    } else {
        // Euler reflection: ln Γ(z) = ln π − ln sin(πz) − ln Γ(1 − z).
        let ln_pi = Complex64::new(std::f64::consts::PI.ln(), 0.0);
        Ok(ln_pi - ln_sin_pi(z) - lanczos_right_half(Complex64::new(1.0, 0.0) - z))
    }
}

/// Lanczos evaluation, valid for `Re z ≥ 1/2`.
fn lanczos_right_half(z: Complex64) -> Complex64 {
    // Series is written for Γ(z) with the argument shifted by one:
    // Γ(z) = sqrt(2π) (t/e)^(z-1/2) t^... ; use the standard form
    // ln Γ(z) = (z - 1/2) ln t − t + ln(sqrt(2π) A(z)), t = z + g − 1/2.
    let zm1 = z - Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (k, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += Complex64::new(c, 0.0) / (zm1 + Complex64::new(k as f64, 0.0));
    }
    let t = zm1 + Complex64::new(LANCZOS_G + 0.5, 0.0);
    (zm1 + Complex64::new(0.5, 0.0)) * t.ln() - t + Complex64::new(HALF_LN_TWO_PI, 0.0) + acc.ln()
}

/// `ln sin(πz)` computed without overflow for large `|Im z|` by factoring out
/// the dominant exponential before taking the logarithm.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let w = z * std::f64::consts::PI;
    let i = Complex64::new(0.0, 1.0);
    // sin w = (e^{iw} − e^{−iw}) / (2i); factor out whichever exponential has
    // the larger modulus so the remaining term never overflows.
    if w.im >= 0.0 {
        // |e^{2iw}| ≤ 1: sin w = e^{−iw} (e^{2iw} − 1) / (2i)
        let q = (Complex64::new(0.0, 2.0) * w).exp();
        -i * w + (q - 1.0).ln() - (Complex64::new(0.0, 2.0)).ln()
    } else {
        // |e^{−2iw}| ≤ 1: sin w = e^{iw} (1 − e^{−2iw}) / (2i)
        let q = (Complex64::new(0.0, -2.0) * w).exp();
        i * w + (1.0 - q).ln() - (Complex64::new(0.0, 2.0)).ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent reference: Stirling's series with Bernoulli-number
    /// corrections, after shifting the argument far to the right with the
    /// recurrence Γ(z+1) = zΓ(z). Shares no code or constants with the
    /// Lanczos path.
    fn ln_gamma_stirling(mut z: Complex64) -> Complex64 {
        // B_{2k} / (2k (2k-1)) for k = 1..8
        const STIRLING: [(f64, f64); 8] = [
            (1.0 / 6.0, 2.0),
            (-1.0 / 30.0, 12.0),
            (1.0 / 42.0, 30.0),
            (-1.0 / 30.0, 56.0),
            (5.0 / 66.0, 90.0),
            (-691.0 / 2730.0, 132.0),
            (7.0 / 6.0, 182.0),
            (-3617.0 / 510.0, 240.0),
        ];
        let mut shift = Complex64::new(0.0, 0.0);
        while z.norm() < 36.0 {
            shift += z.ln();
            z += Complex64::new(1.0, 0.0);
        }
        let mut series = Complex64::new(0.0, 0.0);
        let inv2 = 1.0 / (z * z);
        let mut p = 1.0 / z;
        for &(b, d) in &STIRLING {
            series += p * (b / d);
            p *= inv2;
        }
        (z - Complex64::new(0.5, 0.0)) * z.ln() - z + HALF_LN_TWO_PI + series - shift
    }

    #[test]
    fn exact_small_integer_and_half_integer_values() {
        let one = ln_gamma(Complex64::new(1.0, 0.0)).unwrap();
        assert!(one.norm() < 1e-13, "ln_gamma(1) = {one}");
        let two = ln_gamma(Complex64::new(2.0, 0.0)).unwrap();
        assert!(two.norm() < 1e-13, "ln_gamma(2) = {two}");
        let half = ln_gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert_relative_eq!(half.re, 0.5 * std::f64::consts::PI.ln(), max_relative = 1e-14);
        assert!(half.im.abs() < 1e-14);
        let five = ln_gamma(Complex64::new(5.0, 0.0)).unwrap();
        assert_relative_eq!(five.re, 24.0_f64.ln(), max_relative = 1e-14);
    }

    #[test]
    fn matches_stirling_reference_across_the_plane() {
        // Grid over both half planes, avoiding the real-axis poles.
        let res: [f64; 9] = [-8.3, -3.7, -0.6, 0.2, 0.5, 1.0, 2.4, 7.9, 31.0];
        let ims: [f64; 7] = [-14.0, -2.1, -0.37, 0.0, 0.37, 2.1, 14.0];
        for &re in &res {
            for &im in &ims {
                if re < 0.5 && im == 0.0 && (re - re.round()).abs() < 0.05 {
                    continue;
                }
                let z = Complex64::new(re, im);
                let got = ln_gamma(z).unwrap();
                let want = ln_gamma_stirling(z);
                // Branches of the imaginary part may legitimately differ by
                // 2π across the reflection seam; compare Γ itself through a
                // 2πi-periodic distance.
                let diff = got - want;
                let wrapped_im =
                    (diff.im / std::f64::consts::TAU).round() * std::f64::consts::TAU;
                let dist = Complex64::new(diff.re, diff.im - wrapped_im).norm();
                assert!(
                    dist < 1e-11 * (1.0 + want.norm()),
                    "z = {z}: lanczos {got} vs stirling {want}"
                );
            }
        }
    }

    #[test]
    fn recurrence_identity_holds() {
        let pts = [
            Complex64::new(0.3, -1.7),
            Complex64::new(-2.6, 0.4),
            Complex64::new(4.1, 9.0),
            Complex64::new(-0.49, 0.0),
        ];
        for &z in &pts {
            let lhs = ln_gamma(z + Complex64::new(1.0, 0.0)).unwrap();
            let rhs = ln_gamma(z).unwrap();
            let ratio = (lhs - rhs).exp();
            assert!((ratio - z).norm() < 1e-12 * (1.0 + z.norm()), "z = {z}, ratio = {ratio}");
        }
    }

    #[test]
    fn reflection_identity_holds() {
        for &(re, im) in &[(0.2, 0.9), (-1.3, 2.2), (0.45, -0.1), (-6.7, -3.3)] {
            let z = Complex64::new(re, im);
            let sum = ln_gamma(z).unwrap() + ln_gamma(Complex64::new(1.0, 0.0) - z).unwrap();
            let lhs = sum.exp();
            let rhs = Complex64::new(std::f64::consts::PI, 0.0) / (z * std::f64::consts::PI).sin();
            assert!((lhs - rhs).norm() < 1e-11 * rhs.norm(), "z = {z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn gamma_modulus_on_the_line_one_minus_it_matches_closed_form() {
        // |Γ(1 − i/v)|² = (π/v) / sinh(π/v), a closed form independent of the
        // Lanczos machinery.
        for &v in &[1.0, 1.6, 2.7106655085, 8.56, 26.72, 75.1] {
            let lg = ln_gamma(Complex64::new(1.0, -1.0 / v)).unwrap();
            let modulus_sq = (2.0 * lg.re).exp();
            let x = std::f64::consts::PI / v;
            let want = x / x.sinh();
            assert_relative_eq!(modulus_sq, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn poles_and_bad_input_are_rejected() {
        for &re in &[0.0, -1.0, -2.0, -17.0] {
            match ln_gamma(Complex64::new(re, 0.0)) {
                Err(Error::GammaPole(p)) => assert_eq!(p, re),
                other => panic!("expected pole error at {re}, got {other:?}"),
            }
        }
        assert!(ln_gamma(Complex64::new(f64::NAN, 0.0)).is_err());
        assert!(ln_gamma(Complex64::new(0.0, f64::INFINITY)).is_err());
        // Near-pole (but not pole) arguments still evaluate.
        assert!(ln_gamma(Complex64::new(-3.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn large_imaginary_part_does_not_overflow() {
        // Reflection path with |Im z| large enough that sin(πz) overflows if
        // computed naively.
        let z = Complex64::new(-0.5, 400.0);
        let got = ln_gamma(z).unwrap();
        assert!(got.re.is_finite() && got.im.is_finite());
        let want = ln_gamma_stirling(z);
        let diff = got - want;
        let wrapped_im = (diff.im / std::f64::consts::TAU).round() * std::f64::consts::TAU;
        assert!(Complex64::new(diff.re, diff.im - wrapped_im).norm() < 1e-10 * want.norm());
    }
}
