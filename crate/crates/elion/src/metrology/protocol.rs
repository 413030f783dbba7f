//! Repeated-probe phase estimation on a single ion qubit.
//!
//! Each electron runs through a two-path interferometer (signal path `s`,
//! reference path `i`) wrapped around the ion:
//!
//! 1. prepared in `(|s⟩ + |i⟩)/√2`;
//! 2. on path `i` the ion picks up `exp(i (g/2) σ_x)` (eigenphases
//!    `e^{±ig/2}` on `|±⟩`);
//! 3. the paths interfere on the beam splitter `B = [[1, −i], [1, i]]/√2`;
//! 4. the specimen imprints `e^{iφ}` on path `s`;
//! 5. a transverse-momentum detection projects the electron with the Kraus
//!    operator `(e^{−iξ}⟨s| + ⟨i|)/√2`, where the outcome enters only
//!    through the path-phase difference `ξ`;
//! 6. the measurement-dependent rotation `exp(i h(g, ξ, φ̂) σ_x)` undoes the
//!    outcome dependence — exactly, for any `ξ`, because the Kraus operator
//!    is proportional to a unitary on the qubit.
//!
//! A detected electron therefore rotates the qubit coherence phase by
//! `2θ`, `θ = arg(cos(φ/2) + e^{ig/2} sin(φ/2))` ([`rotation_angle`]); a
//! lost (undetected) electron is traced out and, after the deterministic
//! `exp(−i (g/4) σ_x)` correction, multiplies the coherence by `cos(g/2)`
//! ([`electron_loss_map`]). All closed forms in this module and in
//! [`fisher`](crate::metrology::fisher) follow from those two maps; the
//! simulation here implements the literal 4×4 density-matrix chain instead,
//! so the closed forms are validated against an independent code path.
//!
//! Basis conventions: ion index 0 is `|+⟩`, 1 is `|−⟩` (`σ_x` eigenbasis);
//! electron path index 0 is `s`, 1 is `i`; joint index `2·path + ion`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::specfun::ln_gamma;

/// Trace below which a momentum outcome is considered impossible.
const TRACE_FLOOR: f64 = 1e-14;
/// Tolerance for Hermiticity / trace / positivity validation.
const DENSITY_TOL: f64 = 1e-12;

type Mat2 = [[Complex64; 2]; 2];
type Mat4 = [[Complex64; 4]; 4];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Ion qubit density matrix in the `σ_x` eigenbasis `{|+⟩, |−⟩}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IonQubitDensity {
    mat: Mat2,
}

impl IonQubitDensity {
    /// Validating constructor: Hermitian and unit trace to `1e-12`,
    /// eigenvalues no lower than `−1e-12`.
    pub fn new(mat: Mat2) -> Result<Self> {
        for row in &mat {
            for entry in row {
                if !entry.is_finite() {
                    return Err(Error::Domain("density: non-finite entry".into()));
                }
            }
        }
        if (mat[0][1] - mat[1][0].conj()).norm() > DENSITY_TOL
            || mat[0][0].im.abs() > DENSITY_TOL
            || mat[1][1].im.abs() > DENSITY_TOL
        {
            return Err(Error::Domain("density: not Hermitian within 1e-12".into()));
        }
        let trace = mat[0][0].re + mat[1][1].re;
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(Error::Domain(format!("density: trace {trace} is not 1 within 1e-12")));
        }
        // Hermitian 2×2 eigenvalues: (t ± √(t² − 4Δ))/2.
        let det = (mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]).re;
        let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
        if (trace - disc) / 2.0 < -DENSITY_TOL {
            return Err(Error::Domain(format!(
                "density: negative eigenvalue {}",
                (trace - disc) / 2.0
            )));
        }
        Ok(IonQubitDensity { mat })
    }

    /// The protocol's initial family: diagonal `1/2`, off-diagonal
    /// `(s/2) e^{iβ}` — coherence magnitude `s ∈ [0, 1]` at phase `β`.
    pub fn from_coherence(beta: f64, coherence: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&coherence) || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "density: coherence {coherence} outside [0, 1] or non-finite phase {beta}"
            )));
        }
        let off = 0.5 * coherence * c(0.0, beta).exp();
        IonQubitDensity::new([[c(0.5, 0.0), off], [off.conj(), c(0.5, 0.0)]])
    }

    /// Matrix in the `{|+⟩, |−⟩}` basis, row major.
    pub fn matrix(&self) -> Mat2 {
        self.mat
    }

    /// Off-diagonal element `ρ_{+−}` (the coherence is `2 ρ_{+−}`).
    pub fn off_diagonal(&self) -> Complex64 {
        self.mat[0][1]
    }

    /// Probability of measuring the computational `|0⟩ = (|+⟩+|−⟩)/√2`.
    pub fn p0(&self) -> f64 {
        (0.5 + self.mat[0][1].re).clamp(0.0, 1.0)
    }
}

/// Full configuration of one estimation run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolConfig {
    /// Number of electrons sent (0 allowed: no evolution).
    pub n_electrons: u64,
    /// Per-electron loss probability `ε ∈ [0, 1]`.
    pub loss_prob: f64,
    /// Coupling phase `g ∈ [0, π]` per electron.
    pub coupling_g: f64,
    /// True specimen phase `φ ∈ [0, π)`.
    pub true_phase: f64,
    /// Initial coherence phase `β₀`.
    pub initial_beta: f64,
    /// Initial coherence magnitude `s ∈ [0, 1]`.
    pub initial_coherence: f64,
    /// Master RNG seed (momentum outcomes and losses).
    pub seed: u64,
    /// Phase estimate `φ̂` used inside the correction; `None` means the true
    /// phase (narrow-prior assumption).
    pub phase_estimate: Option<f64>,
}

impl ProtocolConfig {
    /// Ideal-leaning defaults: no loss, full coupling `g = π`, coherence 1.
    pub fn new(n_electrons: u64, loss_prob: f64, coupling_g: f64, true_phase: f64) -> Self {
        ProtocolConfig {
            n_electrons,
            loss_prob,
            coupling_g,
            true_phase,
            initial_beta: 0.0,
            initial_coherence: 1.0,
            seed: 0,
            phase_estimate: None,
        }
    }

    /// Validate all fields.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] describing the first violated bound.
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.loss_prob) {
            return Err(Error::Domain(format!(
                "protocol: loss probability {} outside [0, 1]",
                self.loss_prob
            )));
        }
        if !self.coupling_g.is_finite()
            || !(0.0..=std::f64::consts::PI).contains(&self.coupling_g)
        {
            return Err(Error::Domain(format!(
                "protocol: coupling {} outside [0, π]",
                self.coupling_g
            )));
        }
        if !self.true_phase.is_finite()
            || !(0.0..std::f64::consts::PI).contains(&self.true_phase)
        {
            return Err(Error::Domain(format!(
                "protocol: specimen phase {} outside [0, π)",
                self.true_phase
            )));
        }
        if !self.initial_beta.is_finite() {
            return Err(Error::Domain("protocol: non-finite initial phase".into()));
        }
        if !(0.0..=1.0).contains(&self.initial_coherence) {
            return Err(Error::Domain(format!(
                "protocol: initial coherence {} outside [0, 1]",
                self.initial_coherence
            )));
        }
        if let Some(est) = self.phase_estimate {
            if !est.is_finite() {
                return Err(Error::Domain("protocol: non-finite phase estimate".into()));
            }
        }
        Ok(())
    }

    /// The `φ̂` fed to the correction angle.
    pub fn effective_estimate(&self) -> f64 {
        self.phase_estimate.unwrap_or(self.true_phase)
    }
}

/// Qubit rotation angle `θ = arg(cos(φ/2) + e^{ig/2} sin(φ/2))` imparted by
/// one detected electron; the coherence phase advances by `2θ`.
pub fn rotation_angle(g: f64, phi: f64) -> f64 {
    let (s, cph) = ((0.5 * phi).sin(), (0.5 * phi).cos());
    f64::atan2((0.5 * g).sin() * s, cph + (0.5 * g).cos() * s)
}

/// Measurement probability of `|0⟩` after `n` detected electrons at coupling
/// `g` and specimen phase `φ`, starting from the coherent `β₀ = 0` state:
/// `p₀ = cos²(n θ)`. Reduces to `cos²(n φ/2)` at `g = π` and to 1 at `g = 0`
/// (no evolution) or `φ = 0`.
///
/// # Errors
///
/// [`Error::Domain`] unless `g ∈ [0, π]` and `φ ∈ [0, π)`.
pub fn p0_nonideal(n: u64, g: f64, phi: f64) -> Result<f64> {
    if !g.is_finite() || !(0.0..=std::f64::consts::PI).contains(&g) {
        return Err(Error::Domain(format!("p0: coupling {g} outside [0, π]")));
    }
    if !phi.is_finite() || !(0.0..std::f64::consts::PI).contains(&phi) {
        return Err(Error::Domain(format!("p0: phase {phi} outside [0, π)")));
    }
    Ok((n as f64 * rotation_angle(g, phi)).cos().powi(2))
}

/// Correction angle `h` for momentum outcome `ξ`: applying
/// `exp(i h σ_x)` after the detection Kraus operator restores the `ξ = 0`
/// post-measurement state exactly (up to global phase).
///
/// `h = atan2(sin(g/2) sin(ξ/2), cos(ξ/2)(cos(g/2) sin φ̂ + 1) − cos(g/2) sin(ξ/2) cos φ̂)`
///
/// with `h(0, ·, ·) = 0` (uncoupled electrons need no correction) and
/// `h(π, ξ, ·) = ξ/2`. The two-argument arctangent keeps the branch
/// continuous across quadrants.
///
/// # Errors
///
/// [`Error::Domain`] unless `g ∈ [0, π]` and `ξ`, `φ̂` are finite.
pub fn correction_angle(g: f64, xi: f64, phi_estimate: f64) -> Result<f64> {
    if !g.is_finite() || !(0.0..=std::f64::consts::PI).contains(&g) {
        return Err(Error::Domain(format!("correction: coupling {g} outside [0, π]")));
    }
    if !xi.is_finite() || !phi_estimate.is_finite() {
        return Err(Error::Domain("correction: non-finite outcome or estimate".into()));
    }
    if g == 0.0 {
        return Ok(0.0);
    }
    let (hg, hxi) = (0.5 * g, 0.5 * xi);
    let num = hg.sin() * hxi.sin();
    let den = hxi.cos() * (hg.cos() * phi_estimate.sin() + 1.0)
        - hg.cos() * hxi.sin() * phi_estimate.cos();
    Ok(f64::atan2(num, den))
}

fn mat4_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = c(0.0, 0.0);
            for (k, bk) in b.iter().enumerate() {
                acc += a[i][k] * bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn mat4_conjugate(u: &Mat4, rho: &Mat4) -> Mat4 {
    // U ρ U†
    let mut udag = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            udag[i][j] = u[j][i].conj();
        }
    }
    mat4_mul(&mat4_mul(u, rho), &udag)
}

/// One detected electron: the literal interferometer chain conjugating the
/// joint 4×4 density matrix, the momentum Kraus operator at outcome `xi`,
/// renormalization, and the `exp(i h σ_x)` correction with estimate
/// `phi_estimate`. The result is independent of `xi` (the correction is
/// exact), which the tests verify.
///
/// # Errors
///
/// [`Error::Domain`] on invalid `g`/`phi`; [`Error::MeasurementImpossible`]
/// if the outcome has vanishing probability (possible only at `g = 0`, where
/// `ξ = φ + π/2` is a dark fringe).
pub fn detected_electron_map(
    rho: &IonQubitDensity,
    g: f64,
    phi: f64,
    xi: f64,
    phi_estimate: f64,
) -> Result<IonQubitDensity> {
    if !phi.is_finite() {
        return Err(Error::Domain("detected electron: non-finite phase".into()));
    }
    let h = correction_angle(g, xi, phi_estimate)?;
    let ion = rho.matrix();

    // Joint state: electron (|s⟩ + |i⟩)/√2, index 2·path + ion.
    let half = c(0.5, 0.0);
    let mut joint = [[c(0.0, 0.0); 4]; 4];
    for p in 0..2 {
        for q in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    joint[2 * p + a][2 * q + b] = half * ion[a][b];
                }
            }
        }
    }

    // Coupling on path i: diag(1, 1, e^{ig/2}, e^{−ig/2}).
    let mut coupling = [[c(0.0, 0.0); 4]; 4];
    coupling[0][0] = c(1.0, 0.0);
    coupling[1][1] = c(1.0, 0.0);
    coupling[2][2] = c(0.0, 0.5 * g).exp();
    coupling[3][3] = c(0.0, -0.5 * g).exp();
    joint = mat4_conjugate(&coupling, &joint);

    // Beam splitter [[1, −i], [1, i]]/√2 on the path index.
    let r = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mi = c(0.0, -std::f64::consts::FRAC_1_SQRT_2);
    let mut bs = [[c(0.0, 0.0); 4]; 4];
    for ion_idx in 0..2 {
        bs[ion_idx][ion_idx] = r;
        bs[ion_idx][2 + ion_idx] = mi;
        bs[2 + ion_idx][ion_idx] = r;
        bs[2 + ion_idx][2 + ion_idx] = -mi;
    }
    joint = mat4_conjugate(&bs, &joint);

    // Specimen phase on path s.
    let mut specimen = [[c(0.0, 0.0); 4]; 4];
    let eiphi = c(0.0, phi).exp();
    specimen[0][0] = eiphi;
    specimen[1][1] = eiphi;
    specimen[2][2] = c(1.0, 0.0);
    specimen[3][3] = c(1.0, 0.0);
    joint = mat4_conjugate(&specimen, &joint);

    // Momentum Kraus (e^{−iξ}⟨s| + ⟨i|)/√2 contracts the path index.
    let ks = c(0.0, -xi).exp() * c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let ki = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let weights = [ks, ki];
    let mut reduced = [[c(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let mut acc = c(0.0, 0.0);
            for p in 0..2 {
                for q in 0..2 {
                    acc += weights[p] * weights[q].conj() * joint[2 * p + a][2 * q + b];
                }
            }
            reduced[a][b] = acc;
        }
    }
    let trace = reduced[0][0].re + reduced[1][1].re;
    if trace < TRACE_FLOOR {
        return Err(Error::MeasurementImpossible);
    }
    for row in &mut reduced {
        for entry in row.iter_mut() {
            *entry /= trace;
        }
    }

    // Correction exp(i h σ_x) = diag(e^{ih}, e^{−ih}) in the ± basis.
    let (ep, em) = (c(0.0, h).exp(), c(0.0, -h).exp());
    let corrected = [
        [reduced[0][0], reduced[0][1] * ep * ep],
        [reduced[1][0] * em * em, reduced[1][1]],
    ];
    IonQubitDensity::new(corrected)
}

/// One lost electron: the coupling acts, the electron is traced out
/// undetected, and the deterministic `exp(−i (g/4) σ_x)` correction is
/// applied. Net effect: off-diagonal coherence shrinks by exactly
/// `cos(g/2)`, diagonal untouched.
pub fn electron_loss_map(rho: &IonQubitDensity, g: f64) -> Result<IonQubitDensity> {
    if !g.is_finite() || !(0.0..=std::f64::consts::PI).contains(&g) {
        return Err(Error::Domain(format!("loss map: coupling {g} outside [0, π]")));
    }
    let ion = rho.matrix();
    // Trace over the electron after the path-i coupling:
    // ρ ↦ (ρ + D ρ D†)/2 with D = diag(e^{ig/2}, e^{−ig/2}).
    let d = [c(0.0, 0.5 * g).exp(), c(0.0, -0.5 * g).exp()];
    let mut traced = [[c(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            traced[a][b] = 0.5 * (ion[a][b] + d[a] * ion[a][b] * d[b].conj());
        }
    }
    // Correction exp(−i(g/4)σ_x) = diag(e^{−ig/4}, e^{+ig/4}).
    let (ep, em) = (c(0.0, -0.25 * g).exp(), c(0.0, 0.25 * g).exp());
    let corrected = [
        [traced[0][0], traced[0][1] * ep * ep],
        [traced[1][0] * em * em, traced[1][1]],
    ];
    IonQubitDensity::new(corrected)
}

/// Outcome of one full protocol run.
#[derive(Clone, Copy, Debug)]
pub struct ProtocolRun {
    /// Final ion density matrix (σ_x eigenbasis).
    pub density: IonQubitDensity,
    /// Probability of measuring computational `|0⟩`.
    pub p0: f64,
    /// Electrons that reached the detector.
    pub electrons_detected: u64,
    /// Electrons lost before detection.
    pub electrons_lost: u64,
}

pub(crate) fn run_protocol_with_rng<R: Rng>(
    cfg: &ProtocolConfig,
    rng: &mut R,
) -> Result<ProtocolRun> {
    cfg.validate()?;
    let mut rho = IonQubitDensity::from_coherence(cfg.initial_beta, cfg.initial_coherence)?;
    let phi_hat = cfg.effective_estimate();
    let mut lost = 0u64;
    for _ in 0..cfg.n_electrons {
        // Fixed two-draw layout per electron keeps RNG streams aligned
        // across parameter variations (common random numbers).
        let loss_draw: f64 = rng.gen();
        let xi = rng.gen::<f64>() * std::f64::consts::TAU;
        if loss_draw < cfg.loss_prob {
            rho = electron_loss_map(&rho, cfg.coupling_g)?;
            lost += 1;
        } else {
            rho = detected_electron_map(&rho, cfg.coupling_g, cfg.true_phase, xi, phi_hat)?;
        }
    }
    Ok(ProtocolRun {
        density: rho,
        p0: rho.p0(),
        electrons_detected: cfg.n_electrons - lost,
        electrons_lost: lost,
    })
}

/// Run the full protocol once, deterministically from `cfg.seed`: per
/// electron a Bernoulli loss draw and a uniform momentum outcome
/// `ξ ∈ [0, 2π)`, then the corresponding density map. With `loss_prob = 0`
/// the result is outcome-independent and this is an exact sequential
/// simulation.
pub fn run_protocol(cfg: &ProtocolConfig) -> Result<ProtocolRun> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    run_protocol_with_rng(cfg, &mut rng)
}

/// The lossless maximal-coupling special case: requires `g = π` and
/// `loss_prob = 0`, and returns the final pure-state density
/// `(e^{i(β₀+nφ)}|+⟩ + |−⟩)/√2` (for unit initial coherence).
///
/// # Errors
///
/// [`Error::Domain`] if `cfg` deviates from the ideal point.
pub fn run_ideal_protocol(cfg: &ProtocolConfig) -> Result<IonQubitDensity> {
    if (cfg.coupling_g - std::f64::consts::PI).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "ideal protocol requires g = π, got {}",
            cfg.coupling_g
        )));
    }
    if cfg.loss_prob != 0.0 {
        return Err(Error::Domain(format!(
            "ideal protocol requires zero loss, got {}",
            cfg.loss_prob
        )));
    }
    Ok(run_protocol(cfg)?.density)
}

/// Expected `|0⟩` probability with losses marginalized: the loss count is
/// binomial, `m` losses shrink the coherence by `cos^m(g/2)` and leave
/// `n − m` detected rotations, so
///
/// `E[p₀] = Σ_m C(n,m) ε^m (1−ε)^{n−m} · ½(1 + s·cos^m(g/2)·cos(β₀ + 2(n−m)θ))`.
pub fn expected_p0(cfg: &ProtocolConfig) -> Result<f64> {
    cfg.validate()?;
    let n = cfg.n_electrons;
    let theta = rotation_angle(cfg.coupling_g, cfg.true_phase);
    let cg = (0.5 * cfg.coupling_g).cos();
    let term = |m: u64| -> f64 {
        let detected = (n - m) as f64;
        0.5 * (1.0
            + cfg.initial_coherence
                * cg.powi(m as i32)
                * (cfg.initial_beta + 2.0 * detected * theta).cos())
    };
    let eps = cfg.loss_prob;
    if eps == 0.0 {
        return Ok(term(0));
    }
    if eps == 1.0 {
        return Ok(term(n));
    }
    // ln C(n, m) via the real log-gamma to stay stable for large n.
    let lnfact = |k: u64| -> f64 {
        ln_gamma(Complex64::new(k as f64 + 1.0, 0.0))
            .expect("log-gamma is finite on positive reals")
            .re
    };
    let ln_survive = (-eps).ln_1p();
    let mut total = 0.0;
    for m in 0..=n {
        let ln_weight = lnfact(n) - lnfact(m) - lnfact(n - m)
            + m as f64 * eps.ln()
            + (n - m) as f64 * ln_survive;
        total += ln_weight.exp() * term(m);
    }
    Ok(total)
}
