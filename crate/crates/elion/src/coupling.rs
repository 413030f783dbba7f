//! Phase coupling between one passing electron and an ion motional qubit.
//!
//! The qubit is an even/odd cat built on coherent states displaced by
//! `±√2 R0 α` in the trap plane. A point-focused electron picks up a
//! different scattering phase on each displaced component; the difference `g`
//! acts as a `σ_x` rotation on the qubit and the mean `κ` as a global phase:
//!
//! `U = e^{iκ} exp(i (g/2) σ_x)`
//!
//! Discarding the (small) modulus of the scattering element makes `U` exactly
//! unitary; the discarded piece is the scattering loss quantified in
//! [`scattering`](crate::scattering) and cross-checked against the full
//! 2×2 amplitude matrix by the
//! [`coherent_sandwich`](crate::oracle::convolution::coherent_sandwich)
//! oracle.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scattering::{continuous_phase_shift, effective_width};
use crate::units::{BeamConfig, TrapConfig};

/// Motional cat-state qubit: basis states are coherent states displaced by
/// `±√2 R0 · alpha` (dimensionless per-axis displacement, real).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatState {
    /// Dimensionless displacement amplitude per transverse axis.
    pub alpha: [f64; 2],
}

impl CatState {
    /// Validating constructor (components must be finite).
    pub fn new(alpha: [f64; 2]) -> Result<Self> {
        if !alpha[0].is_finite() || !alpha[1].is_finite() {
            return Err(Error::Domain(format!(
                "cat state displacement must be finite, got [{}, {}]",
                alpha[0], alpha[1]
            )));
        }
        Ok(CatState { alpha })
    }

    /// Euclidean magnitude of the displacement vector.
    pub fn magnitude(&self) -> f64 {
        (self.alpha[0] * self.alpha[0] + self.alpha[1] * self.alpha[1]).sqrt()
    }
}

/// Impact parameters seen by the two displaced components: the distance from
/// the beam focus to `±√2 R0 · alpha · cos(arrival_phase)`.
fn component_offsets(beam: &BeamConfig, trap: &TrapConfig, cat: &CatState) -> ([f64; 2], f64, f64) {
    let scale = std::f64::consts::SQRT_2 * trap.r0_au() * beam.arrival_phase.cos();
    let center = [scale * cat.alpha[0], scale * cat.alpha[1]];
    let b_minus = ((beam.focus[0] - center[0]).powi(2) + (beam.focus[1] - center[1]).powi(2)).sqrt();
    let b_plus = ((beam.focus[0] + center[0]).powi(2) + (beam.focus[1] + center[1]).powi(2)).sqrt();
    (center, b_minus, b_plus)
}

/// Differential phase `g = Δφ(b₋) − Δφ(b₊)` imprinted on the qubit by one
/// electron, using the continuously unwrapped phase profile (so `g` is
/// smooth in the geometry, not confined to a 2π window).
pub fn coupling_phase(beam: &BeamConfig, trap: &TrapConfig, cat: &CatState) -> Result<f64> {
    let (_, b_minus, b_plus) = component_offsets(beam, trap, cat);
    let width = effective_width(beam, trap);
    let v = beam.velocity_au();
    Ok(continuous_phase_shift(width, b_minus, v)? - continuous_phase_shift(width, b_plus, v)?)
}

/// Mean phase `κ = (Δφ(b₋) + Δφ(b₊)) / 2`, the qubit-independent global
/// phase accumulated per electron.
pub fn global_phase(beam: &BeamConfig, trap: &TrapConfig, cat: &CatState) -> Result<f64> {
    let (_, b_minus, b_plus) = component_offsets(beam, trap, cat);
    let width = effective_width(beam, trap);
    let v = beam.velocity_au();
    Ok(0.5 * (continuous_phase_shift(width, b_minus, v)? + continuous_phase_shift(width, b_plus, v)?))
}

/// Single-qubit unitary induced on the cat qubit by electrons with total
/// differential phase `g` and total mean phase `kappa`.
#[derive(Clone, Copy, Debug)]
pub struct QubitUnitary {
    mat: [[Complex64; 2]; 2],
}

/// `e^{iκ} exp(i (g/2) σ_x)` in the computational (cat parity) basis.
pub fn electron_qubit_unitary(g: f64, kappa: f64) -> QubitUnitary {
    let phase = Complex64::new(0.0, kappa).exp();
    let c = Complex64::new((0.5 * g).cos(), 0.0);
    let is = Complex64::new(0.0, (0.5 * g).sin());
    QubitUnitary { mat: [[phase * c, phase * is], [phase * is, phase * c]] }
}

impl QubitUnitary {
    /// Matrix in the computational basis, row major.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.mat
    }

    /// Probability that the unitary flips the computational state,
    /// `|U₁₀|² = sin²(g/2)`.
    pub fn flip_probability(&self) -> f64 {
        self.mat[1][0].norm_sqr()
    }

    /// Apply to a state vector `[c₀, c₁]`.
    pub fn apply(&self, state: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.mat[0][0] * state[0] + self.mat[0][1] * state[1],
            self.mat[1][0] * state[0] + self.mat[1][1] * state[1],
        ]
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &QubitUnitary) -> QubitUnitary {
        let a = &self.mat;
        let b = &other.mat;
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        QubitUnitary { mat: m }
    }
}

/// Accumulated `(g, κ)` for a train of electrons: the per-electron rotations
/// commute (all are `σ_x` rotations times phases), so the totals are plain
/// sums.
///
/// # Errors
///
/// [`Error::Domain`] if the slices differ in length.
pub fn multi_electron_phase(gs: &[f64], kappas: &[f64]) -> Result<(f64, f64)> {
    if gs.len() != kappas.len() {
        return Err(Error::Domain(format!(
            "multi_electron_phase: {} differential vs {} mean phases",
            gs.len(),
            kappas.len()
        )));
    }
    Ok((gs.iter().sum(), kappas.iter().sum()))
}

/// The same single-electron coupling acting on one path branch of an
/// `n_paths`-way superposed electron addressing one qubit of a register; the
/// branch picked up by the electron gets [`electron_qubit_unitary`], the
/// rest are untouched. Application to register states lives in
/// [`metrology`](crate::metrology).
#[derive(Clone, Copy, Debug)]
pub struct ManyQubitOperator {
    /// Number of beam paths (= register size).
    pub n_paths: usize,
    /// Differential phase per interaction.
    pub g: f64,
    /// Mean phase per interaction.
    pub kappa: f64,
}

/// Validating constructor for [`ManyQubitOperator`].
pub fn many_qubit_operator(n_paths: usize, g: f64, kappa: f64) -> Result<ManyQubitOperator> {
    if n_paths == 0 {
        return Err(Error::Domain("many_qubit_operator: need at least one path".into()));
    }
    if !g.is_finite() || !kappa.is_finite() {
        return Err(Error::Domain("many_qubit_operator: phases must be finite".into()));
    }
    Ok(ManyQubitOperator { n_paths, g, kappa })
}

impl ManyQubitOperator {
    /// The unitary applied on the addressed qubit of the active branch.
    pub fn branch_unitary(&self) -> QubitUnitary {
        electron_qubit_unitary(self.g, self.kappa)
    }
}
