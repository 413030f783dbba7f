//! One-shot phase kickback from a multi-path electron onto a qubit register.
//!
//! An electron prepared in a coherent superposition over `N` focal paths
//! addresses `N` ion qubits: on path `k` the `k`-th qubit receives the
//! rotation `exp(i (g/2) σ_x)`, all others are untouched. The electron then
//! picks up a per-path specimen phase `φ_k`, is detected in a transverse
//! momentum state `p` (projecting each path with `e^{−i p·r_k}`), and the
//! momentum-dependent correction `Π_k exp(i p·r_k |1⟩⟨1|_k)` strips the
//! measurement phases from the flipped components. The surviving register
//! state holds the path phases coherently — one electron, `N` qubit phases.
//!
//! Register indexing: qubit `k` (1-based path index) occupies bit `N − k` of
//! the basis-state index, so path 1 maps to the most significant bit and
//! `|10…0⟩` (path 1 flipped) is index `2^(N−1)`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest register this module will allocate (2^16 amplitudes).
const MAX_PATHS: usize = 16;
/// Norm tolerance for state validation.
const NORM_TOL: f64 = 1e-12;

/// One path branch of the joint electron–register state: the electron is on
/// path `path_index` with amplitude `weight`, and the register component
/// entangled with that branch is `register`.
#[derive(Clone, Debug, PartialEq)]
pub struct KickbackBranch {
    /// 1-based electron path index.
    pub path_index: usize,
    /// Complex amplitude of this electron path.
    pub weight: Complex64,
    /// Register amplitudes for this branch, `2^n_paths` entries.
    pub register: Vec<Complex64>,
}

/// Joint state of the path-superposed electron and the `N`-qubit register,
/// stored branch-by-branch. Total norm `Σ_k |w_k|²·‖ψ_k‖²` is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct KickbackState {
    n_paths: usize,
    branches: Vec<KickbackBranch>,
}

impl KickbackState {
    /// Validating constructor.
    ///
    /// # Errors
    ///
    /// [`Error::Domain`] if `n_paths` is 0 or exceeds 16, any register has
    /// the wrong length, a path index repeats or leaves `[1, n_paths]`, any
    /// amplitude is non-finite, or the total norm deviates from 1 by more
    /// than `1e-12`.
    pub fn new(n_paths: usize, branches: Vec<KickbackBranch>) -> Result<Self> {
        if n_paths == 0 || n_paths > MAX_PATHS {
            return Err(Error::Domain(format!(
                "kickback: n_paths = {n_paths} outside [1, {MAX_PATHS}]"
            )));
        }
        let dim = 1usize << n_paths;
        let mut seen = vec![false; n_paths + 1];
        for b in &branches {
            if b.path_index == 0 || b.path_index > n_paths {
                return Err(Error::Domain(format!(
                    "kickback: path index {} outside [1, {n_paths}]",
                    b.path_index
                )));
            }
            if seen[b.path_index] {
                return Err(Error::Domain(format!(
                    "kickback: duplicate path index {}",
                    b.path_index
                )));
            }
            seen[b.path_index] = true;
            if b.register.len() != dim {
                return Err(Error::Domain(format!(
                    "kickback: register has {} amplitudes, expected {dim}",
                    b.register.len()
                )));
            }
            if !b.weight.is_finite() || b.register.iter().any(|a| !a.is_finite()) {
                return Err(Error::Domain("kickback: non-finite amplitude".into()));
            }
        }
        let state = KickbackState { n_paths, branches };
        let norm = state.total_norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Domain(format!(
                "kickback: total norm {norm} deviates from 1 beyond {NORM_TOL}"
            )));
        }
        Ok(state)
    }

    /// Equal-weight electron superposition over all `n_paths` paths with the
    /// register in `|0…0⟩`.
    pub fn uniform_superposition(n_paths: usize) -> Result<Self> {
        if n_paths == 0 || n_paths > MAX_PATHS {
            return Err(Error::Domain(format!(
                "kickback: n_paths = {n_paths} outside [1, {MAX_PATHS}]"
            )));
        }
        let dim = 1usize << n_paths;
        let w = Complex64::new(1.0 / (n_paths as f64).sqrt(), 0.0);
        let branches = (1..=n_paths)
            .map(|k| {
                let mut register = vec![Complex64::new(0.0, 0.0); dim];
                register[0] = Complex64::new(1.0, 0.0);
                KickbackBranch { path_index: k, weight: w, register }
            })
            .collect();
        Ok(KickbackState { n_paths, branches })
    }

    /// Number of electron paths (= register qubits).
    pub fn n_paths(&self) -> usize {
        self.n_paths
    }

    /// The stored branches.
    pub fn branches(&self) -> &[KickbackBranch] {
        &self.branches
    }

    /// Total norm `Σ_k |w_k|²·‖ψ_k‖²` (1 for a valid state).
    pub fn total_norm(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| b.weight.norm_sqr() * b.register.iter().map(|a| a.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            .sqrt()
    }

    /// Register index with only qubit `k` (1-based) set.
    fn one_hot(&self, k: usize) -> usize {
        1usize << (self.n_paths - k)
    }
}

/// Evolve the joint state through one kickback round and the electron
/// momentum measurement.
///
/// Steps, in order: qubit `k` of branch `k` receives `exp(i (g/2) σ_x)`;
/// branch `k` acquires the specimen phase `e^{i φ_k}`; the electron is
/// projected onto momentum `measured_p`, weighting branch `k` by
/// `e^{−i p·r_k}` with `r_k = focus_points[k−1]` and merging the branches;
/// finally the correction `Π_k exp(i p·r_k |1⟩⟨1|_k)` is applied and the
/// register renormalized. The returned state has a single branch of weight 1
/// on path 1 (the electron has been measured out).
///
/// # Errors
///
/// [`Error::Domain`] for inconsistent lengths or non-finite inputs;
/// [`Error::MeasurementImpossible`] if the post-measurement norm vanishes
/// (the chosen momentum outcome has zero probability).
pub fn kickback_evolve(
    initial: &KickbackState,
    g: f64,
    specimen_phases: &[f64],
    measured_p: [f64; 2],
    focus_points: &[[f64; 2]],
) -> Result<KickbackState> {
    let n = initial.n_paths;
    if specimen_phases.len() != n || focus_points.len() != n {
        return Err(Error::Domain(format!(
            "kickback: {} specimen phases and {} focus points for {n} paths",
            specimen_phases.len(),
            focus_points.len()
        )));
    }
    if !g.is_finite()
        || !measured_p.iter().all(|c| c.is_finite())
        || specimen_phases.iter().any(|p| !p.is_finite())
        || focus_points.iter().flatten().any(|c| !c.is_finite())
    {
        return Err(Error::Domain("kickback: non-finite evolution parameter".into()));
    }

    let dim = 1usize << n;
    let cos_half = Complex64::new((0.5 * g).cos(), 0.0);
    let i_sin_half = Complex64::new(0.0, (0.5 * g).sin());
    let measurement_phase =
        |k: usize| -> f64 { measured_p[0] * focus_points[k - 1][0] + measured_p[1] * focus_points[k - 1][1] };

    let mut merged = vec![Complex64::new(0.0, 0.0); dim];
    for b in &initial.branches {
        let k = b.path_index;
        let bit = initial.one_hot(k);
        // Branch factor: specimen phase, then the momentum projection phase.
        let factor = b.weight
            * Complex64::new(0.0, specimen_phases[k - 1] - measurement_phase(k)).exp();
        // exp(i(g/2)σ_x) on qubit k: pairs (idx, idx|bit) mix.
        for idx in 0..dim {
            if idx & bit != 0 {
                continue;
            }
            let lo = b.register[idx];
            let hi = b.register[idx | bit];
            merged[idx] += factor * (cos_half * lo + i_sin_half * hi);
            merged[idx | bit] += factor * (i_sin_half * lo + cos_half * hi);
        }
    }

    // Correction: each set qubit k contributes e^{+i p·r_k}.
    for (idx, amp) in merged.iter_mut().enumerate() {
        let mut phase = 0.0;
        for k in 1..=n {
            if idx & (1usize << (n - k)) != 0 {
                phase += measurement_phase(k);
            }
        }
        *amp *= Complex64::new(0.0, phase).exp();
    }

    let norm = merged.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < NORM_TOL {
        return Err(Error::MeasurementImpossible);
    }
    for amp in &mut merged {
        *amp /= norm;
    }
    Ok(KickbackState {
        n_paths: n,
        branches: vec![KickbackBranch {
            path_index: 1,
            weight: Complex64::new(1.0, 0.0),
            register: merged,
        }],
    })
}
