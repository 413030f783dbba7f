//! Seeded Monte-Carlo sampling of the repeated-probe protocol.
//!
//! Each trial evolves the ion density matrix sequentially (per-electron
//! Bernoulli loss, uniform momentum outcome `ξ ∈ [0, 2π)`, the detected- or
//! lost-electron map) and ends with a single computational-basis
//! measurement draw. Trials use independent counter-addressed RNG streams
//! derived from the master seed, so results are bitwise reproducible
//! regardless of the number of worker threads, and the per-electron draw
//! layout is fixed (loss draw first, momentum draw always consumed), so
//! runs differing only in physical parameters share their random inputs —
//! common random numbers for finite-difference estimates.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrology::protocol::{expected_p0, run_protocol_with_rng, ProtocolConfig};

/// Aggregate statistics from [`monte_carlo_protocol`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolStats {
    /// Number of trials simulated.
    pub trials: u64,
    /// Fraction of trials measuring `|0⟩`.
    pub empirical_p0: f64,
    /// Binomial standard error of `empirical_p0` (variance floored at
    /// `0.25/trials` so a degenerate sample never reports certainty).
    pub standard_error: f64,
    /// Loss-marginalized analytic expectation of `p₀` for the same
    /// configuration.
    pub analytic_p0: f64,
    /// Trials that lost at least one electron and would trigger a restart
    /// under a restart-on-loss strategy (they still count above).
    pub restart_count: u64,
    /// Trials in which every electron reached the detector.
    pub all_detected_trials: u64,
    /// `|0⟩` fraction over the all-detected subsample; `None` if empty.
    pub empirical_p0_detected: Option<f64>,
    /// Standard error of the detected-subsample fraction; `None` if empty.
    pub standard_error_detected: Option<f64>,
}

fn binomial_stderr(successes: u64, samples: u64) -> f64 {
    let n = samples as f64;
    let p = successes as f64 / n;
    ((p * (1.0 - p)).max(0.25 / n) / n).sqrt()
}

/// Run `trials` independent protocol simulations and tally the final
/// computational-basis measurement.
///
/// Trial `t` uses the ChaCha stream `t` of the generator seeded by
/// `cfg.seed`; the reduction accumulates only integer counters, so the
/// returned statistics are identical across thread counts and runs.
///
/// # Errors
///
/// [`Error::Domain`] if `trials = 0` or `cfg` is invalid;
/// [`Error::MeasurementImpossible`] propagated from a dark-fringe outcome
/// (possible only at `g = 0`).
pub fn monte_carlo_protocol(cfg: &ProtocolConfig, trials: u64) -> Result<ProtocolStats> {
    if trials == 0 {
        return Err(Error::Domain("monte carlo: at least one trial required".into()));
    }
    cfg.validate()?;
    let analytic_p0 = expected_p0(cfg)?;

    let (zeros_total, zeros_detected, detected_trials, restarts) = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<(u64, u64, u64, u64)> {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial);
            let run = run_protocol_with_rng(cfg, &mut rng)?;
            let zero = u64::from(rng.gen::<f64>() < run.p0);
            let clean = u64::from(run.electrons_lost == 0);
            Ok((zero, zero * clean, clean, 1 - clean))
        })
        .try_reduce(
            || (0, 0, 0, 0),
            |a, b| Ok((a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3)),
        )?;

    let (empirical_p0_detected, standard_error_detected) = if detected_trials > 0 {
        (
            Some(zeros_detected as f64 / detected_trials as f64),
            Some(binomial_stderr(zeros_detected, detected_trials)),
        )
    } else {
        (None, None)
    };
    Ok(ProtocolStats {
        trials,
        empirical_p0: zeros_total as f64 / trials as f64,
        standard_error: binomial_stderr(zeros_total, trials),
        analytic_p0,
        restart_count: restarts,
        all_detected_trials: detected_trials,
        empirical_p0_detected,
        standard_error_detected,
    })
}
