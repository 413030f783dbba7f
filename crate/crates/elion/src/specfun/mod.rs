//! Complex special functions needed by the scattering amplitudes: the
//! principal-branch log-gamma function and the confluent hypergeometric
//! function `M(a, b, z) = 1F1(a; b; z)` for the parameter family that appears
//! in transverse electron-ion scattering (`a = i/v` or `1 + i/v`, real
//! `b ∈ {1, 2}`, real `z ≤ 0`).
//!
//! [`hyp1f1`] switches between three evaluation strategies (direct Taylor
//! series, Kummer-transformed series, large-argument asymptotics) chosen so
//! that every branch is used only where its error is far below the crossover
//! noise; the branch boundaries are locked by tests that require adjacent
//! branches to agree to `1e-11` where they meet. The slow extended-precision
//! reference lives in [`oracle`] and is compiled only for tests.

mod kummer;
mod lanczos;
pub mod oracle;

pub use kummer::{hyp1f1, Hyp1F1Params};
pub use lanczos::ln_gamma;
