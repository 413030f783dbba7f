//! Entanglement-assisted phase estimation with electron probes.
//!
//! Two protocol families are simulated:
//!
//! * **Phase kickback** ([`kickback`]): an electron in an `N`-path
//!   superposition writes its path phases onto `N` ion qubits in one shot.
//!   After a transverse-momentum measurement of the electron and a
//!   momentum-dependent correction unitary, the register carries the phases
//!   coherently.
//! * **Repeated-probe estimation** ([`protocol`], [`fisher`],
//!   [`montecarlo`]): `n` electrons interrogate one ion qubit through a
//!   two-path interferometer containing the specimen phase `φ`; each
//!   detected electron rotates the qubit coherence by `2θ(g, φ)`, each lost
//!   electron shrinks it by `cos(g/2)`. The closed-form measurement
//!   statistics, Fisher information, optimal electron number and
//!   loss-threshold results all live in [`fisher`], validated against a
//!   literal density-matrix simulation and a seeded Monte-Carlo oracle.
//!
//! The ion qubit is described throughout in the basis of `σ_x` eigenstates
//! `|±⟩`; the computational states are `|0⟩ = (|+⟩+|−⟩)/√2` and
//! `|1⟩ = (|+⟩−|−⟩)/√2`.

pub mod fisher;
pub mod kickback;
pub mod montecarlo;
pub mod protocol;

pub use fisher::{
    expected_fisher_lossy, fisher_ideal, fisher_lossy_mixed, fisher_nonideal, gain_unity_loss,
    optimal_n, relative_gain, sql_crossing,
};
pub use kickback::{kickback_evolve, KickbackBranch, KickbackState};
pub use montecarlo::{monte_carlo_protocol, ProtocolStats};
pub use protocol::{
    correction_angle, detected_electron_map, electron_loss_map, expected_p0, p0_nonideal,
    rotation_angle, run_ideal_protocol, run_protocol, IonQubitDensity, ProtocolConfig,
    ProtocolRun,
};
