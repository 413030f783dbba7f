//! Simulation toolkit for coherent elastic coupling between a focused free
//! electron beam and the motional/internal state of a single trapped ion.
//!
//! The crate models a fast electron passing a harmonically trapped ion:
//! the transverse scattering amplitude of the electron wave packet, the phase
//! it imprints on an ion motional qubit, the momentum back-action (which-path
//! decoherence) on the ion, and entanglement-assisted phase-estimation
//! protocols built from repeated electron-ion interactions, including photon
//! loss and measurement-feedback corrections.
//!
//! # Layout
//!
//! | module | contents |
//! |--------|----------|
//! | [`units`] | atomic-unit constants, beam/trap configuration, relativistic kinematics |
//! | [`specfun`] | complex log-gamma and the confluent hypergeometric function 1F1 |
//! | [`scattering`] | transverse scattering element, phase shift and scattering probability |
//! | [`coupling`] | electron-ion coupling phase and the induced qubit unitaries |
//! | [`backaction`] | momentum-kick decoherence of the ion motional qubit |
//! | [`metrology`] | phase-kickback register evolution, lossy estimation protocol, Fisher information |
//! | [`oracle`] | slow, independent quadrature evaluations used to cross-check the fast paths |
//! | [`sweeps`] | parameter sweeps backing the command-line tool, CSV serialization |
//! | [`runmeta`] | reproducibility manifests and atomic output files |
//!
//! Internally everything is computed in Hartree atomic units; public
//! constructors accept laboratory units (eV, MHz, nm) and convert once.
//!
//! # Examples
//!
//! Runnable walkthroughs live in `examples/`; each one prints a self-contained
//! table or summary:
//!
//! * `single_scatter` — one scattering element, phase shift and loss at a point
//! * `phase_profile` — phase shift and scattering probability vs impact parameter
//! * `flip_probability` — motional-qubit flip probability vs cat-state size
//! * `backaction_map` — decoherence probability over the (spot size, offset) plane
//! * `fisher_tradeoff` — loss-limited Fisher information and the optimal electron number
//! * `kickback_walkthrough` — many-qubit phase kickback with branch merging
//! * `protocol_monte_carlo` — stochastic lossy protocol vs its closed form

pub mod backaction;
pub mod coupling;
pub mod error;
pub mod metrology;
pub mod oracle;
pub mod runmeta;
pub mod scattering;
pub mod specfun;
pub mod sweeps;
pub mod units;

pub use error::{Error, Result};
