//! Hartree atomic units, CODATA-2018 constants and beam/trap kinematics.
//!
//! Internally every length is in bohr, every energy in hartree, every time in
//! atomic time units and every velocity in atomic velocity units
//! (`hbar = m_e = |e| = 4 pi eps0 = 1`).  Lab-frame quantities (eV,
//! nanometres, rad/s) are converted at the boundary by the helpers below.

use crate::error::{domain, Result};

/// Identifier of the constant set, recorded in run manifests.
pub const CONSTANT_SET_VERSION: &str = "codata-2018";

/// Speed of light in atomic velocity units (inverse fine-structure constant).
pub const SPEED_OF_LIGHT_AU: f64 = 137.035999084;

/// One hartree in electronvolts.
pub const EV_PER_HARTREE: f64 = 27.211386245988;

/// Bohr radius in nanometres.
pub const BOHR_RADIUS_NM: f64 = 0.0529177210903;

/// One atomic time unit in seconds.
pub const SECONDS_PER_ATOMIC_TIME: f64 = 2.4188843265857e-17;

/// Unified atomic mass unit in electron masses.
pub const ATOMIC_MASS_UNIT_ME: f64 = 1822.888486209;

/// Atomic mass of the calcium-40 ion in unified atomic mass units.
pub const CA40_ION_MASS_U: f64 = 39.9626;

/// Converts an energy in electronvolts to hartree.
pub fn ev_to_hartree(ev: f64) -> f64 {
    ev / EV_PER_HARTREE
}

/// Converts an energy in hartree to electronvolts.
pub fn hartree_to_ev(hartree: f64) -> f64 {
    hartree * EV_PER_HARTREE
}

/// Converts a length in nanometres to bohr.
pub fn nm_to_au(nm: f64) -> f64 {
    nm / BOHR_RADIUS_NM
}

/// Converts a length in bohr to nanometres.
pub fn au_to_nm(au: f64) -> f64 {
    au * BOHR_RADIUS_NM
}

/// Converts an angular frequency in rad/s to atomic frequency units.
pub fn rad_per_s_to_au(omega: f64) -> f64 {
    omega * SECONDS_PER_ATOMIC_TIME
}

/// Electron velocity (atomic units) for a kinetic energy in electronvolts.
///
/// Inverts the relativistic dispersion `E = c sqrt(c^2 + p^2) - c^2` for the
/// momentum and returns `v = p / gamma`.  The result stays below `c` for every
/// finite energy and agrees with the nonrelativistic `sqrt(2 T)` to first
/// order: the relative deviation is bounded by `T / c^2` for `T <= 1 keV`.
pub fn electron_velocity(kinetic_energy_ev: f64) -> Result<f64> {
    if !kinetic_energy_ev.is_finite() || kinetic_energy_ev <= 0.0 {
        return Err(domain(format!(
            "electron kinetic energy must be positive and finite, got {kinetic_energy_ev} eV"
        )));
    }
    let t = ev_to_hartree(kinetic_energy_ev);
    let c = SPEED_OF_LIGHT_AU;
    // p^2 = (T^2 + 2 T c^2) / c^2, gamma = 1 + T / c^2.
    let p = (t * (t + 2.0 * c * c)).sqrt() / c;
    let gamma = 1.0 + t / (c * c);
    Ok(p / gamma)
}

/// How a numeric trap-frequency figure maps onto the angular frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyConvention {
    /// The quoted megahertz figure is already the angular frequency:
    /// `Omega = figure * 1e6 rad/s`.  This is the convention the reference
    /// trap-width figures are quoted in.
    AngularMegaRadPerSecond,
    /// The quoted figure is an ordinary frequency: `Omega = 2 pi * figure * 1e6 rad/s`.
    CyclesMegaHertz,
}

/// Transverse trap configuration for the ion.
///
/// Only the transverse (radial) trap frequency enters the coupling; the
/// longitudinal trap axis is not modelled because the electron passes along
/// it and does not couple to that motion in the paraxial regime.
#[derive(Debug, Clone, Copy)]
pub struct TrapConfig {
    /// Transverse angular trap frequency, rad/s.
    omega_rad_s: f64,
    /// Ion mass in electron masses.
    ion_mass_me: f64,
}

impl TrapConfig {
    /// Builds a trap from a megahertz-scale frequency figure and an ion mass
    /// in unified atomic mass units.  `convention` states whether the figure
    /// is angular or cyclic.
    pub fn new(freq_mhz: f64, convention: FrequencyConvention, ion_mass_u: f64) -> Result<Self> {
        if !freq_mhz.is_finite() || freq_mhz <= 0.0 {
            return Err(domain(format!(
                "trap frequency must be positive and finite, got {freq_mhz} MHz"
            )));
        }
        if !ion_mass_u.is_finite() || ion_mass_u <= 0.0 {
            return Err(domain(format!(
                "ion mass must be positive and finite, got {ion_mass_u} u"
            )));
        }
        let omega_rad_s = match convention {
            FrequencyConvention::AngularMegaRadPerSecond => freq_mhz * 1.0e6,
            FrequencyConvention::CyclesMegaHertz => 2.0 * std::f64::consts::PI * freq_mhz * 1.0e6,
        };
        Ok(TrapConfig {
            omega_rad_s,
            ion_mass_me: ion_mass_u * ATOMIC_MASS_UNIT_ME,
        })
    }

    /// Calcium-40 trap with the frequency figure interpreted as angular rad/s.
    pub fn ca40(freq_mhz: f64) -> Result<Self> {
        TrapConfig::new(
            freq_mhz,
            FrequencyConvention::AngularMegaRadPerSecond,
            CA40_ION_MASS_U,
        )
    }

    /// Builds a trap directly from the harmonic length scale `R0` in
    /// nanometres, keeping `R0 = 1 / sqrt(m Omega)` consistent.
    pub fn from_r0_nm(r0_nm: f64, ion_mass_u: f64) -> Result<Self> {
        if !r0_nm.is_finite() || r0_nm <= 0.0 {
            return Err(domain(format!("R0 must be positive and finite, got {r0_nm} nm")));
        }
        if !ion_mass_u.is_finite() || ion_mass_u <= 0.0 {
            return Err(domain(format!(
                "ion mass must be positive and finite, got {ion_mass_u} u"
            )));
        }
        let mass_me = ion_mass_u * ATOMIC_MASS_UNIT_ME;
        let r0_au = nm_to_au(r0_nm);
        let omega_au = 1.0 / (mass_me * r0_au * r0_au);
        Ok(TrapConfig {
            omega_rad_s: omega_au / SECONDS_PER_ATOMIC_TIME,
            ion_mass_me: mass_me,
        })
    }

    /// Angular trap frequency in rad/s.
    pub fn omega_rad_s(&self) -> f64 {
        self.omega_rad_s
    }

    /// Angular trap frequency in atomic frequency units.
    pub fn omega_au(&self) -> f64 {
        rad_per_s_to_au(self.omega_rad_s)
    }

    /// Ion mass in electron masses.
    pub fn ion_mass_me(&self) -> f64 {
        self.ion_mass_me
    }

    /// Harmonic length scale `R0 = 1 / sqrt(m Omega)` in bohr.
    pub fn r0_au(&self) -> f64 {
        1.0 / (self.ion_mass_me * self.omega_au()).sqrt()
    }

    /// Harmonic length scale `R0` in nanometres.
    pub fn r0_nm(&self) -> f64 {
        au_to_nm(self.r0_au())
    }

    /// Ground-state width `R0 / sqrt(2)` in nanometres: the standard
    /// deviation of the ground-state position distribution.
    pub fn ground_width_nm(&self) -> f64 {
        self.r0_nm() / std::f64::consts::SQRT_2
    }
}

/// Ground-state width `R0 / sqrt(2)` in nanometres for a given trap.
pub fn trap_ground_width(trap: &TrapConfig) -> f64 {
    trap.ground_width_nm()
}

/// Electron-beam configuration: kinetic energy, focus position, spot size and
/// the trap phase at which the electron arrives.
#[derive(Debug, Clone, Copy)]
pub struct BeamConfig {
    kinetic_energy_ev: f64,
    velocity_au: f64,
    /// Transverse focus position in bohr.
    pub focus: [f64; 2],
    /// Transverse focal spot width `delta_r` in bohr (>= 0).
    pub spot_width: f64,
    /// Trap phase `Omega * t_el` at electron arrival, radians.
    pub arrival_phase: f64,
}

impl BeamConfig {
    pub fn new(
        kinetic_energy_ev: f64,
        focus: [f64; 2],
        spot_width: f64,
        arrival_phase: f64,
    ) -> Result<Self> {
        if !spot_width.is_finite() || spot_width < 0.0 {
            return Err(domain(format!(
                "spot width must be non-negative and finite, got {spot_width}"
            )));
        }
        if !focus[0].is_finite() || !focus[1].is_finite() || !arrival_phase.is_finite() {
            return Err(domain("focus position and arrival phase must be finite".to_string()));
        }
        let velocity_au = electron_velocity(kinetic_energy_ev)?;
        Ok(BeamConfig {
            kinetic_energy_ev,
            velocity_au,
            focus,
            spot_width,
            arrival_phase,
        })
    }

    /// Kinetic energy in electronvolts.
    pub fn kinetic_energy_ev(&self) -> f64 {
        self.kinetic_energy_ev
    }

    /// Electron velocity in atomic units, `0 < v < c`.
    pub fn velocity_au(&self) -> f64 {
        self.velocity_au
    }
}
