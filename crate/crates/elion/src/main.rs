//! Command-line front-end: deterministic CSV sweeps plus a run manifest
//! for every invocation.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 flag-parse/usage error.
//! `ELION_OUT_DIR` sets the directory for default output paths.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use elion::metrology::ProtocolConfig;
use elion::runmeta::{manifest_path, write_atomic, RunManifest};
use elion::sweeps::{
    backaction_map_table, fisher_eps_table, fisher_n_table, flip_probability_table,
    phase_profile_table, protocol_sim_table, Table,
};

#[derive(Parser)]
#[command(
    name = "elion",
    version,
    about = "Electron-ion coupling sweeps: scattering phases, qubit flips, back action,\n\
             loss-limited Fisher information, and seeded protocol simulations."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Phase shift relative to the beam axis and scattering probability
    /// versus impact parameter (CSV: b_over_R0, delta_phi_minus_phi0, p_scat).
    PhaseProfile {
        /// Electron kinetic energy in eV.
        #[arg(long)]
        energy_ev: f64,
        /// Trap frequency in MHz (calcium-40 ion).
        #[arg(long)]
        trap_mhz: f64,
        /// Coherent displacement of the probed component (impact parameters
        /// are measured from its displaced center).
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Largest impact parameter, in trap ground widths R0.
        #[arg(long, default_value_t = 3.0)]
        b_max: f64,
        /// Number of grid rows (at least 2).
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Output CSV path (default: phase_profile.csv in ELION_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Qubit-flip probability sin²(g/2) versus cat displacement, one
    /// column per energy (CSV: alpha, p_flip_<energy>...).
    FlipProb {
        /// Electron kinetic energies in eV, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        energy_ev: Vec<f64>,
        /// Trap frequency in MHz (calcium-40 ion).
        #[arg(long)]
        trap_mhz: f64,
        /// Largest displacement amplitude |α|.
        #[arg(long, default_value_t = 6.5)]
        alpha_max: f64,
        /// Number of grid rows (at least 2).
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Output CSV path (default: flip_prob.csv in ELION_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Transverse back-action probability η over the (spot ratio, offset)
    /// plane, long format (CSV: sqrt_chi, b_over_R0, eta).
    BackactionMap {
        /// Electron kinetic energy in eV.
        #[arg(long)]
        energy_ev: f64,
        /// Largest spot parameter χ = 2δ²/R0².
        #[arg(long, default_value_t = 0.01)]
        chi_max: f64,
        /// Largest beam offset, in trap ground widths R0.
        #[arg(long, default_value_t = 3.0)]
        b_max: f64,
        /// Points per axis (grid² rows).
        #[arg(long, default_value_t = 60)]
        grid: usize,
        /// Output CSV path (default: backaction_map.csv in ELION_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fisher-information tables: per-n comparison at fixed loss
    /// (--eps/--n-max) or a loss sweep of the optimal point (--eps-sweep).
    Fisher {
        /// Per-electron loss probability for the per-n table.
        #[arg(long, required_unless_present = "eps_sweep", conflicts_with = "eps_sweep")]
        eps: Option<f64>,
        /// Largest electron number for the per-n table.
        #[arg(long, required_unless_present = "eps_sweep", conflicts_with = "eps_sweep")]
        n_max: Option<u64>,
        /// Loss sweep lo:hi:points emitting (eps, n_star, gain) instead.
        #[arg(long)]
        eps_sweep: Option<String>,
        /// Coupling phase g; adds a nonideal_f column to the per-n table.
        #[arg(long, conflicts_with = "eps_sweep")]
        g: Option<f64>,
        /// Specimen phase φ for the nonideal_f column (default 0).
        #[arg(long, requires = "g")]
        phi: Option<f64>,
        /// Output CSV path (default: fisher.csv in ELION_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded Monte-Carlo run of the lossy estimation protocol
    /// (CSV: empirical_p0, stderr, analytic_p0, restart_count; plus manifest).
    ProtocolSim {
        /// Electrons per trial.
        #[arg(long)]
        n: u64,
        /// Per-electron loss probability.
        #[arg(long, default_value_t = 0.0)]
        eps: f64,
        /// Coupling phase g per electron, in [0, π].
        #[arg(long)]
        g: f64,
        /// Specimen phase φ, in [0, π).
        #[arg(long)]
        phi: f64,
        /// Number of independent trials.
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Master RNG seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output CSV path (default: protocol_sim.csv in ELION_OUT_DIR).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(paths) => {
            for path in paths {
                println!("wrote {}", path.display());
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}

fn resolve_out(out: Option<PathBuf>, default_name: &str) -> PathBuf {
    out.unwrap_or_else(|| {
        std::env::var_os("ELION_OUT_DIR")
            .map(PathBuf::from)
            .unwrap_or_default()
            .join(default_name)
    })
}

/// Parse an `--eps-sweep lo:hi:points` range, exiting with the usage code
/// on malformed input (it is a flag-syntax problem, not a domain one).
fn parse_sweep(spec: &str) -> (f64, f64, usize) {
    let parts: Vec<&str> = spec.split(':').collect();
    let parsed = (|| -> Option<(f64, f64, usize)> {
        if parts.len() != 3 {
            return None;
        }
        Some((parts[0].parse().ok()?, parts[1].parse().ok()?, parts[2].parse().ok()?))
    })();
    parsed.unwrap_or_else(|| {
        eprintln!("error: --eps-sweep expects lo:hi:points (e.g. 0.001:0.5:200), got {spec:?}");
        std::process::exit(2);
    })
}

fn emit(
    command: &str,
    parameters: Vec<(String, String)>,
    seed: u64,
    table: &Table,
    out: &PathBuf,
) -> elion::Result<Vec<PathBuf>> {
    let csv = table.to_csv();
    let manifest = RunManifest::new(command, parameters, seed, csv.as_bytes());
    write_atomic(out, csv.as_bytes())?;
    let meta = manifest_path(out);
    write_atomic(&meta, manifest.to_json().as_bytes())?;
    Ok(vec![out.clone(), meta])
}

fn param(name: &str, value: impl std::fmt::Display) -> (String, String) {
    (name.to_string(), value.to_string())
}

fn run(command: Command) -> elion::Result<Vec<PathBuf>> {
    match command {
        Command::PhaseProfile { energy_ev, trap_mhz, alpha, b_max, points, out } => {
            let out = resolve_out(out, "phase_profile.csv");
            let table = phase_profile_table(energy_ev, trap_mhz, alpha, b_max, points)?;
            emit(
                "phase-profile",
                vec![
                    param("alpha", alpha),
                    param("b_max", b_max),
                    param("energy_ev", energy_ev),
                    param("points", points),
                    param("trap_mhz", trap_mhz),
                ],
                0,
                &table,
                &out,
            )
        }
        Command::FlipProb { energy_ev, trap_mhz, alpha_max, points, out } => {
            let out = resolve_out(out, "flip_prob.csv");
            let table = flip_probability_table(&energy_ev, trap_mhz, alpha_max, points)?;
            let energies =
                energy_ev.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
            emit(
                "flip-prob",
                vec![
                    param("alpha_max", alpha_max),
                    param("energy_ev", energies),
                    param("points", points),
                    param("trap_mhz", trap_mhz),
                ],
                0,
                &table,
                &out,
            )
        }
        Command::BackactionMap { energy_ev, chi_max, b_max, grid, out } => {
            let out = resolve_out(out, "backaction_map.csv");
            let table = backaction_map_table(energy_ev, chi_max, b_max, grid)?;
            emit(
                "backaction-map",
                vec![
                    param("b_max", b_max),
                    param("chi_max", chi_max),
                    param("energy_ev", energy_ev),
                    param("grid", grid),
                ],
                0,
                &table,
                &out,
            )
        }
        Command::Fisher { eps, n_max, eps_sweep, g, phi, out } => {
            let out = resolve_out(out, "fisher.csv");
            if let Some(spec) = eps_sweep {
                let (lo, hi, points) = parse_sweep(&spec);
                let table = fisher_eps_table(lo, hi, points)?;
                emit("fisher", vec![param("eps_sweep", spec)], 0, &table, &out)
            } else {
                let (eps, n_max) = (
                    eps.expect("required unless eps_sweep"),
                    n_max.expect("required unless eps_sweep"),
                );
                let coupling = g.map(|g| (g, phi.unwrap_or(0.0)));
                let table = fisher_n_table(eps, n_max, coupling)?;
                let mut params = vec![param("eps", eps), param("n_max", n_max)];
                if let Some((g, phi)) = coupling {
                    params.push(param("g", g));
                    params.push(param("phi", phi));
                }
                emit("fisher", params, 0, &table, &out)
            }
        }
        Command::ProtocolSim { n, eps, g, phi, trials, seed, out } => {
            let out = resolve_out(out, "protocol_sim.csv");
            let cfg = ProtocolConfig {
                seed,
                ..ProtocolConfig::new(n, eps, g, phi)
            };
            let (table, _) = protocol_sim_table(&cfg, trials)?;
            emit(
                "protocol-sim",
                vec![
                    param("eps", eps),
                    param("g", g),
                    param("n", n),
                    param("phi", phi),
                    param("trials", trials),
                ],
                seed,
                &table,
                &out,
            )
        }
    }
}
