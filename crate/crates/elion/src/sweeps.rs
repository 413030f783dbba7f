//! Parameter-sweep tables behind the command-line front-end.
//!
//! Every builder returns a [`Table`] whose cells are already formatted
//! (floats at 12 significant digits, counts as integers), so the CSV bytes
//! are a pure function of the inputs — the foundation of the byte-level
//! determinism guarantee. Physical inputs are laboratory units (eV, MHz,
//! trap-width multiples); conversions happen internally.
//!
//! Commands that do not expose a beam spot width use `δ = R0/20`: small
//! enough that the effective width `√(R0² + 2δ²) ≈ 1.0025 R0` is
//! point-beam-like, while keeping the beam/trap plumbing exercised end to
//! end.

use crate::backaction::eta_map;
use crate::coupling::{coupling_phase, CatState};
use crate::error::{Error, Result};
use crate::metrology::{monte_carlo_protocol, ProtocolConfig, ProtocolStats};
use crate::scattering::phase_profile;
use crate::units::{BeamConfig, TrapConfig};

/// Spot width used by sweeps whose command does not expose one, as a
/// fraction of the trap ground width.
pub const DEFAULT_SPOT_FRACTION: f64 = 0.05;

/// A rendered table: header row plus pre-formatted data cells.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: Vec<String>) -> Self {
        Table { headers, rows: Vec::new() }
    }

    fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Column names, in emission order.
    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    /// Formatted data rows.
    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    /// Value of column `name` in row `row`, parsed back to `f64`.
    pub fn value(&self, row: usize, name: &str) -> Option<f64> {
        let col = self.headers.iter().position(|h| h == name)?;
        self.rows.get(row)?.get(col)?.parse().ok()
    }

    /// Render as RFC-4180 CSV: comma separators, LF line endings, header
    /// first. Cells never contain commas, quotes, or line breaks, so no
    /// quoting is required.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.headers.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Format a float with 12 significant digits, locale-independent
/// (scientific notation, `.` decimal point).
pub fn format_significant(x: f64) -> String {
    format!("{x:.11e}")
}

/// Format an integer count.
pub fn format_count(n: u64) -> String {
    n.to_string()
}

/// Inclusive linear grid from 0 to `max` with `points` entries.
pub fn linear_grid(max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 points, got {points}")));
    }
    if !(max > 0.0) || !max.is_finite() {
        return Err(Error::Domain(format!("grid maximum {max} must be positive and finite")));
    }
    Ok((0..points).map(|i| max * i as f64 / (points - 1) as f64).collect())
}

fn beam_for(energy_ev: f64, trap: &TrapConfig, focus: [f64; 2]) -> Result<BeamConfig> {
    BeamConfig::new(energy_ev, focus, DEFAULT_SPOT_FRACTION * trap.r0_au(), 0.0)
}

/// Phase-shift and scattering-probability profile over impact parameter:
/// columns `b_over_R0`, `delta_phi_minus_phi0`, `p_scat`, rows sorted by
/// `b` from 0 to `b_max_r0` trap widths.
///
/// `alpha` is the coherent displacement of the probed component; impact
/// parameters are measured from its displaced center, so the emitted
/// profile is displacement-covariant (identical columns for any `alpha`).
/// The flag is validated and recorded for the manifest.
pub fn phase_profile_table(
    energy_ev: f64,
    trap_mhz: f64,
    alpha: f64,
    b_max_r0: f64,
    points: usize,
) -> Result<Table> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("phase profile: displacement {alpha} must be finite")));
    }
    let trap = TrapConfig::ca40(trap_mhz)?;
    let beam = beam_for(energy_ev, &trap, [0.0, 0.0])?;
    let r0 = trap.r0_au();
    let width = crate::scattering::effective_width(&beam, &trap);
    let offsets: Vec<f64> = linear_grid(b_max_r0, points)?.iter().map(|b| b * r0).collect();
    let profile = phase_profile(width, beam.velocity_au(), &offsets)?;
    let mut table = Table::new(vec![
        "b_over_R0".into(),
        "delta_phi_minus_phi0".into(),
        "p_scat".into(),
    ]);
    for point in profile {
        table.push_row(vec![
            format_significant(point.offset / r0),
            format_significant(point.phase_minus_axis),
            format_significant(point.scattering_probability),
        ]);
    }
    Ok(table)
}

/// Qubit-flip probability `sin²(g/2)` versus cat displacement, one column
/// per electron energy: columns `alpha`, then `p_flip_<energy>` in the
/// order the energies were given. The beam is focused on the `+α`
/// component, so `g = Δφ(0) − Δφ(2√2 R0 α)`.
pub fn flip_probability_table(
    energies_ev: &[f64],
    trap_mhz: f64,
    alpha_max: f64,
    points: usize,
) -> Result<Table> {
    if energies_ev.is_empty() {
        return Err(Error::Domain("flip probability: at least one energy required".into()));
    }
    let trap = TrapConfig::ca40(trap_mhz)?;
    let r0 = trap.r0_au();
    let mut headers = vec!["alpha".to_string()];
    headers.extend(energies_ev.iter().map(|e| format!("p_flip_{}", trim_number(*e))));
    let alphas = linear_grid(alpha_max, points)?;
    let mut table = Table::new(headers);
    for &alpha in &alphas {
        let mut row = vec![format_significant(alpha)];
        let focus = [std::f64::consts::SQRT_2 * r0 * alpha, 0.0];
        let cat = CatState::new([alpha, 0.0])?;
        for &energy in energies_ev {
            let beam = beam_for(energy, &trap, focus)?;
            let g = coupling_phase(&beam, &trap, &cat)?;
            row.push(format_significant((0.5 * g).sin().powi(2)));
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Transverse back-action probability η over the (spot-ratio, offset)
/// plane, long format: columns `sqrt_chi`, `b_over_R0`, `eta`; `sqrt_chi`
/// is the outer (slower) sweep axis. `grid` points span each axis.
pub fn backaction_map_table(
    energy_ev: f64,
    chi_max: f64,
    b_max_r0: f64,
    grid: usize,
) -> Result<Table> {
    let trap = TrapConfig::ca40(1.0)?;
    let beam = beam_for(energy_ev, &trap, [0.0, 0.0])?;
    let chi_grid = linear_grid(chi_max, grid)?;
    let offset_grid = linear_grid(b_max_r0, grid)?;
    let map = eta_map(beam.velocity_au(), &chi_grid, &offset_grid)?;
    let mut table = Table::new(vec!["sqrt_chi".into(), "b_over_R0".into(), "eta".into()]);
    for point in map {
        table.push_row(vec![
            format_significant(point.sqrt_chi),
            format_significant(point.offset_r0),
            format_significant(point.eta),
        ]);
    }
    Ok(table)
}

/// Fisher-information comparison versus electron number at fixed loss:
/// columns `n`, `sql` (= n), `hl` (= n²), `expected_f` (= n²(1−ε)ⁿ), and —
/// when a coupling is supplied — `nonideal_f` for that `(g, φ)`.
pub fn fisher_n_table(eps: f64, n_max: u64, coupling: Option<(f64, f64)>) -> Result<Table> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Domain(format!("fisher table: loss probability {eps} outside [0, 1]")));
    }
    if n_max < 1 {
        return Err(Error::Domain("fisher table: n_max must be at least 1".into()));
    }
    let mut headers: Vec<String> =
        vec!["n".into(), "sql".into(), "hl".into(), "expected_f".into()];
    if coupling.is_some() {
        headers.push("nonideal_f".into());
    }
    let mut table = Table::new(headers);
    for n in 1..=n_max {
        let mut row = vec![
            format_count(n),
            format_significant(n as f64),
            format_significant(crate::metrology::fisher_ideal(n)?),
            format_significant(crate::metrology::expected_fisher_lossy(n, eps)?),
        ];
        if let Some((g, phi)) = coupling {
            row.push(format_significant(crate::metrology::fisher_nonideal(n, g, phi)?));
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Loss-budget sweep: columns `eps`, `n_star` (continuous optimum
/// `−1/ln(1−ε)`), `gain` (= `−1/(e ln(1−ε))`), over a linear grid from
/// `eps_lo` to `eps_hi`.
pub fn fisher_eps_table(eps_lo: f64, eps_hi: f64, points: usize) -> Result<Table> {
    if points < 2 {
        return Err(Error::Domain(format!("fisher sweep needs at least 2 points, got {points}")));
    }
    if !(eps_lo > 0.0) || !(eps_hi < 1.0) || !(eps_lo < eps_hi) {
        return Err(Error::Domain(format!(
            "fisher sweep bounds ({eps_lo}, {eps_hi}) must satisfy 0 < lo < hi < 1"
        )));
    }
    let mut table = Table::new(vec!["eps".into(), "n_star".into(), "gain".into()]);
    for i in 0..points {
        let eps = eps_lo + (eps_hi - eps_lo) * i as f64 / (points - 1) as f64;
        table.push_row(vec![
            format_significant(eps),
            format_significant(-1.0 / (-eps).ln_1p()),
            format_significant(crate::metrology::relative_gain(eps)?),
        ]);
    }
    Ok(table)
}

/// Monte-Carlo protocol summary: a single row with columns `empirical_p0`,
/// `stderr`, `analytic_p0`, `restart_count`. Returns the statistics
/// alongside the table so callers can reuse them.
pub fn protocol_sim_table(cfg: &ProtocolConfig, trials: u64) -> Result<(Table, ProtocolStats)> {
    let stats = monte_carlo_protocol(cfg, trials)?;
    let mut table = Table::new(vec![
        "empirical_p0".into(),
        "stderr".into(),
        "analytic_p0".into(),
        "restart_count".into(),
    ]);
    table.push_row(vec![
        format_significant(stats.empirical_p0),
        format_significant(stats.standard_error),
        format_significant(stats.analytic_p0),
        format_count(stats.restart_count),
    ]);
    Ok((table, stats))
}

/// Render a number compactly for a column label: integral values without
/// the decimal point (`100`), others in shortest round-trip form (`302.5`).
fn trim_number(x: f64) -> String {
    if x.fract() == 0.0 && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(0.1931551795685775), "1.93155179569e-1");
        assert_eq!(format_significant(1.0), "1.00000000000e0");
        assert_eq!(format_significant(-643.44), "-6.43440000000e2");
        assert_eq!(format_count(12), "12");
        assert_eq!(trim_number(100.0), "100");
        assert_eq!(trim_number(302.5), "302.5");
    }

    #[test]
    fn linear_grid_is_inclusive_and_validated() {
        let g = linear_grid(3.0, 4).unwrap();
        assert_eq!(g, vec![0.0, 1.0, 2.0, 3.0]);
        assert!(linear_grid(3.0, 1).is_err());
        assert!(linear_grid(-1.0, 4).is_err());
    }

    #[test]
    fn phase_profile_table_shape_and_anchors() {
        let table = phase_profile_table(100.0, 0.5, 0.0, 3.0, 40).unwrap();
        assert_eq!(table.headers(), &["b_over_R0", "delta_phi_minus_phi0", "p_scat"]);
        assert_eq!(table.rows().len(), 40);
        // b = 0 row: self-difference zero, on-axis loss ≈ 0.1932.
        assert_eq!(table.value(0, "b_over_R0"), Some(0.0));
        assert_eq!(table.value(0, "delta_phi_minus_phi0"), Some(0.0));
        assert_relative_eq!(
            table.value(0, "p_scat").unwrap(),
            0.1931551795685775,
            max_relative = 1e-11
        );
        // Sorted ascending in b; phase decreasing away from the axis.
        for i in 1..40 {
            assert!(table.value(i, "b_over_R0") > table.value(i - 1, "b_over_R0"));
            assert!(table.value(i, "delta_phi_minus_phi0") < Some(1e-15));
        }
        // Displacement covariance: α only moves the absolute geometry.
        let shifted = phase_profile_table(100.0, 0.5, 2.5, 3.0, 40).unwrap();
        assert_eq!(table, shifted);
    }

    #[test]
    fn flip_probability_table_reference_point() {
        // 40 points to 6.5 puts α = 6.5 exactly on the last row.
        let table = flip_probability_table(&[100.0, 1000.0], 0.5, 6.5, 40).unwrap();
        assert_eq!(table.headers()[0], "alpha");
        assert_eq!(table.headers()[1], "p_flip_100");
        assert_eq!(table.headers()[2], "p_flip_1000");
        // α = 0: no differential phase, no flip.
        assert_eq!(table.value(0, "p_flip_100"), Some(0.0));
        assert_eq!(table.value(0, "p_flip_1000"), Some(0.0));
        // Frozen reference: sin²(g/2) at 100 eV, α = 6.5.
        assert_relative_eq!(
            table.value(39, "p_flip_100").unwrap(),
            0.847953695624383,
            max_relative = 1e-9
        );
        // Higher energy couples more weakly at every nonzero displacement.
        for i in 1..40 {
            assert!(table.value(i, "p_flip_100") > table.value(i, "p_flip_1000"));
        }
    }

    #[test]
    fn backaction_map_table_layout() {
        let table = backaction_map_table(100.0, 0.01, 3.0, 7).unwrap();
        assert_eq!(table.headers(), &["sqrt_chi", "b_over_R0", "eta"]);
        assert_eq!(table.rows().len(), 49);
        // χ = 0 rows lead and carry zero back action.
        for i in 0..7 {
            assert_eq!(table.value(i, "sqrt_chi"), Some(0.0));
            assert_eq!(table.value(i, "eta"), Some(0.0));
        }
        // Outer axis slower than inner.
        assert!(table.value(7, "sqrt_chi") > Some(0.0));
        assert_eq!(table.value(7, "b_over_R0"), Some(0.0));
    }

    #[test]
    fn fisher_tables() {
        let table = fisher_n_table(0.01, 10, None).unwrap();
        assert_eq!(table.headers(), &["n", "sql", "hl", "expected_f"]);
        assert_eq!(table.rows().len(), 10);
        assert_eq!(table.value(6, "hl"), Some(49.0));
        assert_relative_eq!(
            table.value(9, "expected_f").unwrap(),
            100.0 * 0.99f64.powi(10),
            max_relative = 1e-11
        );
        let with_coupling = fisher_n_table(0.01, 5, Some((2.0, 0.3))).unwrap();
        assert_eq!(with_coupling.headers().last().unwrap(), "nonideal_f");

        let sweep = fisher_eps_table(0.01, 0.5, 50).unwrap();
        assert_eq!(sweep.headers(), &["eps", "n_star", "gain"]);
        assert_eq!(sweep.rows().len(), 50);
        // Gain decreasing in ε.
        for i in 1..50 {
            assert!(sweep.value(i, "gain") < sweep.value(i - 1, "gain"));
        }
        assert!(fisher_eps_table(0.0, 0.5, 10).is_err());
        assert!(fisher_n_table(1.2, 10, None).is_err());
    }

    #[test]
    fn protocol_table_single_row() {
        let cfg = ProtocolConfig { seed: 9, ..ProtocolConfig::new(3, 0.1, 2.0, 0.4) };
        let (table, stats) = protocol_sim_table(&cfg, 500).unwrap();
        assert_eq!(table.rows().len(), 1);
        assert_eq!(
            table.value(0, "restart_count"),
            Some(stats.restart_count as f64)
        );
        assert_relative_eq!(
            table.value(0, "empirical_p0").unwrap(),
            stats.empirical_p0,
            max_relative = 1e-11
        );
    }

    #[test]
    fn csv_rendering_is_rfc4180() {
        let table = fisher_n_table(0.0, 2, None).unwrap();
        let csv = table.to_csv();
        assert!(csv.starts_with("n,sql,hl,expected_f\n"));
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
        assert_eq!(csv.lines().count(), 3);
    }
}
