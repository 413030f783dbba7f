//! Transverse back action: probability that one passing electron records
//! which-path information about the ion, over spot size and beam offset.

use elion::backaction::{eta, eta_map};
use elion::units::BeamConfig;

fn main() -> elion::Result<()> {
    let v100 = BeamConfig::new(100.0, [0.0, 0.0], 1.0, 0.0)?.velocity_au();
    let v1k = BeamConfig::new(1000.0, [0.0, 0.0], 1.0, 0.0)?.velocity_au();

    // Long-format map at 100 eV: chi up to 1e-2, offsets to 3 R0.
    let chi_grid: Vec<f64> = (0..=20).map(|i| 0.01 * i as f64 / 20.0).collect();
    let offset_grid: Vec<f64> = (0..=120).map(|i| 3.0 * i as f64 / 120.0).collect();
    let map = eta_map(v100, &chi_grid, &offset_grid)?;

    let peak = map
        .iter()
        .max_by(|a, b| a.eta.partial_cmp(&b.eta).expect("finite"))
        .expect("non-empty");
    println!("100 eV map over {} points:", map.len());
    println!(
        "  peak eta = {:.6e} at sqrt_chi = {:.4}, b = {:.3} R0",
        peak.eta, peak.sqrt_chi, peak.offset_r0
    );

    // On the axis the leading order is exact: eta(0) = chi^2 / v^2.
    let chi = 0.01;
    let on_axis = eta(v100, chi, 0.0)?;
    println!("\non-axis check at chi = {chi}:");
    println!("  eta(0)    = {on_axis:.9e}");
    println!("  chi^2/v^2 = {:.9e}", chi * chi / (v100 * v100));

    // Back action falls off with beam energy like 1/E.
    let scan = |v: f64| -> elion::Result<f64> {
        let mut best = 0.0f64;
        for i in 0..=300 {
            let b = 0.8 + 0.4 * i as f64 / 300.0;
            best = best.max(eta(v, chi, b * b)?);
        }
        Ok(best)
    };
    let e100 = scan(v100)?;
    let e1k = scan(v1k)?;
    println!("\npeak eta at 100 eV : {e100:.6e}");
    println!("peak eta at 1 keV  : {e1k:.6e}");
    println!("ratio 1keV/100eV   : {:.4} (energy ratio gives 0.1)", e1k / e100);
    Ok(())
}
