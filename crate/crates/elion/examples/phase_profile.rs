//! Phase shift and scattering probability against impact parameter — the
//! data behind a beam-steering phase map, plus the far-field slope check.

use elion::scattering::{effective_width, phase_profile};
use elion::units::{BeamConfig, TrapConfig};

fn main() -> elion::Result<()> {
    let trap = TrapConfig::ca40(0.5)?;
    let beam = BeamConfig::new(100.0, [0.0, 0.0], 0.05 * trap.r0_au(), 0.0)?;
    let r0 = trap.r0_au();
    let width = effective_width(&beam, &trap);
    let v = beam.velocity_au();

    // Dense grid to 3 R0 for the table, then a far-field extension.
    let offsets: Vec<f64> = (0..=120).map(|i| r0 * 3.0 * i as f64 / 120.0).collect();
    let profile = phase_profile(width, v, &offsets)?;

    println!("{:>8} {:>16} {:>12}", "b/R0", "dphi - dphi(0)", "P_scat");
    for point in profile.iter().step_by(15) {
        println!(
            "{:>8.3} {:>16.9} {:>12.9}",
            point.offset / r0,
            point.phase_minus_axis,
            point.scattering_probability
        );
    }

    // Far from the axis the phase falls as -(2/v) ln b: fit the slope over
    // a logarithmic stretch of offsets.
    let far: Vec<f64> = (0..=60).map(|i| width * 10.0 * (10.0f64).powf(i as f64 / 60.0)).collect();
    let far_profile = phase_profile(width, v, &far)?;
    let first = &far_profile[0];
    let last = far_profile.last().expect("non-empty");
    let slope = (last.phase_minus_axis - first.phase_minus_axis)
        / (last.offset.ln() - first.offset.ln());
    println!("\nfar-field slope d(dphi)/d(ln b) = {slope:.6}");
    println!("expected -2/v               = {:.6}", -2.0 / v);
    Ok(())
}
