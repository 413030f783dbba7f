//! One electron, one ion: evaluate the scattering element at a few beam
//! offsets and check the on-axis closed form.

use elion::scattering::scatter;
use elion::units::{BeamConfig, TrapConfig};

fn main() -> elion::Result<()> {
    let trap = TrapConfig::ca40(0.5)?;
    let r0 = trap.r0_au();
    println!("trap: 0.5 MHz calcium-40, ground width R0 = {:.2} nm", trap.r0_nm());

    // 100 eV beam, spot width R0/20, focused on the trap axis.
    let v = BeamConfig::new(100.0, [0.0, 0.0], 0.05 * r0, 0.0)?.velocity_au();
    println!("electron: 100 eV -> v = {v:.6} a.u.\n");

    println!("{:>8} {:>12} {:>12} {:>12}", "b/R0", "|S|", "arg S", "P_scat");
    for b_over_r0 in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let beam = BeamConfig::new(100.0, [b_over_r0 * r0, 0.0], 0.05 * r0, 0.0)?;
        let s = scatter(&beam, &trap, [0.0, 0.0])?;
        println!(
            "{:>8.2} {:>12.6} {:>12.6} {:>12.6}",
            b_over_r0,
            s.element.norm(),
            s.phase_shift,
            s.scattering_probability
        );
    }

    // On the axis the loss has a closed form: 1 - pi/(v sinh(pi/v)).
    let beam = BeamConfig::new(100.0, [0.0, 0.0], 0.05 * r0, 0.0)?;
    let on_axis = scatter(&beam, &trap, [0.0, 0.0])?.scattering_probability;
    let x = std::f64::consts::PI / v;
    let closed = 1.0 - x / x.sinh();
    println!("\non-axis loss {on_axis:.12}  vs closed form {closed:.12}");
    println!("difference   {:.2e}", (on_axis - closed).abs());
    Ok(())
}
