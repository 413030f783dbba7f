//! Motional-qubit flip probability against cat-state size for several beam
//! energies: one electron aimed at one displaced component flips the qubit
//! with probability sin^2(g/2).

use elion::coupling::{coupling_phase, electron_qubit_unitary, global_phase, CatState};
use elion::units::{BeamConfig, TrapConfig};

fn main() -> elion::Result<()> {
    let trap = TrapConfig::ca40(0.5)?;
    let r0 = trap.r0_au();
    let energies = [100.0, 300.0, 1000.0];

    println!(
        "{:>6} {:>14} {:>14} {:>14}",
        "alpha", "p_flip 100eV", "p_flip 300eV", "p_flip 1keV"
    );
    for i in 0..=13 {
        let alpha = 6.5 * i as f64 / 13.0;
        let focus = [std::f64::consts::SQRT_2 * r0 * alpha, 0.0];
        let cat = CatState::new([alpha, 0.0])?;
        let mut row = format!("{alpha:>6.2}");
        for energy in energies {
            let beam = BeamConfig::new(energy, focus, 0.05 * r0, 0.0)?;
            let g = coupling_phase(&beam, &trap, &cat)?;
            row.push_str(&format!(" {:>14.8}", (0.5 * g).sin().powi(2)));
        }
        println!("{row}");
    }

    // The full qubit unitary at the reference point also carries the mean
    // phase kappa (global on the qubit, physical once paths interfere).
    let alpha = 6.5;
    let cat = CatState::new([alpha, 0.0])?;
    let beam = BeamConfig::new(
        100.0,
        [std::f64::consts::SQRT_2 * r0 * alpha, 0.0],
        0.05 * r0,
        0.0,
    )?;
    let g = coupling_phase(&beam, &trap, &cat)?;
    let kappa = global_phase(&beam, &trap, &cat)?;
    let unitary = electron_qubit_unitary(g, kappa);
    println!("\nat alpha = 6.5, 100 eV:");
    println!("  g     = {g:.9} rad");
    println!("  kappa = {kappa:.9} rad");
    println!("  flip  = {:.9}", unitary.flip_probability());
    Ok(())
}
