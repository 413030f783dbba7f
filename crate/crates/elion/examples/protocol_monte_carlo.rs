//! Stochastic check of the lossy estimation protocol: empirical measurement
//! statistics against the loss-marginalized closed form, plus the
//! restart-free subsample.

use elion::metrology::{monte_carlo_protocol, p0_nonideal, rotation_angle, ProtocolConfig};

fn main() -> elion::Result<()> {
    let cfg = ProtocolConfig {
        seed: 20_260_822,
        ..ProtocolConfig::new(5, 0.2, std::f64::consts::PI, 0.5)
    };
    let trials = 200_000;
    let stats = monte_carlo_protocol(&cfg, trials)?;

    println!(
        "n = {}, eps = {}, g = pi, phi = {}, trials = {trials}, seed = {}",
        cfg.n_electrons, cfg.loss_prob, cfg.true_phase, cfg.seed
    );
    println!("\nempirical p0          : {:.6} +/- {:.6}", stats.empirical_p0, stats.standard_error);
    println!("loss-marginalized p0  : {:.6}", stats.analytic_p0);
    println!(
        "deviation             : {:+.2} sigma",
        (stats.empirical_p0 - stats.analytic_p0) / stats.standard_error
    );

    let survive = (1.0 - cfg.loss_prob).powi(cfg.n_electrons as i32);
    println!("\ntrials with a loss    : {} (expected fraction {:.5})", stats.restart_count, 1.0 - survive);
    println!("loss-free trials      : {}", stats.all_detected_trials);

    // The loss-free subsample follows the pure-state law cos^2(n theta).
    let clean_p0 = p0_nonideal(cfg.n_electrons, cfg.coupling_g, cfg.true_phase)?;
    let theta = rotation_angle(cfg.coupling_g, cfg.true_phase);
    let q = stats.empirical_p0_detected.expect("some trials survive");
    let qse = stats.standard_error_detected.expect("some trials survive");
    println!("\nper electron rotation : 2 theta = {:.6}", 2.0 * theta);
    println!("loss-free p0          : {q:.6} +/- {qse:.6}");
    println!("cos^2(n theta)        : {clean_p0:.6}");
    println!("deviation             : {:+.2} sigma", (q - clean_p0) / qse);
    Ok(())
}
