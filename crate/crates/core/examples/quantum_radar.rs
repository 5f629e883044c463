//! Quantum illumination against a coherent-state transmitter of the same
//! energy, at room-temperature terahertz backgrounds and in the
//! microwave-like bright-background limit.
//!
//! ```bash
//! cargo run --release --example quantum_radar
//! ```

use thzq::radar::{IlluminationScenario, RadarComparison};

pub fn run() -> thzq::Result<Vec<(String, RadarComparison)>> {
    let (kappa, ns) = (0.01, 0.01);
    let cases = [
        ("1 THz, 296 K".to_string(), IlluminationScenario::from_thermal(kappa, ns, 1e12, 296.0)?),
        ("10 THz, 296 K".to_string(), IlluminationScenario::from_thermal(kappa, ns, 10e12, 296.0)?),
        ("n_B = 100".to_string(), IlluminationScenario::new(kappa, ns, 100.0)?),
    ];
    let mut out = Vec::new();
    for (label, scenario) in cases {
        let cmp = RadarComparison::evaluate(&scenario)?;
        println!(
            "{label:>14}: n_B = {:8.4}  E_q = {:.4e}  E_c = {:.4e}  advantage = {:.2} dB",
            scenario.background_photons,
            cmp.quantum,
            cmp.coherent,
            cmp.advantage_db()?
        );
        out.push((label, cmp));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> thzq::Result<()> {
    run().map(|_| ())
}
