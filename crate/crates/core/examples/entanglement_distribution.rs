//! Entanglement surviving a lossy channel followed by an inefficient, noisy
//! detector at 30 K, and the transmissivity below which none survives.

use thzq::gaussian::{log_negativity, source_state, thermal_variance, Squeezing};
use thzq::link::{evolve_two_mode, Detector};
use thzq::solve::{bisect, Spacing};

const TEMPERATURE: f64 = 30.0;
const EFFICIENCY: f64 = 0.1;

pub fn output_entanglement(f: f64, db: f64, t: f64) -> thzq::Result<f64> {
    let state = source_state(f, TEMPERATURE, Squeezing::from_db(db))?;
    let detector = Detector::new(EFFICIENCY, thermal_variance(f, TEMPERATURE)?)?;
    log_negativity(&evolve_two_mode(&state, t, detector)?)
}

/// Smallest transmissivity keeping `nu_minus < 1`, or 0 if any channel does.
pub fn zero_crossing(f: f64, db: f64) -> thzq::Result<f64> {
    let margin = |t: f64| {
        let state = source_state(f, TEMPERATURE, Squeezing::from_db(db)).expect("valid source");
        let detector = Detector::new(EFFICIENCY, thermal_variance(f, TEMPERATURE).unwrap()).unwrap();
        let out = evolve_two_mode(&state, t, detector).expect("valid channel");
        -thzq::gaussian::symplectic_eigenvalue_pt(&out).map_or(f64::NAN, f64::ln)
    };
    if margin(1e-6) > 0.0 {
        return Ok(0.0);
    }
    let root = bisect(margin, 1e-6, 1.0, Spacing::Linear, |lo, hi| hi - lo < 1e-6, "entanglement margin")?;
    Ok(root.nonnegative_end())
}

pub fn run() -> thzq::Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::new();
    for f in [2e12, 5e12] {
        for db in [3.0, 10.0] {
            let t_min = zero_crossing(f, db)?;
            let at_half = output_entanglement(f, db, 0.5)?;
            println!(
                "{:.0} THz, {db:>4} dB: E_LN(T = 0.5) = {at_half:.4}, entangled for T > {t_min:.4}",
                f / 1e12
            );
            out.push((f, db, t_min));
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> thzq::Result<()> {
    run().map(|_| ())
}
