//! Receiver aperture needed for 1e-4 bits per use over a 500 km
//! satellite-to-ground link, with the ground detector at room temperature
//! or cooled with liquid nitrogen.

use thzq::constants::temperature;
use thzq::qkd::ApertureProblem;
use thzq::Error;

pub fn run() -> thzq::Result<Vec<(f64, f64, f64, Option<f64>)>> {
    let mut out = Vec::new();
    for detector in [temperature::ROOM, temperature::LIQUID_NITROGEN] {
        for eta in [0.1, 1.0] {
            for thz in [5.0, 14.0, 30.0, 50.0] {
                let p = ApertureProblem {
                    efficiency: eta,
                    detector_temperature: detector,
                    ..ApertureProblem::new(thz * 1e12)
                };
                let ra = match p.solve() {
                    Ok(r) => Some(r),
                    Err(Error::Unreachable { .. }) => None,
                    Err(e) => return Err(e),
                };
                match ra {
                    Some(r) => println!("{detector:>5} K, eta = {eta}, {thz:>4} THz: r_a >= {r:.3} m"),
                    None => println!("{detector:>5} K, eta = {eta}, {thz:>4} THz: out of reach"),
                }
                out.push((detector, eta, thz * 1e12, ra));
            }
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> thzq::Result<()> {
    run().map(|_| ())
}
