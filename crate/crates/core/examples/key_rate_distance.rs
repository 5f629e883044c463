//! Inter-satellite key rate against distance for a 10 cm transmitter and
//! receiver at 30 K, with the repeaterless capacity alongside.

use thzq::gaussian::thermal_variance;
use thzq::link::DiffractionLink;
use thzq::qkd::{plob_bound, rr_key_rate};

pub fn rate_at(f: f64, temperature: f64, distance: f64, eta: f64) -> thzq::Result<(f64, f64)> {
    let t = DiffractionLink::with_defaults(f, distance)?.transmissivity();
    let v0 = thermal_variance(f, temperature)?;
    Ok((rr_key_rate(v0, t, eta)?.rate(), plob_bound(v0, t)?))
}

pub fn run() -> thzq::Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::new();
    println!("{:>8} {:>8} {:>12} {:>12}", "f [THz]", "z [km]", "R [b/use]", "PLOB");
    for f in [10e12, 20e12, 50e12] {
        for km in [50.0, 100.0, 200.0, 300.0] {
            let (r, c) = rate_at(f, 30.0, km * 1e3, 0.1)?;
            println!("{:>8.0} {km:>8.0} {r:>12.4e} {c:>12.4e}", f / 1e12);
            out.push((f, km * 1e3, r));
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> thzq::Result<()> {
    run().map(|_| ())
}
