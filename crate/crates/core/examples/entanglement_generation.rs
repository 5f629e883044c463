//! How much entanglement a thermal two-mode squeezer produces, and where it
//! stops producing any.

use thzq::constants::temperature;
use thzq::gaussian::{
    entanglement_breaking_temperature, log_negativity, min_entangling_squeezing_db, source_state, Squeezing,
};

pub struct Generation {
    /// `(frequency, temperature, E_LN)` at 10 dB.
    pub table: Vec<(f64, f64, f64)>,
    pub breaking_temperature_1thz: f64,
    pub min_squeezing_5thz_room: f64,
}

pub fn run() -> thzq::Result<Generation> {
    let ten_db = Squeezing::from_db(10.0);
    let mut table = Vec::new();
    for f in [1e12, 5e12] {
        for t in [temperature::PASSIVELY_COOLED, temperature::SATELLITE_COMPONENTS] {
            let e = log_negativity(&source_state(f, t, ten_db)?)?;
            println!("f = {:.0} THz, T = {t:>5} K, 10 dB: E_LN = {e:.4}", f / 1e12);
            table.push((f, t, e));
        }
    }
    let breaking = entanglement_breaking_temperature(1e12, ten_db, 1e-4)?;
    println!("1 THz, 10 dB: entanglement vanishes above {breaking:.2} K");
    let min_db = min_entangling_squeezing_db(5e12, temperature::ROOM, 1e-4)?;
    println!("5 THz, 296 K: needs more than {min_db:.2} dB of squeezing");
    Ok(Generation {
        table,
        breaking_temperature_1thz: breaking,
        min_squeezing_5thz_room: min_db,
    })
}

#[allow(dead_code)]
fn main() -> thzq::Result<()> {
    run().map(|_| ())
}
