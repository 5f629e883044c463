//! Lowest usable carrier frequency as the channel gets worse, next to the
//! closed-form bound that any protocol must respect.

use thzq::qkd::{accessible_frequency_bound, accessible_frequency_numeric};

pub fn run() -> thzq::Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::new();
    for eta in [0.1, 1.0] {
        for t in [0.01, 0.1, 0.5, 0.9] {
            let f = accessible_frequency_numeric(t, 30.0, eta)?;
            let bound = accessible_frequency_bound(t, 30.0)?;
            println!("30 K, eta = {eta}, T = {t:<4}: f_min = {:7.3} THz (bound {:6.3} THz)", f / 1e12, bound / 1e12);
            out.push((t, eta, f));
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> thzq::Result<()> {
    run().map(|_| ())
}
