//! Programmatic sweep: the same tables the `thzq` binary writes, built from a
//! config string and rendered as CSV in memory.

use thzq::sweep::{run as run_sweep, Command, SweepSpec};

pub fn run() -> thzq::Result<String> {
    let mut spec = SweepSpec::new(Command::Keyrate);
    spec.apply_config(
        "# 50 THz only, five distances
         freq = 5e13
         temp = 30
         dist = 1e5:3e5
         points = 5",
    )?;
    let table = run_sweep(&spec)?;
    let mut csv = Vec::new();
    table.write_csv(&mut csv).expect("in-memory write");
    let csv = String::from_utf8(csv).expect("ascii output");
    print!("{csv}");
    println!("\nreproduce with:\n{}", spec.to_config());
    Ok(csv)
}

#[allow(dead_code)]
fn main() -> thzq::Result<()> {
    run().map(|_| ())
}
