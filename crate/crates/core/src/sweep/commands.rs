use rayon::prelude::*;

use super::{Cell, Command, Row, SweepSpec, Table};
use crate::error::Result;
use crate::gaussian::{log_negativity, source_state, thermal_photon_number, thermal_variance, Squeezing};
use crate::link::{evolve_two_mode, Detector, DiffractionLink};
use crate::qkd::{accessible_frequency_bound, accessible_frequency_numeric, plob_bound, rr_key_rate, ApertureProblem};
use crate::radar::{IlluminationScenario, RadarComparison};

const OK: Cell = Cell::Text("ok");
const NO_ROOT: Cell = Cell::Text("no_root");

fn num(r: Result<f64>) -> (Cell, bool) {
    match r {
        Ok(v) => (Cell::Num(v), true),
        Err(_) => (Cell::Num(f64::NAN), false),
    }
}

fn row(inputs: &[f64], outputs: Vec<(Cell, bool)>) -> Row {
    let ok = outputs.iter().all(|(_, ok)| *ok);
    let mut cells: Vec<Cell> = inputs.iter().map(|&v| Cell::Num(v)).collect();
    cells.extend(outputs.into_iter().map(|(c, _)| c));
    Row { cells, ok }
}

fn solver_row(inputs: &[f64], outputs: Vec<(Cell, bool)>) -> Row {
    let mut r = row(inputs, outputs);
    r.cells.push(if r.ok { OK } else { NO_ROOT });
    r
}

fn product3(a: &[f64], b: &[f64], c: &[f64]) -> Vec<[f64; 3]> {
    a.iter()
        .flat_map(|&x| b.iter().flat_map(move |&y| c.iter().map(move |&z| [x, y, z])))
        .collect()
}

pub(super) fn run(spec: &SweepSpec) -> Result<Table> {
    let rows = match spec.command() {
        Command::EntanglementGen => entanglement_gen(spec)?,
        Command::EntanglementDist => entanglement_dist(spec)?,
        Command::Keyrate => keyrate(spec)?,
        Command::AccessibleFreq => accessible_freq(spec)?,
        Command::MinAperture => min_aperture(spec)?,
        Command::Radar => radar(spec)?,
    };
    Ok(Table {
        columns: spec.command().columns(),
        rows,
    })
}

fn entanglement_gen(spec: &SweepSpec) -> Result<Vec<Row>> {
    let grid = product3(&spec.axis("freq")?, &spec.axis("temp")?, &spec.axis("squeeze-db")?);
    Ok(grid
        .par_iter()
        .map(|&[f, t, db]| {
            let nbar = thermal_photon_number(f, t);
            let e = source_state(f, t, Squeezing::from_db(db)).and_then(|s| log_negativity(&s));
            row(&[f, t, db], vec![num(nbar), num(e)])
        })
        .collect())
}

fn entanglement_dist(spec: &SweepSpec) -> Result<Vec<Row>> {
    let (temp, eta) = (spec.scalar("temp")?, spec.scalar("eta")?);
    let grid = product3(&spec.axis("freq")?, &spec.axis("squeeze-db")?, &spec.axis("transmissivity")?);
    Ok(grid
        .par_iter()
        .map(|&[f, db, t]| {
            let e = (|| {
                let state = source_state(f, temp, Squeezing::from_db(db))?;
                let detector = Detector::new(eta, thermal_variance(f, temp)?)?;
                log_negativity(&evolve_two_mode(&state, t, detector)?)
            })();
            row(&[f, db, t], vec![num(e)])
        })
        .collect())
}

fn keyrate(spec: &SweepSpec) -> Result<Vec<Row>> {
    let (eta, w0, ra) = (spec.scalar("eta")?, spec.scalar("w0")?, spec.scalar("ra")?);
    let grid = product3(&spec.axis("freq")?, &spec.axis("temp")?, &spec.axis("dist")?);
    Ok(grid
        .par_iter()
        .map(|&[f, temp, z]| {
            let t = DiffractionLink::new(w0, f, z, ra).map(|l| l.transmissivity());
            let v0 = thermal_variance(f, temp);
            let (rate, plob) = match (t.clone(), v0) {
                (Ok(t), Ok(v0)) => (rr_key_rate(v0, t, eta).map(|r| r.rate()), plob_bound(v0, t)),
                (Err(e), _) | (_, Err(e)) => (Err(e.clone()), Err(e)),
            };
            row(&[f, temp, z], vec![num(t), num(rate), num(plob)])
        })
        .collect())
}

fn accessible_freq(spec: &SweepSpec) -> Result<Vec<Row>> {
    let grid = product3(&spec.axis("transmissivity")?, &spec.axis("temp")?, &spec.axis("eta")?);
    Ok(grid
        .par_iter()
        .map(|&[t, temp, eta]| {
            let f = accessible_frequency_numeric(t, temp, eta);
            let bound = accessible_frequency_bound(t, temp);
            solver_row(&[t, temp, eta], vec![num(f), num(bound)])
        })
        .collect())
}

fn min_aperture(spec: &SweepSpec) -> Result<Vec<Row>> {
    let base = ApertureProblem {
        distance: spec.scalar("dist")?,
        waist: spec.scalar("w0")?,
        target_rate: spec.scalar("target-rate")?,
        ..ApertureProblem::new(1.0)
    };
    let grid = product3(&spec.axis("freq")?, &spec.axis("temp")?, &spec.axis("eta")?);
    Ok(grid
        .par_iter()
        .map(|&[f, temp, eta]| {
            let p = ApertureProblem {
                frequency: f,
                detector_temperature: temp,
                efficiency: eta,
                ..base
            };
            solver_row(&[f, temp, eta], vec![num(p.solve()), num(p.solve_plob())])
        })
        .collect())
}

fn radar(spec: &SweepSpec) -> Result<Vec<Row>> {
    let (kappas, nss) = (spec.axis("kappa")?, spec.axis("ns")?);
    // [freq, temp, nb] per background
    let backgrounds: Vec<[f64; 3]> = if spec.is_set("nb") {
        spec.axis("nb")?.into_iter().map(|nb| [f64::NAN, f64::NAN, nb]).collect()
    } else {
        product3(&spec.axis("freq")?, &spec.axis("temp")?, &[0.0])
            .into_iter()
            .map(|[f, t, _]| Ok([f, t, thermal_photon_number(f, t)?]))
            .collect::<Result<_>>()?
    };
    let mut grid = Vec::with_capacity(backgrounds.len() * kappas.len() * nss.len());
    for &b in &backgrounds {
        for &k in &kappas {
            for &n in &nss {
                grid.push((b, k, n));
            }
        }
    }
    Ok(grid
        .par_iter()
        .map(|&([f, t, nb], kappa, ns)| {
            let cmp = IlluminationScenario::new(kappa, ns, nb).and_then(|s| RadarComparison::evaluate(&s));
            let outputs = match cmp {
                Ok(c) => vec![
                    (Cell::Num(c.quantum), true),
                    (Cell::Num(c.coherent), true),
                    num(c.advantage_db()),
                ],
                Err(_) => vec![(Cell::Num(f64::NAN), false); 3],
            };
            solver_row(&[f, t, nb, kappa, ns], outputs)
        })
        .collect())
}
