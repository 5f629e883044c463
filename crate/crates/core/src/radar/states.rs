use nalgebra::DMatrix;

use super::chernoff::{BlockOverlap, ChernoffPair, DensityOperator};
use super::{IlluminationScenario, Truncation, MAX_DIMENSION, TRACE_TAIL};
use crate::error::{Error, Result};

/// Truncated thermal distribution `n^k / (n + 1)^(k + 1)`.
pub fn thermal_distribution(mean: f64, dimension: usize) -> Vec<f64> {
    let ratio = mean / (mean + 1.0);
    let mut p = Vec::with_capacity(dimension);
    let mut term = 1.0 / (mean + 1.0);
    for _ in 0..dimension {
        p.push(term);
        term *= ratio;
    }
    p
}

fn log_factorials(n: usize) -> Vec<f64> {
    let mut table = vec![0.0; n + 1];
    for i in 1..=n {
        table[i] = table[i - 1] + (i as f64).ln();
    }
    table
}

fn check_dimension(d: usize) -> Result<()> {
    if d > MAX_DIMENSION {
        return Err(Error::Truncation(format!("needs {d} Fock states, more than {MAX_DIMENSION}")));
    }
    Ok(())
}

fn check_trace(trace: f64, what: &str) -> Result<()> {
    if trace < 1.0 - TRACE_TAIL {
        return Err(Error::Truncation(format!(
            "{what} keeps trace {trace:.12}, below 1 - {TRACE_TAIL:e}"
        )));
    }
    Ok(())
}

/// Beam-splitter amplitudes `<k, n + j - k| U |n, j>` for the mixer
/// `out = sqrt(t) a + sqrt(1 - t) b`, where `a` carries `n` photons, `b`
/// carries `j` and `k` photons leave in `out`.
pub(crate) struct BeamSplitterAmplitudes {
    ln_fact: Vec<f64>,
    ln_t: f64,
    ln_r: f64,
}

impl BeamSplitterAmplitudes {
    pub fn new(t: f64, max_photons: usize) -> Self {
        Self {
            ln_fact: log_factorials(max_photons),
            ln_t: 0.5 * t.ln(),
            ln_r: 0.5 * (1.0 - t).ln(),
        }
    }

    fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.ln_fact[n] - self.ln_fact[k] - self.ln_fact[n - k]
    }

    /// `e * ln x` with `0 * ln 0 = 0`.
    fn scaled(e: usize, ln_x: f64) -> f64 {
        if e == 0 {
            0.0
        } else {
            e as f64 * ln_x
        }
    }

    pub fn amplitude(&self, n: usize, j: usize, k: usize) -> f64 {
        if k > n + j {
            return 0.0;
        }
        let l = n + j - k;
        let norm = 0.5 * (self.ln_fact[k] + self.ln_fact[l] - self.ln_fact[n] - self.ln_fact[j]);
        let mut total = 0.0;
        // p of the n photons and k - p of the j photons end up in `out`
        for p in k.saturating_sub(j)..=n.min(k) {
            let q = k - p;
            let ln = self.ln_binomial(n, p)
                + self.ln_binomial(j, q)
                + norm
                + Self::scaled(p + j - q, self.ln_t)
                + Self::scaled(n - p + q, self.ln_r);
            let term = ln.exp();
            total += if (n - p) % 2 == 0 { term } else { -term };
        }
        total
    }
}

/// Block index range of the return/idler basis `|k, n>` grouped by `k - n`.
fn blocks(truncation: &Truncation) -> impl Iterator<Item = (isize, Vec<usize>)> + '_ {
    let (dr, di) = (truncation.signal as isize, truncation.idler as isize);
    (-(di - 1)..dr).map(move |delta| {
        let idler: Vec<usize> = (0..di)
            .filter(|&n| (0..dr).contains(&(delta + n)))
            .map(|n| n as usize)
            .collect();
        (delta, idler)
    })
}

/// Hypothesis states for two-mode squeezed vacuum illumination.
///
/// Under the null hypothesis the return mode is thermal with mean `nb` and
/// the retained idler is thermal with mean `ns`. Under the alternative the
/// signal reflects off the object with reflectivity `kappa` and mixes with a
/// bath of mean `nb / (1 - kappa)`, so the background seen in the return
/// mode is the same in both cases. Both operators are block diagonal in the
/// photon-number difference between return and idler.
pub fn qi_states(scenario: &IlluminationScenario) -> Result<(DensityOperator, DensityOperator)> {
    let truncation = scenario.qi_truncation();
    let (kappa, ns, nb) = (scenario.reflectivity, scenario.signal_photons, scenario.background_photons);
    let (dr, di, dj) = (truncation.signal, truncation.idler, truncation.bath);
    for d in [dr, di, dj] {
        check_dimension(d)?;
    }

    let p_return = thermal_distribution(nb, dr);
    let p_idler = thermal_distribution(ns, di);
    let p_bath = thermal_distribution(nb / (1.0 - kappa), dj);
    let amplitude_scale: Vec<f64> = p_idler.iter().map(|p| p.sqrt()).collect();
    let layout: Vec<(isize, Vec<usize>)> = blocks(&truncation).collect();

    let mut rho1: Vec<DMatrix<f64>> = layout.iter().map(|(_, idx)| DMatrix::zeros(idx.len(), idx.len())).collect();
    let bs = BeamSplitterAmplitudes::new(kappa, dr + dj + di);
    let mut amp = DMatrix::<f64>::zeros(di, dr);
    for (j, &q) in p_bath.iter().enumerate() {
        for n in 0..di {
            for k in 0..dr {
                amp[(n, k)] = bs.amplitude(n, j, k);
            }
        }
        for ((delta, idx), block) in layout.iter().zip(rho1.iter_mut()) {
            for (a, &n) in idx.iter().enumerate() {
                let k = (delta + n as isize) as usize;
                let left = q * amp[(n, k)];
                if left == 0.0 {
                    continue;
                }
                for (b, &m) in idx.iter().enumerate() {
                    let k2 = (delta + m as isize) as usize;
                    block[(a, b)] += left * amp[(m, k2)];
                }
            }
        }
    }
    for ((_, idx), block) in layout.iter().zip(rho1.iter_mut()) {
        for (a, &n) in idx.iter().enumerate() {
            for (b, &m) in idx.iter().enumerate() {
                block[(a, b)] *= amplitude_scale[n] * amplitude_scale[m];
            }
        }
    }
    let rho0: Vec<DMatrix<f64>> = layout
        .iter()
        .map(|(delta, idx)| {
            let diag: Vec<f64> = idx
                .iter()
                .map(|&n| p_return[(delta + n as isize) as usize] * p_idler[n])
                .collect();
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
        })
        .collect();

    let rho0 = DensityOperator::from_blocks(rho0)?;
    let rho1 = DensityOperator::from_blocks(rho1)?;
    check_trace(rho0.trace(), "null-hypothesis state")?;
    check_trace(rho1.trace(), "object-present state")?;
    Ok((rho0, rho1))
}

/// Matrix elements `<m|D(alpha)|n>` for real `alpha`, `m, n < dimension`.
pub fn displacement_matrix(alpha: f64, dimension: usize) -> DMatrix<f64> {
    let ln_fact = log_factorials(dimension);
    let mut d = DMatrix::<f64>::zeros(dimension, dimension);
    for n in 0..dimension {
        d[(0, n)] = if alpha == 0.0 {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            let mag = (-0.5 * alpha * alpha + n as f64 * alpha.ln() - 0.5 * ln_fact[n]).exp();
            if n % 2 == 0 {
                mag
            } else {
                -mag
            }
        };
    }
    // <m+1|D|n> sqrt(m+1) = <m|a D|n> = <m|D (a + alpha)|n>
    for m in 0..dimension - 1 {
        let scale = 1.0 / ((m + 1) as f64).sqrt();
        for n in 0..dimension {
            let down = if n > 0 { (n as f64).sqrt() * d[(m, n - 1)] } else { 0.0 };
            d[(m + 1, n)] = (down + alpha * d[(m, n)]) * scale;
        }
    }
    d
}

/// Coherent-state illumination: thermal background against the same
/// background displaced by `sqrt(kappa ns)`, as dense single-block operators.
pub fn coherent_states(scenario: &IlluminationScenario) -> Result<(DensityOperator, DensityOperator)> {
    let d = scenario.coherent_truncation();
    check_dimension(d)?;
    let p = thermal_distribution(scenario.background_photons, d);
    let disp = displacement_matrix(scenario.displacement(), d);
    let scaled = DMatrix::from_fn(d, d, |i, l| disp[(i, l)] * p[l]);
    let rho1 = &scaled * disp.transpose();
    let rho0 = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(p));
    let rho0 = DensityOperator::from_blocks(vec![rho0])?;
    let rho1 = DensityOperator::from_blocks(vec![rho1])?;
    check_trace(rho0.trace(), "thermal background")?;
    check_trace(rho1.trace(), "displaced background")?;
    Ok((rho0, rho1))
}

/// Spectral form of the coherent-state pair without diagonalisation: the
/// displaced thermal state has the thermal eigenvalues with eigenvectors
/// `D(alpha)|l>`.
pub(crate) fn coherent_pair(scenario: &IlluminationScenario) -> Result<ChernoffPair> {
    let d = scenario.coherent_truncation();
    check_dimension(d)?;
    let p = thermal_distribution(scenario.background_photons, d);
    let disp = displacement_matrix(scenario.displacement(), d);
    let overlap = disp.map(|x| x * x);
    let trace0: f64 = p.iter().sum();
    let trace1: f64 = overlap.row_sum().iter().zip(&p).map(|(w, q)| w * q).sum();
    check_trace(trace0, "thermal background")?;
    check_trace(trace1, "displaced background")?;
    Ok(ChernoffPair::from_overlaps(vec![BlockOverlap {
        lambda: p.iter().map(|x| x / trace0).collect(),
        mu: p.iter().map(|x| x / trace1).collect(),
        overlap,
    }]))
}
