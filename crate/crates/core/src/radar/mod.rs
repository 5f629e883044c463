//! Quantum illumination against coherent-state illumination.
//!
//! Each hypothesis test is reduced to its quantum Chernoff exponent, computed
//! by brute force on Fock-space truncations of the two candidate states.

mod chernoff;
mod states;

pub use chernoff::{chernoff_exponent, ChernoffBound, ChernoffPair, DensityOperator};
pub use states::{coherent_states, displacement_matrix, qi_states, thermal_distribution};

use crate::error::{ensure, Error, Result};
use crate::gaussian::thermal_photon_number;

/// Largest trace a truncated state may lose.
pub const TRACE_TAIL: f64 = 1e-8;
/// Largest Fock dimension per mode; the coherent comparator stores a dense
/// square of this size.
pub const MAX_DIMENSION: usize = 8192;
/// Tail allowed per truncated mode; three modes share [`TRACE_TAIL`].
const MODE_TAIL: f64 = TRACE_TAIL / 4.0;

/// Smallest dimension `d` at which a thermal mode of mean `mean` leaves
/// less than `tail` outside `|0>, ..., |d - 1>`.
pub fn thermal_cutoff(mean: f64, tail: f64) -> usize {
    if mean <= 0.0 {
        return 1;
    }
    // the tail beyond d photons is (mean / (mean + 1))^d
    let ratio = (mean / (mean + 1.0)).ln();
    (tail.ln() / ratio).floor() as usize + 1
}

/// Fock dimensions of the return mode, idler and injected bath.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub signal: usize,
    pub idler: usize,
    pub bath: usize,
}

/// Detection scenario: reflectivity `kappa`, probe photons per mode `N_S`
/// and background photons per mode `n_B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IlluminationScenario {
    pub reflectivity: f64,
    pub signal_photons: f64,
    pub background_photons: f64,
    /// Return-mode dimension; `None` picks the smallest one meeting
    /// [`TRACE_TAIL`].
    pub cutoff: Option<usize>,
}

impl IlluminationScenario {
    pub fn new(reflectivity: f64, signal_photons: f64, background_photons: f64) -> Result<Self> {
        ensure((0.0..1.0).contains(&reflectivity), "reflectivity", reflectivity, "0 <= kappa < 1")?;
        ensure(
            signal_photons > 0.0 && signal_photons.is_finite(),
            "signal photons",
            signal_photons,
            "N_S > 0",
        )?;
        ensure(
            background_photons >= 0.0 && background_photons.is_finite(),
            "background photons",
            background_photons,
            "n_B >= 0",
        )?;
        Ok(Self {
            reflectivity,
            signal_photons,
            background_photons,
            cutoff: None,
        })
    }

    /// Background from blackbody occupation at `frequency` and `temperature`.
    pub fn from_thermal(reflectivity: f64, signal_photons: f64, frequency: f64, temperature: f64) -> Result<Self> {
        Self::new(reflectivity, signal_photons, thermal_photon_number(frequency, temperature)?)
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Result<Self> {
        ensure(cutoff >= 2, "cutoff", cutoff as f64, ">= 2")?;
        self.cutoff = Some(cutoff);
        Ok(self)
    }

    /// Coherent amplitude returned by the object, `sqrt(kappa N_S)`.
    pub fn displacement(&self) -> f64 {
        (self.reflectivity * self.signal_photons).sqrt()
    }

    /// Mean photons in the return mode when the object is present.
    fn return_mean(&self) -> f64 {
        self.background_photons + self.reflectivity * self.signal_photons
    }

    /// Truncation for the illumination pair. An explicit cutoff rescales all
    /// three modes by the same factor as the return mode.
    pub fn qi_truncation(&self) -> Truncation {
        let signal = thermal_cutoff(self.return_mean(), MODE_TAIL);
        let idler = thermal_cutoff(self.signal_photons, MODE_TAIL);
        let bath = thermal_cutoff(self.background_photons / (1.0 - self.reflectivity), MODE_TAIL);
        match self.cutoff {
            None => Truncation { signal, idler, bath },
            Some(d) => {
                let scale = |n: usize| ((n * d) as f64 / signal as f64).ceil().max(1.0) as usize;
                Truncation {
                    signal: d,
                    idler: scale(idler),
                    bath: scale(bath),
                }
            }
        }
    }

    pub fn coherent_truncation(&self) -> usize {
        self.cutoff.unwrap_or_else(|| thermal_cutoff(self.return_mean(), MODE_TAIL))
    }
}

/// Chernoff exponent of two-mode squeezed vacuum illumination.
pub fn qi_exponent(scenario: &IlluminationScenario) -> Result<f64> {
    let (rho0, rho1) = qi_states(scenario)?;
    chernoff_exponent(&rho0, &rho1)
}

/// Chernoff exponent of coherent-state illumination at the same probe energy.
pub fn coherent_exponent(scenario: &IlluminationScenario) -> Result<f64> {
    Ok(states::coherent_pair(scenario)?.bound().exponent)
}

/// Both exponents and their ratio in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadarComparison {
    pub quantum: f64,
    pub coherent: f64,
}

impl RadarComparison {
    pub fn evaluate(scenario: &IlluminationScenario) -> Result<Self> {
        Ok(Self {
            quantum: qi_exponent(scenario)?,
            coherent: coherent_exponent(scenario)?,
        })
    }

    /// `10 log10(E_q / E_c)`; undefined when the coherent exponent vanishes.
    pub fn advantage_db(&self) -> Result<f64> {
        if self.coherent <= 0.0 {
            return Err(Error::Undefined("coherent-state exponent is zero"));
        }
        Ok(10.0 * (self.quantum / self.coherent).log10())
    }
}

/// Quantum-illumination advantage in dB.
pub fn qr_advantage_db(scenario: &IlluminationScenario) -> Result<f64> {
    RadarComparison::evaluate(scenario)?.advantage_db()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coherent_oracle(sc: &IlluminationScenario) -> f64 {
        let n = sc.background_photons;
        sc.reflectivity * sc.signal_photons * ((n + 1.0).sqrt() - n.sqrt()).powi(2)
    }

    #[test]
    fn cutoff_rule() {
        assert_eq!(thermal_cutoff(0.0, 1e-8), 1);
        let d = thermal_cutoff(5.681, MODE_TAIL);
        let ratio: f64 = 5.681 / 6.681;
        assert!(ratio.powi(d as i32) < MODE_TAIL);
        assert!(ratio.powi(d as i32 - 1) >= MODE_TAIL);
    }

    #[test]
    fn pure_coherent_exponent() {
        let sc = IlluminationScenario::new(0.04, 1.0, 0.0).unwrap().with_cutoff(30).unwrap();
        let e = coherent_exponent(&sc).unwrap();
        assert!((e - 0.04).abs() < 1e-9, "{e}");
    }

    #[test]
    fn coherent_exponent_matches_closed_form() {
        for nb in [0.246, 1.0, 5.681] {
            let sc = IlluminationScenario::new(0.01, 0.01, nb).unwrap();
            let e = coherent_exponent(&sc).unwrap();
            let oracle = coherent_oracle(&sc);
            assert!((e / oracle - 1.0).abs() < 1e-4, "nb {nb}: {e} vs {oracle}");
        }
    }

    #[test]
    fn absent_object_gives_no_information() {
        let sc = IlluminationScenario::new(0.0, 0.01, 0.5).unwrap();
        assert!(qi_exponent(&sc).unwrap() < 1e-12);
        assert!(matches!(qr_advantage_db(&sc), Err(Error::Undefined(_))));
    }

    #[test]
    fn vanishing_probe_energy() {
        let sc = IlluminationScenario::new(0.01, 1e-7, 0.5).unwrap();
        assert!(qi_exponent(&sc).unwrap() < 1e-8);
        assert!(coherent_exponent(&sc).unwrap() < 1e-8);
    }

    #[test]
    fn quantum_beats_coherent_at_low_energy() {
        for (f, t) in [(1e12, 296.0), (10e12, 296.0), (3e12, 173.0)] {
            let sc = IlluminationScenario::from_thermal(0.01, 0.01, f, t).unwrap();
            let c = RadarComparison::evaluate(&sc).unwrap();
            assert!(c.quantum >= c.coherent, "{f} {t}: {c:?}");
        }
    }

    #[test]
    fn exponents_converge_in_cutoff() {
        let sc = IlluminationScenario::from_thermal(0.01, 0.01, 10e12, 296.0).unwrap();
        let d = sc.qi_truncation().signal;
        let wide = sc.with_cutoff(d + d / 2).unwrap();
        let (q0, q1) = (qi_exponent(&sc).unwrap(), qi_exponent(&wide).unwrap());
        assert!((q1 / q0 - 1.0).abs() < 1e-4, "{q0} {q1}");
        let (c0, c1) = (coherent_exponent(&sc).unwrap(), coherent_exponent(&wide).unwrap());
        assert!((c1 / c0 - 1.0).abs() < 1e-4, "{c0} {c1}");
    }

    #[test]
    fn rejects_bad_scenarios() {
        assert!(IlluminationScenario::new(1.0, 0.01, 1.0).is_err());
        assert!(IlluminationScenario::new(0.1, 0.0, 1.0).is_err());
        assert!(IlluminationScenario::new(0.1, 0.01, -1.0).is_err());
        assert!(IlluminationScenario::new(0.1, 0.01, 1.0).unwrap().with_cutoff(1).is_err());
    }
}
