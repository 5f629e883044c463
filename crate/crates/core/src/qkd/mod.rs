//! Reverse-reconciliation key rates and the solvers built on them.
//!
//! Rates are in bits per channel use. Raw rates may be negative; the solvers
//! need the sign, so clamping happens only in [`RateResult::rate`].

mod model;

pub use model::{rr_key_rate_asymptotic, rr_key_rate_from_model, QkdScenario, DEFAULT_MODULATION};

use crate::constants::{BOLTZMANN, PLANCK};
use crate::error::{ensure, Error, Result};
use crate::gaussian::{entropy_h, thermal_variance};
use crate::link::DiffractionLink;
use crate::solve::{bisect, relative, Spacing};

/// Search bracket for [`accessible_frequency_numeric`], Hz.
pub const FREQUENCY_BRACKET: (f64, f64) = (1e10, 1e14);
/// Search bracket for [`min_aperture_radius`], m.
pub const APERTURE_BRACKET: (f64, f64) = (1e-3, 1e3);
/// Relative width at which both solvers stop.
pub const SOLVER_TOLERANCE: f64 = 1e-3;

/// Mutual information and Eve's Holevo bound, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateComponents {
    pub mutual_information: f64,
    pub holevo: f64,
}

/// A key rate before clamping, with its components when known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateResult {
    pub raw: f64,
    pub components: Option<RateComponents>,
}

impl RateResult {
    pub fn new(raw: f64) -> Self {
        Self { raw, components: None }
    }

    pub fn from_components(mutual_information: f64, holevo: f64) -> Self {
        Self {
            raw: mutual_information - holevo,
            components: Some(RateComponents {
                mutual_information,
                holevo,
            }),
        }
    }

    /// Achievable rate, `max(raw, 0)`.
    pub fn rate(&self) -> f64 {
        self.raw.max(0.0)
    }
}

fn check_transmissivity(t: f64) -> Result<()> {
    ensure(t > 0.0 && t < 1.0, "transmissivity", t, "0 < T < 1")
}

/// Closed-form reverse-reconciliation rate for preparation noise `v0`,
/// channel transmissivity `t` and detection efficiency `eta`.
///
/// ```
/// # use thzq::qkd::rr_key_rate;
/// let r = rr_key_rate(1.0, 0.75, 1.0).unwrap();
/// assert!((r.raw - 1.0).abs() < 1e-12);
/// ```
pub fn rr_key_rate(v0: f64, t: f64, eta: f64) -> Result<RateResult> {
    ensure(v0 >= 1.0 && v0.is_finite(), "preparation noise", v0, "V0 >= 1")?;
    check_transmissivity(t)?;
    ensure(eta > 0.0 && eta <= 1.0, "detection efficiency", eta, "0 < eta <= 1")?;
    let k = (1.0 - t) * (1.0 - eta);
    let b = k + eta;
    let raw = entropy_h(((k * v0 + eta) / b).sqrt())? - entropy_h(v0)? + 0.5 * (b / (1.0 - t)).log2();
    Ok(RateResult::new(raw))
}

/// Repeaterless capacity of a thermal-loss channel with mean thermal
/// photon number `(v0 - 1) / 2`; zero when the noise exceeds `T / (1 - T)`.
pub fn plob_bound(v0: f64, t: f64) -> Result<f64> {
    ensure(v0 >= 1.0 && v0.is_finite(), "preparation noise", v0, "V0 >= 1")?;
    check_transmissivity(t)?;
    let nbar = (v0 - 1.0) / 2.0;
    if nbar >= t / (1.0 - t) {
        return Ok(0.0);
    }
    Ok(-(1.0 - t).log2() - nbar * t.log2() - entropy_h(v0)?)
}

/// Closed-form lower bound `ln(1/T) k T_e / h` on the accessible frequency.
pub fn accessible_frequency_bound(t: f64, temperature: f64) -> Result<f64> {
    ensure(t > 0.0 && t <= 1.0, "transmissivity", t, "0 < T <= 1")?;
    ensure(temperature > 0.0 && temperature.is_finite(), "temperature", temperature, "T_e > 0 K")?;
    Ok(-t.ln() * BOLTZMANN * temperature / PLANCK)
}

/// Lowest frequency with a non-negative key rate at channel transmissivity
/// `t`, source temperature `temperature` and detection efficiency `eta`.
///
/// Bisects in log frequency over [`FREQUENCY_BRACKET`] and returns the upper
/// end of the final bracket, where the rate is non-negative.
pub fn accessible_frequency_numeric(t: f64, temperature: f64, eta: f64) -> Result<f64> {
    check_transmissivity(t)?;
    ensure(temperature > 0.0 && temperature.is_finite(), "temperature", temperature, "T_e > 0 K")?;
    ensure(eta > 0.0 && eta <= 1.0, "detection efficiency", eta, "0 < eta <= 1")?;
    let objective = |f: f64| {
        thermal_variance(f, temperature)
            .and_then(|v0| rr_key_rate(v0, t, eta))
            .map_or(f64::NAN, |r| r.raw)
    };
    let (lo, hi) = FREQUENCY_BRACKET;
    let root = bisect(objective, lo, hi, Spacing::Log, relative(SOLVER_TOLERANCE), "key rate in frequency")?;
    Ok(root.nonnegative_end())
}

/// Minimum receiver aperture for a target key rate on a diffraction-only link.
///
/// Alice's preparation noise, Eve's variance and the detector noise are all
/// taken at `detector_temperature`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApertureProblem {
    pub frequency: f64,
    pub distance: f64,
    pub waist: f64,
    pub efficiency: f64,
    pub detector_temperature: f64,
    pub target_rate: f64,
}

impl ApertureProblem {
    /// 500 km, 10 cm waist, efficiency 0.1, 296 K, 1e-4 bits per use.
    pub fn new(frequency: f64) -> Self {
        Self {
            frequency,
            distance: 5e5,
            waist: 0.1,
            efficiency: 0.1,
            detector_temperature: crate::constants::temperature::ROOM,
            target_rate: 1e-4,
        }
    }

    /// Smallest aperture reaching the target with [`rr_key_rate`].
    pub fn solve(&self) -> Result<f64> {
        let eta = self.efficiency;
        ensure(eta > 0.0 && eta <= 1.0, "detection efficiency", eta, "0 < eta <= 1")?;
        self.solve_with(|v0, t| rr_key_rate(v0, t, eta).map(|r| r.raw))
    }

    /// Smallest aperture reaching the target with the capacity bound, for
    /// comparison.
    pub fn solve_plob(&self) -> Result<f64> {
        self.solve_with(plob_bound)
    }

    fn solve_with<F>(&self, rate: F) -> Result<f64>
    where
        F: Fn(f64, f64) -> Result<f64>,
    {
        ensure(
            self.target_rate > 0.0 && self.target_rate.is_finite(),
            "target rate",
            self.target_rate,
            "> 0 bits per use",
        )?;
        let v0 = thermal_variance(self.frequency, self.detector_temperature)?;
        // validates the geometry once, outside the objective
        DiffractionLink::new(self.waist, self.frequency, self.distance, APERTURE_BRACKET.0)?;
        let rate_at = |ra: f64| -> f64 {
            let link = DiffractionLink {
                aperture: ra,
                ..DiffractionLink::new(self.waist, self.frequency, self.distance, ra).expect("validated")
            };
            let t = link.transmissivity();
            if t >= 1.0 {
                return f64::INFINITY;
            }
            if t <= 0.0 {
                return f64::NEG_INFINITY;
            }
            rate(v0, t).unwrap_or(f64::NAN)
        };
        let (lo, hi) = APERTURE_BRACKET;
        let best = rate_at(hi);
        if best < self.target_rate {
            return Err(Error::Unreachable {
                target: self.target_rate,
                best,
                radius: hi,
            });
        }
        if rate_at(lo) >= self.target_rate {
            return Ok(lo);
        }
        let objective = |ra: f64| rate_at(ra) - self.target_rate;
        let root = bisect(objective, lo, hi, Spacing::Log, relative(SOLVER_TOLERANCE), "key rate in aperture")?;
        Ok(root.nonnegative_end())
    }
}

/// Shorthand for [`ApertureProblem::solve`].
pub fn min_aperture_radius(
    frequency: f64,
    distance: f64,
    waist: f64,
    eta: f64,
    detector_temperature: f64,
    target_rate: f64,
) -> Result<f64> {
    ApertureProblem {
        frequency,
        distance,
        waist,
        efficiency: eta,
        detector_temperature,
        target_rate,
    }
    .solve()
}
