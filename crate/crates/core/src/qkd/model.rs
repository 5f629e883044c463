//! Prepare-and-measure model behind the reverse-reconciliation rate.
//!
//! Four modes: Alice's modulated thermal mode `A`, Eve's entangled pair
//! `(e, E)` and the detector noise mode `S`. The channel is a beam splitter
//! between `A` and `E`, the detector a second one between the transmitted
//! mode and `S`. Bob homodynes the `q` quadrature.

use crate::error::{ensure, Error, Result};
use crate::gaussian::Covariance;

use super::RateResult;

const ALICE: usize = 0;
const EVE_KEPT: usize = 1;
const EVE_INJECTED: usize = 2;
const DETECTOR: usize = 3;

/// Default modulation variance, large enough for the asymptotic regime.
pub const DEFAULT_MODULATION: f64 = 1e6;

/// Parameters of one key-distribution run.
///
/// Eve's entangling-cloner variance always equals the preparation noise
/// `V0`, which keeps her injection indistinguishable from the source noise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QkdScenario {
    preparation_noise: f64,
    transmissivity: f64,
    efficiency: f64,
    detector_noise: f64,
    modulation: f64,
}

impl QkdScenario {
    /// Detector noise defaults to `v0`, modulation to [`DEFAULT_MODULATION`].
    pub fn new(v0: f64, transmissivity: f64, efficiency: f64) -> Result<Self> {
        ensure(v0 >= 1.0 && v0.is_finite(), "preparation noise", v0, "V0 >= 1")?;
        ensure(
            transmissivity > 0.0 && transmissivity < 1.0,
            "transmissivity",
            transmissivity,
            "0 < T < 1",
        )?;
        ensure(
            efficiency > 0.0 && efficiency <= 1.0,
            "detection efficiency",
            efficiency,
            "0 < eta <= 1",
        )?;
        Ok(Self {
            preparation_noise: v0,
            transmissivity,
            efficiency,
            detector_noise: v0,
            modulation: DEFAULT_MODULATION,
        })
    }

    pub fn with_detector_noise(mut self, vs: f64) -> Result<Self> {
        ensure(vs >= 1.0 && vs.is_finite(), "detector noise", vs, "V_s >= 1")?;
        self.detector_noise = vs;
        Ok(self)
    }

    pub fn with_modulation(mut self, va: f64) -> Result<Self> {
        ensure(va > 0.0 && va.is_finite(), "modulation variance", va, "0 < V_a < inf")?;
        self.modulation = va;
        Ok(self)
    }

    pub fn preparation_noise(&self) -> f64 {
        self.preparation_noise
    }

    pub fn transmissivity(&self) -> f64 {
        self.transmissivity
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }

    pub fn detector_noise(&self) -> f64 {
        self.detector_noise
    }

    pub fn eve_variance(&self) -> f64 {
        self.preparation_noise
    }

    pub fn modulation(&self) -> f64 {
        self.modulation
    }

    /// Joint state after the channel and the detector, with Alice's mode
    /// modulated by `va`.
    fn covariance(&self, va: f64) -> Result<Covariance> {
        let mut cm = Covariance::vacuum(4);
        let v = self.preparation_noise + va;
        cm.set_mode(ALICE, v, v);
        cm.set_tmsv(EVE_KEPT, EVE_INJECTED, self.eve_variance())?;
        cm.set_mode(DETECTOR, self.detector_noise, self.detector_noise);
        cm.beam_splitter(ALICE, EVE_INJECTED, self.transmissivity)?;
        cm.beam_splitter(ALICE, DETECTOR, self.efficiency)?;
        Ok(cm)
    }
}

/// Key rate `I(a:b) - chi(E:b)` of the full Gaussian model at the scenario's
/// modulation variance.
pub fn rr_key_rate_from_model(scenario: &QkdScenario) -> Result<RateResult> {
    let cm = scenario.covariance(scenario.modulation)?;
    let vb = cm.q_variance(ALICE);
    let vb_given_a = scenario.covariance(0.0)?.q_variance(ALICE);
    let mutual_information = 0.5 * (vb / vb_given_a).log2();

    let eve = [EVE_KEPT, EVE_INJECTED];
    let conditional = cm.condition_on_q(&eve, ALICE)?;
    if !conditional.is_physical() {
        return Err(Error::NonPhysical("Eve's state conditioned on Bob's outcome".into()));
    }
    let holevo = cm.select(&eve).entropy()? - conditional.entropy()?;
    Ok(RateResult::from_components(mutual_information, holevo))
}

/// Large-modulation limit of [`rr_key_rate_from_model`].
///
/// The finite-`V_a` rate approaches its limit as `1/V_a`; evaluating at
/// `V_a` and `2 V_a` and extrapolating removes that term. Errors with
/// [`Error::NotConverged`] when the two evaluations differ by more than
/// 1e-3 bits, i.e. when `V_a` is too small for the expansion to hold.
pub fn rr_key_rate_asymptotic(scenario: &QkdScenario) -> Result<RateResult> {
    let once = rr_key_rate_from_model(scenario)?.raw;
    let doubled = scenario.with_modulation(2.0 * scenario.modulation)?;
    let twice = rr_key_rate_from_model(&doubled)?.raw;
    let gap = (twice - once).abs();
    if gap > 1e-3 {
        return Err(Error::NotConverged(gap));
    }
    Ok(RateResult::new(2.0 * twice - once))
}
