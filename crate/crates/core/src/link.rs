//! Diffraction-limited free-space channel and detector model.
//!
//! The channel is pure beam broadening: a Gaussian beam of waist `w0`
//! perfectly centred on a circular aperture of radius `r_a`. No absorption,
//! turbulence or pointing error.

use nalgebra::Matrix2;

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{ensure, Result};
use crate::gaussian::TwoModeGaussianState;

/// Default beam-waist and receiver-aperture radius, m.
pub const DEFAULT_RADIUS: f64 = 0.1;

/// Gaussian beam radius after propagating `z` metres.
pub fn beam_radius(w0: f64, wavelength: f64, z: f64) -> Result<f64> {
    ensure(w0 > 0.0 && w0.is_finite(), "beam waist", w0, "w0 > 0 m")?;
    ensure(wavelength > 0.0 && wavelength.is_finite(), "wavelength", wavelength, "lambda > 0 m")?;
    ensure(z >= 0.0 && z.is_finite(), "distance", z, "z >= 0 m")?;
    let spread = wavelength * z / (std::f64::consts::PI * w0 * w0);
    Ok(w0 * spread.hypot(1.0))
}

/// Fraction of a centred Gaussian beam of radius `beam` captured by an
/// aperture of radius `aperture`.
pub fn capture_fraction(aperture: f64, beam: f64) -> f64 {
    -(-2.0 * aperture * aperture / (beam * beam)).exp_m1()
}

/// Transmitter waist, carrier, range and receiver aperture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffractionLink {
    pub waist: f64,
    pub frequency: f64,
    pub distance: f64,
    pub aperture: f64,
}

impl DiffractionLink {
    pub fn new(waist: f64, frequency: f64, distance: f64, aperture: f64) -> Result<Self> {
        ensure(waist > 0.0 && waist.is_finite(), "beam waist", waist, "w0 > 0 m")?;
        ensure(frequency > 0.0 && frequency.is_finite(), "frequency", frequency, "f > 0 Hz")?;
        ensure(distance >= 0.0 && distance.is_finite(), "distance", distance, "z >= 0 m")?;
        ensure(aperture > 0.0 && aperture.is_finite(), "aperture", aperture, "r_a > 0 m")?;
        Ok(Self {
            waist,
            frequency,
            distance,
            aperture,
        })
    }

    /// 10 cm waist and aperture.
    pub fn with_defaults(frequency: f64, distance: f64) -> Result<Self> {
        Self::new(DEFAULT_RADIUS, frequency, distance, DEFAULT_RADIUS)
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.frequency
    }

    pub fn beam_radius(&self) -> f64 {
        let spread = self.wavelength() * self.distance / (std::f64::consts::PI * self.waist * self.waist);
        self.waist * spread.hypot(1.0)
    }

    pub fn transmissivity(&self) -> f64 {
        capture_fraction(self.aperture, self.beam_radius())
    }
}

/// Channel transmissivity `T = 1 - exp(-2 r_a^2 / w(z)^2)`.
pub fn transmissivity(link: &DiffractionLink) -> f64 {
    link.transmissivity()
}

/// Homodyne detector as a beam splitter of efficiency `efficiency` that
/// mixes in a thermal mode of variance `noise_variance`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Detector {
    pub efficiency: f64,
    pub noise_variance: f64,
}

impl Detector {
    pub fn new(efficiency: f64, noise_variance: f64) -> Result<Self> {
        ensure((0.0..=1.0).contains(&efficiency), "detection efficiency", efficiency, "0 <= eta <= 1")?;
        ensure(
            noise_variance >= 1.0 && noise_variance.is_finite(),
            "detector noise variance",
            noise_variance,
            "V_s >= 1",
        )?;
        Ok(Self {
            efficiency,
            noise_variance,
        })
    }

    /// Lossless, noiseless detector.
    pub fn ideal() -> Self {
        Self {
            efficiency: 1.0,
            noise_variance: 1.0,
        }
    }
}

/// Sends mode 2 of `state` through a channel of transmissivity `t` that
/// injects vacuum, then through `detector`; mode 1 stays put.
pub fn evolve_two_mode(state: &TwoModeGaussianState, t: f64, detector: Detector) -> Result<TwoModeGaussianState> {
    evolve_two_mode_with_noise(state, t, 1.0, detector)
}

/// As [`evolve_two_mode`], with the channel injecting a thermal mode of
/// variance `injected_variance` in place of vacuum.
pub fn evolve_two_mode_with_noise(
    state: &TwoModeGaussianState,
    t: f64,
    injected_variance: f64,
    detector: Detector,
) -> Result<TwoModeGaussianState> {
    ensure((0.0..=1.0).contains(&t), "transmissivity", t, "0 <= T <= 1")?;
    ensure(
        injected_variance >= 1.0 && injected_variance.is_finite(),
        "injected variance",
        injected_variance,
        "V >= 1",
    )?;
    let detector = Detector::new(detector.efficiency, detector.noise_variance)?;
    let eta = detector.efficiency;
    let added = eta * (1.0 - t) * injected_variance + (1.0 - eta) * detector.noise_variance;
    let scale = (eta * t).sqrt();

    let mut cm = *state.cm();
    let b: Matrix2<f64> = state.block_b() * (eta * t) + Matrix2::identity() * added;
    let c: Matrix2<f64> = state.block_c() * scale;
    cm.fixed_view_mut::<2, 2>(2, 2).copy_from(&b);
    cm.fixed_view_mut::<2, 2>(0, 2).copy_from(&c);
    cm.fixed_view_mut::<2, 2>(2, 0).copy_from(&c.transpose());
    TwoModeGaussianState::new(cm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{log_negativity, source_state, thermal_variance, Squeezing};

    #[test]
    fn beam_radius_examples() {
        assert_eq!(beam_radius(0.1, 3e-4, 0.0).unwrap(), 0.1);
        let w = beam_radius(0.1, SPEED_OF_LIGHT / 50e12, 200e3).unwrap();
        assert!((w - 3.82).abs() < 0.01, "{w}");
        let w = beam_radius(0.1, SPEED_OF_LIGHT / 1e12, 100e3).unwrap();
        assert!((w - 95.5).abs() < 0.1, "{w}");
        assert!(beam_radius(0.0, 1e-6, 1.0).is_err());
        assert!(beam_radius(0.1, 1e-6, -1.0).is_err());
    }

    #[test]
    fn transmissivity_examples() {
        let at_zero = DiffractionLink::new(0.1, 1e12, 0.0, 0.1).unwrap();
        assert!((transmissivity(&at_zero) - (1.0 - (-2f64).exp())).abs() < 1e-12);
        let far = DiffractionLink::with_defaults(50e12, 200e3).unwrap();
        assert!((far.transmissivity() - 1.37e-3).abs() < 0.01e-3);
        let huge = DiffractionLink::new(0.1, 1e12, 0.0, 10.0).unwrap();
        assert_eq!(huge.transmissivity(), 1.0);
    }

    #[test]
    fn transmissivity_monotonicity() {
        let base = DiffractionLink::with_defaults(10e12, 50e3).unwrap();
        let t = base.transmissivity();
        assert!(DiffractionLink { distance: 60e3, ..base }.transmissivity() < t);
        assert!(DiffractionLink { aperture: 0.2, ..base }.transmissivity() > t);
        assert!(DiffractionLink { frequency: 20e12, ..base }.transmissivity() > t);
    }

    #[test]
    fn identity_channel() {
        let s = source_state(2e12, 30.0, Squeezing::from_db(10.0)).unwrap();
        let out = evolve_two_mode(&s, 1.0, Detector::ideal()).unwrap();
        assert!((out.cm() - s.cm()).amax() < 1e-12);
    }

    #[test]
    fn full_loss_replaces_mode_with_vacuum() {
        let s = source_state(2e12, 30.0, Squeezing::from_db(10.0)).unwrap();
        let out = evolve_two_mode(&s, 0.0, Detector::ideal()).unwrap();
        assert!((out.cm()[(2, 2)] - 1.0).abs() < 1e-12);
        assert_eq!(out.cm()[(0, 2)], 0.0);
        assert_eq!(log_negativity(&out).unwrap(), 0.0);
    }

    #[test]
    fn threshold_case_near_two_thz() {
        let vs = thermal_variance(2e12, 30.0).unwrap();
        assert!((vs - 1.085).abs() < 1e-3);
        let s = source_state(2e12, 30.0, Squeezing::from_db(10.0)).unwrap();
        let out = evolve_two_mode(&s, 0.4, Detector::new(0.1, vs).unwrap()).unwrap();
        let e = log_negativity(&out).unwrap();
        assert!(e > 0.0 && e < 0.01, "{e}");
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let s = source_state(2e12, 30.0, Squeezing::from_db(3.0)).unwrap();
        assert!(evolve_two_mode(&s, 1.2, Detector::ideal()).is_err());
        assert!(evolve_two_mode(&s, 0.5, Detector { efficiency: 1.5, noise_variance: 1.0 }).is_err());
        assert!(Detector::new(0.5, 0.9).is_err());
    }

    #[test]
    fn thermal_injection_costs_entanglement() {
        let s = source_state(5e12, 30.0, Squeezing::from_db(10.0)).unwrap();
        let det = Detector::new(0.5, 1.0).unwrap();
        let vac = log_negativity(&evolve_two_mode(&s, 0.3, det).unwrap()).unwrap();
        let hot = log_negativity(&evolve_two_mode_with_noise(&s, 0.3, 1.5, det).unwrap()).unwrap();
        assert!(hot < vac);
    }
}
