//! Zero-mean two-mode Gaussian states in shot-noise units.
//!
//! Quadratures are ordered `(q1, p1, q2, p2)` and the vacuum has variance 1.

mod covariance;

pub use covariance::Covariance;

use nalgebra::{Matrix2, Matrix4};

use crate::constants::{BOLTZMANN, PLANCK};
use crate::error::{ensure, Error, Result};
use crate::solve::{bisect, Spacing};

/// Largest `hf/kT` passed to `exp`; beyond it the occupation is zero.
const MAX_EXPONENT: f64 = 700.0;

/// Tolerance on the uncertainty principle and on symmetry.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Mean photon number of a thermal mode at frequency `f` (Hz) and
/// temperature `temperature` (K), from the Bose-Einstein distribution.
///
/// Zero temperature, and exponents beyond `exp`'s range, give exactly zero.
pub fn thermal_photon_number(f: f64, temperature: f64) -> Result<f64> {
    ensure(f > 0.0 && f.is_finite(), "frequency", f, "f > 0 Hz")?;
    ensure(
        temperature >= 0.0 && temperature.is_finite(),
        "temperature",
        temperature,
        "T >= 0 K",
    )?;
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = PLANCK * f / (BOLTZMANN * temperature);
    if x > MAX_EXPONENT {
        return Ok(0.0);
    }
    Ok(1.0 / x.exp_m1())
}

/// Quadrature variance `2n + 1` of a thermal mode.
pub fn thermal_variance(f: f64, temperature: f64) -> Result<f64> {
    Ok(2.0 * thermal_photon_number(f, temperature)? + 1.0)
}

/// A thermal mode at a given frequency and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalOccupation {
    pub frequency: f64,
    pub temperature: f64,
    pub mean_photons: f64,
}

impl ThermalOccupation {
    pub fn new(frequency: f64, temperature: f64) -> Result<Self> {
        let mean_photons = thermal_photon_number(frequency, temperature)?;
        Ok(Self {
            frequency,
            temperature,
            mean_photons,
        })
    }

    /// Quadrature variance in shot-noise units.
    pub fn variance(&self) -> f64 {
        2.0 * self.mean_photons + 1.0
    }
}

/// Two-mode squeezing parameter `r >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Squeezing(f64);

impl Squeezing {
    pub fn new(r: f64) -> Result<Self> {
        ensure(r >= 0.0 && r.is_finite(), "squeezing", r, "r >= 0")?;
        Ok(Self(r))
    }

    /// From decibels, `dB = -10 log10(exp(-2r))`. Negative values are clamped to zero.
    pub fn from_db(db: f64) -> Self {
        Self((db * std::f64::consts::LN_10 / 20.0).max(0.0))
    }

    pub fn r(self) -> f64 {
        self.0
    }

    pub fn db(self) -> f64 {
        20.0 * self.0 / std::f64::consts::LN_10
    }
}

/// Covariance matrix of a zero-mean two-mode Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeGaussianState {
    cm: Matrix4<f64>,
}

impl TwoModeGaussianState {
    /// Validates symmetry and the uncertainty principle.
    pub fn new(cm: Matrix4<f64>) -> Result<Self> {
        let asym = (cm - cm.transpose()).amax();
        if asym > PHYSICALITY_TOL * cm.amax().max(1.0) {
            return Err(Error::NonPhysical(format!("asymmetric covariance matrix ({asym:e})")));
        }
        let state = Self { cm };
        if !state.is_physical() {
            return Err(Error::NonPhysical(format!(
                "symplectic eigenvalues {:?} below the vacuum",
                state.symplectic_eigenvalues()
            )));
        }
        Ok(state)
    }

    /// Standard form `[[a I, g Z], [g Z, b I]]` with `Z = diag(1, -1)`.
    pub fn standard_form(a: f64, b: f64, g: f64) -> Result<Self> {
        #[rustfmt::skip]
        let cm = Matrix4::new(
            a,   0.0, g,   0.0,
            0.0, a,   0.0, -g,
            g,   0.0, b,   0.0,
            0.0, -g,  0.0, b,
        );
        Self::new(cm)
    }

    pub fn cm(&self) -> &Matrix4<f64> {
        &self.cm
    }

    pub fn block_a(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(0, 0).into_owned()
    }

    pub fn block_b(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(2, 2).into_owned()
    }

    pub fn block_c(&self) -> Matrix2<f64> {
        self.cm.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Symplectic eigenvalues `(nu_minus, nu_plus)` of the state.
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        let delta = self.block_a().determinant()
            + self.block_b().determinant()
            + 2.0 * self.block_c().determinant();
        symplectic_pair(delta, self.cm.determinant())
    }

    /// Positive definite with `det >= 1` and `Delta <= 1 + det`, within
    /// [`PHYSICALITY_TOL`] relative to the size of the terms.
    ///
    /// Equivalent to `nu_minus >= 1`, but free of the square root that costs
    /// half the digits when the state is pure.
    pub fn is_physical(&self) -> bool {
        let det = self.cm.determinant();
        let delta = self.block_a().determinant()
            + self.block_b().determinant()
            + 2.0 * self.block_c().determinant();
        let scale = PHYSICALITY_TOL * delta.abs().max(det.abs()).max(1.0);
        self.cm[(0, 0)] > 0.0
            && self.block_a().determinant() > 0.0
            && det > 0.0
            && det >= 1.0 - scale
            && delta <= 1.0 + det + scale
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> Result<f64> {
        let (lo, hi) = self.symplectic_eigenvalues();
        Ok(entropy_h(lo)? + entropy_h(hi)?)
    }
}

/// Roots of `x^2 - delta x + det = 0` as square roots, smaller first.
fn symplectic_pair(delta: f64, det: f64) -> (f64, f64) {
    let disc = (delta * delta - 4.0 * det).max(0.0).sqrt();
    let big = (delta + disc) / 2.0;
    // det / big avoids cancellation in (delta - disc) / 2
    let small = if big > 0.0 { det / big } else { 0.0 };
    (small.max(0.0).sqrt(), big.max(0.0).sqrt())
}

/// Two-mode squeezed thermal state with thermal inputs `n1`, `n2`.
///
/// With `n1 = n2 = 0` this is the two-mode squeezed vacuum with per-mode
/// variance `cosh 2r`.
pub fn tms_thermal_state(r: Squeezing, n1: f64, n2: f64) -> Result<TwoModeGaussianState> {
    ensure(n1 >= 0.0 && n1.is_finite(), "n1", n1, "n1 >= 0")?;
    ensure(n2 >= 0.0 && n2.is_finite(), "n2", n2, "n2 >= 0")?;
    let r = r.r();
    let (c2, s2) = (r.cosh().powi(2), r.sinh().powi(2));
    let a = 2.0 * n1 * c2 + 2.0 * n2 * s2 + (2.0 * r).cosh();
    let b = 2.0 * n1 * s2 + 2.0 * n2 * c2 + (2.0 * r).cosh();
    let g = (n1 + n2 + 1.0) * (2.0 * r).sinh();
    TwoModeGaussianState::standard_form(a, b, g)
}

/// Smallest symplectic eigenvalue of the partially transposed covariance matrix.
pub fn symplectic_eigenvalue_pt(state: &TwoModeGaussianState) -> Result<f64> {
    let delta_pt = state.block_a().determinant() + state.block_b().determinant()
        - 2.0 * state.block_c().determinant();
    let det = state.cm.determinant();
    let disc = delta_pt * delta_pt - 4.0 * det;
    if disc < -PHYSICALITY_TOL * delta_pt.abs().max(1.0).powi(2) {
        return Err(Error::NonPhysical(format!(
            "negative discriminant {disc:e} in partial-transpose spectrum"
        )));
    }
    let (nu_minus, _) = symplectic_pair(delta_pt, det);
    if nu_minus <= 0.0 {
        return Err(Error::NonPhysical("zero partial-transpose eigenvalue".into()));
    }
    Ok(nu_minus)
}

/// Logarithmic negativity `max(0, -log2 nu_minus)`.
pub fn log_negativity(state: &TwoModeGaussianState) -> Result<f64> {
    let nu = symplectic_eigenvalue_pt(state)?;
    Ok(if nu >= 1.0 { 0.0 } else { -nu.log2() })
}

/// Entropy contribution of one symplectic eigenvalue, in bits.
///
/// `h(1) = 0`; arguments within 1e-9 below one are clamped to one.
pub fn entropy_h(x: f64) -> Result<f64> {
    ensure(x >= 1.0 - PHYSICALITY_TOL, "symplectic eigenvalue", x, "x >= 1")?;
    if x <= 1.0 {
        return Ok(0.0);
    }
    let plus = (x + 1.0) / 2.0;
    let minus = (x - 1.0) / 2.0;
    if x < 2.0 {
        Ok(plus * plus.log2() - minus * minus.log2())
    } else {
        // log2(m) + p log2(1 + 1/m): no cancellation between two large terms
        Ok(minus.log2() + plus * (1.0 / minus).ln_1p() / std::f64::consts::LN_2)
    }
}

/// Symmetric squeezed thermal state at frequency `f` and temperature `temperature`.
pub fn source_state(f: f64, temperature: f64, squeezing: Squeezing) -> Result<TwoModeGaussianState> {
    let n = thermal_photon_number(f, temperature)?;
    tms_thermal_state(squeezing, n, n)
}

/// Highest source temperature with non-zero entanglement, found by bisection
/// on the logarithmic negativity over `[1e-3, 1e5]` K to `tol` kelvin.
pub fn entanglement_breaking_temperature(f: f64, squeezing: Squeezing, tol: f64) -> Result<f64> {
    let margin = |t: f64| -> f64 {
        match source_state(f, t, squeezing).and_then(|s| symplectic_eigenvalue_pt(&s)) {
            // ln nu crosses zero exactly where the negativity vanishes
            Ok(nu) => nu.ln(),
            Err(_) => f64::NAN,
        }
    };
    let root = bisect(margin, 1e-3, 1e5, Spacing::Linear, |lo, hi| hi - lo < tol, "entanglement margin")?;
    Ok(root.midpoint())
}

/// Smallest squeezing (dB) with non-zero entanglement at `(f, temperature)`,
/// by bisection on `[0, 60]` dB to `tol` dB.
pub fn min_entangling_squeezing_db(f: f64, temperature: f64, tol: f64) -> Result<f64> {
    let margin = |db: f64| -> f64 {
        match source_state(f, temperature, Squeezing::from_db(db)).and_then(|s| symplectic_eigenvalue_pt(&s)) {
            Ok(nu) => nu.ln(),
            Err(_) => f64::NAN,
        }
    };
    if margin(0.0) <= 0.0 {
        return Ok(0.0);
    }
    let root = bisect(margin, 0.0, 60.0, Spacing::Linear, |lo, hi| hi - lo < tol, "entanglement margin")?;
    Ok(root.midpoint())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn thermal_number_matches_direct_evaluation() {
        let n = thermal_photon_number(1e12, 296.0).unwrap();
        let x: f64 = 6.626_070_15e-34 * 1e12 / (1.380_649e-23 * 296.0);
        assert!(close(n, 1.0 / (x.exp() - 1.0), 1e-12));
        assert!(close(n, 5.681, 1e-3));
    }

    #[test]
    fn zero_temperature_is_vacuum() {
        assert_eq!(thermal_photon_number(1e12, 0.0).unwrap(), 0.0);
        assert_eq!(thermal_variance(5e13, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn high_frequency_low_temperature_underflows_cleanly() {
        let n = thermal_photon_number(50e12, 30.0).unwrap();
        assert!(n > 0.0 && n < 1e-34, "{n}");
        assert_eq!(thermal_photon_number(1e15, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_thermal_inputs() {
        assert!(thermal_photon_number(0.0, 10.0).is_err());
        assert!(thermal_photon_number(-1.0, 10.0).is_err());
        assert!(thermal_photon_number(1e12, -1.0).is_err());
        assert!(thermal_photon_number(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn squeezing_db_round_trip() {
        for db in [0.0, 0.5, 3.0, 10.0, 15.0, 40.0] {
            let s = Squeezing::from_db(db);
            assert!(close(s.db(), db, 1e-12 * db.max(1.0)));
            let back = Squeezing::new(s.r()).unwrap();
            assert_eq!(back, s);
        }
        // 10 dB means exp(2r) = 10
        assert!(close((2.0 * Squeezing::from_db(10.0).r()).exp(), 10.0, 1e-12));
        assert!(Squeezing::new(-0.1).is_err());
    }

    #[test]
    fn tmsv_reduction() {
        let r = Squeezing::from_db(7.0);
        let s = tms_thermal_state(r, 0.0, 0.0).unwrap();
        let v = (2.0 * r.r()).cosh();
        let c = (v * v - 1.0).sqrt();
        let expected = TwoModeGaussianState::standard_form(v, v, c).unwrap();
        assert!((s.cm() - expected.cm()).amax() < 1e-12);
    }

    #[test]
    fn unsqueezed_thermal_product() {
        let s = tms_thermal_state(Squeezing::from_db(0.0), 2.5, 2.5).unwrap();
        assert!(close(s.cm()[(0, 0)], 6.0, 1e-15));
        assert!(close(s.cm()[(2, 2)], 6.0, 1e-15));
        assert_eq!(s.cm()[(0, 2)], 0.0);
        assert_eq!(log_negativity(&s).unwrap(), 0.0);
    }

    #[test]
    fn ten_db_squeezed_thermal_blocks() {
        let s = tms_thermal_state(Squeezing::from_db(10.0), 3.1277, 3.1277).unwrap();
        // cosh 2r = 5.05, sinh 2r = 4.95
        let a = (2.0 * 3.1277 + 1.0) * 5.05;
        let g = (2.0 * 3.1277 + 1.0) * 4.95;
        assert!(close(s.cm()[(0, 0)], a, 1e-9));
        assert!(close(s.cm()[(2, 2)], a, 1e-9));
        assert!(close(s.cm()[(0, 2)], g, 1e-9));
        assert!(close(s.cm()[(1, 3)], -g, 1e-9));
        assert!(close(a, 36.64, 0.01) && close(g, 35.91, 0.01));
    }

    #[test]
    fn pt_eigenvalue_of_tmsv() {
        let s = tms_thermal_state(Squeezing::from_db(10.0), 0.0, 0.0).unwrap();
        assert!(close(symplectic_eigenvalue_pt(&s).unwrap(), 0.1, 1e-12));
        assert!(close(log_negativity(&s).unwrap(), 10f64.log2(), 1e-10));
    }

    #[test]
    fn pt_eigenvalue_of_vacuum() {
        let s = tms_thermal_state(Squeezing::from_db(0.0), 0.0, 0.0).unwrap();
        assert!(close(symplectic_eigenvalue_pt(&s).unwrap(), 1.0, 1e-15));
        assert_eq!(s.entropy().unwrap(), 0.0);
    }

    #[test]
    fn symmetric_squeezed_thermal_closed_form() {
        for (r, n) in [(0.3, 0.2), (1.1, 3.0), (2.0, 9.0)] {
            let s = tms_thermal_state(Squeezing::new(r).unwrap(), n, n).unwrap();
            let nu = symplectic_eigenvalue_pt(&s).unwrap();
            let expected = (2.0 * n + 1.0) * (-2.0 * r).exp();
            assert!(close(nu, expected, 1e-10 * expected.max(1.0)), "{nu} vs {expected}");
        }
    }

    #[test]
    fn log_negativity_at_one_thz_173k() {
        let s = source_state(1e12, 173.0, Squeezing::from_db(10.0)).unwrap();
        let e = log_negativity(&s).unwrap();
        assert!(close(e, 0.4628, 1e-3), "{e}");
    }

    #[test]
    fn entropy_function_values() {
        assert_eq!(entropy_h(1.0).unwrap(), 0.0);
        assert_eq!(entropy_h(1.0 - 5e-10).unwrap(), 0.0);
        assert!(close(entropy_h(3.0).unwrap(), 2.0, 1e-14));
        assert!(close(entropy_h(1.2).unwrap(), 0.483_44, 1e-5));
        assert!(entropy_h(0.99).is_err());
        // both branches agree at the switch point
        let below = {
            let x: f64 = 2.0 - 1e-12;
            let (p, m) = ((x + 1.0) / 2.0, (x - 1.0) / 2.0);
            p * p.log2() - m * m.log2()
        };
        assert!(close(entropy_h(2.0).unwrap(), below, 1e-11));
    }

    #[test]
    fn entropy_is_increasing_and_concave() {
        let xs: Vec<f64> = (0..400).map(|i| 1.0 + 0.05 * (i as f64 + 1.0)).collect();
        let hs: Vec<f64> = xs.iter().map(|&x| entropy_h(x).unwrap()).collect();
        for w in hs.windows(3) {
            assert!(w[1] > w[0]);
            assert!(w[2] - 2.0 * w[1] + w[0] < 0.0);
        }
    }

    #[test]
    fn breaking_temperature_matches_closed_form() {
        let f = 1e12;
        let sq = Squeezing::from_db(10.0);
        let t = entanglement_breaking_temperature(f, sq, 1e-4).unwrap();
        // (2n + 1) exp(-2r) = 1  =>  n = (exp(2r) - 1) / 2
        let n = ((2.0 * sq.r()).exp() - 1.0) / 2.0;
        let closed = PLANCK * f / (BOLTZMANN * (1.0 + 1.0 / n).ln());
        assert!(close(t, closed, 0.01), "{t} vs {closed}");
        assert!(close(closed, 239.16, 0.01));
    }

    #[test]
    fn minimum_squeezing_at_room_temperature() {
        let db = min_entangling_squeezing_db(5e12, 296.0, 1e-6).unwrap();
        let n = thermal_photon_number(5e12, 296.0).unwrap();
        assert!(close(db, 10.0 * (2.0 * n + 1.0).log10(), 1e-5));
        assert_eq!(min_entangling_squeezing_db(5e13, 3.0, 1e-6).unwrap(), 0.0);
    }

    #[test]
    fn rejects_unphysical_matrix() {
        // squeezed beyond the uncertainty bound
        assert!(TwoModeGaussianState::standard_form(0.5, 0.5, 0.0).is_err());
        assert!(TwoModeGaussianState::standard_form(2.0, 2.0, 2.0).is_err());
        let mut cm = Matrix4::identity();
        cm[(0, 1)] = 0.3;
        assert!(TwoModeGaussianState::new(cm).is_err());
    }
}
