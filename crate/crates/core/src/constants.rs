//! CODATA 2018 exact SI constants.

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reference temperatures, K.
pub mod temperature {
    /// Room temperature.
    pub const ROOM: f64 = 296.0;
    /// Typical operating temperature of satellite-borne optical components.
    pub const SATELLITE_COMPONENTS: f64 = 173.0;
    /// Shielded, passively cooled satellite bench.
    pub const PASSIVELY_COOLED: f64 = 30.0;
    /// Deep-space background.
    pub const DEEP_SPACE: f64 = 3.0;
    /// Liquid nitrogen.
    pub const LIQUID_NITROGEN: f64 = 77.0;
}
