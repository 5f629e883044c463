use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the model.
    #[error("{name} = {value} is out of range (expected {expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// A covariance matrix violates the uncertainty principle or symmetry.
    #[error("non-physical Gaussian state: {0}")]
    NonPhysical(String),

    /// A bracketing solver found no sign change.
    #[error("no root of {what} in [{lo:e}, {hi:e}]")]
    NoRoot {
        what: &'static str,
        lo: f64,
        hi: f64,
    },

    /// The requested key rate is not reached anywhere in the search bracket.
    #[error("target rate {target:e} unreachable: best rate {best:e} at r_a = {radius:e} m")]
    Unreachable { target: f64, best: f64, radius: f64 },

    /// The finite-modulation estimate has not settled into its asymptote.
    #[error("key rate not converged in modulation variance: {0:e} bits between V_a and 2 V_a")]
    NotConverged(f64),

    /// Fock-space truncation too small for the requested state.
    #[error("Fock truncation insufficient: {0}")]
    Truncation(String),

    /// A derived quantity is undefined, e.g. a ratio with zero denominator.
    #[error("undefined: {0}")]
    Undefined(&'static str),

    /// Bad sweep specification or configuration input.
    #[error("{0}")]
    Config(String),
}

/// Checks `ok`, otherwise reports `value` as outside `expected`.
pub(crate) fn ensure(ok: bool, name: &'static str, value: f64, expected: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected,
        })
    }
}
