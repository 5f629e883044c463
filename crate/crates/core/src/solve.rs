//! Bracketing root finder and golden-section minimiser.

use crate::error::{Error, Result};

const MAX_ITER: usize = 400;

/// How a bracket is split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    /// Arithmetic midpoint.
    Linear,
    /// Geometric midpoint; both ends must be positive.
    Log,
}

impl Spacing {
    pub fn midpoint(self, lo: f64, hi: f64) -> f64 {
        match self {
            Spacing::Linear => 0.5 * (lo + hi),
            Spacing::Log => (lo * hi).sqrt(),
        }
    }
}

/// Final bracket of a sign change, `f(lo)` and `f(hi)` of opposite sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    spacing: Spacing,
}

impl Root {
    pub fn midpoint(&self) -> f64 {
        self.spacing.midpoint(self.lo, self.hi)
    }

    /// The bracket end where the objective is non-negative.
    pub fn nonnegative_end(&self) -> f64 {
        if self.f_hi >= 0.0 {
            self.hi
        } else {
            self.lo
        }
    }

    /// True when the stored values straddle zero.
    pub fn is_bracketing(&self) -> bool {
        self.f_lo == 0.0 || self.f_hi == 0.0 || (self.f_lo < 0.0) != (self.f_hi < 0.0)
    }
}

/// Bisection on `[lo, hi]` until `done(lo, hi)`.
///
/// The objective must change sign over the bracket; `what` names it in the
/// error otherwise.
pub fn bisect<F, D>(mut f: F, lo: f64, hi: f64, spacing: Spacing, done: D, what: &'static str) -> Result<Root>
where
    F: FnMut(f64) -> f64,
    D: Fn(f64, f64) -> bool,
{
    let (mut lo, mut hi) = (lo, hi);
    let (mut f_lo, mut f_hi) = (f(lo), f(hi));
    if f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::Undefined("objective is NaN at a bracket end"));
    }
    if f_lo == 0.0 {
        return Ok(Root { lo, hi: lo, f_lo, f_hi: f_lo, spacing });
    }
    if f_hi == 0.0 {
        return Ok(Root { lo: hi, hi, f_lo: f_hi, f_hi, spacing });
    }
    if (f_lo < 0.0) == (f_hi < 0.0) {
        return Err(Error::NoRoot { what, lo, hi });
    }
    for _ in 0..MAX_ITER {
        if done(lo, hi) {
            break;
        }
        let mid = spacing.midpoint(lo, hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid.is_nan() {
            return Err(Error::Undefined("objective is NaN inside the bracket"));
        }
        if f_mid == 0.0 {
            return Ok(Root { lo: mid, hi: mid, f_lo: 0.0, f_hi: 0.0, spacing });
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Ok(Root { lo, hi, f_lo, f_hi, spacing })
}

/// Relative-width stopping rule for [`bisect`].
pub fn relative(tol: f64) -> impl Fn(f64, f64) -> bool {
    move |lo: f64, hi: f64| (hi - lo) <= tol * lo.abs().max(hi.abs())
}

/// Minimum of a unimodal `f` on `[a, b]` by golden-section search, to an
/// interval width of `tol`. Returns `(x_min, f(x_min))`, also comparing
/// against both end points.
pub fn golden_section_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let (end_a, end_b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a) > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let mut best = if fc < fd { (c, fc) } else { (d, fd) };
    for x in [end_a, end_b] {
        let fx = f(x);
        if fx < best.1 {
            best = (x, fx);
        }
    }
    best
}
