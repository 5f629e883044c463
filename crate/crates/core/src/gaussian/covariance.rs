use nalgebra::{DMatrix, DVector};

use super::{entropy_h, PHYSICALITY_TOL};
use crate::error::{ensure, Error, Result};

/// Covariance matrix of an `n`-mode zero-mean Gaussian state, ordered
/// `(q1, p1, ..., qn, pn)`.
///
/// Used to assemble the prepare-and-measure key-distribution model, where
/// Alice's mode, Eve's entangled pair and the detector noise mode interact
/// through beam splitters.
#[derive(Debug, Clone, PartialEq)]
pub struct Covariance {
    cm: DMatrix<f64>,
}

impl Covariance {
    /// `modes` vacuum modes.
    pub fn vacuum(modes: usize) -> Self {
        Self {
            cm: DMatrix::identity(2 * modes, 2 * modes),
        }
    }

    pub fn from_matrix(cm: DMatrix<f64>) -> Result<Self> {
        if cm.nrows() != cm.ncols() || cm.nrows() % 2 != 0 {
            return Err(Error::NonPhysical(format!(
                "covariance matrix must be 2n x 2n, got {} x {}",
                cm.nrows(),
                cm.ncols()
            )));
        }
        Ok(Self { cm })
    }

    pub fn modes(&self) -> usize {
        self.cm.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.cm
    }

    /// Replaces `mode` with an uncorrelated state of quadrature variances `(vq, vp)`.
    pub fn set_mode(&mut self, mode: usize, vq: f64, vp: f64) {
        let i = 2 * mode;
        self.cm.row_mut(i).fill(0.0);
        self.cm.row_mut(i + 1).fill(0.0);
        self.cm.column_mut(i).fill(0.0);
        self.cm.column_mut(i + 1).fill(0.0);
        self.cm[(i, i)] = vq;
        self.cm[(i + 1, i + 1)] = vp;
    }

    /// Places a two-mode squeezed vacuum of per-mode variance `v` on `(a, b)`.
    pub fn set_tmsv(&mut self, a: usize, b: usize, v: f64) -> Result<()> {
        ensure(v >= 1.0, "TMSV variance", v, "V >= 1")?;
        self.set_mode(a, v, v);
        self.set_mode(b, v, v);
        let c = (v * v - 1.0).sqrt();
        let (i, j) = (2 * a, 2 * b);
        self.cm[(i, j)] = c;
        self.cm[(j, i)] = c;
        self.cm[(i + 1, j + 1)] = -c;
        self.cm[(j + 1, i + 1)] = -c;
        Ok(())
    }

    /// Beam splitter of transmissivity `t`:
    /// `a -> sqrt(t) a + sqrt(1-t) b`, `b -> -sqrt(1-t) a + sqrt(t) b`.
    pub fn beam_splitter(&mut self, a: usize, b: usize, t: f64) -> Result<()> {
        ensure((0.0..=1.0).contains(&t), "transmissivity", t, "0 <= t <= 1")?;
        let n = self.cm.nrows();
        let mut s = DMatrix::<f64>::identity(n, n);
        let (st, sr) = (t.sqrt(), (1.0 - t).sqrt());
        for k in 0..2 {
            let (i, j) = (2 * a + k, 2 * b + k);
            s[(i, i)] = st;
            s[(i, j)] = sr;
            s[(j, i)] = -sr;
            s[(j, j)] = st;
        }
        self.cm = &s * &self.cm * s.transpose();
        Ok(())
    }

    /// Reduced state of the listed modes, in the listed order.
    pub fn select(&self, modes: &[usize]) -> Self {
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        Self {
            cm: self.cm.select_rows(&idx).select_columns(&idx),
        }
    }

    /// Variance of the `q` quadrature of `mode`.
    pub fn q_variance(&self, mode: usize) -> f64 {
        self.cm[(2 * mode, 2 * mode)]
    }

    /// State of `keep` conditioned on a homodyne measurement of the `q`
    /// quadrature of `measured`.
    pub fn condition_on_q(&self, keep: &[usize], measured: usize) -> Result<Self> {
        let vq = self.q_variance(measured);
        ensure(vq > 0.0, "homodyne variance", vq, "> 0")?;
        let idx: Vec<usize> = keep.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let cov = DVector::from_iterator(idx.len(), idx.iter().map(|&i| self.cm[(i, 2 * measured)]));
        let reduced = self.cm.select_rows(&idx).select_columns(&idx);
        Ok(Self {
            cm: reduced - &cov * cov.transpose() / vq,
        })
    }

    /// Symplectic eigenvalues in ascending order.
    ///
    /// Taken as the moduli of the eigenvalues of `Omega M`, which come in
    /// pairs `+-i nu`; working with `Omega M` rather than its square keeps the
    /// small eigenvalues accurate when the spectrum spans many decades.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        let n = self.modes();
        let mut omega = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for k in 0..n {
            omega[(2 * k, 2 * k + 1)] = 1.0;
            omega[(2 * k + 1, 2 * k)] = -1.0;
        }
        let mut ev: Vec<f64> = (omega * &self.cm)
            .complex_eigenvalues()
            .iter()
            .map(|z| z.im.abs())
            .collect();
        ev.sort_by(f64::total_cmp);
        ev.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect()
    }

    pub fn is_physical(&self) -> bool {
        self.symplectic_eigenvalues()
            .iter()
            .all(|&nu| nu >= 1.0 - PHYSICALITY_TOL)
    }

    /// Von Neumann entropy in bits; errors on a non-physical spectrum.
    pub fn entropy(&self) -> Result<f64> {
        self.symplectic_eigenvalues()
            .into_iter()
            .map(|nu| {
                entropy_h(nu).map_err(|_| {
                    Error::NonPhysical(format!("symplectic eigenvalue {nu} below the vacuum"))
                })
            })
            .sum()
    }
}
