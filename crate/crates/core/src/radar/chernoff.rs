use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::solve::golden_section_min;

/// Eigenvalues below this are a sign of truncation, not rounding.
const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-10;
/// Golden-section tolerance on `s`.
const S_TOL: f64 = 1e-6;

/// Real symmetric density operator stored as diagonal blocks.
///
/// Both operators of a hypothesis test must share the block layout.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    blocks: Vec<DMatrix<f64>>,
}

impl DensityOperator {
    pub fn from_blocks(blocks: Vec<DMatrix<f64>>) -> Result<Self> {
        for b in &blocks {
            if !b.is_square() {
                return Err(Error::NonPhysical(format!("{}x{} density block", b.nrows(), b.ncols())));
            }
        }
        Ok(Self { blocks })
    }

    /// Diagonal operator, one block per entry.
    pub fn diagonal(probabilities: &[f64]) -> Self {
        Self {
            blocks: probabilities.iter().map(|&p| DMatrix::from_element(1, 1, p)).collect(),
        }
    }

    pub fn blocks(&self) -> &[DMatrix<f64>] {
        &self.blocks
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).sum()
    }

    pub fn trace(&self) -> f64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    fn same_layout(&self, other: &Self) -> bool {
        self.blocks.len() == other.blocks.len()
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| a.nrows() == b.nrows())
    }
}

/// Spectral data of one block pair: `lambda` and `mu` are the eigenvalues of
/// the two operators and `overlap[(i, j)] = |<u_i|v_j>|^2`.
#[derive(Debug, Clone)]
pub(crate) struct BlockOverlap {
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    pub overlap: DMatrix<f64>,
}

/// Precomputed spectra of a hypothesis pair, from which the Chernoff
/// coefficient `Q(s) = tr[rho0^s rho1^(1-s)]` is cheap at every `s`.
#[derive(Debug, Clone)]
pub struct ChernoffPair {
    blocks: Vec<BlockOverlap>,
}

/// Minimiser of the Chernoff coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChernoffBound {
    pub s: f64,
    pub coefficient: f64,
    /// `-ln Q(s)` at the minimiser.
    pub exponent: f64,
}

fn checked_spectrum(values: impl Iterator<Item = f64>) -> Result<Vec<f64>> {
    values
        .map(|v| {
            if v < -NEGATIVE_EIGENVALUE_TOL {
                Err(Error::Truncation(format!("eigenvalue {v:e} below -{NEGATIVE_EIGENVALUE_TOL:e}")))
            } else {
                Ok(v.max(0.0))
            }
        })
        .collect()
}

/// `x^s` with `0^0 = 0`, so `s = 0` projects onto the support.
fn power(x: f64, s: f64) -> f64 {
    if x > 0.0 {
        x.powf(s)
    } else {
        0.0
    }
}

impl ChernoffPair {
    /// Diagonalises both operators block by block. Each is scaled to unit
    /// trace first so that truncation loss does not masquerade as
    /// distinguishability.
    pub fn new(rho0: &DensityOperator, rho1: &DensityOperator) -> Result<Self> {
        if !rho0.same_layout(rho1) {
            return Err(Error::Config("density operators have different block layouts".into()));
        }
        let (t0, t1) = (rho0.trace(), rho1.trace());
        if !(t0 > 0.0 && t1 > 0.0) {
            return Err(Error::NonPhysical("density operator with non-positive trace".into()));
        }
        let blocks = rho0
            .blocks
            .iter()
            .zip(&rho1.blocks)
            .map(|(a, b)| {
                let ea = (a / t0).symmetric_eigen();
                let eb = (b / t1).symmetric_eigen();
                let overlap = (ea.eigenvectors.transpose() * &eb.eigenvectors).map(|x| x * x);
                Ok(BlockOverlap {
                    lambda: checked_spectrum(ea.eigenvalues.iter().copied())?,
                    mu: checked_spectrum(eb.eigenvalues.iter().copied())?,
                    overlap,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { blocks })
    }

    pub(crate) fn from_overlaps(blocks: Vec<BlockOverlap>) -> Self {
        Self { blocks }
    }

    /// `Q(s) = sum_ij lambda_i^s |<u_i|v_j>|^2 mu_j^(1-s)`.
    pub fn coefficient(&self, s: f64) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let right: Vec<f64> = b.mu.iter().map(|&m| power(m, 1.0 - s)).collect();
                b.lambda
                    .iter()
                    .enumerate()
                    .filter(|(_, &l)| l > 0.0)
                    .map(|(i, &l)| {
                        let row: f64 = b.overlap.row(i).iter().zip(&right).map(|(w, r)| w * r).sum();
                        power(l, s) * row
                    })
                    .sum::<f64>()
            })
            .sum()
    }

    /// Golden-section minimum of `Q` over `s` in `[0, 1]`.
    pub fn bound(&self) -> ChernoffBound {
        let (s, coefficient) = golden_section_min(|s| self.coefficient(s), 0.0, 1.0, S_TOL);
        ChernoffBound {
            s,
            coefficient,
            exponent: (-coefficient.ln()).max(0.0),
        }
    }
}

/// Quantum Chernoff exponent `-ln min_s tr[rho0^s rho1^(1-s)]`.
pub fn chernoff_exponent(rho0: &DensityOperator, rho1: &DensityOperator) -> Result<f64> {
    Ok(ChernoffPair::new(rho0, rho1)?.bound().exponent)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thermal(n: f64, d: usize) -> Vec<f64> {
        (0..d).map(|k| (n / (n + 1.0)).powi(k as i32) / (n + 1.0)).collect()
    }

    #[test]
    fn identical_states_are_indistinguishable() {
        let p = thermal(0.7, 60);
        let rho = DensityOperator::diagonal(&p);
        assert!(chernoff_exponent(&rho, &rho).unwrap().abs() < 1e-14);
    }

    #[test]
    fn thermal_pair_matches_scalar_minimisation() {
        let d = 80;
        let (p0, p1) = (thermal(0.0, d), thermal(1.0, d));
        let e = chernoff_exponent(&DensityOperator::diagonal(&p0), &DensityOperator::diagonal(&p1)).unwrap();
        let norm1: f64 = p1.iter().sum();
        // vacuum against thermal: only n = 0 contributes, so Q(s) = p1(0)^(1-s)
        let oracle = (0..=1000)
            .map(|i| {
                let s = i as f64 / 1000.0;
                p0.iter().zip(&p1).map(|(a, b)| power(*a, s) * power(b / norm1, 1.0 - s)).sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((e - (-oracle.ln())).abs() < 1e-9, "{e}");
        assert!((e - 2f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn golden_section_agrees_with_grid_scan() {
        let d = 200;
        let (p0, p1) = (thermal(0.4, d), thermal(1.3, d));
        let pair = ChernoffPair::new(&DensityOperator::diagonal(&p0), &DensityOperator::diagonal(&p1)).unwrap();
        let grid = (0..=1000).map(|i| pair.coefficient(i as f64 / 1000.0)).fold(f64::INFINITY, f64::min);
        let best = pair.bound();
        assert!(best.coefficient <= grid + 1e-12);
        assert!((best.coefficient - grid).abs() < 1e-5);
        assert!(best.s > 0.0 && best.s < 1.0);
    }

    #[test]
    fn coefficient_is_convex() {
        let d = 120;
        let pair = ChernoffPair::new(
            &DensityOperator::diagonal(&thermal(2.0, d)),
            &DensityOperator::diagonal(&thermal(3.0, d)),
        )
        .unwrap();
        let q: Vec<f64> = (0..=100).map(|i| pair.coefficient(i as f64 / 100.0)).collect();
        assert!(q.windows(3).all(|w| w[0] + w[2] >= 2.0 * w[1] - 1e-14));
    }

    #[test]
    fn pure_states_give_overlap() {
        // |0> against (|0> + |1>) / sqrt 2: Q = |<a|b>|^2 = 1/2 for s in (0, 1)
        let rho0 = DensityOperator::from_blocks(vec![DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0])]).unwrap();
        let rho1 = DensityOperator::from_blocks(vec![DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, 0.5])]).unwrap();
        let e = chernoff_exponent(&rho0, &rho1).unwrap();
        assert!((e - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn negative_eigenvalue_flags_truncation() {
        let bad = DensityOperator::from_blocks(vec![DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1e-6])]).unwrap();
        let good = DensityOperator::from_blocks(vec![DMatrix::from_row_slice(2, 2, &[0.5, 0.0, 0.0, 0.5])]).unwrap();
        assert!(matches!(chernoff_exponent(&good, &bad), Err(Error::Truncation(_))));
        let split = DensityOperator::diagonal(&[0.5, 0.5]);
        assert!(chernoff_exponent(&good, &split).is_err());
    }

    /// Minimum error probability of `m` copies of two diagonal qubit states,
    /// by summing over the number of ones observed.
    fn bernoulli_error(p: f64, q: f64, m: u32) -> f64 {
        let mut ln_binom = 0.0;
        let mut total = 0.0;
        for k in 0..=m {
            if k > 0 {
                ln_binom += ((m - k + 1) as f64).ln() - (k as f64).ln();
            }
            let a = ln_binom + k as f64 * p.ln() + (m - k) as f64 * (1.0 - p).ln();
            let b = ln_binom + k as f64 * q.ln() + (m - k) as f64 * (1.0 - q).ln();
            total += a.min(b).exp();
        }
        0.5 * total
    }

    #[test]
    fn exponent_governs_error_probability() {
        let (p, q) = (0.2, 0.35);
        let rho0 = DensityOperator::diagonal(&[1.0 - p, p]);
        let rho1 = DensityOperator::diagonal(&[1.0 - q, q]);
        let bound = ChernoffPair::new(&rho0, &rho1).unwrap().bound();
        let mut last_gap = f64::INFINITY;
        for m in [50, 200, 800, 3200, 12800] {
            let pe = bernoulli_error(p, q, m);
            assert!(pe <= 0.5 * bound.coefficient.powi(m as i32) * (1.0 + 1e-9));
            let rate = -pe.ln() / m as f64;
            let gap = (rate - bound.exponent).abs();
            assert!(gap < last_gap);
            last_gap = gap;
        }
        assert!(last_gap < 0.05 * bound.exponent);
    }
}
