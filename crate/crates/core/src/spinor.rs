//! Two-component radial spinors and the first-order radial equations
//!
//! `(E - m - V - S) psi1 = (-d/dr + k/r) psi2`,
//! `(E + m - V + S) psi2 = ( d/dr + k/r) psi1`.

use crate::error::Result;
use crate::grid::{check_same_grid, inner_product, RadialFunction};
use crate::quantum::Regime;

/// Upper (`psi1`, G) and lower (`psi2`, F) radial components.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorPair {
    pub psi1: RadialFunction,
    pub psi2: RadialFunction,
    pub normalized: bool,
}

impl SpinorPair {
    pub fn joint_norm(&self) -> Result<f64> {
        Ok(inner_product(&self.psi1, &self.psi1)? + inner_product(&self.psi2, &self.psi2)?)
    }
}

/// Relative residual of both radial equations for a sampled spinor, with
/// `S = V` (spin) or `S = -V` (pseudo-spin). Rows within `margin` samples of
/// either end are skipped.
pub fn dirac_residual(
    pair: &SpinorPair,
    regime: Regime,
    m: f64,
    kd: f64,
    energy: f64,
    potential: impl Fn(f64) -> f64,
    margin: usize,
) -> Result<f64> {
    check_same_grid(pair.psi1.grid(), pair.psi2.grid())?;
    let grid = *pair.psi1.grid();
    let (g, f) = (pair.psi1.values(), pair.psi2.values());
    let (dg, df) = (pair.psi1.derivative(), pair.psi2.derivative());
    let (dg, df) = (dg.values(), df.values());
    let mut residual = 0.0;
    let mut scale = 0.0;
    for i in margin..g.len().saturating_sub(margin) {
        let r = grid.r(i);
        let v = potential(r);
        let s = match regime {
            Regime::SpinSymmetric => v,
            Regime::PseudoSpinSymmetric => -v,
        };
        let upper = (energy - m - v - s) * g[i] - (-df[i] + kd * f[i] / r);
        let lower = (energy + m - v + s) * f[i] - (dg[i] + kd * g[i] / r);
        residual += upper * upper + lower * lower;
        scale += (m * g[i]).powi(2) + (m * f[i]).powi(2);
    }
    Ok((residual / scale).sqrt())
}
