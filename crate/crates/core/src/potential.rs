//! Potential parameters for the two symmetry regimes.

use crate::error::{Error, Result};
use crate::quantum::Regime;

/// `V(r) = -v/r` or `V(r) = lambda/r^2 - v/r + c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Coulomb { v: f64 },
    Kratzer { v: f64, lambda: f64, c: f64 },
}

impl Shape {
    pub fn name(&self) -> &'static str {
        match self {
            Shape::Coulomb { .. } => "coulomb",
            Shape::Kratzer { .. } => "kratzer",
        }
    }

    pub fn v(&self) -> f64 {
        match *self {
            Shape::Coulomb { v } | Shape::Kratzer { v, .. } => v,
        }
    }

    pub fn lambda(&self) -> f64 {
        match *self {
            Shape::Coulomb { .. } => 0.0,
            Shape::Kratzer { lambda, .. } => lambda,
        }
    }

    pub fn c(&self) -> f64 {
        match *self {
            Shape::Coulomb { .. } => 0.0,
            Shape::Kratzer { c, .. } => c,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.lambda() / (r * r) - self.v() / r + self.c()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec {
    pub regime: Regime,
    pub m: f64,
    pub shape: Shape,
}

impl PotentialSpec {
    pub fn coulomb(regime: Regime, m: f64, v: f64) -> Self {
        Self {
            regime,
            m,
            shape: Shape::Coulomb { v },
        }
    }

    pub fn kratzer(regime: Regime, m: f64, v: f64, lambda: f64, c: f64) -> Self {
        Self {
            regime,
            m,
            shape: Shape::Kratzer { v, lambda, c },
        }
    }

    /// Finite parameters and a positive mass.
    pub fn validate(&self) -> Result<()> {
        let s = &self.shape;
        for (name, x) in [("m", self.m), ("v", s.v()), ("lambda", s.lambda()), ("c", s.c())] {
            if !x.is_finite() {
                return Err(Error::Domain(format!("{name} = {x} is not finite")));
            }
        }
        if self.m <= 0.0 {
            return Err(Error::Domain(format!("mass m = {} must be positive", self.m)));
        }
        Ok(())
    }

    /// Sign gate on `v`: spin symmetry binds for `v > 0`, pseudo-spin for `v < 0`.
    pub fn check_regime(&self) -> Result<()> {
        let v = self.shape.v();
        match self.regime {
            Regime::SpinSymmetric if v <= 0.0 => Err(Error::NoBoundState(format!(
                "spin regime requires v > 0, got v = {v}"
            ))),
            Regime::PseudoSpinSymmetric if v >= 0.0 => Err(Error::NoBoundState(format!(
                "pseudo regime requires v < 0, got v = {v}"
            ))),
            _ => Ok(()),
        }
    }
}
