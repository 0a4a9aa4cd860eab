//! Kratzer potential `V = lambda/r^2 - v/r + c`.
//!
//! The energy enters the effective centrifugal parameter `s`, so levels are
//! roots of a transcendental relation rather than a closed form.

use crate::error::{Error, Result};
use crate::grid::{normalize_spinor, RadialFunction, RadialGrid};
use crate::laguerre::laguerre_state;
use crate::quantum::Regime;
use crate::roots::{refine_root, sign_changes_at};
use crate::spinor::SpinorPair;

/// Number of interior scan points on the admissible energy interval.
pub const SCAN_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KratzerParams {
    pub m: f64,
    pub v: f64,
    pub lambda: f64,
    pub c: f64,
}

impl KratzerParams {
    pub fn new(m: f64, v: f64, lambda: f64, c: f64) -> Self {
        Self { m, v, lambda, c }
    }

    fn validate(&self, regime: Regime, kd: f64) -> Result<()> {
        for (name, x) in [("m", self.m), ("v", self.v), ("lambda", self.lambda), ("c", self.c), ("kd", kd)] {
            if !x.is_finite() {
                return Err(Error::Domain(format!("{name} = {x} is not finite")));
            }
        }
        if self.m <= 0.0 {
            return Err(Error::Domain(format!("mass m = {} must be positive", self.m)));
        }
        match regime {
            Regime::SpinSymmetric if self.v <= 0.0 => Err(Error::NoBoundState(format!(
                "spin regime requires v > 0, got v = {}",
                self.v
            ))),
            Regime::PseudoSpinSymmetric if self.v >= 0.0 => Err(Error::NoBoundState(format!(
                "pseudo regime requires v < 0, got v = {}",
                self.v
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KratzerLevel {
    pub regime: Regime,
    pub n: usize,
    pub kd: f64,
    pub energy: f64,
    /// `s1` (spin) or `s2` (pseudo-spin) at this energy.
    pub s: f64,
    /// `v (E + m)` or `v (E - m)`.
    pub alpha: f64,
    /// Exponential decay rate of level `n`, `alpha / (s + n)`.
    pub decay: f64,
    /// First-order intertwining constants, spin regime only.
    pub mu: Option<f64>,
    pub nu: Option<f64>,
}

fn radicand(regime: Regime, p: &KratzerParams, kd: f64, energy: f64) -> f64 {
    match regime {
        Regime::SpinSymmetric => (kd + 0.5).powi(2) + 2.0 * p.lambda * (energy + p.m),
        Regime::PseudoSpinSymmetric => (kd - 0.5).powi(2) + 2.0 * p.lambda * (energy - p.m),
    }
}

/// `s = 1/2 + sqrt(radicand)`, or `None` where the radicand is negative.
pub fn s_parameter(regime: Regime, p: &KratzerParams, kd: f64, energy: f64) -> Option<f64> {
    let rad = radicand(regime, p, kd, energy);
    (rad >= 0.0).then(|| 0.5 + rad.sqrt())
}

/// `m^2 - E^2 + 2 c (E + m)` (spin) or `m^2 - E^2 + 2 c (E - m)` (pseudo).
fn binding(regime: Regime, p: &KratzerParams, energy: f64) -> f64 {
    p.m * p.m - energy * energy + 2.0 * p.c * regime.coupling_factor(p.m, energy)
}

/// Energy interval on which level `n` can exist: the square root of the
/// binding term is real, `alpha > 0`, and the `s` radicand is non-negative.
pub fn admissible_interval(regime: Regime, p: &KratzerParams, kd: f64) -> Result<(f64, f64)> {
    p.validate(regime, kd)?;
    // m^2 - E^2 + 2c(E +- m) > 0 between the roots c -+ |c +- m|.
    let (mut lo, mut hi) = match regime {
        Regime::SpinSymmetric => {
            let w = (p.c + p.m).abs();
            ((p.c - w).max(-p.m), p.c + w)
        }
        Regime::PseudoSpinSymmetric => {
            let w = (p.c - p.m).abs();
            (p.c - w, (p.c + w).min(p.m))
        }
    };
    if lo >= hi {
        return Err(Error::NoBoundState(format!(
            "offset c = {} leaves no energies with real decay",
            p.c
        )));
    }
    if p.lambda != 0.0 {
        // The radicand is linear in E and vanishes at `edge`.
        let edge = match regime {
            Regime::SpinSymmetric => -p.m - (kd + 0.5).powi(2) / (2.0 * p.lambda),
            Regime::PseudoSpinSymmetric => p.m - (kd - 0.5).powi(2) / (2.0 * p.lambda),
        };
        if p.lambda > 0.0 {
            lo = lo.max(edge);
        } else {
            hi = hi.min(edge);
        }
        if lo >= hi {
            return Err(Error::Domain(format!(
                "the s radicand is negative on the whole interval for lambda = {}",
                p.lambda
            )));
        }
    }
    Ok((lo, hi))
}

/// `LHS - RHS` of the energy relation for level `n`:
/// `(n + s1) sqrt(m^2 - E^2 + 2c(E+m)) - v(E+m)` (spin) or
/// `v(E-m) - (n + s2) sqrt(m^2 - E^2 + 2c(E-m))` (pseudo).
pub fn energy_relation(regime: Regime, p: &KratzerParams, kd: f64, n: usize, energy: f64) -> f64 {
    let Some(s) = s_parameter(regime, p, kd, energy) else {
        return f64::NAN;
    };
    let root = binding(regime, p, energy).max(0.0).sqrt();
    let alpha = p.v * regime.coupling_factor(p.m, energy);
    match regime {
        Regime::SpinSymmetric => (n as f64 + s) * root - alpha,
        Regime::PseudoSpinSymmetric => alpha - (n as f64 + s) * root,
    }
}

/// `|LHS - RHS| / |alpha|`.
pub fn relative_residual(regime: Regime, p: &KratzerParams, kd: f64, n: usize, energy: f64) -> f64 {
    let alpha = p.v * regime.coupling_factor(p.m, energy);
    energy_relation(regime, p, kd, n, energy).abs() / alpha.abs()
}

fn solve(regime: Regime, p: &KratzerParams, kd: f64, n: usize) -> Result<f64> {
    let interval = admissible_interval(regime, p, kd)?;
    unique_root_on(regime, interval, |e| energy_relation(regime, p, kd, n, e)).map_err(|err| match err {
        Error::NoBoundState(_) => Error::NoBoundState(format!("no {regime} level n = {n} for kd = {kd} and {p:?}")),
        other => other,
    })
}

/// Scans `f` at [`SCAN_POINTS`] points of the admissible interval and refines
/// the single sign change to full precision. The end where `alpha` vanishes
/// (`-m` for spin, `m` for pseudo-spin) is a trivial root of every form of
/// the relation and is left out; the other end is scanned.
pub(crate) fn unique_root_on(regime: Regime, (lo, hi): (f64, f64), f: impl Fn(f64) -> f64) -> Result<f64> {
    let step = (hi - lo) / (SCAN_POINTS as f64 + 1.0);
    let brackets = match regime {
        Regime::SpinSymmetric => sign_changes_at(&f, (1..=SCAN_POINTS + 1).map(|i| lo + step * i as f64)),
        Regime::PseudoSpinSymmetric => sign_changes_at(&f, (0..=SCAN_POINTS).map(|i| lo + step * i as f64)),
    };
    let roots = brackets
        .into_iter()
        .map(|(a, b)| refine_root(&f, a, b, 0.0))
        .collect::<Result<Vec<f64>>>()?;
    match roots.as_slice() {
        [] => Err(Error::NoBoundState("no sign change on the admissible interval".into())),
        [e] => Ok(*e),
        _ => Err(Error::MultipleRoots { roots }),
    }
}

pub fn spin_energy(p: &KratzerParams, kd: f64, n: usize) -> Result<f64> {
    solve(Regime::SpinSymmetric, p, kd, n)
}

pub fn pseudo_energy(p: &KratzerParams, kd: f64, n: usize) -> Result<f64> {
    solve(Regime::PseudoSpinSymmetric, p, kd, n)
}

/// `(mu, nu)` with `mu = m + E` and `nu = E - m - 2c + (v^2/s1^2)(E + m)`.
pub fn mu_nu(p: &KratzerParams, s1: f64, energy: f64) -> (f64, f64) {
    let mu = p.m + energy;
    let nu = energy - p.m - 2.0 * p.c + p.v * p.v / (s1 * s1) * (energy + p.m);
    (mu, nu)
}

pub fn level(regime: Regime, p: &KratzerParams, kd: f64, n: usize) -> Result<KratzerLevel> {
    let energy = solve(regime, p, kd, n)?;
    let s = s_parameter(regime, p, kd, energy).expect("root lies where the radicand is non-negative");
    let alpha = p.v * regime.coupling_factor(p.m, energy);
    let (mu, nu) = match regime {
        Regime::SpinSymmetric => {
            let (mu, nu) = mu_nu(p, s, energy);
            (Some(mu), Some(nu))
        }
        Regime::PseudoSpinSymmetric => (None, None),
    };
    Ok(KratzerLevel {
        regime,
        n,
        kd,
        energy,
        s,
        alpha,
        decay: alpha / (s + n as f64),
        mu,
        nu,
    })
}

/// `r^s e^{-kappa r} L^{2s-1}_n(2 kappa r)`, the component obeying the
/// second-order equation (upper for spin, lower for pseudo-spin).
pub fn wavefunction(regime: Regime, p: &KratzerParams, kd: f64, n: usize, grid: RadialGrid) -> Result<RadialFunction> {
    let lvl = level(regime, p, kd, n)?;
    laguerre_state(grid, lvl.s, lvl.decay, n)
}

pub fn spin_wavefunction(p: &KratzerParams, kd: f64, n: usize, grid: RadialGrid) -> Result<RadialFunction> {
    wavefunction(Regime::SpinSymmetric, p, kd, n, grid)
}

pub fn pseudo_wavefunction(p: &KratzerParams, kd: f64, n: usize, grid: RadialGrid) -> Result<RadialFunction> {
    wavefunction(Regime::PseudoSpinSymmetric, p, kd, n, grid)
}

/// Normalized spinor: the partner component follows from the first-order
/// radial equation with the constant coefficient, `psi2 = (psi1' + kd psi1/r)/(E+m)`
/// (spin) or `psi1 = (-psi2' + kd psi2/r)/(E-m)` (pseudo-spin).
pub fn assemble_spinor(regime: Regime, p: &KratzerParams, kd: f64, n: usize, grid: RadialGrid) -> Result<SpinorPair> {
    let lvl = level(regime, p, kd, n)?;
    let psi = laguerre_state(grid, lvl.s, lvl.decay, n)?;
    let dpsi = psi.derivative();
    let (psi1, psi2) = match regime {
        Regime::SpinSymmetric => {
            let lower = dpsi.combine(1.0, &psi.map_with_r(|r, x| kd * x / r), 1.0)?;
            (psi.clone(), lower.scaled((lvl.energy + p.m).recip()))
        }
        Regime::PseudoSpinSymmetric => {
            let upper = dpsi.combine(-1.0, &psi.map_with_r(|r, x| kd * x / r), 1.0)?;
            (upper.scaled((lvl.energy - p.m).recip()), psi.clone())
        }
    };
    let (psi1, psi2) = normalize_spinor(&psi1, &psi2)?;
    Ok(SpinorPair {
        psi1,
        psi2,
        normalized: true,
    })
}

/// `m(1 - q)/(1 + q) + 2c/(1 - q)` with `q = v^2/s1^2`, solved together with
/// `s1 = s1(E)` by damped fixed-point iteration on `s1`.
pub fn ground_energy_closed_form(p: &KratzerParams, kd: f64) -> Result<f64> {
    p.validate(Regime::SpinSymmetric, kd)?;
    let energy_of = |s: f64| {
        let q = p.v * p.v / (s * s);
        let base = p.m * (1.0 - q) / (1.0 + q);
        if p.c == 0.0 {
            base
        } else {
            base + 2.0 * p.c / (1.0 - q)
        }
    };
    let s_of = |e: f64| {
        s_parameter(Regime::SpinSymmetric, p, kd, e).ok_or_else(|| {
            Error::Domain(format!("s1 radicand negative at E = {e} during fixed-point iteration"))
        })
    };
    let mut s = 0.5 + (kd + 0.5).abs();
    for _ in 0..200 {
        let next = 0.5 * s + 0.5 * s_of(energy_of(s))?;
        if (next - s).abs() <= 4.0 * f64::EPSILON * s {
            return Ok(energy_of(next));
        }
        s = next;
    }
    Err(Error::Numerical(format!(
        "ground-energy fixed point did not converge in 200 iterations (kd = {kd}, {p:?})"
    )))
}

/// `ground_energy_closed_form - spin_energy(n = 0)`.
pub fn ground_energy_discrepancy(p: &KratzerParams, kd: f64) -> Result<f64> {
    Ok(ground_energy_closed_form(p, kd)? - spin_energy(p, kd, 0)?)
}
