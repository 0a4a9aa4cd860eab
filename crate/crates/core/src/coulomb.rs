//! Coulomb potential `V = -v/r` under spin and pseudo-spin symmetry.
//!
//! Both regimes reduce to `A^+_0 A^-_0 psi~2 = epsilon psi~2` with
//! `W = kd/r - alpha/kd`, where `alpha = (m+E) v` (spin) or `(E-m) v`
//! (pseudo-spin). The spinor is recovered from the transformed pair
//! `(psi~1, psi~2)` through a constant similarity transform.

use crate::error::{Error, Result};
use crate::grid::{normalize_spinor, RadialFunction, RadialGrid};
use crate::laguerre::laguerre_state;
use crate::quantum::Regime;
use crate::spinor::SpinorPair;
use crate::susy::build_ladder;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoulombLevel {
    pub regime: Regime,
    pub n: usize,
    pub kd: f64,
    pub energy: f64,
    /// `(m+E) v` or `(E-m) v`; positive for bound levels.
    pub alpha: f64,
    /// Exponential decay rate of level `n`, `alpha / (kd + n)`.
    pub decay: f64,
    pub epsilon: f64,
}

/// `m (1 - q) / (1 + q)` with `q = v^2 / (kd + n)^2`, without sign gates.
pub fn closed_form_energy(m: f64, v: f64, kd: f64, n: usize) -> f64 {
    let q = v * v / (kd + n as f64).powi(2);
    m * (1.0 - q) / (1.0 + q)
}

fn check(m: f64, v: f64, kd: f64, regime: Regime) -> Result<()> {
    if !(m > 0.0 && m.is_finite() && v.is_finite() && kd.is_finite()) {
        return Err(Error::Domain(format!("invalid parameters m = {m}, v = {v}, kd = {kd}")));
    }
    if kd <= 0.0 {
        return Err(Error::NoBoundState(format!("{regime} regime requires kd > 0, got kd = {kd}")));
    }
    match regime {
        Regime::SpinSymmetric if v <= 0.0 => Err(Error::NoBoundState(format!(
            "spin regime requires v > 0, got v = {v}"
        ))),
        Regime::PseudoSpinSymmetric if v >= 0.0 => Err(Error::NoBoundState(format!(
            "pseudo regime requires v < 0, got v = {v}"
        ))),
        _ => Ok(()),
    }
}

pub fn spin_spectrum(m: f64, v: f64, kd: f64, n: usize) -> Result<f64> {
    check(m, v, kd, Regime::SpinSymmetric)?;
    Ok(closed_form_energy(m, v, kd, n))
}

pub fn pseudo_spectrum(m: f64, v: f64, kd: f64, n: usize) -> Result<f64> {
    check(m, v, kd, Regime::PseudoSpinSymmetric)?;
    Ok(-closed_form_energy(m, v, kd, n))
}

/// `epsilon = alpha^2/kd^2 - (m^2 - E^2)`, the eigenvalue of `A^+_0 A^-_0`.
pub fn epsilon(regime: Regime, m: f64, v: f64, kd: f64, energy: f64) -> f64 {
    let alpha = regime.coupling_factor(m, energy) * v;
    alpha * alpha / (kd * kd) - (m * m - energy * energy)
}

pub fn level(regime: Regime, m: f64, v: f64, kd: f64, n: usize) -> Result<CoulombLevel> {
    let energy = match regime {
        Regime::SpinSymmetric => spin_spectrum(m, v, kd, n)?,
        Regime::PseudoSpinSymmetric => pseudo_spectrum(m, v, kd, n)?,
    };
    let alpha = regime.coupling_factor(m, energy) * v;
    Ok(CoulombLevel {
        regime,
        n,
        kd,
        energy,
        alpha,
        decay: alpha / (kd + n as f64),
        epsilon: epsilon(regime, m, v, kd, energy),
    })
}

/// `psi~2_n = r^kd e^{-kappa r} L^{2kd-1}_n(2 kappa r)`, unnormalized.
pub fn spin_wavefunction(m: f64, v: f64, kd: f64, n: usize, grid: RadialGrid) -> Result<RadialFunction> {
    let lvl = level(Regime::SpinSymmetric, m, v, kd, n)?;
    laguerre_state(grid, kd, lvl.decay, n)
}

pub fn pseudo_wavefunction(m: f64, v: f64, kd: f64, n: usize, grid: RadialGrid) -> Result<RadialFunction> {
    let lvl = level(Regime::PseudoSpinSymmetric, m, v, kd, n)?;
    laguerre_state(grid, kd, lvl.decay, n)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpinorAssembly {
    Spinor {
        pair: SpinorPair,
        /// `(psi~1, psi~2)` before the similarity transform and normalization.
        transformed: (RadialFunction, RadialFunction),
    },
    /// The spin-symmetric ground level: its `psi~1` partner is not square
    /// integrable, so no normalizable spinor exists.
    MissingSinglet,
}

pub fn assemble_spinor(m: f64, v: f64, kd: f64, n: usize, grid: RadialGrid, regime: Regime) -> Result<SpinorAssembly> {
    let lvl = level(regime, m, v, kd, n)?;
    let lower = laguerre_state(grid, kd, lvl.decay, n)?;
    let (_, a_minus) = build_ladder(kd, lvl.alpha, grid)?;
    let e = lvl.energy;
    let (upper, psi1, psi2) = match regime {
        Regime::SpinSymmetric => {
            if n == 0 {
                return Ok(SpinorAssembly::MissingSinglet);
            }
            let divisor = (m + e) * v / kd - (kd / v) * (m - e);
            consistent_divisor(divisor, m)?;
            let upper = a_minus.apply(&lower)?.scaled(divisor.recip());
            let psi1 = upper.scaled(kd / v);
            let psi2 = upper.combine(1.0, &lower, 1.0)?;
            (upper, psi1, psi2)
        }
        Regime::PseudoSpinSymmetric => {
            let upper = if n == 0 {
                RadialFunction::zeros(grid)
            } else {
                consistent_divisor(e - m, m)?;
                a_minus.apply(&lower)?.scaled((e - m).recip())
            };
            let psi1 = upper.combine(1.0, &lower, v / kd)?;
            (upper, psi1, lower.clone())
        }
    };
    let (psi1, psi2) = normalize_spinor(&psi1, &psi2)?;
    Ok(SpinorAssembly::Spinor {
        pair: SpinorPair {
            psi1,
            psi2,
            normalized: true,
        },
        transformed: (upper, lower),
    })
}

fn consistent_divisor(divisor: f64, m: f64) -> Result<()> {
    if divisor.abs() <= 1e-14 * m {
        return Err(Error::Numerical(format!(
            "intertwining divisor {divisor:e} vanishes for an excited level"
        )));
    }
    Ok(())
}

/// The would-be partner of the spin-symmetric ground level,
/// `r^{-kd} e^{kappa r} (constant + int_0^r z^{2kd} e^{-2 kappa z} dz)` with
/// `kappa = (m + E_0) v / kd`.
///
/// For any constant the function either grows like `e^{kappa r}` or, when the
/// constant cancels the full integral, behaves like `r^{-kd}` at the origin;
/// neither is square integrable for `kd >= 1/2`.
pub fn ground_partner(m: f64, v: f64, kd: f64, constant: f64, r: f64) -> Result<f64> {
    let lvl = level(Regime::SpinSymmetric, m, v, kd, 0)?;
    let kappa = lvl.decay;
    let integrand = |z: f64| if z == 0.0 { 0.0 } else { (2.0 * kd * z.ln() - 2.0 * kappa * z).exp() };
    let intervals = 4000;
    let h = r / intervals as f64;
    let mut sum = integrand(0.0) + integrand(r);
    for i in 1..intervals {
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * integrand(i as f64 * h);
    }
    let integral = sum * h / 3.0;
    Ok((kappa * r - kd * r.ln()).exp() * (constant + integral))
}

/// `int_0^infinity z^{2kd} e^{-2 kappa z} dz = Gamma(2kd + 1) / (2 kappa)^{2kd+1}`
/// for integer `2kd`.
pub fn ground_partner_full_integral(m: f64, v: f64, kd: f64) -> Result<f64> {
    let lvl = level(Regime::SpinSymmetric, m, v, kd, 0)?;
    let order = 2.0 * kd;
    if order.fract() != 0.0 {
        return Err(Error::Domain(format!("2kd = {order} is not an integer")));
    }
    let factorial: f64 = (1..=order as u64).map(|k| k as f64).product();
    Ok(factorial / (2.0 * lvl.decay).powf(order + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::interior_residual;
    use crate::spinor::dirac_residual;
    use crate::susy::partner_hamiltonians;
    use approx::assert_abs_diff_eq;

    #[test]
    fn closed_form_examples() {
        assert_eq!(spin_spectrum(1.0, 1.0, 1.0, 0).unwrap(), 0.0);
        assert_abs_diff_eq!(spin_spectrum(1.0, 0.5, 1.0, 0).unwrap(), 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(spin_spectrum(1.0, 0.5, 1.0, 1).unwrap(), 15.0 / 17.0, epsilon = 1e-15);
        assert_eq!(pseudo_spectrum(1.0, -1.0, 1.0, 0).unwrap(), 0.0);
        assert_abs_diff_eq!(pseudo_spectrum(1.0, -0.5, 1.0, 0).unwrap(), -0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(pseudo_spectrum(1.0, -0.5, 2.0, 0).unwrap(), -15.0 / 17.0, epsilon = 1e-15);
    }

    #[test]
    fn sign_gates() {
        for (v, kd) in [(-0.5, 1.0), (0.0, 1.0), (0.5, -1.0)] {
            assert!(matches!(spin_spectrum(1.0, v, kd, 0), Err(Error::NoBoundState(_))));
        }
        assert!(matches!(pseudo_spectrum(1.0, 0.5, 1.0, 0), Err(Error::NoBoundState(_))));
        let grid = RadialGrid::with_spacing(50.0, 1e-3).unwrap();
        assert!(pseudo_wavefunction(1.0, 0.5, 1.0, 0, grid).is_err());
    }

    #[test]
    fn regime_conjugation_and_degeneracy() {
        for (v, kd, n) in [(0.3, 1.0, 0), (0.9, 2.5, 3), (1.7, 1.0, 2)] {
            assert_eq!(pseudo_spectrum(1.3, -v, kd, n).unwrap(), -closed_form_energy(1.3, v, kd, n));
        }
        assert_eq!(spin_spectrum(1.0, 0.7, 1.0, 2).unwrap(), spin_spectrum(1.0, 0.7, 2.0, 1).unwrap());
    }

    #[test]
    fn epsilon_vanishes_at_ground_and_orders_levels() {
        for regime in [Regime::SpinSymmetric, Regime::PseudoSpinSymmetric] {
            let v = if regime == Regime::SpinSymmetric { 0.6 } else { -0.6 };
            let e0 = level(regime, 1.0, v, 1.5, 0).unwrap();
            assert!(e0.epsilon.abs() < 1e-15);
            let e1 = level(regime, 1.0, v, 1.5, 1).unwrap();
            assert!(e1.epsilon > 0.0 && e1.decay > 0.0);
        }
    }

    #[test]
    fn node_structure() {
        let (m, v, kd) = (1.0, 0.5, 1.0);
        let lvl = level(Regime::SpinSymmetric, m, v, kd, 1).unwrap();
        let grid = RadialGrid::for_state(kd, 1, lvl.decay, 1e-3).unwrap();
        let psi = spin_wavefunction(m, v, kd, 1, grid).unwrap();
        assert_eq!(psi.sign_changes(1e-12), 1);
        let node = (0..psi.values().len() - 1)
            .find(|&i| psi.values()[i] * psi.values()[i + 1] <= 0.0)
            .unwrap();
        assert!((grid.r(node) - 1.0 / lvl.decay).abs() <= grid.h());

        let p = level(Regime::PseudoSpinSymmetric, m, -v, kd, 2).unwrap();
        let grid = RadialGrid::for_state(kd, 2, p.decay, 1e-3).unwrap();
        assert_eq!(pseudo_wavefunction(m, -v, kd, 2, grid).unwrap().sign_changes(1e-12), 2);
    }

    #[test]
    fn short_grid_is_a_resolution_error() {
        let grid = RadialGrid::with_spacing(3.0, 1e-3).unwrap();
        assert!(matches!(spin_wavefunction(1.0, 0.5, 1.0, 0, grid), Err(Error::Resolution(_))));
    }

    #[test]
    fn wavefunction_is_eigenvector_of_h2() {
        let (m, v, kd, n) = (1.0, 0.5, 1.0, 2);
        let lvl = level(Regime::SpinSymmetric, m, v, kd, n).unwrap();
        let grid = RadialGrid::for_state(kd, n, lvl.decay, 1e-3).unwrap();
        let psi = spin_wavefunction(m, v, kd, n, grid).unwrap();
        let (_, h2) = partner_hamiltonians(kd, lvl.alpha, grid).unwrap();
        let res = interior_residual(&h2.apply(&psi).unwrap(), &psi.scaled(lvl.epsilon), 5).unwrap();
        assert!(res < 1e-4, "{res}");
    }

    #[test]
    fn spinor_assembly_cases() {
        let grid = RadialGrid::with_spacing(150.0, 1e-3).unwrap();
        assert_eq!(
            assemble_spinor(1.0, 0.5, 1.0, 0, grid, Regime::SpinSymmetric).unwrap(),
            SpinorAssembly::MissingSinglet
        );
        let SpinorAssembly::Spinor { pair, transformed } =
            assemble_spinor(1.0, -0.5, 1.0, 0, grid, Regime::PseudoSpinSymmetric).unwrap()
        else {
            panic!("pseudo ground level has a spinor");
        };
        assert!(transformed.0.values().iter().all(|&x| x == 0.0));
        assert!((pair.joint_norm().unwrap() - 1.0).abs() < 1e-12);
        for (a, b) in pair.psi1.values().iter().zip(pair.psi2.values()) {
            assert!((a - (-0.5) * b).abs() <= 1e-15 * b.abs().max(1e-300));
        }
        let SpinorAssembly::Spinor { pair, .. } =
            assemble_spinor(1.0, 0.5, 1.0, 1, grid, Regime::SpinSymmetric).unwrap()
        else {
            panic!("excited spin level has a spinor");
        };
        assert!(pair.psi1.max_abs() > 0.0 && pair.psi2.max_abs() > 0.0);
        assert!((pair.joint_norm().unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn assembled_spinors_solve_the_radial_equations() {
        let grid = RadialGrid::with_spacing(200.0, 5e-4).unwrap();
        for (regime, v, n) in [
            (Regime::SpinSymmetric, 0.5, 1),
            (Regime::SpinSymmetric, 0.9, 2),
            (Regime::PseudoSpinSymmetric, -0.5, 0),
            (Regime::PseudoSpinSymmetric, -0.7, 2),
        ] {
            let kd = 1.0;
            let lvl = level(regime, 1.0, v, kd, n).unwrap();
            let SpinorAssembly::Spinor { pair, .. } = assemble_spinor(1.0, v, kd, n, grid, regime).unwrap() else {
                panic!("spinor expected");
            };
            let res = dirac_residual(&pair, regime, 1.0, kd, lvl.energy, |r| -v / r, 10).unwrap();
            assert!(res < 1e-4, "{regime} n={n}: {res}");
        }
    }

    #[test]
    fn ground_partner_is_never_square_integrable() {
        let (m, v, kd) = (1.0, 0.5, 1.0);
        // Any constant other than minus the full integral: exponential growth.
        let grow_a = ground_partner(m, v, kd, 0.0, 20.0).unwrap();
        let grow_b = ground_partner(m, v, kd, 0.0, 40.0).unwrap();
        assert!(grow_b > 1e3 * grow_a && grow_a > 0.0);
        // Cancelling constant: decays at infinity but diverges like r^{-kd}.
        let full = ground_partner_full_integral(m, v, kd).unwrap();
        let near = |r: f64| ground_partner(m, v, kd, -full, r).unwrap();
        assert!((near(1e-3) * 1e-3 / (near(1e-4) * 1e-4) - 1.0).abs() < 1e-2);
        assert!(near(8.0).abs() < near(4.0).abs());
    }
}
