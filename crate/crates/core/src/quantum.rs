//! Relativistic angular quantum numbers in `d` spatial dimensions.
//!
//! The radial Dirac pair only sees the combination `k_d = tau (j + (d - 2)/2)`.
//! Since `j` is a half-integer, `k_d` is an integer for odd `d` and a
//! half-integer for even `d`; it is stored exactly as twice its value.

use std::fmt;

use crate::error::{Error, Result};

/// Which combination of scalar and vector potential is constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `S(r) = V(r)`: the upper component obeys a Schrödinger-like equation.
    SpinSymmetric,
    /// `S(r) = -V(r)`: the lower component obeys a Schrödinger-like equation.
    PseudoSpinSymmetric,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::SpinSymmetric => "spin",
            Regime::PseudoSpinSymmetric => "pseudo",
        }
    }

    /// The energy combination that multiplies the potential in the reduced
    /// second-order equation: `E + m` (spin) or `E - m` (pseudo-spin).
    pub fn coupling_factor(self, m: f64, energy: f64) -> f64 {
        match self {
            Regime::SpinSymmetric => energy + m,
            Regime::PseudoSpinSymmetric => energy - m,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `k_d`, held as twice its value so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Kd {
    twice: i64,
}

impl Kd {
    pub fn from_twice(twice: i64) -> Result<Self> {
        if twice == 0 {
            return Err(Error::Domain("k_d must be nonzero for d >= 2".into()));
        }
        Ok(Self { twice })
    }

    pub fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// The sign `tau` in `k_d = tau (j + (d - 2)/2)`.
    pub fn tau(self) -> i32 {
        if self.twice > 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Kd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Dimension, total angular momentum and (pseudo-)orbital angular momentum.
///
/// In the pseudo-spin regime `ell` is the pseudo orbital number `ell + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub d: u32,
    /// Twice the total angular momentum; always odd.
    pub twice_j: u32,
    pub ell: u32,
    pub regime: Regime,
    pub kd: Kd,
}

impl QuantumNumbers {
    pub fn new(d: u32, twice_j: u32, ell: u32, regime: Regime) -> Result<Self> {
        let kd = kd_from_quantum_numbers(d, twice_j, ell, regime)?;
        Ok(Self {
            d,
            twice_j,
            ell,
            regime,
            kd,
        })
    }

    pub fn tau(&self) -> i32 {
        self.kd.tau()
    }
}

/// Maps `(d, j, ell)` onto `k_d` using the row of the spin or pseudo-spin
/// table selected by whether `j = ell + 1/2` or `j = ell - 1/2`.
///
/// `twice_j` is `2j` and must be odd and positive.
pub fn kd_from_quantum_numbers(d: u32, twice_j: u32, ell: u32, regime: Regime) -> Result<Kd> {
    if d < 2 {
        return Err(Error::Domain(format!("dimension d = {d} must be at least 2")));
    }
    if twice_j == 0 || twice_j.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "j = {twice_j}/2 must be a positive half-integer"
        )));
    }
    let twice_j = i64::from(twice_j);
    let twice_ell = 2 * i64::from(ell);
    let d = i64::from(d);

    // |2 k_d| = 2j + d - 2 in every row; only the sign differs.
    let magnitude = twice_j + d - 2;
    let upper_row = twice_j == twice_ell + 1;
    let lower_row = twice_j == twice_ell - 1;
    let twice_kd = match (regime, upper_row, lower_row) {
        // j = l + 1/2: k_d = -(l + (d-1)/2)
        (Regime::SpinSymmetric, true, _) => -(twice_ell + d - 1),
        // j = l - 1/2: k_d = l + (d-3)/2
        (Regime::SpinSymmetric, _, true) => twice_ell + d - 3,
        // j = l~ + 1/2: k_d = l~ + (d-1)/2
        (Regime::PseudoSpinSymmetric, true, _) => twice_ell + d - 1,
        // j = l~ - 1/2: k_d = -(l~ + (d-3)/2)
        (Regime::PseudoSpinSymmetric, _, true) => -(twice_ell + d - 3),
        _ => {
            return Err(Error::Domain(format!(
                "inconsistent angular momenta: |j - l| must be 1/2 (j = {twice_j}/2, l = {ell})"
            )))
        }
    };
    debug_assert_eq!(twice_kd.abs(), magnitude);
    Kd::from_twice(twice_kd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn three_dimensional_rows() {
        let spin = Regime::SpinSymmetric;
        let pseudo = Regime::PseudoSpinSymmetric;
        assert_eq!(kd_from_quantum_numbers(3, 1, 0, spin).unwrap().value(), -1.0);
        assert_eq!(kd_from_quantum_numbers(3, 1, 1, spin).unwrap().value(), 1.0);
        assert_eq!(kd_from_quantum_numbers(3, 3, 1, pseudo).unwrap().value(), 2.0);
        assert_eq!(kd_from_quantum_numbers(3, 1, 1, pseudo).unwrap().value(), -1.0);
    }

    #[test]
    fn even_dimension_gives_half_integer() {
        let kd = kd_from_quantum_numbers(2, 1, 0, Regime::SpinSymmetric).unwrap();
        assert_eq!(kd.twice(), -1);
        assert_eq!(kd.to_string(), "-1/2");
        assert_eq!(kd.tau(), -1);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(matches!(
            kd_from_quantum_numbers(3, 5, 0, Regime::SpinSymmetric),
            Err(Error::Domain(_))
        ));
        assert!(kd_from_quantum_numbers(3, 2, 1, Regime::SpinSymmetric).is_err());
        assert!(kd_from_quantum_numbers(1, 1, 0, Regime::SpinSymmetric).is_err());
        // j = l - 1/2 with l = 0 would need j = -1/2.
        assert!(kd_from_quantum_numbers(3, 0, 0, Regime::SpinSymmetric).is_err());
    }

    proptest! {
        #[test]
        fn magnitude_is_j_plus_half_dimension(
            d in 2u32..12, half in 0u32..20, upper in any::<bool>(), pseudo in any::<bool>()
        ) {
            let twice_j = 2 * half + 1;
            let ell = if upper { half } else { half + 1 };
            let regime = if pseudo { Regime::PseudoSpinSymmetric } else { Regime::SpinSymmetric };
            let q = QuantumNumbers::new(d, twice_j, ell, regime).unwrap();
            let j = f64::from(twice_j) / 2.0;
            prop_assert_eq!(q.kd.value().abs(), j + (f64::from(d) - 2.0) / 2.0);
            prop_assert_eq!(q.kd.value(), f64::from(q.tau()) * (j + (f64::from(d) - 2.0) / 2.0));
        }
    }
}
