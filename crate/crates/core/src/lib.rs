//! Bound states of the radial Dirac equation under spin and pseudo-spin
//! symmetry for Coulomb and Kratzer potentials, with the supersymmetric and
//! shift-operator constructions that generate them and a finite-volume
//! reference solver to check them against.

pub mod coulomb;
pub mod error;
pub mod grid;
pub mod kratzer;
pub mod ladder;
pub mod laguerre;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod potential;
pub mod quantum;
pub mod roots;
pub mod spinor;
pub mod susy;

pub use error::{Error, Result};
pub use grid::{inner_product, normalize_spinor, RadialFunction, RadialGrid};
pub use laguerre::laguerre;
pub use operator::TridiagonalOperator;
pub use potential::{PotentialSpec, Shape};
pub use quantum::{kd_from_quantum_numbers, Kd, QuantumNumbers, Regime};
pub use spinor::SpinorPair;
