//! Exact Jack super nabla calculus.
//!
//! Symmetric functions over ℚ(α) in the power-sum presentation, Jack
//! polynomials, the catalytic operators `C_ℓ` and `N_ℓ`, shifted symmetric
//! functions, and the super nabla operator with its structure coefficients.

pub mod coeff;
pub mod partition;
pub mod symfunc;
pub mod jack;
pub mod catalytic;
pub mod shifted;
pub mod nabla;
pub mod verify;
