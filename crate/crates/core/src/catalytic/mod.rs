//! Catalytic operators: the space `S_Y` with the generators `Y_±`, `Λ_Y`,
//! `Θ_Y`, the operators `C_ℓ` for every integer `ℓ`, the Nazarov–Sklyanin
//! operators `N_ℓ` and their dehomogenization `Ñ_ℓ`, and truncated matrix
//! representations.
//!
//! For `ℓ ≥ 0`,
//! `C_ℓ = [u^ℓ] Σ_{n≥1} (-1)^n/n Θ_Y (Y_+ Λ_Y + u Y_+)^n y_0/α`,
//! and for `ℓ ≥ 1`,
//! `C_{-ℓ} = (-1)^ℓ [v^{ℓ+1}] log(Σ_m v^m Ñ_m)`.

pub mod displays;
mod elem;
mod engine;
mod linop;

pub use elem::CatalyticElem;
pub use engine::{NTildeMethod, Operators};
pub use linop::{heisenberg_check, heisenberg_rhs, op_matrix, Discrepancy, HeisenbergReport, LinOp, OpError, OpSpec};
