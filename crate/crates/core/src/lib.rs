//! Exact computations with the Dickson and Mui invariants inside
//! E(x_1..x_m) (x) P(y_1..y_m) over Z/p, the Steenrod operations acting on
//! them, and the Milnor basis operations `St^{S,R}` read off from the Mui
//! power map.

pub mod closed_forms;
pub mod combinatorics;
pub mod element;
pub mod duality;
pub mod error;
pub mod expansion;
pub mod field;
pub mod invariants;
pub mod monomial;
pub mod render;
pub mod steenrod;
pub mod verify;

pub use combinatorics::{mu, multinomial, p_adic_digits, seq_stats, MilnorIndex, PAdicDigits, SeqStats};
pub use element::{determinant, AlgebraContext, Element};
pub use error::{AlgebraError, Result};
pub use field::PrimeField;
pub use monomial::{Monomial, MAX_PAIRS};
pub use invariants::{Frame, InvariantId};
pub use steenrod::{bockstein, compose_check, d_star_p, p_power, total_power, TotalPower};
pub use expansion::{invariant_decompose, milnor_st, milnor_table, BasisKey, InvariantExpansion};
