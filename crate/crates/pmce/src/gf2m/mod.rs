//! Arithmetic in GF(2^m) and in the polynomial ring GF(2^m)[x].
//!
//! Elements are m-bit values in a table-driven representation: the field is
//! built over a fixed low-weight primitive reduction polynomial per m
//! (3 ≤ m ≤ 13) and multiplication goes through exp/log tables. Polynomials
//! carry their coefficients lowest degree first.

mod field;
mod poly;

pub use field::{FieldParams, Gfe};
pub use poly::{eea, eea_below, gcd, inv_mod, random_irreducible, sqrt_mod, FieldPoly};

/// Errors from field and polynomial-ring operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no valid field of degree {0} (supported range is 3..=13)")]
    UnsupportedDegree(u32),
    #[error("reduction polynomial failed verification: {0}")]
    BadReduction(String),
    #[error("operand is not a square in the ring")]
    NotInRing,
}
