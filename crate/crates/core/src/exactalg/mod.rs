//! Exact arithmetic over ℚ, 𝔽_p, quotient extensions and rational function
//! fields, with polynomials, binary forms and elimination.

mod bipoly;
mod field;
mod form;
mod poly;

use thiserror::Error;

pub use bipoly::{det_poly, resultant_q, BiPoly};
pub use field::{parse_rational, Elem, Field, FieldKind};
pub use form::{pgl2_act, BinaryForm, Matrix2};
pub use poly::{
    discriminant, gcd, rational_is_square, rational_roots, resultant, squarefree_decomposition,
    squarefree_part, xgcd, UniPoly,
};

#[derive(Debug, Clone, Error)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,
    /// The modulus of a quotient ring splits as m1·m2.
    #[error("zero divisor: modulus splits as ({}) * ({})", .0 .0, .0 .1)]
    ZeroDivisor(Box<(UniPoly, UniPoly)>),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inseparable polynomial in positive characteristic")]
    InseparableCase,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("inexact polynomial division")]
    Inexact,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value of {bits} bits exceeds the height budget of {budget} bits")]
    OverHeightBudget { bits: u64, budget: u64 },
}

/// Bit-size ceiling for numerators and denominators produced by searches
/// and eliminations. The default 2^16 can be overridden with `DP1_BIT_BUDGET`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        let bits = std::env::var("DP1_BIT_BUDGET")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(1 << 16);
        Budget { bits }
    }
}

impl Budget {
    pub fn check(&self, e: &Elem) -> Result<(), AlgError> {
        let bits = e.bits();
        if bits > self.bits {
            return Err(AlgError::OverHeightBudget {
                bits,
                budget: self.bits,
            });
        }
        Ok(())
    }

    pub fn check_all<'a>(&self, es: impl IntoIterator<Item = &'a Elem>) -> Result<(), AlgError> {
        es.into_iter().try_for_each(|e| self.check(e))
    }
}
