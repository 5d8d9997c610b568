//! Symbolic asymptotic complexity: parsing, normalization, inversion,
//! composition and growth classification.
//!
//! All algebra works on growth categories: constant factors inside
//! exponents are absorbed, so `2^(3n)` and `2^n` are the same value, while
//! constants that end up as polynomial degrees (`2^(3 log n) = n^3`) are kept.

mod chain;
mod expr;
mod parse;

use serde::Serialize;
use thiserror::Error;

pub use chain::{Chain, Primitive};
pub use expr::{ComplexityExpr, Growth, GrowthClass, SpeedupType};
pub use parse::parse_complexity;

pub type Rational = num_rational::Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {position}: expected {}, found {found}", expected.join(" or "))]
    Syntax { position: usize, expected: Vec<String>, found: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } => *position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unsupported expression: {reason}")]
    Unsupported { reason: String },
    #[error("{expr} is not invertible ({reason}); retry with dominant-factor approximation")]
    NonInvertible { expr: String, reason: &'static str },
}

impl AlgebraError {
    /// Byte offset of a syntax error, if this is one.
    pub fn position(&self) -> Option<usize> {
        match self {
            AlgebraError::Parse(p) => Some(p.position()),
            _ => None,
        }
    }
}

/// Functional inverse of a pure composition chain.
pub fn inverse(f: &ComplexityExpr) -> Result<ComplexityExpr, AlgebraError> {
    f.inverse()
}

/// `f ∘ g`, normalized.
pub fn compose(f: &ComplexityExpr, g: &ComplexityExpr) -> Result<ComplexityExpr, AlgebraError> {
    f.compose(g)
}

pub fn growth_class(f: &ComplexityExpr) -> GrowthClass {
    f.growth_class()
}

/// Quantum speedup: classical cost expressed in terms of quantum cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Speedup {
    pub expr: ComplexityExpr,
    pub class: GrowthClass,
    #[serde(rename = "type")]
    pub kind: SpeedupType,
    /// True when a product quantum cost was inverted through its dominant factor.
    pub approximate: bool,
}

/// `cc_c(inverse(cc_q))` and its speedup type.
pub fn speedup(classical: &ComplexityExpr, quantum: &ComplexityExpr) -> Result<Speedup, AlgebraError> {
    speedup_with(classical, quantum, false)
}

/// Like [`speedup`], optionally inverting a product quantum cost through its
/// dominant factor.
pub fn speedup_with(
    classical: &ComplexityExpr,
    quantum: &ComplexityExpr,
    approximate: bool,
) -> Result<Speedup, AlgebraError> {
    let (inv, approximated) = match quantum.inverse() {
        Ok(inv) => (inv, false),
        Err(AlgebraError::NonInvertible { .. }) if approximate => (quantum.inverse_approx()?, true),
        Err(e) => return Err(e),
    };
    let expr = classical.compose(&inv)?;
    let class = expr.growth_class();
    Ok(Speedup { expr, class, kind: SpeedupType::from_class(class), approximate: approximated })
}
