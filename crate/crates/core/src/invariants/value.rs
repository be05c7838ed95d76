use std::fmt;

use num_traits::Zero;

use crate::poly::SparsePoly;
use crate::rational::{self, Rational};

/// An exact invariant: a rational number when every length is numeric,
/// otherwise a quotient of polynomials in the user variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Number(Rational),
    Ratio {
        numerator: SparsePoly,
        denominator: SparsePoly,
    },
}

impl ExactValue {
    /// Collapses to a number when the denominator is a nonzero constant and the
    /// numerator is constant too.
    pub fn from_parts(numerator: SparsePoly, denominator: SparsePoly) -> Self {
        match (numerator.as_constant(), denominator.as_constant()) {
            (Some(n), Some(d)) if !d.is_zero() => ExactValue::Number(n / d),
            _ => ExactValue::Ratio { numerator, denominator },
        }
    }

    pub fn as_number(&self) -> Option<&Rational> {
        match self {
            ExactValue::Number(r) => Some(r),
            ExactValue::Ratio { .. } => None,
        }
    }

    /// Equality as rational functions, by cross-multiplying.
    pub fn same_as(&self, other: &ExactValue) -> bool {
        let (a, b) = self.parts();
        let (c, d) = other.parts();
        let arity = a.arity().max(c.arity());
        let lift = |p: SparsePoly| {
            if p.arity() == arity {
                p
            } else {
                match p.as_constant() {
                    Some(k) => SparsePoly::constant(arity, k),
                    None => p,
                }
            }
        };
        let (a, b, c, d) = (lift(a), lift(b), lift(c), lift(d));
        if b == d {
            return a == c;
        }
        match (a.checked_mul(&d), c.checked_mul(&b)) {
            (Ok(x), Ok(y)) => x == y,
            _ => false,
        }
    }

    fn parts(&self) -> (SparsePoly, SparsePoly) {
        match self {
            ExactValue::Number(r) => (SparsePoly::constant(0, r.clone()), SparsePoly::one(0)),
            ExactValue::Ratio { numerator, denominator } => (numerator.clone(), denominator.clone()),
        }
    }

    /// A `"num/den"` string, or an object holding both polynomials.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ExactValue::Number(r) => serde_json::Value::String(rational::render(r)),
            ExactValue::Ratio { numerator, denominator } => serde_json::json!({
                "numerator": numerator.to_string(),
                "denominator": denominator.to_string(),
            }),
        }
    }

    /// Value at a point of the user variables.
    pub fn evaluate(&self, point: &[Rational]) -> crate::Result<Rational> {
        match self {
            ExactValue::Number(r) => Ok(r.clone()),
            ExactValue::Ratio { numerator, denominator } => {
                Ok(numerator.evaluate(point)? / denominator.evaluate(point)?)
            }
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Number(r) => write!(f, "{}", rational::render(r)),
            ExactValue::Ratio { numerator, denominator } => write!(f, "({numerator}) / ({denominator})"),
        }
    }
}
