//! Applying a derived reducer to a closed-form symbol.

use super::algebra::Mult;
use super::reducer::ReducerResult;
use crate::symbols::expr::{pow, product, sum};
use crate::symbols::{differentiate, SymbolExpr};
use crate::Result;

fn multiplier(g: Mult) -> SymbolExpr {
    match g {
        Mult::Z => SymbolExpr::Z,
        Mult::Zbar => SymbolExpr::Zbar,
        Mult::Y => SymbolExpr::Y,
        Mult::W => sum(vec![SymbolExpr::constant(1.0), product(vec![SymbolExpr::constant(-1.0), SymbolExpr::AbsSq])]),
    }
}

/// `E F = Σ c · m · ∂^a ∂̄^b F`. Non-differentiable symbols are rejected as
/// soon as a derivative is needed.
pub fn apply_reducer(r: &ReducerResult, f: &SymbolExpr) -> Result<SymbolExpr> {
    let mut terms = Vec::new();
    for (key, c) in &r.op.terms {
        let (a, b) = key.slot.unwrap_or((0, 0));
        let mut factors = vec![SymbolExpr::Const(c.to_c64())];
        for g in Mult::ALL {
            let e = key.mono.exp(g);
            if e > 0 {
                factors.push(pow(multiplier(g), e as i32));
            }
        }
        factors.push(differentiate(f, a, b)?);
        terms.push(product(factors));
    }
    Ok(sum(terms))
}
