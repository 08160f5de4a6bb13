//! Toeplitz symbols: closed-form functions, measures, distributional
//! derivatives of measures, and the forms they define.

pub mod bessel;
pub mod expr;
pub mod measure;
pub mod parse;

use num_complex::Complex64;

pub use expr::{differentiate, SymbolExpr};
pub use measure::{function_form, sesq_form, symbol_form, Atom, DistSymbol, MeasureData};
pub use parse::{parse_symbol, Symbol};

use crate::numerics::{ball_quadrature, Quadrature};
use crate::spaces::geometry_for;
use crate::symcalc::{apply_reducer, ReducerResult};
use crate::{Result, SpaceKind};

/// Quadrature for `⟨F u, v⟩` with `u, v` of seed index `< n` and creation
/// power `p`: a ball rule over the support when `F` has compact support
/// inside the domain, the space's global rule otherwise.
pub fn quadrature_for(kind: SpaceKind, f: &SymbolExpr, n: usize, p: u32) -> Result<Quadrature> {
    let g = geometry_for(kind);
    if let Some((c, r)) = f.support() {
        let inside = match kind {
            SpaceKind::Disk => c.norm() + r <= 1.0,
            SpaceKind::HalfPlane => c.im - r >= 0.0,
            SpaceKind::FockPlane => true,
        };
        if inside {
            let deg = n + 2 * p as usize;
            let radial = if f.is_differentiable() { 120 } else { deg + 16 };
            return ball_quadrature(c, r, radial, 2 * deg + 64, |z| g.density(z));
        }
    }
    g.auto_quadrature(n, p)
}

/// Result of reducing a symbol: a function on the smooth path, a list of
/// distributional terms on the measure path.
#[derive(Clone, Debug)]
pub enum Reduced {
    Function(SymbolExpr),
    Measure(Vec<DistSymbol>),
}

/// `E F` for a reduction operator `E`. Differentiable functions go through
/// the closed form; measures (and non-differentiable densities) become
/// distributional terms.
pub fn reduce_symbol(r: &ReducerResult, s: &Symbol) -> Result<Reduced> {
    if let Symbol::Function(f) = s {
        if f.is_differentiable() {
            return Ok(Reduced::Function(apply_reducer(r, f)?));
        }
    }
    let base = s.as_measure();
    let terms = r
        .op
        .terms
        .iter()
        .map(|(key, c)| {
            let (a, b) = key.slot.unwrap_or((0, 0));
            let mut m = crate::symcalc::MultPoly::zero();
            m.add_term(key.mono, &crate::symcalc::Coeff::one());
            DistSymbol {
                base: base.clone(),
                alpha: a,
                beta: b,
                kind: r.kind,
                coderivative: false,
                coeff: c.to_c64(),
                multiplier: m,
            }
        })
        .collect();
    Ok(Reduced::Measure(terms))
}

/// `|F(z)|` helper for mass computations.
pub fn abs_value(f: &SymbolExpr, z: Complex64) -> f64 {
    f.eval(z).norm()
}
