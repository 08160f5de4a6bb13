//! Truncated Toeplitz matrices on analytic and true polyanalytic spaces,
//! reduction checks and spectral analysis.

pub mod reduction;
pub mod spectrum;

use num_complex::Complex64;
use serde::Serialize;

pub use reduction::{check_reduction, check_reduction_with, ReductionReport};
pub use spectrum::{classify_decay, sn_csv, spectrum, zero_rank_test, DecayClass, DecayConfig, DecayReport, ZeroRank};

use crate::error::invalid;
use crate::numerics::{DenseMatrix, QuadMeta, Quadrature};
use crate::spaces::{geometry_for, sample, true_poly_basis, BasisFunction, SpaceSpec};
use crate::symbols::{quadrature_for, symbol_form, DistSymbol, MeasureData, Reduced, Symbol, SymbolExpr};
use crate::{Result, SpaceKind};

/// A symbol as the toeplitz module consumes it.
#[derive(Clone, Debug)]
pub enum ToeplitzSymbol {
    Function(SymbolExpr),
    Dist(Vec<DistSymbol>),
}

impl ToeplitzSymbol {
    pub fn from_symbol(kind: SpaceKind, s: &Symbol) -> Self {
        match s {
            Symbol::Function(f) => ToeplitzSymbol::Function(f.clone()),
            Symbol::Measure(m) => ToeplitzSymbol::Dist(vec![DistSymbol::new(kind, m.clone(), 0, 0)]),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            ToeplitzSymbol::Function(f) => f.is_real(),
            ToeplitzSymbol::Dist(v) => {
                v.len() == 1 && v[0].alpha == v[0].beta && v[0].base.is_real() && v[0].coeff.im == 0.0
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ToeplitzSymbol::Function(f) => f.to_string(),
            ToeplitzSymbol::Dist(v) => format!("{} distributional term(s)", v.len()),
        }
    }

    /// Rule adequate for the symbol against elements of seed index `< n` and
    /// creation power `p`.
    pub fn default_quadrature(&self, kind: SpaceKind, n: usize, p: u32) -> Result<Quadrature> {
        let base = match self {
            ToeplitzSymbol::Function(f) => Some(f.clone()),
            ToeplitzSymbol::Dist(v) => v.iter().find_map(|d| match &d.base {
                MeasureData::Density(f) => Some(f.clone()),
                MeasureData::Atoms(_) => None,
            }),
        };
        let extra = match self {
            ToeplitzSymbol::Dist(v) => v.iter().map(|d| d.alpha + d.beta + d.multiplier.0.keys().map(|m| m.0.iter().sum::<u32>()).max().unwrap_or(0)).max().unwrap_or(0),
            ToeplitzSymbol::Function(_) => 0,
        };
        match base {
            Some(f) if f.support().is_some() => quadrature_for(kind, &f, n + extra as usize, p),
            _ => geometry_for(kind).auto_quadrature(2 * n + 8 + extra as usize, p),
        }
    }

    /// Largest absolute value of the symbol data, for relative zero tests.
    fn scale(&self, q: &Quadrature) -> f64 {
        match self {
            ToeplitzSymbol::Function(f) => q.nodes.iter().map(|z| f.eval(*z).norm()).fold(0.0, f64::max),
            ToeplitzSymbol::Dist(v) => v
                .iter()
                .map(|d| {
                    let base = match &d.base {
                        MeasureData::Atoms(a) => a.iter().map(|x| x.weight.norm()).sum(),
                        MeasureData::Density(f) => q.nodes.iter().map(|z| f.eval(*z).norm()).fold(0.0, f64::max),
                    };
                    d.coeff.norm() * base
                })
                .sum(),
        }
    }
}

impl From<Reduced> for ToeplitzSymbol {
    fn from(r: Reduced) -> Self {
        match r {
            Reduced::Function(f) => ToeplitzSymbol::Function(f),
            Reduced::Measure(v) => ToeplitzSymbol::Dist(v),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ToeplitzMatrix {
    pub space: SpaceSpec,
    pub symbol: String,
    pub n: usize,
    pub entries: DenseMatrix,
    /// `⟨b_l, b_k⟩` when the frame is not orthonormal (disk, order ≥ 2).
    pub gram: Option<DenseMatrix>,
    pub quad: QuadMeta,
    pub real_symbol: bool,
    pub symbol_scale: f64,
}

/// Form matrix `(k, l) -> ⟨F b_l, b_k⟩` over sampled basis values.
fn function_matrix(f: &SymbolExpr, basis: &[BasisFunction], q: &Quadrature) -> Result<DenseMatrix> {
    let vals = sample(basis, q)?;
    let w: Vec<Complex64> = q.nodes.iter().zip(&q.weights).map(|(z, w)| f.eval(*z) * *w).collect();
    let n = basis.len();
    let mut m = DenseMatrix::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            m[(k, l)] = vals[l]
                .iter()
                .zip(&vals[k])
                .zip(&w)
                .fold(Complex64::new(0.0, 0.0), |acc, ((a, b), w)| acc + a * b.conj() * w);
        }
    }
    Ok(m)
}

fn dist_matrix(terms: &[DistSymbol], basis: &[BasisFunction], q: &Quadrature) -> Result<DenseMatrix> {
    let n = basis.len();
    let mut m = DenseMatrix::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in terms {
                acc += symbol_form(t, &basis[l], &basis[k], q)?;
            }
            m[(k, l)] = acc;
        }
    }
    Ok(m)
}

/// Toeplitz matrix of `s` on the first `n` elements of the basis of `space`.
pub fn assemble(space: SpaceSpec, s: &ToeplitzSymbol, n: usize, q: Option<&Quadrature>) -> Result<ToeplitzMatrix> {
    if n == 0 {
        return Err(invalid("N", "must be >= 1"));
    }
    let basis = true_poly_basis(space, n)?;
    let p = space.order - 1;
    let owned;
    let q = match q {
        Some(q) => q,
        None => {
            owned = s.default_quadrature(space.kind, n, p)?;
            &owned
        }
    };
    let entries = match s {
        ToeplitzSymbol::Function(f) => function_matrix(f, &basis, q)?,
        ToeplitzSymbol::Dist(terms) => dist_matrix(terms, &basis, q)?,
    };
    if let Some(i) = entries.entries.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(crate::Error::NonFinite {
            index: i,
            node: "matrix entry".into(),
            value: entries.entries[i].to_string(),
        });
    }
    let gram = if space.kind == SpaceKind::Disk && (space.order > 1 || !space.true_space) {
        let gq = geometry_for(space.kind).auto_quadrature(n, p)?;
        Some(function_matrix(&SymbolExpr::constant(1.0), &basis, &gq)?)
    } else {
        None
    };
    Ok(ToeplitzMatrix {
        space,
        symbol: s.describe(),
        n,
        entries,
        gram,
        quad: q.meta.clone(),
        real_symbol: s.is_real(),
        symbol_scale: s.scale(q),
    })
}

impl ToeplitzMatrix {
    /// Matrix in an orthonormal frame of the same span.
    pub fn orthonormal(&self) -> Result<DenseMatrix> {
        match &self.gram {
            Some(g) => crate::numerics::orthonormal_frame(&self.entries, g),
            None => Ok(self.entries.clone()),
        }
    }

    /// Operator norm of the truncation.
    pub fn norm(&self) -> Result<f64> {
        crate::numerics::spectral_norm(&self.orthonormal()?)
    }
}

#[cfg(test)]
mod tests;
