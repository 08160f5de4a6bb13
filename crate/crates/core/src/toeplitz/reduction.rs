//! Checks of the reduction identities `⟨F C f, C g⟩ = ⟨(E F) f, g⟩`.

use num_complex::Complex64;
use serde::Serialize;

use super::{assemble, ToeplitzSymbol};
use crate::numerics::{DenseMatrix, Quadrature};
use crate::spaces::SpaceSpec;
use crate::symbols::{reduce_symbol, Symbol};
use crate::symcalc::reducer::derive_for_power;
use crate::{Result, SpaceKind};

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub kind: SpaceKind,
    /// Creation power `j`: the left side lives on the true order `j + 1`.
    pub power: u32,
    pub n: usize,
    pub reducer: String,
    pub lhs: DenseMatrix,
    pub rhs: DenseMatrix,
    /// Least-squares factor `s` minimizing `‖lhs - s·rhs‖`.
    pub scale: Complex64,
    /// Largest deviation of `lhs/rhs` from `scale` over the entries with
    /// `|rhs| ≥ 1e-3 max|rhs|`.
    pub scale_spread: f64,
    pub raw_max_abs_diff: f64,
    pub max_abs_diff: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn least_squares_scale(lhs: &DenseMatrix, rhs: &DenseMatrix) -> Complex64 {
    let num: Complex64 = rhs.entries.iter().zip(&lhs.entries).map(|(r, l)| r.conj() * l).sum();
    let den: f64 = rhs.entries.iter().map(|r| r.norm_sqr()).sum();
    if den == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        num / den
    }
}

fn spread(lhs: &DenseMatrix, rhs: &DenseMatrix, s: Complex64) -> f64 {
    let cut = 1e-3 * rhs.max_abs();
    rhs.entries
        .iter()
        .zip(&lhs.entries)
        .filter(|(r, _)| r.norm() >= cut && r.norm() > 0.0)
        .map(|(r, l)| (l / r - s).norm())
        .fold(0.0, f64::max)
}

/// Compare the true order-`power + 1` form with the reduced symbol's form on
/// the analytic space, both on the first `n` elements.
pub fn check_reduction(kind: SpaceKind, power: u32, s: &Symbol, n: usize, tol: f64) -> Result<ReductionReport> {
    check_reduction_with(kind, power, s, n, tol, None)
}

pub fn check_reduction_with(
    kind: SpaceKind,
    power: u32,
    s: &Symbol,
    n: usize,
    tol: f64,
    q: Option<&Quadrature>,
) -> Result<ReductionReport> {
    let r = derive_for_power(kind, power);
    let lhs_symbol = ToeplitzSymbol::from_symbol(kind, s);
    let owned;
    let q = match q {
        Some(q) => q,
        None => {
            let reduced: ToeplitzSymbol = reduce_symbol(&r, s)?.into();
            // one rule for both sides, sized for the harder one
            owned = match (&lhs_symbol, &reduced) {
                (_, ToeplitzSymbol::Dist(_)) => reduced.default_quadrature(kind, n, power + 1)?,
                _ => lhs_symbol.default_quadrature(kind, n, power + 1)?,
            };
            &owned
        }
    };
    let lhs = assemble(SpaceSpec::true_poly(kind, power + 1), &lhs_symbol, n, Some(q))?.entries;
    let reduced: ToeplitzSymbol = reduce_symbol(&r, s)?.into();
    let rhs = assemble(SpaceSpec::true_poly(kind, 1), &reduced, n, Some(q))?.entries;
    let scale = least_squares_scale(&lhs, &rhs);
    let raw = lhs.sub(&rhs).max_abs();
    let diff = lhs.sub(&rhs.scale(scale)).max_abs();
    let tolerance = tol * (1.0 + lhs.max_abs().max(rhs.max_abs()));
    Ok(ReductionReport {
        kind,
        power,
        n,
        reducer: r.pretty(),
        scale_spread: spread(&lhs, &rhs, scale),
        scale,
        raw_max_abs_diff: raw,
        max_abs_diff: diff,
        tolerance,
        pass: diff <= tolerance,
        lhs,
        rhs,
    })
}
