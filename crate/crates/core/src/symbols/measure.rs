//! Measures, distributional derivatives of measures, and the sesquilinear
//! forms they define on basis functions.

use num_complex::Complex64;

use super::expr::SymbolExpr;
use crate::error::invalid;
use crate::numerics::{QuadDomain, Quadrature};
use crate::spaces::{geometry_for, BasisFunction};
use crate::symcalc::{Coeff, MultPoly};
use crate::{Error, Result, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Atom {
    pub point: Complex64,
    pub weight: Complex64,
}

/// A measure given by atoms or by a density against `dA`.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureData {
    Atoms(Vec<Atom>),
    Density(SymbolExpr),
}

impl MeasureData {
    pub fn unit_atom(point: Complex64) -> Self {
        MeasureData::Atoms(vec![Atom {
            point,
            weight: Complex64::new(1.0, 0.0),
        }])
    }

    pub fn lebesgue() -> Self {
        MeasureData::Density(SymbolExpr::constant(1.0))
    }

    pub fn validate(&self, kind: SpaceKind) -> Result<()> {
        if let MeasureData::Atoms(atoms) = self {
            let g = geometry_for(kind);
            for a in atoms {
                if !g.contains(a.point) {
                    return Err(Error::OutsideDomain {
                        kind,
                        point: a.point.to_string(),
                    });
                }
                if !(a.weight.re.is_finite() && a.weight.im.is_finite()) {
                    return Err(invalid("atom weight", a.weight.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn is_real(&self) -> bool {
        match self {
            MeasureData::Atoms(a) => a.iter().all(|x| x.weight.im == 0.0),
            MeasureData::Density(f) => f.is_real(),
        }
    }

    pub fn scaled(&self, t: f64) -> Self {
        match self {
            MeasureData::Atoms(a) => MeasureData::Atoms(
                a.iter()
                    .map(|x| Atom {
                        point: x.point,
                        weight: x.weight * t,
                    })
                    .collect(),
            ),
            MeasureData::Density(f) => MeasureData::Density(super::expr::product(vec![SymbolExpr::constant(t), f.clone()])),
        }
    }
}

/// The symbol `c · m · ∂^α ∂̄^β ν`, or `c · m · ω ∂̃^α ∂̃̄^β ν` with the
/// coderivative `∂̃ = ω^{-1} ∂ ω` when `coderivative` is set (plane only).
#[derive(Clone, Debug, PartialEq)]
pub struct DistSymbol {
    pub base: MeasureData,
    pub alpha: u32,
    pub beta: u32,
    pub kind: SpaceKind,
    pub coderivative: bool,
    pub coeff: Complex64,
    pub multiplier: MultPoly,
}

impl DistSymbol {
    pub fn new(kind: SpaceKind, base: MeasureData, alpha: u32, beta: u32) -> Self {
        Self {
            base,
            alpha,
            beta,
            kind,
            coderivative: false,
            coeff: Complex64::new(1.0, 0.0),
            multiplier: MultPoly::constant(Coeff::one()),
        }
    }

    pub fn with_coderivative(mut self) -> Result<Self> {
        if self.kind != SpaceKind::FockPlane {
            return Err(Error::Unsupported(self.kind, "coderivative symbols"));
        }
        self.coderivative = true;
        Ok(self)
    }

    fn check(&self, q: Option<&Quadrature>) -> Result<()> {
        if self.coderivative && self.kind != SpaceKind::FockPlane {
            return Err(Error::Unsupported(self.kind, "coderivative symbols"));
        }
        self.base.validate(self.kind)?;
        if let Some(q) = q {
            let ok = matches!(
                (self.kind, q.meta.domain),
                (SpaceKind::Disk, QuadDomain::Disk)
                    | (SpaceKind::HalfPlane, QuadDomain::HalfPlane)
                    | (SpaceKind::FockPlane, QuadDomain::FockPlane)
                    | (_, QuadDomain::Ball { .. })
            );
            if !ok {
                return Err(invalid("quadrature", format!("{:?} rule for a {:?} symbol", q.meta.domain, self.kind)));
            }
        }
        Ok(())
    }
}

/// `∫ h dν` against the space measure: densities use the rule `q` (whose
/// weights already carry the measure), atoms carry the measure weight
/// explicitly.
fn integrate_against(
    kind: SpaceKind,
    base: &MeasureData,
    q: &Quadrature,
    h: impl Fn(Complex64) -> Complex64,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    match base {
        MeasureData::Atoms(atoms) => {
            let g = geometry_for(kind);
            for a in atoms {
                acc += a.weight * g.density(a.point) * h(a.point);
            }
        }
        MeasureData::Density(f) => {
            for (i, (z, w)) in q.nodes.iter().zip(&q.weights).enumerate() {
                let fz = f.eval(*z);
                if fz.norm() == 0.0 {
                    continue;
                }
                let v = fz * h(*z);
                if !(v.re.is_finite() && v.im.is_finite()) {
                    return Err(Error::NonFinite {
                        index: i,
                        node: z.to_string(),
                        value: v.to_string(),
                    });
                }
                acc += v * *w;
            }
        }
    }
    if !(acc.re.is_finite() && acc.im.is_finite()) {
        return Err(Error::NonFinite {
            index: 0,
            node: "atoms".into(),
            value: acc.to_string(),
        });
    }
    Ok(acc)
}

/// `c ∫ m ∂^α u · conj(∂^β v) dν`, against `ω dν / π` on the plane.
pub fn sesq_form(s: &DistSymbol, u: &BasisFunction, v: &BasisFunction, q: &Quadrature) -> Result<Complex64> {
    s.check(Some(q))?;
    if let MeasureData::Density(SymbolExpr::Indicator { .. }) = &s.base {
        if s.alpha + s.beta > 0 {
            return Err(invalid("alpha/beta", "indicator densities admit only alpha = beta = 0"));
        }
    }
    let du = u.derivative(s.alpha, 0);
    let dv = v.derivative(s.beta, 0);
    let m = BasisFunction::from_mult_poly(u.kind, &s.multiplier);
    let val = integrate_against(s.kind, &s.base, q, |z| m.eval(z) * du.eval(z) * dv.eval(z).conj())?;
    Ok(s.coeff * val)
}

fn weighted_d(f: &BasisFunction, plane: bool) -> BasisFunction {
    if plane {
        f.d().add(&f.mul_zbar().scaled_exact(&Coeff::int(-1)))
    } else {
        f.d()
    }
}

fn weighted_dbar(f: &BasisFunction, plane: bool) -> BasisFunction {
    if plane {
        f.dbar().add(&f.mul_z().scaled_exact(&Coeff::int(-1)))
    } else {
        f.dbar()
    }
}

/// The Toeplitz form `⟨G u, v⟩` of the distributional symbol `G = s`: the
/// derivatives are thrown onto `m u v̄` (and onto the Gaussian weight on the
/// plane, unless the symbol is a coderivative), so
/// `c (-1)^{α+β} ∫ D^α D̄^β (m u v̄) dν`.
pub fn symbol_form(s: &DistSymbol, u: &BasisFunction, v: &BasisFunction, q: &Quadrature) -> Result<Complex64> {
    s.check(Some(q))?;
    let plane = s.kind == SpaceKind::FockPlane && !s.coderivative;
    let mut h = BasisFunction::from_mult_poly(u.kind, &s.multiplier).mul(u).mul(&v.conj());
    for _ in 0..s.alpha {
        h = weighted_d(&h, plane);
    }
    for _ in 0..s.beta {
        h = weighted_dbar(&h, plane);
    }
    let val = integrate_against(s.kind, &s.base, q, |z| h.eval(z))?;
    let sign = if (s.alpha + s.beta).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(s.coeff * sign * val)
}

/// `⟨F u, v⟩` for a function symbol against the measure carried by `q`.
pub fn function_form(f: &SymbolExpr, u: &BasisFunction, v: &BasisFunction, q: &Quadrature) -> Result<Complex64> {
    integrate_against(u.kind, &MeasureData::Density(f.clone()), q, |z| u.eval(z) * v.eval(z).conj())
}
