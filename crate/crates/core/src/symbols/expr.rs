//! Closed-form symbols as expression trees in `z`, `z̄`, `y`, `|z|²`.

use std::fmt;

use num_complex::Complex64;

use super::bessel::bessel_g;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolExpr {
    Const(Complex64),
    Z,
    Zbar,
    Y,
    AbsSq,
    /// `|z - c|²`.
    DistSq(Complex64),
    Sum(Vec<SymbolExpr>),
    Product(Vec<SymbolExpr>),
    Pow(Box<SymbolExpr>, i32),
    Exp(Box<SymbolExpr>),
    /// `G_n(|z|²)`; `n = 0` is `J_0(λ|z|)`.
    BesselG { n: u32, lambda: f64 },
    /// `inner` on the open disk `B(center, radius)`, zero outside. Only used
    /// for functions whose derivatives all vanish at the circle.
    Support {
        center: Complex64,
        radius: f64,
        inner: Box<SymbolExpr>,
    },
    /// Characteristic function of `B(center, radius)`.
    Indicator { center: Complex64, radius: f64 },
}

use SymbolExpr::*;

fn zero() -> SymbolExpr {
    Const(Complex64::new(0.0, 0.0))
}

fn real(c: f64) -> SymbolExpr {
    Const(Complex64::new(c, 0.0))
}

impl SymbolExpr {
    pub fn constant(c: f64) -> Self {
        real(c)
    }

    /// `Σ c_k |z|^{2k}`.
    pub fn radial_poly(coeffs: &[f64]) -> Self {
        sum(coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| product(vec![real(*c), pow(AbsSq, k as i32)]))
            .collect())
    }

    /// `exp(-a|z|²)`.
    pub fn gauss(a: f64) -> Self {
        Exp(Box::new(product(vec![real(-a), AbsSq])))
    }

    /// `exp(-d / (r² - d))` with `d = |z - c|²` on `B(c, r)`; equals 1 at the
    /// centre and is flat to all orders at the circle.
    pub fn bump(center: Complex64, radius: f64) -> Self {
        let d = DistSq(center);
        let gap = sum(vec![real(radius * radius), product(vec![real(-1.0), d.clone()])]);
        let inner = Exp(Box::new(product(vec![real(-1.0), d, pow(gap, -1)])));
        Support {
            center,
            radius,
            inner: Box::new(inner),
        }
    }

    pub fn bessel_j0(lambda: f64) -> Self {
        BesselG { n: 0, lambda }
    }

    pub fn indicator(center: Complex64, radius: f64) -> Self {
        Indicator { center, radius }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Const(c) if c.norm() == 0.0)
    }

    pub fn is_differentiable(&self) -> bool {
        match self {
            Indicator { .. } => false,
            Sum(v) | Product(v) => v.iter().all(Self::is_differentiable),
            Pow(e, _) | Exp(e) => e.is_differentiable(),
            Support { inner, .. } => inner.is_differentiable(),
            _ => true,
        }
    }

    /// Conservative test for real values.
    pub fn is_real(&self) -> bool {
        match self {
            Const(c) => c.im == 0.0,
            Z | Zbar => false,
            Y | AbsSq | DistSq(_) | BesselG { .. } | Indicator { .. } => true,
            Sum(v) | Product(v) => v.iter().all(Self::is_real),
            Pow(e, _) | Exp(e) => e.is_real(),
            Support { inner, .. } => inner.is_real(),
        }
    }

    /// Ball outside which the expression vanishes, if any.
    pub fn support(&self) -> Option<(Complex64, f64)> {
        match self {
            Support { center, radius, .. } | Indicator { center, radius } => Some((*center, *radius)),
            Product(v) => v.iter().find_map(Self::support),
            Sum(v) if !v.is_empty() => {
                let s: Vec<_> = v.iter().map(Self::support).collect();
                let first = s[0]?;
                s.iter().all(|x| *x == Some(first)).then_some(first)
            }
            _ => None,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Const(c) => *c,
            Z => z,
            Zbar => z.conj(),
            Y => Complex64::new(z.im, 0.0),
            AbsSq => Complex64::new(z.norm_sqr(), 0.0),
            DistSq(c) => Complex64::new((z - c).norm_sqr(), 0.0),
            Sum(v) => v.iter().map(|e| e.eval(z)).sum(),
            Product(v) => v.iter().map(|e| e.eval(z)).product(),
            Pow(e, n) => e.eval(z).powi(*n),
            Exp(e) => e.eval(z).exp(),
            BesselG { n, lambda } => Complex64::new(bessel_g(*n, z.norm_sqr(), *lambda), 0.0),
            Support { center, radius, inner } => {
                if (z - center).norm() < *radius {
                    let v = inner.eval(z);
                    if v.re.is_finite() && v.im.is_finite() {
                        v
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }
            Indicator { center, radius } => {
                Complex64::new(f64::from(u8::from((z - center).norm() < *radius)), 0.0)
            }
        }
    }

    /// `∂` (`holomorphic = true`) or `∂̄`.
    fn derive(&self, holomorphic: bool) -> Result<SymbolExpr> {
        Ok(match self {
            Const(_) => zero(),
            Z => real(f64::from(u8::from(holomorphic))),
            Zbar => real(f64::from(u8::from(!holomorphic))),
            Y => Const(Complex64::new(0.0, if holomorphic { -0.5 } else { 0.5 })),
            AbsSq => {
                if holomorphic {
                    Zbar
                } else {
                    Z
                }
            }
            DistSq(c) => {
                if holomorphic {
                    sum(vec![Zbar, Const(-c.conj())])
                } else {
                    sum(vec![Z, Const(-c)])
                }
            }
            Sum(v) => sum(v.iter().map(|e| e.derive(holomorphic)).collect::<Result<_>>()?),
            Product(v) => {
                let mut terms = Vec::new();
                for i in 0..v.len() {
                    let di = v[i].derive(holomorphic)?;
                    if di.is_zero() {
                        continue;
                    }
                    let mut factors = v.clone();
                    factors[i] = di;
                    terms.push(product(factors));
                }
                sum(terms)
            }
            Pow(e, n) => product(vec![real(f64::from(*n)), pow((**e).clone(), n - 1), e.derive(holomorphic)?]),
            Exp(e) => product(vec![self.clone(), e.derive(holomorphic)?]),
            BesselG { n, lambda } => product(vec![
                real(-lambda * lambda / 4.0),
                if holomorphic { Zbar } else { Z },
                BesselG { n: n + 1, lambda: *lambda },
            ]),
            Support { center, radius, inner } => {
                let d = inner.derive(holomorphic)?;
                if d.is_zero() {
                    zero()
                } else {
                    Support {
                        center: *center,
                        radius: *radius,
                        inner: Box::new(d),
                    }
                }
            }
            Indicator { .. } => return Err(Error::NonDifferentiable(self.to_string())),
        })
    }
}

/// `∂^a ∂̄^b F`.
pub fn differentiate(f: &SymbolExpr, a: u32, b: u32) -> Result<SymbolExpr> {
    let mut out = f.clone();
    for _ in 0..a {
        out = out.derive(true)?;
    }
    for _ in 0..b {
        out = out.derive(false)?;
    }
    Ok(out)
}

pub fn sum(items: Vec<SymbolExpr>) -> SymbolExpr {
    let mut c = Complex64::new(0.0, 0.0);
    let mut rest = Vec::new();
    for e in items {
        match e {
            Const(v) => c += v,
            Sum(inner) => rest.extend(inner),
            other => rest.push(other),
        }
    }
    if c.norm() != 0.0 {
        rest.push(Const(c));
    }
    match rest.len() {
        0 => zero(),
        1 => rest.pop().unwrap_or_else(zero),
        _ => Sum(rest),
    }
}

pub fn product(items: Vec<SymbolExpr>) -> SymbolExpr {
    let mut c = Complex64::new(1.0, 0.0);
    let mut rest = Vec::new();
    for e in items {
        match e {
            Const(v) => c *= v,
            Product(inner) => {
                for f in inner {
                    match f {
                        Const(v) => c *= v,
                        g => rest.push(g),
                    }
                }
            }
            other => rest.push(other),
        }
    }
    if c.norm() == 0.0 {
        return zero();
    }
    if rest.is_empty() {
        return Const(c);
    }
    if c != Complex64::new(1.0, 0.0) {
        rest.insert(0, Const(c));
    }
    if rest.len() == 1 {
        rest.pop().unwrap_or_else(zero)
    } else {
        Product(rest)
    }
}

pub fn pow(e: SymbolExpr, n: i32) -> SymbolExpr {
    match (n, e) {
        (0, _) => real(1.0),
        (1, e) => e,
        (n, Const(c)) => Const(c.powi(n)),
        (n, e) => Pow(Box::new(e), n),
    }
}

impl fmt::Display for SymbolExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, v: &[SymbolExpr], sep: &str| -> fmt::Result {
            write!(f, "(")?;
            for (i, e) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")
        };
        match self {
            Const(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Const(c) => write!(f, "({}{:+}i)", c.re, c.im),
            Z => write!(f, "z"),
            Zbar => write!(f, "zb"),
            Y => write!(f, "y"),
            AbsSq => write!(f, "|z|^2"),
            DistSq(c) => write!(f, "|z-({}{:+}i)|^2", c.re, c.im),
            Sum(v) => join(f, v, " + "),
            Product(v) => join(f, v, "*"),
            Pow(e, n) => write!(f, "{e}^{n}"),
            Exp(e) => write!(f, "exp{e}"),
            BesselG { n: 0, lambda } => write!(f, "J0({lambda}|z|)"),
            BesselG { n, lambda } => write!(f, "G{n}[{lambda}](|z|^2)"),
            Support { center, radius, inner } => {
                write!(f, "[{inner} on B({},{},{radius})]", center.re, center.im)
            }
            Indicator { center, radius } => write!(f, "1_B({},{},{radius})", center.re, center.im),
        }
    }
}
