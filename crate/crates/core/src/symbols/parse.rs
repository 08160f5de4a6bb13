//! The symbol mini-grammar used on the command line and in configs.
//!
//! ```text
//! const:<c>               constant function c
//! poly:<c0>,<c1>,...      Σ c_k |z|^{2k}
//! gauss:<a>               exp(-a|z|²)
//! bump:<x>,<y>,<r>        smooth bump on B(x+iy, r), value 1 at the centre
//! indicator:<x>,<y>,<r>   characteristic function of B(x+iy, r)
//! besselj0:<lambda>       J0(λ|z|)
//! atom:<x>,<y>,<w>;...    Σ w δ_{x+iy}
//! ```

use num_complex::Complex64;

use super::expr::SymbolExpr;
use super::measure::{Atom, MeasureData};
use crate::{Error, Result};

/// A parsed symbol: a function of `z`, or a measure given by atoms.
#[derive(Clone, Debug, PartialEq)]
pub enum Symbol {
    Function(SymbolExpr),
    Measure(MeasureData),
}

impl Symbol {
    /// The symbol as a measure `F dA` (or the atoms themselves).
    pub fn as_measure(&self) -> MeasureData {
        match self {
            Symbol::Function(f) => MeasureData::Density(f.clone()),
            Symbol::Measure(m) => m.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Symbol::Function(f) => f.is_real(),
            Symbol::Measure(m) => m.is_real(),
        }
    }
}

fn err(spec: &str, reason: impl Into<String>) -> Error {
    Error::SymbolParse {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn numbers(spec: &str, body: &str, count: Option<usize>) -> Result<Vec<f64>> {
    let vals = body
        .split(',')
        .map(|t| {
            let t = t.trim();
            let v: f64 = t.parse().map_err(|_| err(spec, format!("`{t}` is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(err(spec, format!("`{t}` is not finite")))
            }
        })
        .collect::<Result<Vec<f64>>>()?;
    if let Some(n) = count {
        if vals.len() != n {
            return Err(err(spec, format!("expected {n} numbers, got {}", vals.len())));
        }
    }
    Ok(vals)
}

fn positive(spec: &str, r: f64) -> Result<f64> {
    if r > 0.0 {
        Ok(r)
    } else {
        Err(err(spec, "radius must be positive"))
    }
}

pub fn parse_symbol(spec: &str) -> Result<Symbol> {
    let (head, body) = spec.split_once(':').ok_or_else(|| err(spec, "expected `<kind>:<arguments>`"))?;
    let f = |e| Ok(Symbol::Function(e));
    match head {
        "const" => f(SymbolExpr::constant(numbers(spec, body, Some(1))?[0])),
        "poly" => f(SymbolExpr::radial_poly(&numbers(spec, body, None)?)),
        "gauss" => f(SymbolExpr::gauss(numbers(spec, body, Some(1))?[0])),
        "besselj0" => f(SymbolExpr::bessel_j0(numbers(spec, body, Some(1))?[0])),
        "bump" | "indicator" => {
            let v = numbers(spec, body, Some(3))?;
            let c = Complex64::new(v[0], v[1]);
            let r = positive(spec, v[2])?;
            f(if head == "bump" {
                SymbolExpr::bump(c, r)
            } else {
                SymbolExpr::indicator(c, r)
            })
        }
        "atom" => {
            let atoms = body
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    let v = numbers(spec, t, Some(3))?;
                    Ok(Atom {
                        point: Complex64::new(v[0], v[1]),
                        weight: Complex64::new(v[2], 0.0),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if atoms.is_empty() {
                return Err(err(spec, "no atoms given"));
            }
            Ok(Symbol::Measure(MeasureData::Atoms(atoms)))
        }
        other => Err(err(spec, format!("unknown symbol kind `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar() {
        let z = Complex64::new(0.3, 0.4);
        let Symbol::Function(p) = parse_symbol("poly:1,0,2").unwrap() else { panic!() };
        assert!((p.eval(z) - (1.0 + 2.0 * 0.0625)).norm() < 1e-15);
        let Symbol::Function(g) = parse_symbol("gauss:1").unwrap() else { panic!() };
        assert!((g.eval(z) - (-0.25f64).exp()).norm() < 1e-15);
        assert!(matches!(parse_symbol("bump:0,1,0.5"), Ok(Symbol::Function(SymbolExpr::Support { .. }))));
        assert!(matches!(parse_symbol("indicator:0,0,0.5"), Ok(Symbol::Function(SymbolExpr::Indicator { .. }))));
        let Symbol::Measure(MeasureData::Atoms(a)) = parse_symbol("atom:0,0,1;0.5,0.1,2").unwrap() else { panic!() };
        assert_eq!(a.len(), 2);
        assert_eq!(a[1].weight, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in ["", "const", "Const:1", "gauss:x", "bump:0,0", "bump:0,0,-1", "atom:", "const:nan", "ring:1"] {
            assert!(matches!(parse_symbol(bad), Err(Error::SymbolParse { .. })), "{bad}");
        }
    }
}
