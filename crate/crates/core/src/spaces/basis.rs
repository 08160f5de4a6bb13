//! Basis functions as exact Laurent polynomials in `u = z - s` and `ū`,
//! times a real normalization. The shift `s` is 0 on the disk and the plane
//! and `-i` on the half-plane, so `u = z + i`, `ū = z̄ - i` there.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use twofloat::TwoFloat;

use crate::symcalc::{Coeff, Mult, MultPoly};
use crate::SpaceKind;

pub type Exponents = (i32, i32);

#[derive(Clone, Debug)]
pub struct BasisFunction {
    pub kind: SpaceKind,
    /// Index of the analytic seed.
    pub index: usize,
    /// Number of creation steps applied to the seed (true order − 1).
    pub power: u32,
    /// Complex-conjugated (anti-analytic) element.
    pub anti: bool,
    pub scale: f64,
    terms: BTreeMap<Exponents, Coeff>,
    numeric: Vec<(Exponents, Complex64)>,
    /// Double-double coefficients, kept on the half-plane where expanding
    /// `(z - i)^k` around `-i` cancels about `3^k` in the sum.
    wide: Vec<(Exponents, Complex<TwoFloat>)>,
    shift: Complex64,
    /// The analytic element this one was created from.
    seed: Option<Box<BasisFunction>>,
}

pub(crate) fn shift_of(kind: SpaceKind) -> Coeff {
    match kind {
        SpaceKind::HalfPlane => -&Coeff::i(),
        _ => Coeff::zero(),
    }
}

/// Nearest double-double to an exact rational.
fn wide(q: &BigRational) -> TwoFloat {
    let hi = q.to_f64().unwrap_or(f64::NAN);
    let rest = BigRational::from_float(hi).map(|h| q - h).unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)));
    TwoFloat::new_add(hi, rest.to_f64().unwrap_or(0.0))
}

/// `u^lo, ..., u^hi`, built outward from `u^0`.
fn powers(u: Complex<TwoFloat>, lo: i32, hi: i32) -> Vec<Complex<TwoFloat>> {
    let one = Complex::new(TwoFloat::from(1.0), TwoFloat::from(0.0));
    let lo = lo.min(0);
    let hi = hi.max(0);
    let mut out = vec![one; (hi - lo + 1) as usize];
    let zero = (-lo) as usize;
    for e in 1..=hi as usize {
        out[zero + e] = out[zero + e - 1] * u;
    }
    let inv = one / u;
    for e in 1..=zero {
        out[zero - e] = out[zero - e + 1] * inv;
    }
    out
}

fn add_to(map: &mut BTreeMap<Exponents, Coeff>, e: Exponents, c: &Coeff) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(e).or_default();
    *entry += c;
    if entry.is_zero() {
        map.remove(&e);
    }
}

impl BasisFunction {
    pub fn new(kind: SpaceKind, index: usize, terms: BTreeMap<Exponents, Coeff>, scale: f64) -> Self {
        let mut f = Self {
            kind,
            index,
            power: 0,
            anti: false,
            scale,
            terms: BTreeMap::new(),
            numeric: Vec::new(),
            wide: Vec::new(),
            shift: shift_of(kind).to_c64(),
            seed: None,
        };
        f.set_terms(terms);
        f
    }

    fn set_terms(&mut self, terms: BTreeMap<Exponents, Coeff>) {
        self.numeric = terms.iter().map(|(e, c)| (*e, c.to_c64() * self.scale)).collect();
        if self.kind == SpaceKind::HalfPlane {
            self.wide = terms.iter().map(|(e, c)| (*e, Complex::new(wide(c.re()), wide(c.im())))).collect();
        }
        self.terms = terms;
    }

    fn with_terms(&self, terms: BTreeMap<Exponents, Coeff>) -> Self {
        let mut f = self.clone();
        f.set_terms(terms);
        f
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Coeff> {
        &self.terms
    }

    pub fn seed(&self) -> Option<&BasisFunction> {
        self.seed.as_deref()
    }

    pub(crate) fn with_lineage(mut self, seed: &BasisFunction, power: u32) -> Self {
        let root = seed.seed.as_deref().unwrap_or(seed).clone();
        self.seed = Some(Box::new(root));
        self.power = power;
        self
    }

    pub fn rescaled(&self, scale: f64) -> Self {
        let mut f = self.clone();
        f.scale = scale;
        f.set_terms(self.terms.clone());
        f
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        if !self.wide.is_empty() {
            return self.eval_wide(z);
        }
        let u = z - self.shift;
        let ub = u.conj();
        self.numeric
            .iter()
            .map(|&((a, b), c)| c * u.powi(a) * ub.powi(b))
            .sum()
    }

    fn eval_wide(&self, z: Complex64) -> Complex64 {
        let (lo, hi) = self
            .wide
            .iter()
            .fold((0, 0), |(lo, hi), ((a, b), _)| (lo.min(*a).min(*b), hi.max(*a).max(*b)));
        let u = Complex::new(TwoFloat::from(z.re), TwoFloat::new_add(z.im, -self.shift.im) + (-self.shift.re));
        let up = powers(u, lo, hi);
        let lo = lo.min(0);
        let mut acc = Complex::new(TwoFloat::from(0.0), TwoFloat::from(0.0));
        for ((a, b), c) in &self.wide {
            acc += *c * up[(a - lo) as usize] * up[(b - lo) as usize].conj();
        }
        Complex64::new(f64::from(acc.re), f64::from(acc.im)) * self.scale
    }

    /// `∂f` (exact).
    pub fn d(&self) -> Self {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            add_to(&mut out, (a - 1, b), &c.scale_int(i64::from(a)));
        }
        self.with_terms(out)
    }

    /// `∂̄f` (exact).
    pub fn dbar(&self) -> Self {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            add_to(&mut out, (a, b - 1), &c.scale_int(i64::from(b)));
        }
        self.with_terms(out)
    }

    pub fn derivative(&self, p: u32, q: u32) -> Self {
        let mut f = self.clone();
        for _ in 0..p {
            f = f.d();
        }
        for _ in 0..q {
            f = f.dbar();
        }
        f
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind);
        let mut out = self.terms.clone();
        let ratio = Coeff::from_f64(other.scale / self.scale, 0.0);
        for (e, c) in &other.terms {
            add_to(&mut out, *e, &(c * &ratio));
        }
        self.with_terms(out)
    }

    pub fn scaled_exact(&self, s: &Coeff) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            add_to(&mut out, *e, &(c * s));
        }
        self.with_terms(out)
    }

    fn mul_u(&self, da: i32, db: i32, offset: &Coeff) -> Self {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            add_to(&mut out, (a + da, b + db), c);
            add_to(&mut out, (a, b), &(c * offset));
        }
        self.with_terms(out)
    }

    /// Multiplication by `z = u + s`.
    pub fn mul_z(&self) -> Self {
        self.mul_u(1, 0, &shift_of(self.kind))
    }

    /// Multiplication by `z̄ = ū + s̄`.
    pub fn mul_zbar(&self) -> Self {
        self.mul_u(0, 1, &shift_of(self.kind).conj())
    }

    /// Pointwise product (same geometry).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind);
        let mut out = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            for (&(p, q), d) in &other.terms {
                add_to(&mut out, (a + p, b + q), &(c * d));
            }
        }
        let mut f = self.with_terms(BTreeMap::new());
        f.scale = self.scale * other.scale;
        f.set_terms(out);
        f
    }

    /// The constant function `c` in the coordinates of `kind`.
    pub fn constant(kind: SpaceKind, c: Coeff) -> Self {
        BasisFunction::new(kind, 0, BTreeMap::from([((0, 0), c)]), 1.0)
    }

    /// Multiplier polynomial in `z, z̄, y, w` rewritten in the coordinates of
    /// `kind`, with `y = (z - z̄)/2i` and `w = 1 - z z̄`.
    pub fn from_mult_poly(kind: SpaceKind, p: &MultPoly) -> Self {
        let one = Self::constant(kind, Coeff::one());
        let z = one.mul_z();
        let zb = one.mul_zbar();
        let neg_half_i = &Coeff::i() * &Coeff::frac(-1, 2);
        let y = z.add(&zb.scaled_exact(&Coeff::int(-1))).scaled_exact(&neg_half_i);
        let w = one.add(&z.mul(&zb).scaled_exact(&Coeff::int(-1)));
        let mut out = Self::constant(kind, Coeff::zero());
        for (m, c) in &p.0 {
            let mut t = Self::constant(kind, c.clone());
            for (g, f) in [(Mult::Z, &z), (Mult::Zbar, &zb), (Mult::Y, &y), (Mult::W, &w)] {
                for _ in 0..m.exp(g) {
                    t = t.mul(f);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Complex conjugate: `(a, b, c) -> (b, a, c̄)`.
    pub fn conj(&self) -> Self {
        let mut out = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            add_to(&mut out, (b, a), &c.conj());
        }
        let mut f = self.with_terms(out);
        f.anti = !self.anti;
        f.seed = self.seed.as_ref().map(|s| Box::new(s.conj()));
        f
    }

    /// Exact test that `∂̄^j f = 0`.
    pub fn annihilated_by_dbar(&self, j: u32) -> bool {
        self.derivative(0, j).is_zero()
    }

    /// Exact test that `∂^j f = 0`.
    pub fn annihilated_by_d(&self, j: u32) -> bool {
        self.derivative(j, 0).is_zero()
    }

    /// Terms as text, `c*u^a*ub^b`, for CSV dumps.
    pub fn terms_string(&self) -> String {
        self.terms
            .iter()
            .map(|(&(a, b), c)| format!("{c}*u^{a}*ub^{b}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}
