//! Normal ordering in the algebra generated by `∂`, `∂̄`, the multipliers
//! `z`, `z̄`, `y = Im z`, `w = 1 - |z|²`, and a single symbol slot
//! `∂^a ∂̄^b F`.
//!
//! The normal form of a term is `c · m(z, z̄, y, w) · ∂^a∂̄^b F · ∂^p ∂̄^q`:
//! multipliers and the slot on the left, derivatives on the right acting on
//! whatever follows. Multipliers are kept as free commuting symbols; the
//! only rewriting is the Leibniz rule.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::{binomial, Coeff};

/// Multiplier generators, in monomial index order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mult {
    Z,
    Zbar,
    Y,
    W,
}

impl Mult {
    pub const ALL: [Mult; 4] = [Mult::Z, Mult::Zbar, Mult::Y, Mult::W];

    fn index(self) -> usize {
        self as usize
    }

    pub fn conj(self) -> Mult {
        match self {
            Mult::Z => Mult::Zbar,
            Mult::Zbar => Mult::Z,
            other => other,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Mult::Z => "z",
            Mult::Zbar => "zb",
            Mult::Y => "y",
            Mult::W => "w",
        }
    }

    /// `∂x` (holomorphic) or `∂̄x` as a multiplier polynomial.
    fn derivative(self, holomorphic: bool) -> MultPoly {
        let half_i = &Coeff::i() * &Coeff::frac(1, 2);
        match (self, holomorphic) {
            (Mult::Z, true) | (Mult::Zbar, false) => MultPoly::constant(Coeff::one()),
            (Mult::Z, false) | (Mult::Zbar, true) => MultPoly::zero(),
            (Mult::Y, true) => MultPoly::constant(-&half_i),
            (Mult::Y, false) => MultPoly::constant(half_i),
            (Mult::W, true) => MultPoly::single(Mult::Zbar, Coeff::int(-1)),
            (Mult::W, false) => MultPoly::single(Mult::Z, Coeff::int(-1)),
        }
    }
}

/// Exponents of `(z, z̄, y, w)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(pub [u32; 4]);

impl Mono {
    pub fn one() -> Self {
        Self([0; 4])
    }

    pub fn of(g: Mult) -> Self {
        let mut e = [0; 4];
        e[g.index()] = 1;
        Self(e)
    }

    pub fn exp(&self, g: Mult) -> u32 {
        self.0[g.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Mono(e)
    }

    pub fn conj(&self) -> Mono {
        let [z, zb, y, w] = self.0;
        Mono([zb, z, y, w])
    }

    pub fn degree(&self, g: Mult) -> i64 {
        i64::from(self.exp(g))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for g in Mult::ALL {
            let e = self.exp(g);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", g.symbol())?;
            } else {
                write!(f, "{}^{}", g.symbol(), e)?;
            }
        }
        Ok(())
    }
}

/// Commutative polynomial in the multipliers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultPoly(pub BTreeMap<Mono, Coeff>);

impl MultPoly {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::zero().with(Mono::one(), c)
    }

    pub fn single(g: Mult, c: Coeff) -> Self {
        Self::zero().with(Mono::of(g), c)
    }

    fn with(mut self, m: Mono, c: Coeff) -> Self {
        self.add_term(m, &c);
        self
    }

    pub fn add_term(&mut self, m: Mono, c: &Coeff) {
        let entry = self.0.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul_mono(&self, m: &Mono, c: &Coeff) -> MultPoly {
        let mut out = MultPoly::zero();
        for (k, v) in &self.0 {
            out.add_term(k.mul(m), &(v * c));
        }
        out
    }

    /// Apply the derivation `∂` (or `∂̄`) to a monomial.
    pub fn derive_mono(m: &Mono, holomorphic: bool) -> MultPoly {
        let mut out = MultPoly::zero();
        for g in Mult::ALL {
            let e = m.exp(g);
            if e == 0 {
                continue;
            }
            let mut rest = *m;
            rest.0[g.index()] -= 1;
            let dg = g.derivative(holomorphic);
            for (k, v) in &dg.0 {
                out.add_term(rest.mul(k), &v.scale_int(i64::from(e)));
            }
        }
        out
    }

    pub fn derive(&self, holomorphic: bool) -> MultPoly {
        let mut out = MultPoly::zero();
        for (m, c) in &self.0 {
            for (k, v) in &Self::derive_mono(m, holomorphic).0 {
                out.add_term(*k, &(v * c));
            }
        }
        out
    }
}

/// A generator of operator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gen {
    D,
    Dbar,
    Mul(Mult),
    /// Multiplication by `∂^a ∂̄^b F`.
    Slot(u32, u32),
    Scalar(Coeff),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalKey {
    pub mono: Mono,
    pub slot: Option<(u32, u32)>,
    pub d: u32,
    pub dbar: u32,
}

impl NormalKey {
    fn identity() -> Self {
        Self {
            mono: Mono::one(),
            slot: None,
            d: 0,
            dbar: 0,
        }
    }

    /// The word this normal term stands for.
    fn word(&self) -> Vec<Gen> {
        let mut w = Vec::new();
        for g in Mult::ALL {
            for _ in 0..self.mono.exp(g) {
                w.push(Gen::Mul(g));
            }
        }
        if let Some((a, b)) = self.slot {
            w.push(Gen::Slot(a, b));
        }
        w.extend(std::iter::repeat_n(Gen::D, self.d as usize));
        w.extend(std::iter::repeat_n(Gen::Dbar, self.dbar as usize));
        w
    }
}

/// Normal-ordered noncommutative polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiffOpPoly {
    pub terms: BTreeMap<NormalKey, Coeff>,
}

impl DiffOpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Coeff::one())
    }

    pub fn scalar(c: Coeff) -> Self {
        let mut p = Self::zero();
        p.add(NormalKey::identity(), &c);
        p
    }

    pub fn generator(g: Gen) -> Self {
        Self::identity().right_mul_gen(&g)
    }

    pub fn from_word(word: &[Gen]) -> Self {
        word.iter().fold(Self::identity(), |p, g| p.right_mul_gen(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, key: NormalKey, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add(*k, c);
        }
        out
    }

    pub fn scaled(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add(*k, &(v * c));
        }
        out
    }

    fn right_mul_gen(&self, g: &Gen) -> Self {
        let mut out = Self::zero();
        for (key, c) in &self.terms {
            match g {
                Gen::Scalar(s) => out.add(*key, &(c * s)),
                Gen::D => out.add(NormalKey { d: key.d + 1, ..*key }, c),
                Gen::Dbar => out.add(NormalKey { dbar: key.dbar + 1, ..*key }, c),
                Gen::Mul(x) => {
                    // ∂^p ∂̄^q x = Σ C(p,k) C(q,l) (∂^k ∂̄^l x) ∂^{p-k} ∂̄^{q-l}
                    let mut dk = MultPoly::single(*x, Coeff::one());
                    for k in 0..=key.d {
                        let mut dkl = dk.clone();
                        for l in 0..=key.dbar {
                            let weight = Coeff::int(binomial(key.d, k) * binomial(key.dbar, l));
                            for (m, v) in &dkl.0 {
                                let nk = NormalKey {
                                    mono: key.mono.mul(m),
                                    slot: key.slot,
                                    d: key.d - k,
                                    dbar: key.dbar - l,
                                };
                                out.add(nk, &(&(c * v) * &weight));
                            }
                            dkl = dkl.derive(false);
                            if dkl.is_zero() {
                                break;
                            }
                        }
                        dk = dk.derive(true);
                        if dk.is_zero() {
                            break;
                        }
                    }
                }
                Gen::Slot(a, b) => {
                    assert!(key.slot.is_none(), "at most one symbol slot per word");
                    for k in 0..=key.d {
                        for l in 0..=key.dbar {
                            let weight = Coeff::int(binomial(key.d, k) * binomial(key.dbar, l));
                            let nk = NormalKey {
                                mono: key.mono,
                                slot: Some((a + k, b + l)),
                                d: key.d - k,
                                dbar: key.dbar - l,
                            };
                            out.add(nk, &(c * &weight));
                        }
                    }
                }
            }
        }
        out
    }

    /// Operator product `self ∘ other`, normal ordered.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (key, c) in &other.terms {
            let mut part = self.clone();
            for g in key.word() {
                part = part.right_mul_gen(&g);
            }
            out = out.plus(&part.scaled(c));
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    /// Result of applying the operator to the constant function 1: every
    /// term with a trailing derivative vanishes.
    pub fn applied_to_one(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            if k.d == 0 && k.dbar == 0 {
                out.add(*k, c);
            }
        }
        out
    }
}

/// Normal-order a word.
pub fn normal_order(word: &[Gen]) -> DiffOpPoly {
    DiffOpPoly::from_word(word)
}

impl fmt::Display for DiffOpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if !k.mono.is_one() {
                write!(f, "*{}", k.mono)?;
            }
            if let Some((a, b)) = k.slot {
                write!(f, "*F[{a},{b}]")?;
            }
            if k.d > 0 {
                write!(f, "*D^{}", k.d)?;
            }
            if k.dbar > 0 {
                write!(f, "*Db^{}", k.dbar)?;
            }
        }
        Ok(())
    }
}
