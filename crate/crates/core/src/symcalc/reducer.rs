//! Derivation of reduction operators by pushing the creation operators
//! through the sesquilinear form `⟨F C f, C g⟩`.
//!
//! Each picture fixes the creation operator `C`, the adjoint of the
//! generators in its inner product, what `∂̄` does to the analytic seed, and
//! the transfer rule that moves a trailing `∂` off the seed and onto the
//! coefficient (integration by parts against an analytic test function).

use serde::Serialize;

use super::algebra::{DiffOpPoly, Gen, Mult, NormalKey};
use super::coeff::{factorial, Coeff};
use crate::error::invalid;
use crate::{Error, Result, SpaceKind};

pub trait Picture: Send + Sync {
    fn name(&self) -> &'static str;
    fn kind(&self) -> SpaceKind;
    /// Creation operator raised to `power`, including any exact prefactor.
    fn creation(&self, power: u32) -> DiffOpPoly;
    /// Scalar applied to the whole form (for normalizations with square roots).
    fn form_scale(&self, _power: u32) -> Coeff {
        Coeff::one()
    }
    fn adjoint_gen(&self, g: &Gen) -> DiffOpPoly;
    /// Multiplier replacing `∂̄` on the seed, or `None` when the seed is
    /// analytic and `∂̄` kills it.
    fn seed_dbar(&self) -> Option<DiffOpPoly>;
    /// `T` with `⟨G ∂ f, g⟩ = ⟨T(G) f, g⟩`.
    fn transfer(&self) -> DiffOpPoly;
}

fn gen(g: Gen) -> DiffOpPoly {
    DiffOpPoly::generator(g)
}

fn mult(m: Mult, c: Coeff) -> DiffOpPoly {
    gen(Gen::Mul(m)).scaled(&c)
}

/// Adjoints in `L²(dA)`: `∂* = -∂̄`, multipliers conjugate.
fn lebesgue_adjoint(g: &Gen) -> DiffOpPoly {
    match g {
        Gen::D => gen(Gen::Dbar).scaled(&Coeff::int(-1)),
        Gen::Dbar => gen(Gen::D).scaled(&Coeff::int(-1)),
        Gen::Mul(m) => gen(Gen::Mul(m.conj())),
        Gen::Scalar(c) => DiffOpPoly::scalar(c.conj()),
        Gen::Slot(..) => panic!("adjoint of a symbol slot is not needed"),
    }
}

pub struct HalfPlanePicture;
pub struct DiskPicture;
/// Fock space with the Gaussian measure `dρ`, `S⁺ = -∂ + z̄`.
pub struct FockWeighted;
/// Landau picture in `L²(dA)`, `Q⁺ = -∂ + z̄/2`, seed `z^k e^{-|z|²/2}`.
pub struct FockLandau;

impl Picture for HalfPlanePicture {
    fn name(&self) -> &'static str {
        "halfplane"
    }
    fn kind(&self) -> SpaceKind {
        SpaceKind::HalfPlane
    }
    fn creation(&self, power: u32) -> DiffOpPoly {
        // ∂^j (z - z̄)^j / j! with z - z̄ = 2iy
        let pre = &Coeff::i().scale_int(2).pow(power) * &Coeff::frac(1, factorial(power));
        gen(Gen::D)
            .pow(power)
            .compose(&gen(Gen::Mul(Mult::Y)).pow(power))
            .scaled(&pre)
    }
    fn adjoint_gen(&self, g: &Gen) -> DiffOpPoly {
        lebesgue_adjoint(g)
    }
    fn seed_dbar(&self) -> Option<DiffOpPoly> {
        None
    }
    fn transfer(&self) -> DiffOpPoly {
        gen(Gen::D).scaled(&Coeff::int(-1))
    }
}

impl Picture for DiskPicture {
    fn name(&self) -> &'static str {
        "disk"
    }
    fn kind(&self) -> SpaceKind {
        SpaceKind::Disk
    }
    fn creation(&self, power: u32) -> DiffOpPoly {
        gen(Gen::D).pow(power).compose(&gen(Gen::Mul(Mult::W)).pow(power))
    }
    fn adjoint_gen(&self, g: &Gen) -> DiffOpPoly {
        lebesgue_adjoint(g)
    }
    fn seed_dbar(&self) -> Option<DiffOpPoly> {
        None
    }
    fn transfer(&self) -> DiffOpPoly {
        gen(Gen::D).scaled(&Coeff::int(-1))
    }
}

impl Picture for FockWeighted {
    fn name(&self) -> &'static str {
        "fock"
    }
    fn kind(&self) -> SpaceKind {
        SpaceKind::FockPlane
    }
    fn creation(&self, power: u32) -> DiffOpPoly {
        gen(Gen::D)
            .scaled(&Coeff::int(-1))
            .plus(&gen(Gen::Mul(Mult::Zbar)))
            .pow(power)
    }
    fn form_scale(&self, power: u32) -> Coeff {
        Coeff::frac(1, factorial(power))
    }
    fn adjoint_gen(&self, g: &Gen) -> DiffOpPoly {
        // ⟨∂f, g⟩_ρ = ⟨f, (-∂̄ + z) g⟩_ρ
        match g {
            Gen::D => gen(Gen::Dbar).scaled(&Coeff::int(-1)).plus(&gen(Gen::Mul(Mult::Z))),
            Gen::Dbar => gen(Gen::D).scaled(&Coeff::int(-1)).plus(&gen(Gen::Mul(Mult::Zbar))),
            other => lebesgue_adjoint(other),
        }
    }
    fn seed_dbar(&self) -> Option<DiffOpPoly> {
        None
    }
    fn transfer(&self) -> DiffOpPoly {
        gen(Gen::D).scaled(&Coeff::int(-1)).plus(&gen(Gen::Mul(Mult::Zbar)))
    }
}

impl Picture for FockLandau {
    fn name(&self) -> &'static str {
        "fock-landau"
    }
    fn kind(&self) -> SpaceKind {
        SpaceKind::FockPlane
    }
    fn creation(&self, power: u32) -> DiffOpPoly {
        gen(Gen::D)
            .scaled(&Coeff::int(-1))
            .plus(&mult(Mult::Zbar, Coeff::frac(1, 2)))
            .pow(power)
    }
    fn form_scale(&self, power: u32) -> Coeff {
        Coeff::frac(1, factorial(power))
    }
    fn adjoint_gen(&self, g: &Gen) -> DiffOpPoly {
        lebesgue_adjoint(g)
    }
    fn seed_dbar(&self) -> Option<DiffOpPoly> {
        // Q φ = 0 on the lowest level: ∂̄φ = -(z/2) φ
        Some(mult(Mult::Z, Coeff::frac(-1, 2)))
    }
    fn transfer(&self) -> DiffOpPoly {
        gen(Gen::D).scaled(&Coeff::int(-1)).plus(&mult(Mult::Zbar, Coeff::frac(1, 2)))
    }
}

/// Registered pictures, looked up by name.
pub fn picture(name: &str) -> Result<Box<dyn Picture>> {
    match name {
        "halfplane" => Ok(Box::new(HalfPlanePicture)),
        "disk" => Ok(Box::new(DiskPicture)),
        "fock" => Ok(Box::new(FockWeighted)),
        "fock-landau" => Ok(Box::new(FockLandau)),
        other => Err(Error::Unknown {
            what: "reduction picture",
            name: other.to_string(),
        }),
    }
}

pub const PICTURES: [&str; 4] = ["halfplane", "disk", "fock", "fock-landau"];

fn adjoint(p: &DiffOpPoly, pic: &dyn Picture) -> DiffOpPoly {
    let mut out = DiffOpPoly::zero();
    for (key, c) in &p.terms {
        let mut term = DiffOpPoly::scalar(c.conj());
        // (g1 g2 ... gn)* = gn* ... g1*
        let mut word = Vec::new();
        for g in Mult::ALL {
            for _ in 0..key.mono.exp(g) {
                word.push(Gen::Mul(g));
            }
        }
        assert!(key.slot.is_none());
        word.extend(std::iter::repeat_n(Gen::D, key.d as usize));
        word.extend(std::iter::repeat_n(Gen::Dbar, key.dbar as usize));
        for g in word.iter().rev() {
            term = term.compose(&pic.adjoint_gen(g));
        }
        out = out.plus(&term);
    }
    out
}

/// The reduced operator `E` with `⟨F C f, C g⟩ = ⟨(EF) f, g⟩` for analytic
/// `f`, `g`. Every term of the result is `c · m · ∂^a∂̄^b F`.
pub fn derive(pic: &dyn Picture, power: u32) -> DiffOpPoly {
    let c = pic.creation(power);
    let form = adjoint(&c, pic)
        .compose(&DiffOpPoly::generator(Gen::Slot(0, 0)))
        .compose(&c)
        .scaled(&pic.form_scale(power));

    // resolve ∂̄ on the seed
    let mut seeded = DiffOpPoly::zero();
    for (key, coef) in &form.terms {
        if key.dbar == 0 {
            seeded.add(*key, coef);
            continue;
        }
        if let Some(m) = pic.seed_dbar() {
            let head = DiffOpPoly::scalar(coef.clone()).compose(&key_op(NormalKey { dbar: 0, ..*key }));
            seeded = seeded.plus(&head.compose(&m.pow(key.dbar)));
        }
    }

    // move every trailing ∂ onto the coefficient
    let t = pic.transfer();
    let mut out = DiffOpPoly::zero();
    for (key, coef) in &seeded.terms {
        debug_assert_eq!(key.dbar, 0);
        let g = key_op(NormalKey { d: 0, ..*key }).scaled(coef);
        out = out.plus(&t.pow(key.d).compose(&g).applied_to_one());
    }
    out
}

fn key_op(key: NormalKey) -> DiffOpPoly {
    let mut p = DiffOpPoly::zero();
    p.add(key, &Coeff::one());
    p
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducerTerm {
    pub coeff: String,
    pub multiplier: String,
    pub d: u32,
    pub dbar: u32,
    pub weight: i64,
}

#[derive(Clone, Debug)]
pub struct ReducerResult {
    pub kind: SpaceKind,
    pub picture: &'static str,
    /// Order as indexed by the derive function that produced it.
    pub order: u32,
    /// Power of the creation operator.
    pub power: u32,
    pub op: DiffOpPoly,
}

/// Weight of a reduced term: `y` and `w` count +1, each derivative on `F` −1.
pub fn weight(key: &NormalKey) -> i64 {
    key.mono.degree(Mult::Y) + key.mono.degree(Mult::W)
        - i64::from(key.slot.map_or(0, |(a, b)| a + b))
        - i64::from(key.d + key.dbar)
}

impl ReducerResult {
    pub fn terms(&self) -> Vec<ReducerTerm> {
        self.op
            .terms
            .iter()
            .map(|(k, c)| {
                let (d, dbar) = k.slot.unwrap_or((0, 0));
                ReducerTerm {
                    coeff: c.to_string(),
                    multiplier: k.mono.to_string(),
                    d,
                    dbar,
                    weight: weight(k),
                }
            })
            .collect()
    }

    pub fn weights(&self) -> Vec<i64> {
        self.op.terms.keys().map(weight).collect()
    }

    /// Coefficients `c_a` of `Σ c_a Δ^a` when the operator is a constant
    /// polynomial in the Laplacian `Δ = 4∂∂̄`.
    pub fn laplacian_coeffs(&self) -> Option<Vec<Coeff>> {
        let mut out: Vec<Coeff> = Vec::new();
        for (k, c) in &self.op.terms {
            let (a, b) = k.slot?;
            if a != b || !k.mono.is_one() || k.d + k.dbar > 0 {
                return None;
            }
            let a = a as usize;
            if out.len() <= a {
                out.resize(a + 1, Coeff::zero());
            }
            out[a] = c * &Coeff::frac(1, 4i64.pow(a as u32));
        }
        Some(out)
    }

    /// Human-readable form; Laplacian polynomials print as `1 + (1/4)Δ`.
    pub fn pretty(&self) -> String {
        if let Some(cs) = self.laplacian_coeffs() {
            let parts: Vec<String> = cs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(a, c)| {
                    let lap = match a {
                        0 => String::new(),
                        1 => "Δ".to_string(),
                        _ => format!("Δ^{a}"),
                    };
                    match (a, c == &Coeff::one()) {
                        (0, _) => c.to_string(),
                        (_, true) => lap,
                        _ => format!("({c}){lap}"),
                    }
                })
                .collect();
            return if parts.is_empty() { "0".into() } else { parts.join(" + ") };
        }
        self.op
            .terms
            .iter()
            .map(|(k, c)| {
                let (a, b) = k.slot.unwrap_or((0, 0));
                let m = if k.mono.is_one() { String::new() } else { format!("{}*", k.mono) };
                format!("({c})*{m}F[{a},{b}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn result(pic: &dyn Picture, order: u32, power: u32) -> ReducerResult {
    ReducerResult {
        kind: pic.kind(),
        picture: pic.name(),
        order,
        power,
        op: derive(pic, power),
    }
}

fn nonneg(name: &'static str, j: i64) -> Result<u32> {
    u32::try_from(j).map_err(|_| invalid(name, format!("must be nonnegative, got {j}")))
}

/// `D_q`, derived in the Landau picture.
pub fn derive_fock_reducer(q: i64) -> Result<ReducerResult> {
    let q = nonneg("q", q)?;
    Ok(result(&FockLandau, q, q))
}

/// `D_q` derived in the Gaussian-measure picture (cross-check).
pub fn derive_fock_reducer_weighted(q: i64) -> Result<ReducerResult> {
    let q = nonneg("q", q)?;
    Ok(result(&FockWeighted, q, q))
}

/// `K_j` for `⟨F S^j f, S^j g⟩`.
pub fn derive_halfplane_reducer(j: i64) -> Result<ReducerResult> {
    let j = nonneg("j", j)?;
    Ok(result(&HalfPlanePicture, j, j))
}

/// `M_j` for `⟨F Σ_{j-1} f, Σ_{j-1} g⟩`.
pub fn derive_disk_reducer(j: i64) -> Result<ReducerResult> {
    if j < 1 {
        return Err(invalid("j", format!("disk reducer needs j >= 1, got {j}")));
    }
    let j = j as u32;
    Ok(result(&DiskPicture, j, j - 1))
}

/// Reducer for the creation power used by the toeplitz module.
pub fn derive_for_power(kind: SpaceKind, power: u32) -> ReducerResult {
    match kind {
        SpaceKind::Disk => result(&DiskPicture, power + 1, power),
        SpaceKind::HalfPlane => result(&HalfPlanePicture, power, power),
        SpaceKind::FockPlane => result(&FockLandau, power, power),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcalc::algebra::Mono;

    fn slot(mono: Mono, a: u32, b: u32) -> NormalKey {
        NormalKey {
            mono,
            slot: Some((a, b)),
            d: 0,
            dbar: 0,
        }
    }

    #[test]
    fn trivial_orders() {
        for r in [
            derive_fock_reducer(0).unwrap(),
            derive_halfplane_reducer(0).unwrap(),
            derive_disk_reducer(1).unwrap(),
        ] {
            assert_eq!(r.pretty(), "1");
        }
        assert!(derive_disk_reducer(0).is_err());
        assert!(derive_fock_reducer(-1).is_err());
    }

    #[test]
    fn fock_first_order() {
        let r = derive_fock_reducer(1).unwrap();
        assert_eq!(r.pretty(), "1 + (1/4)Δ");
        let w = derive_fock_reducer_weighted(1).unwrap();
        assert_eq!(w.op, r.op);
    }

    #[test]
    fn fock_pictures_agree() {
        for q in 2..=4 {
            let a = derive_fock_reducer(q).unwrap();
            let b = derive_fock_reducer_weighted(q).unwrap();
            assert_eq!(a.op, b.op, "q={q}: {} vs {}", a.pretty(), b.pretty());
            let cs = a.laplacian_coeffs().expect("Laplacian polynomial");
            assert_eq!(cs.len() as i64, q + 1);
        }
    }

    #[test]
    fn disk_second_order_by_hand() {
        // M_2 F = w² ∂∂̄F - z̄w ∂̄F - zw ∂F + zz̄ F
        let r = derive_disk_reducer(2).unwrap();
        let w = Mono::of(Mult::W);
        let z = Mono::of(Mult::Z);
        let zb = Mono::of(Mult::Zbar);
        let mut want = DiffOpPoly::zero();
        want.add(slot(w.mul(&w), 1, 1), &Coeff::one());
        want.add(slot(zb.mul(&w), 0, 1), &Coeff::int(-1));
        want.add(slot(z.mul(&w), 1, 0), &Coeff::int(-1));
        want.add(slot(z.mul(&zb), 0, 0), &Coeff::one());
        assert_eq!(r.op, want, "{}", r.pretty());
        // the leading term is (1/4)(1-|z|²)² ΔF
    }

    #[test]
    fn halfplane_first_order() {
        // K_1 F = F + i∂̄(yF) - i∂(yF) + ∂∂̄(y²F) up to the overall scale
        let r = derive_halfplane_reducer(1).unwrap();
        eprintln!("{}", r.pretty());
        assert!(r.weights().iter().all(|&w| w == 0));
    }

    #[test]
    fn weights_vanish() {
        for j in 0..=3 {
            let k = derive_halfplane_reducer(j).unwrap();
            assert!(k.weights().iter().all(|&w| w == 0), "K_{j}: {}", k.pretty());
            let m = derive_disk_reducer(j + 1).unwrap();
            assert!(m.weights().iter().all(|&w| w == 0), "M_{}: {}", j + 1, m.pretty());
        }
    }
}
