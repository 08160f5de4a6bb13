//! The coderivative `∂̃ = ∂ - c·z̄` and the inverse expansion of `∂^k` in
//! powers of `∂̃`.

use super::algebra::{DiffOpPoly, Gen, Mono, Mult, MultPoly};
use super::coeff::Coeff;

#[derive(Clone, Debug)]
pub struct Coderivative {
    pub k: u32,
    /// Factor `c` in `∂ - c·z̄`.
    pub c: Coeff,
    /// `q_k = (∂ - c z̄)^k`, normal ordered.
    pub q: DiffOpPoly,
    /// `q̃_k` as multiplier coefficients: `∂^k = Σ_i qtilde[i] · q_i`.
    pub qtilde: Vec<MultPoly>,
}

fn first(c: &Coeff) -> DiffOpPoly {
    DiffOpPoly::generator(Gen::D).plus(&DiffOpPoly::generator(Gen::Mul(Mult::Zbar)).scaled(&-c))
}

fn mult_op(p: &MultPoly) -> DiffOpPoly {
    let mut out = DiffOpPoly::zero();
    for (m, c) in &p.0 {
        let mut word = Vec::new();
        for g in Mult::ALL {
            word.extend(std::iter::repeat_n(Gen::Mul(g), m.exp(g) as usize));
        }
        out = out.plus(&DiffOpPoly::from_word(&word).scaled(c));
    }
    out
}

/// `q_k` and `q̃_k` for the coderivative `∂ - c·z̄`.
pub fn coderivative_with(k: u32, c: Coeff) -> Coderivative {
    let q1 = first(&c);
    let qs: Vec<DiffOpPoly> = (0..=k).map(|i| q1.pow(i)).collect();
    let mut tildes: Vec<Vec<MultPoly>> = Vec::new();
    for (n, qn) in qs.iter().enumerate() {
        // ∂^n = q_n - Σ_{i<n} a_{n,i} ∂^i, with each ∂^i already expanded
        let mut t = vec![MultPoly::zero(); n + 1];
        t[n] = MultPoly::constant(Coeff::one());
        for (key, a) in &qn.terms {
            let i = key.d as usize;
            if i == n {
                continue;
            }
            for (m, row) in tildes[i].iter().enumerate() {
                for (mono, v) in &row.0 {
                    t[m].add_term(mono.mul(&key.mono), &-&(a * v));
                }
            }
        }
        tildes.push(t);
    }
    Coderivative {
        k,
        c,
        q: qs[k as usize].clone(),
        qtilde: tildes.pop().unwrap_or_default(),
    }
}

/// Coderivative with the Gaussian half-weight `c = 1/2`.
pub fn coderivative_polys(k: u32) -> Coderivative {
    coderivative_with(k, Coeff::frac(1, 2))
}

impl Coderivative {
    /// `Σ_i q̃_{k,i} ∘ q_i`, which must equal `∂^k`.
    pub fn roundtrip(&self) -> DiffOpPoly {
        let q1 = first(&self.c);
        let mut out = DiffOpPoly::zero();
        for (i, t) in self.qtilde.iter().enumerate() {
            out = out.plus(&mult_op(t).compose(&q1.pow(i as u32)));
        }
        out
    }

    /// The coefficient of `q_i` in `q̃_k` as text.
    pub fn qtilde_strings(&self) -> Vec<String> {
        self.qtilde
            .iter()
            .map(|p| {
                if p.is_zero() {
                    return "0".to_string();
                }
                p.0.iter()
                    .map(|(m, c)| {
                        if m == &Mono::one() {
                            c.to_string()
                        } else {
                            format!("({c})*{m}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .collect()
    }
}
