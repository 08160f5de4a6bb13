//! Analytic, true polyanalytic and true anti-polyanalytic bases built with
//! the creation operators, plus Gram matrices and reproducing kernels.

pub mod basis;
pub mod geometry;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use basis::BasisFunction;
pub use geometry::{geometry, geometry_for, Geometry, GEOMETRIES};

use crate::error::invalid;
use crate::numerics::{DenseMatrix, QuadDomain, Quadrature};
use crate::{Error, Result, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Chirality {
    Analytic,
    AntiAnalytic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    pub order: u32,
    pub chirality: Chirality,
    pub true_space: bool,
}

impl SpaceSpec {
    pub fn true_poly(kind: SpaceKind, order: u32) -> Self {
        Self {
            kind,
            order,
            chirality: Chirality::Analytic,
            true_space: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 {
            return Err(invalid("order", "must be >= 1"));
        }
        if self.chirality == Chirality::AntiAnalytic && !geometry_for(self.kind).supports_anti() {
            return Err(Error::Unsupported(self.kind, "anti-analytic spaces"));
        }
        Ok(())
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("N", "must be >= 1"));
    }
    Ok(())
}

pub fn analytic_basis(kind: SpaceKind, n: usize) -> Result<Vec<BasisFunction>> {
    check_n(n)?;
    let g = geometry_for(kind);
    Ok((0..n).map(|k| g.analytic(k)).collect())
}

/// Order-`order` element built from the `k`-th analytic element.
fn true_element(g: &dyn Geometry, k: usize, order: u32) -> BasisFunction {
    let seed = g.analytic(k);
    let p = order - 1;
    let f = g.create(&seed, p);
    let scale = f.scale * g.true_scale(p);
    f.rescaled(scale).with_lineage(&seed, p)
}

fn true_analytic(kind: SpaceKind, order: u32, n: usize) -> Result<Vec<BasisFunction>> {
    check_n(n)?;
    if order == 0 {
        return Err(invalid("j", "true order must be >= 1"));
    }
    let g = geometry_for(kind);
    Ok((0..n).map(|k| true_element(g, k, order)).collect())
}

/// Basis of the space described by `spec`. For `true_space = false` the
/// full polyanalytic space is returned as the concatenation of the true
/// orders `1..=order`, `n` elements each.
pub fn true_poly_basis(spec: SpaceSpec, n: usize) -> Result<Vec<BasisFunction>> {
    spec.validate()?;
    let orders: Vec<u32> = if spec.true_space { vec![spec.order] } else { (1..=spec.order).collect() };
    let mut out = Vec::new();
    for j in orders {
        out.extend(true_analytic(spec.kind, j, n)?);
    }
    if spec.chirality == Chirality::AntiAnalytic {
        out = out.iter().map(BasisFunction::conj).collect();
    }
    Ok(out)
}

pub fn anti_true_poly_basis(spec: SpaceSpec, n: usize) -> Result<Vec<BasisFunction>> {
    if !geometry_for(spec.kind).supports_anti() {
        return Err(Error::Unsupported(spec.kind, "anti-analytic spaces"));
    }
    true_poly_basis(
        SpaceSpec {
            chirality: Chirality::AntiAnalytic,
            ..spec
        },
        n,
    )
}

/// One creation step. On the plane this is `(-∂ + z̄) f`; on the disk and
/// half-plane the creation image of the element's analytic seed is rebuilt
/// with the power raised by one.
pub fn creation_apply(kind: SpaceKind, f: &BasisFunction) -> Result<BasisFunction> {
    if f.kind != kind {
        return Err(Error::DomainMismatch(f.kind, kind));
    }
    let g = geometry_for(kind);
    match kind {
        SpaceKind::FockPlane => {
            let seed = f.seed().cloned().unwrap_or_else(|| f.clone());
            Ok(g.create(f, 1).with_lineage(&seed, f.power + 1))
        }
        _ => {
            let seed = f
                .seed()
                .cloned()
                .or_else(|| (f.power == 0).then(|| f.clone()))
                .ok_or_else(|| invalid("f", "creation needs a basis function built by this module"))?;
            Ok(g.create(&seed, f.power + 1).with_lineage(&seed, f.power + 1))
        }
    }
}

/// One annihilation step: `∂̄ f` on the plane; on the disk and half-plane the
/// element with the creation power lowered by one.
pub fn annihilation_apply(kind: SpaceKind, f: &BasisFunction) -> Result<BasisFunction> {
    if f.kind != kind {
        return Err(Error::DomainMismatch(f.kind, kind));
    }
    let mut out = match kind {
        SpaceKind::FockPlane => f.dbar(),
        _ => {
            let seed = f
                .seed()
                .cloned()
                .ok_or_else(|| invalid("f", "annihilation needs a created basis function"))?;
            if f.power == 0 {
                return Err(invalid("f", "analytic element has no lower order"));
            }
            geometry_for(kind).create(&seed, f.power - 1)
        }
    };
    out.power = f.power.saturating_sub(1);
    Ok(out)
}

fn domain_matches(kind: SpaceKind, d: QuadDomain) -> bool {
    matches!(
        (kind, d),
        (SpaceKind::Disk, QuadDomain::Disk)
            | (SpaceKind::HalfPlane, QuadDomain::HalfPlane)
            | (SpaceKind::FockPlane, QuadDomain::FockPlane)
            | (_, QuadDomain::Ball { .. })
    )
}

fn domain_kind(d: QuadDomain) -> SpaceKind {
    match d {
        QuadDomain::HalfPlane => SpaceKind::HalfPlane,
        QuadDomain::FockPlane => SpaceKind::FockPlane,
        _ => SpaceKind::Disk,
    }
}

/// Values of each function at each node, `[function][node]`.
pub fn sample(fs: &[BasisFunction], q: &Quadrature) -> Result<Vec<Vec<Complex64>>> {
    let mut out = Vec::with_capacity(fs.len());
    for f in fs {
        if !domain_matches(f.kind, q.meta.domain) {
            return Err(Error::DomainMismatch(f.kind, domain_kind(q.meta.domain)));
        }
        let vals: Vec<Complex64> = q.nodes.iter().map(|z| f.eval(*z)).collect();
        if let Some(i) = vals.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite {
                index: i,
                node: q.nodes[i].to_string(),
                value: vals[i].to_string(),
            });
        }
        out.push(vals);
    }
    Ok(out)
}

/// `Σ_n w_n m_n a_n conj(b_n)` for sampled tables.
pub(crate) fn weighted_gram(
    a: &[Vec<Complex64>],
    b: &[Vec<Complex64>],
    weights: &[f64],
    m: Option<&[Complex64]>,
) -> DenseMatrix {
    let w: Vec<Complex64> = match m {
        Some(m) => weights.iter().zip(m).map(|(w, m)| m * w).collect(),
        None => weights.iter().map(|w| Complex64::new(*w, 0.0)).collect(),
    };
    DenseMatrix::from_fn(a.len(), b.len(), |i, j| {
        a[i].iter()
            .zip(&b[j])
            .zip(&w)
            .fold(Complex64::new(0.0, 0.0), |acc, ((x, y), w)| acc + x * y.conj() * w)
    })
}

/// `⟨A_i, B_j⟩` in the measure carried by `q`.
pub fn gram(a: &[BasisFunction], b: &[BasisFunction], q: &Quadrature) -> Result<DenseMatrix> {
    let sa = sample(a, q)?;
    let sb = sample(b, q)?;
    Ok(weighted_gram(&sa, &sb, &q.weights, None))
}

fn check_point(kind: SpaceKind, z: Complex64) -> Result<()> {
    if geometry_for(kind).contains(z) {
        Ok(())
    } else {
        Err(Error::OutsideDomain {
            kind,
            point: z.to_string(),
        })
    }
}

pub fn reproducing_kernel(kind: SpaceKind, z: Complex64, w: Complex64) -> Result<Complex64> {
    check_point(kind, z)?;
    check_point(kind, w)?;
    Ok(geometry_for(kind).kernel(z, w))
}

/// Truncated `Σ_k b_k(z) conj(b_k(w))` over the basis of `spec`.
pub fn kernel_via_basis(spec: SpaceSpec, n: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    check_point(spec.kind, z)?;
    check_point(spec.kind, w)?;
    let basis = true_poly_basis(spec, n)?;
    Ok(basis.iter().map(|b| b.eval(z) * b.eval(w).conj()).sum())
}

/// Basis dump, one row per element: `k,order,anti,scale,terms`.
pub fn basis_csv(fs: &[BasisFunction]) -> String {
    let mut out = String::from("k,order,anti,scale,terms\n");
    for f in fs {
        out.push_str(&format!(
            "{},{},{},{:e},{}\n",
            f.index,
            f.power + 1,
            f.anti,
            f.scale,
            f.terms_string()
        ));
    }
    out
}
