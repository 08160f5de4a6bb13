//! The three geometries behind a common trait, looked up by name.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::basis::BasisFunction;
use crate::numerics::{disk_quadrature, fock_quadrature, halfplane_boundary_quadrature, Quadrature};
use crate::symcalc::coeff::{binomial_exact, factorial};
use crate::symcalc::Coeff;
use crate::{Error, Result, SpaceKind};

pub trait Geometry: Send + Sync {
    fn name(&self) -> &'static str;
    fn kind(&self) -> SpaceKind;
    /// Strict interior test.
    fn contains(&self, z: Complex64) -> bool;
    /// `k`-th orthonormal element of the analytic space.
    fn analytic(&self, k: usize) -> BasisFunction;
    /// Raw creation image of power `p` (exact prefactors included).
    fn create(&self, seed: &BasisFunction, p: u32) -> BasisFunction;
    /// Normalization turning the creation image into the stored element.
    fn true_scale(&self, _p: u32) -> f64 {
        1.0
    }
    fn supports_anti(&self) -> bool {
        true
    }
    /// Rule integrating the space's measure.
    fn quadrature(&self, radial: usize, angular: usize) -> Result<Quadrature>;
    /// Rule sized for products of elements with seed index `< n` and power `p`.
    fn auto_quadrature(&self, n: usize, p: u32) -> Result<Quadrature>;
    /// Reproducing kernel of the analytic space.
    fn kernel(&self, z: Complex64, w: Complex64) -> Complex64;
    /// Measure weight relative to `dA`.
    fn density(&self, _z: Complex64) -> f64 {
        1.0
    }
}

pub struct DiskGeometry;
pub struct HalfPlaneGeometry;
pub struct FockGeometry;

fn monomial(kind: SpaceKind, k: usize, scale: f64) -> BasisFunction {
    BasisFunction::new(kind, k, BTreeMap::from([((k as i32, 0), Coeff::one())]), scale)
}

fn sqrt_factorial(n: usize) -> f64 {
    (1..=n).map(|m| (m as f64).sqrt()).product()
}

impl Geometry for DiskGeometry {
    fn name(&self) -> &'static str {
        "disk"
    }
    fn kind(&self) -> SpaceKind {
        SpaceKind::Disk
    }
    fn contains(&self, z: Complex64) -> bool {
        z.norm_sqr() < 1.0
    }
    fn analytic(&self, k: usize) -> BasisFunction {
        monomial(SpaceKind::Disk, k, ((k + 1) as f64 / PI).sqrt())
    }
    fn create(&self, seed: &BasisFunction, p: u32) -> BasisFunction {
        // ∂^p ((1 - |z|²)^p u)
        let mut f = seed.clone();
        for _ in 0..p {
            f = f.add(&f.mul_z().mul_zbar().scaled_exact(&Coeff::int(-1)));
        }
        f.derivative(p, 0)
    }
    fn quadrature(&self, radial: usize, angular: usize) -> Result<Quadrature> {
        disk_quadrature(radial, angular)
    }
    fn auto_quadrature(&self, n: usize, p: u32) -> Result<Quadrature> {
        let deg = n + 2 * p as usize;
        disk_quadrature(deg + 8, 2 * deg + 8)
    }
    fn kernel(&self, z: Complex64, w: Complex64) -> Complex64 {
        (1.0 - z * w.conj()).powi(-2) / PI
    }
}

impl Geometry for HalfPlaneGeometry {
    fn name(&self) -> &'static str {
        "halfplane"
    }
    fn kind(&self) -> SpaceKind {
        SpaceKind::HalfPlane
    }
    fn contains(&self, z: Complex64) -> bool {
        z.im > 0.0
    }
    fn analytic(&self, k: usize) -> BasisFunction {
        // (z - i)^k (z + i)^{-k-2} = (u - 2i)^k u^{-k-2}
        let k32 = k as i32;
        let minus_2i = &Coeff::i() * &Coeff::int(-2);
        let terms = (0..=k)
            .map(|m| {
                let c = &binomial_exact(k as u32, m as u32) * &minus_2i.pow((k - m) as u32);
                ((m as i32 - k32 - 2, 0), c)
            })
            .collect();
        BasisFunction::new(SpaceKind::HalfPlane, k, terms, 2.0 * ((k + 1) as f64 / PI).sqrt())
    }
    fn create(&self, seed: &BasisFunction, p: u32) -> BasisFunction {
        // ∂^p ((z - z̄)^p u) / p!
        let mut f = seed.clone();
        for _ in 0..p {
            f = f.mul_z().add(&f.mul_zbar().scaled_exact(&Coeff::int(-1)));
        }
        f.derivative(p, 0).scaled_exact(&Coeff::frac(1, factorial(p)))
    }
    fn quadrature(&self, radial: usize, angular: usize) -> Result<Quadrature> {
        halfplane_boundary_quadrature(radial, angular)
    }
    fn auto_quadrature(&self, n: usize, p: u32) -> Result<Quadrature> {
        let deg = n + 2 * p as usize;
        halfplane_boundary_quadrature(2 * deg + 24, 2 * deg + 24)
    }
    fn kernel(&self, z: Complex64, w: Complex64) -> Complex64 {
        -(z - w.conj()).powi(-2) / PI
    }
}

impl Geometry for FockGeometry {
    fn name(&self) -> &'static str {
        "fock"
    }
    fn kind(&self) -> SpaceKind {
        SpaceKind::FockPlane
    }
    fn contains(&self, z: Complex64) -> bool {
        z.re.is_finite() && z.im.is_finite()
    }
    fn analytic(&self, k: usize) -> BasisFunction {
        monomial(SpaceKind::FockPlane, k, 1.0 / sqrt_factorial(k))
    }
    fn create(&self, seed: &BasisFunction, p: u32) -> BasisFunction {
        // (-∂ + z̄)^p
        let mut f = seed.clone();
        for _ in 0..p {
            f = f.mul_zbar().add(&f.d().scaled_exact(&Coeff::int(-1)));
        }
        f
    }
    fn true_scale(&self, p: u32) -> f64 {
        1.0 / sqrt_factorial(p as usize)
    }
    fn supports_anti(&self) -> bool {
        false
    }
    fn quadrature(&self, radial: usize, angular: usize) -> Result<Quadrature> {
        fock_quadrature(radial, angular)
    }
    fn auto_quadrature(&self, n: usize, p: u32) -> Result<Quadrature> {
        let deg = n + 2 * p as usize;
        fock_quadrature(deg + 8, 2 * deg + 8)
    }
    fn kernel(&self, z: Complex64, w: Complex64) -> Complex64 {
        (z * w.conj()).exp()
    }
    fn density(&self, z: Complex64) -> f64 {
        (-z.norm_sqr()).exp() / PI
    }
}

/// Registered geometries.
pub fn geometry(name: &str) -> Result<&'static dyn Geometry> {
    match name {
        "disk" => Ok(&DiskGeometry),
        "halfplane" => Ok(&HalfPlaneGeometry),
        "fock" => Ok(&FockGeometry),
        other => Err(Error::Unknown {
            what: "geometry",
            name: other.to_string(),
        }),
    }
}

pub fn geometry_for(kind: SpaceKind) -> &'static dyn Geometry {
    match kind {
        SpaceKind::Disk => &DiskGeometry,
        SpaceKind::HalfPlane => &HalfPlaneGeometry,
        SpaceKind::FockPlane => &FockGeometry,
    }
}

pub const GEOMETRIES: [&str; 3] = ["disk", "halfplane", "fock"];
