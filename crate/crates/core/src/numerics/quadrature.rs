//! Planar quadrature rules for the disk, the upper half-plane and the
//! Gaussian-weighted plane.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gauss::{gauss_laguerre, gauss_legendre_interval};
use crate::error::{invalid, Error, Result};

/// Integration domain of a rule. `Ball` rules carry the space's measure
/// restricted to a disk `B(center, radius)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum QuadDomain {
    Disk,
    HalfPlane,
    FockPlane,
    Ball { center: [f64; 2], radius: f64 },
}

/// Provenance of a rule, carried into reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadMeta {
    pub rule: String,
    pub domain: QuadDomain,
    pub radial_order: usize,
    pub angular_order: usize,
    /// Monomials `z^a z̄^b` with `a + b <= exactness` (and angular frequency
    /// below `angular_order`) are integrated exactly.
    pub exactness: usize,
    pub nodes: usize,
}

#[derive(Clone, Debug)]
pub struct Quadrature {
    pub nodes: Vec<Complex64>,
    pub weights: Vec<f64>,
    pub meta: QuadMeta,
}

fn check_orders(radial: usize, angular: usize) -> Result<()> {
    if radial == 0 {
        return Err(invalid("radial_order", "must be >= 1"));
    }
    if angular == 0 {
        return Err(invalid("angular_order", "must be >= 1"));
    }
    Ok(())
}

fn angles(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64))
        .collect()
}

/// Tensor rule on the unit disk for `dA`: Gauss–Legendre in `t = r²`,
/// uniform in the angle.
pub fn disk_quadrature(radial_order: usize, angular_order: usize) -> Result<Quadrature> {
    check_orders(radial_order, angular_order)?;
    let (t, w) = gauss_legendre_interval(radial_order, 0.0, 1.0);
    let dirs = angles(angular_order);
    let mut nodes = Vec::with_capacity(radial_order * angular_order);
    let mut weights = Vec::with_capacity(radial_order * angular_order);
    for (ti, wi) in t.iter().zip(&w) {
        let r = ti.sqrt();
        for d in &dirs {
            nodes.push(d * r);
            weights.push(PI * wi / angular_order as f64);
        }
    }
    Ok(Quadrature {
        meta: QuadMeta {
            rule: "disk-legendre-t".into(),
            domain: QuadDomain::Disk,
            radial_order,
            angular_order,
            exactness: 2 * radial_order - 2,
            nodes: nodes.len(),
        },
        nodes,
        weights,
    })
}

/// Tensor rule for `dρ = π^{-1} e^{-|z|²} dA`: Gauss–Laguerre in `t = |z|²`.
pub fn fock_quadrature(radial_order: usize, angular_order: usize) -> Result<Quadrature> {
    check_orders(radial_order, angular_order)?;
    if radial_order > 160 {
        return Err(invalid("radial_order", "Gauss–Laguerre supported up to 160 nodes"));
    }
    let (t, w) = gauss_laguerre(radial_order);
    let dirs = angles(angular_order);
    let mut nodes = Vec::with_capacity(radial_order * angular_order);
    let mut weights = Vec::with_capacity(radial_order * angular_order);
    for (ti, wi) in t.iter().zip(&w) {
        let r = ti.sqrt();
        for d in &dirs {
            nodes.push(d * r);
            weights.push(wi / angular_order as f64);
        }
    }
    Ok(Quadrature {
        meta: QuadMeta {
            rule: "fock-laguerre-t".into(),
            domain: QuadDomain::FockPlane,
            radial_order,
            angular_order,
            exactness: 2 * radial_order - 2,
            nodes: nodes.len(),
        },
        nodes,
        weights,
    })
}

/// Cayley map `ζ ↦ i(1+ζ)/(1-ζ)` from the disk onto the upper half-plane.
pub fn cayley(zeta: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    Complex64::i() * (one + zeta) / (one - zeta)
}

/// Inverse Cayley map `z ↦ (z-i)/(z+i)`.
pub fn cayley_inverse(z: Complex64) -> Complex64 {
    (z - Complex64::i()) / (z + Complex64::i())
}

/// Pullback of [`disk_quadrature`] through the Cayley map, with the Jacobian
/// `4/|1-ζ|⁴` folded into the weights.
pub fn halfplane_quadrature(radial_order: usize, angular_order: usize) -> Result<Quadrature> {
    let disk = disk_quadrature(radial_order, angular_order)?;
    let one = Complex64::new(1.0, 0.0);
    let (nodes, weights) = disk
        .nodes
        .iter()
        .zip(&disk.weights)
        .map(|(zeta, w)| (cayley(*zeta), w * 4.0 / (one - zeta).norm_sqr().powi(2)))
        .unzip();
    Ok(Quadrature {
        meta: QuadMeta {
            rule: "halfplane-cayley-disk".into(),
            domain: QuadDomain::HalfPlane,
            ..disk.meta
        },
        nodes,
        weights,
    })
}

/// Cayley pullback of a polar rule centred at the boundary point `ζ = 1`
/// (the image of `z = ∞`). In those coordinates every Cayley-rational
/// integrand becomes a polynomial in the radius times a smooth function of
/// the angle, so this rule also converges for the true poly-analytic
/// products, which are not polynomial in `(ζ, ζ̄)`.
pub fn halfplane_boundary_quadrature(radial_order: usize, angular_order: usize) -> Result<Quadrature> {
    check_orders(radial_order, angular_order)?;
    let (phis, wphi) = gauss_legendre_interval(angular_order, -PI / 2.0, PI / 2.0);
    let mut nodes = Vec::with_capacity(radial_order * angular_order);
    let mut weights = Vec::with_capacity(radial_order * angular_order);
    for (phi, wp) in phis.iter().zip(&wphi) {
        let reach = 2.0 * phi.cos();
        let (rhos, wr) = gauss_legendre_interval(radial_order, 0.0, reach);
        let dir = Complex64::from_polar(1.0, *phi);
        for (rho, w) in rhos.iter().zip(&wr) {
            let zeta = Complex64::new(1.0, 0.0) - dir * rho;
            nodes.push(cayley(zeta));
            weights.push(wp * w * rho * 4.0 / rho.powi(4));
        }
    }
    Ok(Quadrature {
        meta: QuadMeta {
            rule: "halfplane-cayley-boundary-polar".into(),
            domain: QuadDomain::HalfPlane,
            radial_order,
            angular_order,
            exactness: 2 * radial_order - 2,
            nodes: nodes.len(),
        },
        nodes,
        weights,
    })
}

/// `dA` restricted to the disk `B(center, radius)`, optionally multiplied by
/// a measure weight evaluated at the nodes.
pub fn ball_quadrature(
    center: Complex64,
    radius: f64,
    radial_order: usize,
    angular_order: usize,
    weight: impl Fn(Complex64) -> f64,
) -> Result<Quadrature> {
    if radius.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || !radius.is_finite() {
        return Err(invalid("radius", format!("must be positive, got {radius}")));
    }
    let disk = disk_quadrature(radial_order, angular_order)?;
    let (nodes, weights) = disk
        .nodes
        .iter()
        .zip(&disk.weights)
        .map(|(zeta, w)| {
            let z = center + zeta * radius;
            (z, w * radius * radius * weight(z))
        })
        .unzip();
    Ok(Quadrature {
        meta: QuadMeta {
            rule: "ball-legendre-t".into(),
            domain: QuadDomain::Ball {
                center: [center.re, center.im],
                radius,
            },
            ..disk.meta
        },
        nodes,
        weights,
    })
}

/// Weighted sum `Σ w_i f(z_i)` in node order.
pub fn integrate(f: impl Fn(Complex64) -> Complex64, q: &Quadrature) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, (z, w)) in q.nodes.iter().zip(&q.weights).enumerate() {
        let v = f(*z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite {
                index: i,
                node: format!("{z}"),
                value: format!("{v}"),
            });
        }
        acc += v * w;
    }
    Ok(acc)
}

/// Same as [`integrate`] for values already sampled at the nodes.
pub fn integrate_values(values: &[Complex64], q: &Quadrature) -> Complex64 {
    values
        .iter()
        .zip(&q.weights)
        .fold(Complex64::new(0.0, 0.0), |acc, (v, w)| acc + v * w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn disk_examples() {
        let q = disk_quadrature(8, 8).unwrap();
        assert!((integrate(|_| c(1.0, 0.0), &q).unwrap() - PI).norm() < 1e-13);
        assert!(integrate(|z| z, &q).unwrap().norm() < 1e-14);
        let half = integrate(|z| c(z.norm_sqr(), 0.0), &q).unwrap();
        assert!((half - PI / 2.0).norm() < 1e-13);
    }

    #[test]
    fn disk_monomial_exactness() {
        let (n, m) = (6, 9);
        let q = disk_quadrature(n, m).unwrap();
        for a in 0..=(2 * n - 2) {
            for b in 0..=(2 * n - 2 - a) {
                if a.abs_diff(b) >= m {
                    continue;
                }
                let got = integrate(|z| z.powu(a as u32) * z.conj().powu(b as u32), &q).unwrap();
                // polar oracle: 2π ∫ r^{2a+1} dr = π/(a+1) when a = b
                let want = if a == b { PI / (a as f64 + 1.0) } else { 0.0 };
                assert!((got - want).norm() <= 1e-12 * (1.0 + want), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn fock_examples() {
        let q = fock_quadrature(10, 12).unwrap();
        assert!((integrate(|_| c(1.0, 0.0), &q).unwrap() - 1.0).norm() < 1e-13);
        assert!((integrate(|z| c(z.norm_sqr(), 0.0), &q).unwrap() - 1.0).norm() < 1e-13);
        let z2 = integrate(|z| c(z.norm_sqr().powi(2), 0.0), &q).unwrap();
        assert!((z2 - 2.0).norm() < 1e-12);
    }

    /// Γ(m/2).
    fn gamma_half(m: u32) -> f64 {
        if m.is_multiple_of(2) {
            (1..m / 2).map(f64::from).product()
        } else {
            let mut g = PI.sqrt();
            let mut x = 0.5;
            while x < m as f64 / 2.0 - 0.25 {
                g *= x;
                x += 1.0;
            }
            g
        }
    }

    #[test]
    fn fock_monomial_exactness() {
        let (n, m) = (12, 7);
        let q = fock_quadrature(n, m).unwrap();
        for a in 0..=(2 * n - 2) {
            for b in 0..=(2 * n - 2 - a) {
                if a.abs_diff(b) >= m {
                    continue;
                }
                let got = integrate(|z| z.powu(a as u32) * z.conj().powu(b as u32), &q).unwrap();
                let want = if a == b { (1..=a).map(|k| k as f64).product::<f64>() } else { 0.0 };
                // vanishing moments are judged against ∫|z|^{a+b} dρ = Γ((a+b)/2 + 1)
                let size = gamma_half((a + b) as u32 + 2);
                assert!((got - want).norm() <= 1e-12 * (1.0 + want.max(size)), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn halfplane_examples() {
        for q in [
            halfplane_quadrature(8, 8).unwrap(),
            halfplane_boundary_quadrature(12, 24).unwrap(),
        ] {
            let zi = Complex64::i();
            let k0 = integrate(|z| c((z + zi).norm_sqr().powi(-2), 0.0), &q).unwrap();
            assert!((k0 - PI / 4.0).norm() < 1e-12, "{}: {k0}", q.meta.rule);
            let k1 = integrate(|z| c((z - zi).norm_sqr() * (z + zi).norm_sqr().powi(-3), 0.0), &q).unwrap();
            assert!((k1 - PI / 8.0).norm() < 1e-12, "{}: {k1}", q.meta.rule);
            let odd = integrate(|z| c(z.re * (z + zi).norm_sqr().powi(-2), 0.0), &q).unwrap();
            assert!(odd.norm() < 1e-12, "{}: {odd}", q.meta.rule);
        }
    }

    #[test]
    fn halfplane_cayley_family() {
        // ∫|z-i|^{2k}|z+i|^{-2k-4} dA = π/(4(k+1))
        let q = halfplane_quadrature(10, 4).unwrap();
        let zi = Complex64::i();
        for k in 0..8 {
            let got = integrate(
                |z| c((z - zi).norm_sqr().powi(k) * (z + zi).norm_sqr().powi(-k - 2), 0.0),
                &q,
            )
            .unwrap();
            let want = PI / (4.0 * (k as f64 + 1.0));
            assert!((got - want).norm() < 1e-12 * (1.0 + want));
        }
    }

    #[test]
    fn rejects_zero_orders() {
        assert!(disk_quadrature(0, 3).is_err());
        assert!(fock_quadrature(3, 0).is_err());
        assert!(halfplane_quadrature(0, 0).is_err());
    }

    #[test]
    fn integrate_names_bad_node() {
        let q = disk_quadrature(2, 2).unwrap();
        let err = integrate(|_| c(f64::NAN, 0.0), &q).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 0, .. }));
    }

    #[test]
    fn integrate_is_deterministic() {
        let q = fock_quadrature(30, 31).unwrap();
        let f = |z: Complex64| (z * 0.3).exp() * z.conj();
        let a = integrate(f, &q).unwrap();
        let b = integrate(f, &q).unwrap();
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }
}
