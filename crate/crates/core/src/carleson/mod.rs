//! Carleson quotients over hyperbolic-scale balls (disk, half-plane) or
//! fixed-radius balls with polynomial weight (plane), their vanishing
//! profiles, and the boundedness predictors for true poly spaces.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::numerics::{ball_quadrature, cayley, Quadrature};
use crate::symbols::{MeasureData, SymbolExpr};
use crate::{Error, Result, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanGrid {
    /// Uniform radial levels over `[0, 1)` (disk model) or `[0, rmax]` (plane).
    pub radial_levels: usize,
    /// Geometric levels in the boundary distance, ratio `1/√2` from 1/2.
    pub boundary_levels: usize,
    pub angular: usize,
    /// Outer radius of the plane scan.
    pub rmax: f64,
    /// Each refinement doubles the uniform levels and angles and halves the
    /// geometric ratio's exponent; refined grids contain the coarser ones.
    pub refinement: u32,
    /// Order of the ball rule used for density masses.
    pub ball_order: usize,
}

impl Default for ScanGrid {
    fn default() -> Self {
        Self {
            radial_levels: 400,
            boundary_levels: 40,
            angular: 64,
            rmax: 40.0,
            refinement: 0,
            ball_order: 16,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Bounded,
    VanishingCompact,
    #[serde(rename = "NotBounded-byThisTest")]
    NotBoundedByThisTest,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfilePoint {
    /// Boundary distance `1 - |ζ|` (disk model) or radius `R` (plane).
    pub scale: f64,
    /// Supremum over the collar `{distance ≤ scale}` or `{|z| ≥ R}`.
    pub tail_sup: f64,
    /// Supremum over this level alone.
    pub level_sup: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CarlesonReport {
    pub kind: SpaceKind,
    /// Twice the derivative order `k`.
    pub k2: i32,
    pub k: f64,
    /// Grid supremum; `None` when flagged infinite.
    pub constant: Option<f64>,
    pub infinite: bool,
    /// Largest quotient seen on the grid, also when flagged infinite.
    pub grid_sup: f64,
    pub argsup: [f64; 2],
    pub profile: Vec<ProfilePoint>,
    pub verdict: Verdict,
    pub grid: ScanGrid,
    pub fock_radius: Option<f64>,
    pub vanishing_fraction: f64,
}

/// Scan point: position, level index, and the distance used for collars.
struct Point {
    z: Complex64,
    level: usize,
}

struct Levels {
    /// Collar scale of each level (boundary distance or radius).
    scales: Vec<f64>,
    points: Vec<Point>,
}

fn disk_levels(grid: &ScanGrid) -> Levels {
    let m = grid.radial_levels << grid.refinement;
    let a = grid.angular << grid.refinement;
    let mut gaps: Vec<f64> = (0..m).map(|i| 1.0 - i as f64 / m as f64).collect();
    let steps = grid.boundary_levels << grid.refinement;
    let ratio = 0.5f64.powf(0.5 / f64::from(1u32 << grid.refinement));
    gaps.extend((1..=steps).map(|i| 0.5 * ratio.powi(i as i32)).filter(|g| *g < 1.0 / m as f64));
    gaps.sort_by(|x, y| y.total_cmp(x));
    gaps.dedup();
    let mut points = Vec::new();
    for (level, g) in gaps.iter().enumerate() {
        let r = 1.0 - g;
        if r == 0.0 {
            points.push(Point { z: Complex64::new(0.0, 0.0), level });
            continue;
        }
        for t in 0..a {
            points.push(Point {
                z: Complex64::from_polar(r, 2.0 * PI * t as f64 / a as f64),
                level,
            });
        }
    }
    Levels { scales: gaps, points }
}

fn plane_levels(grid: &ScanGrid) -> Levels {
    let m = grid.radial_levels << grid.refinement;
    let a = grid.angular << grid.refinement;
    let scales: Vec<f64> = (0..=m).map(|i| grid.rmax * i as f64 / m as f64).collect();
    let mut points = Vec::new();
    for (level, r) in scales.iter().enumerate() {
        if *r == 0.0 {
            points.push(Point { z: Complex64::new(0.0, 0.0), level });
            continue;
        }
        for t in 0..a {
            points.push(Point {
                z: Complex64::from_polar(*r, 2.0 * PI * t as f64 / a as f64),
                level,
            });
        }
    }
    Levels { scales, points }
}

/// Area of `B(c1, r1) ∩ B(c2, r2)`.
pub fn lens_area(c1: Complex64, r1: f64, c2: Complex64, r2: f64) -> f64 {
    let d = (c1 - c2).norm();
    if d >= r1 + r2 {
        return 0.0;
    }
    let (small, big) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    if d <= big - small {
        return PI * small * small;
    }
    let a1 = ((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1)).clamp(-1.0, 1.0).acos();
    let a2 = ((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2)).clamp(-1.0, 1.0).acos();
    let tri = 0.5 * ((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2)).max(0.0).sqrt();
    r1 * r1 * a1 + r2 * r2 * a2 - tri
}

/// `|ν|(B(z, r))` for the open ball: exact for atoms and indicators, by
/// quadrature of `|F|` otherwise.
pub fn ball_mass(nu: &MeasureData, z: Complex64, r: f64, order: usize) -> Result<f64> {
    Ok(match nu {
        MeasureData::Atoms(atoms) => atoms
            .iter()
            .filter(|a| (a.point - z).norm() < r)
            .map(|a| a.weight.norm())
            .sum(),
        MeasureData::Density(f) => match indicator_parts(f) {
            Some((scale, c, rho)) => scale * lens_area(z, r, c, rho),
            None => {
                let q: Quadrature = ball_quadrature(z, r, order, 2 * order, |_| 1.0)?;
                q.nodes.iter().zip(&q.weights).map(|(x, w)| f.eval(*x).norm() * w).sum()
            }
        },
    })
}

/// `c · 1_B(center, radius)` recognised structurally.
fn indicator_parts(f: &SymbolExpr) -> Option<(f64, Complex64, f64)> {
    match f {
        SymbolExpr::Indicator { center, radius } => Some((1.0, *center, *radius)),
        SymbolExpr::Product(v) if v.len() == 2 => match (&v[0], &v[1]) {
            (SymbolExpr::Const(c), SymbolExpr::Indicator { center, radius }) => Some((c.norm(), *center, *radius)),
            _ => None,
        },
        _ => None,
    }
}

/// Quotient at one point.
fn quotient(kind: SpaceKind, nu: &MeasureData, z: Complex64, k2: i32, fock_r: f64, order: usize) -> Result<f64> {
    let k1 = f64::from(k2) / 2.0 + 1.0;
    Ok(match kind {
        SpaceKind::Disk => {
            let d = 1.0 - z.norm();
            d.powf(-2.0 * k1) * ball_mass(nu, z, d / 2.0, order)?
        }
        SpaceKind::HalfPlane => {
            let y = z.im;
            y.powf(-2.0 * k1) * ball_mass(nu, z, y / 2.0, order)?
        }
        SpaceKind::FockPlane => {
            (1.0 + z.norm_sqr()).powf(f64::from(k2) / 2.0) * ball_mass(nu, z, fock_r, order)?
        }
    })
}

/// Fraction of the global constant below which the finest tail counts as
/// vanishing.
pub const DEFAULT_VANISHING_FRACTION: f64 = 1e-2;

fn scan(
    kind: SpaceKind,
    nu: &MeasureData,
    k2: i32,
    grid: &ScanGrid,
    fock_r: Option<f64>,
    fraction: f64,
) -> Result<CarlesonReport> {
    if grid.radial_levels == 0 || grid.angular == 0 {
        return Err(invalid("grid", "empty scan grid"));
    }
    if k2 < 0 {
        return Err(invalid("k2", "must be nonnegative"));
    }
    let r = match kind {
        SpaceKind::FockPlane => {
            let r = fock_r.unwrap_or(1.0);
            if r.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
                return Err(invalid("r", format!("Fock ball radius must be positive, got {r}")));
            }
            Some(r)
        }
        _ => None,
    };
    nu.validate(kind).map_err(|e| match e {
        Error::OutsideDomain { .. } => invalid("nu", "measure must be supported in the domain"),
        other => other,
    })?;
    let levels = match kind {
        SpaceKind::FockPlane => plane_levels(grid),
        _ => disk_levels(grid),
    };
    let mut level_sup = vec![0.0f64; levels.scales.len()];
    let mut best = (0.0f64, Complex64::new(0.0, 0.0));
    for p in &levels.points {
        let z = match kind {
            SpaceKind::HalfPlane => cayley(p.z),
            _ => p.z,
        };
        let v = quotient(kind, nu, z, k2, r.unwrap_or(1.0), grid.ball_order)?;
        if v > level_sup[p.level] {
            level_sup[p.level] = v;
        }
        if v > best.0 {
            best = (v, z);
        }
    }
    // collars: the last levels are closest to the boundary / farthest out
    let mut profile = Vec::with_capacity(level_sup.len());
    let mut tail = 0.0f64;
    for (i, s) in level_sup.iter().enumerate().rev() {
        tail = tail.max(*s);
        profile.push(ProfilePoint {
            scale: levels.scales[i],
            tail_sup: tail,
            level_sup: *s,
        });
    }
    profile.reverse();
    let infinite = diverging(&level_sup);
    let constant = best.0;
    let finest = profile.last().map_or(0.0, |p| p.level_sup);
    let verdict = if infinite {
        Verdict::NotBoundedByThisTest
    } else if finest <= fraction * constant {
        Verdict::VanishingCompact
    } else {
        Verdict::Bounded
    };
    Ok(CarlesonReport {
        kind,
        k2,
        k: f64::from(k2) / 2.0,
        constant: (!infinite).then_some(constant),
        infinite,
        grid_sup: constant,
        argsup: [best.1.re, best.1.im],
        profile,
        verdict,
        grid: *grid,
        fock_radius: r,
        vanishing_fraction: fraction,
    })
}

/// The last three level suprema strictly increase and the last is at least
/// ten times the smallest level supremum.
fn diverging(level_sup: &[f64]) -> bool {
    let n = level_sup.len();
    if n < 3 {
        return false;
    }
    let (a, b, c) = (level_sup[n - 3], level_sup[n - 2], level_sup[n - 1]);
    let min = level_sup.iter().copied().fold(f64::INFINITY, f64::min);
    a < b && b < c && c >= 10.0 * min && c > 0.0
}

/// Grid supremum of the Carleson quotient of order `k = k2 / 2`.
pub fn carleson_constant(
    kind: SpaceKind,
    nu: &MeasureData,
    k2: i32,
    grid: &ScanGrid,
    fock_r: Option<f64>,
) -> Result<CarlesonReport> {
    scan(kind, nu, k2, grid, fock_r, DEFAULT_VANISHING_FRACTION)
}

/// Same scan, with the vanishing verdict taken at `fraction` of the constant.
pub fn vanishing_profile(
    kind: SpaceKind,
    nu: &MeasureData,
    k2: i32,
    grid: &ScanGrid,
    fock_r: Option<f64>,
    fraction: f64,
) -> Result<CarlesonReport> {
    scan(kind, nu, k2, grid, fock_r, fraction)
}

/// Boundedness test for `T_F` on the true order-`j` space: the order-0
/// quotient on the disk and half-plane, weight `(1 + |z|²)^{j-1}` on the
/// plane.
pub fn predict_poly_boundedness(
    kind: SpaceKind,
    j: u32,
    f: &MeasureData,
    grid: &ScanGrid,
    fock_r: Option<f64>,
) -> Result<CarlesonReport> {
    if let MeasureData::Atoms(_) = f {
        return Err(invalid("F", "boundedness prediction needs a density"));
    }
    if j == 0 {
        return Err(invalid("j", "must be >= 1"));
    }
    let k2 = match kind {
        SpaceKind::FockPlane => 2 * (j as i32 - 1),
        _ => 0,
    };
    carleson_constant(kind, f, k2, grid, fock_r)
}
