//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use polytoeplitz::carleson::{carleson_constant, predict_poly_boundedness, ScanGrid, Verdict};
use polytoeplitz::numerics::{singular_values, spectral_norm, DenseMatrix};
use polytoeplitz::spaces::{
    anti_true_poly_basis, creation_apply, geometry_for, gram, true_poly_basis, BasisFunction, SpaceSpec,
};
use polytoeplitz::symbols::{parse_symbol, MeasureData};
use polytoeplitz::symcalc::{
    coderivative_polys, derive_disk_reducer, derive_fock_reducer, derive_halfplane_reducer, DiffOpPoly, Gen,
};
use polytoeplitz::toeplitz::{assemble, check_reduction, spectrum, DecayClass, DecayConfig, ToeplitzSymbol};
use polytoeplitz::SpaceKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn identity_defect(g: &DenseMatrix) -> f64 {
    g.sub(&DenseMatrix::identity(g.rows)).max_abs()
}

fn budget(start: Instant, limit: Duration, msg: String) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, format!("{msg}; {:.2}s of {}s", t.as_secs_f64(), limit.as_secs()))
}

fn fock_orthonormality() -> Outcome {
    let start = Instant::now();
    let q = geometry_for(SpaceKind::FockPlane).auto_quadrature(12, 3).map_err(err)?;
    let mut worst = 0.0f64;
    for j in 1..=4 {
        let b = true_poly_basis(SpaceSpec::true_poly(SpaceKind::FockPlane, j), 12).map_err(err)?;
        worst = worst.max(identity_defect(&gram(&b, &b, &q).map_err(err)?));
    }
    ensure(worst <= 1e-8, format!("max |G - I| = {worst:.2e}"))?;
    budget(start, Duration::from_secs(10), format!("max |G - I| = {worst:.2e}"))
}

fn norm_of(c: &[Complex64], fs: &[BasisFunction], q: &polytoeplitz::numerics::Quadrature) -> Result<f64, String> {
    let g = gram(fs, fs, q).map_err(err)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, ck) in c.iter().enumerate() {
        for (l, cl) in c.iter().enumerate() {
            acc += ck.conj() * g[(k, l)] * cl;
        }
    }
    Ok(acc.re.sqrt())
}

fn isometry_constants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = geometry_for(SpaceKind::FockPlane).auto_quadrature(8, 4).map_err(err)?;
    let mut worst = 0.0f64;
    for k in 1..5u32 {
        let lower = true_poly_basis(SpaceSpec::true_poly(SpaceKind::FockPlane, k), 8).map_err(err)?;
        for n in k + 1..=5 {
            let mut raised = lower.clone();
            for _ in k..n {
                raised = raised
                    .iter()
                    .map(|b| creation_apply(SpaceKind::FockPlane, b))
                    .collect::<Result<_, _>>()
                    .map_err(err)?;
            }
            let want = ((k..n).map(f64::from).product::<f64>()).sqrt();
            for _ in 0..3 {
                let c: Vec<Complex64> = (0..8)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let ratio = norm_of(&c, &raised, &q)? / norm_of(&c, &lower, &q)?;
                worst = worst.max((ratio - want).abs());
            }
        }
    }
    ensure(worst <= 1e-8, format!("max |ratio - sqrt((n-1)!/(k-1)!)| = {worst:.2e}"))
}

fn cross_gram(kind: SpaceKind, a: &[BasisFunction], b: &[BasisFunction], p: u32) -> Result<f64, String> {
    let q = geometry_for(kind).auto_quadrature(8, p).map_err(err)?;
    Ok(gram(a, b, &q).map_err(err)?.max_abs())
}

fn orthogonal_decompositions() -> Outcome {
    let mut worst = [0.0f64; 3];
    for (slot, kind) in [(0, SpaceKind::FockPlane), (1, SpaceKind::Disk), (2, SpaceKind::HalfPlane)] {
        let bases: Vec<Vec<BasisFunction>> = (1..=3)
            .map(|j| true_poly_basis(SpaceSpec::true_poly(kind, j), 8))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        if kind == SpaceKind::HalfPlane {
            for j in 1..=3u32 {
                let anti = anti_true_poly_basis(SpaceSpec::true_poly(kind, j), 8).map_err(err)?;
                for b in &bases {
                    worst[slot] = worst[slot].max(cross_gram(kind, b, &anti, 2)?);
                }
            }
        } else {
            for a in 0..3 {
                for b in a + 1..3 {
                    worst[slot] = worst[slot].max(cross_gram(kind, &bases[a], &bases[b], 2)?);
                }
            }
        }
    }
    let m = worst.iter().copied().fold(0.0, f64::max);
    ensure(
        m <= 1e-6,
        format!("fock {:.1e}, disk {:.1e}, half-plane poly/anti {:.1e}", worst[0], worst[1], worst[2]),
    )
}

fn fock_reduction() -> Outcome {
    let start = Instant::now();
    let d1 = derive_fock_reducer(1).map_err(err)?.pretty();
    ensure(d1 == "1 + (1/4)Δ", format!("D_1 printed as {d1}"))?;
    let mut worst = 0.0f64;
    for q in 1..=2 {
        for s in ["const:1", "poly:0,1", "gauss:1"] {
            let r = check_reduction(SpaceKind::FockPlane, q, &parse_symbol(s).map_err(err)?, 8, 1e-6).map_err(err)?;
            worst = worst.max(r.raw_max_abs_diff);
        }
    }
    ensure(worst <= 1e-6, format!("D_1 = {d1}; max |lhs - rhs| = {worst:.2e}"))?;
    budget(start, Duration::from_secs(30), format!("D_1 = {d1}; max |lhs - rhs| = {worst:.2e}"))
}

fn halfplane_reduction() -> Outcome {
    let bump = parse_symbol("bump:0,1,0.5").map_err(err)?;
    let mut diff = 0.0f64;
    let mut spread = 0.0f64;
    let mut scales = Vec::new();
    for j in 1..=2 {
        let r = check_reduction(SpaceKind::HalfPlane, j, &bump, 6, 1e-5).map_err(err)?;
        diff = diff.max(r.max_abs_diff);
        spread = spread.max(r.scale_spread);
        scales.push(format!("{:.6}", r.scale.re));
    }
    ensure(
        diff <= 1e-5 && spread <= 1e-5,
        format!("scales [{}], max diff {diff:.2e}, scale spread {spread:.2e}", scales.join(", ")),
    )
}

fn disk_cosimilarity() -> Outcome {
    let mut worst = 0.0f64;
    for p in 1..=2 {
        for s in ["const:1", "poly:0,1", "bump:0.1,0.2,0.5"] {
            let r = check_reduction(SpaceKind::Disk, p, &parse_symbol(s).map_err(err)?, 8, 1e-6).map_err(err)?;
            worst = worst.max(r.raw_max_abs_diff);
        }
    }
    ensure(worst <= 1e-6, format!("max |lhs - rhs| = {worst:.2e}"))
}

fn weight_grading() -> Outcome {
    let mut bad = Vec::new();
    for j in 1..=3 {
        let k = derive_halfplane_reducer(j).map_err(err)?;
        if k.weights().iter().any(|w| *w != 0) {
            bad.push(format!("K_{j}"));
        }
        let m = derive_disk_reducer(j).map_err(err)?;
        if m.weights().iter().any(|w| *w != 0) {
            bad.push(format!("M_{j}"));
        }
    }
    for q in 1..=4 {
        let d = derive_fock_reducer(q).map_err(err)?;
        match d.laplacian_coeffs() {
            Some(cs) if cs.iter().all(|c| c.is_positive_real()) => {}
            _ => bad.push(format!("D_{q}")),
        }
    }
    let d4 = derive_fock_reducer(4).map_err(err)?.pretty();
    ensure(bad.is_empty(), format!("offending: {bad:?}; D_4 = {d4}"))
}

fn coderivative_roundtrip() -> Outcome {
    for k in 1..=4 {
        let c = coderivative_polys(k);
        if c.roundtrip() != DiffOpPoly::generator(Gen::D).pow(k) {
            return Err(format!("roundtrip differs from ∂^{k}"));
        }
    }
    Ok("exact for k = 1..4".into())
}

fn degeneracy() -> Outcome {
    let s = ToeplitzSymbol::from_symbol(SpaceKind::FockPlane, &parse_symbol("besselj0:2").map_err(err)?);
    let m = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 2), &s, 10, None).map_err(err)?;
    let max = m.entries.max_abs();
    ensure(max <= 1e-5, format!("max |entry| = {max:.2e}"))
}

fn compact_support_decay() -> Outcome {
    let start = Instant::now();
    let ind = ToeplitzSymbol::from_symbol(SpaceKind::Disk, &parse_symbol("indicator:0,0,0.5").map_err(err)?);
    let cfg = DecayConfig::default();
    let m = assemble(SpaceSpec::true_poly(SpaceKind::Disk, 2), &ind, 30, None).map_err(err)?;
    let d = spectrum(&m, &cfg).map_err(err)?;
    let msg = format!("disk slope {:.3}, R² {:.4}", d.slope, d.r2);
    ensure(d.window == (5, 20) && d.slope <= -0.5 && d.r2 >= 0.95, msg.clone())?;
    let ind = ToeplitzSymbol::from_symbol(SpaceKind::FockPlane, &parse_symbol("indicator:0,0,0.5").map_err(err)?);
    let m = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 2), &ind, 30, None).map_err(err)?;
    let f = spectrum(&m, &cfg).map_err(err)?;
    let msg = format!("{msg}; fock class {:?} (curvature {:.3})", f.class, f.curvature);
    ensure(f.class == DecayClass::Superexponential, msg.clone())?;
    budget(start, Duration::from_secs(60), msg)
}

fn truncated_norm(kind: SpaceKind, j: u32, spec: &str, n: usize) -> Result<f64, String> {
    let s = ToeplitzSymbol::from_symbol(kind, &parse_symbol(spec).map_err(err)?);
    let m = assemble(SpaceSpec::true_poly(kind, j), &s, n, None).map_err(err)?;
    spectral_norm(&m.orthonormal().map_err(err)?).map_err(err)
}

fn carleson_oracles() -> Outcome {
    let grid = ScanGrid::default();
    let fine = ScanGrid { refinement: 1, ..grid };
    let leb = MeasureData::lebesgue();
    let mut parts = Vec::new();
    for g in [&grid, &fine] {
        let c = carleson_constant(SpaceKind::Disk, &leb, 0, g, None).map_err(err)?;
        let k = c.constant.ok_or("Lebesgue flagged infinite")?;
        ensure((k / (PI / 4.0) - 1.0).abs() < 0.01, format!("Lebesgue constant {k}"))?;
        parts.push(format!("{k:.6}"));
    }
    let atom = carleson_constant(SpaceKind::Disk, &MeasureData::unit_atom(Complex64::new(0.0, 0.0)), 0, &grid, None)
        .map_err(err)?;
    let a = atom.constant.ok_or("atom flagged infinite")?;
    ensure((a / 2.25 - 1.0).abs() < 0.01, format!("atom constant {a}"))?;
    let fock = carleson_constant(SpaceKind::FockPlane, &leb, 2, &grid, Some(1.0)).map_err(err)?;
    ensure(fock.infinite, "Fock Lebesgue at k = 1 not flagged infinite".into())?;

    // predictor against the operators
    let coarse = ScanGrid {
        radial_levels: 100,
        angular: 32,
        ..grid
    };
    let mut notes = Vec::new();
    for (kind, j, spec) in [
        (SpaceKind::Disk, 2, "const:1"),
        (SpaceKind::Disk, 2, "poly:1,1"),
        (SpaceKind::HalfPlane, 2, "const:1"),
        (SpaceKind::Disk, 2, "bump:0,0,0.5"),
        (SpaceKind::Disk, 2, "indicator:0.2,0,0.3"),
        (SpaceKind::FockPlane, 2, "gauss:1"),
    ] {
        let nu = parse_symbol(spec).map_err(err)?.as_measure();
        let p = predict_poly_boundedness(kind, j, &nu, &coarse, Some(1.0)).map_err(err)?;
        match p.verdict {
            Verdict::Bounded => {
                let ns: Vec<f64> = [10, 20, 40]
                    .iter()
                    .map(|n| truncated_norm(kind, j, spec, *n))
                    .collect::<Result<_, _>>()?;
                let lo = ns.iter().copied().fold(f64::INFINITY, f64::min);
                let hi = ns.iter().copied().fold(0.0, f64::max);
                ensure(hi <= 1.1 * lo, format!("{spec} on {kind:?}: norms {ns:?}"))?;
                notes.push(format!("{spec}/{kind:?} bounded"));
            }
            Verdict::VanishingCompact => {
                let s = ToeplitzSymbol::from_symbol(kind, &parse_symbol(spec).map_err(err)?);
                let m = assemble(SpaceSpec::true_poly(kind, j), &s, 40, None).map_err(err)?;
                let sv = singular_values(&m.orthonormal().map_err(err)?).map_err(err)?;
                let last = *sv.values.last().unwrap_or(&0.0);
                ensure(last < 0.01 * sv.largest(), format!("{spec} on {kind:?}: s_40/s_1 = {}", last / sv.largest()))?;
                notes.push(format!("{spec}/{kind:?} compact"));
            }
            Verdict::NotBoundedByThisTest => return Err(format!("{spec} on {kind:?} not bounded")),
        }
    }
    Ok(format!(
        "Lebesgue {} (coarse, refined), atom {a:.6}, Fock k=1 infinite; {}",
        parts.join(", "),
        notes.join(", ")
    ))
}

fn cli_determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_polytoeplitz");
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/verify_fock.json");
    let dir = tempfile::tempdir().map_err(err)?;
    let mut reports = Vec::new();
    for run in ["a", "b"] {
        let out = dir.path().join(run);
        let status = Command::new(bin)
            .args(["verify", "--config", cfg, "--out"])
            .arg(&out)
            .status()
            .map_err(err)?;
        ensure(status.code() == Some(0), format!("run {run} exited with {status}"))?;
        reports.push(std::fs::read(out.join("verify.json")).map_err(err)?);
    }
    let text = String::from_utf8_lossy(&reports[0]);
    let checks = text.matches("\"name\"").count();
    ensure(
        reports[0] == reports[1] && checks >= 12,
        format!("{} bytes, identical = {}, {checks} checks", reports[0].len(), reports[0] == reports[1]),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("Fock orthonormality", fock_orthonormality),
        ("isometry constants", isometry_constants),
        ("orthogonal decompositions", orthogonal_decompositions),
        ("Fock reduction", fock_reduction),
        ("half-plane reduction", halfplane_reduction),
        ("disk cosimilarity", disk_cosimilarity),
        ("weight grading", weight_grading),
        ("coderivative roundtrip", coderivative_roundtrip),
        ("degeneracy", degeneracy),
        ("compact-support decay", compact_support_decay),
        ("Carleson oracles", carleson_oracles),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, msg) = match f() {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "criterion {:>2} {tag}: {name} ({msg}) [{:.2}s]",
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
