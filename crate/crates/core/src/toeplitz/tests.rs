use std::f64::consts::PI;

use num_complex::Complex64;

use super::*;
use crate::symbols::parse_symbol;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn func(spec: &str) -> ToeplitzSymbol {
    let Symbol::Function(f) = parse_symbol(spec).unwrap() else { panic!("{spec}") };
    ToeplitzSymbol::Function(f)
}

#[test]
fn fock_examples() {
    for j in 1..=3 {
        let m = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, j), &func("const:1"), 8, None).unwrap();
        assert!(m.entries.sub(&DenseMatrix::identity(8)).max_abs() < 1e-10, "j={j}");
    }
    let m = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 1), &func("poly:0,1"), 8, None).unwrap();
    let want = DenseMatrix::from_fn(8, 8, |k, l| c(if k == l { k as f64 + 1.0 } else { 0.0 }, 0.0));
    assert!(m.entries.sub(&want).max_abs() < 1e-10);
}

#[test]
fn atom_at_origin_is_rank_one() {
    let s = ToeplitzSymbol::from_symbol(SpaceKind::Disk, &parse_symbol("atom:0,0,1").unwrap());
    let m = assemble(SpaceSpec::true_poly(SpaceKind::Disk, 1), &s, 6, None).unwrap();
    assert!((m.entries[(0, 0)] - 1.0 / PI).norm() < 1e-15);
    assert!(m.entries.entries.iter().skip(1).all(|v| v.norm() < 1e-15));
    assert_eq!(zero_rank_test(&m, 1e-6).unwrap().numerical_rank, 1);
}

#[test]
fn zero_symbol() {
    let m = assemble(SpaceSpec::true_poly(SpaceKind::Disk, 2), &func("const:0"), 5, None).unwrap();
    assert!(zero_rank_test(&m, 1e-6).unwrap().is_zero);
}

#[test]
fn bessel_null_symbol_on_second_fock_level() {
    let m = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 2), &func("besselj0:2"), 10, None).unwrap();
    assert!(m.entries.max_abs() < 1e-10, "{:e}", m.entries.max_abs());
    assert!(zero_rank_test(&m, 1e-6).unwrap().is_zero);
    // the same symbol does not vanish on the analytic level
    let a = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 1), &func("besselj0:2"), 10, None).unwrap();
    assert!(a.entries.max_abs() > 0.1);
}

#[test]
fn hermitian_for_real_symbols() {
    for (kind, spec) in [
        (SpaceKind::Disk, "bump:0.2,0.1,0.5"),
        (SpaceKind::HalfPlane, "bump:0,1,0.5"),
        (SpaceKind::FockPlane, "gauss:1"),
    ] {
        let m = assemble(SpaceSpec::true_poly(kind, 2), &func(spec), 6, None).unwrap();
        assert!(m.real_symbol);
        assert!(m.entries.is_hermitian(1e-10), "{kind:?}");
    }
}

#[test]
fn truncation_is_stable() {
    let q = geometry_for(SpaceKind::FockPlane).auto_quadrature(40, 2).unwrap();
    let s = func("gauss:0.5");
    let small = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 2), &s, 6, Some(&q)).unwrap();
    let big = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 2), &s, 12, Some(&q)).unwrap();
    assert!(small.entries.sub(&big.entries.leading(6)).max_abs() < 1e-12);
}

#[test]
fn fock_reduction() {
    for q in 1..=2 {
        for spec in ["const:1", "poly:0,1", "gauss:1"] {
            let r = check_reduction(SpaceKind::FockPlane, q, &parse_symbol(spec).unwrap(), 8, 1e-6).unwrap();
            assert!(r.pass, "q={q} {spec}: diff {:e}", r.max_abs_diff);
            assert!((r.scale - 1.0).norm() < 1e-8, "{}", r.scale);
        }
    }
}

#[test]
fn halfplane_reduction() {
    let s = parse_symbol("bump:0,1,0.5").unwrap();
    for j in 1..=2 {
        let r = check_reduction(SpaceKind::HalfPlane, j, &s, 6, 1e-5).unwrap();
        eprintln!("K_{j}: scale {} spread {:e} diff {:e} raw {:e}", r.scale, r.scale_spread, r.max_abs_diff, r.raw_max_abs_diff);
        assert!(r.pass);
        assert!(r.scale_spread < 1e-5);
    }
}

#[test]
fn disk_reduction() {
    for spec in ["const:1", "poly:0,1", "bump:0.1,0.2,0.5"] {
        for j in 0..=2 {
            let r = check_reduction(SpaceKind::Disk, j, &parse_symbol(spec).unwrap(), 8, 1e-6).unwrap();
            eprintln!("disk {spec} j={j}: scale {} diff {:e} raw {:e}", r.scale, r.max_abs_diff, r.raw_max_abs_diff);
            assert!(r.pass);
        }
    }
}

#[test]
fn measure_reduction_matches_smooth_reduction() {
    // an atom pushed through D_1 against the closed form of the thrown derivatives
    let s = parse_symbol("atom:0.3,-0.2,1").unwrap();
    let r = check_reduction(SpaceKind::FockPlane, 1, &s, 6, 1e-9).unwrap();
    assert!(r.pass, "{:e}", r.max_abs_diff);
    let r = check_reduction(SpaceKind::Disk, 1, &parse_symbol("atom:0.1,0.4,2").unwrap(), 6, 1e-9).unwrap();
    assert!(r.pass, "{:e}", r.max_abs_diff);
    let r = check_reduction(SpaceKind::HalfPlane, 2, &parse_symbol("atom:0.1,0.8,1").unwrap(), 5, 1e-9).unwrap();
    assert!(r.pass, "{:e}", r.max_abs_diff);
    let r = check_reduction(SpaceKind::Disk, 1, &parse_symbol("indicator:0,0,0.5").unwrap(), 6, 1e-8).unwrap();
    assert!(r.pass, "{:e}", r.max_abs_diff);
}

#[test]
fn decay_classes() {
    let cfg = DecayConfig::default();
    let ind = func("indicator:0,0,0.5");
    let d1 = spectrum(&assemble(SpaceSpec::true_poly(SpaceKind::Disk, 1), &ind, 30, None).unwrap(), &cfg).unwrap();
    assert_eq!(d1.class, DecayClass::Exponential);
    assert!((d1.slope - 2.0 * 0.5f64.ln()).abs() < 1e-6, "{}", d1.slope);

    let d2 = spectrum(&assemble(SpaceSpec::true_poly(SpaceKind::Disk, 2), &ind, 30, None).unwrap(), &cfg).unwrap();
    eprintln!("disk j=2: slope {} r2 {} curv {} {:?}", d2.slope, d2.r2, d2.curvature, d2.class);
    assert!(d2.slope <= -0.5 && d2.r2 >= 0.95);

    let f2 = spectrum(&assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 2), &ind, 30, None).unwrap(), &cfg).unwrap();
    eprintln!("fock j=2: slope {} r2 {} curv {} {:?}", f2.slope, f2.r2, f2.curvature, f2.class);
    assert_eq!(f2.class, DecayClass::Superexponential);

    let one = spectrum(&assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 1), &func("const:1"), 12, None).unwrap(), &cfg).unwrap();
    assert_eq!(one.class, DecayClass::Slow);
    let zero = spectrum(&assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 1), &func("const:0"), 12, None).unwrap(), &cfg).unwrap();
    assert_eq!(zero.class, DecayClass::Zero);

    let small = assemble(SpaceSpec::true_poly(SpaceKind::FockPlane, 1), &func("const:1"), 4, None).unwrap();
    assert!(spectrum(&small, &cfg).is_err());
    assert!(sn_csv(&d1).lines().nth(1).unwrap().starts_with("1,"));
}
