//! Bessel functions of the first kind of integer order, and the radial
//! profiles `G_n(s) = J_n(λ√s) / (λ√s/2)^n` that close under `∂`, `∂̄`.

/// Above this argument the power series loses too many digits.
const SERIES_LIMIT: f64 = 12.0;

/// `Σ_k (-λ²s/4)^k / (k! (k+n)!)`.
fn g_series(n: u32, s: f64, lambda: f64) -> f64 {
    let t = -lambda * lambda * s / 4.0;
    let mut term: f64 = (1..=n).map(|m| 1.0 / m as f64).product();
    let mut acc = term;
    for k in 1..400u32 {
        term *= t / (k as f64 * (k + n) as f64);
        acc += term;
        if term.abs() <= 1e-17 * acc.abs() && k > 2 {
            break;
        }
    }
    acc
}

/// `J_n(x)` by Miller's backward recurrence, normalized with
/// `J_0 + 2 Σ J_{2k} = 1`.
fn bessel_j_miller(n: u32, x: f64) -> f64 {
    let n = n as usize;
    let start = n.max(x as usize) + 30 + (10.0 * x.sqrt()) as usize;
    let m = start + start % 2;
    let mut b_next = 0.0;
    let mut b = 1e-30;
    let mut ans = if m == n { b } else { 0.0 };
    let mut norm = 2.0 * b;
    for k in (1..=m).rev() {
        let prev = 2.0 * k as f64 / x * b - b_next;
        b_next = b;
        b = prev;
        let idx = k - 1;
        if idx == n {
            ans = b;
        }
        if idx % 2 == 0 {
            norm += if idx == 0 { b } else { 2.0 * b };
        }
        if b.abs() > 1e250 {
            b *= 1e-250;
            b_next *= 1e-250;
            ans *= 1e-250;
            norm *= 1e-250;
        }
    }
    ans / norm
}

pub fn bessel_j(n: u32, x: f64) -> f64 {
    let ax = x.abs();
    let sign = if x < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let v = if ax < SERIES_LIMIT {
        g_series(n, ax * ax, 1.0) * (ax / 2.0).powi(n as i32)
    } else {
        bessel_j_miller(n, ax)
    };
    sign * v
}

/// `G_n(s)` for `s = |z|² ≥ 0`; `G_0(|z|²) = J_0(λ|z|)`.
pub fn bessel_g(n: u32, s: f64, lambda: f64) -> f64 {
    let x = lambda.abs() * s.max(0.0).sqrt();
    if x < SERIES_LIMIT {
        g_series(n, s.max(0.0), lambda)
    } else {
        bessel_j_miller(n, x) / (x / 2.0).powi(n as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!(bessel_j(0, 2.404_825_557_695_773).abs() < 1e-15);
        assert!((bessel_j(1, 1.0) - 0.440_050_585_744_933_5).abs() < 1e-15);
        assert!((bessel_j(0, 20.0) - 0.167_024_664_340_583_1).abs() < 1e-13);
        assert!((bessel_j(0, 0.0) - 1.0).abs() < 1e-16);
        assert_eq!(bessel_j(3, 0.0), 0.0);
    }

    #[test]
    fn series_meets_recurrence() {
        for n in 0..6 {
            let a = g_series(n, 144.0, 1.0) * 6f64.powi(n as i32);
            let b = bessel_j_miller(n, 12.0);
            assert!((a - b).abs() < 1e-10, "n={n}: {a} vs {b}");
        }
        for x in [13.0, 20.0, 35.5] {
            for n in 1..6 {
                let lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
                let rhs = 2.0 * n as f64 / x * bessel_j(n, x);
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn g_profile_derivative() {
        // dG_n/ds = -(λ²/4) G_{n+1}
        let (lam, s, h) = (2.0, 0.7, 1e-6);
        for n in 0..3 {
            let fd = (bessel_g(n, s + h, lam) - bessel_g(n, s - h, lam)) / (2.0 * h);
            assert!((fd + lam * lam / 4.0 * bessel_g(n + 1, s, lam)).abs() < 1e-8);
        }
    }
}
