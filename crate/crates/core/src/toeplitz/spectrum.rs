//! s-numbers, decay classification and zero/rank tests.

use serde::{Deserialize, Serialize};

use super::ToeplitzMatrix;
use crate::error::invalid;
use crate::numerics::{singular_values, SpectralData};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecayClass {
    Exponential,
    Superexponential,
    Slow,
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayConfig {
    /// 1-based index window `[lo, hi]`, clipped to `N - 2`.
    pub window: (usize, usize),
    pub zero_threshold: f64,
    pub min_r2: f64,
    pub max_slope: f64,
    /// Mean second difference of `log s_n` at or below this is read as
    /// accelerating decay.
    pub max_curvature: f64,
}

impl Default for DecayConfig {
    fn default() -> Self {
        Self {
            window: (5, 20),
            zero_threshold: 1e-6,
            min_r2: 0.95,
            max_slope: -0.3,
            max_curvature: -0.05,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub svalues: SpectralData,
    pub window: (usize, usize),
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub curvature: f64,
    pub class: DecayClass,
}

/// Floor for logarithms of vanishing s-numbers.
const LOG_FLOOR: f64 = 1e-300;

fn fit(ns: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let m = ns.len() as f64;
    let mx = ns.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = ns.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = ns.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 0.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}

/// Decay analysis of given s-numbers.
pub fn classify_values(svalues: SpectralData, cfg: &DecayConfig) -> Result<DecayReport> {
    let n = svalues.values.len();
    let hi = cfg.window.1.min(n.saturating_sub(2));
    let lo = cfg.window.0.max(1);
    if hi < lo + 2 {
        return Err(invalid(
            "window",
            format!("window [{}, {}] does not fit N = {n}", cfg.window.0, cfg.window.1),
        ));
    }
    let ns: Vec<f64> = (lo..=hi).map(|i| i as f64).collect();
    let ys: Vec<f64> = (lo..=hi).map(|i| svalues.values[i - 1].max(LOG_FLOOR).ln()).collect();
    let (slope, intercept, r2) = fit(&ns, &ys);
    let second: Vec<f64> = ys.windows(3).map(|w| w[2] - 2.0 * w[1] + w[0]).collect();
    let curvature = second.iter().sum::<f64>() / second.len() as f64;
    let mut report = DecayReport {
        svalues,
        window: (lo, hi),
        slope,
        intercept,
        r2,
        curvature,
        class: DecayClass::Slow,
    };
    report.class = classify_decay(&report, cfg);
    Ok(report)
}

pub fn classify_decay(d: &DecayReport, cfg: &DecayConfig) -> DecayClass {
    if d.svalues.largest() <= cfg.zero_threshold {
        DecayClass::Zero
    } else if d.r2 >= cfg.min_r2 && d.slope <= cfg.max_slope {
        if d.curvature <= cfg.max_curvature {
            DecayClass::Superexponential
        } else {
            DecayClass::Exponential
        }
    } else {
        DecayClass::Slow
    }
}

/// s-numbers of the truncation (in an orthonormal frame) and their decay.
pub fn spectrum(m: &ToeplitzMatrix, cfg: &DecayConfig) -> Result<DecayReport> {
    classify_values(singular_values(&m.orthonormal()?)?, cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZeroRank {
    pub is_zero: bool,
    pub numerical_rank: usize,
    pub max_entry: f64,
}

/// Zero test relative to the symbol's size, and the number of s-numbers
/// above `zero_threshold · s₁`.
pub fn zero_rank_test(m: &ToeplitzMatrix, zero_threshold: f64) -> Result<ZeroRank> {
    let max_entry = m.entries.max_abs();
    let s = singular_values(&m.orthonormal()?)?;
    let s1 = s.largest();
    let numerical_rank = if s1 > 0.0 {
        s.values.iter().filter(|v| **v > zero_threshold * s1).count()
    } else {
        0
    };
    Ok(ZeroRank {
        is_zero: max_entry <= zero_threshold * m.symbol_scale,
        numerical_rank,
        max_entry,
    })
}

/// `n,s_n,log_s_n,class` rows.
pub fn sn_csv(d: &DecayReport) -> String {
    let mut out = String::from("n,s_n,log_s_n,class\n");
    for (i, s) in d.svalues.values.iter().enumerate() {
        out.push_str(&format!("{},{:.17e},{:.17e},{:?}\n", i + 1, s, s.max(LOG_FLOOR).ln(), d.class));
    }
    out
}
