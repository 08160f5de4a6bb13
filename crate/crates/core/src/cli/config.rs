//! Flat JSON run configuration.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::carleson::ScanGrid;
use crate::error::invalid;
use crate::symbols::parse_symbol;
use crate::toeplitz::DecayConfig;
use crate::{Result, SpaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Reduce,
    Spectrum,
    Carleson,
    Bases,
}

/// Every field has a default, so `{}` is a valid config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub kind: SpaceKind,
    /// True order for `verify` (highest order checked), `spectrum` and
    /// `bases`; reducer index for `reduce`.
    pub j: u32,
    /// Symbol spec; `None` picks a smooth default for the space.
    pub symbol: Option<String>,
    #[serde(rename = "N")]
    pub n: usize,
    /// Overrides for the tensor rule; `None` sizes the rule automatically.
    pub radial_order: Option<usize>,
    pub angular_order: Option<usize>,
    /// Orthonormality, orthogonality and isometry checks.
    pub tolerance: f64,
    /// Reduction identities, relative to `1 + max |entry|`.
    pub reduction_tolerance: f64,
    pub zero_threshold: f64,
    pub decay_window: [usize; 2],
    /// Derivative order of the Carleson quotient, a multiple of 1/2.
    pub k: f64,
    pub fock_radius: f64,
    pub vanishing_fraction: f64,
    pub carleson_radial_levels: usize,
    pub carleson_boundary_levels: usize,
    pub carleson_angular: usize,
    pub carleson_refinement: u32,
    /// Not part of the hashed config: reports must not depend on where they go.
    #[serde(skip_serializing)]
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        let grid = ScanGrid::default();
        Self {
            command: Command::Verify,
            kind: SpaceKind::FockPlane,
            j: 3,
            symbol: None,
            n: 10,
            radial_order: None,
            angular_order: None,
            tolerance: 1e-8,
            reduction_tolerance: 1e-6,
            zero_threshold: 1e-6,
            decay_window: [5, 20],
            k: 0.0,
            fock_radius: 1.0,
            vanishing_fraction: crate::carleson::DEFAULT_VANISHING_FRACTION,
            carleson_radial_levels: grid.radial_levels,
            carleson_boundary_levels: grid.boundary_levels,
            carleson_angular: grid.angular,
            carleson_refinement: grid.refinement,
            out_dir: PathBuf::from("out"),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive and finite, got {v}")))
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let name = if path == "." { "config".to_string() } else { path };
            invalid(name, e.into_inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid("N", format!("must be >= 2, got {}", self.n)));
        }
        if self.j == 0 {
            return Err(invalid("j", "must be >= 1"));
        }
        for (name, v) in [
            ("tolerance", self.tolerance),
            ("reduction_tolerance", self.reduction_tolerance),
            ("zero_threshold", self.zero_threshold),
            ("fock_radius", self.fock_radius),
            ("vanishing_fraction", self.vanishing_fraction),
        ] {
            positive(name, v)?;
        }
        if self.radial_order == Some(0) {
            return Err(invalid("radial_order", "must be >= 1"));
        }
        if self.angular_order == Some(0) {
            return Err(invalid("angular_order", "must be >= 1"));
        }
        let [lo, hi] = self.decay_window;
        if lo == 0 || hi <= lo {
            return Err(invalid("decay_window", "need 1 <= lo < hi"));
        }
        if !(self.k >= 0.0 && (2.0 * self.k).fract() == 0.0) {
            return Err(invalid("k", "must be a nonnegative multiple of 1/2"));
        }
        if self.carleson_radial_levels == 0 || self.carleson_angular == 0 {
            return Err(invalid("carleson_radial_levels", "scan grid must be nonempty"));
        }
        if let Some(s) = &self.symbol {
            parse_symbol(s).map_err(|e| invalid("symbol", e.to_string()))?;
        }
        Ok(())
    }

    /// Symbol spec in force, defaulting to a smooth symbol suited to the space.
    pub fn symbol_spec(&self) -> String {
        self.symbol.clone().unwrap_or_else(|| {
            match self.kind {
                SpaceKind::Disk => "bump:0,0,0.5",
                SpaceKind::HalfPlane => "bump:0,1,0.5",
                SpaceKind::FockPlane => "gauss:1",
            }
            .to_string()
        })
    }

    pub fn decay(&self) -> DecayConfig {
        DecayConfig {
            window: (self.decay_window[0], self.decay_window[1]),
            zero_threshold: self.zero_threshold,
            ..DecayConfig::default()
        }
    }

    pub fn grid(&self) -> ScanGrid {
        ScanGrid {
            radial_levels: self.carleson_radial_levels,
            boundary_levels: self.carleson_boundary_levels,
            angular: self.carleson_angular,
            refinement: self.carleson_refinement,
            ..ScanGrid::default()
        }
    }

    /// Canonical JSON of the effective config (defaults filled in).
    pub fn canonical(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
