pub mod carleson;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod spaces;
pub mod symbols;
pub mod symcalc;
pub mod toeplitz;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceKind {
    Disk,
    HalfPlane,
    FockPlane,
}
