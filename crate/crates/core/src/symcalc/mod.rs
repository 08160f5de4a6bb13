//! Exact operator algebra and the reduction operators derived with it.

pub mod algebra;
pub mod apply;
pub mod coderivative;
pub mod coeff;
pub mod reducer;

pub use apply::apply_reducer;
pub use algebra::{normal_order, DiffOpPoly, Gen, Mono, Mult, MultPoly, NormalKey};
pub use coderivative::{coderivative_polys, Coderivative};
pub use coeff::Coeff;
pub use reducer::{
    derive_disk_reducer, derive_fock_reducer, derive_fock_reducer_weighted,
    derive_for_power, derive_halfplane_reducer, picture, Picture, ReducerResult, ReducerTerm,
};
