//! Quadrature and dense linear algebra.

pub mod gauss;
pub mod linalg;
pub mod quadrature;

pub use linalg::{
    cholesky, hermitian_eigen, orthonormal_frame, singular_values, spectral_norm, DenseMatrix, HermitianEigen,
    SpectralData,
};
pub use quadrature::{
    ball_quadrature, cayley, cayley_inverse, disk_quadrature, fock_quadrature, halfplane_boundary_quadrature,
    halfplane_quadrature, integrate, integrate_values, QuadDomain, QuadMeta, Quadrature,
};
