//! Dense complex linear algebra primitives shared by every other module.

mod linalg;
mod matrix;
mod shape;

pub use linalg::{eig_hermitian, eigh, svd_real, RealMatrix, RealSvd, Spectrum};
pub use matrix::{kron, kron2, kron_vec, ComplexMatrix, ONE, ZERO};
pub use shape::{
    partial_trace_site, partial_transpose_raw, validate_density, DensityMatrix, SystemShape, DEFAULT_TOL,
};
