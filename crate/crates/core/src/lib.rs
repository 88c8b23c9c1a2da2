//! Exact computation of conformally invariant trilinear form data on the
//! sphere `S^(n-1)`: the singular set of the normalized kernel family, the
//! closed-form coefficients of the associated distribution families, the
//! Bernstein–Sato identity for the distance kernel, the diagonal linear
//! system and its solution-space dimensions, and the multiplicity
//! classification.

pub mod coefficients;
pub mod diag_system;
pub mod numerics;
pub mod parameter_space;
pub mod probes;
pub mod suites;

pub use coefficients::{CoeffValue, FamilyId, MultiIndex};
pub use diag_system::{dim_tri, dim_tri_diag};
pub use numerics::DEFAULT_PRECISION;
pub use parameter_space::{Ambient, GeometricParam, SpectralParam};
