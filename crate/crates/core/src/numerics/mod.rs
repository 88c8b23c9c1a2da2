//! Exact and high-precision scalar arithmetic: rationals, Gaussian
//! rationals, structured exact scalars `q·2^(t/2)·π^(p/2)`, arbitrary-
//! precision complex floats, order-limited jets, Pochhammer symbols, and the
//! Γ family with exact-zero semantics for 1/Γ.

pub mod bigc;
pub mod bigfloat;
pub mod gamma;
pub mod jet;
pub mod rational;
pub mod structured;

pub use bigc::BigC;
pub use bigfloat::BigFloat;
pub use gamma::{
    bernoulli, digamma_bigc, gamma_bigc, gamma_half, pochhammer_bigc, pochhammer_crat,
    pochhammer_is_zero, pochhammer_rat, rgamma_bigc, rgamma_crat, rgamma_half, trigamma_bigc,
    PoleError, RGammaValue,
};
pub use jet::{Jet, TCoeff};
pub use rational::{rat, rati, CRat, Rat};
pub use structured::Structured;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;
