//! Discrete integrable operators, discrete Riemann–Hilbert problems and the
//! correlation kernels of poissonized Plancherel measures and z-measures.
//!
//! Every numerical routine is generic over [`Scalar`]; the aliases below fix
//! the scalar to `f64`.

// `!(x < limit)` is used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod correlations;
pub mod drhp;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod partitions;
pub mod resolvent;
pub mod scalar;
pub mod scaling;
pub mod specialfn;

pub use error::{Error, Result};
pub use scalar::{Cplx, Scalar};

pub type ThetaParams = kernels::ThetaParams<f64>;
pub type ZParams = kernels::ZParams<f64>;
pub type Window = resolvent::Window;
pub type WindowedOperator = resolvent::WindowedOperator<f64>;
pub type Mat2 = linalg::Mat2<f64>;
pub type DenseMatrix = linalg::DenseMatrix<f64>;
pub type LimitReport = scaling::LimitReport<f64>;
pub type RhoEstimate = correlations::RhoEstimate<f64>;
