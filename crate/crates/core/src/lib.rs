//! Hawkes processes whose excitation kernel is the Mittag-Leffler density.
//!
//! * [`mlf`]: Mittag-Leffler functions `E_β(-t^β)`, `E_{γ,δ}(-x)`, the
//!   density `f_β` and its exponential-mixture representation.
//! * [`process`]: conditional intensity, Ogata thinning, replications.
//! * [`analysis`]: expected intensity and counts by Laplace inversion,
//!   Bartlett spectrum, covariance transform.
//! * [`io`]: CSV/JSON for event sequences and curves.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar type.

// `!(x > 0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod grid;
pub mod io;
pub mod laplace;
pub mod mlf;
pub mod process;
pub mod quadrature;
pub mod scalar;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ModelParamsF64 = process::ModelParams<f64>;
pub type ModelParamsF32 = process::ModelParams<f32>;
pub type EventSequenceF64 = process::EventSequence<f64>;
pub type EventSequenceF32 = process::EventSequence<f32>;
pub type IntensityPathF64 = process::IntensityPath<f64>;
pub type IntensityPathF32 = process::IntensityPath<f32>;
pub type ThinningConfigF64 = process::ThinningConfig<f64>;
pub type ThinningConfigF32 = process::ThinningConfig<f32>;
pub type CurveGridF64 = grid::CurveGrid<f64>;
pub type CurveGridF32 = grid::CurveGrid<f32>;
pub type LaplaceInversionConfigF64 = laplace::LaplaceInversionConfig<f64>;
pub type LaplaceInversionConfigF32 = laplace::LaplaceInversionConfig<f32>;
pub type MlfArgF64 = mlf::MlfArg<f64>;
pub type MlfArgF32 = mlf::MlfArg<f32>;
pub type TwoParamIndexF64 = mlf::TwoParamIndex<f64>;
pub type TwoParamIndexF32 = mlf::TwoParamIndex<f32>;
