//! Black-box macromodeling of high-speed-link transceivers with recurrent
//! networks, written from scratch on top of a small dense-math kernel.
//!
//! The pipeline: generate transient waveforms from the built-in channel
//! oracle (`channel_oracle`), window and normalize them (`training`), fit a
//! stacked recurrent network (`cells`) wired either as an output-feedback
//! NARX model or as an Elman network (`topology`), then predict long
//! waveforms and fold eye diagrams (`analysis`).
//!
//! The math kernel and the cells are generic over the scalar type (any
//! [`mathkit::Real`]); the training pipeline and all file formats are pinned
//! to `f64` so that checkpoint round trips and re-runs are bit-exact.

pub mod analysis;
pub mod cells;
pub mod channel_oracle;
pub mod mathkit;
pub mod topology;
pub mod training;

/// Concrete `f64` matrix, the type the training pipeline runs on.
pub type Matrix64 = mathkit::Matrix<f64>;
/// Concrete `f32` matrix, for callers that trade precision for memory.
pub type Matrix32 = mathkit::Matrix<f32>;
/// Concrete `f64` stacked network.
pub type Network64 = cells::StackedNetwork<f64>;
/// Concrete `f64` gradient set.
pub type Gradients64 = cells::Gradients<f64>;
