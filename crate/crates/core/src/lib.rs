//! Fast type-II/III cosine and sine transforms built on a rescaled
//! conjugate-pair split-radix FFT, with exact operation counting.
//!
//! Every kernel is written once against [`arith::Arith`]. Running it with
//! [`arith::Counting`] evaluates in `f64` and fills a [`flops::FlopLedger`];
//! running it with [`network::Tracer`] records a [`network::LinearNetwork`].

pub mod arith;
pub mod dct2;
pub mod error;
pub mod fft_complex;
pub mod fft_real;
pub mod flops;
pub mod network;
pub mod oracle;
pub mod scale;
pub mod trig_family;

pub use dct2::{
    dct2_classic, dct2_new, dct2_scaled, reorder_even_odd, unreorder_even_odd, DctAlgorithm,
    Normalization, ScaledDctOutput,
};
pub use error::{Result, TransformError};
pub use fft_complex::{fft_conjpair, fft_conjpair_with, fft_scaled, fft_scaled4, FftVariant};
pub use fft_real::{rfft_conjpair, rfft_conjpair_with, rfft_scaled, rfft_scaled4, HalfSpectrum};
pub use flops::FlopLedger;
pub use scale::{build_tables, scale, t_factor, ScaleTables};
pub use trig_family::{dct3_new, dst2_new, dst3_new, transform_new, TrigKind};
