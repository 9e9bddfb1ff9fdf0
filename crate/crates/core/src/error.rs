use thiserror::Error;

pub type Result<T> = std::result::Result<T, TransformError>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("size {len} is below the minimum of {min}")]
    TooShort { len: usize, min: usize },
    #[error("odd length {0}")]
    OddLength(usize),
    #[error("index {index} is out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("scale level {0} is not one of 0, 1, 2")]
    InvalidScaleLevel(u32),
    #[error("tables built for size {built} cannot serve a size-{requested} transform")]
    TablesTooSmall { built: usize, requested: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Returns `log2(n)` when `n` is a power of two no smaller than `min`.
pub(crate) fn check_size(n: usize, min: usize) -> Result<u32> {
    if !n.is_power_of_two() {
        return Err(TransformError::NotPowerOfTwo(n));
    }
    if n < min {
        return Err(TransformError::TooShort { len: n, min });
    }
    Ok(n.trailing_zeros())
}
