//! Flop ledgers and closed-form operation counts.
//!
//! A flop is one real addition/subtraction or one real multiplication.
//! Negation and multiplication by `±1` or `±i` are free, and loads, stores
//! and index arithmetic are never counted.
//!
//! The closed forms all carry rational coefficients with denominators
//! dividing 54, so they are evaluated as `54 * f(N)` in integer arithmetic
//! and divided exactly at the end.

use std::fmt;
use std::ops::{Add, AddAssign, Sub};

use crate::error::{Result, TransformError};

/// Tally of real additions and real multiplications.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FlopLedger {
    pub adds: u64,
    pub mults: u64,
}

impl FlopLedger {
    pub const fn new(adds: u64, mults: u64) -> Self {
        Self { adds, mults }
    }

    pub const fn total(&self) -> u64 {
        self.adds + self.mults
    }
}

impl Add for FlopLedger {
    type Output = FlopLedger;

    fn add(self, rhs: FlopLedger) -> FlopLedger {
        FlopLedger::new(self.adds + rhs.adds, self.mults + rhs.mults)
    }
}

impl AddAssign for FlopLedger {
    fn add_assign(&mut self, rhs: FlopLedger) {
        self.adds += rhs.adds;
        self.mults += rhs.mults;
    }
}

impl Sub for FlopLedger {
    type Output = FlopLedger;

    fn sub(self, rhs: FlopLedger) -> FlopLedger {
        FlopLedger::new(self.adds - rhs.adds, self.mults - rhs.mults)
    }
}

impl fmt::Display for FlopLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} adds + {} mults = {}",
            self.adds,
            self.mults,
            self.total()
        )
    }
}

/// `(N, log2 N, (-1)^log2 N)` for a power of two `N > 1`.
fn params(n: usize) -> Result<(i128, i128, i128)> {
    if !n.is_power_of_two() {
        return Err(TransformError::NotPowerOfTwo(n));
    }
    if n < 2 {
        return Err(TransformError::TooShort { len: n, min: 2 });
    }
    let m = n.trailing_zeros() as i128;
    let sign = if m % 2 == 0 { 1 } else { -1 };
    Ok((n as i128, m, sign))
}

fn exact(numerator: i128, denominator: i128) -> u64 {
    assert_eq!(
        numerator % denominator,
        0,
        "closed form {numerator}/{denominator} is not integral"
    );
    let value = numerator / denominator;
    u64::try_from(value).expect("closed-form count is negative")
}

/// DCT-II count of the rescaled algorithm: `17/9 N lg N - 17/27 N - 1/9 (-1)^lg N lg N + 7/54 (-1)^lg N + 3/2`.
pub fn formula_new_dct2(n: usize) -> Result<u64> {
    let (n, m, s) = params(n)?;
    Ok(exact(102 * n * m - 34 * n - 6 * s * m + 7 * s + 81, 54))
}

/// Previous-best DCT-II count `2N lg N - N + 2`.
pub fn formula_classic_dct2(n: usize) -> Result<u64> {
    let (n, m, _) = params(n)?;
    Ok(exact(2 * n * m - n + 2, 1))
}

/// Split-radix complex DFT count `4N lg N - 6N + 8`.
pub fn formula_splitradix_complex(n: usize) -> Result<u64> {
    let (n, m, _) = params(n)?;
    Ok(exact(4 * n * m - 6 * n + 8, 1))
}

/// Split-radix real-input DFT count `2N lg N - 4N + 6`.
pub fn formula_splitradix_real(n: usize) -> Result<u64> {
    let (n, m, _) = params(n)?;
    Ok(exact(2 * n * m - 4 * n + 6, 1))
}

/// Rescaled split-radix complex DFT count.
pub fn formula_new_fft_complex(n: usize) -> Result<u64> {
    let (n, m, s) = params(n)?;
    Ok(exact(
        102 * n * m - 124 * n - 54 * m - 6 * s * m + 16 * s + 216,
        27,
    ))
}

/// Multiplications saved by the unscaled rescaled FFT over split radix.
#[allow(non_snake_case)]
pub fn formula_M(n: usize) -> Result<u64> {
    let (n, m, s) = params(n)?;
    Ok(exact(6 * n * m - 38 * n + 54 * m + 6 * s * m - 16 * s, 27))
}

/// Multiplications saved by the `1/s_{N,k}`-scaled FFT over split radix.
#[allow(non_snake_case)]
pub fn formula_MS(n: usize) -> Result<u64> {
    let (n, m, s) = params(n)?;
    Ok(exact(6 * n * m - 20 * n + 6 * s * m - 7 * s + 27, 27))
}

/// Real-input rescaled FFT: `formula_splitradix_real(N) - M(N)/2`.
pub fn formula_new_fft_real(n: usize) -> Result<u64> {
    Ok(formula_splitradix_real(n)? - formula_M(n)? / 2)
}

/// Real-input `1/s_{N,k}`-scaled FFT: `formula_splitradix_real(N) - M_S(N)/2`.
pub fn formula_scaled_fft_real(n: usize) -> Result<u64> {
    Ok(formula_splitradix_real(n)? - formula_MS(n)? / 2)
}
