//! Type-II DCT through a size-`N` real-input FFT of reordered data.
//!
//! The DCT-II of `x` is the first `N` outputs of a size-`4N` DFT of a
//! real-even, zero-interleaved extension of `x`. Pruning that DFT leaves one
//! real FFT `Z` of `x_0, x_2, ..., x_5, x_3, x_1` and an output stage
//! `C_k = 2 Re(w_{4N}^k Z_k)`, `C_{N-k} = -2 Im(w_{4N}^k Z_k)`.

use num_complex::Complex64;

use crate::arith::{Arith, Counting, Cx};
use crate::error::{check_size, Result, TransformError};
use crate::fft_complex::FftVariant;
use crate::fft_real::rfft_generic;
use crate::flops::FlopLedger;
use crate::scale::ScaleTables;

/// Output normalization of the cosine and sine transforms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `C_k = 2 sum x_n cos(pi (n + 1/2) k / N)`.
    #[default]
    TwoSided,
    /// Orthogonal: `2` replaced by `sqrt(2/N)`, and by `sqrt(1/N)` for `k = 0`.
    Unitary,
    /// [`Normalization::Unitary`] times `sqrt(N)`.
    UnitaryTimesSqrtN,
}

impl Normalization {
    pub const ALL: [Normalization; 3] = [
        Normalization::TwoSided,
        Normalization::Unitary,
        Normalization::UnitaryTimesSqrtN,
    ];

    pub(crate) fn index(self) -> usize {
        match self {
            Normalization::TwoSided => 0,
            Normalization::Unitary => 1,
            Normalization::UnitaryTimesSqrtN => 2,
        }
    }

    /// Factor taking output `k` of a size-`n` two-sided DCT-II to this
    /// normalization.
    pub fn gain(self, n: usize, k: usize) -> f64 {
        let two = if k == 0 { 1.0 } else { 2.0 };
        match self {
            Normalization::TwoSided => 1.0,
            Normalization::Unitary => (two / n as f64).sqrt() / 2.0,
            Normalization::UnitaryTimesSqrtN => f64::sqrt(two) / 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Normalization::TwoSided => "two-sided",
            Normalization::Unitary => "unitary",
            Normalization::UnitaryTimesSqrtN => "unitary-sqrt-n",
        }
    }
}

/// Output of [`dct2_scaled`]: `values[k] * scales[k]` is the two-sided `C_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledDctOutput {
    pub values: Vec<f64>,
    pub scales: Vec<f64>,
}

/// Which fast DCT-II to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DctAlgorithm {
    /// Plain real FFT with twiddles `2 w_{4N}^k`.
    Classic,
    /// `1/s_{N,k}`-scaled real FFT with twiddles `2 w_{4N}^k s_{N,k}`.
    New,
}

/// `x_0, x_2, ..., x_{N-2}, x_{N-1}, ..., x_3, x_1`.
pub fn reorder_even_odd<T: Copy>(x: &[T]) -> Result<Vec<T>> {
    let n = x.len();
    if !n.is_multiple_of(2) {
        return Err(TransformError::OddLength(n));
    }
    let mut y = x.to_vec();
    for i in 0..n / 2 {
        y[i] = x[2 * i];
        y[n - 1 - i] = x[2 * i + 1];
    }
    Ok(y)
}

/// Inverse of [`reorder_even_odd`].
pub fn unreorder_even_odd<T: Copy>(y: &[T]) -> Result<Vec<T>> {
    let n = y.len();
    if !n.is_multiple_of(2) {
        return Err(TransformError::OddLength(n));
    }
    let mut x = y.to_vec();
    for i in 0..n / 2 {
        x[2 * i] = y[i];
        x[2 * i + 1] = y[n - 1 - i];
    }
    Ok(x)
}

fn output_stage<A: Arith>(
    a: &mut A,
    twiddles: &[Complex64],
    ends: [Option<f64>; 2],
    z: &[Cx<A::Value>],
) -> Vec<A::Value> {
    let half = z.len() - 1;
    let n = 2 * half;
    let mut out = vec![z[0].re; n];
    let end = |a: &mut A, c: Option<f64>, v: A::Value| match c {
        Some(c) => a.mul(c, v),
        None => v,
    };
    out[0] = end(a, ends[0], z[0].re);
    out[half] = end(a, ends[1], z[half].re);
    for k in 1..half {
        let w = twiddles[k];
        let zk = z[k];
        let rr = a.mul(w.re, zk.re);
        let ii = a.mul(w.im, zk.im);
        out[k] = a.sub(rr, ii);
        let ir = a.mul(-w.im, zk.re);
        let ri = a.mul(w.re, zk.im);
        out[n - k] = a.sub(ir, ri);
    }
    out
}

/// Fast DCT-II over any [`Arith`] implementation.
pub fn dct2_generic<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    algorithm: DctAlgorithm,
    norm: Normalization,
    x: &[A::Value],
) -> Result<Vec<A::Value>> {
    let n = x.len();
    check_size(n, 2)?;
    let stage = &tables.level(n)?.dct;
    let y = reorder_even_odd(x)?;
    let (variant, twiddles) = match algorithm {
        DctAlgorithm::Classic => (FftVariant::Classic, &stage.classic[norm.index()]),
        DctAlgorithm::New => (FftVariant::Scaled1, &stage.new[norm.index()]),
    };
    let z = rfft_generic(a, tables, variant, &y)?;
    Ok(output_stage(a, twiddles, stage.ends[norm.index()], &z))
}

/// Scaled-output DCT-II over any [`Arith`]; returns `C_k / (2 s_{4N,k})`.
pub fn dct2_scaled_generic<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    x: &[A::Value],
) -> Result<Vec<A::Value>> {
    let n = x.len();
    check_size(n, 2)?;
    let stage = &tables.level(n)?.dct;
    let y = reorder_even_odd(x)?;
    let z = rfft_generic(a, tables, FftVariant::Scaled1, &y)?;
    let half = n / 2;
    let mut out = vec![z[0].re; n];
    out[half] = z[half].re;
    for k in 1..half {
        // t_{4N,k} = 1 - i tan
        let tan = stage.scaled_tan[k];
        let zk = z[k];
        let p = a.mul(tan, zk.im);
        out[k] = a.add(zk.re, p);
        let q = a.mul(tan, zk.re);
        out[n - k] = a.sub(q, zk.im);
    }
    Ok(out)
}

fn run(
    x: &[f64],
    tables: &ScaleTables,
    algorithm: DctAlgorithm,
    norm: Normalization,
    ledger: &mut FlopLedger,
) -> Result<Vec<f64>> {
    let mut a = Counting::new(ledger);
    dct2_generic(&mut a, tables, algorithm, norm, x)
}

/// DCT-II via the plain real-input split-radix FFT.
pub fn dct2_classic(
    x: &[f64],
    norm: Normalization,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<f64>> {
    run(x, tables, DctAlgorithm::Classic, norm, ledger)
}

/// DCT-II via the rescaled real-input FFT.
pub fn dct2_new(
    x: &[f64],
    norm: Normalization,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<f64>> {
    run(x, tables, DctAlgorithm::New, norm, ledger)
}

/// DCT-II with output `k` divided by `2 s_{4N,k}`, saving `N` multiplications.
pub fn dct2_scaled(
    x: &[f64],
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<ScaledDctOutput> {
    let mut a = Counting::new(ledger);
    let values = dct2_scaled_generic(&mut a, tables, x)?;
    let scales = tables.level(x.len())?.dct.scales.clone();
    Ok(ScaledDctOutput { values, scales })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flops::{formula_classic_dct2, formula_new_dct2};
    use std::f64::consts::SQRT_2;

    fn ledgers(n: usize, norm: Normalization) -> (FlopLedger, FlopLedger, FlopLedger) {
        let tables = ScaleTables::new(n).unwrap();
        let x = vec![0.25; n];
        let mut classic = FlopLedger::default();
        let mut new = FlopLedger::default();
        let mut scaled = FlopLedger::default();
        dct2_classic(&x, norm, &tables, &mut classic).unwrap();
        dct2_new(&x, norm, &tables, &mut new).unwrap();
        dct2_scaled(&x, &tables, &mut scaled).unwrap();
        (classic, new, scaled)
    }

    #[test]
    fn reorder_examples() {
        let x: Vec<usize> = (0..8).collect();
        assert_eq!(reorder_even_odd(&x).unwrap(), vec![0, 2, 4, 6, 7, 5, 3, 1]);
        assert_eq!(reorder_even_odd(&[4, 9]).unwrap(), vec![4, 9]);
        assert_eq!(
            unreorder_even_odd(&reorder_even_odd(&x).unwrap()).unwrap(),
            x
        );
        assert_eq!(
            reorder_even_odd(&[1, 2, 3]),
            Err(TransformError::OddLength(3))
        );
    }

    #[test]
    fn table_ledgers() {
        for m in 1..=12 {
            let n = 1usize << m;
            let (classic, new, scaled) = ledgers(n, Normalization::TwoSided);
            assert_eq!(classic.total(), formula_classic_dct2(n).unwrap(), "N={n}");
            assert_eq!(new.total(), formula_new_dct2(n).unwrap(), "N={n}");
            assert_eq!(scaled.adds, new.adds);
            assert_eq!(new.mults - scaled.mults, n as u64, "N={n}");
        }
    }

    #[test]
    fn normalization_costs() {
        for n in [2, 16, 256] {
            let (two_c, two_n, _) = ledgers(n, Normalization::TwoSided);
            let (uni_c, uni_n, _) = ledgers(n, Normalization::Unitary);
            let (sq_c, sq_n, _) = ledgers(n, Normalization::UnitaryTimesSqrtN);
            assert_eq!(two_c, uni_c);
            assert_eq!(two_n, uni_n);
            assert_eq!(two_c.total() - sq_c.total(), 2);
            assert_eq!(two_n.total() - sq_n.total(), 2);
        }
        let (sq_c, _, _) = ledgers(16, Normalization::UnitaryTimesSqrtN);
        assert_eq!(sq_c.total(), 2 * 16 * 4 - 16);
    }

    #[test]
    fn size_two_closed_form() {
        let tables = ScaleTables::new(2).unwrap();
        let mut ledger = FlopLedger::default();
        let c = dct2_new(&[3.0, 1.0], Normalization::TwoSided, &tables, &mut ledger).unwrap();
        assert_eq!(c[0], 8.0);
        assert!((c[1] - 2.0 * SQRT_2).abs() < 1e-15);
        assert_eq!(ledger.total(), 4);
    }

    #[test]
    fn zeros_and_scales() {
        let tables = ScaleTables::new(16).unwrap();
        let mut ledger = FlopLedger::default();
        let out = dct2_scaled(&[0.0; 16], &tables, &mut ledger).unwrap();
        assert!(out.values.iter().all(|&v| v == 0.0));
        assert!(out.scales.iter().all(|&s| s > 0.0));
        assert_eq!(out.scales[0], 2.0);
        let c = dct2_classic(&[0.0; 16], Normalization::Unitary, &tables, &mut ledger).unwrap();
        assert!(c.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn rejects_bad_sizes() {
        let tables = ScaleTables::new(16).unwrap();
        let mut ledger = FlopLedger::default();
        assert_eq!(
            dct2_new(&[1.0], Normalization::TwoSided, &tables, &mut ledger),
            Err(TransformError::TooShort { len: 1, min: 2 })
        );
        assert_eq!(
            dct2_new(&[1.0; 12], Normalization::TwoSided, &tables, &mut ledger),
            Err(TransformError::NotPowerOfTwo(12))
        );
        assert!(dct2_scaled(&[1.0; 32], &tables, &mut ledger).is_err());
    }
}
