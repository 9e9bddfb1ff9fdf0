//! Real-input split-radix FFTs returning the half spectrum `k = 0..=N/2`.
//!
//! The loop runs over `k = 0..=N/8` only; each pass writes `X_k`,
//! `X_{N/4+k}`, `X_{N/4-k}` and `X_{N/2-k}`, sharing twiddles through
//! `w^{+-(N/4-k)} = -+i w^{-+k}` and conjugate symmetry of the sub-transforms.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::arith::{cadd, cscale, Arith, Counting, Cx};
use crate::error::{check_size, Result};
use crate::fft_complex::{twiddle_pair, FftVariant};
use crate::flops::FlopLedger;
use crate::scale::ScaleTables;

/// Bins `0..=N/2` of the DFT of a real signal of length `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfSpectrum {
    pub bins: Vec<Complex64>,
}

impl HalfSpectrum {
    /// Length of the transformed signal.
    pub fn signal_len(&self) -> usize {
        if self.bins.len() == 1 {
            1
        } else {
            2 * (self.bins.len() - 1)
        }
    }

    /// All `N` bins, filling `X_{N-k} = conj(X_k)`.
    pub fn to_full(&self) -> Vec<Complex64> {
        let n = self.signal_len();
        (0..n)
            .map(|k| {
                if k < self.bins.len() {
                    self.bins[k]
                } else {
                    self.bins[n - k].conj()
                }
            })
            .collect()
    }
}

fn real_rec<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    variant: FftVariant,
    x: &[A::Value],
    off: usize,
    stride: usize,
    n: usize,
) -> Vec<Cx<A::Value>> {
    let root = x.len();
    if n == 1 {
        let zero = a.constant(0.0);
        return vec![Cx::new(x[off], zero)];
    }
    if n == 2 {
        let x0 = x[off];
        let x1 = x[(off + stride) % root];
        let sum = a.add(x0, x1);
        let mut diff = a.sub(x0, x1);
        if variant == FftVariant::Scaled4 {
            diff = a.mul(tables.base4(), diff);
        }
        let zero = a.constant(0.0);
        return vec![Cx::new(sum, zero), Cx::new(diff, zero)];
    }

    let quarter = n / 4;
    let eighth = n / 8;
    let u = real_rec(a, tables, variant.half(), x, off, 2 * stride, n / 2);
    let q = variant.quarter();
    let z = real_rec(a, tables, q, x, (off + stride) % root, 4 * stride, quarter);
    let zp = real_rec(
        a,
        tables,
        q,
        x,
        (off + root - stride) % root,
        4 * stride,
        quarter,
    );

    let level = tables.level(n).expect("tables cover every recursion level");
    let scale = |a: &mut A, c: f64, z: Cx<A::Value>| cscale(a, c, z);
    let mut out = vec![u[0]; n / 2 + 1];

    // k = 0: every operand is real
    {
        let sum = a.add(z[0].re, zp[0].re);
        let diff = a.sub(z[0].re, zp[0].re);
        let x0 = a.add(u[0].re, sum);
        let mut xh = a.sub(u[0].re, sum);
        let mut xq = match variant {
            FftVariant::Scaled2 => {
                let d = a.mul(level.r2[0][1], diff);
                Cx::new(u[quarter].re, a.neg(d))
            }
            _ => Cx::new(u[quarter].re, a.neg(diff)),
        };
        if variant == FftVariant::Scaled4 {
            let q4 = level.q4[0];
            xh = a.mul(q4[2], xh);
            xq = scale(a, q4[1], xq);
        }
        let zero = a.constant(0.0);
        out[0] = Cx::new(x0, zero);
        out[n / 2] = Cx::new(xh, zero);
        out[quarter] = xq;
    }

    if n >= 8 {
        // k = N/8: Z and Z' sit at their Nyquist bins and are real
        let k = eighth;
        let mut p = a.add(z[k].re, zp[k].re);
        let mut q = a.sub(z[k].re, zp[k].re);
        match variant {
            FftVariant::Classic | FftVariant::Unscaled => {
                p = a.mul(FRAC_1_SQRT_2, p);
                q = a.mul(FRAC_1_SQRT_2, q);
            }
            FftVariant::Scaled2 => {
                let r = level.r2[k];
                p = a.mul(r[0], p);
                q = a.mul(r[1], q);
            }
            _ => {}
        }
        let uk = u[k];
        let mut lo = Cx::new(a.add(uk.re, p), a.sub(uk.im, q));
        let s = a.add(uk.im, q);
        let mut hi = Cx::new(a.sub(uk.re, p), a.neg(s));
        if variant == FftVariant::Scaled4 {
            let q4 = level.q4[k];
            lo = scale(a, q4[0], lo);
            hi = scale(a, q4[1], hi);
        }
        out[k] = lo;
        out[quarter + k] = hi;
    }

    for k in 1..eighth {
        let (sum, diff) = twiddle_pair(a, level, variant, k, z[k], zp[k]);
        let uk = u[k];
        let um = u[quarter - k];
        let mut x_k = cadd(a, uk, sum);
        let mut x_mirror = Cx::new(a.sub(uk.re, sum.re), a.sub(sum.im, uk.im));
        let s = a.add(um.im, diff.re);
        let mut x_up = Cx::new(a.add(um.re, diff.im), a.neg(s));
        let mut x_down = Cx::new(a.sub(um.re, diff.im), a.sub(um.im, diff.re));
        if variant == FftVariant::Scaled4 {
            let q4 = level.q4[k];
            x_k = scale(a, q4[0], x_k);
            x_up = scale(a, q4[1], x_up);
            x_mirror = scale(a, q4[2], x_mirror);
            x_down = scale(a, q4[3], x_down);
        }
        out[k] = x_k;
        out[n / 2 - k] = x_mirror;
        out[quarter + k] = x_up;
        out[quarter - k] = x_down;
    }
    out
}

/// Runs one real-input kernel over any [`Arith`] implementation. Bins 0 and
/// `N/2` carry the constant zero as imaginary part.
pub fn rfft_generic<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    variant: FftVariant,
    x: &[A::Value],
) -> Result<Vec<Cx<A::Value>>> {
    let n = x.len();
    check_size(n, 1)?;
    tables.level(n)?;
    Ok(real_rec(a, tables, variant, x, 0, 1, n))
}

fn run(
    x: &[f64],
    tables: &ScaleTables,
    variant: FftVariant,
    ledger: &mut FlopLedger,
) -> Result<HalfSpectrum> {
    let mut a = Counting::new(ledger);
    let bins = rfft_generic(&mut a, tables, variant, x)?;
    Ok(HalfSpectrum {
        bins: bins.into_iter().map(Complex64::from).collect(),
    })
}

/// Half spectrum by the plain real-input split-radix algorithm.
pub fn rfft_conjpair(x: &[f64], ledger: &mut FlopLedger) -> Result<HalfSpectrum> {
    check_size(x.len(), 1)?;
    let tables = ScaleTables::new(x.len())?;
    rfft_conjpair_with(x, &tables, ledger)
}

/// [`rfft_conjpair`] reusing prebuilt tables.
pub fn rfft_conjpair_with(
    x: &[f64],
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<HalfSpectrum> {
    run(x, tables, FftVariant::Classic, ledger)
}

/// Half spectrum divided by `s_{lN,k}`, `l` in `{0, 1, 2}`.
pub fn rfft_scaled(
    x: &[f64],
    level: u32,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<HalfSpectrum> {
    let variant = FftVariant::from_level(level)?;
    run(x, tables, variant, ledger)
}

/// Half spectrum divided by `s_{4N,k}`.
pub fn rfft_scaled4(
    x: &[f64],
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<HalfSpectrum> {
    run(x, tables, FftVariant::Scaled4, ledger)
}
