//! Complex-input conjugate-pair split-radix FFTs.
//!
//! Every kernel splits `x` into `x_{2n}`, `x_{4n+1}` and `x_{4n-1}` (indices
//! modulo `N`) and recombines with twiddles `w^k` and `w^-k`. The rescaled
//! variants divide output `k` by `s_{lN,k}` and replace the twiddles by
//! `t_{N,k}` so that most twiddle products cost 2 multiplications instead of 4.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::arith::{
    cadd, cmul, cmul_conj, cscale, csub, mul_one_minus_i, mul_one_plus_i, Arith, Counting, Cx,
};
use crate::error::{check_size, Result, TransformError};
use crate::flops::FlopLedger;
use crate::scale::{Level, ScaleTables};

/// Which member of the split-radix family a recursion step computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FftVariant {
    /// Plain conjugate-pair split radix.
    Classic,
    /// Rescaled sub-transforms, unscaled output.
    Unscaled,
    /// Output `k` divided by `s_{N,k}`.
    Scaled1,
    /// Output `k` divided by `s_{2N,k}`.
    Scaled2,
    /// Output `k` divided by `s_{4N,k}`.
    Scaled4,
}

impl FftVariant {
    /// Maps `l = 0, 1, 2` to the rescaled kernel dividing by `s_{lN,k}`.
    pub fn from_level(level: u32) -> Result<Self> {
        match level {
            0 => Ok(FftVariant::Unscaled),
            1 => Ok(FftVariant::Scaled1),
            2 => Ok(FftVariant::Scaled2),
            other => Err(TransformError::InvalidScaleLevel(other)),
        }
    }

    /// Kernel for the half-size sub-transform on `x_{2n}`.
    pub(crate) fn half(self) -> Self {
        match self {
            FftVariant::Classic => FftVariant::Classic,
            FftVariant::Unscaled => FftVariant::Unscaled,
            FftVariant::Scaled1 => FftVariant::Scaled2,
            FftVariant::Scaled2 => FftVariant::Scaled4,
            FftVariant::Scaled4 => FftVariant::Scaled2,
        }
    }

    /// Kernel for the two quarter-size sub-transforms.
    pub(crate) fn quarter(self) -> Self {
        match self {
            FftVariant::Classic => FftVariant::Classic,
            _ => FftVariant::Scaled1,
        }
    }

    /// `s_{mN,k}` divisor multiple `m`, with 0 meaning no division.
    pub fn divisor_multiple(self) -> usize {
        match self {
            FftVariant::Classic | FftVariant::Unscaled => 0,
            FftVariant::Scaled1 => 1,
            FftVariant::Scaled2 => 2,
            FftVariant::Scaled4 => 4,
        }
    }
}

/// Sum and difference of the twiddled quarter transforms,
/// `A = wZ + w*Z'` and `B = wZ - w*Z'`, with the folded scale ratios applied.
#[inline]
pub(crate) fn twiddle_pair<A: Arith>(
    a: &mut A,
    level: &Level,
    variant: FftVariant,
    k: usize,
    z: Cx<A::Value>,
    zp: Cx<A::Value>,
) -> (Cx<A::Value>, Cx<A::Value>) {
    match variant {
        FftVariant::Classic | FftVariant::Unscaled => {
            let w = if variant == FftVariant::Classic {
                level.omega[k]
            } else {
                level.w0[k]
            };
            let p = cmul(a, w, z);
            let q = cmul_conj(a, w, zp);
            (cadd(a, p, q), csub(a, p, q))
        }
        _ => {
            let t = level.t[k];
            let p = t.apply(a, z, false);
            let q = t.apply(a, zp, true);
            let sum = cadd(a, p, q);
            let diff = csub(a, p, q);
            if variant == FftVariant::Scaled2 {
                let r = level.r2[k];
                (cscale(a, r[0], sum), cscale(a, r[1], diff))
            } else {
                (sum, diff)
            }
        }
    }
}

fn complex_rec<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    variant: FftVariant,
    x: &[Cx<A::Value>],
    off: usize,
    stride: usize,
    out: &mut [Cx<A::Value>],
) {
    let n = out.len();
    let root = x.len();
    if n == 1 {
        out[0] = x[off];
        return;
    }
    if n == 2 {
        let x0 = x[off];
        let x1 = x[(off + stride) % root];
        out[0] = cadd(a, x0, x1);
        let d = csub(a, x0, x1);
        out[1] = if variant == FftVariant::Scaled4 {
            cscale(a, tables.base4(), d)
        } else {
            d
        };
        return;
    }

    let half = n / 2;
    let quarter = n / 4;
    {
        let (u, zs) = out.split_at_mut(half);
        let (z, zp) = zs.split_at_mut(quarter);
        complex_rec(a, tables, variant.half(), x, off, 2 * stride, u);
        let q = variant.quarter();
        complex_rec(a, tables, q, x, (off + stride) % root, 4 * stride, z);
        complex_rec(
            a,
            tables,
            q,
            x,
            (off + root - stride) % root,
            4 * stride,
            zp,
        );
    }

    let level = tables.level(n).expect("tables cover every recursion level");
    for k in 0..quarter {
        let u0 = out[k];
        let u1 = out[k + quarter];
        let z = out[half + k];
        let zp = out[half + quarter + k];

        let (sum, diff) = if k == 0 {
            let sum = cadd(a, z, zp);
            let diff = csub(a, z, zp);
            if variant == FftVariant::Scaled2 {
                (sum, cscale(a, level.r2[0][1], diff))
            } else {
                (sum, diff)
            }
        } else if 8 * k == n {
            let p = mul_one_minus_i(a, z);
            let q = mul_one_plus_i(a, zp);
            let sum = cadd(a, p, q);
            let diff = csub(a, p, q);
            match variant {
                FftVariant::Classic | FftVariant::Unscaled => (
                    cscale(a, FRAC_1_SQRT_2, sum),
                    cscale(a, FRAC_1_SQRT_2, diff),
                ),
                FftVariant::Scaled2 => {
                    let r = level.r2[k];
                    (cscale(a, r[0], sum), cscale(a, r[1], diff))
                }
                _ => (sum, diff),
            }
        } else {
            twiddle_pair(a, level, variant, k, z, zp)
        };

        let mut x0 = cadd(a, u0, sum);
        let mut x2 = csub(a, u0, sum);
        let mut x1 = Cx::new(a.add(u1.re, diff.im), a.sub(u1.im, diff.re));
        let mut x3 = Cx::new(a.sub(u1.re, diff.im), a.add(u1.im, diff.re));
        if variant == FftVariant::Scaled4 {
            let q = level.q4[k];
            if k != 0 {
                x0 = cscale(a, q[0], x0);
            }
            x1 = cscale(a, q[1], x1);
            x2 = cscale(a, q[2], x2);
            x3 = cscale(a, q[3], x3);
        }
        out[k] = x0;
        out[k + quarter] = x1;
        out[k + half] = x2;
        out[k + half + quarter] = x3;
    }
}

/// Runs one kernel over any [`Arith`] implementation.
pub fn fft_generic<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    variant: FftVariant,
    x: &[Cx<A::Value>],
) -> Result<Vec<Cx<A::Value>>> {
    let n = x.len();
    check_size(n, 1)?;
    tables.level(n)?;
    let mut out = x.to_vec();
    complex_rec(a, tables, variant, x, 0, 1, &mut out);
    Ok(out)
}

fn run(
    x: &[Complex64],
    tables: &ScaleTables,
    variant: FftVariant,
    ledger: &mut FlopLedger,
) -> Result<Vec<Complex64>> {
    let input: Vec<Cx<f64>> = x.iter().map(|&z| z.into()).collect();
    let mut a = Counting::new(ledger);
    let out = fft_generic(&mut a, tables, variant, &input)?;
    Ok(out.into_iter().map(Complex64::from).collect())
}

/// Unnormalized DFT by the plain conjugate-pair split-radix algorithm.
pub fn fft_conjpair(x: &[Complex64], ledger: &mut FlopLedger) -> Result<Vec<Complex64>> {
    check_size(x.len(), 1)?;
    let tables = ScaleTables::new(x.len())?;
    fft_conjpair_with(x, &tables, ledger)
}

/// [`fft_conjpair`] reusing prebuilt tables.
pub fn fft_conjpair_with(
    x: &[Complex64],
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<Complex64>> {
    run(x, tables, FftVariant::Classic, ledger)
}

/// DFT divided by `s_{lN,k}` for `l` in `{0, 1, 2}`; `l = 0` is the plain
/// DFT computed with rescaled sub-transforms.
pub fn fft_scaled(
    x: &[Complex64],
    level: u32,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<Complex64>> {
    let variant = FftVariant::from_level(level)?;
    run(x, tables, variant, ledger)
}

/// DFT divided by `s_{4N,k}`.
pub fn fft_scaled4(
    x: &[Complex64],
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<Complex64>> {
    run(x, tables, FftVariant::Scaled4, ledger)
}
