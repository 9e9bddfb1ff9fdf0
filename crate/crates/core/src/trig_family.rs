//! DCT-III, DST-II and DST-III built from the fast DCT-II.
//!
//! The DCT-III runs the DCT-II output stage backwards and then evaluates the
//! transpose of the recorded `1/s_{N,k}`-scaled real FFT, so it costs exactly
//! what the DCT-II costs. The sine transforms are sign flips and reversals
//! around the cosine transforms, which are free.

use std::sync::Arc;

use crate::arith::{Arith, Counting, Cx};
use crate::dct2::{dct2_generic, DctAlgorithm, Normalization};
use crate::error::{check_size, Result};
use crate::fft_complex::FftVariant;
use crate::fft_real::rfft_generic;
use crate::flops::FlopLedger;
use crate::network::{record, CompiledNetwork, LinearNetwork, TraceError};
use crate::scale::ScaleTables;

/// The four transforms of the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrigKind {
    Dct2,
    Dct3,
    /// Output slot `j` holds `S_{j+1}`.
    Dst2,
    /// Input slot `j` holds `x_{j+1}`.
    Dst3,
}

impl TrigKind {
    pub const ALL: [TrigKind; 4] = [
        TrigKind::Dct2,
        TrigKind::Dct3,
        TrigKind::Dst2,
        TrigKind::Dst3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TrigKind::Dct2 => "dct2",
            TrigKind::Dct3 => "dct3",
            TrigKind::Dst2 => "dst2",
            TrigKind::Dst3 => "dst3",
        }
    }
}

/// Packs a half spectrum into `N` real lanes:
/// `Re Z_0, Re Z_1, Im Z_1, ..., Re Z_{N/2-1}, Im Z_{N/2-1}, Re Z_{N/2}`.
pub(crate) fn spectrum_lanes<V: Copy>(bins: &[Cx<V>]) -> Vec<V> {
    if bins.len() == 1 {
        return vec![bins[0].re];
    }
    let half = bins.len() - 1;
    let mut lanes = Vec::with_capacity(2 * half);
    lanes.push(bins[0].re);
    for z in &bins[1..half] {
        lanes.push(z.re);
        lanes.push(z.im);
    }
    lanes.push(bins[half].re);
    lanes
}

/// Network of the `1/s_{N,k}`-scaled real FFT with lane-packed outputs.
pub fn record_rfft_scaled(
    tables: &ScaleTables,
    n: usize,
) -> std::result::Result<LinearNetwork, TraceError> {
    record(n, |t, x| {
        let bins = rfft_generic(t, tables, FftVariant::Scaled1, x)?;
        Ok(spectrum_lanes(&bins))
    })
}

fn transposed_rfft(tables: &ScaleTables, n: usize) -> Result<Arc<CompiledNetwork>> {
    let slot = tables.transposed_slot(n)?;
    Ok(slot
        .get_or_init(|| {
            let net = record_rfft_scaled(tables, n).expect("the scaled real FFT is linear");
            Arc::new(net.transpose().compile())
        })
        .clone())
}

/// Fast DCT-III over any [`Arith`]; the transpose of the fast DCT-II.
pub fn dct3_generic<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    norm: Normalization,
    x: &[A::Value],
) -> Result<Vec<A::Value>> {
    let n = x.len();
    check_size(n, 2)?;
    let stage = &tables.level(n)?.dct;
    let twiddles = &stage.new[norm.index()];
    let ends = stage.ends[norm.index()];
    let half = n / 2;

    let end = |a: &mut A, c: Option<f64>, v: A::Value| match c {
        Some(c) => a.mul(c, v),
        None => v,
    };
    let mut lanes = vec![x[0]; n];
    lanes[0] = end(a, ends[0], x[0]);
    lanes[n - 1] = end(a, ends[1], x[half]);
    for k in 1..half {
        let w = twiddles[k];
        let p = a.mul(w.re, x[k]);
        let q = a.mul(w.im, x[n - k]);
        lanes[2 * k - 1] = a.sub(p, q);
        let r = a.mul(-w.im, x[k]);
        let s = a.mul(w.re, x[n - k]);
        lanes[2 * k] = a.sub(r, s);
    }

    let y = transposed_rfft(tables, n)?
        .run(a, &lanes)
        .expect("lane count matches the network");
    let mut out = y.clone();
    for k in 0..half {
        out[2 * k] = y[k];
        out[2 * k + 1] = y[n - 1 - k];
    }
    Ok(out)
}

/// DST-II over any [`Arith`]: a DCT-II of `(-1)^n x_n` read backwards.
pub fn dst2_generic<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    norm: Normalization,
    x: &[A::Value],
) -> Result<Vec<A::Value>> {
    let flipped: Vec<A::Value> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| if i % 2 == 1 { a.neg(v) } else { v })
        .collect();
    let mut c = dct2_generic(a, tables, DctAlgorithm::New, norm, &flipped)?;
    c.reverse();
    Ok(c)
}

/// DST-III over any [`Arith`]: a DCT-III of the reversed input with every
/// other output negated.
pub fn dst3_generic<A: Arith>(
    a: &mut A,
    tables: &ScaleTables,
    norm: Normalization,
    x: &[A::Value],
) -> Result<Vec<A::Value>> {
    let reversed: Vec<A::Value> = x.iter().rev().copied().collect();
    let c = dct3_generic(a, tables, norm, &reversed)?;
    Ok(c.into_iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { a.neg(v) } else { v })
        .collect())
}

/// DCT-III, `C^T_k = 2 sum x_n cos(pi n (k + 1/2) / N)` when two-sided.
pub fn dct3_new(
    x: &[f64],
    norm: Normalization,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<f64>> {
    dct3_generic(&mut Counting::new(ledger), tables, norm, x)
}

/// DST-II, `S_k = 2 sum x_n sin(pi (n + 1/2) k / N)` for `k = 1..=N` when
/// two-sided, with `S_k` in slot `k - 1`.
pub fn dst2_new(
    x: &[f64],
    norm: Normalization,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<f64>> {
    dst2_generic(&mut Counting::new(ledger), tables, norm, x)
}

/// DST-III, `S^T_k = 2 sum_{n=1..N} x_n sin(pi n (k + 1/2) / N)` when
/// two-sided, with `x_n` in slot `n - 1`.
pub fn dst3_new(
    x: &[f64],
    norm: Normalization,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<f64>> {
    dst3_generic(&mut Counting::new(ledger), tables, norm, x)
}

/// Runs the new fast algorithm for `kind`.
pub fn transform_new(
    kind: TrigKind,
    x: &[f64],
    norm: Normalization,
    tables: &ScaleTables,
    ledger: &mut FlopLedger,
) -> Result<Vec<f64>> {
    match kind {
        TrigKind::Dct2 => crate::dct2::dct2_new(x, norm, tables, ledger),
        TrigKind::Dct3 => dct3_new(x, norm, tables, ledger),
        TrigKind::Dst2 => dst2_new(x, norm, tables, ledger),
        TrigKind::Dst3 => dst3_new(x, norm, tables, ledger),
    }
}
