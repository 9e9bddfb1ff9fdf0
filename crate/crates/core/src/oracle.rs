//! Direct `O(N^2)` reference transforms and error metrics.
//!
//! Twiddles are looked up per term by an exact integer phase, never
//! generated by a recurrence, and sums use an error-free product/sum
//! accumulation unless plain summation is requested.

use num_complex::Complex64;

use crate::dct2::Normalization;
use crate::scale::cos_sin_turns;
use crate::trig_family::TrigKind;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Summation {
    Plain,
    #[default]
    Compensated,
}

/// Selects one reference transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OracleConfig {
    pub summation: Summation,
    pub kind: TrigKind,
    pub normalization: Normalization,
}

impl OracleConfig {
    pub fn new(kind: TrigKind, normalization: Normalization) -> Self {
        Self {
            summation: Summation::Compensated,
            kind,
            normalization,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let (s, norm) = (self.summation, self.normalization);
        match self.kind {
            TrigKind::Dct2 => dct2_with(x, norm, s),
            TrigKind::Dct3 => dct3_with(x, norm, s),
            TrigKind::Dst2 => dst2_with(x, norm, s),
            TrigKind::Dst3 => dst3_with(x, norm, s),
        }
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Running dot product with a compensation term.
#[derive(Clone, Copy, Debug)]
struct Dot {
    mode: Summation,
    sum: f64,
    err: f64,
}

impl Dot {
    fn new(mode: Summation) -> Self {
        Self {
            mode,
            sum: 0.0,
            err: 0.0,
        }
    }

    #[inline]
    fn push(&mut self, a: f64, b: f64) {
        match self.mode {
            Summation::Plain => self.sum += a * b,
            Summation::Compensated => {
                let p = a * b;
                let perr = a.mul_add(b, -p);
                let (s, serr) = two_sum(self.sum, p);
                self.sum = s;
                self.err += perr + serr;
            }
        }
    }

    fn value(&self) -> f64 {
        self.sum + self.err
    }
}

/// `(cos, sin)` of `2 pi j / m` for `j = 0..m`.
fn phase_table(m: usize) -> Vec<(f64, f64)> {
    (0..m as u64).map(|j| cos_sin_turns(j, m as u64)).collect()
}

/// `X_k = sum x_n w_N^{nk}`, any `N`.
pub fn naive_dft(x: &[Complex64]) -> Vec<Complex64> {
    naive_dft_with(x, Summation::Compensated)
}

pub fn naive_dft_with(x: &[Complex64], mode: Summation) -> Vec<Complex64> {
    let n = x.len();
    let table = phase_table(n);
    (0..n)
        .map(|k| {
            let mut re = Dot::new(mode);
            let mut im = Dot::new(mode);
            for (j, z) in x.iter().enumerate() {
                // w^{jk} = cos - i sin
                let (c, s) = table[(j * k) % n];
                re.push(z.re, c);
                re.push(z.im, s);
                im.push(z.im, c);
                im.push(-z.re, s);
            }
            Complex64::new(re.value(), im.value())
        })
        .collect()
}

/// `2 sum x_n f(phase(n, k) / 4N)` where `f` is cos or sin.
fn trig_sum(
    x: &[f64],
    outputs: impl Iterator<Item = usize>,
    phase: impl Fn(usize, usize) -> usize,
    use_sin: bool,
    mode: Summation,
) -> Vec<f64> {
    let m = 4 * x.len();
    let table = phase_table(m);
    outputs
        .map(|k| {
            let mut dot = Dot::new(mode);
            for (n, &v) in x.iter().enumerate() {
                let (c, s) = table[phase(n, k) % m];
                dot.push(v, if use_sin { s } else { c });
            }
            2.0 * dot.value()
        })
        .collect()
}

pub fn naive_dct2(x: &[f64], norm: Normalization) -> Vec<f64> {
    dct2_with(x, norm, Summation::Compensated)
}

pub fn naive_dct3(x: &[f64], norm: Normalization) -> Vec<f64> {
    dct3_with(x, norm, Summation::Compensated)
}

pub fn naive_dst2(x: &[f64], norm: Normalization) -> Vec<f64> {
    dst2_with(x, norm, Summation::Compensated)
}

pub fn naive_dst3(x: &[f64], norm: Normalization) -> Vec<f64> {
    dst3_with(x, norm, Summation::Compensated)
}

/// `C_k = 2 sum x_n cos(pi (2n + 1) k / 2N)`, then the output gain.
fn dct2_with(x: &[f64], norm: Normalization, mode: Summation) -> Vec<f64> {
    let n = x.len();
    let mut c = trig_sum(x, 0..n, |j, k| (2 * j + 1) * k, false, mode);
    for (k, v) in c.iter_mut().enumerate() {
        *v *= norm.gain(n, k);
    }
    c
}

/// Transpose of [`dct2_with`]: the gain moves onto the inputs.
fn dct3_with(x: &[f64], norm: Normalization, mode: Summation) -> Vec<f64> {
    let n = x.len();
    let xs: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(j, &v)| v * norm.gain(n, j))
        .collect();
    trig_sum(&xs, 0..n, |j, k| j * (2 * k + 1), false, mode)
}

/// `S_k = 2 sum x_n sin(pi (2n + 1) k / 2N)` for `k = 1..=N`, gain with
/// the special index at `k = N`.
fn dst2_with(x: &[f64], norm: Normalization, mode: Summation) -> Vec<f64> {
    let n = x.len();
    let mut s = trig_sum(x, 1..n + 1, |j, k| (2 * j + 1) * k, true, mode);
    for (slot, v) in s.iter_mut().enumerate() {
        *v *= norm.gain(n, n - 1 - slot);
    }
    s
}

/// `S^T_k = 2 sum_{m=1..N} x_m sin(pi m (2k + 1) / 2N)` with `x_m` in slot `m - 1`.
fn dst3_with(x: &[f64], norm: Normalization, mode: Summation) -> Vec<f64> {
    let n = x.len();
    let xs: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(slot, &v)| v * norm.gain(n, n - 1 - slot))
        .collect();
    trig_sum(&xs, 0..n, |j, k| (j + 1) * (2 * k + 1), true, mode)
}

/// Length-`4N` real-even extension with zeros at even indices:
/// `e_{2n+1} = e_{4N-2n-1} = x_n`.
pub fn embed_4n(x: &[f64]) -> Vec<Complex64> {
    let m = 4 * x.len();
    let mut e = vec![Complex64::new(0.0, 0.0); m];
    for (n, &v) in x.iter().enumerate() {
        e[2 * n + 1] = Complex64::new(v, 0.0);
        e[m - 2 * n - 1] = Complex64::new(v, 0.0);
    }
    e
}

/// Relative errors of a computed vector against a reference.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ErrorMetrics {
    /// `max |g - w| / max |w|`
    pub max_rel: f64,
    /// `sqrt(sum |g - w|^2 / sum |w|^2)`
    pub rms_rel: f64,
}

impl ErrorMetrics {
    fn from_parts(max_diff: f64, max_ref: f64, sum_diff: f64, sum_ref: f64) -> Self {
        if max_ref == 0.0 {
            let bad = if max_diff == 0.0 { 0.0 } else { f64::INFINITY };
            return Self {
                max_rel: bad,
                rms_rel: bad,
            };
        }
        Self {
            max_rel: max_diff / max_ref,
            rms_rel: (sum_diff / sum_ref).sqrt(),
        }
    }

    /// Componentwise worst of two metrics.
    pub fn max(self, other: Self) -> Self {
        Self {
            max_rel: self.max_rel.max(other.max_rel),
            rms_rel: self.rms_rel.max(other.rms_rel),
        }
    }
}

pub fn compare_real(got: &[f64], want: &[f64]) -> ErrorMetrics {
    assert_eq!(got.len(), want.len());
    let (mut max_diff, mut max_ref, mut sum_diff, mut sum_ref) = (0.0f64, 0.0f64, 0.0, 0.0);
    for (&g, &w) in got.iter().zip(want) {
        let d = (g - w).abs();
        max_diff = max_diff.max(d);
        max_ref = max_ref.max(w.abs());
        sum_diff += d * d;
        sum_ref += w * w;
    }
    ErrorMetrics::from_parts(max_diff, max_ref, sum_diff, sum_ref)
}

pub fn compare_complex(got: &[Complex64], want: &[Complex64]) -> ErrorMetrics {
    assert_eq!(got.len(), want.len());
    let (mut max_diff, mut max_ref, mut sum_diff, mut sum_ref) = (0.0f64, 0.0f64, 0.0, 0.0);
    for (&g, &w) in got.iter().zip(want) {
        let d = (g - w).norm();
        max_diff = max_diff.max(d);
        max_ref = max_ref.max(w.norm());
        sum_diff += d * d;
        sum_ref += w.norm_sqr();
    }
    ErrorMetrics::from_parts(max_diff, max_ref, sum_diff, sum_ref)
}

/// Least-squares fit of `error = c sqrt(log2 N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SqrtLogFit {
    pub c: f64,
    /// Sizes whose error exceeds `2 c sqrt(log2 N)`.
    pub outliers: Vec<usize>,
}

pub fn fit_sqrt_log(points: &[(usize, f64)]) -> SqrtLogFit {
    let basis = |n: usize| (n.max(2) as f64).log2().sqrt();
    let num: f64 = points.iter().map(|&(n, e)| e * basis(n)).sum();
    let den: f64 = points.iter().map(|&(n, _)| basis(n) * basis(n)).sum();
    let c = if den == 0.0 { 0.0 } else { num / den };
    let outliers = points
        .iter()
        .filter(|&&(n, e)| e > 2.0 * c * basis(n))
        .map(|&(n, _)| n)
        .collect();
    SqrtLogFit { c, outliers }
}
