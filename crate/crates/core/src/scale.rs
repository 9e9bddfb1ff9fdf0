//! Scale factors `s_{N,k}`, fused twiddles `t_{N,k}` and the precomputed
//! tables every kernel reads.
//!
//! `s_{N,k}` is 1 for `N <= 4`; otherwise, with `k4 = k mod N/4`, it is
//! `s_{N/4,k4} cos(2 pi k4/N)` when `k4 <= N/8` and `s_{N/4,k4} sin(2 pi k4/N)`
//! when `k4 > N/8`. Dividing sub-transform outputs by these factors turns the
//! twiddle `w_N^k` into `t_{N,k} = w_N^k s_{N/4,k} / s_{N,k}`, which always has
//! a unit real or unit imaginary part.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2, TAU};
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::arith::{Arith, Cx};
use crate::dct2::Normalization;
use crate::error::{check_size, Result, TransformError};
use crate::network::CompiledNetwork;

/// `(cos, sin)` of `2 pi num / den`, reduced to an angle in `[0, pi/4]`
/// before calling into libm.
pub fn cos_sin_turns(num: u64, den: u64) -> (f64, f64) {
    assert!(den > 0);
    let r = (num % den) as u128;
    let den128 = den as u128;
    let scaled = 8 * r;
    let octant = (scaled / den128) as u32;
    let rem = scaled - octant as u128 * den128;
    let (c, s) = if octant.is_multiple_of(2) {
        let phi = (rem as f64 / den as f64) * FRAC_PI_4;
        (phi.cos(), phi.sin())
    } else if rem == 0 {
        (FRAC_1_SQRT_2, FRAC_1_SQRT_2)
    } else {
        // pi/2 - phi with phi in (0, pi/4)
        let phi = ((den128 - rem) as f64 / den as f64) * FRAC_PI_4;
        (phi.sin(), phi.cos())
    };
    match octant / 2 {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

/// `w_n^k = exp(-2 pi i k / n)`.
pub fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let (c, s) = cos_sin_turns(k, n);
    Complex64::new(c, -s)
}

/// `tan(2 pi j / n)` for `0 <= j <= n/8`.
fn tan_turns(j: usize, n: usize) -> f64 {
    debug_assert!(8 * j <= n);
    if j == 0 {
        0.0
    } else if 8 * j == n {
        1.0
    } else {
        ((j as f64 / n as f64) * TAU).tan()
    }
}

fn scale_unchecked(n: usize, k: usize) -> f64 {
    if n <= 4 {
        return 1.0;
    }
    let quarter = n / 4;
    let k4 = k % quarter;
    let inner = scale_unchecked(quarter, k4);
    if 8 * k4 <= n {
        inner * cos_sin_turns(k4 as u64, n as u64).0
    } else {
        inner * cos_sin_turns((quarter - k4) as u64, n as u64).0
    }
}

/// `s_{n,k}` evaluated top-down from the recurrence.
pub fn scale(n: usize, k: usize) -> Result<f64> {
    check_size(n, 1)?;
    if k >= n {
        return Err(TransformError::IndexOutOfRange { index: k, size: n });
    }
    Ok(scale_unchecked(n, k))
}

/// A twiddle with one unit component, multiplied in 2 mults + 2 adds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UnitFactor {
    /// `1 - i tan`
    RealUnit(f64),
    /// `cot - i`
    ImagUnit(f64),
}

impl UnitFactor {
    pub fn value(self) -> Complex64 {
        match self {
            UnitFactor::RealUnit(tan) => Complex64::new(1.0, -tan),
            UnitFactor::ImagUnit(cot) => Complex64::new(cot, -1.0),
        }
    }

    /// `self * z`, or `conj(self) * z` when `conj` is set.
    #[inline]
    pub(crate) fn apply<A: Arith>(self, a: &mut A, z: Cx<A::Value>, conj: bool) -> Cx<A::Value> {
        match (self, conj) {
            (UnitFactor::RealUnit(tan), false) => {
                let p = a.mul(tan, z.im);
                let q = a.mul(tan, z.re);
                Cx::new(a.add(z.re, p), a.sub(z.im, q))
            }
            (UnitFactor::RealUnit(tan), true) => {
                let p = a.mul(tan, z.im);
                let q = a.mul(tan, z.re);
                Cx::new(a.sub(z.re, p), a.add(z.im, q))
            }
            (UnitFactor::ImagUnit(cot), false) => {
                let p = a.mul(cot, z.re);
                let q = a.mul(cot, z.im);
                Cx::new(a.add(p, z.im), a.sub(q, z.re))
            }
            (UnitFactor::ImagUnit(cot), true) => {
                let p = a.mul(cot, z.re);
                let q = a.mul(cot, z.im);
                Cx::new(a.sub(p, z.im), a.add(q, z.re))
            }
        }
    }
}

fn unit_factor_unchecked(n: usize, k: usize) -> UnitFactor {
    if 8 * k <= n {
        UnitFactor::RealUnit(tan_turns(k, n))
    } else {
        UnitFactor::ImagUnit(tan_turns(n / 4 - k, n))
    }
}

/// `t_{n,k}` in structural form, for `n >= 4` and `k < n/4`.
pub fn unit_factor(n: usize, k: usize) -> Result<UnitFactor> {
    check_size(n, 4)?;
    if k >= n / 4 {
        return Err(TransformError::IndexOutOfRange {
            index: k,
            size: n / 4,
        });
    }
    Ok(unit_factor_unchecked(n, k))
}

/// `t_{n,k} = w_n^k s_{n/4,k} / s_{n,k}`.
pub fn t_factor(n: usize, k: usize) -> Result<Complex64> {
    unit_factor(n, k).map(UnitFactor::value)
}

/// Tables for transforms of size up to `n`.
pub fn build_tables(n: usize) -> Result<ScaleTables> {
    ScaleTables::new(n)
}

/// Per-size constants of every kernel.
#[derive(Debug, Clone)]
pub(crate) struct Level {
    /// `w_n^k`, `k < n/4`.
    pub(crate) omega: Vec<Complex64>,
    /// `w_n^k s_{n/4,k}`, `k < n/4`.
    pub(crate) w0: Vec<Complex64>,
    /// `t_{n,k}`, `k < n/4`.
    pub(crate) t: Vec<UnitFactor>,
    /// `s_{n,k} / s_{2n,k}` and `s_{n,k} / s_{2n,k+n/4}`.
    pub(crate) r2: Vec<[f64; 2]>,
    /// `s_{n,k} / s_{4n,k+j n/4}` for `j = 0..4`.
    pub(crate) q4: Vec<[f64; 4]>,
    pub(crate) dct: DctStage,
}

/// Output-stage constants of a size-`n` DCT-II, normalization folded in.
#[derive(Debug, Clone)]
pub(crate) struct DctStage {
    /// `g_k 2 w_{4n}^k` for `k < n/2`, indexed by `Normalization::index`.
    pub(crate) classic: [Vec<Complex64>; 3],
    /// `g_k 2 w_{4n}^k s_{n,k}` for `k < n/2`.
    pub(crate) new: [Vec<Complex64>; 3],
    /// Multipliers of `Z_0` and `Z_{n/2}`; `None` when the factor is 1.
    pub(crate) ends: [[Option<f64>; 2]; 3],
    /// `tan(2 pi k / 4n)`, so that `t_{4n,k} = 1 - i tan`.
    pub(crate) scaled_tan: Vec<f64>,
    /// `2 s_{4n,k}` for `k < n`.
    pub(crate) scales: Vec<f64>,
}

/// Immutable constants for all transforms of size up to `size`.
///
/// Built once; kernels never evaluate trigonometric functions.
#[derive(Debug)]
pub struct ScaleTables {
    size: usize,
    /// `s[j][k] = s_{2^j, k}` for `k < max(2^j / 4, 1)`, up to `2^j = 4 size`.
    s: Vec<Vec<f64>>,
    levels: Vec<Level>,
    /// `1 / s_{8,1}`, the only nontrivial ratio of the size-2 base case.
    base4: f64,
    transposed: Vec<OnceLock<Arc<CompiledNetwork>>>,
}

impl ScaleTables {
    pub fn new(size: usize) -> Result<Self> {
        let log = check_size(size, 1)? as usize;

        // up to 4 size, and at least 8 for the size-2 base case
        let top = (log + 2).max(3);
        let mut s: Vec<Vec<f64>> = Vec::with_capacity(top + 1);
        for j in 0..=top {
            let n = 1usize << j;
            let len = (n / 4).max(1);
            let row = if n <= 4 {
                vec![1.0; len]
            } else {
                let quarter = n / 4;
                (0..len)
                    .map(|k| {
                        let inner = s[j - 2][k % (quarter / 4).max(1)];
                        if 8 * k <= n {
                            inner * cos_sin_turns(k as u64, n as u64).0
                        } else {
                            inner * cos_sin_turns((quarter - k) as u64, n as u64).0
                        }
                    })
                    .collect()
            };
            s.push(row);
        }

        let lookup = |n: usize, k: usize| -> f64 {
            let j = n.trailing_zeros() as usize;
            s[j][k % (n / 4).max(1)]
        };

        let levels = (0..=log)
            .map(|j| {
                let n = 1usize << j;
                let quarter = n / 4;
                let omega = (0..quarter)
                    .map(|k| root_of_unity(k as u64, n as u64))
                    .collect::<Vec<_>>();
                let w0 = (0..quarter)
                    .map(|k| omega[k] * lookup(quarter, k))
                    .collect();
                let t = (0..quarter).map(|k| unit_factor_unchecked(n, k)).collect();
                let r2 = (0..quarter)
                    .map(|k| {
                        let own = lookup(n, k);
                        [own / lookup(2 * n, k), own / lookup(2 * n, k + quarter)]
                    })
                    .collect();
                let q4 = (0..quarter)
                    .map(|k| {
                        let own = lookup(n, k);
                        [0, 1, 2, 3].map(|j| own / lookup(4 * n, k + j * quarter))
                    })
                    .collect();
                Level {
                    omega,
                    w0,
                    t,
                    r2,
                    q4,
                    dct: DctStage::new(n, &lookup),
                }
            })
            .collect();

        Ok(Self {
            size,
            base4: 1.0 / lookup(8, 1),
            s,
            levels,
            transposed: (0..=log).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Stored `s_{n,k}`, for `n <= 4 * size`.
    pub fn s(&self, n: usize, k: usize) -> Option<f64> {
        if !n.is_power_of_two() || k >= n {
            return None;
        }
        self.s
            .get(n.trailing_zeros() as usize)
            .map(|row| row[k % row.len()])
    }

    /// Stored `t_{n,k}` for `4 <= n <= size`, `k < n/4`.
    pub fn t(&self, n: usize, k: usize) -> Option<Complex64> {
        let level = self.level(n).ok()?;
        level.t.get(k).map(|t| t.value())
    }

    /// Output-stage products `2 w_{4N}^k s_{N,k}` of the root size, `k < N/2`.
    pub fn twiddle_dct(&self) -> &[Complex64] {
        &self.levels[self.levels.len() - 1].dct.new[Normalization::TwoSided.index()]
    }

    pub(crate) fn level(&self, n: usize) -> Result<&Level> {
        let j = check_size(n, 1)? as usize;
        self.levels.get(j).ok_or(TransformError::TablesTooSmall {
            built: self.size,
            requested: n,
        })
    }

    pub(crate) fn base4(&self) -> f64 {
        self.base4
    }

    pub(crate) fn transposed_slot(&self, n: usize) -> Result<&OnceLock<Arc<CompiledNetwork>>> {
        let j = check_size(n, 1)? as usize;
        self.transposed
            .get(j)
            .ok_or(TransformError::TablesTooSmall {
                built: self.size,
                requested: n,
            })
    }

    /// Adds `delta` to the real part of one DCT-II output-stage constant of
    /// the new algorithm. Fault injection for verification tooling.
    #[doc(hidden)]
    pub fn perturb_dct_twiddle(&mut self, n: usize, k: usize, delta: f64) {
        let j = n.trailing_zeros() as usize;
        for table in &mut self.levels[j].dct.new {
            table[k].re += delta;
        }
        self.transposed[j] = OnceLock::new();
    }
}

impl DctStage {
    fn new(n: usize, lookup: &impl Fn(usize, usize) -> f64) -> Self {
        let half = n / 2;
        let omega4: Vec<Complex64> = (0..half)
            .map(|k| root_of_unity(k as u64, 4 * n as u64))
            .collect();
        let gains = Normalization::ALL.map(|norm| norm.gain(n, 1));
        let classic = gains.map(|g| omega4.iter().map(|w| w * (2.0 * g)).collect());
        let new = gains.map(|g| {
            omega4
                .iter()
                .enumerate()
                .map(|(k, w)| w * (2.0 * g * lookup(n, k)))
                .collect()
        });
        let ends = Normalization::ALL.map(|norm| match norm {
            Normalization::TwoSided => [Some(2.0), Some(SQRT_2)],
            Normalization::Unitary => {
                let r = 1.0 / (n as f64).sqrt();
                [Some(r), Some(r)]
            }
            Normalization::UnitaryTimesSqrtN => [None, None],
        });
        let scaled_tan = (0..half).map(|k| tan_turns(k, 4 * n)).collect();
        let scales = (0..n).map(|k| 2.0 * lookup(4 * n, k)).collect();
        Self {
            classic,
            new,
            ends,
            scaled_tan,
            scales,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recurrence_examples() {
        assert_eq!(scale(4, 3).unwrap(), 1.0);
        for n in [8, 16, 256] {
            assert_eq!(scale(n, 0).unwrap(), 1.0);
        }
        let c = (std::f64::consts::PI / 8.0).cos();
        assert!((scale(16, 1).unwrap() - c).abs() < 1e-15);
        assert!((scale(16, 1).unwrap() - 0.9238795325).abs() < 1e-10);
        assert!((scale(16, 3).unwrap() - (3.0 * std::f64::consts::PI / 8.0).sin()).abs() < 1e-15);
    }

    #[test]
    fn scale_rejects_bad_arguments() {
        assert_eq!(scale(12, 0), Err(TransformError::NotPowerOfTwo(12)));
        assert_eq!(
            scale(16, 16),
            Err(TransformError::IndexOutOfRange {
                index: 16,
                size: 16
            })
        );
        assert!(t_factor(16, 4).is_err());
        assert!(t_factor(2, 0).is_err());
    }

    #[test]
    fn trig_reduction_matches_libm() {
        for den in [1u64, 2, 3, 8, 12, 64, 1000, 4096] {
            for num in 0..2 * den {
                let (c, s) = cos_sin_turns(num, den);
                let angle = TAU * num as f64 / den as f64;
                assert!((c - angle.cos()).abs() < 4e-15, "{num}/{den}");
                assert!((s - angle.sin()).abs() < 4e-15, "{num}/{den}");
            }
        }
        assert_eq!(cos_sin_turns(0, 7), (1.0, 0.0));
        assert_eq!(cos_sin_turns(1, 4), (0.0, 1.0));
        assert_eq!(cos_sin_turns(1, 8), (FRAC_1_SQRT_2, FRAC_1_SQRT_2));
    }

    #[test]
    fn t_factor_examples() {
        assert_eq!(t_factor(16, 0).unwrap(), Complex64::new(1.0, 0.0));
        let t = t_factor(16, 1).unwrap();
        let tan = (TAU / 16.0).tan();
        assert!((t - Complex64::new(1.0, -tan)).norm() < 1e-15);
        let direct = |n: usize, k: usize| {
            root_of_unity(k as u64, n as u64) * scale(n / 4, k).unwrap() / scale(n, k).unwrap()
        };
        let t3 = t_factor(16, 3).unwrap();
        assert_eq!(t3.im, -1.0);
        assert!((t3 - direct(16, 3)).norm() < 1e-14);
        assert_eq!(t_factor(8, 1).unwrap(), Complex64::new(1.0, -1.0));
    }

    #[test]
    fn t_factor_agrees_with_definition() {
        for m in 2..=12 {
            let n = 1usize << m;
            for k in 0..n / 4 {
                let t = t_factor(n, k).unwrap();
                let direct = root_of_unity(k as u64, n as u64) * scale(n / 4, k).unwrap()
                    / scale(n, k).unwrap();
                assert!((t - direct).norm() <= 1e-13 * direct.norm(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn tables_small_sizes() {
        let t1 = ScaleTables::new(1).unwrap();
        assert!(t1.level(1).unwrap().t.is_empty());
        assert!(t1.t(4, 0).is_none());
        let t64 = ScaleTables::new(64).unwrap();
        assert_eq!(t64.twiddle_dct()[0], Complex64::new(2.0, 0.0));
        assert_eq!(t64.twiddle_dct().len(), 32);
        assert!(ScaleTables::new(24).is_err());
        assert!(matches!(
            t64.level(128),
            Err(TransformError::TablesTooSmall {
                built: 64,
                requested: 128
            })
        ));
    }

    #[test]
    fn tables_match_top_down_recurrence() {
        let tables = ScaleTables::new(1024).unwrap();
        for m in 0..=12 {
            let n = 1usize << m;
            for k in 0..n {
                let stored = tables.s(n, k).unwrap();
                let direct = scale(n, k).unwrap();
                assert!((stored - direct).abs() <= 1e-15 * direct, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn table_invariants_16() {
        let tables = ScaleTables::new(16).unwrap();
        for n in [1usize, 2, 4, 8, 16, 32, 64] {
            assert_eq!(tables.s(n, 0), Some(1.0));
            for k in 0..n {
                let v = tables.s(n, k).unwrap();
                assert!(v > 0.0 && v <= 1.0);
                if n >= 4 {
                    assert_eq!(v, tables.s(n, (k + n / 4) % n).unwrap());
                    if k <= n / 4 {
                        assert_eq!(v, tables.s(n, (n / 4 - k) % n).unwrap());
                    }
                }
            }
        }
        for n in [4usize, 8, 16] {
            for k in 0..n / 4 {
                let t = tables.t(n, k).unwrap();
                assert!(((t.re.abs() - 1.0).abs()).min((t.im.abs() - 1.0).abs()) < 1e-12);
            }
        }
    }

    #[test]
    fn folded_ratio_subscripts_hold() {
        // The real-input kernels reuse the complex kernels' ratios at mirrored
        // indices; each identity is checked against definitional values.
        let s = |n: usize, k: usize| scale(n, k % n).unwrap();
        for m in 3..=11 {
            let n = 1usize << m;
            for k in 0..=n / 8 {
                let rel = |a: f64, b: f64| (a - b).abs() <= 1e-15 * a.abs();
                assert!(
                    rel(s(2 * n, n / 4 - k + n), s(2 * n, k + n / 4)),
                    "n={n} k={k}"
                );
                assert!(rel(s(2 * n, n / 2 - k), s(2 * n, k)));
                assert!(rel(s(4 * n, n / 2 - k), s(4 * n, k + n / 2)));
                assert!(rel(s(4 * n, n / 4 - k), s(4 * n, k + 3 * n / 4)));
                assert!(rel(s(n, n / 2 - k), s(n, k)));
            }
            let k = n / 8;
            let tables = ScaleTables::new(n).unwrap();
            let r = tables.level(n).unwrap().r2[k];
            assert!((r[0] - r[1]).abs() <= 1e-15 * r[0]);
        }
    }

    #[test]
    fn shared_twiddle_identity() {
        // w^{+(n/4-k)} = -i w^{-k} and w^{-(n/4-k)} = +i w^{+k}
        for n in [8u64, 64, 1024] {
            for k in 0..n / 4 {
                let lhs = root_of_unity(n / 4 - k, n);
                let rhs = Complex64::new(0.0, -1.0) * root_of_unity(n - k, n);
                assert!((lhs - rhs).norm() < 1e-15);
                let lhs = root_of_unity(n - (n / 4 - k), n);
                let rhs = Complex64::new(0.0, 1.0) * root_of_unity(k, n);
                assert!((lhs - rhs).norm() < 1e-15);
            }
        }
    }
}
