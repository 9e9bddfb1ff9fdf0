//! Every fast kernel against its oracle, plus every ledger with a known
//! closed form, over `N = 1..=max_size`.

use std::io::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use srdct::fft_complex::fft_scaled4;
use srdct::flops::{
    formula_classic_dct2, formula_new_dct2, formula_new_fft_complex, formula_new_fft_real,
    formula_scaled_fft_real, formula_splitradix_complex, formula_splitradix_real,
};
use srdct::oracle::{compare_complex, compare_real, naive_dft, ErrorMetrics, OracleConfig};
use srdct::{
    dct2_classic, dct2_scaled, fft_conjpair_with, fft_scaled, rfft_conjpair_with, rfft_scaled,
    rfft_scaled4, scale, transform_new, FlopLedger, Normalization, ScaleTables, TrigKind,
};

use crate::error::CliError;
use crate::report::{write_reports, RunReport};

pub const TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_size: usize,
    pub trials: usize,
    pub seed: u64,
    /// Perturbs one output-stage constant of the new DCT-II at `max_size`.
    pub inject_fault: bool,
}

/// A report plus the closed-form total it must hit, when one is known.
#[derive(Clone, Debug)]
pub struct Checked {
    pub report: RunReport,
    pub expected_total: Option<u64>,
}

impl Checked {
    pub fn failure(&self) -> Option<String> {
        let r = &self.report;
        let tag = format!(
            "{}/{} {} N={}",
            r.kind, r.algorithm, r.normalization, r.size
        );
        if r.max_rel_error.is_nan() || r.max_rel_error >= TOLERANCE {
            return Some(format!("{tag}: max relative error {:.3e}", r.max_rel_error));
        }
        match self.expected_total {
            Some(want) if want != r.total => Some(format!(
                "{tag}: ledger total {} but formula gives {want}",
                r.total
            )),
            _ => None,
        }
    }
}

struct Slot {
    kind: &'static str,
    algorithm: &'static str,
    normalization: &'static str,
    expected_total: Option<u64>,
    ledger: FlopLedger,
    error: ErrorMetrics,
}

#[derive(Default)]
struct Tally {
    slots: Vec<Slot>,
}

impl Tally {
    fn note(
        &mut self,
        id: (&'static str, &'static str, &'static str),
        expected_total: Option<u64>,
        ledger: FlopLedger,
        error: ErrorMetrics,
    ) {
        let (kind, algorithm, normalization) = id;
        let found = self
            .slots
            .iter_mut()
            .find(|s| (s.kind, s.algorithm, s.normalization) == id);
        match found {
            Some(s) => s.error = s.error.max(error),
            None => self.slots.push(Slot {
                kind,
                algorithm,
                normalization,
                expected_total,
                ledger,
                error,
            }),
        }
    }
}

/// Undoes a `1/s_{mN,k}` output scaling of a size-`n` transform.
fn unscale(v: &[Complex64], multiple: usize, n: usize) -> Vec<Complex64> {
    v.iter()
        .enumerate()
        .map(|(k, z)| z * scale(multiple * n, k).expect("k < n"))
        .collect()
}

fn ledger_of<T>(
    f: impl FnOnce(&mut FlopLedger) -> srdct::Result<T>,
) -> Result<(FlopLedger, T), CliError> {
    let mut ledger = FlopLedger::default();
    let out = f(&mut ledger)?;
    Ok((ledger, out))
}

/// Runs every kernel of size `n` over `trials` inputs drawn from
/// `(seed, n)`, keeping the worst error of each.
pub fn check_size(
    tables: &ScaleTables,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<Vec<Checked>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let some = |r: srdct::Result<u64>| r.ok();
    let mut tally = Tally::default();

    for _ in 0..trials {
        let z: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        let want = naive_dft(&z);
        let (l, y) = ledger_of(|l| fft_conjpair_with(&z, tables, l))?;
        tally.note(
            ("fft", "classic", "-"),
            some(formula_splitradix_complex(n)),
            l,
            compare_complex(&y, &want),
        );
        let (l, y) = ledger_of(|l| fft_scaled(&z, 0, tables, l))?;
        tally.note(
            ("fft", "new", "-"),
            some(formula_new_fft_complex(n)),
            l,
            compare_complex(&y, &want),
        );
        for (level, name) in [(1u32, "scaled1"), (2, "scaled2")] {
            let (l, y) = ledger_of(|l| fft_scaled(&z, level, tables, l))?;
            let e = compare_complex(&unscale(&y, level as usize, n), &want);
            tally.note(("fft", name, "-"), None, l, e);
        }
        let (l, y) = ledger_of(|l| fft_scaled4(&z, tables, l))?;
        tally.note(
            ("fft", "scaled4", "-"),
            None,
            l,
            compare_complex(&unscale(&y, 4, n), &want),
        );

        let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let full = naive_dft(
            &x.iter()
                .map(|&v| Complex64::new(v, 0.0))
                .collect::<Vec<_>>(),
        );
        let half = &full[..n / 2 + 1];
        let (l, y) = ledger_of(|l| rfft_conjpair_with(&x, tables, l))?;
        tally.note(
            ("rfft", "classic", "-"),
            some(formula_splitradix_real(n)),
            l,
            compare_complex(&y.bins, half),
        );
        let (l, y) = ledger_of(|l| rfft_scaled(&x, 0, tables, l))?;
        tally.note(
            ("rfft", "new", "-"),
            some(formula_new_fft_real(n)),
            l,
            compare_complex(&y.bins, half),
        );
        for (level, name, formula) in [
            (1u32, "scaled1", some(formula_scaled_fft_real(n))),
            (2, "scaled2", None),
        ] {
            let (l, y) = ledger_of(|l| rfft_scaled(&x, level, tables, l))?;
            let e = compare_complex(&unscale(&y.bins, level as usize, n), half);
            tally.note(("rfft", name, "-"), formula, l, e);
        }
        let (l, y) = ledger_of(|l| rfft_scaled4(&x, tables, l))?;
        tally.note(
            ("rfft", "scaled4", "-"),
            None,
            l,
            compare_complex(&unscale(&y.bins, 4, n), half),
        );

        if n < 2 {
            continue;
        }
        for kind in TrigKind::ALL {
            for norm in Normalization::ALL {
                let want = OracleConfig::new(kind, norm).evaluate(&x);
                let two_sided = norm == Normalization::TwoSided;
                let new_formula = if two_sided {
                    some(formula_new_dct2(n))
                } else {
                    None
                };
                let (l, y) = ledger_of(|l| transform_new(kind, &x, norm, tables, l))?;
                tally.note(
                    (kind.name(), "new", norm.name()),
                    new_formula,
                    l,
                    compare_real(&y, &want),
                );
                if kind == TrigKind::Dct2 {
                    let formula = if two_sided {
                        some(formula_classic_dct2(n))
                    } else {
                        None
                    };
                    let (l, y) = ledger_of(|l| dct2_classic(&x, norm, tables, l))?;
                    tally.note(
                        ("dct2", "classic", norm.name()),
                        formula,
                        l,
                        compare_real(&y, &want),
                    );
                }
                if kind == TrigKind::Dct2 && two_sided {
                    let (l, out) = ledger_of(|l| dct2_scaled(&x, tables, l))?;
                    let y: Vec<f64> = out
                        .values
                        .iter()
                        .zip(&out.scales)
                        .map(|(v, s)| v * s)
                        .collect();
                    let formula = new_formula.map(|f| f - n as u64);
                    tally.note(
                        ("dct2", "scaled", norm.name()),
                        formula,
                        l,
                        compare_real(&y, &want),
                    );
                }
            }
        }
    }

    Ok(tally
        .slots
        .into_iter()
        .map(|s| Checked {
            report: RunReport::new(n, s.kind, s.algorithm, s.normalization, s.ledger, s.error),
            expected_total: s.expected_total,
        })
        .collect())
}

/// All checks in size order; sizes run concurrently.
pub fn collect(opts: &VerifyOptions) -> Result<Vec<Checked>, CliError> {
    if !opts.max_size.is_power_of_two() || opts.max_size > 1 << 16 {
        return Err(CliError::Usage(format!(
            "--max-size {} must be a power of two no larger than 65536",
            opts.max_size
        )));
    }
    if opts.trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let mut tables = ScaleTables::new(opts.max_size)?;
    if opts.inject_fault && opts.max_size >= 2 {
        let k = if opts.max_size >= 4 { 1 } else { 0 };
        tables.perturb_dct_twiddle(opts.max_size, k, 1e-6);
    }
    let sizes: Vec<usize> = (0..=opts.max_size.trailing_zeros())
        .map(|m| 1 << m)
        .collect();
    let per_size: Vec<Vec<Checked>> = sizes
        .par_iter()
        .map(|&n| check_size(&tables, n, opts.trials, opts.seed))
        .collect::<Result<_, _>>()?;
    Ok(per_size.into_iter().flatten().collect())
}

pub fn run<W: Write>(opts: &VerifyOptions, w: &mut W) -> Result<(), CliError> {
    let checks = collect(opts)?;
    let reports: Vec<RunReport> = checks.iter().map(|c| c.report.clone()).collect();
    write_reports(&mut *w, &reports).map_err(|e| CliError::Output(e.into()))?;
    match checks.iter().find_map(Checked::failure) {
        Some(msg) => Err(CliError::Verification(msg)),
        None => Ok(()),
    }
}
