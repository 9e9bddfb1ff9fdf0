//! RMS error growth of the DCT-II and FFT kernels, with a `c sqrt(lg N)` fit.

use std::io::Write;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use srdct::oracle::{compare_complex, compare_real, fit_sqrt_log, naive_dct2, naive_dft};
use srdct::{
    dct2_classic, dct2_new, fft_conjpair_with, fft_scaled, FlopLedger, Normalization, ScaleTables,
};

use crate::error::CliError;

pub const KERNELS: [&str; 4] = ["dct2/classic", "dct2/new", "fft/classic", "fft/new"];

#[derive(Clone, Debug, PartialEq)]
pub struct AccuracyRow {
    pub kernel: &'static str,
    pub size: usize,
    pub rms_rel_error: f64,
    pub fit_c: f64,
    pub exceeds: bool,
}

/// Mean rms relative error of each of [`KERNELS`] at size `n`.
pub fn rms_errors(
    tables: &ScaleTables,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<[f64; 4], CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let mut sums = [0.0; 4];
    let mut l = FlopLedger::default();
    let two = Normalization::TwoSided;
    for _ in 0..trials {
        let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let want = naive_dct2(&x, two);
        sums[0] += compare_real(&dct2_classic(&x, two, tables, &mut l)?, &want).rms_rel;
        sums[1] += compare_real(&dct2_new(&x, two, tables, &mut l)?, &want).rms_rel;
        let z: Vec<Complex64> = (0..n)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut rng),
                    StandardNormal.sample(&mut rng),
                )
            })
            .collect();
        let want = naive_dft(&z);
        sums[2] += compare_complex(&fft_conjpair_with(&z, tables, &mut l)?, &want).rms_rel;
        sums[3] += compare_complex(&fft_scaled(&z, 0, tables, &mut l)?, &want).rms_rel;
    }
    Ok(sums.map(|s| s / trials as f64))
}

pub fn rows(max_size: usize, trials: usize, seed: u64) -> Result<Vec<AccuracyRow>, CliError> {
    if !max_size.is_power_of_two() || !(16..=1 << 14).contains(&max_size) {
        return Err(CliError::Usage(format!(
            "--max-size {max_size} must be a power of two between 16 and 16384"
        )));
    }
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let tables = ScaleTables::new(max_size)?;
    let sizes: Vec<usize> = (4..=max_size.trailing_zeros()).map(|m| 1 << m).collect();
    let errors: Vec<[f64; 4]> = sizes
        .par_iter()
        .map(|&n| rms_errors(&tables, n, trials, seed))
        .collect::<Result<_, _>>()?;

    let mut out = Vec::new();
    for (i, kernel) in KERNELS.iter().enumerate() {
        let points: Vec<(usize, f64)> =
            sizes.iter().zip(&errors).map(|(&n, e)| (n, e[i])).collect();
        let fit = fit_sqrt_log(&points);
        for (n, e) in points {
            out.push(AccuracyRow {
                kernel,
                size: n,
                rms_rel_error: e,
                fit_c: fit.c,
                exceeds: fit.outliers.contains(&n),
            });
        }
    }
    Ok(out)
}

pub fn run<W: Write>(max_size: usize, trials: usize, seed: u64, w: &mut W) -> Result<(), CliError> {
    let rows = rows(max_size, trials, seed)?;
    let mut out = csv::Writer::from_writer(&mut *w);
    let csv_err = |e: csv::Error| CliError::Output(e.into());
    out.write_record([
        "kernel",
        "size",
        "rms_rel_error",
        "fit_c",
        "bound",
        "exceeds",
    ])
    .map_err(csv_err)?;
    for r in &rows {
        let bound = 2.0 * r.fit_c * (r.size as f64).log2().sqrt();
        out.write_record([
            r.kernel.to_string(),
            r.size.to_string(),
            format!("{:.3e}", r.rms_rel_error),
            format!("{:.3e}", r.fit_c),
            format!("{bound:.3e}"),
            r.exceeds.to_string(),
        ])
        .map_err(csv_err)?;
    }
    out.flush()?;
    match rows.iter().find(|r| r.exceeds) {
        Some(r) => Err(CliError::Verification(format!(
            "{} at N={} exceeds 2c sqrt(lg N)",
            r.kernel, r.size
        ))),
        None => Ok(()),
    }
}
