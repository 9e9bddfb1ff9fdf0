use std::io::Write;

use srdct::flops::{formula_classic_dct2, formula_new_dct2};
use srdct::{dct2_classic, dct2_new, FlopLedger, Normalization, ScaleTables};

use crate::error::CliError;
use crate::Format;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlopRow {
    pub size: usize,
    pub classic: u64,
    pub new: u64,
    pub formula_classic: u64,
    pub formula_new: u64,
}

impl FlopRow {
    pub fn matches(&self) -> bool {
        self.classic == self.formula_classic && self.new == self.formula_new
    }
}

pub fn check_max_size(max_size: usize) -> Result<(), CliError> {
    if !max_size.is_power_of_two() || !(2..=1 << 20).contains(&max_size) {
        return Err(CliError::Usage(format!(
            "--max-size {max_size} must be a power of two between 2 and 2^20"
        )));
    }
    Ok(())
}

/// Instrumented and closed-form DCT-II counts for `N = 2..=max_size`.
pub fn rows(max_size: usize) -> Result<Vec<FlopRow>, CliError> {
    check_max_size(max_size)?;
    let tables = ScaleTables::new(max_size)?;
    let mut out = Vec::new();
    let mut n = 2;
    while n <= max_size {
        let x = vec![0.0; n];
        let mut classic = FlopLedger::default();
        dct2_classic(&x, Normalization::TwoSided, &tables, &mut classic)?;
        let mut new = FlopLedger::default();
        dct2_new(&x, Normalization::TwoSided, &tables, &mut new)?;
        out.push(FlopRow {
            size: n,
            classic: classic.total(),
            new: new.total(),
            formula_classic: formula_classic_dct2(n)?,
            formula_new: formula_new_dct2(n)?,
        });
        n *= 2;
    }
    Ok(out)
}

pub fn run<W: Write>(max_size: usize, format: Format, w: &mut W) -> Result<(), CliError> {
    let rows = rows(max_size)?;
    match format {
        Format::Csv => {
            let mut out = csv::Writer::from_writer(w);
            let csv_err = |e: csv::Error| CliError::Output(e.into());
            out.write_record([
                "size",
                "classic",
                "new",
                "formula_classic",
                "formula_new",
                "match",
            ])
            .map_err(csv_err)?;
            for r in &rows {
                out.write_record([
                    r.size.to_string(),
                    r.classic.to_string(),
                    r.new.to_string(),
                    r.formula_classic.to_string(),
                    r.formula_new.to_string(),
                    r.matches().to_string(),
                ])
                .map_err(csv_err)?;
            }
            out.flush()?;
        }
        Format::Markdown => {
            writeln!(
                w,
                "| N | classic | new | formula classic | formula new | match |"
            )?;
            writeln!(w, "|---:|---:|---:|---:|---:|:---:|")?;
            for r in &rows {
                writeln!(
                    w,
                    "| {} | {} | {} | {} | {} | {} |",
                    r.size,
                    r.classic,
                    r.new,
                    r.formula_classic,
                    r.formula_new,
                    if r.matches() { "yes" } else { "NO" }
                )?;
            }
        }
    }
    if let Some(bad) = rows.iter().find(|r| !r.matches()) {
        return Err(CliError::Verification(format!(
            "ledger mismatch at N={}",
            bad.size
        )));
    }
    Ok(())
}
