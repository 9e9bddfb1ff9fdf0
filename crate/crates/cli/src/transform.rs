use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use srdct::oracle::OracleConfig;
use srdct::{dct2_classic, dct2_scaled, transform_new, FlopLedger, ScaleTables, TrigKind};

use crate::error::CliError;
use crate::signal::{read_signal, write_signal};
use crate::{Algorithm, TransformArgs};

/// Default sidecar path: the output path with `.scales` appended.
pub fn default_scales_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".scales");
    PathBuf::from(s)
}

fn write_file(path: &Path, values: &[f64]) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_signal(&mut w, values)
        .and_then(|_| w.flush())
        .map_err(|e| CliError::io(path, e))
}

pub fn run<W: Write>(args: &TransformArgs, stdout: &mut W) -> Result<(), CliError> {
    let x = read_signal(&args.input)?;
    let n = x.len();
    if n == 0 {
        return Err(CliError::Usage(format!(
            "{}: no samples",
            args.input.display()
        )));
    }
    let kind = TrigKind::from(args.kind);
    let norm = args.norm.into();
    if args.algo != Algorithm::Naive && (!n.is_power_of_two() || n < 2) {
        return Err(CliError::Usage(format!(
            "{n} samples: fast algorithms need a power of two of at least 2 (use --algo naive)"
        )));
    }
    if matches!(args.algo, Algorithm::Classic | Algorithm::Scaled) && kind != TrigKind::Dct2 {
        return Err(CliError::Usage(format!(
            "--algo {} is only available for dct2",
            args.algo.name()
        )));
    }

    let mut ledger = FlopLedger::default();
    let mut scales = None;
    let y = match args.algo {
        Algorithm::Naive => OracleConfig::new(kind, norm).evaluate(&x),
        Algorithm::Classic => dct2_classic(&x, norm, &ScaleTables::new(n)?, &mut ledger)?,
        Algorithm::New => transform_new(kind, &x, norm, &ScaleTables::new(n)?, &mut ledger)?,
        Algorithm::Scaled => {
            let out = dct2_scaled(&x, &ScaleTables::new(n)?, &mut ledger)?;
            scales = Some(out.scales);
            out.values
        }
    };

    match &args.output {
        Some(path) => write_file(path, &y)?,
        None => write_signal(&mut *stdout, &y)?,
    }
    if let Some(scales) = scales {
        let path = match (&args.scales_output, &args.output) {
            (Some(p), _) => p.clone(),
            (None, Some(out)) => default_scales_path(out),
            (None, None) => {
                return Err(CliError::Usage(
                    "--algo scaled writing to stdout needs --scales-output".into(),
                ))
            }
        };
        write_file(&path, &scales)?;
    }
    Ok(())
}
