use std::io::Write;

use srdct::oracle::ErrorMetrics;
use srdct::FlopLedger;

/// One `(size, kind, algorithm, normalization)` result.
#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub size: usize,
    pub kind: &'static str,
    pub algorithm: &'static str,
    pub normalization: &'static str,
    pub adds: u64,
    pub mults: u64,
    pub total: u64,
    pub max_rel_error: f64,
    pub rms_rel_error: f64,
}

impl RunReport {
    pub const HEADER: [&'static str; 9] = [
        "size",
        "kind",
        "algorithm",
        "normalization",
        "adds",
        "mults",
        "total",
        "max_rel_error",
        "rms_rel_error",
    ];

    pub fn new(
        size: usize,
        kind: &'static str,
        algorithm: &'static str,
        normalization: &'static str,
        ledger: FlopLedger,
        error: ErrorMetrics,
    ) -> Self {
        Self {
            size,
            kind,
            algorithm,
            normalization,
            adds: ledger.adds,
            mults: ledger.mults,
            total: ledger.total(),
            max_rel_error: error.max_rel,
            rms_rel_error: error.rms_rel,
        }
    }

    fn record(&self) -> [String; 9] {
        [
            self.size.to_string(),
            self.kind.to_string(),
            self.algorithm.to_string(),
            self.normalization.to_string(),
            self.adds.to_string(),
            self.mults.to_string(),
            self.total.to_string(),
            format!("{:.3e}", self.max_rel_error),
            format!("{:.3e}", self.rms_rel_error),
        ]
    }
}

pub fn write_reports<W: Write>(w: W, reports: &[RunReport]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(RunReport::HEADER)?;
    for r in reports {
        out.write_record(r.record())?;
    }
    out.flush()?;
    Ok(())
}
