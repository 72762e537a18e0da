use std::io::Write;

use super::conjecture::{ConjectureReport, SweepSummary, Which};
use super::HarnessError;

pub const CSV_HEADER: &str =
    "graph6,n,lcc,lcc_complement,chi,conj1_lhs,conj1_holds,conj2_lhs,conj2_holds,equality2";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    JsonLines,
}

/// Single writer for a report stream: header, one record per graph, then a
/// summary footer.
pub struct ReportWriter<W: Write> {
    out: W,
    format: ReportFormat,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(mut out: W, format: ReportFormat) -> Result<Self, HarnessError> {
        if format == ReportFormat::Csv {
            writeln!(out, "{CSV_HEADER}")?;
        }
        Ok(ReportWriter { out, format })
    }

    pub fn write(&mut self, r: &ConjectureReport) -> Result<(), HarnessError> {
        match self.format {
            ReportFormat::Csv => writeln!(
                self.out,
                "{},{},{},{},{},{},{},{},{},{}",
                r.graph6,
                r.n,
                r.lcc,
                r.lcc_complement,
                r.chi,
                r.conj1_lhs,
                r.conj1_holds,
                r.conj2_lhs,
                r.conj2_holds,
                r.equality2
            )?,
            ReportFormat::JsonLines => {
                serde_json::to_writer(&mut self.out, r)?;
                writeln!(self.out)?;
            }
        }
        Ok(())
    }

    /// Writes the footer and returns the sink.
    pub fn finish(mut self, s: &SweepSummary) -> Result<W, HarnessError> {
        match self.format {
            ReportFormat::Csv => {
                write!(
                    self.out,
                    "# summary total={} conj1_violations={} conj2_violations={} equality1={} equality2={} lemma_failures={} errors={}",
                    s.total,
                    s.conj1_violations,
                    s.conj2_violations,
                    s.equality1,
                    s.equality2,
                    s.lemma_failures,
                    s.errors
                )?;
                if !s.counterexamples.is_empty() {
                    write!(self.out, " counterexamples={}", s.counterexamples.join(" "))?;
                }
                writeln!(self.out)?;
            }
            ReportFormat::JsonLines => {
                serde_json::to_writer(&mut self.out, &serde_json::json!({ "summary": s }))?;
                writeln!(self.out)?;
            }
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Writes `reports` to `sink` with a footer totalling both conjectures.
pub fn emit_report<I, W>(
    reports: I,
    format: ReportFormat,
    sink: W,
) -> Result<SweepSummary, HarnessError>
where
    I: IntoIterator<Item = ConjectureReport>,
    W: Write,
{
    let mut writer = ReportWriter::new(sink, format)?;
    let mut summary = SweepSummary::default();
    for r in reports {
        summary.record(&r, Which::Both);
        writer.write(&r)?;
    }
    writer.finish(&summary)?;
    Ok(summary)
}
