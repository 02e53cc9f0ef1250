use std::fmt;
use std::io::Write;
use std::time::{Duration, Instant};

use hadamard_core::{
    decode_matrix, encode_matrix, generate, generate_parallel, is_hadamard_zo, normalize,
    pm_from_zo, validate_order, verify_sign_hadamard, zo_from_pm, BitMatrix, Error as CoreError,
    FnSink, GenConfig, Outcome,
};

use crate::format::{parse, Format, ParseError, Record, RecordWriter};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("record {record}: {source}")]
    Record {
        record: usize,
        #[source]
        source: CoreError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for a matrix that fails verification, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::InternalInvariantViolation(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GenerateOptions {
    pub m: usize,
    pub limit: Option<u64>,
    pub format: Format,
    /// `None` keeps the library default (on up to m = 15).
    pub verify: Option<bool>,
    pub progress: bool,
    /// Worker threads; 0 or 1 runs the sequential search.
    pub parallel: usize,
    pub deadline: Option<Instant>,
}

impl GenerateOptions {
    pub fn new(m: usize) -> Self {
        Self {
            m,
            limit: None,
            format: Format::Grouplist,
            verify: None,
            progress: false,
            parallel: 0,
            deadline: None,
        }
    }

    fn config(&self) -> Result<GenConfig, CliError> {
        let mut config = GenConfig::new(validate_order(self.m)?).with_progress(self.progress);
        if let Some(limit) = self.limit {
            config = config.with_limit(limit);
        }
        if let Some(verify) = self.verify {
            config = config.with_verify(verify);
        }
        if let Some(deadline) = self.deadline {
            config = config.with_deadline(deadline);
        }
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RunSummary {
    pub m: usize,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

impl RunSummary {
    pub fn per_minute(&self) -> f64 {
        let secs = self.elapsed.as_secs_f64();
        if secs > 0.0 {
            self.outcome.emitted as f64 * 60.0 / secs
        } else {
            f64::INFINITY
        }
    }
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={}: {} matrices in {:.3} s{}",
            self.m,
            self.outcome.emitted,
            self.elapsed.as_secs_f64(),
            if self.outcome.exhausted {
                ""
            } else {
                " (stopped early)"
            }
        )
    }
}

/// Runs the generator, writing every matrix to `out` in the chosen format.
pub fn run_generate<W: Write>(opts: &GenerateOptions, out: W) -> Result<RunSummary, CliError> {
    let config = opts.config()?;
    let mut writer = RecordWriter::new(out, opts.format);
    let start = Instant::now();
    let mut sink = FnSink(|p: &hadamard_core::PartitionMatrix| {
        writer
            .write_generated(p)
            .map_err(|e| CoreError::Sink(Box::new(e)))
    });
    let outcome = if opts.parallel > 1 {
        generate_parallel(&config, opts.parallel, &mut sink)?
    } else {
        generate(&config, &mut sink)?
    };
    writer.flush()?;
    Ok(RunSummary {
        m: opts.m,
        outcome,
        elapsed: start.elapsed(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub record: usize,
    pub size: usize,
    /// Gram test on the `{0,1}` matrix.
    pub zo: bool,
    /// Row orthogonality of the `±1` matrix; only for `densepm` input.
    pub sign: Option<bool>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.zo && self.sign.unwrap_or(true)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |ok: bool| if ok { "PASS" } else { "FAIL" };
        write!(
            f,
            "record {} ({}x{}): {}",
            self.record,
            self.size,
            self.size,
            word(self.passed())
        )?;
        if let Some(sign) = self.sign {
            write!(f, " [sign {}, {{0,1}} {}]", word(sign), word(self.zo))?;
        }
        Ok(())
    }
}

fn verdict(record: usize, r: &Record) -> Verdict {
    match r {
        Record::Partition(p) => {
            let t = decode_matrix(p);
            Verdict {
                record,
                size: t.size(),
                zo: is_hadamard_zo(&t),
                sign: None,
            }
        }
        Record::Bits(t) => Verdict {
            record,
            size: t.size(),
            zo: is_hadamard_zo(t),
            sign: None,
        },
        Record::Signs(h) => {
            let sign = verify_sign_hadamard(h);
            let zo = normalize(h)
                .and_then(|n| zo_from_pm(&n))
                .is_ok_and(|t| is_hadamard_zo(&t));
            Verdict {
                record,
                size: h.size(),
                zo,
                sign: Some(sign),
            }
        }
    }
}

/// Checks every record of `text`, one report line per record.
pub fn run_verify<W: Write>(text: &str, format: Format, mut report: W) -> Result<Vec<Verdict>, CliError> {
    let records = parse(text, format)?;
    let verdicts: Vec<Verdict> = records
        .iter()
        .enumerate()
        .map(|(i, r)| verdict(i + 1, r))
        .collect();
    for v in &verdicts {
        writeln!(report, "{v}")?;
    }
    let passed = verdicts.iter().filter(|v| v.passed()).count();
    writeln!(report, "{passed}/{} passed", verdicts.len())?;
    Ok(verdicts)
}

fn to_bits(record: usize, r: Record, normalize_signs: bool) -> Result<BitMatrix, CliError> {
    let wrap = |source| CliError::Record { record, source };
    match r {
        Record::Partition(p) => Ok(decode_matrix(&p)),
        Record::Bits(t) => Ok(t),
        Record::Signs(h) => {
            let h = if normalize_signs { normalize(&h).map_err(wrap)? } else { h };
            zo_from_pm(&h).map_err(wrap)
        }
    }
}

/// Converts every record of `text` from one format to another.
///
/// `±1` input must be normalized unless `normalize_signs` is set, in which
/// case it must be a Hadamard matrix.
pub fn run_convert<W: Write>(
    text: &str,
    from: Format,
    to: Format,
    normalize_signs: bool,
    out: W,
) -> Result<u64, CliError> {
    let records = parse(text, from)?;
    let mut writer = RecordWriter::new(out, to);
    for (i, r) in records.into_iter().enumerate() {
        let record = i + 1;
        match (to, r) {
            (Format::Densepm, Record::Signs(h)) if !normalize_signs => writer.write_signs(&h)?,
            (Format::Grouplist, Record::Partition(p)) => writer.write_partition(&p)?,
            (to, r) => {
                let t = to_bits(record, r, normalize_signs)?;
                match to {
                    Format::Grouplist => writer.write_partition(
                        &encode_matrix(&t).map_err(|source| CliError::Record { record, source })?,
                    )?,
                    Format::Dense01 => writer.write_bits(&t)?,
                    Format::Densepm => writer.write_signs(&pm_from_zo(&t))?,
                }
            }
        }
    }
    writer.flush()?;
    Ok(writer.written())
}

/// Generation-rate measurement; matrices are counted, not written.
#[derive(Debug, Clone, Copy)]
pub struct BenchReport(pub RunSummary);

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.0)?;
        write!(f, "v={:.0} matrices/minute", self.0.per_minute())
    }
}

pub fn run_bench(
    m: usize,
    limit: Option<u64>,
    duration: Option<Duration>,
    parallel: usize,
) -> Result<BenchReport, CliError> {
    let mut opts = GenerateOptions::new(m);
    opts.limit = limit;
    opts.verify = Some(false);
    opts.parallel = parallel;
    opts.deadline = duration.map(|d| Instant::now() + d);
    let summary = run_generate(&opts, std::io::sink())?;
    Ok(BenchReport(summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hadamard_core::samples;

    fn generated(m: usize, format: Format) -> String {
        let mut opts = GenerateOptions::new(m);
        opts.format = format;
        let mut out = Vec::new();
        run_generate(&opts, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn generate_order_three_golden() {
        assert_eq!(
            generated(3, Format::Grouplist),
            "HM_3_1:[[[0,2],[1,1]],[[0,1],[1,1],[2,1]],[[1,1],[2,1],[4,1]]]$\n"
        );
        assert_eq!(generated(3, Format::Dense01), "110\n101\n011\n");
        assert_eq!(generated(3, Format::Densepm), "++++\n+--+\n+-+-\n++--\n");
    }

    #[test]
    fn generate_rejects_bad_order() {
        let err = run_generate(&GenerateOptions::new(14), Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("incorrect size for Hadamard matrices"));
        assert!(err.to_string().contains("m=14"));
    }

    #[test]
    fn verify_reports_pass_and_fail() {
        let text = format!("{}\n111\n111\n111\n", samples::order_15());
        let mut report = Vec::new();
        let v = run_verify(&text, Format::Dense01, &mut report).unwrap();
        assert!(v[0].passed());
        assert!(!v[1].passed());
        let report = String::from_utf8(report).unwrap();
        assert!(report.contains("record 1 (15x15): PASS"));
        assert!(report.contains("record 2 (3x3): FAIL"));
        assert!(report.contains("1/2 passed"));
    }

    #[test]
    fn verify_sign_input_reports_both_checks() {
        // Order-4 Hadamard with a negated row: valid but not normalized.
        let v = run_verify("----\n+--+\n+-+-\n++--\n", Format::Densepm, Vec::new()).unwrap();
        assert_eq!(v[0].sign, Some(true));
        assert!(v[0].zo);
        let v = run_verify("++\n++\n", Format::Densepm, Vec::new()).unwrap();
        assert_eq!(v[0].sign, Some(false));
        assert!(!v[0].passed());
    }

    #[test]
    fn convert_examples() {
        let dense = samples::order_15().to_string();
        let mut out = Vec::new();
        run_convert(&dense, Format::Dense01, Format::Grouplist, false, &mut out).unwrap();
        let listing = String::from_utf8(out).unwrap();
        assert!(listing.starts_with("HM_15_1:[[[0,8],[1,7]],[[0,4],[1,4],[2,4],[3,3]],"));

        let mut out = Vec::new();
        run_convert("110\n101\n011\n", Format::Dense01, Format::Densepm, false, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "++++\n+--+\n+-+-\n++--\n");
    }

    #[test]
    fn convert_errors() {
        let err = run_convert("011\n101\n110\n", Format::Dense01, Format::Grouplist, false, Vec::new())
            .unwrap_err();
        assert!(matches!(
            err,
            CliError::Record {
                record: 1,
                source: CoreError::NonCanonicalRow { .. }
            }
        ));
        let flipped = "----\n+--+\n+-+-\n++--\n";
        let err = run_convert(flipped, Format::Densepm, Format::Dense01, false, Vec::new()).unwrap_err();
        assert!(matches!(err, CliError::Record { source: CoreError::NotNormalized, .. }));
        let mut out = Vec::new();
        run_convert(flipped, Format::Densepm, Format::Dense01, true, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "110\n101\n011\n");
    }

    #[test]
    fn bench_reports_rate() {
        let report = run_bench(3, None, None, 0).unwrap();
        assert_eq!(report.0.outcome.emitted, 1);
        let text = report.to_string();
        assert!(text.contains("m=3: 1 matrices"), "{text}");
        assert!(text.contains(" matrices/minute"), "{text}");
        let report = run_bench(15, Some(50), None, 0).unwrap();
        assert_eq!(report.0.outcome.emitted, 50);
    }
}
