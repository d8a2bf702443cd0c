//! Verification records and the JSON-lines report format.
//!
//! One record per executed case, then a single summary object. Field order is
//! fixed by declaration, so a report is byte-identical across runs of the
//! same scenario except for the `millis` timing field. Negative controls are
//! ordinary records whose *expected* status is `fail`; a run is OK when every
//! record meets its expectation.

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedDegenerate,
}

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub seed: u64,
    pub trial: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationRecord {
    pub check: String,
    pub case: String,
    pub status: Status,
    pub expected: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub millis: u64,
}

impl VerificationRecord {
    /// Whether the outcome meets the expectation.
    pub fn ok(&self) -> bool {
        self.status == self.expected
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub expected_failures: usize,
    pub unexpected: usize,
    pub ok: bool,
    pub seed: u64,
}

pub fn summarize(records: &[VerificationRecord], seed: u64) -> Summary {
    let passed = records
        .iter()
        .filter(|r| r.status == Status::Pass)
        .count();
    let failed = records
        .iter()
        .filter(|r| r.status == Status::Fail)
        .count();
    let skipped = records
        .iter()
        .filter(|r| r.status == Status::SkippedDegenerate)
        .count();
    let expected_failures = records
        .iter()
        .filter(|r| r.status == Status::Fail && r.expected == Status::Fail)
        .count();
    let unexpected = records.iter().filter(|r| !r.ok()).count();
    Summary {
        records: records.len(),
        passed,
        failed,
        skipped,
        expected_failures,
        unexpected,
        ok: unexpected == 0,
        seed,
    }
}

/// Write the JSONL report: one record per line, then the summary line.
pub fn write_report<W: Write>(
    mut w: W,
    records: &[VerificationRecord],
    summary: &Summary,
) -> std::io::Result<()> {
    for record in records {
        serde_json::to_writer(&mut w, record)?;
        writeln!(w)?;
    }
    #[derive(Serialize)]
    struct SummaryLine<'a> {
        summary: &'a Summary,
    }
    serde_json::to_writer(&mut w, &SummaryLine { summary })?;
    writeln!(w)?;
    Ok(())
}

/// Collects records for one check, stamping seed and timing.
pub struct Recorder {
    check: &'static str,
    seed: u64,
    pub records: Vec<VerificationRecord>,
}

impl Recorder {
    pub fn new(check: &'static str, seed: u64) -> Recorder {
        Recorder {
            check,
            seed,
            records: Vec::new(),
        }
    }

    fn push(
        &mut self,
        case: String,
        status: Status,
        expected: Status,
        trial: u64,
        detail: Option<String>,
        started: Instant,
    ) {
        let witness = detail.map(|detail| Witness {
            seed: self.seed,
            trial,
            detail,
        });
        self.records.push(VerificationRecord {
            check: self.check.to_string(),
            case,
            status,
            expected,
            witness,
            millis: started.elapsed().as_millis() as u64,
        });
    }

    /// A case that must hold: `Ok(true)` passes, anything else fails with a
    /// witness.
    pub fn expect_pass<E: std::fmt::Display>(
        &mut self,
        case: &str,
        trial: u64,
        started: Instant,
        outcome: Result<bool, E>,
        detail: impl FnOnce() -> String,
    ) {
        match outcome {
            Ok(true) => self.push(case.to_string(), Status::Pass, Status::Pass, trial, None, started),
            Ok(false) => self.push(
                case.to_string(),
                Status::Fail,
                Status::Pass,
                trial,
                Some(detail()),
                started,
            ),
            Err(e) => self.push(
                case.to_string(),
                Status::Fail,
                Status::Pass,
                trial,
                Some(format!("{} [{e}]", detail())),
                started,
            ),
        }
    }

    /// A deliberately violated configuration: the case is *expected* to fail,
    /// and a failure record (with witness) is the successful outcome. If the
    /// corrupted configuration somehow passes, the record misses its
    /// expectation and the run is not OK.
    pub fn negative_control<E: std::fmt::Display>(
        &mut self,
        case: &str,
        trial: u64,
        started: Instant,
        outcome: Result<bool, E>,
        detail: impl FnOnce() -> String,
    ) {
        match outcome {
            Ok(true) => self.push(
                case.to_string(),
                Status::Pass,
                Status::Fail,
                trial,
                Some(format!("negative control unexpectedly passed: {}", detail())),
                started,
            ),
            Ok(false) => self.push(
                case.to_string(),
                Status::Fail,
                Status::Fail,
                trial,
                Some(detail()),
                started,
            ),
            Err(e) => self.push(
                case.to_string(),
                Status::Fail,
                Status::Fail,
                trial,
                Some(format!("{} [{e}]", detail())),
                started,
            ),
        }
    }

    pub fn skip_degenerate(&mut self, case: &str, trial: u64, detail: String) {
        let started = Instant::now();
        self.push(
            case.to_string(),
            Status::SkippedDegenerate,
            Status::SkippedDegenerate,
            trial,
            Some(detail),
            started,
        );
    }
}
