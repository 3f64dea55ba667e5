//! Run reports: a configuration echo plus a list of named checks with
//! expected/actual values, rendered as JSON, CSV, or plain text.
//!
//! Reports are replayable: every knob that influenced the run (size,
//! degeneration, trials, seed, caps) is recorded in the header, and two
//! runs with the same configuration produce byte-identical reports once
//! the timing fields are normalized away.

use serde::{Deserialize, Serialize};

use crate::Error;

/// Output format for a rendered report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        }
    }

    pub fn extension(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

/// Everything that influenced a run, echoed verbatim into the report so
/// the run can be replayed from its own header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// `clone-report`, `sparse-report`, or `verify`.
    pub command: String,
    /// Suite name for `verify`; absent for the batteries.
    pub suite: Option<String>,
    pub m: u32,
    /// Degeneration label, e.g. `clone` or `sparse(r=2)`.
    pub degeneration: String,
    pub r: Option<u32>,
    pub trials: u32,
    pub seed: u64,
    pub max_degree: u32,
    pub allow_slow: bool,
    pub format: Format,
}

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// A single verification step: what was expected, what was observed, and
/// an optional witness (certificate data, sampled values, gating reason).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
    pub witness: String,
    pub ms: u128,
}

/// A full run: configuration echo plus the checks in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<Check>,
}

impl Report {
    /// Aggregate status: fail iff any check failed (skips do not fail).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut skipped = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => pass += 1,
                CheckStatus::Fail => fail += 1,
                CheckStatus::Skipped => skipped += 1,
            }
        }
        (pass, fail, skipped)
    }

    /// Copy with the timing fields cleared, for replay comparison.
    pub fn normalized(&self) -> Report {
        let mut out = self.clone();
        for c in &mut out.checks {
            c.ms = 0;
        }
        out
    }

    pub fn to_json(&self) -> Result<String, Error> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One row per check, the configuration flattened into leading columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(
            "command,suite,m,degeneration,r,trials,seed,max_degree,allow_slow,\
             name,status,expected,actual,witness,ms\n",
        );
        let cfg = &self.config;
        let prefix = [
            csv_field(&cfg.command),
            csv_field(cfg.suite.as_deref().unwrap_or("")),
            cfg.m.to_string(),
            csv_field(&cfg.degeneration),
            cfg.r.map(|r| r.to_string()).unwrap_or_default(),
            cfg.trials.to_string(),
            cfg.seed.to_string(),
            cfg.max_degree.to_string(),
            cfg.allow_slow.to_string(),
        ]
        .join(",");
        for c in &self.checks {
            let row = [
                csv_field(&c.name),
                c.status.as_str().to_string(),
                csv_field(&c.expected),
                csv_field(&c.actual),
                csv_field(&c.witness),
                c.ms.to_string(),
            ]
            .join(",");
            out.push_str(&prefix);
            out.push(',');
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn to_text(&self) -> String {
        let cfg = &self.config;
        let mut out = String::new();
        out.push_str(&format!(
            "symdeg {}{} | m={} degeneration={} r={} trials={} seed={} max_degree={} allow_slow={}\n",
            cfg.command,
            cfg.suite
                .as_deref()
                .map(|s| format!(" {s}"))
                .unwrap_or_default(),
            cfg.m,
            cfg.degeneration,
            cfg.r.map(|r| r.to_string()).unwrap_or_else(|| "-".into()),
            cfg.trials,
            cfg.seed,
            cfg.max_degree,
            cfg.allow_slow,
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{:>7}] {} | expected: {} | actual: {}",
                c.status.as_str(),
                c.name,
                c.expected,
                c.actual
            ));
            if !c.witness.is_empty() {
                out.push_str(&format!(" | {}", c.witness));
            }
            out.push_str(&format!(" ({} ms)\n", c.ms));
        }
        let (pass, fail, skipped) = self.counts();
        out.push_str(&format!(
            "overall: {} ({} checks: {} pass, {} fail, {} skipped)\n",
            if self.passed() { "pass" } else { "fail" },
            self.checks.len(),
            pass,
            fail,
            skipped
        ));
        out
    }

    pub fn render(&self, format: Format) -> Result<String, Error> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => Ok(self.to_csv()),
            Format::Text => Ok(self.to_text()),
        }
    }

    /// Default file stem for a written report, derived from the config.
    pub fn file_stem(&self) -> String {
        let mut stem = format!("symdeg-{}", self.config.command);
        if let Some(suite) = &self.config.suite {
            stem.push('-');
            stem.push_str(suite);
        }
        stem.push_str(&format!("-m{}", self.config.m));
        if let Some(r) = self.config.r {
            stem.push_str(&format!("-r{r}"));
        }
        stem
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> Report {
        Report {
            config: RunConfig {
                command: "verify".into(),
                suite: Some("gorenstein".into()),
                m: 4,
                degeneration: "sparse(r=1)".into(),
                r: Some(1),
                trials: 8,
                seed: 7919,
                max_degree: 4,
                allow_slow: false,
                format: Format::Json,
            },
            checks: vec![
                Check {
                    name: "gorenstein/value".into(),
                    status: CheckStatus::Pass,
                    expected: "false".into(),
                    actual: "false".into(),
                    witness: "2m-r-1=6, m+1=5".into(),
                    ms: 3,
                },
                Check {
                    name: "gorenstein/skipped-example".into(),
                    status: CheckStatus::Skipped,
                    expected: String::new(),
                    actual: String::new(),
                    witness: "size cap".into(),
                    ms: 0,
                },
            ],
        }
    }

    #[test]
    fn json_round_trips_and_normalization_clears_timings() {
        let report = sample_report();
        let json = report.to_json().unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
        let normalized = report.normalized();
        assert!(normalized.checks.iter().all(|c| c.ms == 0));
        assert_eq!(normalized.checks[0].name, report.checks[0].name);
        // skips do not fail the aggregate
        assert!(report.passed());
    }

    #[test]
    fn failing_check_fails_the_aggregate() {
        let mut report = sample_report();
        report.checks[0].status = CheckStatus::Fail;
        assert!(!report.passed());
        let (pass, fail, skipped) = report.counts();
        assert_eq!((pass, fail, skipped), (0, 1, 1));
    }

    #[test]
    fn csv_quotes_fields_with_delimiters() {
        let mut report = sample_report();
        report.checks[0].witness = "a,b \"quoted\"".into();
        let csv = report.to_csv();
        let mut lines = csv.lines();
        let header = lines.next().unwrap();
        assert!(header.starts_with("command,suite,m,"));
        assert!(header.ends_with("name,status,expected,actual,witness,ms"));
        let row = lines.next().unwrap();
        assert!(row.contains("\"a,b \"\"quoted\"\"\""));
        assert!(row.contains("\"sparse(r=1)\"") || row.contains("sparse(r=1)"));
        assert_eq!(csv.lines().count(), 1 + report.checks.len());
    }

    #[test]
    fn text_rendering_reports_overall_status_and_config() {
        let report = sample_report();
        let text = report.to_text();
        assert!(text.contains("m=4"));
        assert!(text.contains("seed=7919"));
        assert!(text.contains("gorenstein/value"));
        assert!(text.contains("overall: pass"));
        assert!(text.contains("1 skipped"));
    }

    #[test]
    fn file_stem_reflects_the_run() {
        let report = sample_report();
        assert_eq!(report.file_stem(), "symdeg-verify-gorenstein-m4-r1");
    }
}
