use std::fmt::Write as _;

use serde::Serialize;
use weil_core::Error;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    Experimental,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
            Status::Experimental => "EXPERIMENTAL",
        }
    }
}

/// Fixed registry of the statements a check can be anchored to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    StoneVonNeumann,
    WeilTrace,
    WeilHomomorphism,
    IsotypicDimension,
    PsiIndependence,
    Branching,
    FrobeniusNormalization,
    HoweDimensions,
    ThetaIrreducible,
    ThetaZeroLift,
    ThetaDimension,
    HoweInnerProduct,
    CurveCount,
    FermatCohomology,
    SurfaceKe,
    TorsorQuotient,
    DrinfeldCurve,
    WeilTie,
    MnOrthogonality,
    ClassExpansion,
    RmDimension,
    M0Extraction,
}

impl Anchor {
    #[cfg(test)]
    pub const ALL: [Anchor; 22] = [
        Anchor::StoneVonNeumann,
        Anchor::WeilTrace,
        Anchor::WeilHomomorphism,
        Anchor::IsotypicDimension,
        Anchor::PsiIndependence,
        Anchor::Branching,
        Anchor::FrobeniusNormalization,
        Anchor::HoweDimensions,
        Anchor::ThetaIrreducible,
        Anchor::ThetaZeroLift,
        Anchor::ThetaDimension,
        Anchor::HoweInnerProduct,
        Anchor::CurveCount,
        Anchor::FermatCohomology,
        Anchor::SurfaceKe,
        Anchor::TorsorQuotient,
        Anchor::DrinfeldCurve,
        Anchor::WeilTie,
        Anchor::MnOrthogonality,
        Anchor::ClassExpansion,
        Anchor::RmDimension,
        Anchor::M0Extraction,
    ];

    pub fn as_str(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
    }

    /// Checks whose rows form a character or dimension table (the CSV export).
    pub fn is_table(self) -> bool {
        matches!(self, Anchor::WeilTrace | Anchor::IsotypicDimension | Anchor::ThetaDimension | Anchor::ClassExpansion)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check: String,
    pub anchor: Anchor,
    pub params: String,
    pub expected: String,
    pub actual: String,
    pub status: Status,
}

impl Record {
    pub fn compare(check: &str, anchor: Anchor, params: String, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Record { check: check.into(), anchor, params, expected, actual, status }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// A record for a computation that did not complete.
    pub fn from_error(check: &str, anchor: Anchor, params: String, e: &Error) -> Self {
        let status = match e {
            Error::Budget { .. } => Status::Skipped,
            _ => Status::Fail,
        };
        Record { check: check.into(), anchor, params, expected: "completed".into(), actual: e.to_string(), status }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub experimental: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteTiming {
    pub suite: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub config: RunConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<SuiteTiming>>,
}

impl Report {
    pub fn new(config: RunConfig, records: Vec<Record>, timing: Option<Vec<SuiteTiming>>) -> Self {
        let mut summary = Summary::default();
        for r in &records {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
                Status::Experimental => summary.experimental += 1,
            }
        }
        Report { version: env!("CARGO_PKG_VERSION"), config, summary, records, timing }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("check,anchor,params,expected,actual,status\n");
        for r in self.records.iter().filter(|r| r.anchor.is_table()) {
            let cells = [r.check.clone(), r.anchor.as_str(), r.params.clone(), r.expected.clone(), r.actual.clone()];
            let cells: Vec<String> = cells.iter().map(|c| csv_cell(c)).collect();
            let _ = writeln!(s, "{},{}", cells.join(","), r.status.as_str());
        }
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let _ = writeln!(
                s,
                "{:<12} {} [{}] {}: expected {}, actual {}",
                r.status.as_str(),
                r.check,
                r.anchor.as_str(),
                r.params,
                r.expected,
                r.actual
            );
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "summary: {} pass, {} fail, {} skipped, {} experimental",
            m.pass, m.fail, m.skipped, m.experimental
        );
        if let Some(t) = &self.timing {
            for x in t {
                let _ = writeln!(s, "timing: {} {} ms", x.suite, x.millis);
            }
        }
        s
    }
}

fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}
