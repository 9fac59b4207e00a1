//! `weilcheck`: runs verification suites and writes a deterministic report.

mod config;
mod report;
mod suites;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use config::{Format, RunConfig};
use report::{Report, Status, SuiteTiming};

const EXIT_FAIL: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };
    if let Err(msg) = cfg.validate() {
        eprintln!("weilcheck: {msg}");
        return ExitCode::from(EXIT_INVALID);
    }

    // suites run in parallel; records are assembled in suite order
    let suites = cfg.suite.expand();
    let results: Vec<(Vec<report::Record>, SuiteTiming)> = std::thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                let cfg = &cfg;
                s.spawn(move || {
                    let t0 = Instant::now();
                    let recs = suites::run_suite(suite, cfg);
                    let name = format!("{suite:?}").to_lowercase();
                    (recs, SuiteTiming { suite: name, millis: t0.elapsed().as_millis() })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    });
    let mut records = Vec::new();
    let mut timing = Vec::new();
    for (r, t) in results {
        records.extend(r);
        timing.push(t);
    }
    let report = Report::new(cfg.clone(), records, cfg.timing.then_some(timing));

    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("weilcheck: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_INVALID);
            }
        }
        None => print!("{text}"),
    }

    let has = |s: Status| report.records.iter().any(|r| r.status == s);
    if has(Status::Fail) {
        ExitCode::from(EXIT_FAIL)
    } else if cfg.strict && has(Status::Skipped) {
        ExitCode::from(EXIT_BUDGET)
    } else {
        ExitCode::SUCCESS
    }
}
