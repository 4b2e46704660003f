//! Checks the closure tables against seeded trials and writes a JSON report.
//!
//!     cargo run --release --example verify -- [TRIALS] [REPORT]

use dca::lab::runner::{verify_with, Outcome, VerifyConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(20);
    let report = args.next().unwrap_or_else(|| "closure-report.json".into());
    let vc = VerifyConfig { trials, ..VerifyConfig::default() };
    let r = verify_with(&vc, |c| {
        if c.outcome == Outcome::Fail {
            println!("FAIL {} {} {}", c.table.name(), c.class.name(), c.op);
        }
    });
    std::fs::write(&report, serde_json::to_string_pretty(&r.to_json()).unwrap()).unwrap();
    println!("{}", r.to_json()["summary"]);
    std::process::exit(if r.passed() { 0 } else { 1 });
}
