//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the report is printed even when
//! everything passes.

use std::process::ExitCode;

use catalan_core::selfcheck::{self, CriterionReport};

type Check = (&'static str, fn() -> CriterionReport);

fn main() -> ExitCode {
    let checks: [Check; 9] = [
        ("uniqueness sweep", selfcheck::uniqueness_sweep),
        ("pruned equivalence", selfcheck::pruned_equivalence),
        ("lte oracle", || selfcheck::lte_oracle(10_000)),
        ("gaussian identities", selfcheck::gaussian_identities),
        ("pell", selfcheck::pell_checks),
        ("descent suite", || selfcheck::descent_suite(10_000)),
        ("endgame constants", selfcheck::endgame_constants),
        ("cassels chain", selfcheck::cassels_chain),
        ("certificate integrity", || {
            selfcheck::certificate_integrity(1_000)
        }),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();

    let mut failed = 0;
    for (name, check) in checks {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let report = check();
        println!("{report}");
        if !report.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
