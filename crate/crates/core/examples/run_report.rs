//! Running checks through the library runner and printing the JSON report.

use reflexlab::catalog::FamilySpec;
use reflexlab::runner::{run, CheckKind, RunOptions};
use reflexlab::signed_perm::DEFAULT_MAX_ORDER;

fn main() -> reflexlab::Result<()> {
    let opts = RunOptions {
        command: "example".into(),
        families: vec![
            FamilySpec::Hyperoctahedral { n: 2 },
            FamilySpec::Dihedral { n: 4 },
        ],
        checks: CheckKind::parse_list(&["structure", "dihedral"])?,
        lenient: true,
        seed: 1,
        trials: 5,
        max_group_order: DEFAULT_MAX_ORDER,
        e: None,
        timings: false,
    };
    let report = run(&opts)?;
    for line in report.summary_lines() {
        eprintln!("{line}");
    }
    print!("{}", report.to_json());
    Ok(())
}
