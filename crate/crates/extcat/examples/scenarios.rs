//! Replay the bundled worked examples programmatically.  Each scenario is
//! a ring and a step list with expected outcomes; the runner reports every
//! step with the certificate or detail it produced.

use extcat::scenario::{bundled, run};

fn main() {
    let mut all_passed = true;
    for scenario in bundled() {
        println!("{} — {}", scenario.name, scenario.title);
        let report = run(&scenario, 500, 0).unwrap();
        for step in &report.steps {
            let tag = if step.passed { "ok" } else { "FAIL" };
            println!("  [{tag}] {} — {}", step.description, step.detail);
        }
        all_passed &= report.passed();
        println!();
    }
    assert!(all_passed, "every bundled scenario must pass");
    println!("all scenarios passed");
}
