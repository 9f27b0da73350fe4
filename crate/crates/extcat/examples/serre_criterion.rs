//! Test pairs of subcategories for closure under extensions.  Most familiar
//! pairs are closed and confirm by a structural route; the famous exception
//! is artinian-by-finitely-generated over a local ring, refuted by the
//! rationals sitting between the ring and its Prüfer quotient.

use extcat::rings::RingSpec;
use extcat::serrecat::{closure_audit, serre_criterion, CategoryDescriptor, CriterionOutcome};
use extcat::symmod::{Atom, SymModule};

fn main() {
    let z = RingSpec::Integers;
    let z2 = RingSpec::localized_at(2).unwrap();
    let parse = |t: &str, r| CategoryDescriptor::parse(t, r).unwrap();

    // closed pairs confirm with a reason
    for (left, right) in [("supp{2}", "supp{3}"), ("fg", "tor"), ("fg", "artin")] {
        let c1 = parse(left, z);
        let c2 = parse(right, z);
        match serre_criterion(z, &c1, &c2, 500).unwrap() {
            CriterionOutcome::Confirmed { reason } => {
                println!("({left}, {right}) over Z: confirmed — {reason}");
            }
            other => panic!("expected confirmation, got {other:?}"),
        }
    }

    // the counterexample: (artin, fg) over the localized ring
    let artin = parse("artin", z2);
    let fg = parse("fg", z2);
    match serre_criterion(z2, &artin, &fg, 500).unwrap() {
        CriterionOutcome::Refuted { module, witness } => {
            println!("(artin, fg) over Z_(2): refuted by {module}");
            let q = SymModule::atom(z2, Atom::Rationals).unwrap();
            assert_eq!(module, q);
            let w = witness.expect("the reversed pair certifies the module");
            println!("  reversed-pair certificate: {w}");
        }
        other => panic!("expected refutation, got {other:?}"),
    }

    // the audit finds the same escape by sampling extensions
    let pair = parse("ext(artin,fg)", z2);
    let report = closure_audit(z2, &pair, 300, 0).unwrap();
    assert!(!report.clean());
    println!(
        "audit of ext(artin,fg): {} violation(s) in {} samples",
        report.violations.len(),
        report.samples
    );
    println!("  {}", report.violations[0]);

    // while the reversed pair audits clean
    let reversed = parse("ext(fg,artin)", z2);
    let clean = closure_audit(z2, &reversed, 300, 0).unwrap();
    assert!(clean.clean());
    println!("audit of ext(fg,artin): clean over {} samples", clean.samples);
}
