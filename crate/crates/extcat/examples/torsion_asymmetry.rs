//! Order matters in extension pairs.  Over the integers the rationals are
//! an extension of a torsion module by a finitely generated one — but not
//! the other way around, since any torsion submodule of Q is zero and Q is
//! not finitely generated.

use extcat::rings::RingSpec;
use extcat::serrecat::{member_sym, serre_criterion, CategoryDescriptor, CriterionOutcome, Decision};
use extcat::symmod::{Atom, SymModule};

fn main() {
    let z = RingSpec::Integers;
    let q = SymModule::atom(z, Atom::Rationals).unwrap();
    let fg_tor = CategoryDescriptor::parse("ext(fg,tor)", z).unwrap();
    let tor_fg = CategoryDescriptor::parse("ext(tor,fg)", z).unwrap();

    let forward = member_sym(&q, &fg_tor).unwrap();
    println!("member(Q, ext(fg,tor)) = {}", forward.decision);
    assert_eq!(forward.decision, Decision::Member);
    println!("  witness: {}", forward.witness.unwrap());

    let backward = member_sym(&q, &tor_fg).unwrap();
    println!("member(Q, ext(tor,fg)) = {}", backward.decision);
    assert_eq!(backward.decision, Decision::NonMember);
    println!("  note: {}", backward.note.unwrap());

    // the criterion sees the same asymmetry at the level of whole pairs
    let fg = CategoryDescriptor::parse("fg", z).unwrap();
    let tor = CategoryDescriptor::parse("tor", z).unwrap();
    match serre_criterion(z, &fg, &tor, 500).unwrap() {
        CriterionOutcome::Confirmed { reason } => println!("(fg, tor): confirmed — {reason}"),
        other => panic!("expected confirmation, got {other:?}"),
    }
    match serre_criterion(z, &tor, &fg, 500).unwrap() {
        CriterionOutcome::Refuted { module, .. } => {
            println!("(tor, fg): refuted by {module}");
            assert_eq!(module, q);
        }
        other => panic!("expected refutation, got {other:?}"),
    }

    // the rational dimension tells the two pairs apart on every mixed module
    for atoms in [
        vec![(Atom::Free, 2)],
        vec![(Atom::Rationals, 1), (Atom::Cyclic(3, 2), 1)],
        vec![(Atom::Prufer(5), 2)],
        vec![(Atom::Free, 1), (Atom::Rationals, 1), (Atom::Prufer(2), 1)],
    ] {
        let m = SymModule::new(z, atoms).unwrap();
        let in_fwd = member_sym(&m, &fg_tor).unwrap().decision;
        let in_bwd = member_sym(&m, &tor_fg).unwrap().decision;
        println!("{m}: ext(fg,tor) {in_fwd}, ext(tor,fg) {in_bwd}");
        assert_eq!(in_fwd, Decision::Member);
        let expect = if m.rationals_count() == 0 { Decision::Member } else { Decision::NonMember };
        assert_eq!(in_bwd, expect);
    }
}
