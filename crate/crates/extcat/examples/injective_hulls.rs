//! Injective hulls of symbolic modules and the closure property they
//! induce: hull-closed categories keep the hull of every member, and the
//! classified extension pairs with supported or artinian classes are all
//! hull-closed.

use extcat::rings::RingSpec;
use extcat::serrecat::{member_sym, CategoryDescriptor, Decision};
use extcat::symmod::{injective_hull, Atom, SymModule};

fn main() {
    let z = RingSpec::Integers;
    let z2 = RingSpec::localized_at(2).unwrap();

    // hulls atom by atom: free -> rationals, cyclic -> Prüfer, divisible fixed
    let cases = [
        (SymModule::atom(z, Atom::Free).unwrap(), SymModule::atom(z, Atom::Rationals).unwrap()),
        (
            SymModule::atom(z, Atom::Cyclic(3, 2)).unwrap(),
            SymModule::atom(z, Atom::Prufer(3)).unwrap(),
        ),
        (
            SymModule::atom(z, Atom::Prufer(5)).unwrap(),
            SymModule::atom(z, Atom::Prufer(5)).unwrap(),
        ),
        (
            SymModule::atom(z, Atom::Rationals).unwrap(),
            SymModule::atom(z, Atom::Rationals).unwrap(),
        ),
    ];
    for (m, expected) in cases {
        let e = injective_hull(&m);
        println!("E({m}) = {e}");
        assert_eq!(e, expected);
        // hulls are idempotent
        assert_eq!(injective_hull(&e), e);
    }

    // a mixed module hulls summand by summand
    let mixed = SymModule::new(z, [(Atom::Free, 2), (Atom::Cyclic(2, 3), 1)]).unwrap();
    let hull = injective_hull(&mixed);
    println!("E({mixed}) = {hull}");
    assert_eq!(
        hull,
        SymModule::new(z, [(Atom::Rationals, 2), (Atom::Prufer(2), 1)]).unwrap()
    );

    // hull-closure of supported-by-artinian pairs over the localized ring
    let c = CategoryDescriptor::parse("ext(supp{2},artin)", z2).unwrap();
    let members = [
        SymModule::new(z2, [(Atom::Cyclic(2, 2), 2)]).unwrap(),
        SymModule::new(z2, [(Atom::Prufer(2), 1), (Atom::Cyclic(2, 1), 1)]).unwrap(),
    ];
    for m in members {
        assert_eq!(member_sym(&m, &c).unwrap().decision, Decision::Member);
        let e = injective_hull(&m);
        let v = member_sym(&e, &c).unwrap();
        println!("{m} in {c}, and E({m}) = {e} is {}", v.decision);
        assert_eq!(v.decision, Decision::Member);
    }
}
