//! Decide membership in extension subcategories and demand certificates.
//! A member of `ext(C1,C2)` comes with a validated short exact sequence
//! whose ends land in the two classes; a non-member comes with the reason
//! no decomposition can exist.

use extcat::fpmod::FpModule;
use extcat::rings::RingSpec;
use extcat::serrecat::{member_fp, member_sym, witness_fp, CategoryDescriptor, Decision, Witness};
use extcat::symmod::{Atom, SymModule};

fn main() {
    let z = RingSpec::Integers;

    // Z/12 splits across the windows {2} and {3}
    let m = FpModule::cyclic(z, 12);
    let c = CategoryDescriptor::parse("ext(supp{2},supp{3})", z).unwrap();
    let verdict = member_fp(&m, &c).unwrap();
    println!("member({m}, {c}) = {}", verdict.decision);
    assert_eq!(verdict.decision, Decision::Member);
    match witness_fp(&m, &c).unwrap() {
        Witness::Concrete(ses) => {
            println!("witness: {ses}");
            assert_eq!(ses.left(), &FpModule::cyclic(z, 4));
            assert_eq!(ses.right(), &FpModule::cyclic(z, 3));
        }
        Witness::Symbolic(_) => unreachable!("presentations get concrete witnesses"),
    }

    // swapping the windows swaps the decomposition
    let swapped = CategoryDescriptor::parse("ext(supp{3},supp{2})", z).unwrap();
    if let Witness::Concrete(ses) = witness_fp(&m, &swapped).unwrap() {
        println!("swapped witness: {ses}");
        assert_eq!(ses.left(), &FpModule::cyclic(z, 3));
        assert_eq!(ses.right(), &FpModule::cyclic(z, 4));
    }

    // membership fails when support leaks outside the union of windows
    let outside = member_fp(&FpModule::cyclic(z, 35), &c).unwrap();
    println!("member(Z/35, {c}) = {}", outside.decision);
    assert_eq!(outside.decision, Decision::NonMember);
    println!("  note: {}", outside.note.unwrap());

    // symbolic modules with infinitely generated pieces work the same way
    let mixed = SymModule::new(
        RingSpec::localized_at(2).unwrap(),
        [(Atom::Free, 1), (Atom::Prufer(2), 1)],
    )
    .unwrap();
    let fg_artin =
        CategoryDescriptor::parse("ext(fg,artin)", mixed.ring()).unwrap();
    let v = member_sym(&mixed, &fg_artin).unwrap();
    println!("member({mixed}, {fg_artin}) = {}", v.decision);
    assert_eq!(v.decision, Decision::Member);
    if let Some(w) = v.witness {
        println!("witness: {w}");
    }

    // the zero module belongs to every category
    let zero = FpModule::zero(z);
    for text in ["fg", "artin", "tor", "supp{5}", "ext(tor,fg)"] {
        let cat = CategoryDescriptor::parse(text, z).unwrap();
        assert_eq!(member_fp(&zero, &cat).unwrap().decision, Decision::Member);
    }
    println!("zero module is everywhere a member");
}
