//! Compute supports and associated primes, then split a module along a
//! specialization-closed window: the section functor carves out the largest
//! submodule supported inside the window, and the two pieces partition the
//! associated primes.

use extcat::fpmod::{ass_primes, gamma_w, support, FpModule};
use extcat::rings::{RingSpec, SpclSet};
use std::collections::BTreeSet;

fn main() {
    let z = RingSpec::Integers;
    let m = FpModule::from_parts(z, 1, [4, 12, 9]);
    println!("M = {m}");
    println!("supp M = {}", support(&m));
    let ass: Vec<String> = ass_primes(&m).iter().map(|p| p.to_string()).collect();
    println!("ass M  = {{{}}}", ass.join(","));

    // sections supported at {2}: the full 2-primary part
    let w = SpclSet::of_maximals(z, [2]).unwrap();
    let parts = gamma_w(&m, &w).unwrap();
    println!("window W = {w}");
    println!("  gamma_W(M) = {}", parts.sub);
    println!("  M/gamma    = {}", parts.quotient);
    assert_eq!(parts.sub, FpModule::from_parts(z, 0, [4, 4]));
    assert_eq!(parts.quotient, FpModule::from_parts(z, 1, [3, 9]));

    // the split is exact: inclusion then projection is the zero map
    let through = parts.include.compose(&parts.project).unwrap();
    assert!(through.is_zero_map());

    // associated primes separate cleanly across the window
    let inside = ass_primes(&parts.sub);
    let outside = ass_primes(&parts.quotient);
    assert!(inside.is_disjoint(&outside));
    let union: BTreeSet<_> = inside.union(&outside).cloned().collect();
    assert_eq!(union, ass_primes(&m));
    println!("ass primes split: inside {:?}, outside {:?}", inside.len(), outside.len());

    // a window holding every maximal ideal captures all torsion
    let all = SpclSet::all_maximals(z);
    let torsion = gamma_w(&m, &all).unwrap();
    println!("gamma over all maximals = {} (torsion part)", torsion.sub);
    assert_eq!(torsion.sub, FpModule::from_parts(z, 0, [4, 12, 9]));
    assert_eq!(torsion.quotient, FpModule::free(z, 1));
}
