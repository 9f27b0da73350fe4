//! Walk every extension of one finite module by another.  Classes are
//! indexed mixed-radix; each one builds a validated short exact sequence,
//! and the distinct middles form a small set of isomorphism types.

use extcat::fpmod::FpModule;
use extcat::rings::RingSpec;
use extcat::sesalg::{enumerate_middles, extension_from_class, ExtClass};

fn main() {
    let z = RingSpec::Integers;
    let right = FpModule::cyclic(z, 4);
    let left = FpModule::cyclic(z, 2);

    let total = ExtClass::count(&right, &left).unwrap();
    println!("Ext^1({right}, {left}) has {total} classes");
    assert_eq!(total, 2);

    for idx in 0..total {
        let class = ExtClass::from_index(&right, &left, idx).unwrap();
        let ses = extension_from_class(&right, &left, &class).unwrap();
        println!("  class {idx}: {ses}");
    }

    // the zero class splits, a nonzero one glues into Z/8
    let split = extension_from_class(&right, &left, &ExtClass::zero(&right, &left)).unwrap();
    assert_eq!(split.middle(), &FpModule::from_parts(z, 0, [2, 4]));
    let glued = extension_from_class(
        &right,
        &left,
        &ExtClass::from_index(&right, &left, 1).unwrap(),
    )
    .unwrap();
    assert_eq!(glued.middle(), &FpModule::cyclic(z, 8));

    // middles deduplicate to isomorphism types, and every middle has the
    // product order |left| * |right|
    let middles = enumerate_middles(&right, &left).unwrap();
    println!("distinct middles:");
    for m in &middles {
        println!("  {m}");
        assert_eq!(m.order(), Some(8));
    }
    assert_eq!(middles.len(), 2);

    // a richer pair: extensions of Z/12 by Z/6
    let r = FpModule::cyclic(z, 12);
    let l = FpModule::cyclic(z, 6);
    let n = ExtClass::count(&r, &l).unwrap();
    let types = enumerate_middles(&r, &l).unwrap();
    println!("Ext^1(Z/12, Z/6): {n} classes, {} middle types", types.len());
    for m in &types {
        println!("  {m}");
        assert_eq!(m.order(), Some(72));
    }
    assert_eq!(n, 6);
}
