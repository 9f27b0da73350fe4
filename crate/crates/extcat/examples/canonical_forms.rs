//! Reduce presentations to canonical form over the integers and over a
//! localization.  The same relation matrix names different modules in the
//! two rings: localizing at 2 forgets every factor of odd order.

use extcat::fpmod::{smith_normalize, FpModule, Presentation};
use extcat::rings::RingSpec;

fn main() {
    let z = RingSpec::Integers;
    let z2 = RingSpec::localized_at(2).unwrap();

    let rows = vec![vec![2, 0, 0], vec![0, 12, 0]];
    let over_z = smith_normalize(&Presentation::new(z, rows.clone()).unwrap());
    let over_z2 = smith_normalize(&Presentation::new(z2, rows).unwrap());

    println!("relations [[2,0,0],[0,12,0]] on three generators");
    println!("over Z:     {over_z}");
    println!("over Z_(2): {over_z2}");
    assert_eq!(over_z, FpModule::from_parts(z, 1, [2, 12]));
    assert_eq!(over_z2, FpModule::from_parts(z2, 1, [2, 4]));

    // a presentation that hides its torsion in off-diagonal entries
    let twisted = Presentation::new(z, vec![vec![4, 2], vec![2, 4]]).unwrap();
    let m = smith_normalize(&twisted);
    println!("[[4,2],[2,4]] presents {m}");
    assert_eq!(m, FpModule::from_parts(z, 0, [2, 6]));

    // over the localized ring only the 2-part survives: Z/2 + Z/6 -> Z/2 + Z/2
    let local = smith_normalize(&Presentation::new(z2, vec![vec![4, 2], vec![2, 4]]).unwrap());
    println!("same matrix over Z_(2) presents {local}");
    assert_eq!(local, FpModule::from_parts(z2, 0, [2, 2]));

    // factors always form a divisibility chain with every factor >= 2
    let big = Presentation::new(z, vec![vec![6, 10, 15], vec![10, 6, 0], vec![4, 4, 4]]).unwrap();
    let b = smith_normalize(&big);
    println!("a denser presentation gives {b}");
    let f = b.factors();
    for w in f.windows(2) {
        assert_eq!(w[1] % w[0], 0);
    }
    assert!(f.iter().all(|&d| d >= 2));
    println!("canonical invariants: rank {}, factors {:?}", b.rank(), f);
}
