//! Base-change constructions on module maps: the pushout glues two maps
//! out of a shared source, the pullback matches two maps into a shared
//! target, and both come with the maps that make the square commute.

use extcat::fpmod::FpModule;
use extcat::hom::ModuleHom;
use extcat::rings::RingSpec;
use extcat::sesalg::{pullback, pushout};

fn main() {
    let z = RingSpec::Integers;
    let z4 = FpModule::cyclic(z, 4);
    let z8 = FpModule::cyclic(z, 8);
    let z2 = FpModule::cyclic(z, 2);

    // pushout of Z/4 <- Z/2 -> Z/8 along the two multiplications-by-two
    let to_z4 = ModuleHom::new(z2.clone(), z4.clone(), vec![vec![2]]).unwrap();
    let to_z8 = ModuleHom::new(z2.clone(), z8.clone(), vec![vec![4]]).unwrap();
    let (po, from_z4, from_z8) = pushout(&to_z4, &to_z8).unwrap();
    println!("pushout of Z/4 <-x2- Z/2 -x4-> Z/8 = {po}");
    assert_eq!(po.order(), Some(16));

    // the square commutes: both composites from Z/2 agree
    let around_left = to_z4.compose(&from_z4).unwrap();
    let around_right = to_z8.compose(&from_z8).unwrap();
    assert_eq!(around_left, around_right);
    println!("pushout square commutes");

    // pullback of Z/4 -> Z/2 <- Z/8 along the two reductions
    let red4 = ModuleHom::new(z4.clone(), z2.clone(), vec![vec![1]]).unwrap();
    let red8 = ModuleHom::new(z8.clone(), z2.clone(), vec![vec![1]]).unwrap();
    let (pb, pr4, pr8) = pullback(&red4, &red8).unwrap();
    println!("pullback of Z/4 -> Z/2 <- Z/8 = {pb}");
    assert_eq!(pb.order(), Some(16));

    let through4 = pr4.compose(&red4).unwrap();
    let through8 = pr8.compose(&red8).unwrap();
    assert_eq!(through4, through8);
    println!("pullback square commutes");

    // degenerate corners: pushout along zero maps is the direct sum
    let zero4 = ModuleHom::zero(&z2, &z4);
    let zero8 = ModuleHom::zero(&z2, &z8);
    let (sum, _, _) = pushout(&zero4, &zero8).unwrap();
    println!("pushout along zero maps = {sum}");
    assert_eq!(sum, FpModule::from_parts(z, 0, [4, 8]));
}
