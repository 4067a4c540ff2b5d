//! Fractions over the Lipschitz integers.

use quatrec::builtins;
use quatrec::localization::{localize, Localization};

fn main() {
    let l = builtins::lipschitz();
    let loc = Localization::new(&l);
    let (i, j) = (l.basis(1), l.basis(2));

    let half_i = loc.over_integer(i.clone(), 2).unwrap();
    let third_j = loc.over_integer(j.clone(), 3).unwrap();
    println!("i/2 + j/3 = {}", loc.frac_add(&half_i, &third_j).unwrap());
    println!("(i/2)(j/3) = {}", loc.frac_mul(&half_i, &third_j).unwrap());

    let a = loc.over_integer(l.element_i64(&[2, 2, 0, 0]), 2).unwrap();
    let b = loc.embed(&(&l.basis(0) + &i)).unwrap();
    println!("(2 + 2i)/2 = (1 + i)/1: {}", loc.frac_eq(&a, &b).unwrap());

    match loc.fraction(i.clone(), j.clone()) {
        Err(e) => println!("i/j: {e}"),
        Ok(_) => unreachable!(),
    }

    let (q, center) = localize(&l);
    let x = loc.realize(&half_i, &center).unwrap();
    println!("realized over {}: {}", q.base(), q.format(&x));
}
