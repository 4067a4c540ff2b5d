//! Build presentations, validate them, and see what a broken table reports.

use quatrec::algebra::{Algebra, Element};
use quatrec::builtins;
use quatrec::scalar::{BaseRing, Scalar};

fn main() {
    for (name, alg) in [
        ("hamilton", builtins::hamilton()),
        ("M2(Q)", builtins::matrix(2, BaseRing::Rational).unwrap()),
        ("U3(F3)", builtins::upper_triangular(3, BaseRing::Prime(3)).unwrap()),
    ] {
        let r = alg.validate();
        println!("{name:>8}: dim {}, associative {}, unital {}, commutative {}", alg.dim(), r.associative(), r.unital(), r.commutative());
    }

    // flip the sign of i·j in hamilton
    let h = builtins::hamilton();
    let mut table = h.table().to_vec();
    table[4 + 2] = Element::new(vec![Scalar::from_ratio(0, 1), Scalar::from_ratio(0, 1), Scalar::from_ratio(0, 1), Scalar::from_ratio(-1, 1)]);
    let broken = Algebra::new(BaseRing::Rational, h.unit().clone(), table, None).unwrap();
    let r = broken.validate();
    println!("broken: associativity failure at {:?}", r.associativity_failure);

    let (i, j) = (h.basis(1), h.basis(2));
    println!("in hamilton: ij = {}, (i, j) = {}", h.format(&h.mul(&i, &j)), h.format(&h.comm(&i, &j)));
}
