//! Run the full pipeline and print the stage trail.

use quatrec::builtins;
use quatrec::recognition::recognize;
use quatrec::scalar::{BaseRing, Scalar};

fn main() {
    let q = |a, b| builtins::quaternion(&Scalar::from_ratio(a, 1), &Scalar::from_ratio(b, 1), BaseRing::Rational).unwrap();
    let cases = [
        ("hamilton", builtins::hamilton()),
        ("lipschitz", builtins::lipschitz()),
        ("(2, 5)", q(2, 5)),
        ("(1, 1)", q(1, 1)),
        ("M2(Q)", builtins::matrix(2, BaseRing::Rational).unwrap()),
        ("M2(F2)", builtins::matrix(2, BaseRing::Prime(2)).unwrap()),
    ];
    for (name, alg) in cases {
        let out = recognize(&alg);
        println!("{name}: {:?}", out.status);
        for s in &out.stages {
            println!("    {:?}: {:?} ({})", s.stage, s.result, s.detail);
        }
        if let Some(qs) = out.working(&alg) {
            let lifted = alg.lift_to_field();
            println!("    i = {}, j = {}, i² = {}, j² = {}", lifted.format(&qs.i), lifted.format(&qs.j), lifted.format(&qs.a), lifted.format(&qs.b));
        }
    }
}
