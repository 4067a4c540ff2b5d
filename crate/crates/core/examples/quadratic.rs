//! A quadratic relation with central coefficients for a non-central element.

use quatrec::builtins;
use quatrec::recognition::quadratic_certificate;
use quatrec::scalar::{BaseRing, Scalar};

fn main() {
    let alg = builtins::quaternion(&Scalar::from_ratio(2, 1), &Scalar::from_ratio(5, 1), BaseRing::Rational).unwrap();
    let x = alg.element_i64(&[1, 2, -1, 3]);
    let cert = quadratic_certificate(&alg, &x).unwrap();
    println!("x = {}", alg.format(&x));
    println!("v = (x, y) with y = {}: {}", alg.format(&cert.y), alg.format(&cert.v));
    println!("{} x² + {} x + {} = 0", alg.format(&cert.a), alg.format(&cert.b), alg.format(&cert.c));
    let lhs = &(&alg.mul(&cert.a, &alg.square(&x)) + &alg.mul(&cert.b, &x)) + &cert.c;
    println!("evaluated: {}", alg.format(&lhs));
    assert!(cert.holds(&alg));

    match quadratic_certificate(&alg, &alg.scalar_i64(7)) {
        Err(e) => println!("central input: {e}"),
        Ok(_) => unreachable!(),
    }
}
