//! Centers and the field test, including an enlarged center.

use quatrec::analysis::center_basis;
use quatrec::builtins;
use quatrec::scalar::{BaseRing, Scalar};

fn main() {
    let cases = [
        ("hamilton", builtins::hamilton()),
        ("ext(hamilton, 2)", builtins::quadratic_extension_tensor(&builtins::hamilton(), &Scalar::from_ratio(2, 1)).unwrap()),
        ("ext(hamilton, 4)", builtins::quadratic_extension_tensor(&builtins::hamilton(), &Scalar::from_ratio(4, 1)).unwrap()),
        ("diagonal(2)", builtins::diagonal(2, BaseRing::Rational).unwrap()),
        ("upper(3)", builtins::upper_triangular(3, BaseRing::Rational).unwrap()),
    ];
    for (name, alg) in cases {
        let c = center_basis(&alg);
        println!("{name}: center dim {}, field {:?} ({})", c.dim(), c.is_field, c.note);
        for z in &c.elements {
            println!("    {}", alg.format(z));
        }
        if let Some(w) = &c.field_witness {
            println!("    witness verifies: {}", w.verify(&alg));
        }
    }
}
