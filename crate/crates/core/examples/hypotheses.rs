//! The two commutator hypotheses on algebras that separate them.

use quatrec::analysis::{check_h1, check_h2, H1Mode, H2Mode, SamplingConfig};
use quatrec::builtins;
use quatrec::scalar::BaseRing;

fn main() {
    let sampled = SamplingConfig::default();
    let cases = [
        ("M2(Q)", builtins::matrix(2, BaseRing::Rational).unwrap(), H2Mode::Symbolic, H1Mode::Randomized(sampled)),
        ("U3(Q)", builtins::upper_triangular(3, BaseRing::Rational).unwrap(), H2Mode::Randomized(sampled), H1Mode::Randomized(sampled)),
        ("M2(F3)", builtins::matrix(2, BaseRing::Prime(3)).unwrap(), H2Mode::Exhaustive, H1Mode::Exhaustive),
        ("hamilton", builtins::hamilton(), H2Mode::Symbolic, H1Mode::Randomized(sampled)),
    ];
    for (name, alg, m2, m1) in cases {
        let h2 = check_h2(&alg, m2).unwrap();
        let h1 = check_h1(&alg, m1).unwrap();
        println!("{name}");
        println!("  h2: {}", serde_json::to_string(&h2).unwrap());
        println!("  h1: {}", serde_json::to_string(&h1).unwrap());
        for w in h2.witness().into_iter().chain(h1.witness()) {
            println!("  witness replays: {}", w.verify(&alg));
        }
    }
}
