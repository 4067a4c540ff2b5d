//! Division versus split through Hilbert symbols, and norm multiplicativity.

use num_rational::BigRational;
use quatrec::norm::{hilbert_symbol, is_division, isotropy_search, NormForm, Place};
use quatrec::scalar::Scalar;

fn main() {
    let r = |n: i64| BigRational::from_integer(n.into());
    for (a, b) in [(-1, -1), (1, 1), (2, 5), (-1, 3), (3, 5), (-2, -5)] {
        let v = is_division(&r(a), &r(b));
        let symbols: Vec<String> = v.evidence.iter().map(|e| format!("({}, {})", e.place, e.symbol)).collect();
        println!("({a}, {b}): {:?} [{}] isotropic {:?}", v.status, symbols.join(" "), v.isotropic);
    }
    println!("(2, 5)_5 = {}", hilbert_symbol(&r(2), &r(5), Place::Prime(5)).unwrap());
    println!("isotropy search (2, 5) to height 50: {:?}", isotropy_search(&r(2), &r(5), 50));

    let n = NormForm::rational(2, 5).unwrap();
    let q = |v: [i64; 4]| v.map(|c| Scalar::from_ratio(c, 1));
    let x = q([1, 2, 3, 4]);
    println!("N(1 + 2i + 3j + 4k) = {}", n.norm(&x));
}
