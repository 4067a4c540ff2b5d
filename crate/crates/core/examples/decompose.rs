//! Write elements over 1, i, j, k with central coefficients, then rebuild them.

use quatrec::builtins;
use quatrec::recognition::{completeness_check, decompose, recognize};
use quatrec::scalar::Scalar;

fn main() {
    let h = builtins::hamilton();
    let qs = recognize(&h).working(&h).expect("hamilton is recognized");
    let x = h.element_i64(&[1, 2, 3, 4]);
    let d = decompose(&h, &qs, &x).unwrap();
    let coords: Vec<String> = d.coefficients().iter().map(|c| h.format(c)).collect();
    println!("coordinates of {}: ({})", h.format(&x), coords.join(", "));
    println!("residual: {}", h.format(&d.m));
    assert_eq!(d.reconstruct(&h, &qs), x);

    // coefficients live in a two-dimensional center here
    let e = builtins::quadratic_extension_tensor(&h, &Scalar::from_ratio(2, 1)).unwrap();
    let qs = recognize(&e).working(&e).expect("recognized over its center");
    let report = completeness_check(&e, &qs).unwrap();
    println!("ext(hamilton, 2): center rank {} × 4, spanning rank {}, dim {}", report.center_rank, report.spanning_rank, report.dim);
    let y = e.element_i64(&[1, 0, 2, 0, 0, 3, 0, -1]);
    let d = decompose(&e, &qs, &y).unwrap();
    for (name, c) in ["1", "i", "j", "k"].iter().zip(d.coefficients()) {
        println!("    {name}: {}", e.format(c));
    }
    assert_eq!(d.reconstruct(&e, &qs), y);
}
