//! Sweep all unital tables of dimension 3 over F2.

use quatrec::cli::enumerate::enumerate;

fn main() {
    let s = enumerate(3, 2).unwrap();
    println!(
        "{} tables, {} associative: {} commutative, {} fail h1, {} fail h2, {} pass both",
        s.tables, s.associative, s.commutative, s.fails_h1, s.fails_h2, s.passes_both
    );
    for sample in &s.samples {
        let ok = sample.witness.as_ref().map(|w| w.verify(&sample.algebra));
        println!("  first {:?} at table {}, witness replays: {ok:?}", sample.class, sample.index);
    }
    assert!(s.consistent());
}
