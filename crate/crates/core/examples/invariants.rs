// Polynomial SL(2,C) invariants from Pauli combs, named and user-defined.

use qtangle::comb::{self, CombSpec};
use qtangle::families::{make_cluster, make_ghz};
use qtangle::Complex64;

fn main() {
    let ghz = make_ghz(4).unwrap();
    let [a, b, c, d] = [0.6, 0.3, 0.5, 0.55].map(|x| Complex64::new(x, 0.0));
    let cluster = make_cluster(a, b, c, d).unwrap();

    for name in ["H", "C4_12", "C4_13", "C4_14", "F1", "F2", "F3"] {
        let x = comb::evaluate_named(name, &ghz).unwrap();
        let y = comb::evaluate_named(name, &cluster).unwrap();
        println!("{name:<6} GHZ4 {:>10.6}   cluster {:>10.6}", x.normalized(), y.normalized());
    }

    // combs print in the same syntax `CombSpec::parse` reads
    let tau3 = comb::tau3_comb();
    println!("\ntau3 comb: {tau3}");
    let reparsed = CombSpec::parse(&tau3.to_string()).unwrap();
    let w = qtangle::qstate::random_pure_state(3, 1).unwrap();
    println!("built-in {:.6}  reparsed {:.6}", tau3.eval(&w).unwrap().modulus, reparsed.eval(&w).unwrap().modulus);

    // the two-qubit concurrence as a one-copy comb
    let conc = CombSpec::parse("22").unwrap();
    println!("{conc} on a Bell pair: |value| = {:.6}", conc.eval(&make_ghz(2).unwrap()).unwrap().modulus);
}
