// Residual tangles that disagree between qubits rule out a common four-tangle.

use qtangle::families::{make_chi1, make_psi_p};
use qtangle::monogamy::{analyze, MonogamyOptions};

fn main() {
    let opts = MonogamyOptions::with_seed(0, 8);
    for (name, psi) in [("chi1", make_chi1()), ("psi_p(0.8)", make_psi_p(0.8).unwrap())] {
        let report = analyze(&psi, &opts).unwrap();
        println!("== {name}");
        print!("{}", report.table());
        println!();
    }
}
