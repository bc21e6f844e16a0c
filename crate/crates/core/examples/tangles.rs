// One-, two- and three-tangles of a three-qubit state, with CKW residues.

use qtangle::families::{make_ghz, make_w};
use qtangle::qstate::random_pure_state;
use qtangle::tangles::{ckw_residue, TangleReport};

fn main() {
    for (name, psi) in [
        ("GHZ", make_ghz(3).unwrap()),
        ("W", make_w(3).unwrap()),
        ("random", random_pure_state(3, 7).unwrap()),
    ] {
        let report = TangleReport::compute(&psi, None).unwrap();
        println!("== {name}");
        print!("{}", report.table());
        // for three qubits the residue is the same for every focus qubit
        println!("residue spread: {:.2e}\n", (ckw_residue(&psi, 1).unwrap() - ckw_residue(&psi, 3).unwrap()).abs());
    }
}
