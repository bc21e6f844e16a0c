// Doubling a qubit of a three-qubit state and checking what survives.

use qtangle::families::make_telescope;
use qtangle::monogamy::{telescope_check, MonogamyOptions};
use qtangle::qstate::random_pure_state;
use qtangle::tangles::three_tangle_pure;

fn main() {
    let m = random_pure_state(3, 3).unwrap();
    let t = make_telescope(&m, 3, None).unwrap();
    println!("reference tau3 = {:.6}", three_tangle_pure(&m).unwrap());
    println!("telescoped state has {} qubits", t.n_qubits());

    let check = telescope_check(&m, &MonogamyOptions::with_seed(0, 8)).unwrap();
    for id in &check.identities {
        println!("{:<5} {:<48} {:.6} vs {:.6}", if id.pass { "ok" } else { "FAIL" }, id.name, id.lhs, id.rhs);
    }
    println!("all identities hold: {}", check.all_pass());
}
