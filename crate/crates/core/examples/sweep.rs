// Tangles along a one-parameter family, with sign transitions bracketed.

use qtangle::cli::{run_sweep, SweepSpec};
use qtangle::families::{Family, FamilySpec};
use qtangle::roof::RoofOptions;

fn main() {
    let spec = SweepSpec::new(FamilySpec::new(Family::PsiP), "p", 0.0, 1.0, 21, &["tau1_1", "tau2_23", "residue_1"]);
    let result = run_sweep(&spec, &RoofOptions::with_seed(0, 4)).unwrap();
    print!("{}", result.to_csv());
    println!();
    print!("{}", result.transitions_table());
}
