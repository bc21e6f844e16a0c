// Minimum of tau3 along superpositions of two orthogonal three-qubit states.

use qtangle::roof::characteristic_curve;
use qtangle::verify::chi1_branches;

fn main() {
    let (ghz, product) = chi1_branches().unwrap();
    let curve = characteristic_curve((&ghz, &product), 11).unwrap();
    println!("p      min tau3   p^2");
    for (p, t) in curve {
        println!("{p:.1}    {t:.6}   {:.6}", p * p);
    }
}
