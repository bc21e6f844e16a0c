// Cluster states: vanishing two-tangles, one nonzero roof, equal candidates.

use qtangle::families::make_cluster;
use qtangle::monogamy::{analyze, MonogamyOptions};
use qtangle::Complex64;

fn main() {
    let [a, b, c, d] = [0.6, 0.3, 0.5, 0.55].map(|x| Complex64::new(x, 0.0));
    let psi = make_cluster(a, b, c, d).unwrap();
    let n = (a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr()).sqrt();
    let report = analyze(&psi, &MonogamyOptions::with_seed(0, 8)).unwrap();

    for (triple, v) in &report.roofs {
        println!("roof tau3_{triple} = {v:.6}");
    }
    println!("4|ad - bc|^2 = {:.6}", 4.0 * ((a * d - b * c) / (n * n)).norm_sqr());
    println!("candidates {:?}", report.candidates().iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>());
    println!("16|abcd|   = {:.6}", 16.0 * (a * b * c * d).norm() / n.powi(4));
}
