// Convex roof of the three-tangle for a mixed three-qubit marginal.

use qtangle::families::make_chi1;
use qtangle::roof::{roof_tau3, RoofOptions, RoofProblem};

fn main() {
    let rho = make_chi1().reduce(&[1, 2, 3]).unwrap();
    let problem = RoofProblem::new(rho, 1.0).unwrap();
    let result = roof_tau3(&problem, &RoofOptions::with_seed(1, 8)).unwrap();

    println!("rank {}, {} restarts ({} converged)", result.rank, result.restarts_used, result.converged_restarts);
    println!("roof tau3 <= {:.6}", result.value);
    println!("reconstruction residual {:.1e}", result.reconstruction_residual);
    for (k, c) in result.decomposition.iter().enumerate() {
        let tau = qtangle::tangles::three_tangle_pure(&c.state.load().unwrap().state).unwrap();
        println!("  p_{k} = {:.4}  tau3 = {:.4}", c.weight, tau);
    }

    // concave transforms f(x) = x^beta give a different roof
    for beta in [0.25, 0.5, 2.0] {
        let p = RoofProblem::new(make_chi1().reduce(&[1, 2, 3]).unwrap(), beta).unwrap();
        let r = roof_tau3(&p, &RoofOptions::with_seed(1, 8)).unwrap();
        println!("beta {beta}: f^-1(roof f(tau3)) = {:.6}", r.value);
    }
}
