//! Generalised monogamy diagnostics for four-qubit pure states.
//!
//! For each qubit `j` the residue `R_j = tau1_j - sum_k tau2_jk` is compared
//! with the roof three-tangles of the three triples containing `j`; whatever is
//! left over, `tau4_j = R_j - sum roof`, is the four-tangle a monogamy equality
//! of additive form would have to supply. Roof values are upper bounds, so
//! every `tau4_j` is a lower-bound estimate: mismatches larger than the
//! tolerance are conclusive, agreement holds within optimiser accuracy.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::comb::{self, FOUR_QUBIT_INVARIANTS};
use crate::error::{Error, Result};
use crate::families::make_telescope;
use crate::qstate::PureState;
use crate::roof::{self, RoofOptions};
use crate::tangles::{fmt6, one_tangle, three_tangle_pure, two_tangle};

/// Default tolerance of the consistency flag; dominated by roof accuracy.
pub const DEFAULT_CONSISTENCY_TOLERANCE: f64 = 1e-3;
/// `F1` values below this leave the scaling factor undefined.
const SCALING_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct MonogamyOptions {
    pub roof: RoofOptions,
    /// Exponent of the monotone transform `f(x) = x^beta` applied inside the roofs.
    pub beta: f64,
    pub tolerance: f64,
}

impl Default for MonogamyOptions {
    fn default() -> Self {
        MonogamyOptions {
            roof: RoofOptions::default(),
            beta: 1.0,
            tolerance: DEFAULT_CONSISTENCY_TOLERANCE,
        }
    }
}

impl MonogamyOptions {
    pub fn with_seed(seed: u64, restarts: usize) -> Self {
        MonogamyOptions { roof: RoofOptions::with_seed(seed, restarts), ..Default::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QubitMonogamy {
    pub one_tangle: f64,
    pub two_tangle_sum: f64,
    pub residue: f64,
    /// Sum of the (transformed) roof three-tangles over triples containing the qubit.
    pub roof_sum: f64,
    /// `residue - roof_sum`.
    pub tau4_candidate: f64,
    /// `tau4_candidate / F1^(2/3)`; `None` when F1 vanishes.
    pub scaling_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonogamyReport {
    pub per_qubit: BTreeMap<String, QubitMonogamy>,
    pub roofs: BTreeMap<String, f64>,
    pub consistent: bool,
    pub max_mismatch: f64,
    pub tolerance: f64,
    pub beta: f64,
    /// Every registered four-qubit invariant rescaled to homogeneity degree four.
    pub tau4_from_invariants: BTreeMap<String, f64>,
    /// Mean of the candidates divided by `F1^(2/3)`; `None` when F1 vanishes.
    pub scaling_s: Option<f64>,
    /// Roofs are upper bounds, hence the candidates are lower bounds.
    pub tau4_is_lower_bound: bool,
}

impl MonogamyReport {
    pub fn candidates(&self) -> Vec<f64> {
        self.per_qubit.values().map(|q| q.tau4_candidate).collect()
    }

    pub fn mean_candidate(&self) -> f64 {
        let c = self.candidates();
        c.iter().sum::<f64>() / c.len() as f64
    }

    pub fn table(&self) -> String {
        let mut out = String::from("qubit  tau1        sum tau2    sum roof    tau4_j\n");
        for (j, q) in &self.per_qubit {
            out.push_str(&format!(
                "{:<6} {:<11} {:<11} {:<11} {}\n",
                j,
                fmt6(q.one_tangle),
                fmt6(q.two_tangle_sum),
                fmt6(q.roof_sum),
                fmt6(q.tau4_candidate)
            ));
        }
        out.push_str("\ntriple roof tau3\n");
        for (k, v) in &self.roofs {
            out.push_str(&format!("{:<6} {}\n", k, fmt6(*v)));
        }
        out.push_str("\ninvariant  degree-4 value\n");
        for (k, v) in &self.tau4_from_invariants {
            out.push_str(&format!("{:<10} {}\n", k, fmt6(*v)));
        }
        let verdict = if self.consistent {
            "consistent within optimizer accuracy"
        } else {
            "inconsistent (conclusive: candidates are lower bounds)"
        };
        out.push_str(&format!(
            "\nmax |tau4_j - tau4_k| = {} (tolerance {}): {}\n",
            fmt6(self.max_mismatch),
            fmt6(self.tolerance),
            verdict
        ));
        match self.scaling_s {
            Some(s) => out.push_str(&format!("scaling s = {}\n", fmt6(s))),
            None => out.push_str("scaling s = undefined\n"),
        }
        out
    }
}

fn require_four(state: &PureState) -> Result<()> {
    if state.n_qubits() != 4 {
        return Err(Error::BadArity { expected: 4, got: state.n_qubits() });
    }
    Ok(())
}

/// Degree-four moduli of every registered four-qubit invariant.
pub fn invariants_degree4(state: &PureState) -> Result<BTreeMap<String, f64>> {
    FOUR_QUBIT_INVARIANTS
        .iter()
        .map(|name| Ok((name.to_string(), comb::evaluate_named(name, state)?.normalized())))
        .collect()
}

pub fn analyze(state: &PureState, opts: &MonogamyOptions) -> Result<MonogamyReport> {
    require_four(state)?;
    let roof_results = roof::roof_three_tangles_transformed(state, &opts.roof, opts.beta)?;
    let roofs: BTreeMap<String, f64> =
        roof_results.iter().map(|(k, r)| (k.clone(), r.value)).collect();
    let invariants = invariants_degree4(state)?;
    let f1 = invariants["F1"];

    let mut per_qubit = BTreeMap::new();
    for j in 1..=4usize {
        let t1 = one_tangle(state, j)?;
        let mut t2 = 0.0;
        for k in (1..=4).filter(|&k| k != j) {
            t2 += two_tangle(state, j, k)?;
        }
        let digit = char::from_digit(j as u32, 10).unwrap();
        let roof_sum: f64 = roofs.iter().filter(|(k, _)| k.contains(digit)).map(|(_, v)| v).sum();
        let residue = t1 - t2;
        let tau4 = residue - roof_sum;
        per_qubit.insert(
            j.to_string(),
            QubitMonogamy {
                one_tangle: t1,
                two_tangle_sum: t2,
                residue,
                roof_sum,
                tau4_candidate: tau4,
                scaling_s: (f1 > SCALING_FLOOR).then(|| tau4 / f1),
            },
        );
    }
    let cands: Vec<f64> = per_qubit.values().map(|q| q.tau4_candidate).collect();
    let max = cands.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = cands.iter().cloned().fold(f64::INFINITY, f64::min);
    let max_mismatch = max - min;
    let mean = cands.iter().sum::<f64>() / cands.len() as f64;
    Ok(MonogamyReport {
        per_qubit,
        roofs,
        consistent: max_mismatch < opts.tolerance,
        max_mismatch,
        tolerance: opts.tolerance,
        beta: opts.beta,
        tau4_from_invariants: invariants,
        scaling_s: (f1 > SCALING_FLOOR).then(|| mean / f1),
        tau4_is_lower_bound: true,
    })
}

/// Equally weighted mean over qubits of `R_j - sum roof`.
pub fn average_residue(state: &PureState, opts: &MonogamyOptions) -> Result<f64> {
    Ok(analyze(state, opts)?.mean_candidate())
}

/// One verified identity of a [`TelescopeCheck`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Identity {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub relative: bool,
    pub pass: bool,
}

impl Identity {
    pub fn absolute(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let pass = (lhs - rhs).abs() < tolerance;
        Identity { name: name.into(), lhs, rhs, tolerance, relative: false, pass }
    }

    pub fn relative(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let scale = lhs.abs().max(rhs.abs()).max(1e-300);
        let pass = (lhs - rhs).abs() <= tolerance * scale || (lhs - rhs).abs() < 1e-15;
        Identity { name: name.into(), lhs, rhs, tolerance, relative: true, pass }
    }
}

/// Comparison of a three-qubit reference with its qubit-3 telescope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TelescopeCheck {
    pub reference: crate::qstate::StateFile,
    pub telescoped: crate::qstate::StateFile,
    pub identities: Vec<Identity>,
}

impl TelescopeCheck {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> Vec<&Identity> {
        self.identities.iter().filter(|i| !i.pass).collect()
    }
}

/// Tolerances of [`telescope_check`].
pub const LIFTING_TOLERANCE: f64 = 1e-4;
pub const TELESCOPE_TAU4_TOLERANCE: f64 = 1e-4;
pub const INVARIANT_EQUALITY_TOLERANCE: f64 = 1e-9;
pub const POLYNOMIAL_RELATION_TOLERANCE: f64 = 1e-8;

/// Doubles qubit 3 of `reference` and checks the lifting identities, the
/// per-qubit four-tangle candidates against `tau3` of the reference, the
/// equality of the three pair-invariant four-tangles, and the F2/F3
/// polynomial relations.
pub fn telescope_check(reference: &PureState, opts: &MonogamyOptions) -> Result<TelescopeCheck> {
    if reference.n_qubits() != 3 {
        return Err(Error::BadArity { expected: 3, got: reference.n_qubits() });
    }
    let tel = make_telescope(reference, 3, None)?;
    let mut ids = Vec::new();

    let report = analyze(&tel, &MonogamyOptions { beta: 1.0, ..opts.clone() })?;
    ids.push(Identity::absolute(
        "tau2_23(M) = roof tau3_234(T)",
        two_tangle(reference, 2, 3)?,
        report.roofs["234"],
        LIFTING_TOLERANCE,
    ));
    ids.push(Identity::absolute(
        "tau2_13(M) = roof tau3_134(T)",
        two_tangle(reference, 1, 3)?,
        report.roofs["134"],
        LIFTING_TOLERANCE,
    ));
    let tau3_ref = three_tangle_pure(reference)?;
    for (j, q) in &report.per_qubit {
        ids.push(Identity::absolute(
            format!("tau4_{j}(T) = tau3(M)"),
            q.tau4_candidate,
            tau3_ref,
            TELESCOPE_TAU4_TOLERANCE,
        ));
    }

    let h = comb::invariant_h(&tel)?;
    let c = |i, j| comb::invariant_c4(&tel, (i, j)).map(|v| v.raw);
    let (c12, c13, c14, c24, c34) = (c(1, 2)?, c(1, 3)?, c(1, 4)?, c(2, 4)?, c(3, 4)?);
    let alt = (h * h * 6.0 - c34 * 0.5).norm();
    ids.push(Identity::absolute("|C4_14| = |C4_24|", c14.norm(), c24.norm(), INVARIANT_EQUALITY_TOLERANCE));
    ids.push(Identity::absolute(
        "|C4_14| = |6H^2 - C4_34/2|",
        c14.norm(),
        alt,
        INVARIANT_EQUALITY_TOLERANCE,
    ));
    ids.push(Identity::absolute("|C4_14| = tau3(M)", c14.norm(), tau3_ref, INVARIANT_EQUALITY_TOLERANCE));

    let f2 = comb::invariant_f2(&tel)?.raw;
    let f2_rel = c13 * (c13 * (7.0 / 9.0) + c12 * (2.0 / 9.0));
    ids.push(Identity::relative("Re F2 = Re C13(7/9 C13 + 2/9 C12)", f2.re, f2_rel.re, POLYNOMIAL_RELATION_TOLERANCE));
    ids.push(Identity::relative("Im F2 = Im C13(7/9 C13 + 2/9 C12)", f2.im, f2_rel.im, POLYNOMIAL_RELATION_TOLERANCE));
    let f3 = comb::invariant_f3(&tel)?.raw;
    let f3_rel = c13 * c13 * c12 * 0.5;
    ids.push(Identity::relative("Re F3 = Re C13^2 C12 / 2", f3.re, f3_rel.re, POLYNOMIAL_RELATION_TOLERANCE));
    ids.push(Identity::relative("Im F3 = Im C13^2 C12 / 2", f3.im, f3_rel.im, POLYNOMIAL_RELATION_TOLERANCE));

    Ok(TelescopeCheck { reference: reference.to_json(), telescoped: tel.to_json(), identities: ids })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make_ghz, make_product};

    #[test]
    fn product_states_have_no_four_tangle() {
        let p = make_product(&[0.3, 1.1, 2.0, 0.7]).unwrap();
        for (name, v) in invariants_degree4(&p).unwrap() {
            assert!(v < 1e-10, "{name} = {v}");
        }
        let bell = PureState::from_real(&[1.0, 0.0, 0.0, 1.0]).unwrap();
        let pair = bell.tensor(&bell);
        for (name, v) in invariants_degree4(&pair).unwrap() {
            if name != "H" && !name.starts_with("C4") {
                assert!(v < 1e-10, "{name} = {v}");
            }
        }
    }

    #[test]
    fn analyze_needs_four_qubits() {
        let ghz = make_ghz(3).unwrap();
        assert!(matches!(
            analyze(&ghz, &MonogamyOptions::with_seed(0, 1)),
            Err(Error::BadArity { .. })
        ));
        assert!(matches!(
            telescope_check(&make_ghz(4).unwrap(), &MonogamyOptions::with_seed(0, 1)),
            Err(Error::BadArity { .. })
        ));
    }

    #[test]
    fn identity_tolerances() {
        assert!(Identity::absolute("a", 1.0, 1.0 + 1e-5, 1e-4).pass);
        assert!(!Identity::absolute("a", 1.0, 1.0 + 1e-3, 1e-4).pass);
        assert!(Identity::relative("r", 1e6, 1e6 + 1e-3, 1e-8).pass);
        assert!(!Identity::relative("r", 1.0, 1.1, 1e-8).pass);
    }
}
