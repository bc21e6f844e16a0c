//! Constructors for the four-qubit state families studied here, and qubit
//! doubling ("telescoping").

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::{bit, PureState};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `sqrt(p/2)(|1111> + |1000>) + sqrt((1-p)/3)(|0100> + |0010> + |0001>)`.
pub fn make_psi_p(p: f64) -> Result<PureState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParam(format!("p = {p} outside [0, 1]")));
    }
    let a = c((p / 2.0).sqrt());
    let b = c(((1.0 - p) / 3.0).sqrt());
    PureState::from_kets(&[("1111", a), ("1000", a), ("0100", b), ("0010", b), ("0001", b)])
}

/// Doubles `doubled_qubit` in the computational basis, `|k> -> |k>|k>`, with the
/// copy appended as the last qubit, then applies `post_unitary` to the copy.
pub fn make_telescope(
    reference: &PureState,
    doubled_qubit: usize,
    post_unitary: Option<&Matrix2<Complex64>>,
) -> Result<PureState> {
    let n = reference.n_qubits();
    if n < 2 {
        return Err(Error::BadArity { expected: 2, got: n });
    }
    reference.check_qubit(doubled_qubit)?;
    let mut raw = vec![Complex64::new(0.0, 0.0); 2 * reference.dim()];
    for (idx, amp) in reference.amplitudes().iter().enumerate() {
        raw[(idx << 1) | bit(idx, doubled_qubit, n)] = *amp;
    }
    let doubled = PureState::normalize(raw)?;
    match post_unitary {
        Some(u) => doubled.apply_local(n + 1, u),
        None => Ok(doubled),
    }
}

/// `alpha|1111> + beta|1000> + gamma|0110>`, built as qubit 2 of
/// `alpha|111> + beta|100> + gamma|010>` doubled, with the copy moved to position 3.
pub fn make_psi_tel(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<PureState> {
    let reference = PureState::from_kets(&[("111", alpha), ("100", beta), ("010", gamma)])?;
    make_telescope(&reference, 2, None)?.permute_qubits(&[1, 2, 4, 3])
}

/// Cluster state `a|0000> - b|0111> - c|1100> + d|1011>`, normalised.
pub fn make_cluster(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<PureState> {
    PureState::from_kets(&[("0000", a), ("0111", -b), ("1100", -c), ("1011", d)])
        .map_err(|e| Error::BadParam(format!("cluster parameters: {e}")))
}

/// `(|0000> + |1011> + |1101> + |1110>) / 2`.
pub fn make_chi1() -> PureState {
    PureState::from_kets(&[("0000", c(1.0)), ("1011", c(1.0)), ("1101", c(1.0)), ("1110", c(1.0))])
        .expect("static state")
}

/// `a|0000> + b|0101> + c|1000> + d|1110>`, normalised.
pub fn make_chi2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<PureState> {
    PureState::from_kets(&[("0000", a), ("0101", b), ("1000", c), ("1110", d)])
        .map_err(|e| Error::BadParam(format!("chi2 parameters: {e}")))
}

pub fn make_ghz(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::BadParam(format!("GHZ needs at least 2 qubits, got {n}")));
    }
    let mut raw = vec![Complex64::new(0.0, 0.0); 1 << n];
    raw[0] = c(1.0);
    raw[(1 << n) - 1] = c(1.0);
    PureState::normalize(raw)
}

pub fn make_w(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::BadParam(format!("W needs at least 2 qubits, got {n}")));
    }
    let mut raw = vec![Complex64::new(0.0, 0.0); 1 << n];
    for k in 0..n {
        raw[1 << k] = c(1.0);
    }
    PureState::normalize(raw)
}

/// `(x)_k (cos(t_k/2)|0> + sin(t_k/2)|1>)`.
pub fn make_product(angles: &[f64]) -> Result<PureState> {
    let mut factors = angles.iter().map(|t| {
        PureState::normalize(vec![c((t / 2.0).cos()), c((t / 2.0).sin())])
    });
    let first = factors
        .next()
        .ok_or_else(|| Error::BadParam("product state needs at least one angle".into()))??;
    factors.try_fold(first, |acc, f| Ok(acc.tensor(&f?)))
}

/// Qubit pairs `(i, j)`, `i < j`, whose bits agree on every nonzero amplitude.
/// A non-empty result means the state is a computational-basis telescope of a
/// smaller register. Local-unitary variants are not searched.
pub fn doubled_pairs(state: &PureState) -> Vec<(usize, usize)> {
    let n = state.n_qubits();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let agree = state
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm() > 1e-12)
                .all(|(idx, _)| bit(idx, i, n) == bit(idx, j, n));
            if agree {
                out.push((i, j));
            }
        }
    }
    out
}

/// Family names accepted by [`FamilySpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    PsiP,
    PsiTel,
    Cluster,
    Chi1,
    Chi2,
    Ghz,
    W,
    Product,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::PsiP => "psi_p",
            Family::PsiTel => "psi_tel",
            Family::Cluster => "cluster",
            Family::Chi1 => "chi1",
            Family::Chi2 => "chi2",
            Family::Ghz => "ghz",
            Family::W => "w",
            Family::Product => "product",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "psi_p" => Family::PsiP,
            "psi_tel" => Family::PsiTel,
            "cluster" => Family::Cluster,
            "chi1" => Family::Chi1,
            "chi2" => Family::Chi2,
            "ghz" => Family::Ghz,
            "w" => Family::W,
            "product" => Family::Product,
            _ => return Err(Error::Parse(format!("unknown family {s:?}"))),
        })
    }
}

/// A family name plus parameters, parsed from strings such as
/// `psi_p:p=0.35` or `cluster:a=0.5,b=0.5,c=0.5+0.1j,d=0.5`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, Complex64>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec { family, params: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, value: Complex64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    fn get(&self, name: &str, default: Option<Complex64>) -> Result<Complex64> {
        self.params
            .get(name)
            .copied()
            .or(default)
            .ok_or_else(|| Error::BadParam(format!("{} needs parameter {name}", self.family.name())))
    }

    fn real(&self, name: &str, default: Option<f64>) -> Result<f64> {
        let v = self.get(name, default.map(c))?;
        if v.im != 0.0 {
            return Err(Error::BadParam(format!("{name} must be real")));
        }
        Ok(v.re)
    }

    fn count(&self, default: usize) -> Result<usize> {
        let n = self.real("n", Some(default as f64))?;
        if n.fract() != 0.0 || n < 1.0 {
            return Err(Error::BadParam(format!("n = {n} is not a positive integer")));
        }
        Ok(n as usize)
    }

    pub fn build(&self) -> Result<PureState> {
        let known: &[&str] = match self.family {
            Family::PsiP => &["p"],
            Family::PsiTel => &["alpha", "beta", "gamma"],
            Family::Cluster | Family::Chi2 => &["a", "b", "c", "d"],
            Family::Chi1 => &[],
            Family::Ghz | Family::W => &["n"],
            Family::Product => &[],
        };
        for key in self.params.keys() {
            let ok = known.contains(&key.as_str())
                || (self.family == Family::Product
                    && key.strip_prefix('t').is_some_and(|d| d.parse::<usize>().is_ok()));
            if !ok {
                return Err(Error::BadParam(format!(
                    "{} has no parameter {key}",
                    self.family.name()
                )));
            }
        }
        let one = Some(c(1.0));
        match self.family {
            Family::PsiP => make_psi_p(self.real("p", None)?),
            Family::PsiTel => make_psi_tel(
                self.get("alpha", one)?,
                self.get("beta", one)?,
                self.get("gamma", one)?,
            ),
            Family::Cluster => make_cluster(
                self.get("a", one)?,
                self.get("b", one)?,
                self.get("c", one)?,
                self.get("d", one)?,
            ),
            Family::Chi1 => Ok(make_chi1()),
            Family::Chi2 => make_chi2(
                self.get("a", one)?,
                self.get("b", one)?,
                self.get("c", one)?,
                self.get("d", one)?,
            ),
            Family::Ghz => make_ghz(self.count(3)?),
            Family::W => make_w(self.count(3)?),
            Family::Product => {
                let mut angles = Vec::new();
                for k in 1.. {
                    match self.params.get(&format!("t{k}")) {
                        Some(v) => angles.push(v.re),
                        None => break,
                    }
                }
                if angles.is_empty() {
                    angles = vec![0.0; 4];
                }
                make_product(&angles)
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = FamilySpec::new(name.trim().parse()?);
        for item in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
            spec.params.insert(key.trim().to_string(), parse_complex(value.trim())?);
        }
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family.name())?;
        let parts: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| {
                if v.im == 0.0 {
                    format!("{k}={}", v.re)
                } else {
                    format!("{k}={}{:+}j", v.re, v.im)
                }
            })
            .collect();
        if !parts.is_empty() {
            write!(f, ":{}", parts.join(","))?;
        }
        Ok(())
    }
}

/// Parses `1.5`, `-2j`, `0.5+0.25j`, `1e-3-2e-1j` (`i` is accepted for `j`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let err = || Error::Parse(format!("bad complex number {s:?}"));
    let t = s.trim();
    let Some(body) = t.strip_suffix('j').or_else(|| t.strip_suffix('i')) else {
        return t.parse::<f64>().map(c).map_err(|_| err());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| err()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| err())?;
            Ok(Complex64::new(re, imag(&body[k..])?))
        }
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}
