//! A free graded-commutative algebra on formal generators, used to derive the
//! closedness of `κ(λ(g)) ω∧η_o` without choosing `ω`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::twisted::{theta_k, Base, CoeffFn};
use crate::error::{KernelError, Result};

/// Generator `(name, degree)`; indices into this table order the monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
struct Gen {
    name: String,
    degree: usize,
}

/// Sum of `c · g_1∧…∧g_k` with formal generators and twisted coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalForm {
    gens: Vec<Gen>,
    terms: BTreeMap<Vec<usize>, CoeffFn>,
}

impl FormalForm {
    fn empty(gens: &[Gen]) -> Self {
        FormalForm { gens: gens.to_vec(), terms: BTreeMap::new() }
    }

    /// Graded-commutative normal form: stable sort by generator with Koszul
    /// signs; a repeated odd generator kills the term.
    fn normalize(&self, key: &[usize]) -> Option<(Vec<usize>, bool)> {
        let mut v = key.to_vec();
        let mut odd = false;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                if self.gens[v[j - 1]].degree % 2 == 1 && self.gens[v[j]].degree % 2 == 1 {
                    odd = !odd;
                }
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        for w in v.windows(2) {
            if w[0] == w[1] && self.gens[w[0]].degree % 2 == 1 {
                return None;
            }
        }
        Some((v, odd))
    }

    fn add_term(&mut self, key: &[usize], c: CoeffFn) {
        let Some((k, odd)) = self.normalize(key) else { return };
        let c = if odd { c.neg() } else { c };
        let s = self.terms.get(&k).map(|o| o.add(&c)).unwrap_or(c);
        if s.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn label(&self, key: &[usize]) -> String {
        if key.is_empty() {
            return "1".into();
        }
        key.iter().map(|&g| self.gens[g].name.as_str()).collect::<Vec<_>>().join("^")
    }
}

impl fmt::Display for FormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("[{c}]*{}", self.label(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FormalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Derivation of `κ(λ(g)) ω∧η_o`.
#[derive(Clone, Debug, Serialize)]
pub struct SeedRecord {
    pub form: String,
    /// Leibniz expansion before normal ordering.
    pub expansion: Vec<String>,
    pub derivative: FormalForm,
    pub closed: bool,
}

const ETA_O: usize = 0;
const OMEGA: usize = 1;
const D_OMEGA: usize = 2;

/// `d(κ(λ(g)) ω∧η_o)` with `η_o` closed of degree 1, `ω` of the given degree,
/// `d(κ∘λ) = (θκ κ)(λ) η_o`, and `dω` either `0` or a formal nonzero symbol.
pub fn eisenstein_seed_closed(omega_degree: usize, inject_d_omega: bool) -> Result<SeedRecord> {
    if omega_degree == 0 {
        return Err(KernelError::Malformed("omega must have positive degree".into()));
    }
    let gens = vec![
        Gen { name: "eta_o".into(), degree: 1 },
        Gen { name: "omega".into(), degree: omega_degree },
        Gen { name: "d(omega)".into(), degree: omega_degree + 1 },
    ];
    let d_gen = |g: usize| -> Option<usize> {
        match g {
            OMEGA if inject_d_omega => Some(D_OMEGA),
            _ => None,
        }
    };
    let coeff = CoeffFn::f(Base::Kappa);
    let word = [OMEGA, ETA_O];
    let mut expansion = Vec::new();
    let mut out = FormalForm::empty(&gens);
    // d(κ) ∧ ω ∧ η_o
    let dk = coeff.apply(&theta_k());
    let mut first = vec![ETA_O];
    first.extend_from_slice(&word);
    expansion.push(format!("[{dk}]*{}", out.label(&first)));
    out.add_term(&first, dk);
    // κ · Σ ± ω..d(g_m)..η_o
    let mut sign_deg = 0;
    for (m, &g) in word.iter().enumerate() {
        if let Some(dg) = d_gen(g) {
            let mut k = word.to_vec();
            k[m] = dg;
            let c = if sign_deg % 2 == 1 { coeff.neg() } else { coeff.clone() };
            expansion.push(format!("[{c}]*{}", out.label(&k)));
            out.add_term(&k, c);
        }
        sign_deg += gens[g].degree;
    }
    let form = format!("[{coeff}]*{}", out.label(&word));
    Ok(SeedRecord { form, expansion, closed: out.is_zero(), derivative: out })
}

impl FormalForm {
    /// Coefficient of the normal-ordered monomial with the given generator names.
    pub fn coeff_of(&self, names: &[&str]) -> CoeffFn {
        let key: Option<Vec<usize>> =
            names.iter().map(|n| self.gens.iter().position(|g| g.name == *n)).collect();
        let Some(key) = key else { return CoeffFn::zero() };
        match self.normalize(&key) {
            None => CoeffFn::zero(),
            Some((k, odd)) => {
                let c = self.terms.get(&k).cloned().unwrap_or_default();
                if odd { c.neg() } else { c }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;

    fn unit() -> CoeffFn {
        CoeffFn::constant(Scalar::from_int(1))
    }

    #[test]
    fn eta_o_squared_vanishes() {
        let gens = vec![Gen { name: "eta_o".into(), degree: 1 }];
        let mut f = FormalForm::empty(&gens);
        f.add_term(&[0, 0], unit());
        assert!(f.is_zero());
    }

    #[test]
    fn seed_is_closed() {
        let r = eisenstein_seed_closed(3, false).unwrap();
        assert!(r.closed, "{}", r.derivative);
        assert_eq!(r.expansion.len(), 1);
        assert!(r.expansion[0].contains("eta_o^omega^eta_o"));
    }

    #[test]
    fn injected_d_omega_leaves_remainder() {
        let r = eisenstein_seed_closed(3, true).unwrap();
        assert!(!r.closed);
        assert_eq!(r.derivative.coeff_of(&["d(omega)", "eta_o"]), CoeffFn::f(Base::Kappa));
    }
}
