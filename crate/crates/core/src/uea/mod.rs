//! Universal enveloping algebra of g0: PBW normal ordering over a structure
//! table, the Killing form and Casimir element, and the period reduction.

mod g0;
mod period;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::{KernelError, Result};
use crate::exactnum::{Poly, Ring, Scalar};

pub use g0::{
    casimir, casimir_shape, commutation_identity, g0, h_subalgebra_closed, killing_form, sl2_symbolic,
    CasimirShape, CommutationRecord, G0, E_A, E_B, E_NA, E_NB, H_A, H_B, NAMES,
};
pub use period::{
    c_i, mu_table, period_reduce, spin2, uea_dump, PeriodState, Spin2, Strategy, UeaDump,
};

/// Exponent vector over the ordered basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    exps: Vec<u32>,
}

impl PbwMonomial {
    pub fn one(dim: usize) -> Self {
        PbwMonomial { exps: vec![0; dim] }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        PbwMonomial { exps }
    }

    /// Monomial of a non-decreasing word.
    fn from_sorted(dim: usize, word: &[usize]) -> Self {
        let mut m = Self::one(dim);
        for &l in word {
            m.exps[l] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn to_word(&self) -> Vec<usize> {
        self.exps.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join("*") }
    }
}

/// Element of the enveloping algebra in PBW normal form.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct UeaElt {
    terms: BTreeMap<PbwMonomial, Poly>,
}

impl UeaElt {
    pub fn zero() -> Self {
        UeaElt::default()
    }

    pub fn monomial(m: PbwMonomial, c: Poly) -> Self {
        let mut u = UeaElt::zero();
        u.add_term(m, c);
        u
    }

    fn add_term(&mut self, m: PbwMonomial, c: Poly) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !s.is_zero() {
            self.terms.insert(m, s);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Poly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add(&self, o: &UeaElt) -> UeaElt {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &UeaElt) -> UeaElt {
        self.add(&o.scale(&Poly::from_int(-1)))
    }

    pub fn scale(&self, c: &Poly) -> UeaElt {
        let mut out = UeaElt::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn scale_scalar(&self, c: &Scalar) -> UeaElt {
        self.scale(&Poly::constant(c.clone()))
    }

    /// Substitutes polynomials for coefficient variables.
    pub fn subst(&self, bind: &BTreeMap<String, Poly>) -> UeaElt {
        let mut out = UeaElt::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.subst(bind));
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// Which out-of-order adjacent pair a rewrite step resolves first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rewrite {
    Leftmost,
    Rightmost,
}

/// Brackets of an ordered basis, `[b_i, b_j] = Σ c_l b_l`.
#[derive(Clone, Debug)]
pub struct StructureTable {
    names: Vec<String>,
    brackets: Vec<Vec<Vec<(usize, Poly)>>>,
}

impl StructureTable {
    pub fn new(names: Vec<String>, f: impl Fn(usize, usize) -> Vec<(usize, Poly)>) -> Self {
        let n = names.len();
        let brackets = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| f(i, j).into_iter().filter(|(_, c)| !c.is_zero()).collect())
                    .collect()
            })
            .collect();
        StructureTable { names, brackets }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, Poly)] {
        &self.brackets[i][j]
    }
}

/// Enveloping algebra of a structure table, with memoized normal ordering.
pub struct Uea {
    table: StructureTable,
    memo: Mutex<HashMap<(Vec<usize>, Rewrite), UeaElt>>,
}

impl fmt::Debug for Uea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Uea({})", self.table.names.join(", "))
    }
}

impl Uea {
    pub fn new(table: StructureTable) -> Self {
        Uea { table, memo: Mutex::new(HashMap::new()) }
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn names(&self) -> &[String] {
        &self.table.names
    }

    pub fn letter(&self, name: &str) -> Result<usize> {
        self.table.names.iter().position(|n| n == name).ok_or_else(|| KernelError::UnknownSymbol(name.into()))
    }

    pub fn word_of(&self, names: &[&str]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.letter(n)).collect()
    }

    pub fn one(&self) -> UeaElt {
        UeaElt::monomial(PbwMonomial::one(self.dim()), Poly::one())
    }

    pub fn generator(&self, i: usize) -> UeaElt {
        self.word(&[i])
    }

    /// Normal form of a word, resolving leftmost descents first.
    pub fn word(&self, w: &[usize]) -> UeaElt {
        self.normalize_word(w, Rewrite::Leftmost)
    }

    /// Parses a product of basis names separated by `*`, e.g. `E_b*E_-b`.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for f in s.split('*') {
            let (name, e) = match f.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<usize>().map_err(|_| KernelError::Malformed(f.into()))?),
                None => (f.trim(), 1),
            };
            let l = self.letter(name)?;
            out.extend(std::iter::repeat_n(l, e));
        }
        Ok(out)
    }

    pub fn normalize_word(&self, w: &[usize], order: Rewrite) -> UeaElt {
        let key = (w.to_vec(), order);
        if let Some(v) = self.memo.lock().expect("memo").get(&key) {
            return v.clone();
        }
        let n = w.len();
        let descent = match order {
            Rewrite::Leftmost => (0..n.saturating_sub(1)).find(|&k| w[k] > w[k + 1]),
            Rewrite::Rightmost => (0..n.saturating_sub(1)).rev().find(|&k| w[k] > w[k + 1]),
        };
        let out = match descent {
            None => UeaElt::monomial(PbwMonomial::from_sorted(self.dim(), w), Poly::one()),
            Some(k) => {
                let mut swapped = w.to_vec();
                swapped.swap(k, k + 1);
                let mut acc = self.normalize_word(&swapped, order);
                for (l, c) in self.table.bracket(w[k], w[k + 1]) {
                    let mut nw = w[..k].to_vec();
                    nw.push(*l);
                    nw.extend_from_slice(&w[k + 2..]);
                    acc = acc.add(&self.normalize_word(&nw, order).scale(c));
                }
                acc
            }
        };
        self.memo.lock().expect("memo").insert(key, out.clone());
        out
    }

    /// PBW product.
    pub fn mul(&self, u: &UeaElt, v: &UeaElt) -> UeaElt {
        let mut out = UeaElt::zero();
        for (m1, c1) in &u.terms {
            for (m2, c2) in &v.terms {
                let mut w = m1.to_word();
                w.extend(m2.to_word());
                out = out.add(&self.word(&w).scale(&(c1 * c2)));
            }
        }
        out
    }

    pub fn commutator(&self, u: &UeaElt, v: &UeaElt) -> UeaElt {
        self.mul(u, v).sub(&self.mul(v, u))
    }

    pub fn pow(&self, u: &UeaElt, n: u32) -> UeaElt {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, u))
    }

    pub fn render(&self, u: &UeaElt) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = u
            .terms
            .iter()
            .map(|(m, c)| {
                let b = m.render(&self.table.names);
                if c.as_constant().is_some_and(|x| x.is_one()) {
                    b
                } else {
                    format!("({c})*{b}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// `(monomial, coefficient)` pairs as strings, in PBW order.
    pub fn render_terms(&self, u: &UeaElt) -> Vec<(String, String)> {
        u.terms.iter().map(|(m, c)| (m.render(&self.table.names), c.to_string())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Uea {
        sl2_symbolic()
    }

    #[test]
    fn e_times_f() {
        let u = sym();
        // order H_b < E_b < E_-b; E_-b*E_b = E_b*E_-b − H_b
        let w = u.word_of(&["E_-b", "E_b"]).unwrap();
        let got = u.word(&w);
        let want = u.word(&u.word_of(&["E_b", "E_-b"]).unwrap()).sub(&u.word(&[0]));
        assert_eq!(got, want);
    }

    #[test]
    fn unit_laws() {
        let u = sym();
        let x = u.generator(1);
        assert_eq!(u.mul(&x, &u.one()), x);
        assert_eq!(u.mul(&u.one(), &x), x);
    }

    #[test]
    fn e_squared_times_h() {
        let u = sym();
        let e2 = u.word(&[1, 1]);
        let got = u.mul(&e2, &u.generator(0));
        // (H_b − 2b) E_b^2
        let b = Poly::var("b");
        let want = u.word(&[0, 1, 1]).sub(&e2.scale(&b.scale(&Scalar::from_int(2))));
        assert_eq!(got, want);
    }

    #[test]
    fn unknown_symbol() {
        let u = sym();
        assert!(matches!(u.parse_word("E_b*X"), Err(KernelError::UnknownSymbol(_))));
        assert_eq!(u.parse_word("E_b^2*E_-b").unwrap(), vec![1, 1, 2]);
    }
}
