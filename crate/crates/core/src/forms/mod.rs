//! Exterior algebra on b0* in two frames (Borel and root), with the coadjoint
//! k~-action, group pullbacks and restriction to coordinate subframes.

mod action;
mod named;

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::error::{KernelError, Result};
use crate::exactnum::{Ring, Scalar};
use crate::gsp4::{borel_names, root_frame_change, root_names};
use crate::linalg::{self, Matrix};

pub use action::{
    ad_table_displayed, coadjoint_table_displayed, frame_matrix, k_action, k_theta, pullback,
    pullback_scalars, pullback_scalars_displayed, pullback_scalars_identity, quotient_ad, quotient_ad_map, restrict,
    trig_cos, trig_sin, FrameMap, FrameSubset, GroupElt,
};
pub use named::{
    eta_j, eta_lower, eta_o, eta_sup, eta_sup2_displayed, eta_upper, omega0, u_star_wedge2,
    wedge_module,
};

/// Dimension of b0.
pub const DIM: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Frame {
    /// `a*, h*, n0*, n1*, n2*, n3*`
    Borel,
    /// `e*` dual to `e(-a-b), e(-b), e(a-b), e(-a+b), e(b), e(a+b)`
    Root,
}

impl Frame {
    pub fn covector_names(self) -> [String; DIM] {
        match self {
            Frame::Borel => borel_names().map(|n| format!("{n}*")),
            Frame::Root => root_names().map(|n| n.replacen('e', "e*", 1)),
        }
    }
}

/// Sorts `v` in place; returns `None` on a repeated index, otherwise whether
/// the permutation was odd.
pub(crate) fn canonical(v: &mut [usize]) -> Option<bool> {
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] >= v[j] {
            if v[j - 1] == v[j] {
                return None;
            }
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    Some(odd)
}

/// Homogeneous element of `∧ᵏ b0*` in a fixed frame.
#[derive(Clone, PartialEq)]
pub struct Multivector<C: Ring> {
    frame: Frame,
    degree: usize,
    terms: BTreeMap<Vec<usize>, C>,
}

impl<C: Ring> Multivector<C> {
    pub fn zero(frame: Frame, degree: usize) -> Self {
        Multivector { frame, degree, terms: BTreeMap::new() }
    }

    pub fn one(frame: Frame) -> Self {
        let mut m = Self::zero(frame, 0);
        m.terms.insert(Vec::new(), C::one());
        m
    }

    pub fn covector(frame: Frame, idx: usize) -> Self {
        Self::monomial(frame, &[idx], C::one())
    }

    /// `c · b_{i1} ∧ … ∧ b_{ik}` for indices in any order.
    pub fn monomial(frame: Frame, idx: &[usize], c: C) -> Self {
        assert!(idx.iter().all(|&i| i < DIM), "frame index out of range");
        let mut m = Self::zero(frame, idx.len());
        m.add_term(idx.to_vec(), c);
        m
    }

    pub(crate) fn add_term(&mut self, mut key: Vec<usize>, c: C) {
        if c.is_zero() {
            return;
        }
        let Some(odd) = canonical(&mut key) else { return };
        let c = if odd { -c } else { c };
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: &[usize]) -> C {
        let mut k = key.to_vec();
        match canonical(&mut k) {
            None => C::zero(),
            Some(odd) => {
                let c = self.terms.get(&k).cloned().unwrap_or_else(C::zero);
                if odd { -c } else { c }
            }
        }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.frame != o.frame {
            return Err(KernelError::FrameMismatch(format!("{:?}", self.frame), format!("{:?}", o.frame)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(KernelError::Malformed(format!(
                "adding forms of degree {} and {}",
                self.degree, o.degree
            )));
        }
        let mut out = if self.is_zero() { o.clone() } else { self.clone() };
        let other = if self.is_zero() { self } else { o };
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c.clone())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.frame, self.degree);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x.clone() * c.clone());
        }
        out
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Self {
        self.map_coeffs(|c| c.scale(s))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Multivector<D> {
        let mut out = Multivector::zero(self.frame, self.degree);
        for (k, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                out.terms.insert(k.clone(), d);
            }
        }
        out
    }

    pub fn wedge(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut out = Self::zero(self.frame, self.degree + o.degree);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut key = k1.clone();
                key.extend_from_slice(k2);
                out.add_term(key, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Algebra endomorphism sending the basis covector `k` to `Σ_j l[j][k] b_j`.
    pub fn outermorphism(&self, l: &Matrix<C>, target: Frame) -> Self {
        let mut out = Self::zero(target, self.degree);
        for (key, c) in &self.terms {
            let mut partial: Vec<(Vec<usize>, C)> = vec![(Vec::new(), c.clone())];
            for &i in key {
                let mut next = Vec::new();
                for (pk, pc) in &partial {
                    for (j, row) in l.iter().enumerate() {
                        if row[i].is_zero() || pk.contains(&j) {
                            continue;
                        }
                        let mut nk = pk.clone();
                        nk.push(j);
                        next.push((nk, pc.clone() * row[i].clone()));
                    }
                }
                partial = next;
            }
            for (k, x) in partial {
                out.add_term(k, x);
            }
        }
        out
    }

    /// Derivation extending the covector map `k ↦ Σ_j l[j][k] b_j`.
    pub fn derivation(&self, l: &Matrix<C>) -> Self {
        let mut out = Self::zero(self.frame, self.degree);
        for (key, c) in &self.terms {
            for (m, &i) in key.iter().enumerate() {
                for (j, row) in l.iter().enumerate() {
                    if row[i].is_zero() {
                        continue;
                    }
                    let mut nk = key.clone();
                    nk[m] = j;
                    out.add_term(nk, c.clone() * row[i].clone());
                }
            }
        }
        out
    }

    /// The same form expressed in the other frame.
    pub fn to_frame(&self, target: Frame) -> Self {
        if target == self.frame {
            return self.clone();
        }
        let p = root_frame_change();
        let l = match target {
            Frame::Root => linalg::transpose(&p),
            Frame::Borel => linalg::transpose(&linalg::inverse(&p).expect("root frame is a basis")),
        };
        let l: Matrix<C> = l.iter().map(|r| r.iter().cloned().map(C::from_scalar).collect()).collect();
        self.outermorphism(&l, target)
    }

    /// `Some(c)` with `self = c · other`, if the two are proportional and `other ≠ 0`.
    pub fn ratio_to(&self, other: &Self) -> Option<C>
    where
        C: crate::exactnum::Field,
    {
        let (k, oc) = other.terms.iter().next()?;
        let c = self.coeff(k) * oc.inv()?;
        let diff = self.try_sub(&other.scale(&c)).ok()?;
        diff.is_zero().then_some(c)
    }

    /// Coefficient vector in the lexicographic basis of `∧ᵏ`.
    pub fn to_vec(&self) -> Vec<C> {
        wedge_basis(self.degree).iter().map(|k| self.coeff(k)).collect()
    }

    pub fn from_vec(frame: Frame, degree: usize, v: &[C]) -> Self {
        let mut out = Self::zero(frame, degree);
        for (k, c) in wedge_basis(degree).into_iter().zip(v) {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn basis_label(&self, key: &[usize]) -> String {
        let names = self.frame.covector_names();
        if key.is_empty() {
            return "1".into();
        }
        key.iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join("^")
    }
}

impl Multivector<Scalar> {
    pub fn lift<C: Ring>(&self) -> Multivector<C> {
        self.map_coeffs(|c| C::from_scalar(c.clone()))
    }
}

/// Increasing `k`-subsets of `0..6` in lexicographic order.
pub fn wedge_basis(k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..DIM {
            cur.push(i);
            go(i + 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, k, &mut Vec::new(), &mut out);
    out
}

impl<C: Ring> fmt::Display for Multivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = C::one();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let b = self.basis_label(k);
                if *c == one {
                    b
                } else if *c == -one.clone() {
                    format!("-{b}")
                } else {
                    format!("({c})*{b}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<C: Ring> fmt::Debug for Multivector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} deg {}] {}", self.frame, self.degree, self)
    }
}

impl<C: Ring> Serialize for Multivector<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(String, String)> =
            self.terms.iter().map(|(k, c)| (self.basis_label(k), c.to_string())).collect();
        let mut st = s.serialize_struct("Multivector", 3)?;
        st.serialize_field("frame", &self.frame)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = Multivector<Scalar>;

    fn b(i: usize) -> M {
        M::covector(Frame::Borel, i)
    }

    #[test]
    fn square_of_covector_vanishes() {
        assert!(b(0).wedge(&b(0)).unwrap().is_zero());
    }

    #[test]
    fn repeated_factor_vanishes() {
        let x = b(3).wedge(&b(5)).unwrap();
        let y = b(3).wedge(&b(4)).unwrap();
        assert!(x.wedge(&y).unwrap().is_zero());
    }

    #[test]
    fn graded_commutativity() {
        let u = b(1).wedge(&b(2)).unwrap();
        let v = b(0);
        assert_eq!(u.wedge(&v).unwrap(), v.wedge(&u).unwrap());
        assert_eq!(b(4).wedge(&b(2)).unwrap(), b(2).wedge(&b(4)).unwrap().neg());
    }

    #[test]
    fn frame_mismatch() {
        let r = M::covector(Frame::Root, 0);
        assert!(matches!(b(0).wedge(&r), Err(KernelError::FrameMismatch(_, _))));
    }

    #[test]
    fn frame_round_trip() {
        let x = b(1).wedge(&b(4)).unwrap().try_add(&b(0).wedge(&b(3)).unwrap()).unwrap();
        let back = x.to_frame(Frame::Root).to_frame(Frame::Borel);
        assert_eq!(back, x);
    }

    #[test]
    fn root_covectors_are_dual() {
        // e*_j(e_k) = δ_jk, evaluated through the Borel frame
        let p = root_frame_change();
        for j in 0..DIM {
            let e = M::covector(Frame::Root, j).to_frame(Frame::Borel);
            for k in 0..DIM {
                let mut v = Scalar::zero();
                for i in 0..DIM {
                    v += &(&e.coeff(&[i]) * &p[i][k]);
                }
                let want = if j == k { Scalar::one() } else { Scalar::zero() };
                assert_eq!(v, want);
            }
        }
    }

    #[test]
    fn canonical_sign() {
        let mut v = vec![2, 0, 1];
        assert_eq!(canonical(&mut v), Some(false));
        assert_eq!(v, vec![0, 1, 2]);
        let mut w = vec![1, 0];
        assert_eq!(canonical(&mut w), Some(true));
        assert_eq!(canonical(&mut vec![1, 1]), None);
    }

    #[test]
    fn wedge_basis_sizes() {
        let sizes: Vec<usize> = (0..=6).map(|k| wedge_basis(k).len()).collect();
        assert_eq!(sizes, vec![1, 6, 15, 20, 15, 6, 1]);
    }
}
