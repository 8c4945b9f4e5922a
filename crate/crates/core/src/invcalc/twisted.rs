use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{ce_d_with, DTable, ProofRecord};
use crate::error::{KernelError, Result};
use crate::exactnum::{Poly, Scalar};
use crate::forms::{self, Frame, Multivector};

type M = Multivector<Scalar>;

/// Base symbols of the twisted coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Base {
    Tau1,
    Tau2,
    Kappa,
}

impl Base {
    pub fn name(self) -> &'static str {
        match self {
            Base::Tau1 => "tau1",
            Base::Tau2 => "tau2",
            Base::Kappa => "kappa",
        }
    }
}

/// `θ1 = t1 ∂/∂t1`.
pub fn theta1() -> Poly {
    Poly::var("theta1")
}

/// `θ2 = t2 ∂/∂t2`.
pub fn theta2() -> Poly {
    Poly::var("theta2")
}

/// `θκ = λ d/dλ` acting on `κ`.
pub fn theta_k() -> Poly {
    Poly::var("thetak")
}

/// `c + Σ_s f^{P_s(θ) s}`: a constant plus twisted functions, linear in the
/// base symbols over the commuting operators `θ1, θ2, θκ`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct CoeffFn {
    constant: Scalar,
    twisted: BTreeMap<Base, Poly>,
}

impl CoeffFn {
    pub fn zero() -> Self {
        CoeffFn::default()
    }

    pub fn constant(c: Scalar) -> Self {
        CoeffFn { constant: c, twisted: BTreeMap::new() }
    }

    /// `f^{s}`.
    pub fn f(s: Base) -> Self {
        Self::op(s, Poly::from_int(1))
    }

    /// `f^{P s}`.
    pub fn op(s: Base, p: Poly) -> Self {
        let mut c = CoeffFn::zero();
        if !p.is_zero() {
            c.twisted.insert(s, p);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.twisted.is_empty()
    }

    pub fn constant_part(&self) -> &Scalar {
        &self.constant
    }

    pub fn operator(&self, s: Base) -> Poly {
        self.twisted.get(&s).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn add(&self, o: &CoeffFn) -> CoeffFn {
        let mut out = self.clone();
        out.constant += &o.constant;
        for (s, p) in &o.twisted {
            let q = &out.operator(*s) + p;
            if q.is_zero() {
                out.twisted.remove(s);
            } else {
                out.twisted.insert(*s, q);
            }
        }
        out
    }

    pub fn neg(&self) -> CoeffFn {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn sub(&self, o: &CoeffFn) -> CoeffFn {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> CoeffFn {
        if c.is_zero() {
            return CoeffFn::zero();
        }
        CoeffFn {
            constant: &self.constant * c,
            twisted: self.twisted.iter().map(|(s, p)| (*s, p.scale(c))).collect(),
        }
    }

    /// Applies the operator `q` to every twisted part; constants are killed.
    pub fn apply(&self, q: &Poly) -> CoeffFn {
        let mut out = CoeffFn::zero();
        for (s, p) in &self.twisted {
            out = out.add(&CoeffFn::op(*s, p * q));
        }
        out
    }

    /// Replaces `from` by `P·to`, i.e. `f^{Q from} ↦ f^{QP to}`.
    pub fn substitute(&self, from: Base, to: Base, p: &Poly) -> CoeffFn {
        let mut out = CoeffFn { constant: self.constant.clone(), twisted: BTreeMap::new() };
        for (s, q) in &self.twisted {
            let term = if *s == from { CoeffFn::op(to, q * p) } else { CoeffFn::op(*s, q.clone()) };
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for CoeffFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if !self.twisted.is_empty() {
            let exps: Vec<String> = self.twisted.iter().map(|(s, p)| format!("({p})*{}", s.name())).collect();
            parts.push(format!("f^[{}]", exps.join(" + ")));
        }
        if !self.constant.is_zero() {
            parts.push(self.constant.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for CoeffFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `Σ c_I · b_I` in the Borel frame with twisted coefficients, collected by monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedForm {
    degree: usize,
    terms: BTreeMap<Vec<usize>, CoeffFn>,
}

impl TwistedForm {
    pub fn zero(degree: usize) -> Self {
        TwistedForm { degree, terms: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ c_k · ω_k`.
    pub fn from_parts(parts: &[(CoeffFn, M)]) -> Result<Self> {
        let degree = parts.first().map(|(_, w)| w.degree()).unwrap_or(0);
        let mut out = TwistedForm::zero(degree);
        for (c, w) in parts {
            out = out.add(&TwistedForm::term(c, w)?)?;
        }
        Ok(out)
    }

    /// `c · ω`.
    pub fn term(c: &CoeffFn, w: &M) -> Result<Self> {
        let w = w.to_frame(Frame::Borel);
        let mut out = TwistedForm::zero(w.degree());
        for (k, x) in w.terms() {
            out.add_term(k.clone(), c.scale(x));
        }
        Ok(out)
    }

    fn add_term(&mut self, mut key: Vec<usize>, c: CoeffFn) {
        let Some(odd) = forms::canonical(&mut key) else { return };
        let c = if odd { c.neg() } else { c };
        let s = self.terms.get(&key).map(|o| o.add(&c)).unwrap_or(c);
        if s.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    pub fn add(&self, o: &TwistedForm) -> Result<Self> {
        if self.degree != o.degree && !self.is_zero() && !o.is_zero() {
            return Err(KernelError::Malformed(format!(
                "adding twisted forms of degree {} and {}",
                self.degree, o.degree
            )));
        }
        let mut out = self.clone();
        if out.is_zero() {
            out.degree = o.degree;
        }
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &CoeffFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[usize]) -> CoeffFn {
        let mut k = key.to_vec();
        match forms::canonical(&mut k) {
            None => CoeffFn::zero(),
            Some(odd) => {
                let c = self.terms.get(&k).cloned().unwrap_or_default();
                if odd { c.neg() } else { c }
            }
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&CoeffFn) -> CoeffFn) -> TwistedForm {
        let mut out = TwistedForm::zero(self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn substitute(&self, from: Base, to: Base, p: &Poly) -> TwistedForm {
        self.map_coeffs(|c| c.substitute(from, to, p))
    }

    /// Wedge on the right by a constant form.
    pub fn wedge_right(&self, w: &M) -> TwistedForm {
        let w = w.to_frame(Frame::Borel);
        let mut out = TwistedForm::zero(self.degree + w.degree());
        for (k1, c) in &self.terms {
            for (k2, x) in w.terms() {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.add_term(k, c.scale(x));
            }
        }
        out
    }

    /// Exterior derivative: `d(f ω) = df∧ω + f·dω` with
    /// `d f^{Pτ} = f^{2θ2 Pτ} a* + f^{(2θ1 − 2θ2) Pτ} h*` for `τ1, τ2`
    /// and `d f^{Pκ} = f^{θκ Pκ} η_o`.
    pub fn d_with(&self, table: DTable) -> TwistedForm {
        let a = M::covector(Frame::Borel, 0);
        let h = M::covector(Frame::Borel, 1);
        let two = Scalar::from_int(2);
        let pa = theta2().scale(&two);
        let ph = &theta1().scale(&two) - &theta2().scale(&two);
        let mut out = TwistedForm::zero(self.degree + 1);
        for (key, c) in &self.terms {
            let w = M::monomial(Frame::Borel, key, Scalar::one());
            let mut df = TwistedForm::zero(1);
            for (s, p) in &c.twisted {
                let part = match s {
                    Base::Tau1 | Base::Tau2 => TwistedForm::term(&CoeffFn::op(*s, p * &pa), &a)
                        .and_then(|x| x.add(&TwistedForm::term(&CoeffFn::op(*s, p * &ph), &h)?)),
                    Base::Kappa => TwistedForm::term(&CoeffFn::op(*s, p * &theta_k()), &forms::eta_o()),
                };
                df = df.add(&part.expect("Borel 1-forms")).expect("degree 1");
            }
            let lhs = df.wedge_right(&w);
            let rhs = TwistedForm::term(c, &ce_d_with(&w, table)).expect("Borel");
            out = out.add(&lhs).and_then(|x| x.add(&rhs)).expect("same degree");
        }
        out
    }

    pub fn d(&self) -> TwistedForm {
        self.d_with(DTable::StructureConstants)
    }

    /// `Some(c)` with `self = c · reference`.
    pub fn ratio_to(&self, reference: &M) -> Option<CoeffFn> {
        let r = reference.to_frame(Frame::Borel);
        let (k, rc) = r.terms().next()?;
        let c = self.coeff(k).scale(&rc.inv()?);
        let rest = self.add(&TwistedForm::term(&c.neg(), &r).ok()?).ok()?;
        rest.is_zero().then_some(c)
    }

    /// `(coefficient, basis form)` list.
    pub fn as_parts(&self) -> Vec<(CoeffFn, M)> {
        self.terms.iter().map(|(k, c)| (c.clone(), M::monomial(Frame::Borel, k, Scalar::one()))).collect()
    }
}

impl fmt::Display for TwistedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let probe = M::zero(Frame::Borel, self.degree);
        let parts: Vec<String> =
            self.terms.iter().map(|(k, c)| format!("[{c}]*{}", probe.basis_label(k))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for TwistedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `η^{τ1,τ2} = f^{τ1} η¹ + f^{τ2} η²`.
pub fn eta_tau() -> TwistedForm {
    TwistedForm::from_parts(&[
        (CoeffFn::f(Base::Tau1), forms::eta_sup(1).expect("eta^1")),
        (CoeffFn::f(Base::Tau2), forms::eta_sup(2).expect("eta^2")),
    ])
    .expect("degree 4")
}

/// `a*∧h*∧n0*∧(n1* − n2*)∧n3*`.
pub fn reference_five_form() -> M {
    let b = Frame::Borel;
    M::monomial(b, &[0, 1, 2, 3, 5], Scalar::one())
        .try_sub(&M::monomial(b, &[0, 1, 2, 4, 5], Scalar::one()))
        .expect("Borel")
}

/// Obstruction `c` with `dΩ = c · reference`, if `dΩ` is such a multiple.
pub fn obstruction(omega: &TwistedForm, reference: &M, table: DTable) -> Option<CoeffFn> {
    omega.d_with(table).ratio_to(reference)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosednessReport {
    pub form: TwistedForm,
    pub derivative: TwistedForm,
    /// Every coefficient of `dΩ`; `Ω` is closed iff all vanish.
    pub equations: Vec<(String, CoeffFn)>,
    pub closed: bool,
}

/// `dΩ` and the coefficient equations expressing `dΩ = 0`.
pub fn closedness_condition(omega: &TwistedForm) -> ClosednessReport {
    let d = omega.d();
    let probe = M::zero(Frame::Borel, d.degree());
    let equations: Vec<(String, CoeffFn)> = d.terms().map(|(k, c)| (probe.basis_label(k), c.clone())).collect();
    ClosednessReport { form: omega.clone(), closed: equations.is_empty(), derivative: d, equations }
}

impl ProofRecord {
    pub fn twisted(label: impl Into<String>, lhs: &TwistedForm, rhs: &TwistedForm) -> Result<Self> {
        let diff = lhs.add(&rhs.map_coeffs(|c| c.neg()))?;
        Ok(Self::new(label, lhs.to_string(), rhs.to_string(), diff.to_string(), diff.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Scalar {
        Scalar::from_int(2)
    }

    #[test]
    fn df_rule() {
        let w = TwistedForm::term(&CoeffFn::f(Base::Tau1), &M::one(Frame::Borel)).unwrap();
        let d = w.d();
        assert_eq!(d.coeff(&[0]), CoeffFn::op(Base::Tau1, theta2().scale(&two())));
        assert_eq!(d.coeff(&[1]), CoeffFn::op(Base::Tau1, &theta1().scale(&two()) - &theta2().scale(&two())));
    }

    #[test]
    fn constant_times_a_star_closed() {
        let w = TwistedForm::term(&CoeffFn::constant(Scalar::from_int(3)), &M::covector(Frame::Borel, 0)).unwrap();
        assert!(w.d().is_zero());
    }

    #[test]
    fn eta_tau_obstruction() {
        let c = obstruction(&eta_tau(), &reference_five_form(), DTable::StructureConstants).unwrap();
        let want = CoeffFn::op(Base::Tau1, Poly::from_int(-1))
            .add(&CoeffFn::op(Base::Tau2, &theta2().scale(&two()) - &theta1().scale(&two())));
        assert_eq!(c, want);
        // the displayed rows give the same obstruction
        let shown = obstruction(&eta_tau(), &reference_five_form(), DTable::Displayed).unwrap();
        assert_eq!(shown, want);
    }

    #[test]
    fn corrected_relation_closes() {
        let p = &theta2().scale(&two()) - &theta1().scale(&two());
        assert!(eta_tau().substitute(Base::Tau1, Base::Tau2, &p).d().is_zero());
    }

    #[test]
    fn displayed_relation_leaves_residue() {
        let p = &(&Poly::from_int(2) - &theta1().scale(&two())) + &theta2().scale(&two());
        let d = eta_tau().substitute(Base::Tau1, Base::Tau2, &p).d();
        let c = d.ratio_to(&reference_five_form()).unwrap();
        assert_eq!(c, CoeffFn::op(Base::Tau2, Poly::from_int(-2)));
    }

    #[test]
    fn trivial_closed() {
        let r = closedness_condition(&TwistedForm::zero(4));
        assert!(r.closed);
    }

    #[test]
    fn d_squared_on_twisted() {
        let w = TwistedForm::from_parts(&[
            (CoeffFn::op(Base::Tau1, theta1()), M::covector(Frame::Borel, 3)),
            (CoeffFn::f(Base::Tau2).add(&CoeffFn::constant(Scalar::i())), M::covector(Frame::Borel, 2)),
            (CoeffFn::f(Base::Kappa), M::covector(Frame::Borel, 5)),
        ])
        .unwrap();
        assert!(w.d().d().is_zero());
    }
}
