use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Field, Poly, Ring, Scalar};
use crate::error::KernelError;

/// Quotient of polynomials, kept unreduced. Equality is by cross-multiplication.
#[derive(Clone)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::Malformed("zero denominator".into()));
        }
        Ok(RatFun::tidy(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::from_int(1) }
    }

    pub fn var(name: &str) -> Self {
        RatFun::from_poly(Poly::var(name))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    // Cheap normalizations only: constant denominators are folded into the
    // numerator and identical numerator/denominator collapse to 1.
    fn tidy(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun { num, den: Poly::from_int(1) };
        }
        if let Some(c) = den.as_constant() {
            let inv = c.inv().expect("nonzero constant denominator");
            return RatFun { num: num.scale(&inv), den: Poly::from_int(1) };
        }
        if num == den {
            return RatFun { num: Poly::from_int(1), den: Poly::from_int(1) };
        }
        RatFun { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<Poly> {
        self.den.as_constant().map(|c| self.num.scale(&c.inv().expect("nonzero")))
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(&n / &d),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> RatFun {
        RatFun::tidy(self.num.pow(e), self.den.pow(e))
    }

    pub fn recip(&self) -> Option<RatFun> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFun::tidy(self.den.clone(), self.num.clone()))
        }
    }

    /// Substitutes rational functions for variables in numerator and denominator.
    pub fn substitute(&self, bind: &BTreeMap<String, RatFun>) -> Result<RatFun, KernelError> {
        let n = poly_substitute(&self.num, bind)?;
        let d = poly_substitute(&self.den, bind)?;
        (n / d).ok_or_else(|| KernelError::Malformed("denominator vanishes after substitution".into()))
    }
}

/// True iff `f` and `g` agree as rational functions.
pub fn ratfun_eq(f: &RatFun, g: &RatFun) -> Result<bool, KernelError> {
    if f.den.is_zero() || g.den.is_zero() {
        return Err(KernelError::Malformed("zero denominator".into()));
    }
    Ok(&f.num * &g.den == &g.num * &f.den)
}

/// Composes `f` with the given bindings. Every variable of `f` must be bound.
pub fn poly_substitute(f: &Poly, bind: &BTreeMap<String, RatFun>) -> Result<RatFun, KernelError> {
    if let Some(v) = f.vars().into_iter().find(|v| !bind.contains_key(v)) {
        return Err(KernelError::UnboundVariable(v));
    }
    let mut pow_cache: BTreeMap<(String, u32), RatFun> = BTreeMap::new();
    let mut acc = RatFun::zero();
    for (m, c) in f.terms() {
        let mut t = RatFun::from_poly(Poly::constant(c.clone()));
        for (v, e) in m {
            let p = pow_cache
                .entry((v.clone(), *e))
                .or_insert_with(|| bind[v].pow(*e))
                .clone();
            t = t * p;
        }
        acc = acc + t;
    }
    Ok(acc)
}

impl PartialEq for RatFun {
    fn eq(&self, o: &RatFun) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl Eq for RatFun {}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::tidy(&self.num + &o.num, self.den.clone());
        }
        RatFun::tidy(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        // cancel a literally shared factor before multiplying out
        if self.num == o.den {
            return RatFun::tidy(o.num.clone(), self.den.clone());
        }
        if self.den == o.num {
            return RatFun::tidy(self.num.clone(), o.den.clone());
        }
        RatFun::tidy(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Div<RatFun> for RatFun {
    type Output = Option<RatFun>;
    fn div(self, o: RatFun) -> Option<RatFun> {
        o.recip().map(|r| self * r)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: RatFun) -> RatFun { (&self).$m(&o) }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, o: &RatFun) -> RatFun { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> Self {
        RatFun::from_poly(p)
    }
}

impl From<Scalar> for RatFun {
    fn from(c: Scalar) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }
}

impl Ring for RatFun {
    fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFun::from_poly(Poly::from_int(1))
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        RatFun::from(s)
    }
    fn scale(&self, s: &Scalar) -> Self {
        RatFun::tidy(self.num.scale(s), self.den.clone())
    }
}

impl Field for RatFun {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }

    fn pivot_cost(&self) -> usize {
        self.num.num_terms() + self.den.num_terms()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for RatFun {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Poly {
        Poly::var(s)
    }

    fn one() -> Poly {
        Poly::from_int(1)
    }

    #[test]
    fn factorization_identity() {
        let x = v("x");
        let f = RatFun::new(&(&x * &x) - &one(), &x - &one()).unwrap();
        let g = RatFun::from_poly(&x + &one());
        assert!(ratfun_eq(&f, &g).unwrap());
    }

    #[test]
    fn scaling_invariance() {
        let (r1, r2, d) = (v("r1"), v("r2"), v("delta"));
        let n = (&(&r1 * &r2) * &d).scale(&Scalar::from_int(2)).pow(2);
        let den = (&(&r1 * &r1) + &(&(&r2 * &r2) * &(&d * &d))).pow(2);
        let f = RatFun::new(n.clone(), den.clone()).unwrap();
        let three = Scalar::from_int(3);
        let g = RatFun::new(n.scale(&three), den.scale(&three)).unwrap();
        assert!(ratfun_eq(&f, &g).unwrap());
    }

    #[test]
    fn distinct_variables() {
        let f = RatFun::new(one(), v("x")).unwrap();
        let g = RatFun::new(one(), v("y")).unwrap();
        assert!(!ratfun_eq(&f, &g).unwrap());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFun::new(one(), Poly::zero()).is_err());
    }

    fn tan_binding() -> BTreeMap<String, RatFun> {
        let t = RatFun::new(-v("r1"), &v("r2") * &v("delta")).unwrap();
        BTreeMap::from([("t".to_string(), t)])
    }

    #[test]
    fn substitute_t_squared() {
        let f = v("t").pow(2);
        let got = poly_substitute(&f, &tan_binding()).unwrap();
        let want = RatFun::new(v("r1").pow(2), (&v("r2") * &v("delta")).pow(2)).unwrap();
        assert!(ratfun_eq(&got, &want).unwrap());
    }

    #[test]
    fn substitute_cos_at_zero() {
        let t = v("t");
        let f = RatFun::new(&one() - &t.pow(2), &one() + &t.pow(2)).unwrap();
        let b = BTreeMap::from([("t".to_string(), RatFun::zero())]);
        assert_eq!(f.substitute(&b).unwrap(), RatFun::one());
    }

    #[test]
    fn substitute_one_minus_t_squared() {
        let f = &one() - &v("t").pow(2);
        let got = poly_substitute(&f, &tan_binding()).unwrap();
        // hand expansion: (r2^2 delta^2 - r1^2) / (r2^2 delta^2)
        let r2d2 = (&v("r2") * &v("delta")).pow(2);
        let want = RatFun::new(&r2d2 - &v("r1").pow(2), r2d2).unwrap();
        assert!(ratfun_eq(&got, &want).unwrap());
    }

    #[test]
    fn unbound_variable_named() {
        let err = poly_substitute(&v("zeta"), &tan_binding()).unwrap_err();
        assert!(err.to_string().contains("zeta"));
    }
}
