use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Ring, Scalar};

/// Sparse monomial: `(symbol, exponent)` pairs sorted by symbol, exponents positive.
pub type Monomial = Vec<(String, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((a[i].0.clone(), a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Multivariate polynomial with Gaussian-rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(Scalar::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Poly::monomial(vec![(name.to_string(), 1)], Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut m: Monomial = m.into_iter().filter(|(_, e)| *e > 0).collect();
        m.sort();
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().find(|(v, _)| v == var).map_or(0, |(_, e)| *e))
            .max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().map(|(_, e)| e).sum()).max()
    }

    /// True when every term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().map(|(_, e)| e).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes polynomials for some variables; unbound variables stay.
    pub fn subst(&self, bind: &BTreeMap<String, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (v, e) in m {
                let f = match bind.get(v) {
                    Some(p) => p.pow(*e),
                    None => Poly::monomial(vec![(v.clone(), *e)], Scalar::one()),
                };
                t = &t * &f;
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients of the powers of `var`, lowest first.
    pub fn coeffs_in(&self, var: &str) -> Vec<Poly> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            let e = m.iter().find(|(v, _)| v == var).map_or(0, |(_, e)| *e) as usize;
            let rest: Monomial = m.iter().filter(|(v, _)| v != var).cloned().collect();
            out[e].add_term(rest, c.clone());
        }
        out
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly { (&self).$m(&o) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::from_int(1)
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_scalar(s: Scalar) -> Self {
        Poly::constant(s)
    }
    fn scale(&self, s: &Scalar) -> Self {
        Poly::scale(self, s)
    }
}

fn fmt_mono(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (k, (v, e)) in m.iter().enumerate() {
        if k > 0 {
            write!(f, "*")?;
        }
        if *e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut ts: Vec<_> = self.terms.iter().collect();
        ts.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|x| x.1).sum();
            let db: u32 = b.0.iter().map(|x| x.1).sum();
            db.cmp(&da).then_with(|| a.0.cmp(b.0))
        });
        for (k, (m, c)) in ts.into_iter().enumerate() {
            let neg_real = c.is_real() && c.re < num_traits::Zero::zero();
            let c_abs = if neg_real { -c } else { c.clone() };
            if k == 0 {
                if neg_real {
                    write!(f, "-")?;
                }
            } else if neg_real {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_empty() {
                if c_abs.is_compound() {
                    write!(f, "({c_abs})")?;
                } else {
                    write!(f, "{c_abs}")?;
                }
            } else {
                if !c_abs.is_one() {
                    if c_abs.is_compound() {
                        write!(f, "({c_abs})*")?;
                    } else {
                        write!(f, "{c_abs}*")?;
                    }
                }
                fmt_mono(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
