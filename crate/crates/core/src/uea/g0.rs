use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use super::{PbwMonomial, StructureTable, Uea, UeaElt};
use crate::error::{KernelError, Result};
use crate::exactnum::{Poly, Ring, Scalar};
use crate::gsp4::{self, root_vector, subalgebra_closed, LieElt, Subspace, Weight};
use crate::invcalc::ProofRecord;
use crate::linalg;

/// PBW order: the h-part first, then `E_β, E_{−β}, E_α, E_{−α}`.
pub const NAMES: [&str; 10] = ["H_a", "H_b", "E_a+b", "E_-a-b", "E_a-b", "E_-a+b", "E_b", "E_-b", "E_a", "E_-a"];

pub const H_A: usize = 0;
pub const H_B: usize = 1;
pub const E_B: usize = 6;
pub const E_NB: usize = 7;
pub const E_A: usize = 8;
pub const E_NA: usize = 9;
/// Letters of `h = t ⊕ V_{±(α+β)} ⊕ V_{±(α−β)}`.
pub(crate) const H_PART: std::ops::Range<usize> = 0..6;

/// `(positive root, index of E_γ, index of E_{−γ})`.
pub(crate) const PAIRS: [(Weight, usize, usize); 4] = [
    (Weight::new(1, 1), 2, 3),
    (Weight::new(1, -1), 4, 5),
    (Weight::new(0, 1), E_B, E_NB),
    (Weight::new(1, 0), E_A, E_NA),
];

fn sp4() -> &'static Subspace {
    static S: OnceLock<Subspace> = OnceLock::new();
    S.get_or_init(|| {
        let mut b = gsp4::k_basis();
        b.extend(gsp4::p_basis());
        Subspace::new("sp4", b).expect("k + p basis")
    })
}

/// `Tr(ad X ad Y)` on sp4.
pub fn killing_form(x: &LieElt, y: &LieElt) -> Result<Scalar> {
    let s = sp4();
    for z in [x, y] {
        if !s.contains(z) {
            return Err(KernelError::Membership(format!("{z} is not in sp4")));
        }
    }
    let p = linalg::mat_mul(&s.ad_matrix(x)?, &s.ad_matrix(y)?);
    Ok((0..p.len()).fold(Scalar::zero(), |acc, i| &acc + &p[i][i]))
}

/// The concrete basis of g0 and its enveloping algebra.
#[derive(Debug)]
pub struct G0 {
    pub elements: Vec<LieElt>,
    pub space: Subspace,
    pub uea: Uea,
    /// `α(H_α)`.
    pub alpha_h_alpha: Scalar,
    /// `β(H_β)`.
    pub beta_h_beta: Scalar,
}

impl G0 {
    fn build() -> Result<G0> {
        let mut el: Vec<Option<LieElt>> = vec![None; 10];
        for (w, i, j) in PAIRS {
            let e = root_vector(w).ok_or_else(|| KernelError::Malformed(format!("no root vector for {w}")))?;
            let f = root_vector(-w).ok_or_else(|| KernelError::Malformed(format!("no root vector for {}", -w)))?;
            let b = killing_form(&e, &f)?;
            let s = &Scalar::from_int(2) / &b;
            el[i] = Some(e);
            el[j] = Some(f.scale(&s));
        }
        el[H_A] = Some(gsp4::bracket(el[E_A].as_ref().unwrap(), el[E_NA].as_ref().unwrap()));
        el[H_B] = Some(gsp4::bracket(el[E_B].as_ref().unwrap(), el[E_NB].as_ref().unwrap()));
        let elements: Vec<LieElt> = el.into_iter().map(|x| x.expect("filled")).collect();
        let space = Subspace::new("g0", elements.clone())?;
        let coords = |x: &LieElt| space.coords(x).ok_or_else(|| KernelError::Membership(x.to_string()));
        let mut consts = vec![vec![Vec::new(); 10]; 10];
        for i in 0..10 {
            for j in 0..10 {
                let c = coords(&gsp4::bracket(&elements[i], &elements[j]))?;
                consts[i][j] = c.into_iter().enumerate().map(|(l, x)| (l, Poly::constant(x))).collect();
            }
        }
        let eigen = |h: usize, e: usize| consts[h][e].iter().find(|(l, _)| *l == e).map(|(_, c)| c.as_constant().unwrap());
        let alpha_h_alpha = eigen(H_A, E_A).unwrap_or_else(Scalar::zero);
        let beta_h_beta = eigen(H_B, E_B).unwrap_or_else(Scalar::zero);
        let names = NAMES.iter().map(|s| s.to_string()).collect();
        let table = StructureTable::new(names, |i, j| consts[i][j].clone());
        Ok(G0 { elements, space, uea: Uea::new(table), alpha_h_alpha, beta_h_beta })
    }

    pub fn coords(&self, x: &LieElt) -> Result<Vec<Scalar>> {
        self.space.coords(x).ok_or_else(|| KernelError::Membership(x.to_string()))
    }

    /// Killing Gram matrix of the ordered basis.
    pub fn gram(&self) -> Result<linalg::Matrix<Scalar>> {
        let mut g = linalg::zeros(10, 10);
        for i in 0..10 {
            for j in 0..10 {
                g[i][j] = killing_form(&self.elements[i], &self.elements[j])?;
            }
        }
        Ok(g)
    }

    /// Weight of basis letter `i`.
    pub fn weight(&self, i: usize) -> Weight {
        PAIRS
            .iter()
            .find_map(|&(w, e, f)| {
                if i == e {
                    Some(w)
                } else if i == f {
                    Some(-w)
                } else {
                    None
                }
            })
            .unwrap_or(Weight::ZERO)
    }
}

/// The shared g0 instance.
pub fn g0() -> &'static G0 {
    static G: OnceLock<G0> = OnceLock::new();
    G.get_or_init(|| G0::build().expect("g0 basis"))
}

/// `{H_β, E_β, E_{−β}}` with `β(H_β) = b` kept symbolic.
pub fn sl2_symbolic() -> Uea {
    let b = Poly::var("b");
    let names = ["H_b", "E_b", "E_-b"].iter().map(|s| s.to_string()).collect();
    let table = StructureTable::new(names, |i, j| match (i, j) {
        (0, 1) => vec![(1, b.clone())],
        (1, 0) => vec![(1, -&b)],
        (0, 2) => vec![(2, -&b)],
        (2, 0) => vec![(2, b.clone())],
        (1, 2) => vec![(0, Poly::one())],
        (2, 1) => vec![(0, Poly::from_int(-1))],
        _ => vec![],
    });
    Uea::new(table)
}

/// Casimir element `Σ x_i x^i` for Killing-dual bases.
pub fn casimir(g: &G0) -> Result<UeaElt> {
    let inv = linalg::inverse(&g.gram()?).ok_or(KernelError::Degenerate)?;
    let mut out = UeaElt::zero();
    for i in 0..10 {
        for j in 0..10 {
            if !inv[j][i].is_zero() {
                out = out.add(&g.uea.word(&[i, j]).scale_scalar(&inv[j][i]));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct CasimirShape {
    /// Terms outside `F(H_α, H_β)` and the four `E_γ E_{−γ}`.
    pub stray_terms: Vec<String>,
    /// Coefficient of `E_γ E_{−γ}` per positive root.
    pub pair_coefficients: Vec<(String, Poly)>,
    /// `F(H_α, H_β)`, of degree at most 2.
    pub cartan_part: String,
    /// Basis elements that fail to commute with `Ω`.
    pub non_central: Vec<String>,
    pub ok: bool,
}

/// Checks `Ω = F(H_α, H_β) + Σ c_γ E_γ E_{−γ}` with `c_γ = 1`, and centrality
/// on every basis element.
pub fn casimir_shape(g: &G0, omega: &UeaElt) -> CasimirShape {
    let u = &g.uea;
    let mut stray = Vec::new();
    let mut cartan = UeaElt::zero();
    for (m, c) in omega.terms() {
        let e = m.exponents();
        let in_t = e[2..].iter().all(|&x| x == 0) && m.degree() <= 2;
        let is_pair = PAIRS.iter().any(|&(_, i, j)| {
            e.iter().enumerate().all(|(k, &x)| x == u32::from(k == i || k == j))
        });
        if in_t {
            cartan = cartan.add(&UeaElt::monomial(m.clone(), c.clone()));
        } else if !is_pair {
            stray.push(m.render(u.names()));
        }
    }
    let pair_coefficients: Vec<(String, Poly)> = PAIRS
        .iter()
        .map(|&(_, i, j)| {
            let mut e = vec![0; 10];
            e[i] = 1;
            e[j] = 1;
            let m = PbwMonomial::from_exponents(e);
            (m.render(u.names()), omega.coeff(&m))
        })
        .collect();
    let non_central: Vec<String> = (0..10)
        .filter(|&i| !u.commutator(omega, &u.generator(i)).is_zero())
        .map(|i| NAMES[i].to_string())
        .collect();
    let ok = stray.is_empty()
        && non_central.is_empty()
        && pair_coefficients.iter().all(|(_, c)| c.as_constant().is_some_and(|x| x.is_one()));
    CasimirShape { stray_terms: stray, pair_coefficients, cartan_part: u.render(&cartan), non_central, ok }
}

/// `h = t ⊕ V_{±(α+β)} ⊕ V_{±(α−β)}` is closed under the bracket.
pub fn h_subalgebra_closed(g: &G0) -> Result<bool> {
    let s = Subspace::new("h", g.elements[H_PART].to_vec())?;
    Ok(subalgebra_closed(&s))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutationRecord {
    pub i: u32,
    /// In `U(sl2)` with `β(H_β) = b` symbolic.
    pub symbolic: ProofRecord,
    /// In `U(g0)` with the computed value of `β(H_β)`.
    pub concrete: ProofRecord,
    /// The symbolic normal forms at `b = β(H_β)` equal the concrete ones.
    pub substituted_agree: bool,
}

impl CommutationRecord {
    pub fn holds(&self) -> bool {
        self.symbolic.holds && self.concrete.holds && self.substituted_agree
    }
}

/// `E_β^i E_{−β}^i = E_β E_{−β} X + (i−1) H_β X − i(i−1)/2 · β(H_β) X`,
/// `X = E_β^{i−1} E_{−β}^{i−1}`.
pub fn commutation_identity(i: u32) -> Result<CommutationRecord> {
    if i == 0 {
        return Err(KernelError::Malformed("commutation identity needs i >= 1".into()));
    }
    let g = g0();
    let sym = sl2_symbolic();
    let n = i as usize;
    let sides = |u: &Uea, h: usize, e: usize, f: usize, bval: &Poly| {
        let mut w = vec![e; n];
        w.extend(vec![f; n]);
        let lhs = u.word(&w);
        let mut x = vec![e; n - 1];
        x.extend(vec![f; n - 1]);
        let xe = u.word(&x);
        let mut ef = vec![e, f];
        ef.extend(&x);
        let mut hx = vec![h];
        hx.extend(&x);
        let tri = Scalar::from_int(i64::from(i) * (i64::from(i) - 1) / 2);
        let rhs = u
            .word(&ef)
            .add(&u.word(&hx).scale_scalar(&Scalar::from_int(i64::from(i) - 1)))
            .sub(&xe.scale(&bval.scale(&tri)));
        (lhs, rhs)
    };
    let (sl, sr) = sides(&sym, 0, 1, 2, &Poly::var("b"));
    let bh = Poly::constant(g.beta_h_beta.clone());
    let (cl, cr) = sides(&g.uea, H_B, E_B, E_NB, &bh);
    let label = format!("E_b^{i}*E_-b^{i} = E_b*E_-b*X + {}*H_b*X - {}*b*X", i - 1, i * (i - 1) / 2);
    let record = |u: &Uea, l: &UeaElt, r: &UeaElt| {
        let d = l.sub(r);
        ProofRecord::new(label.clone(), u.render(l), u.render(r), u.render(&d), d.is_zero())
    };
    // carry the sl2 letters H_b, E_b, E_-b to their g0 positions
    let embed = |x: &UeaElt| -> UeaElt {
        let bind = BTreeMap::from([("b".to_string(), bh.clone())]);
        let mut out = UeaElt::zero();
        for (m, c) in x.subst(&bind).terms() {
            let mut e = vec![0; 10];
            e[H_B] = m.exponent(0);
            e[E_B] = m.exponent(1);
            e[E_NB] = m.exponent(2);
            out = out.add(&UeaElt::monomial(PbwMonomial::from_exponents(e), c.clone()));
        }
        out
    };
    Ok(CommutationRecord {
        i,
        symbolic: record(&sym, &sl, &sr),
        concrete: record(&g.uea, &cl, &cr),
        substituted_agree: embed(&sl) == cl && embed(&sr) == cr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_are_killing_normalized() {
        let g = g0();
        for (_, i, j) in PAIRS {
            assert_eq!(killing_form(&g.elements[i], &g.elements[j]).unwrap(), Scalar::from_int(2));
        }
    }

    #[test]
    fn cartan_pair_spans_t() {
        let g = g0();
        let t = gsp4::cartan_t();
        assert!(t.contains(&g.elements[H_A]) && t.contains(&g.elements[H_B]));
        assert!(!g.alpha_h_alpha.is_zero() && !g.beta_h_beta.is_zero());
    }

    #[test]
    fn letters_have_their_weights() {
        let g = g0();
        for i in 0..10 {
            let w = gsp4::weight_of(&g.elements[i], &gsp4::cartan_t()).unwrap();
            assert_eq!(w, Some(g.weight(i)), "{}", NAMES[i]);
        }
    }

    #[test]
    fn casimir_shape_and_center() {
        let g = g0();
        let om = casimir(g).unwrap();
        let s = casimir_shape(g, &om);
        assert!(s.ok, "{s:?}");
    }

    #[test]
    fn h_is_subalgebra() {
        assert!(h_subalgebra_closed(g0()).unwrap());
    }

    #[test]
    fn commutation_small() {
        for i in 1..=3 {
            let r = commutation_identity(i).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn killing_rejects_gl4() {
        let z = gsp4::center();
        assert!(matches!(killing_form(&z, &z), Err(KernelError::Membership(_))));
    }
}
