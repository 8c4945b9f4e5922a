//! Chevalley–Eilenberg derivative of invariant forms on b0, the twisted
//! coefficient calculus `f^τ`, and the closedness computations built on them.

mod seed;
mod twisted;

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{Ring, Scalar};
use crate::forms::{self, k_action, Frame, Multivector, DIM};
use crate::gsp4::{self, b0_basis, b0_ktilde_coords, Weight};

pub use seed::{eisenstein_seed_closed, FormalForm, SeedRecord};
pub use twisted::{
    closedness_condition, eta_tau, obstruction, reference_five_form, Base, ClosednessReport,
    CoeffFn, TwistedForm,
};

type M = Multivector<Scalar>;

/// Which table of `d(b_k*)` drives the derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DTable {
    /// From the structure constants of b0.
    StructureConstants,
    /// The six rows as displayed in the source, taken literally.
    Displayed,
}

fn structure_table() -> &'static [M; DIM] {
    static T: OnceLock<[M; DIM]> = OnceLock::new();
    T.get_or_init(|| {
        let basis = b0_basis();
        let mut rows: [M; DIM] = std::array::from_fn(|_| M::zero(Frame::Borel, 2));
        for i in 0..DIM {
            for j in i + 1..DIM {
                let (c, rest) = b0_ktilde_coords(&gsp4::bracket(&basis[i], &basis[j]));
                debug_assert!(rest.iter().all(|x| x.is_zero()), "b0 is a subalgebra");
                for (k, ck) in c.iter().enumerate() {
                    // dξ_k = −Σ_{i<j} c^k_ij b_i*∧b_j*
                    rows[k].add_term(vec![i, j], -ck.clone());
                }
            }
        }
        rows
    })
}

fn b(i: usize) -> M {
    M::covector(Frame::Borel, i)
}

fn w2(i: usize, j: usize, c: i64) -> M {
    M::monomial(Frame::Borel, &[i, j], Scalar::from_int(c))
}

fn sum(parts: &[M]) -> M {
    parts.iter().fold(M::zero(Frame::Borel, parts[0].degree()), |acc, x| acc.try_add(x).expect("Borel"))
}

/// `d(a*), …, d(n3*)` exactly as displayed.
pub fn displayed_d_table() -> [M; DIM] {
    let (a, h, n0, n1, n2, n3) = (0, 1, 2, 3, 4, 5);
    [
        M::zero(Frame::Borel, 2),
        M::zero(Frame::Borel, 2),
        w2(h, n0, -2),
        sum(&[w2(a, n1, -2), w2(h, n2, -2), w2(n0, n3, -1)]),
        sum(&[w2(a, n2, -2), w2(h, n1, -2), w2(n0, n3, -1)]),
        sum(&[w2(a, n3, -2), w2(n0, n1, -1), w2(n0, n2, -1)]),
    ]
}

/// The table used by [`ce_d`].
pub fn d_table() -> [M; DIM] {
    structure_table().clone()
}

/// Antiderivation extending the given `d` on covectors.
pub fn ce_d_with<C: Ring>(w: &Multivector<C>, table: DTable) -> Multivector<C> {
    let shown;
    let rows: &[M; DIM] = match table {
        DTable::StructureConstants => structure_table(),
        DTable::Displayed => {
            shown = displayed_d_table();
            &shown
        }
    };
    let borel = w.to_frame(Frame::Borel);
    let mut out = Multivector::zero(Frame::Borel, w.degree() + 1);
    for (key, c) in borel.terms() {
        for (m, &i) in key.iter().enumerate() {
            for (pq, x) in rows[i].terms() {
                let mut nk = key[..m].to_vec();
                nk.extend_from_slice(pq);
                nk.extend_from_slice(&key[m + 1..]);
                let coef = c.scale(x);
                out.add_term(nk, if m % 2 == 1 { -coef } else { coef });
            }
        }
    }
    out.to_frame(w.frame())
}

/// Chevalley–Eilenberg derivative of an invariant form on b0.
pub fn ce_d<C: Ring>(w: &Multivector<C>) -> Multivector<C> {
    ce_d_with(w, DTable::StructureConstants)
}

/// An identity `lhs = rhs` with its difference, all serialized exactly.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ProofRecord {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
    pub holds: bool,
}

impl ProofRecord {
    pub fn new(label: impl Into<String>, lhs: String, rhs: String, difference: String, holds: bool) -> Self {
        ProofRecord { label: label.into(), lhs, rhs, difference, holds }
    }

    pub fn forms<C: Ring>(label: impl Into<String>, lhs: &Multivector<C>, rhs: &Multivector<C>) -> Result<Self> {
        let diff = lhs.try_sub(rhs)?;
        Ok(Self::new(label, lhs.to_string(), rhs.to_string(), diff.to_string(), diff.is_zero()))
    }
}

/// `d(n1*∧n2*)` and `d(n0*∧(n1* − n2*)∧n3*)` against their displayed values.
pub fn displayed_higher_identities() -> Result<Vec<ProofRecord>> {
    let (a, n0, n1, n2, n3) = (0, 2, 3, 4, 5);
    let n12 = b(n1).wedge(&b(n2))?;
    let x = b(n0).wedge(&b(n1).try_sub(&b(n2))?)?.wedge(&b(n3))?;
    let rhs1 = b(a).wedge(&n12)?.scale_scalar(&Scalar::from_int(-4)).try_sub(&x)?;
    let rhs2 = b(a).wedge(&x)?.scale_scalar(&Scalar::from_int(-4));
    Ok(vec![
        ProofRecord::forms("d(n1*^n2*) = -4 a*^n1*^n2* - n0*^(n1*-n2*)^n3*", &ce_d(&n12), &rhs1)?,
        ProofRecord::forms("d(n0*^(n1*-n2*)^n3*) = -4 a*^n0*^(n1*-n2*)^n3*", &ce_d(&x), &rhs2)?,
    ])
}

/// Row-by-row comparison of [`ce_d`] on covectors with the displayed table.
pub fn d_table_records() -> Result<Vec<ProofRecord>> {
    let names = Frame::Borel.covector_names();
    displayed_d_table()
        .iter()
        .enumerate()
        .map(|(k, shown)| ProofRecord::forms(format!("d({})", names[k]), &ce_d(&b(k)), shown))
        .collect()
}

/// Eigen-data of a form under `H` (and `J` when it is also a `J`-eigenvector).
#[derive(Clone, Debug, Serialize)]
pub struct WeightEntry {
    pub name: String,
    pub form: String,
    pub h_eigenvalue: Option<Scalar>,
    pub weight: Option<Weight>,
    pub expected_alpha: Option<i64>,
    pub ok: bool,
}

fn eigenvalue(x: &gsp4::LieElt, w: &M) -> Result<Option<Scalar>> {
    let img = k_action(x, w)?;
    let Some((k, c)) = w.terms().next() else { return Ok(None) };
    let lam = &img.coeff(k) / c;
    Ok(img.try_sub(&w.scale_scalar(&lam))?.is_zero().then_some(lam))
}

fn entry(name: &str, w: &M, expected_alpha: Option<i64>) -> Result<WeightEntry> {
    let h = eigenvalue(&gsp4::cartan_h(), w)?;
    let j = eigenvalue(&gsp4::cartan_j(), w)?;
    let weight = match (&h, &j) {
        (Some(h), Some(j)) => Weight::from_eigenvalues(h, j),
        _ => None,
    };
    let p_from_h = h.as_ref().and_then(|h| Weight::from_eigenvalues(h, &Scalar::zero())).map(|w| w.p2);
    let ok = match expected_alpha {
        Some(e) => p_from_h == Some(2 * e),
        None => true,
    };
    Ok(WeightEntry { name: name.into(), form: w.to_string(), h_eigenvalue: h, weight, expected_alpha, ok })
}

#[derive(Clone, Debug, Serialize)]
pub struct Section6Report {
    /// `η^±`, `η_±` with their stated `α`-weights.
    pub asserted: Vec<WeightEntry>,
    /// Full weight table of `∧²u*`, recorded only.
    pub wedge2_u: Vec<WeightEntry>,
}

/// Weights of `η^±` and `η_±` under `H`, and the weights of all of `∧²u*`.
pub fn weights_of_section6_forms() -> Result<Section6Report> {
    let asserted = vec![
        entry("eta^+", &forms::eta_upper(1), Some(1))?,
        entry("eta^-", &forms::eta_upper(-1), Some(-1))?,
        entry("eta_+", &forms::eta_lower(1), Some(1))?,
        entry("eta_-", &forms::eta_lower(-1), Some(-1))?,
    ];
    let mut wedge2_u = Vec::new();
    for (name, w) in forms::u_star_wedge2() {
        wedge2_u.push(entry(&name, &w, None)?);
    }
    // the H-eigenbasis of ∧²u*
    for s in [1, -1] {
        let name = if s == 1 { "eta_+" } else { "eta_-" };
        wedge2_u.push(entry(name, &forms::eta_lower(s), None)?);
    }
    Ok(Section6Report { asserted, wedge2_u })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::wedge_basis;

    #[test]
    fn d_of_a_and_h_vanish() {
        assert!(ce_d(&b(0)).is_zero());
        assert!(ce_d(&b(1)).is_zero());
    }

    #[test]
    fn d_of_n0() {
        assert_eq!(ce_d(&b(2)), w2(1, 2, -2));
    }

    #[test]
    fn displayed_rows() {
        let rec = d_table_records().unwrap();
        let bad: Vec<&str> = rec.iter().filter(|r| !r.holds).map(|r| r.label.as_str()).collect();
        assert_eq!(bad, vec!["d(n3*)"]);
        let want = sum(&[w2(0, 5, -2), w2(2, 3, -1), w2(2, 4, 1)]);
        assert_eq!(ce_d(&b(5)), want);
    }

    #[test]
    fn higher_identities_hold() {
        assert!(displayed_higher_identities().unwrap().iter().all(|r| r.holds));
    }

    #[test]
    fn d_squared_zero_on_all_monomials() {
        let mut count = 0;
        for k in 0..=DIM {
            for key in wedge_basis(k) {
                let m = M::monomial(Frame::Borel, &key, Scalar::one());
                assert!(ce_d(&ce_d(&m)).is_zero(), "{key:?}");
                count += 1;
            }
        }
        assert_eq!(count, 64);
    }

    #[test]
    fn displayed_table_breaks_d_squared() {
        let m = b(5);
        assert!(!ce_d_with(&ce_d_with(&m, DTable::Displayed), DTable::Displayed).is_zero());
    }

    #[test]
    fn d_in_root_frame_matches() {
        let w = forms::eta_j(0).unwrap();
        let via_borel = ce_d(&w.to_frame(Frame::Borel)).to_frame(Frame::Root);
        assert_eq!(ce_d(&w), via_borel);
    }

    #[test]
    fn section6_weights() {
        let r = weights_of_section6_forms().unwrap();
        let ok: Vec<bool> = r.asserted.iter().map(|e| e.ok).collect();
        assert_eq!(ok, vec![false, false, true, true]);
        let n23 = r.wedge2_u.iter().find(|e| e.name == "n2*^n3*").unwrap();
        assert_eq!(n23.h_eigenvalue, Some(Scalar::zero()));
    }
}
