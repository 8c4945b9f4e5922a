use super::{k_action, wedge_basis, Frame, Multivector};
use crate::error::{KernelError, Result};
use crate::exactnum::Scalar;
use crate::ktypes::{default_generators, KModule};
use crate::linalg;

type M = Multivector<Scalar>;

fn mono(frame: Frame, idx: &[usize], c: Scalar) -> M {
    Multivector::monomial(frame, idx, c)
}

fn sum(parts: &[M]) -> M {
    parts[1..].iter().fold(parts[0].clone(), |acc, x| acc.try_add(x).expect("same frame"))
}

fn one() -> Scalar {
    Scalar::from_int(1)
}

/// `η_j` for `−2 ≤ j ≤ 2`, in the root frame.
pub fn eta_j(j: i64) -> Result<M> {
    let r = Frame::Root;
    let m = |a: usize, b: usize, c: i64| mono(r, &[a, b], Scalar::from_int(c));
    Ok(match j {
        2 => m(0, 3, 1),
        1 => sum(&[m(0, 4, 1), m(1, 3, 1)]),
        0 => sum(&[m(0, 5, 1), m(1, 4, 2), m(2, 3, 1)]),
        -1 => sum(&[m(2, 4, 1), m(1, 5, 1)]),
        -2 => m(2, 5, 1),
        _ => return Err(KernelError::Malformed(format!("eta_{j}: index outside -2..=2"))),
    })
}

/// `ω0 = h*∧n2* + ½ n0*∧n3* + a*∧n1*`.
pub fn omega0() -> M {
    let b = Frame::Borel;
    sum(&[mono(b, &[1, 4], one()), mono(b, &[2, 5], Scalar::ratio(1, 2)), mono(b, &[0, 3], one())])
}

/// `η^± = h* ± (i/2) n0*`.
pub fn eta_upper(sign: i64) -> M {
    let b = Frame::Borel;
    sum(&[mono(b, &[1], one()), mono(b, &[2], Scalar::new(crate::exactnum::q(0, 1), crate::exactnum::q(sign, 2)))])
}

/// `η_± = n1*∧n3* ± i n1*∧n2*`.
pub fn eta_lower(sign: i64) -> M {
    let b = Frame::Borel;
    sum(&[mono(b, &[3, 5], one()), mono(b, &[3, 4], Scalar::gauss(0, sign))])
}

/// `η¹ = a*∧h*∧n1*∧n2*` and `η² = a*∧n0*∧(n1* − n2*)∧n3*`.
pub fn eta_sup(i: usize) -> Result<M> {
    let b = Frame::Borel;
    match i {
        1 => Ok(mono(b, &[0, 1, 3, 4], one())),
        2 => Ok(sum(&[mono(b, &[0, 2, 3, 5], one()), mono(b, &[0, 2, 4, 5], -one())])),
        _ => Err(KernelError::Malformed(format!("eta^{i}: index must be 1 or 2"))),
    }
}

/// `h*∧n0*∧(n1* − n2*)∧n3*`, the variant with `h*` in place of `a*`.
pub fn eta_sup2_displayed() -> M {
    let b = Frame::Borel;
    sum(&[mono(b, &[1, 2, 3, 5], one()), mono(b, &[1, 2, 4, 5], -one())])
}

/// `η_o = 2a*` on b0.
pub fn eta_o() -> M {
    mono(Frame::Borel, &[0], Scalar::from_int(2))
}

/// Basis `n1*∧n2*, n1*∧n3*, n2*∧n3*` of `∧²u*`.
pub fn u_star_wedge2() -> Vec<(String, M)> {
    let b = Frame::Borel;
    [(3, 4), (3, 5), (4, 5)]
        .into_iter()
        .map(|(i, j)| {
            let m = mono(b, &[i, j], one());
            (m.basis_label(&[i, j]), m)
        })
        .collect()
}

/// `∧ᵏ b0*` as a k-module in the Borel frame, basis in lexicographic order.
pub fn wedge_module(k: usize) -> Result<KModule> {
    if k > super::DIM {
        return Err(KernelError::Malformed(format!("no exterior power of degree {k}")));
    }
    let basis = wedge_basis(k);
    let gens = default_generators();
    let probe = M::zero(Frame::Borel, k);
    let labels = basis.iter().map(|key| probe.basis_label(key)).collect();
    let mut action = Vec::new();
    for x in &gens {
        let cols: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|key| k_action(x, &mono(Frame::Borel, key, one())).map(|w| w.to_vec()))
            .collect::<Result<_>>()?;
        action.push(linalg::transpose(&cols));
    }
    KModule::new(labels, gens, action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gsp4::{self, Weight};
    use crate::ktypes::{decompose_character, multiplicity, KGen};

    fn h_eigen(w: &M) -> Option<Scalar> {
        let hw = k_action(&gsp4::cartan_h(), w).unwrap();
        let r = hw.to_vec();
        let v = w.to_vec();
        let k = v.iter().position(|x| !x.is_zero())?;
        let lam = &r[k] / &v[k];
        r.iter().zip(&v).all(|(a, b)| *a == &lam * b).then_some(lam)
    }

    #[test]
    fn eta_weights() {
        for j in -2..=2 {
            assert_eq!(h_eigen(&eta_j(j).unwrap()), Some(Scalar::gauss(0, -2 * j)), "eta_{j}");
        }
    }

    #[test]
    fn eta2_is_wedge_of_root_covectors() {
        let a = M::covector(Frame::Root, 0);
        let b = M::covector(Frame::Root, 3);
        assert_eq!(a.wedge(&b).unwrap(), eta_j(2).unwrap());
    }

    #[test]
    fn j_kills_eta2() {
        assert!(k_action(&gsp4::cartan_j(), &eta_j(2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn omega0_invariant() {
        for x in gsp4::k_basis().iter().chain([gsp4::pinned_e_alpha(1), gsp4::pinned_e_alpha(-1)].iter()) {
            assert!(k_action(x, &omega0()).unwrap().is_zero());
        }
    }

    #[test]
    fn lower_forms_have_weights_plus_minus_alpha() {
        assert_eq!(h_eigen(&eta_lower(1)), Some(Scalar::gauss(0, -2)));
        assert_eq!(h_eigen(&eta_lower(-1)), Some(Scalar::gauss(0, 2)));
        // the upper forms come out with the opposite signs
        assert_eq!(h_eigen(&eta_upper(1)), Some(Scalar::gauss(0, 2)));
    }

    #[test]
    fn wedge2_decomposition() {
        let m = wedge_module(2).unwrap();
        let ch = m.character().unwrap();
        let want = vec![Weight::new(2, 0), Weight::new(1, 2), Weight::new(1, 0), Weight::new(1, -2), Weight::new(0, 0)];
        assert_eq!(decompose_character(&ch).unwrap(), want);
        assert_eq!(multiplicity(&ch, Weight::new(2, 0)).unwrap(), 1);
        let hw = m.highest_weight_vectors(Weight::new(2, 0)).unwrap();
        assert_eq!(hw.len(), 1);
        let v = M::from_vec(Frame::Borel, 2, &hw[0]).to_frame(Frame::Root);
        assert!(v.ratio_to(&eta_j(2).unwrap()).is_some());
        assert_eq!(m.highest_weight_vectors(Weight::ZERO).unwrap().len(), 1);
    }

    #[test]
    fn wedge4_matches_wedge2() {
        let c2 = wedge_module(2).unwrap().character().unwrap();
        let c4 = wedge_module(4).unwrap().character().unwrap();
        assert_eq!(c2, c4);
    }

    #[test]
    fn lowering_chain() {
        let m = wedge_module(2).unwrap();
        let mut v = eta_j(2).unwrap().to_frame(Frame::Borel).to_vec();
        let mut hits = Vec::new();
        for j in (-2..2).rev() {
            v = m.act(KGen::ENegAlpha, &v);
            let w = M::from_vec(Frame::Borel, 2, &v).to_frame(Frame::Root);
            assert!(!w.is_zero());
            if w.ratio_to(&eta_j(j).unwrap()).is_some() {
                hits.push(j);
            }
        }
        assert!(m.act(KGen::ENegAlpha, &v).iter().all(|x| x.is_zero()));
        // only the extreme displayed vectors lie in the 2α-submodule
        assert_eq!(hits, vec![-2]);
    }

    #[test]
    fn displayed_eta_match_after_rescaling_root_covectors() {
        // e*_k ↦ e*_k / s_k turns the lowering chain into the displayed list
        let s = [(1, 1), (2, 1), (2, 1), (-1, 2), (1, 1), (-1, 1)].map(|(n, d)| Scalar::ratio(n, d));
        let rescale = |w: &M| {
            let mut out = M::zero(Frame::Root, 2);
            for (k, c) in w.terms() {
                let f = k.iter().fold(c.clone(), |acc, &i| &acc * &s[i]);
                out = out.try_add(&Multivector::monomial(Frame::Root, k, f)).unwrap();
            }
            out
        };
        let m = wedge_module(2).unwrap();
        let mut v = eta_j(2).unwrap().to_frame(Frame::Borel).to_vec();
        for j in (-2..2).rev() {
            v = m.act(KGen::ENegAlpha, &v);
            let w = M::from_vec(Frame::Borel, 2, &v).to_frame(Frame::Root);
            assert!(rescale(&w).ratio_to(&eta_j(j).unwrap()).is_some(), "eta_{j}");
        }
    }

    #[test]
    fn displayed_eta_span_not_stable() {
        let m = wedge_module(2).unwrap();
        let mut rows: Vec<Vec<Scalar>> =
            (-2..=2).map(|j| eta_j(j).unwrap().to_frame(Frame::Borel).to_vec()).collect();
        let base = linalg::rank(&rows);
        for j in -2..=2 {
            let v = eta_j(j).unwrap().to_frame(Frame::Borel).to_vec();
            rows.push(m.act(KGen::EAlpha, &v));
            rows.push(m.act(KGen::ENegAlpha, &v));
        }
        assert_eq!(base, 5);
        assert!(linalg::rank(&rows) > 5);
    }
}
