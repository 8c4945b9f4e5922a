//! Fixed workloads shared by the criterion benches and their smoke test.

use gsp4kit::forms::{wedge_basis, Frame};
use gsp4kit::invcalc::ce_d;
use gsp4kit::uea::{g0, period_reduce, Strategy};
use gsp4kit::{Multivector, RatFun, Scalar, UeaElt};

/// Product of two degree-3 words in U(g0).
pub fn pbw_product() -> UeaElt {
    let u = &g0().uea;
    u.mul(&u.word(&[9, 6, 3]), &u.word(&[2, 7, 8]))
}

/// `ℓ(E_b^3 E_-b^3 E_a E_-a φ0)` by the given strategy.
pub fn period(strategy: Strategy) -> gsp4kit::Poly {
    let u = &g0().uea;
    period_reduce(&u.word(&[6, 6, 6, 7, 7, 7, 8, 9]), strategy).expect("reduces")
}

/// `d` applied to every basis 2-form and 3-form of b0*.
pub fn ce_d_sweep() -> usize {
    let mut nonzero = 0;
    for k in [2usize, 3] {
        for key in wedge_basis(k) {
            let m = Multivector::monomial(Frame::Borel, &key, Scalar::one());
            nonzero += usize::from(!ce_d(&m).is_zero());
        }
    }
    nonzero
}

pub fn pullback_scalars() -> (RatFun, RatFun) {
    gsp4kit::forms::pullback_scalars().expect("pullback scalars")
}
