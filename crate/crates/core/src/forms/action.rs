use std::collections::BTreeMap;

use serde::Serialize;

use super::{eta_sup, Frame, Multivector, DIM};
use crate::error::{KernelError, Result};
use crate::exactnum::{Poly, RatFun, Ring, Scalar};
use crate::gsp4::{self, quotient_action, root_frame_change, split_coords, LieElt};
use crate::linalg::{self, Matrix};

/// Quotient action of `x ∈ k~` on b0 in the coordinates of `frame`.
pub fn frame_matrix(x: &LieElt, frame: Frame) -> Result<Matrix<Scalar>> {
    let m = quotient_action(x)?;
    Ok(match frame {
        Frame::Borel => m,
        Frame::Root => {
            let p = root_frame_change();
            let pinv = linalg::inverse(&p).ok_or(KernelError::Singular)?;
            linalg::mat_mul(&pinv, &linalg::mat_mul(&m, &p))
        }
    })
}

/// Coadjoint action of `x ∈ k~` on `∧ᵏ b0*`, as a derivation.
pub fn k_action<C: Ring>(x: &LieElt, w: &Multivector<C>) -> Result<Multivector<C>> {
    let m = frame_matrix(x, w.frame())?;
    // ξ ↦ −ξ∘M, i.e. b_k* ↦ −Σ_j M[k][j] b_j*
    let l: Matrix<C> = (0..DIM)
        .map(|j| (0..DIM).map(|k| C::from_scalar(-m[k][j].clone())).collect())
        .collect();
    Ok(w.derivation(&l))
}

fn lift_matrix(m: &Matrix<Scalar>) -> Matrix<RatFun> {
    m.iter().map(|r| r.iter().cloned().map(RatFun::from).collect()).collect()
}

/// Invertible 4×4 matrix over rational functions with its inverse.
#[derive(Clone, Debug)]
pub struct GroupElt {
    pub matrix: Matrix<RatFun>,
    pub inverse: Matrix<RatFun>,
}

impl GroupElt {
    pub fn new(matrix: Matrix<RatFun>) -> Result<Self> {
        let inverse = linalg::inverse(&matrix).ok_or(KernelError::Singular)?;
        Ok(GroupElt { matrix, inverse })
    }

    /// Uses a known inverse after checking it.
    pub fn with_inverse(matrix: Matrix<RatFun>, inverse: Matrix<RatFun>) -> Result<Self> {
        let prod = linalg::mat_mul(&matrix, &inverse);
        if prod != linalg::identity(4) {
            return Err(KernelError::Singular);
        }
        Ok(GroupElt { matrix, inverse })
    }

    pub fn from_scalar(m: &Matrix<Scalar>) -> Result<Self> {
        let inv = linalg::inverse(m).ok_or(KernelError::Singular)?;
        Ok(GroupElt { matrix: lift_matrix(m), inverse: lift_matrix(&inv) })
    }

    pub fn diag(d: [i64; 4]) -> Result<Self> {
        let mut m = linalg::zeros(4, 4);
        for (k, x) in d.into_iter().enumerate() {
            m[k][k] = Scalar::from_int(x);
        }
        Self::from_scalar(&m)
    }

    pub fn identity() -> Self {
        GroupElt { matrix: linalg::identity(4), inverse: linalg::identity(4) }
    }

    pub fn compose(&self, o: &GroupElt) -> GroupElt {
        GroupElt {
            matrix: linalg::mat_mul(&self.matrix, &o.matrix),
            inverse: linalg::mat_mul(&o.inverse, &self.inverse),
        }
    }
}

fn rotation(c: RatFun, s: RatFun) -> Matrix<RatFun> {
    let z = RatFun::zero;
    vec![
        vec![c.clone(), s.clone(), z(), z()],
        vec![-s.clone(), c.clone(), z(), z()],
        vec![z(), z(), c.clone(), s.clone()],
        vec![z(), z(), -s, c],
    ]
}

/// `k(θ) = diag(k_θ, k_θ)` with `k_θ = [[C, S], [−S, C]]` for formal `C = cos θ`, `S = sin θ`.
/// Nothing assumes `C² + S² = 1`; all derived quantities are homogeneous of degree 0.
pub fn k_theta() -> GroupElt {
    let (c, s) = (RatFun::var("C"), RatFun::var("S"));
    let n = &(&c * &c) + &(&s * &s);
    let ninv = n.recip().expect("C^2 + S^2 is nonzero");
    let inv = rotation(&c * &ninv, -(&s * &ninv));
    GroupElt { matrix: rotation(c, s), inverse: inv }
}

/// `cos 2θ = (C² − S²)/(C² + S²)`.
pub fn trig_cos() -> RatFun {
    let (c, s) = (Poly::var("C"), Poly::var("S"));
    RatFun::new(&(&c * &c) - &(&s * &s), &(&c * &c) + &(&s * &s)).expect("nonzero")
}

/// `sin 2θ = 2CS/(C² + S²)`.
pub fn trig_sin() -> RatFun {
    let (c, s) = (Poly::var("C"), Poly::var("S"));
    RatFun::new((&c * &s).scale(&Scalar::from_int(2)), &(&c * &c) + &(&s * &s)).expect("nonzero")
}

/// `proj_b0(g Y g⁻¹)` in Borel coordinates.
pub fn quotient_ad(g: &GroupElt, y: &LieElt) -> Result<Vec<RatFun>> {
    let ym = lift_matrix(y.matrix());
    let conj = linalg::mat_mul(&g.matrix, &linalg::mat_mul(&ym, &g.inverse));
    let mut c = split_coords(&conj);
    c.truncate(DIM);
    Ok(c)
}

/// Linear map between frames with rational-function entries (columns are images).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub matrix: Matrix<RatFun>,
}

impl FrameMap {
    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FrameMap) -> Result<FrameMap> {
        if inner.target != self.source {
            return Err(KernelError::FrameMismatch(inner.target.join(","), self.source.join(",")));
        }
        Ok(FrameMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: linalg::mat_mul(&self.matrix, &inner.matrix),
        })
    }

    pub fn apply(&self, v: &[RatFun]) -> Vec<RatFun> {
        linalg::mat_vec(&self.matrix, v)
    }

    /// Transpose: the induced map on dual frames, `ξ ↦ ξ∘self`.
    pub fn dual(&self) -> FrameMap {
        let star = |v: &Vec<String>| v.iter().map(|s| format!("{s}*")).collect();
        FrameMap { source: star(&self.target), target: star(&self.source), matrix: linalg::transpose(&self.matrix) }
    }

    /// Image of the `j`-th source basis vector.
    pub fn column(&self, j: usize) -> Vec<RatFun> {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }
}

/// Matrix of `Y ↦ proj_b0(Ad_g Y)` on the Borel frame of b0.
pub fn quotient_ad_map(g: &GroupElt) -> Result<FrameMap> {
    let mut m = linalg::zeros(DIM, DIM);
    for (c, b) in gsp4::b0_basis().iter().enumerate() {
        for (r, x) in quotient_ad(g, b)?.into_iter().enumerate() {
            m[r][c] = x;
        }
    }
    let names: Vec<String> = gsp4::borel_names().iter().map(|s| s.to_string()).collect();
    Ok(FrameMap { source: names.clone(), target: names, matrix: m })
}

/// `ξ ↦ ξ∘Ad_g` extended multiplicatively; the result is in the frame of `w`.
pub fn pullback(g: &GroupElt, w: &Multivector<RatFun>) -> Result<Multivector<RatFun>> {
    let a = quotient_ad_map(g)?;
    let borel = w.to_frame(Frame::Borel);
    let out = borel.outermorphism(&linalg::transpose(&a.matrix), Frame::Borel);
    Ok(out.to_frame(w.frame()))
}

/// A coordinate subframe: the covectors that survive restriction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameSubset {
    pub frame: Frame,
    pub keep: Vec<usize>,
}

impl FrameSubset {
    /// Frame of `P_H`: `a*, h*, n1*, n2*` (`n0*`, `n3*` restrict to zero).
    pub fn ph() -> Self {
        FrameSubset { frame: Frame::Borel, keep: vec![0, 1, 3, 4] }
    }
}

/// Drops every term containing a covector outside the subframe.
pub fn restrict<C: Ring>(w: &Multivector<C>, sub: &FrameSubset) -> Multivector<C> {
    let w = w.to_frame(sub.frame);
    let mut out = Multivector::zero(sub.frame, w.degree());
    for (k, c) in w.terms() {
        if k.iter().all(|i| sub.keep.contains(i)) {
            out = out.try_add(&Multivector::monomial(sub.frame, k, c.clone())).expect("same frame");
        }
    }
    out
}

fn scalars_for(g: &GroupElt) -> Result<(RatFun, RatFun)> {
    let ph = FrameSubset::ph();
    let e1: Multivector<RatFun> = eta_sup(1)?.lift();
    let mut out = Vec::new();
    for i in [1, 2] {
        let w = eta_sup(i)?.lift();
        let r = restrict(&pullback(g, &w)?, &ph);
        let f = if r.is_zero() {
            RatFun::zero()
        } else {
            r.ratio_to(&e1).ok_or_else(|| {
                KernelError::Malformed(format!("restricted pullback of eta^{i} is not a multiple of eta^1"))
            })?
        };
        out.push(f);
    }
    let f2 = out.pop().expect("two");
    let f1 = out.pop().expect("two");
    Ok((f1, f2))
}

/// `(f1, f2)` with `restrict(pullback(k(θ), ηⁱ), P_H) = fᵢ · η¹`, after substituting
/// `tan θ = −r1/(r2·δ)`; rational functions in `r1, r2, delta`.
pub fn pullback_scalars() -> Result<(RatFun, RatFun)> {
    let (f1, f2) = scalars_for(&k_theta())?;
    let r1 = RatFun::var("r1");
    let den = &RatFun::var("r2") * &RatFun::var("delta");
    let t = -(r1 / den).ok_or(KernelError::Singular)?;
    let bind: BTreeMap<String, RatFun> =
        [("C".to_string(), RatFun::one()), ("S".to_string(), t)].into_iter().collect();
    Ok((f1.substitute(&bind)?, f2.substitute(&bind)?))
}

/// The same scalars for `γ = 1`, where no rotation occurs.
pub fn pullback_scalars_identity() -> Result<(RatFun, RatFun)> {
    scalars_for(&GroupElt::identity())
}

/// Displayed values `((r1² − r2²δ²)²/(r1² + r2²δ²)², (2 r1 r2 δ)²/(r1² + r2²δ²)²)`.
pub fn pullback_scalars_displayed() -> (RatFun, RatFun) {
    let (r1, r2, d) = (Poly::var("r1"), Poly::var("r2"), Poly::var("delta"));
    let x = &r1 * &r1;
    let y = &(&r2 * &r2) * &(&d * &d);
    let den = (&x + &y).pow(2);
    let f1 = RatFun::new((&x - &y).pow(2), den.clone()).expect("nonzero");
    let m = (&(&r1 * &r2) * &d).scale(&Scalar::from_int(2));
    let f2 = RatFun::new(m.pow(2), den).expect("nonzero");
    (f1, f2)
}

fn row(entries: &[(usize, RatFun)]) -> Vec<RatFun> {
    let mut v = vec![RatFun::zero(); DIM];
    for (k, x) in entries {
        v[*k] = x.clone();
    }
    v
}

/// Displayed images of `a, h, n0, n1, n2, n3` under `Ad_{k(θ)}`, Borel coordinates.
pub fn ad_table_displayed() -> Vec<Vec<RatFun>> {
    let (c, s) = (trig_cos(), trig_sin());
    vec![
        row(&[(0, RatFun::one())]),
        row(&[(1, c.clone()), (2, -s.clone())]),
        row(&[(2, RatFun::one())]),
        row(&[(3, RatFun::one())]),
        row(&[(4, c.clone()), (5, -s.clone())]),
        row(&[(4, -s), (5, c)]),
    ]
}

/// Displayed images of `a*, h*, n0*, n1*, n2*, n3*` under the dual action.
pub fn coadjoint_table_displayed() -> Vec<Vec<RatFun>> {
    let (c, s) = (trig_cos(), trig_sin());
    vec![
        row(&[(0, RatFun::one())]),
        row(&[(1, c.clone())]),
        row(&[(1, -s.clone()), (2, RatFun::one())]),
        row(&[(3, RatFun::one())]),
        row(&[(4, c.clone()), (5, -s.clone())]),
        row(&[(4, -s), (5, c)]),
    ]
}
