use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{KernelError, Result};
use crate::exactnum::{Rational, Scalar};
use crate::linalg::{self, Matrix};

/// Weight `p·α + q·β` with half-integer `p, q`, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight {
    pub p2: i64,
    pub q2: i64,
}

impl Weight {
    pub const ZERO: Weight = Weight { p2: 0, q2: 0 };

    /// Integer weight `p·α + q·β`.
    pub const fn new(p: i64, q: i64) -> Self {
        Weight { p2: 2 * p, q2: 2 * q }
    }

    pub const fn halves(p2: i64, q2: i64) -> Self {
        Weight { p2, q2 }
    }

    pub fn p(&self) -> Rational {
        crate::exactnum::q(self.p2, 2)
    }

    pub fn q(&self) -> Rational {
        crate::exactnum::q(self.q2, 2)
    }

    /// Eigenvalues `(−2p·i, −2q·i)` of `(H, J)` on a vector of this weight.
    pub fn eigenvalues(&self) -> (Scalar, Scalar) {
        (Scalar::gauss(0, -self.p2), Scalar::gauss(0, -self.q2))
    }

    /// Inverse of [`Weight::eigenvalues`]; `None` unless both give half-integers.
    pub fn from_eigenvalues(h: &Scalar, j: &Scalar) -> Option<Weight> {
        let p2 = half_units(h)?;
        let q2 = half_units(j)?;
        Some(Weight { p2, q2 })
    }
}

// eigenvalue −2p·i  ↦  2p
fn half_units(e: &Scalar) -> Option<i64> {
    if !num_traits::Zero::is_zero(&e.re) || !e.im.is_integer() {
        return None;
    }
    (-e.im.to_integer()).try_into().ok()
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight { p2: self.p2 + o.p2, q2: self.q2 + o.q2 }
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight { p2: self.p2 - o.p2, q2: self.q2 - o.q2 }
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { p2: -self.p2, q2: -self.q2 }
    }
}

fn fmt_half(n: i64) -> String {
    if n % 2 == 0 {
        format!("{}", n / 2)
    } else {
        format!("{}/2", n)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_half(self.p2), fmt_half(self.q2))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Gershgorin-type bound on `|eigenvalue|`, using `|re| + |im|` per entry.
fn spectral_bound(m: &Matrix<Scalar>) -> i64 {
    let mut best = Rational::from_integer(0.into());
    for row in m {
        let mut s = Rational::from_integer(0.into());
        for x in row {
            s += num_traits::Signed::abs(&x.re) + num_traits::Signed::abs(&x.im);
        }
        if s > best {
            best = s;
        }
    }
    let c = best.ceil().to_integer();
    c.try_into().unwrap_or(i64::MAX)
}

/// Eigenspaces of `m` for eigenvalues `−k·i`, `k` an integer (so weights in ½ℤ).
fn imaginary_eigenspaces(m: &Matrix<Scalar>) -> Vec<(i64, Vec<Vec<Scalar>>)> {
    let n = m.len();
    let bound = spectral_bound(m);
    let mut out = Vec::new();
    for k in -bound..=bound {
        let lam = Scalar::gauss(0, -k);
        let mut shifted = m.clone();
        for (i, row) in shifted.iter_mut().enumerate().take(n) {
            row[i] = &row[i] - &lam;
        }
        let ns = linalg::nullspace(&shifted);
        if !ns.is_empty() {
            out.push((k, ns));
        }
    }
    out
}

/// Joint eigenspace decomposition of two commuting operators `(H, J)`, given
/// as matrices acting on column vectors. Fails unless both act diagonalizably
/// with eigenvalues in `−i·ℤ`.
pub fn joint_weight_spaces(
    h: &Matrix<Scalar>,
    j: &Matrix<Scalar>,
) -> Result<Vec<(Weight, Vec<Vec<Scalar>>)>> {
    let n = h.len();
    let mut out: Vec<(Weight, Vec<Vec<Scalar>>)> = Vec::new();
    let mut total = 0;
    for (p2, space) in imaginary_eigenspaces(h) {
        // J restricted to this H-eigenspace, in the eigenspace basis
        let cols = linalg::transpose(&space);
        let mut restricted: Matrix<Scalar> = linalg::zeros(space.len(), space.len());
        for (c, v) in space.iter().enumerate() {
            let jv = linalg::mat_vec(j, v);
            let coords = linalg::solve(&cols, &jv).ok_or_else(|| {
                KernelError::NotStable("J does not preserve an H-eigenspace".into())
            })?;
            for (r, x) in coords.into_iter().enumerate() {
                restricted[r][c] = x;
            }
        }
        for (q2, sub) in imaginary_eigenspaces(&restricted) {
            let vecs: Vec<Vec<Scalar>> = sub
                .iter()
                .map(|coef| {
                    let mut v = vec![Scalar::zero(); n];
                    for (k, c) in coef.iter().enumerate() {
                        if !c.is_zero() {
                            for (x, y) in v.iter_mut().zip(&space[k]) {
                                *x += &(c * y);
                            }
                        }
                    }
                    v
                })
                .collect();
            total += vecs.len();
            out.push((Weight { p2, q2 }, vecs));
        }
    }
    if total != n {
        return Err(KernelError::NotStable(format!(
            "operators not diagonalizable over half-integer weights ({total} of {n})"
        )));
    }
    out.sort_by_key(|(w, _)| *w);
    Ok(out)
}

/// Weight of `v` under `(H, J)` given as matrices, if `v` is a joint eigenvector.
pub fn weight_of_vector(
    h: &Matrix<Scalar>,
    j: &Matrix<Scalar>,
    v: &[Scalar],
) -> Result<Option<Weight>> {
    let Some(k) = v.iter().position(|x| !x.is_zero()) else {
        return Err(KernelError::ZeroElement);
    };
    let mut eig = Vec::new();
    for m in [h, j] {
        let mv = linalg::mat_vec(m, v);
        let lam = &mv[k] / &v[k];
        if mv.iter().zip(v).any(|(a, b)| *a != &lam * b) {
            return Ok(None);
        }
        eig.push(lam);
    }
    Ok(Weight::from_eigenvalues(&eig[0], &eig[1]))
}
