//! The splitting gsp4 = b0 ⊕ k~, the induced action of k~ on b0 ≅ g/k~, and
//! the root frame of b0.

use std::sync::OnceLock;

use serde::Serialize;

use super::{b0_basis, bracket, cartan_h, cartan_j, ktilde_basis, LieElt, Weight};
use crate::error::{KernelError, Result};
use crate::exactnum::{Ring, Scalar};
use crate::linalg::{self, Matrix};

struct Splitting {
    left_inv: Matrix<Scalar>,
}

fn splitting() -> &'static Splitting {
    static S: OnceLock<Splitting> = OnceLock::new();
    S.get_or_init(|| {
        let mut basis = b0_basis();
        basis.extend(ktilde_basis());
        let cols = linalg::transpose(&basis.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
        let left_inv = linalg::left_inverse(&cols).expect("b0 and k~ span gsp4");
        Splitting { left_inv }
    })
}

/// Coordinates of a 4×4 matrix (any coefficient ring) in the basis
/// `(a, h, n0, n1, n2, n3, H, S11, S12, S22, Z)`. The caller guarantees membership.
pub fn split_coords<C: Ring>(m: &Matrix<C>) -> Vec<C> {
    let flat: Vec<C> = m.iter().flatten().cloned().collect();
    splitting()
        .left_inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(&flat)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(C::zero(), |acc, (a, b)| acc + b.scale(a))
        })
        .collect()
}

/// `(b0 part, k~ part)` of `x`.
pub fn b0_ktilde_coords(x: &LieElt) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut c = split_coords(x.matrix());
    let k = c.split_off(6);
    (c, k)
}

pub fn in_ktilde(x: &LieElt) -> bool {
    b0_ktilde_coords(x).0.iter().all(|c| c.is_zero())
}

/// Matrix of `Y ↦ proj_b0 [x, Y]` on b0 (columns are images of a, h, n0, …, n3).
pub fn quotient_action(x: &LieElt) -> Result<Matrix<Scalar>> {
    if !in_ktilde(x) {
        return Err(KernelError::NotInKTilde(x.to_string()));
    }
    let mut m = linalg::zeros(6, 6);
    for (c, b) in b0_basis().iter().enumerate() {
        let (img, _) = b0_ktilde_coords(&bracket(x, b));
        for (r, v) in img.into_iter().enumerate() {
            m[r][c] = v;
        }
    }
    Ok(m)
}

/// Weight of a b0 vector (Borel coordinates) under the quotient action of t.
pub fn quotient_weight_of(v: &[Scalar]) -> Result<Option<Weight>> {
    let mh = quotient_action(&cartan_h())?;
    let mj = quotient_action(&cartan_j())?;
    super::weight_of_vector(&mh, &mj, v)
}

pub fn borel_names() -> [&'static str; 6] {
    ["a", "h", "n0", "n1", "n2", "n3"]
}

/// Root-frame order `e_{−α−β}, e_{−β}, e_{α−β}, e_{−α+β}, e_β, e_{α+β}`.
pub fn root_names() -> [&'static str; 6] {
    ["e(-a-b)", "e(-b)", "e(a-b)", "e(-a+b)", "e(b)", "e(a+b)"]
}

pub const ROOT_FRAME_WEIGHTS: [Weight; 6] = [
    Weight::new(-1, -1),
    Weight::new(0, -1),
    Weight::new(1, -1),
    Weight::new(-1, 1),
    Weight::new(0, 1),
    Weight::new(1, 1),
];

/// Six vectors of b0 in Borel coordinates with their intended weights.
#[derive(Clone, Debug)]
pub struct RootFrame {
    pub vectors: Vec<Vec<Scalar>>,
}

fn half() -> Scalar {
    Scalar::ratio(1, 2)
}

fn i(n: i64) -> Scalar {
    Scalar::gauss(0, n)
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn build_frame(sign_n3_neg_alpha_beta: i64) -> RootFrame {
    let z = Scalar::zero;
    RootFrame {
        vectors: vec![
            // e_{−α−β} = ½h + i n0 + i n2 − n3
            vec![z(), half(), i(1), z(), i(1), s(-1)],
            // e_{−β} = ½a + i n1
            vec![half(), z(), z(), i(1), z(), z()],
            // e_{α−β} = ½h − i n0 + i n2 + n3
            vec![z(), half(), i(-1), z(), i(1), s(1)],
            // e_{−α+β} = ½h + i n0 − i n2 ± n3
            vec![z(), half(), i(1), z(), i(-1), s(sign_n3_neg_alpha_beta)],
            // e_β = ½a − i n1
            vec![half(), z(), z(), i(-1), z(), z()],
            // e_{α+β} = ½h − i n0 − i n2 − n3
            vec![z(), half(), i(-1), z(), i(-1), s(-1)],
        ],
    }
}

/// The six frame vectors exactly as displayed in the source.
pub fn printed_root_frame() -> RootFrame {
    build_frame(-1)
}

/// The root frame used by the kernel: the displayed vectors with the `n3`
/// coefficient of `e_{−α+β}` corrected to `+1`.
pub fn corrected_root_frame() -> RootFrame {
    build_frame(1)
}

/// Change-of-basis matrix whose columns are the kernel's root vectors in
/// Borel coordinates.
pub fn root_frame_change() -> Matrix<Scalar> {
    linalg::transpose(&corrected_root_frame().vectors)
}

/// Root vector `E_γ ∈ g0` for each of the eight roots. For the roots of p
/// this is the p-component `(Y + Yᵀ)/2` of the kernel's frame vector `Y`; for
/// `±α` it is the pinned eigenvector in k.
pub fn root_vector(w: Weight) -> Option<LieElt> {
    if w == Weight::new(1, 0) || w == Weight::new(-1, 0) {
        return Some(super::pinned_e_alpha(w.p2 / 2));
    }
    let k = ROOT_FRAME_WEIGHTS.iter().position(|x| *x == w)?;
    let frame = corrected_root_frame();
    let basis = b0_basis();
    let terms: Vec<(Scalar, &LieElt)> = frame.vectors[k].iter().cloned().zip(basis.iter()).collect();
    let y = LieElt::combination(&terms);
    Some((&y + &y.transpose()).scale(&half()))
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameCheck {
    pub name: String,
    pub vector: Vec<Scalar>,
    pub expected: Weight,
    pub computed: Option<Weight>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameReport {
    pub checks: Vec<FrameCheck>,
    pub rank: usize,
    pub ok: bool,
}

impl RootFrame {
    pub fn verify(&self) -> FrameReport {
        let checks: Vec<FrameCheck> = self
            .vectors
            .iter()
            .zip(root_names())
            .zip(ROOT_FRAME_WEIGHTS)
            .map(|((v, name), w)| {
                let computed = quotient_weight_of(v).ok().flatten();
                FrameCheck {
                    name: name.to_string(),
                    vector: v.clone(),
                    expected: w,
                    computed,
                    ok: computed == Some(w),
                }
            })
            .collect();
        let rank = linalg::rank(&linalg::transpose(&self.vectors));
        let ok = rank == 6 && checks.iter().all(|c| c.ok);
        FrameReport { checks, rank, ok }
    }
}

/// Checks the displayed frame formulas as eigenvectors of the stated weights.
pub fn verify_frame_change() -> FrameReport {
    printed_root_frame().verify()
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn splitting_reconstructs() {
        for x in named_elements().iter().map(|(_, x)| x) {
            let c = split_coords(x.matrix());
            let mut basis = b0_basis();
            basis.extend(ktilde_basis());
            let terms: Vec<(Scalar, &LieElt)> = c.into_iter().zip(basis.iter()).collect();
            assert_eq!(&LieElt::combination(&terms), x);
        }
    }

    #[test]
    fn quotient_action_of_h() {
        let m = quotient_action(&cartan_h()).unwrap();
        // h ↦ −4 n0, n0 ↦ h, n2 ↦ −2 n3, n3 ↦ 2 n2
        assert_eq!(m[2][1], s(-4));
        assert_eq!(m[1][2], s(1));
        assert_eq!(m[5][4], s(-2));
        assert_eq!(m[4][5], s(2));
        assert!(m.iter().all(|r| r[0].is_zero() && r[3].is_zero()));
    }

    #[test]
    fn quotient_action_rejects_b0() {
        assert!(quotient_action(&borel_a()).is_err());
    }

    #[test]
    fn corrected_frame_is_eigen() {
        let r = corrected_root_frame().verify();
        assert!(r.ok, "{r:?}");
        assert_eq!(r.rank, 6);
    }

    #[test]
    fn printed_frame_single_failure() {
        let r = verify_frame_change();
        let bad: Vec<&str> = r.checks.iter().filter(|c| !c.ok).map(|c| c.name.as_str()).collect();
        assert_eq!(bad, vec!["e(-a+b)"]);
        assert_eq!(r.rank, 6);
    }
}
