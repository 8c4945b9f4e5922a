//! gsp4 as exact 4×4 matrices: membership, brackets, the Cartan involution,
//! the distinguished elements and root/weight computations.

mod dump;
mod frame;
mod subspace;
mod weight;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{KernelError, Result};
use crate::exactnum::{Ring, Scalar};
use crate::linalg::{self, Matrix};

pub use dump::{structure_dump, StructureDump};
pub use frame::{
    b0_ktilde_coords, borel_names, corrected_root_frame, in_ktilde, printed_root_frame,
    quotient_action, quotient_weight_of, root_frame_change, root_names, root_vector, split_coords,
    verify_frame_change,
    FrameCheck, FrameReport, RootFrame, ROOT_FRAME_WEIGHTS,
};
pub use subspace::{root_decompose, subalgebra_closed, Subspace};
pub use weight::{joint_weight_spaces, weight_of_vector, Weight};

/// Symplectic form `[[0, I], [−I, 0]]`.
pub fn j2<C: Ring>() -> Matrix<C> {
    let mut m = linalg::zeros(4, 4);
    for k in 0..2 {
        m[k][k + 2] = C::one();
        m[k + 2][k] = -C::one();
    }
    m
}

/// The `c` with `Xᵀ J₂ + J₂ X = c J₂`, if any.
pub fn similitude_derivative(m: &Matrix<Scalar>) -> Option<Scalar> {
    let j = j2::<Scalar>();
    let lhs = linalg::mat_mul(&linalg::transpose(m), &j);
    let rhs = linalg::mat_mul(&j, m);
    let s: Matrix<Scalar> = lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
        .collect();
    let c = s[0][2].clone();
    for (r, row) in s.iter().enumerate() {
        for (k, x) in row.iter().enumerate() {
            if *x != &c * &j[r][k] {
                return None;
            }
        }
    }
    Some(c)
}

/// Element of gsp4 = sp4 ⊕ ℂ·I₄.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LieElt {
    m: Matrix<Scalar>,
}

impl LieElt {
    pub fn new(m: Matrix<Scalar>) -> Result<Self> {
        if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
            return Err(KernelError::Membership("not a 4x4 matrix".into()));
        }
        if similitude_derivative(&m).is_none() {
            return Err(KernelError::Membership(format!("{:?}", m)));
        }
        Ok(LieElt { m })
    }

    /// Builds from `(row, col, value)` triples; panics if not a member.
    pub fn from_entries(entries: &[(usize, usize, Scalar)]) -> Self {
        let mut m = linalg::zeros(4, 4);
        for (r, c, v) in entries {
            m[*r][*c] = &m[*r][*c] + v;
        }
        LieElt::new(m).expect("named element is in gsp4")
    }

    fn from_ints(entries: &[(usize, usize, i64)]) -> Self {
        let e: Vec<_> = entries.iter().map(|&(r, c, v)| (r, c, Scalar::from_int(v))).collect();
        LieElt::from_entries(&e)
    }

    pub fn zero() -> Self {
        LieElt { m: linalg::zeros(4, 4) }
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.m
    }

    pub fn entry(&self, r: usize, c: usize) -> &Scalar {
        &self.m[r][c]
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_matrix(&self.m)
    }

    /// Scalar `c` in `Xᵀ J₂ + J₂ X = c J₂`; zero exactly on sp4.
    pub fn similitude_factor(&self) -> Scalar {
        similitude_derivative(&self.m).expect("member")
    }

    pub fn in_sp4(&self) -> bool {
        self.similitude_factor().is_zero()
    }

    /// Row-major flattening.
    pub fn to_vec(&self) -> Vec<Scalar> {
        self.m.iter().flatten().cloned().collect()
    }

    pub fn from_vec(v: &[Scalar]) -> Result<Self> {
        if v.len() != 16 {
            return Err(KernelError::Malformed("expected 16 entries".into()));
        }
        LieElt::new(v.chunks(4).map(|c| c.to_vec()).collect())
    }

    pub fn scale(&self, c: &Scalar) -> LieElt {
        LieElt { m: self.m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect() }
    }

    pub fn transpose(&self) -> LieElt {
        LieElt { m: linalg::transpose(&self.m) }
    }

    /// Linear combination `Σ cᵢ Xᵢ`.
    pub fn combination(terms: &[(Scalar, &LieElt)]) -> LieElt {
        terms.iter().fold(LieElt::zero(), |acc, (c, x)| &acc + &x.scale(c))
    }
}

impl Add for &LieElt {
    type Output = LieElt;
    fn add(self, o: &LieElt) -> LieElt {
        LieElt {
            m: self.m.iter().zip(&o.m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
        }
    }
}

impl Sub for &LieElt {
    type Output = LieElt;
    fn sub(self, o: &LieElt) -> LieElt {
        self + &(-o)
    }
}

impl Neg for &LieElt {
    type Output = LieElt;
    fn neg(self) -> LieElt {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Mul for &LieElt {
    type Output = Matrix<Scalar>;
    fn mul(self, o: &LieElt) -> Matrix<Scalar> {
        linalg::mat_mul(&self.m, &o.m)
    }
}

impl fmt::Display for LieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl fmt::Debug for LieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Matrix commutator `XY − YX`.
pub fn bracket(x: &LieElt, y: &LieElt) -> LieElt {
    let m = linalg::mat_sub(&(x * y), &(y * x));
    LieElt::new(m).expect("gsp4 is closed under brackets")
}

/// The Cartan involution `X ↦ −Xᵀ` on g0.
pub fn cartan_theta(x: &LieElt) -> Result<LieElt> {
    if !x.in_sp4() {
        return Err(KernelError::Membership("cartan_theta needs an element of g0".into()));
    }
    Ok(-&x.transpose())
}

/// Compact Cartan element `H`.
pub fn cartan_h() -> LieElt {
    LieElt::from_ints(&[(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)])
}

/// Compact Cartan element `J` (equal to the symplectic form).
pub fn cartan_j() -> LieElt {
    LieElt::from_ints(&[(0, 2, 1), (1, 3, 1), (2, 0, -1), (3, 1, -1)])
}

/// `a = diag(1, 1, −1, −1)`.
pub fn borel_a() -> LieElt {
    LieElt::from_ints(&[(0, 0, 1), (1, 1, 1), (2, 2, -1), (3, 3, -1)])
}

/// `h = diag(1, −1, −1, 1)`.
pub fn borel_h() -> LieElt {
    LieElt::from_ints(&[(0, 0, 1), (1, 1, -1), (2, 2, -1), (3, 3, 1)])
}

/// The unipotent generators `n0, …, n3` of b0.
pub fn borel_n(k: usize) -> LieElt {
    match k {
        0 => LieElt::from_ints(&[(0, 1, 1), (3, 2, -1)]),
        1 => LieElt::from_ints(&[(0, 2, 1), (1, 3, 1)]),
        2 => LieElt::from_ints(&[(0, 2, 1), (1, 3, -1)]),
        3 => LieElt::from_ints(&[(0, 3, 1), (1, 2, 1)]),
        _ => panic!("n{k} does not exist"),
    }
}

/// Center direction `I₄`.
pub fn center() -> LieElt {
    LieElt::from_ints(&[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)])
}

/// Ordered basis `(a, h, n0, n1, n2, n3)` of b0.
pub fn b0_basis() -> Vec<LieElt> {
    vec![borel_a(), borel_h(), borel_n(0), borel_n(1), borel_n(2), borel_n(3)]
}

fn sym_block(k: usize) -> [(usize, usize); 2] {
    match k {
        0 => [(0, 0), (0, 0)],
        1 => [(0, 1), (1, 0)],
        _ => [(1, 1), (1, 1)],
    }
}

/// `[[0, S], [−S, 0]]` for the symmetric unit `S` number `k` (E11, E12+E21, E22).
fn k_sym(k: usize) -> LieElt {
    let mut e = Vec::new();
    let cells = sym_block(k);
    let distinct = cells[0] != cells[1];
    for (r, c) in cells.iter().take(if distinct { 2 } else { 1 }) {
        e.push((*r, c + 2, 1));
        e.push((r + 2, *c, -1));
    }
    LieElt::from_ints(&e)
}

/// Basis `(H, S11, S12, S22)` of k: `H` and the elements `[[0, S], [−S, 0]]`.
pub fn k_basis() -> Vec<LieElt> {
    vec![cartan_h(), k_sym(0), k_sym(1), k_sym(2)]
}

/// Basis of p: `[[A, B], [B, −A]]` with `A`, `B` running over symmetric units.
pub fn p_basis() -> Vec<LieElt> {
    let mut out = Vec::new();
    for upper in [false, true] {
        for k in 0..3 {
            let cells = sym_block(k);
            let distinct = cells[0] != cells[1];
            let mut e = Vec::new();
            for (r, c) in cells.iter().take(if distinct { 2 } else { 1 }) {
                if upper {
                    e.push((*r, c + 2, 1));
                    e.push((r + 2, *c, 1));
                } else {
                    e.push((*r, *c, 1));
                    e.push((r + 2, c + 2, -1));
                }
            }
            out.push(LieElt::from_ints(&e));
        }
    }
    out
}

/// Basis of k~ = k ⊕ z.
pub fn ktilde_basis() -> Vec<LieElt> {
    let mut v = k_basis();
    v.push(center());
    v
}

/// Pinned eigenvectors `E_α`, `E_{−α}` in k (before any Killing rescaling).
pub fn pinned_e_alpha(sign: i64) -> LieElt {
    let k = k_basis();
    let space = Subspace::new("k", k.clone()).expect("k basis");
    let t = Subspace::new("t", vec![cartan_h(), cartan_j()]).expect("t basis");
    let dec = root_decompose(&space, &t).expect("k is t-stable");
    let target = Weight::new(sign, 0);
    let v = &dec[&target].basis()[0];
    // normalize: first nonzero coordinate in (H, S11, S12, S22) equal to 1
    let coords = space.coords(v).expect("in k");
    let lead = coords.iter().find(|c| !c.is_zero()).expect("nonzero").clone();
    v.scale(&lead.inv().expect("nonzero"))
}

/// Every named element, keyed by a stable name.
pub fn named_elements() -> Vec<(&'static str, LieElt)> {
    vec![
        ("a", borel_a()),
        ("h", borel_h()),
        ("n0", borel_n(0)),
        ("n1", borel_n(1)),
        ("n2", borel_n(2)),
        ("n3", borel_n(3)),
        ("H", cartan_h()),
        ("J", cartan_j()),
        ("E_alpha", pinned_e_alpha(1)),
        ("E_-alpha", pinned_e_alpha(-1)),
        ("Z", center()),
    ]
}

/// The 11-element distinguished basis `b0 ∪ {H, J, E_α, E_{−α}} ∪ {Z}`.
pub fn distinguished_basis() -> Vec<LieElt> {
    named_elements().into_iter().map(|(_, x)| x).collect()
}

/// Literal weight of `x` under ad(t): `[H, x] = −2p·i·x`, `[J, x] = −2q·i·x`.
pub fn weight_of(x: &LieElt, cartan: &Subspace) -> Result<Option<Weight>> {
    if x.is_zero() {
        return Err(KernelError::ZeroElement);
    }
    let (h, j) = cartan_pair(cartan)?;
    let v = x.to_vec();
    let k = v.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut eig = Vec::new();
    for t in [&h, &j] {
        let b = bracket(t, x);
        let bv = b.to_vec();
        let lam = &bv[k] / &v[k];
        if bv.iter().zip(&v).any(|(p, q)| *p != &lam * q) {
            return Ok(None);
        }
        eig.push(lam);
    }
    Ok(Weight::from_eigenvalues(&eig[0], &eig[1]))
}

/// Checks that `cartan` spans ℂH ⊕ ℂJ and returns `(H, J)`.
fn cartan_pair(cartan: &Subspace) -> Result<(LieElt, LieElt)> {
    let (h, j) = (cartan_h(), cartan_j());
    if cartan.dim() != 2 || !cartan.contains(&h) || !cartan.contains(&j) {
        return Err(KernelError::Malformed(format!(
            "`{}` is not the Cartan subalgebra spanned by H, J",
            cartan.label()
        )));
    }
    Ok((h, j))
}

/// The standard Cartan subalgebra t.
pub fn cartan_t() -> Subspace {
    Subspace::new("t", vec![cartan_h(), cartan_j()]).expect("independent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_elements_are_members() {
        for (name, x) in named_elements() {
            let c = x.similitude_factor();
            if name == "Z" {
                assert_eq!(c, Scalar::from_int(2));
            } else {
                assert!(c.is_zero(), "{name}");
            }
        }
    }

    #[test]
    fn non_member_rejected() {
        let mut m = linalg::zeros::<Scalar>(4, 4);
        m[0][0] = Scalar::one();
        assert!(LieElt::new(m).is_err());
    }

    #[test]
    fn h_and_j_commute() {
        assert!(bracket(&cartan_h(), &cartan_j()).is_zero());
    }

    #[test]
    fn theta_examples() {
        assert_eq!(cartan_theta(&cartan_h()).unwrap(), cartan_h());
        assert_eq!(cartan_theta(&borel_a()).unwrap(), -&borel_a());
        let n3 = borel_n(3);
        assert_eq!(cartan_theta(&cartan_theta(&n3).unwrap()).unwrap(), n3);
        assert!(cartan_theta(&center()).is_err());
    }

    #[test]
    fn weight_of_cartan_is_zero() {
        assert_eq!(weight_of(&cartan_h(), &cartan_t()).unwrap(), Some(Weight::ZERO));
        assert!(weight_of(&LieElt::zero(), &cartan_t()).is_err());
    }

    #[test]
    fn pinned_alpha_vectors() {
        let t = cartan_t();
        assert_eq!(weight_of(&pinned_e_alpha(1), &t).unwrap(), Some(Weight::new(1, 0)));
        assert_eq!(weight_of(&pinned_e_alpha(-1), &t).unwrap(), Some(Weight::new(-1, 0)));
    }
}
