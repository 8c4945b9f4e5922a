//! Finite-dimensional k-modules: highest weights, characters and their
//! greedy decomposition, and highest-weight vectors.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{KernelError, Result};
use crate::exactnum::Scalar;
use crate::gsp4::{self, joint_weight_spaces, LieElt, Subspace, Weight};
use crate::linalg::{self, Matrix};

/// Highest weights of k-types: `p ∈ ½ℤ≥0`, `q ∈ ½ℤ`.
pub fn is_valid_highest_weight(w: Weight) -> bool {
    w.p2 >= 0
}

/// Weight multiset of a finite-dimensional k-module.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Character {
    weights: BTreeMap<Weight, u32>,
}

impl Character {
    pub fn from_weights<I: IntoIterator<Item = Weight>>(ws: I) -> Self {
        let mut c = Character::default();
        for w in ws {
            *c.weights.entry(w).or_insert(0) += 1;
        }
        c
    }

    pub fn dim(&self) -> u32 {
        self.weights.values().sum()
    }

    pub fn multiplicity_of_weight(&self, w: Weight) -> u32 {
        self.weights.get(&w).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> &BTreeMap<Weight, u32> {
        &self.weights
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn add(&self, o: &Character) -> Character {
        let mut c = self.clone();
        for (w, m) in &o.weights {
            *c.weights.entry(*w).or_insert(0) += m;
        }
        c
    }

    /// `self − o`, or `None` if some multiplicity would go negative.
    pub fn checked_sub(&self, o: &Character) -> Option<Character> {
        let mut c = self.clone();
        for (w, m) in &o.weights {
            let e = c.weights.get_mut(w)?;
            if *e < *m {
                return None;
            }
            *e -= m;
            if *e == 0 {
                c.weights.remove(w);
            }
        }
        Some(c)
    }
}

/// Character of the irreducible k-type with highest weight `hw`.
pub fn irr_character(hw: Weight) -> Result<Character> {
    if !is_valid_highest_weight(hw) {
        return Err(KernelError::InvalidHighestWeight(hw.to_string()));
    }
    Ok(Character::from_weights(
        (0..=hw.p2).map(|k| Weight::halves(-hw.p2 + 2 * k, hw.q2)),
    ))
}

/// Greedy peel by lexicographically maximal valid highest weight.
pub fn decompose_character(ch: &Character) -> Result<Vec<Weight>> {
    let mut rest = ch.clone();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let top = rest
            .weights
            .keys()
            .rev()
            .copied()
            .find(|w| is_valid_highest_weight(*w))
            .ok_or_else(|| KernelError::NotAModule("no valid highest weight left".into()))?;
        let irr = irr_character(top)?;
        rest = rest
            .checked_sub(&irr)
            .ok_or_else(|| KernelError::NotAModule(format!("peeling {top} goes negative")))?;
        out.push(top);
    }
    Ok(out)
}

/// Number of times `hw` occurs in the decomposition of `ch`.
pub fn multiplicity(ch: &Character, hw: Weight) -> Result<usize> {
    Ok(decompose_character(ch)?.into_iter().filter(|w| *w == hw).count())
}

/// Index of the action matrices in a [`KModule`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KGen {
    H = 0,
    J = 1,
    EAlpha = 2,
    ENegAlpha = 3,
}

/// Finite-dimensional k-module given by the matrices of four elements of k
/// spanning it (by default `H, J, E_α, E_{−α}`).
#[derive(Clone, Debug)]
pub struct KModule {
    labels: Vec<String>,
    elements: Vec<LieElt>,
    action: Vec<Matrix<Scalar>>,
}

/// The default generators `H, J, E_α, E_{−α}` with the pinned root vectors.
pub fn default_generators() -> Vec<LieElt> {
    vec![
        gsp4::cartan_h(),
        gsp4::cartan_j(),
        gsp4::pinned_e_alpha(1),
        gsp4::pinned_e_alpha(-1),
    ]
}

impl KModule {
    /// Checks the representation property `ρ([X, Y]) = [ρX, ρY]` on all pairs
    /// of generators, and diagonalizability of `H`, `J`.
    pub fn new(labels: Vec<String>, elements: Vec<LieElt>, action: Vec<Matrix<Scalar>>) -> Result<Self> {
        let n = labels.len();
        if elements.len() != 4 || action.len() != 4 {
            return Err(KernelError::BadModule("need four generators".into()));
        }
        if action.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(KernelError::BadModule("action matrix has the wrong size".into()));
        }
        let span = Subspace::new("k", elements.clone())
            .map_err(|_| KernelError::BadModule("generators are dependent".into()))?;
        for a in 0..4 {
            for b in a + 1..4 {
                let br = gsp4::bracket(&elements[a], &elements[b]);
                let coords = span.coords(&br).ok_or_else(|| {
                    KernelError::BadModule("generators do not span a subalgebra".into())
                })?;
                let mut want: Matrix<Scalar> = linalg::zeros(n, n);
                for (c, m) in coords.iter().zip(&action) {
                    if c.is_zero() {
                        continue;
                    }
                    for (wr, mr) in want.iter_mut().zip(m) {
                        for (w, x) in wr.iter_mut().zip(mr) {
                            *w += &(c * x);
                        }
                    }
                }
                let got = linalg::mat_sub(
                    &linalg::mat_mul(&action[a], &action[b]),
                    &linalg::mat_mul(&action[b], &action[a]),
                );
                if got != want {
                    return Err(KernelError::BadModule(format!(
                        "bracket of generators {a} and {b} is not represented"
                    )));
                }
            }
        }
        let m = KModule { labels, elements, action };
        m.weight_spaces()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> &[LieElt] {
        &self.elements
    }

    pub fn matrix(&self, g: KGen) -> &Matrix<Scalar> {
        &self.action[g as usize]
    }

    pub fn weight_spaces(&self) -> Result<Vec<(Weight, Vec<Vec<Scalar>>)>> {
        joint_weight_spaces(self.matrix(KGen::H), self.matrix(KGen::J))
    }

    pub fn character(&self) -> Result<Character> {
        let mut c = Character::default();
        for (w, vs) in self.weight_spaces()? {
            c.weights.insert(w, vs.len() as u32);
        }
        Ok(c)
    }

    /// Basis of `{v of weight hw : E_α v = 0}`.
    pub fn highest_weight_vectors(&self, hw: Weight) -> Result<Vec<Vec<Scalar>>> {
        let Some((_, space)) = self.weight_spaces()?.into_iter().find(|(w, _)| *w == hw) else {
            return Ok(Vec::new());
        };
        let images: Vec<Vec<Scalar>> =
            space.iter().map(|v| linalg::mat_vec(self.matrix(KGen::EAlpha), v)).collect();
        let kernel = linalg::nullspace(&linalg::transpose(&images));
        Ok(kernel
            .into_iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); self.dim()];
                for (k, x) in c.iter().enumerate() {
                    for (t, y) in v.iter_mut().zip(&space[k]) {
                        *t += &(x * y);
                    }
                }
                v
            })
            .collect())
    }

    pub fn act(&self, g: KGen, v: &[Scalar]) -> Vec<Scalar> {
        linalg::mat_vec(self.matrix(g), v)
    }
}

/// Scalar `c` with `H_α = [E_α, E_{−α}] = c·H` (plus a `J` part, which must vanish).
pub fn coroot_coefficient(e_alpha: &LieElt, e_neg: &LieElt) -> Result<Scalar> {
    let ha = gsp4::bracket(e_alpha, e_neg);
    let coords = gsp4::cartan_t()
        .coords(&ha)
        .ok_or_else(|| KernelError::BadModule("[E_α, E_−α] is not in t".into()))?;
    if !coords[1].is_zero() {
        return Err(KernelError::BadModule("[E_α, E_−α] has a J component".into()));
    }
    Ok(coords[0].clone())
}

/// Irreducible module of highest weight `hw` with basis `v_m` (weight `m·α + q·β`),
/// `E_{−α} v_m = v_{m−1}` and `E_α v_m = x_m v_{m+1}` forced by the bracket relations.
pub fn irr_module(hw: Weight, e_alpha: &LieElt, e_neg: &LieElt) -> Result<KModule> {
    if !is_valid_highest_weight(hw) {
        return Err(KernelError::InvalidHighestWeight(hw.to_string()));
    }
    let c = coroot_coefficient(e_alpha, e_neg)?;
    let n = (hw.p2 + 1) as usize;
    // index k ↔ m = −p + k, doubled: m2 = −p2 + 2k
    let m2 = |k: usize| -hw.p2 + 2 * k as i64;
    let mut h = linalg::zeros(n, n);
    let mut j = linalg::zeros(n, n);
    let mut ep = linalg::zeros(n, n);
    let mut em = linalg::zeros(n, n);
    for k in 0..n {
        h[k][k] = Scalar::gauss(0, -m2(k));
        j[k][k] = Scalar::gauss(0, -hw.q2);
        if k > 0 {
            em[k - 1][k] = Scalar::one();
        }
    }
    // x_{m-1} − x_m = eigenvalue of H_α on v_m = c·(−2m·i), with x_top = 0
    let mut x = vec![Scalar::zero(); n];
    for k in (0..n.saturating_sub(1)).rev() {
        let hv = &c * &Scalar::gauss(0, -m2(k + 1));
        x[k] = &x[k + 1] + &hv;
    }
    for k in 0..n.saturating_sub(1) {
        ep[k + 1][k] = x[k].clone();
    }
    let labels = (0..n)
        .map(|k| {
            let m = m2(k);
            if m % 2 == 0 { format!("v{}", m / 2) } else { format!("v{}/2", m) }
        })
        .collect();
    KModule::new(labels, vec![gsp4::cartan_h(), gsp4::cartan_j(), e_alpha.clone(), e_neg.clone()], vec![h, j, ep, em])
}

/// The spin-2 type with highest weight `2α`, basis `v_{−2}, …, v_2`.
pub fn spin2_module(e_alpha: &LieElt, e_neg: &LieElt) -> Result<KModule> {
    irr_module(Weight::new(2, 0), e_alpha, e_neg)
}
