use std::collections::BTreeMap;

use super::{bracket, cartan_pair, joint_weight_spaces, LieElt, Weight};
use crate::error::{KernelError, Result};
use crate::exactnum::Scalar;
use crate::linalg::{self, Matrix};

/// Named span of linearly independent elements.
#[derive(Clone, Debug)]
pub struct Subspace {
    label: String,
    basis: Vec<LieElt>,
    columns: Matrix<Scalar>,
}

impl Subspace {
    pub fn new(label: &str, basis: Vec<LieElt>) -> Result<Self> {
        let columns = linalg::transpose(&basis.iter().map(|b| b.to_vec()).collect::<Vec<_>>());
        let columns = if basis.is_empty() { vec![Vec::new(); 16] } else { columns };
        if !basis.is_empty() && linalg::rank(&columns) != basis.len() {
            return Err(KernelError::Dependent(label.to_string()));
        }
        Ok(Subspace { label: label.to_string(), basis, columns })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn basis(&self) -> &[LieElt] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `x` in the basis, or `None` if outside the span.
    pub fn coords(&self, x: &LieElt) -> Option<Vec<Scalar>> {
        if self.basis.is_empty() {
            return if x.is_zero() { Some(Vec::new()) } else { None };
        }
        linalg::solve(&self.columns, &x.to_vec())
    }

    pub fn contains(&self, x: &LieElt) -> bool {
        self.coords(x).is_some()
    }

    /// Element with the given coordinates.
    pub fn element(&self, coords: &[Scalar]) -> LieElt {
        let terms: Vec<(Scalar, &LieElt)> = coords.iter().cloned().zip(&self.basis).collect();
        LieElt::combination(&terms)
    }

    /// Matrix of `ad x` restricted to this subspace (columns are images).
    pub fn ad_matrix(&self, x: &LieElt) -> Result<Matrix<Scalar>> {
        let n = self.dim();
        let mut m = linalg::zeros(n, n);
        for (c, b) in self.basis.iter().enumerate() {
            let img = bracket(x, b);
            let coords = self.coords(&img).ok_or_else(|| {
                KernelError::NotStable(format!("[{x}, {b}] = {img} leaves `{}`", self.label))
            })?;
            for (r, v) in coords.into_iter().enumerate() {
                m[r][c] = v;
            }
        }
        Ok(m)
    }

    /// Span of this subspace and `other`.
    pub fn sum(&self, label: &str, other: &Subspace) -> Result<Subspace> {
        let mut b = self.basis.clone();
        b.extend(other.basis.iter().cloned());
        Subspace::new(label, b)
    }
}

/// Simultaneous eigenspaces of ad(H), ad(J) on an ad(t)-stable subspace.
pub fn root_decompose(space: &Subspace, cartan: &Subspace) -> Result<BTreeMap<Weight, Subspace>> {
    let (h, j) = cartan_pair(cartan)?;
    let mh = space.ad_matrix(&h)?;
    let mj = space.ad_matrix(&j)?;
    let mut out = BTreeMap::new();
    for (w, vecs) in joint_weight_spaces(&mh, &mj)? {
        let basis: Vec<LieElt> = vecs.iter().map(|v| space.element(v)).collect();
        let label = format!("{}_{}", space.label(), w);
        out.insert(w, Subspace::new(&label, basis)?);
    }
    Ok(out)
}

/// True iff the bracket of every pair of basis elements stays in the span.
pub fn subalgebra_closed(space: &Subspace) -> bool {
    let b = space.basis();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            if !space.contains(&bracket(&b[i], &b[j])) {
                return false;
            }
        }
    }
    true
}
