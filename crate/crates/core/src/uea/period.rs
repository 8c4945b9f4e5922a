use std::collections::HashMap;

use serde::Serialize;

use super::g0::{casimir, casimir_shape, g0, CasimirShape, G0, E_A, E_B, E_NA, E_NB, H_PART, NAMES};
use super::UeaElt;
use crate::error::{KernelError, Result};
use crate::exactnum::{Poly, Ring, Scalar};
use crate::gsp4::{Subspace, Weight};
use crate::ktypes::{spin2_module, KGen, KModule};
use crate::linalg::{self, Matrix};

/// The spin-2 k-type `v_{−2}, …, v_2` built on the Killing-normalized `E_{±α}`,
/// with the action of every letter of g0 that lies in k.
#[derive(Clone, Debug)]
pub struct Spin2 {
    pub module: KModule,
    letters: Vec<Option<Matrix<Scalar>>>,
}

impl Spin2 {
    /// Action of letter `l`, if `l ∈ k`.
    pub fn letter(&self, l: usize) -> Option<&Matrix<Scalar>> {
        self.letters[l].as_ref()
    }
}

pub fn spin2(g: &G0) -> Result<Spin2> {
    let module = spin2_module(&g.elements[E_A], &g.elements[E_NA])?;
    let k = Subspace::new("k", module.elements().to_vec())?;
    let gens = [KGen::H, KGen::J, KGen::EAlpha, KGen::ENegAlpha];
    let letters = g
        .elements
        .iter()
        .map(|x| {
            let c = k.coords(x)?;
            let mut m = linalg::zeros(5, 5);
            for (ci, gen) in c.iter().zip(gens) {
                if ci.is_zero() {
                    continue;
                }
                let a = module.matrix(gen);
                for r in 0..5 {
                    for s in 0..5 {
                        m[r][s] += &(ci * &a[r][s]);
                    }
                }
            }
            Some(m)
        })
        .collect();
    Ok(Spin2 { module, letters })
}

/// `μ_j` with `E_α^j E_{−α}^j v_0 = μ_j v_0`, for `j = 0..=max_j`.
pub fn mu_table(max_j: usize) -> Result<Vec<Scalar>> {
    let s = spin2(g0())?;
    let (ep, em) = (s.module.matrix(KGen::EAlpha), s.module.matrix(KGen::ENegAlpha));
    (0..=max_j)
        .map(|j| {
            let mut v = vec![Scalar::zero(); 5];
            v[2] = Scalar::one();
            for _ in 0..j {
                v = linalg::mat_vec(em, &v);
            }
            for _ in 0..j {
                v = linalg::mat_vec(ep, &v);
            }
            if v.iter().enumerate().any(|(k, x)| k != 2 && !x.is_zero()) {
                return Err(KernelError::BadModule(format!("E_a^{j} E_-a^{j} v0 is not a multiple of v0")));
            }
            Ok(v[2].clone())
        })
        .collect()
}

/// How `ℓ(R φ_0)` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    /// PBW normal form in the order `h, E_β, E_{−β}, E_α, E_{−α}`, and the
    /// recursion for `C_i = ℓ(E_β^i E_{−β}^i φ_0)`.
    Pbw,
    /// Word rewriting in the order `h, E_{−β}, E_β, k`, with `k` acting on the
    /// spin-2 vector from the right and the Casimir inserted in place.
    Rewrite,
}

fn lambda() -> Poly {
    Poly::var("lambda")
}

/// Evaluation state for `ℓ`: spin-2 data, the Casimir, and both memo tables.
pub struct PeriodState {
    g: &'static G0,
    spin: Spin2,
    mu: Vec<Scalar>,
    c: Vec<Poly>,
    /// `E_β E_{−β} = (Ω − Σ rest) / pair`.
    omega_rest: Vec<(Vec<usize>, Scalar)>,
    omega_pair: Scalar,
    memo: HashMap<(Vec<usize>, i64), Poly>,
}

impl PeriodState {
    pub fn new() -> Result<Self> {
        let g = g0();
        let omega = casimir(g)?;
        let mut omega_rest = Vec::new();
        let mut omega_pair = Scalar::zero();
        for (m, c) in omega.terms() {
            let c = c.as_constant().ok_or_else(|| KernelError::Malformed("Casimir has symbolic coefficients".into()))?;
            if m.to_word() == [E_B, E_NB] {
                omega_pair = c;
            } else {
                omega_rest.push((m.to_word(), c));
            }
        }
        if omega_pair.is_zero() {
            return Err(KernelError::Degenerate);
        }
        Ok(PeriodState {
            g,
            spin: spin2(g)?,
            mu: mu_table(2)?,
            c: vec![Poly::one()],
            omega_rest,
            omega_pair,
            memo: HashMap::new(),
        })
    }

    pub fn g0(&self) -> &'static G0 {
        self.g
    }

    fn mu(&self, j: u32) -> Scalar {
        self.mu.get(j as usize).cloned().unwrap_or_else(Scalar::zero)
    }

    fn word_weight(&self, w: &[usize]) -> Weight {
        w.iter().fold(Weight::ZERO, |acc, &l| acc + self.g.weight(l))
    }

    /// `ℓ` on a PBW normal form.
    fn eval_pbw(&mut self, r: &UeaElt) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in r.terms() {
            let e = m.exponents();
            if H_PART.clone().any(|i| e[i] > 0) || self.word_weight(&m.to_word()) != Weight::ZERO {
                continue;
            }
            let (i, j) = (e[E_B], e[E_A]);
            let term = self.c_pbw(i as usize).scale(&self.mu(j));
            out = &out + &(&term * c);
        }
        out
    }

    /// `C_i` by the recursion
    /// `C_i = (λ − i(i−1)/2 · β(H_β)) C_{i−1} − ℓ(E_α E_{−α} E_β^{i−1} E_{−β}^{i−1} φ_0)`.
    pub fn c_pbw(&mut self, i: usize) -> Poly {
        while self.c.len() <= i {
            let n = self.c.len();
            let mut w = vec![E_A, E_NA];
            w.extend(vec![E_B; n - 1]);
            w.extend(vec![E_NB; n - 1]);
            let tail = self.g.uea.word(&w);
            let tri = Scalar::from_int((n * (n - 1) / 2) as i64);
            let shift = &lambda() - &Poly::constant(&tri * &self.g.beta_h_beta);
            let lead = &shift * &self.c[n - 1];
            let next = &lead - &self.eval_pbw(&tail);
            self.c.push(next);
        }
        self.c[i].clone()
    }

    fn rank(l: usize) -> usize {
        match l {
            E_B => E_NB,
            E_NB => E_B,
            _ => l,
        }
    }

    /// `ℓ(w · v_j)` by word rewriting.
    pub fn ell_word(&mut self, w: &[usize], j: i64) -> Poly {
        let key = (w.to_vec(), j);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let out = self.ell_uncached(w, j);
        self.memo.insert(key, out.clone());
        out
    }

    fn ell_uncached(&mut self, w: &[usize], j: i64) -> Poly {
        if self.word_weight(w) + Weight::new(j, 0) != Weight::ZERO {
            return Poly::zero();
        }
        let Some((&last, rest)) = w.split_last() else { return Poly::one() };
        if H_PART.contains(&w[0]) {
            return Poly::zero();
        }
        if let Some(mat) = self.spin.letter(last).cloned() {
            let col = (j + 2) as usize;
            let mut out = Poly::zero();
            for (r, row) in mat.iter().enumerate() {
                if !row[col].is_zero() {
                    out = &out + &self.ell_word(rest, r as i64 - 2).scale(&row[col]);
                }
            }
            return out;
        }
        if let Some(k) = (0..w.len() - 1).find(|&k| Self::rank(w[k]) > Self::rank(w[k + 1])) {
            let mut swapped = w.to_vec();
            swapped.swap(k, k + 1);
            let mut out = self.ell_word(&swapped, j);
            for (l, c) in self.g.uea.table().bracket(w[k], w[k + 1]).to_vec() {
                let mut nw = w[..k].to_vec();
                nw.push(l);
                nw.extend_from_slice(&w[k + 2..]);
                out = &out + &(&self.ell_word(&nw, j) * &c);
            }
            return out;
        }
        // ordered: E_{−β}^a E_β^a; rewrite the middle E_{−β}E_β through Ω
        let k = w.iter().position(|&l| l == E_B).expect("ordered weight-zero word") - 1;
        let (y1, y2) = (&w[..k], &w[k + 2..]);
        let join = |mid: &[usize]| [y1, mid, y2].concat();
        let mut pair = &lambda() * &self.ell_word(&join(&[]), j);
        for (m, c) in self.omega_rest.clone() {
            pair = &pair - &self.ell_word(&join(&m), j).scale(&c);
        }
        let pair = pair.scale(&self.omega_pair.inv().expect("nonzero"));
        // E_{−β}E_β = E_βE_{−β} − H_β
        &pair - &self.ell_word(&join(&[super::g0::H_B]), j)
    }

    pub fn reduce(&mut self, r: &UeaElt, strategy: Strategy) -> Poly {
        match strategy {
            Strategy::Pbw => self.eval_pbw(r),
            Strategy::Rewrite => {
                let mut out = Poly::zero();
                for (m, c) in r.terms() {
                    out = &out + &(&self.ell_word(&m.to_word(), 0) * c);
                }
                out
            }
        }
    }

    /// `ℓ(w φ_0)` for an arbitrary word; the PBW route normal-orders first.
    pub fn reduce_word(&mut self, w: &[usize], strategy: Strategy) -> Poly {
        match strategy {
            Strategy::Pbw => {
                let r = self.g.uea.word(w);
                self.eval_pbw(&r)
            }
            Strategy::Rewrite => self.ell_word(w, 0),
        }
    }

    /// `C_i` by either strategy.
    pub fn c(&mut self, i: usize, strategy: Strategy) -> Poly {
        match strategy {
            Strategy::Pbw => self.c_pbw(i),
            Strategy::Rewrite => {
                let mut w = vec![E_B; i];
                w.extend(vec![E_NB; i]);
                self.ell_word(&w, 0)
            }
        }
    }
}

/// `ℓ(R φ_0)` as a polynomial in `lambda`.
pub fn period_reduce(r: &UeaElt, strategy: Strategy) -> Result<Poly> {
    Ok(PeriodState::new()?.reduce(r, strategy))
}

/// `C_i = ℓ(E_β^i E_{−β}^i φ_0)`.
pub fn c_i(i: usize, strategy: Strategy) -> Result<Poly> {
    Ok(PeriodState::new()?.c(i, strategy))
}

/// Serialized enveloping-algebra data.
#[derive(Clone, Debug, Serialize)]
pub struct UeaDump {
    pub basis: Vec<String>,
    pub elements: Vec<String>,
    pub alpha_h_alpha: Scalar,
    pub beta_h_beta: Scalar,
    pub killing_gram: Vec<Vec<Scalar>>,
    pub casimir: Vec<(String, String)>,
    pub casimir_shape: CasimirShape,
    pub mu: Vec<Scalar>,
    pub c: Vec<String>,
}

/// Casimir, `μ_j` and `C_i` for `i ≤ max_i`.
pub fn uea_dump(max_i: usize) -> Result<UeaDump> {
    let g = g0();
    let omega = casimir(g)?;
    let mut st = PeriodState::new()?;
    Ok(UeaDump {
        basis: NAMES.iter().map(|s| s.to_string()).collect(),
        elements: g.elements.iter().map(|x| x.to_string()).collect(),
        alpha_h_alpha: g.alpha_h_alpha.clone(),
        beta_h_beta: g.beta_h_beta.clone(),
        killing_gram: g.gram()?,
        casimir: g.uea.render_terms(&omega),
        casimir_shape: casimir_shape(g, &omega),
        mu: mu_table(2)?,
        c: (0..=max_i).map(|i| st.c_pbw(i).to_string()).collect(),
    })
}
