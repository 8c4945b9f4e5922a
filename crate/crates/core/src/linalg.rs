//! Dense exact linear algebra over any [`Field`].

use crate::exactnum::{Field, Ring};

pub type Matrix<F> = Vec<Vec<F>>;

pub fn zeros<F: Ring>(rows: usize, cols: usize) -> Matrix<F> {
    vec![vec![F::zero(); cols]; rows]
}

pub fn identity<F: Ring>(n: usize) -> Matrix<F> {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = F::one();
    }
    m
}

pub fn transpose<F: Ring>(m: &Matrix<F>) -> Matrix<F> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul<F: Ring>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .filter(|(x, y)| !x.is_zero() && !y[j].is_zero())
                        .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y[j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Ring>(a: &Matrix<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

pub fn mat_sub<F: Ring>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() - y.clone()).collect())
        .collect()
}

pub fn is_zero_matrix<F: Ring>(m: &Matrix<F>) -> bool {
    m.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Reduced row echelon form and the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].pivot_cost());
        let Some(p) = best else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (a, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, or `None` when inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let aug: Matrix<F> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let (a, pivots) = rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.len();
    let aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let (a, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Left inverse of a full-column-rank matrix (`L m = I`).
pub fn left_inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (_, pivot_rows) = rref(&transpose(m));
    if pivot_rows.len() < cols {
        return None;
    }
    let square: Matrix<F> = pivot_rows.iter().map(|&r| m[r].clone()).collect();
    let inv = inverse(&square)?;
    let mut out = zeros(cols, m.len());
    for (i, row) in inv.iter().enumerate() {
        for (k, &r) in pivot_rows.iter().enumerate() {
            out[i][r] = row[k].clone();
        }
    }
    Some(out)
}
