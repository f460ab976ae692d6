//! Exact linear algebra over Q and Q(i): dense matrices, nullspaces and an
//! incremental sparse span solver.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::trigring::{GaussRational, Q};

pub type QMat = Vec<Vec<Q>>;
pub type GMat = Vec<Vec<GaussRational>>;

pub fn q_zeros(r: usize, c: usize) -> QMat {
    vec![vec![Q::zero(); c]; r]
}

pub fn q_identity(k: usize) -> QMat {
    let mut m = q_zeros(k, k);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn q_mul(a: &QMat, b: &QMat) -> QMat {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, |x| x.len()));
    let mut out = q_zeros(r, c);
    for i in 0..r {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..c {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn q_transpose(a: &QMat) -> QMat {
    let c = a.first().map_or(0, |x| x.len());
    (0..c).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn q_add(a: &QMat, b: &QMat) -> QMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

pub fn q_sub(a: &QMat, b: &QMat) -> QMat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

pub fn q_scale(a: &QMat, s: &Q) -> QMat {
    a.iter().map(|x| x.iter().map(|p| p * s).collect()).collect()
}

pub fn q_is_zero(a: &QMat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

/// Generic field operations needed by the row reduction.
pub trait Field: Clone + PartialEq {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn inv(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Q {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for GaussRational {
    fn fzero() -> Self {
        GaussRational::zero()
    }
    fn fone() -> Self {
        GaussRational::one()
    }
    fn fis_zero(&self) -> bool {
        GaussRational::is_zero(self)
    }
    fn inv(&self) -> Self {
        GaussRational::inv(self).expect("inverse of zero")
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].fis_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r != row && !other[col].fis_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    if !y.fis_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of {x : M x = 0}.
pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut a: Vec<Vec<F>> = m.to_vec();
    let pivots = rref(&mut a, ncols);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![F::fzero(); ncols];
            v[f] = F::fone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a[r][f].neg();
            }
            v
        })
        .collect()
}

pub fn q_nullspace(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    nullspace(m, ncols)
}

pub fn g_nullspace(m: &[Vec<GaussRational>], ncols: usize) -> Vec<Vec<GaussRational>> {
    nullspace(m, ncols)
}

pub fn rank<F: Field>(m: &[Vec<F>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(&mut a, ncols).len()
}

/// Sparse vector keyed by an ordered key.
pub type SparseVec<K> = BTreeMap<K, GaussRational>;

struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    combo: Vec<GaussRational>,
}

/// Incremental echelon form of a family of sparse vectors, with the combination
/// of original generators that produced each row.
pub struct SpanSolver<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    size: usize,
}

fn axpy<K: Ord + Clone>(v: &mut SparseVec<K>, c: &GaussRational, w: &SparseVec<K>) {
    for (k, x) in w {
        let add = c * x;
        let e = v.entry(k.clone()).or_insert_with(GaussRational::zero);
        *e += &add;
        if e.is_zero() {
            v.remove(k);
        }
    }
}

impl<K: Ord + Clone> Default for SpanSolver<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new() -> Self {
        SpanSolver { rows: Vec::new(), size: 0 }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    fn reduce(&self, v: &mut SparseVec<K>, combo: &mut [GaussRational]) {
        for row in &self.rows {
            if let Some(c) = v.get(&row.pivot).cloned() {
                let f = -&c;
                axpy(v, &f, &row.vec);
                for (a, b) in combo.iter_mut().zip(&row.combo) {
                    if !b.is_zero() {
                        *a += &(&f * b);
                    }
                }
            }
        }
    }

    pub fn push(&mut self, v: SparseVec<K>) -> Result<()> {
        let idx = self.size;
        self.size += 1;
        for row in &mut self.rows {
            row.combo.push(GaussRational::zero());
        }
        let mut combo = vec![GaussRational::zero(); self.size];
        combo[idx] = GaussRational::one();
        let mut v = v;
        self.reduce(&mut v, &mut combo);
        let Some((pivot, lead)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            self.size -= 1;
            for row in &mut self.rows {
                row.combo.pop();
            }
            return Err(Error::DependentBasis);
        };
        let inv = lead.inv().unwrap();
        for x in v.values_mut() {
            *x = &*x * &inv;
        }
        for x in combo.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push(Row { pivot, vec: v, combo });
        Ok(())
    }

    /// Coefficients c with sum c_j generator_j = v.
    pub fn solve(&self, v: &SparseVec<K>) -> Result<Vec<GaussRational>> {
        let mut w = v.clone();
        let mut acc = vec![GaussRational::zero(); self.size];
        for row in &self.rows {
            if let Some(c) = w.get(&row.pivot).cloned() {
                let f = -&c;
                axpy(&mut w, &f, &row.vec);
                for (a, b) in acc.iter_mut().zip(&row.combo) {
                    if !b.is_zero() {
                        *a += &(&c * b);
                    }
                }
            }
        }
        if !w.is_empty() {
            return Err(Error::NotInSpan);
        }
        Ok(acc)
    }
}
