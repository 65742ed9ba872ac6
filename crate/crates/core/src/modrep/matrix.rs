//! Dense matrices over prime fields. Vectors are rows and matrices act on
//! the right: `v ↦ v·A`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[inline]
pub fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(q));
    pow_mod(a, q as u64 - 2, q)
}

#[inline]
pub fn pow_mod(a: u32, mut e: u64, q: u32) -> u32 {
    let q64 = q as u64;
    let mut b = a as u64 % q64;
    let mut acc = 1u64 % q64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q64;
        }
        b = b * b % q64;
        e >>= 1;
    }
    acc as u32
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Matrix {
    modulus: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[{}x{} mod {}]", self.rows, self.cols, self.modulus)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(modulus: u32, rows: usize, cols: usize) -> Self {
        Matrix {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: u32, n: usize) -> Self {
        let mut m = Matrix::zero(modulus, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1 % modulus;
        }
        m
    }

    pub fn from_rows(modulus: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::InvalidInput("ragged matrix rows".into()));
            }
            entries.extend(r.iter().map(|&x| x % modulus));
        }
        Ok(Matrix {
            modulus,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Square matrix from row-major entries.
    pub fn square(modulus: u32, n: usize, entries: Vec<u32>) -> Self {
        assert_eq!(entries.len(), n * n);
        Matrix {
            modulus,
            rows: n,
            cols: n,
            entries: entries.into_iter().map(|x| x % modulus).collect(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.entries[r * self.cols + c] = v % self.modulus;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.modulus, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not match");
        let q = self.modulus as u64;
        let mut out = vec![0u64; self.rows * other.cols];
        for i in 0..self.rows {
            let acc = &mut out[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.entries[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = other.row(k);
                for (o, &b) in acc.iter_mut().zip(row) {
                    *o = (*o + a * b as u64) % q;
                }
            }
        }
        Matrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: other.cols,
            entries: out.into_iter().map(|x| x as u32).collect(),
        }
    }

    /// `v·A`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let q = self.modulus as u64;
        let mut out = vec![0u64; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(k)) {
                *o = (*o + a as u64 * b as u64) % q;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let q = self.modulus;
        Matrix {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| (a + b) % q)
                .collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: u32) -> Matrix {
        let q = self.modulus as u64;
        Matrix {
            entries: self
                .entries
                .iter()
                .map(|&a| (a as u64 * c as u64 % q) as u32)
                .collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.modulus, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.entries[r * self.cols + c];
            }
        }
        t
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut acc = Matrix::identity(self.modulus, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let q = self.modulus as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.entries.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.modulus) as u64;
            for j in 0..m.cols {
                let v = m.entries[r * m.cols + j] as u64 * inv % q;
                m.entries[r * m.cols + j] = v as u32;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.entries[i * m.cols + j] as u64 + (q - f) * m.entries[r * m.cols + j] as u64) % q;
                    m.entries[i * m.cols + j] = v as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as rows) of `{x : A x = 0}`.
    pub fn right_nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let q = self.modulus;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zero(q, free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            basis.entries[k * self.cols + f] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                let v = r.get(i, f);
                basis.entries[k * self.cols + p] = (q - v) % q;
            }
        }
        basis
    }

    /// Basis (as rows) of `{v : v A = 0}`.
    pub fn left_nullspace(&self) -> Matrix {
        self.transpose().right_nullspace()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(self.modulus, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.entries[i * 2 * n + j] = self.get(i, j);
            }
            aug.entries[i * 2 * n + n + i] = 1 % self.modulus;
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zero(self.modulus, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.entries[i * n + j] = r.get(i, n + j);
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn det(&self) -> u32 {
        assert_eq!(self.rows, self.cols);
        let q = self.modulus as u64;
        let mut m = self.clone();
        let n = self.rows;
        let mut det = 1u64;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if p != c {
                for j in 0..n {
                    m.entries.swap(p * n + j, c * n + j);
                }
                det = (q - det) % q;
            }
            let piv = m.get(c, c) as u64;
            det = det * piv % q;
            let inv = inv_mod(piv as u32, self.modulus) as u64;
            for i in c + 1..n {
                let f = m.get(i, c) as u64 * inv % q;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let v = (m.entries[i * n + j] as u64 + (q - f) * m.entries[c * n + j] as u64) % q;
                    m.entries[i * n + j] = v as u32;
                }
            }
        }
        det as u32
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            modulus: self.modulus,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }
}

/// A subspace kept in semi-echelon form: each stored row has a pivot
/// column where it is 1 and every later row is 0.
#[derive(Clone, Debug)]
pub struct Echelon {
    modulus: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(modulus: u32, dim: usize) -> Self {
        Echelon {
            modulus,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after clearing all pivot columns.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let q = self.modulus as u64;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p] as u64;
            if f == 0 {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row) {
                *x = ((*x as u64 + (q - f) * r as u64) % q) as u32;
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[p], self.modulus) as u64;
        let q = self.modulus as u64;
        for x in w.iter_mut() {
            *x = (*x as u64 * inv % q) as u32;
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.modulus, self.rows.len(), self.dim);
        for (i, r) in self.rows.iter().enumerate() {
            m.entries[i * self.dim..(i + 1) * self.dim].copy_from_slice(r);
        }
        m
    }
}
