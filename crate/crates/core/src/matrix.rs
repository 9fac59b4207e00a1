//! Matrices over Q(ζ_N): dense matrices and monomial matrices whose nonzero
//! entries are roots of unity.

use std::fmt;

use crate::cyclo::{Cyc, Scalar};

/// Dense matrix over Q(ζ_N), row-major.
#[derive(Clone)]
pub struct CycMatrix<R> {
    n: u32,
    rows: usize,
    cols: usize,
    data: Vec<Cyc<R>>,
}

impl<R: Scalar> CycMatrix<R> {
    pub fn zeros(n: u32, rows: usize, cols: usize) -> Self {
        CycMatrix { n, rows, cols, data: vec![Cyc::zero(n); rows * cols] }
    }

    pub fn identity(n: u32, d: usize) -> Self {
        let mut m = Self::zeros(n, d, d);
        for i in 0..d {
            m.data[i * d + i] = Cyc::one(n);
        }
        m
    }

    pub fn from_fn(n: u32, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Cyc<R>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CycMatrix { n, rows, cols, data }
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc<R> {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyc<R>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Cyc<R>] {
        &self.data
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.n.max(o.n), self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.data[k * o.cols + j];
                    if !b.is_zero() {
                        out.data[i * o.cols + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        CycMatrix { n: self.n, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        CycMatrix { n: self.n, rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            *a += b;
        }
    }

    pub fn scale(&self, c: &Cyc<R>) -> Self {
        let data = self.data.iter().map(|a| a * c).collect();
        CycMatrix { n: self.n, rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> Cyc<R> {
        let mut t = Cyc::zero(self.n);
        for i in 0..self.rows.min(self.cols) {
            t += &self.data[i * self.cols + i];
        }
        t
    }

    /// Tr(self · o) without forming the product.
    pub fn trace_of_product(&self, o: &Self) -> Cyc<R> {
        let mut t = Cyc::zero(self.n);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                let b = &o.data[k * o.cols + i];
                if !a.is_zero() && !b.is_zero() {
                    t.add_mul(a, b);
                }
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self.data[i * self.cols + j];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// Scalar c when self = c·Id.
    pub fn as_scalar(&self) -> Option<Cyc<R>> {
        if self.rows != self.cols {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if (i == j && *x != c) || (i != j && !x.is_zero()) {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entry-wise complex conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    fn echelon(&self) -> (Vec<Vec<Cyc<R>>>, Vec<usize>) {
        let mut rows: Vec<Vec<Cyc<R>>> = (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, piv);
            let inv = rows[r][c].inv().expect("nonzero pivot");
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        if !y.is_zero() {
                            *x -= &(&f * y);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<Cyc<R>>> {
        let (rows, pivots) = self.echelon();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![Cyc::zero(self.n); self.cols];
            v[f] = Cyc::one(self.n);
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -&rows[r][f];
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let d = self.rows;
        let aug = Self::from_fn(self.n, d, 2 * d, |i, j| {
            if j < d {
                self.get(i, j).clone()
            } else if j - d == i {
                Cyc::one(self.n)
            } else {
                Cyc::zero(self.n)
            }
        });
        let (rows, pivots) = aug.echelon();
        if pivots.len() < d || pivots[d - 1] != d - 1 {
            return None;
        }
        Some(Self::from_fn(self.n, d, d, |i, j| rows[i][d + j].clone()))
    }
}

impl<R: Scalar> PartialEq for CycMatrix<R> {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl<R: Scalar + fmt::Display> fmt::Debug for CycMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Monomial matrix: column j has the single entry ζ_N^{exps[j]} in row perm[j].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoMat {
    pub n: u32,
    pub perm: Vec<u32>,
    pub exps: Vec<u32>,
}

impl MonoMat {
    pub fn identity(n: u32, d: usize) -> Self {
        MonoMat { n, perm: (0..d as u32).collect(), exps: vec![0; d] }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, o: &MonoMat) -> MonoMat {
        // (A B) e_j = A (ζ^{b_j} e_{σ(j)}) = ζ^{b_j + a_{σ(j)}} e_{π(σ(j))}
        let d = self.degree();
        let mut perm = vec![0; d];
        let mut exps = vec![0; d];
        for j in 0..d {
            let s = o.perm[j] as usize;
            perm[j] = self.perm[s];
            exps[j] = (o.exps[j] + self.exps[s]) % self.n;
        }
        MonoMat { n: self.n, perm, exps }
    }

    pub fn inverse(&self) -> MonoMat {
        let d = self.degree();
        let mut perm = vec![0; d];
        let mut exps = vec![0; d];
        for j in 0..d {
            let i = self.perm[j] as usize;
            perm[i] = j as u32;
            exps[i] = (self.n - self.exps[j]) % self.n;
        }
        MonoMat { n: self.n, perm, exps }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &i)| i as usize == j) && self.exps.iter().all(|&e| e == 0)
    }

    /// Trace as a formal sum of roots of unity: exponent → multiplicity.
    pub fn trace_exponents(&self) -> Vec<u32> {
        self.perm
            .iter()
            .enumerate()
            .filter(|(j, &i)| i as usize == *j)
            .map(|(j, _)| self.exps[j])
            .collect()
    }

    pub fn trace<R: Scalar>(&self) -> Cyc<R> {
        let mut counts = vec![0i64; self.n as usize];
        for e in self.trace_exponents() {
            counts[e as usize] += 1;
        }
        exponent_counts_to_cyc(self.n, &counts)
    }

    pub fn to_dense<R: Scalar>(&self) -> CycMatrix<R> {
        let d = self.degree();
        let mut m = CycMatrix::zeros(self.n, d, d);
        for j in 0..d {
            m.set(self.perm[j] as usize, j, Cyc::root(self.n, self.exps[j] as i64).unwrap());
        }
        m
    }

    /// self · B.
    pub fn mul_dense<R: Scalar>(&self, b: &CycMatrix<R>) -> CycMatrix<R> {
        let d = self.degree();
        let mut out = CycMatrix::zeros(b.modulus(), d, b.cols());
        for j in 0..d {
            let i = self.perm[j] as usize;
            for c in 0..b.cols() {
                let x = b.get(j, c);
                if !x.is_zero() {
                    out.set(i, c, x.mul_root(self.exps[j] as i64 * (b.modulus() / self.n) as i64));
                }
            }
        }
        out
    }

    /// B · self.
    pub fn dense_mul<R: Scalar>(&self, b: &CycMatrix<R>) -> CycMatrix<R> {
        let d = self.degree();
        let mut out = CycMatrix::zeros(b.modulus(), b.rows(), d);
        for j in 0..d {
            let i = self.perm[j] as usize;
            for r in 0..b.rows() {
                let x = b.get(r, i);
                if !x.is_zero() {
                    out.set(r, j, x.mul_root(self.exps[j] as i64 * (b.modulus() / self.n) as i64));
                }
            }
        }
        out
    }
}

/// Σ_e counts[e] ζ_N^e.
pub fn exponent_counts_to_cyc<R: Scalar>(n: u32, counts: &[i64]) -> Cyc<R> {
    let mut acc = Cyc::zero(n);
    for (e, &c) in counts.iter().enumerate() {
        if c != 0 {
            acc += &Cyc::root(n, e as i64).unwrap().scale(&R::from_i64(c).unwrap());
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{CycMat, CycNum};

    #[test]
    fn inverse_and_rank() {
        let z = CycNum::root(3, 1).unwrap();
        let m = CycMat::from_fn(3, 2, 2, |i, j| match (i, j) {
            (0, 0) => CycNum::one(3),
            (0, 1) => z.clone(),
            (1, 0) => z.conj(),
            _ => CycNum::from_int(3, 2),
        });
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.rank(), 2);
        let sing = CycMat::from_fn(3, 2, 2, |_, j| if j == 0 { z.clone() } else { z.clone() });
        assert_eq!(sing.rank(), 1);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.kernel().len(), 1);
    }

    #[test]
    fn monomial_products_match_dense() {
        let a = MonoMat { n: 4, perm: vec![1, 2, 0], exps: vec![1, 0, 3] };
        let b = MonoMat { n: 4, perm: vec![2, 0, 1], exps: vec![2, 2, 1] };
        let da: CycMat = a.to_dense();
        let db: CycMat = b.to_dense();
        assert!(a.mul(&b).to_dense::<num_rational::BigRational>() == da.mul(&db));
        assert!(a.mul(&a.inverse()).is_identity());
        assert!(a.mul_dense(&db) == da.mul(&db));
        assert!(a.dense_mul(&db) == db.mul(&da));
        assert_eq!(a.trace::<num_rational::BigRational>(), da.trace());
        assert_eq!(da.trace_of_product(&db), da.mul(&db).trace());
    }
}
