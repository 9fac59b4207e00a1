//! Small dense matrices over a finite field.

use crate::ff::{FFElem, FField};

/// Row-major matrix over the field passed to each operation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FMat {
    pub rows: usize,
    pub cols: usize,
    pub e: Vec<FFElem>,
}

impl FMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMat { rows, cols, e: vec![FFElem(0); rows * cols] }
    }

    pub fn identity(f: &FField, n: usize) -> Self {
        Self::scalar(f, n, f.one())
    }

    pub fn scalar(_f: &FField, n: usize, c: FFElem) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_columns(cols: &[Vec<FFElem>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> FFElem {
        self.e[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FFElem) {
        self.e[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<FFElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, f: &FField, o: &FMat) -> FMat {
        assert_eq!(self.cols, o.rows);
        let mut out = FMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.0 == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.0 != 0 {
                        let idx = i * o.cols + j;
                        out.e[idx] = f.add(out.e[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, f: &FField, v: &[FFElem]) -> Vec<FFElem> {
        (0..self.rows)
            .map(|i| {
                let mut s = f.zero();
                for (j, &x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if a.0 != 0 && x.0 != 0 {
                        s = f.add(s, f.mul(a, x));
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> FMat {
        let mut t = FMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise x ↦ x^{p^j}.
    pub fn frob(&self, f: &FField, j: usize) -> FMat {
        FMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|&x| f.frob(x, j)).collect() }
    }

    pub fn scale(&self, f: &FField, c: FFElem) -> FMat {
        FMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|&x| f.mul(c, x)).collect() }
    }

    pub fn sub_identity(&self, f: &FField) -> FMat {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, f.sub(m.get(i, i), f.one()));
        }
        m
    }

    pub fn is_identity(&self, f: &FField) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { f.one() } else { f.zero() })
            })
    }

    fn echelon(&self, f: &FField, aug: Option<&FMat>) -> (Vec<Vec<FFElem>>, usize) {
        let extra = aug.map_or(0, |a| a.cols);
        let mut rows: Vec<Vec<FFElem>> = (0..self.rows)
            .map(|i| {
                let mut r: Vec<FFElem> = (0..self.cols).map(|j| self.get(i, j)).collect();
                if let Some(a) = aug {
                    r.extend((0..extra).map(|j| a.get(i, j)));
                }
                r
            })
            .collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c].0 != 0) else { continue };
            rows.swap(rank, piv);
            let inv = f.inv(rows[rank][c]).unwrap();
            for x in rows[rank].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pr = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[c].0 != 0 {
                    let k = row[c];
                    for (x, &y) in row.iter_mut().zip(&pr) {
                        *x = f.sub(*x, f.mul(k, y));
                    }
                }
            }
            rank += 1;
        }
        (rows, rank)
    }

    pub fn rank(&self, f: &FField) -> usize {
        self.echelon(f, None).1
    }

    pub fn nullity(&self, f: &FField) -> usize {
        self.cols - self.rank(f)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self, f: &FField) -> Vec<Vec<FFElem>> {
        let (rows, _) = self.echelon(f, None);
        let mut pivots = Vec::new();
        for row in &rows {
            if let Some(c) = row.iter().position(|x| x.0 != 0) {
                pivots.push(c);
            }
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(rows[r][free]);
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self, f: &FField) -> Option<FMat> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let (rows, rank) = self.echelon(f, Some(&FMat::identity(f, n)));
        if rank < n {
            return None;
        }
        let mut inv = FMat::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                inv.set(i, j, row[n + j]);
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let f = FField::with_degree(3, 2).unwrap();
        let mut m = FMat::zeros(2, 2);
        m.set(0, 0, f.gen());
        m.set(0, 1, f.one());
        m.set(1, 0, f.one());
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity(&f));
        assert_eq!(m.rank(&f), 2);
        let z = FMat::zeros(2, 2);
        assert!(z.inverse(&f).is_none());
        assert_eq!(z.nullity(&f), 2);
        let mut s = FMat::zeros(1, 3);
        s.set(0, 0, f.one());
        s.set(0, 2, f.gen());
        let k = s.kernel(&f);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(s.apply(&f, v), vec![f.zero()]);
        }
    }
}
