//! Dense linear algebra over a prime field F_p.

/// Row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn sub_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = (m.get(i, i) + self.p - 1) % self.p;
            m.set(i, i, v);
        }
        m
    }

    pub fn mul(&self, o: &FpMat) -> FpMat {
        assert_eq!(self.cols, o.rows);
        let p = self.p as u64;
        let mut out = FpMat::zeros(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * o.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = (0..self.cols).map(|j| self.get(i, j) as u64 * v[j] as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    /// Copies `block` into position (r0, c0).
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &FpMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &FpMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = self.get(r0 + i, c0 + j) + block.get(i, j);
                self.set(r0 + i, c0 + j, v);
            }
        }
    }

    /// Reduced row echelon form of the augmented system; returns pivot columns.
    fn rref(rows: &mut [Vec<u32>], ncols: usize, p: u32) -> Vec<usize> {
        if p == 2 {
            return rref2(rows, ncols);
        }
        let p64 = p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let inv = inv_mod(rows[r][c] as u64, p64);
            for x in rows[r].iter_mut() {
                *x = (*x as u64 * inv % p64) as u32;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c] as u64;
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = ((*x as u64 + (p64 - f) * *y as u64) % p64) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        Self::rref(&mut rows, self.cols, self.p).len()
    }

    fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Basis of the right kernel {x : M x = 0}.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut rows = self.row_vecs();
        let pivots = Self::rref(&mut rows, self.cols, self.p);
        kernel_from_rref(&rows, &pivots, self.cols, self.p)
    }

    /// A particular solution of M x = b (free variables zero) and a kernel basis,
    /// or None when the system is inconsistent.
    pub fn solve_affine(&self, b: &[u32]) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
        let mut rows: Vec<Vec<u32>> = self
            .row_vecs()
            .into_iter()
            .zip(b)
            .map(|(mut r, &bi)| {
                r.push(bi % self.p);
                r
            })
            .collect();
        let pivots = Self::rref(&mut rows, self.cols + 1, self.p);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = rows[r][self.cols];
        }
        let trimmed: Vec<Vec<u32>> = rows.iter().map(|r| r[..self.cols].to_vec()).collect();
        Some((x, kernel_from_rref(&trimmed, &pivots, self.cols, self.p)))
    }
}

fn kernel_from_rref(rows: &[Vec<u32>], pivots: &[usize], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut is_pivot = vec![usize::MAX; ncols];
    for (r, &c) in pivots.iter().enumerate() {
        is_pivot[c] = r;
    }
    let mut basis = Vec::new();
    for f in 0..ncols {
        if is_pivot[f] != usize::MAX {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[f] = 1;
        for (r, &c) in pivots.iter().enumerate() {
            let x = rows[r][f];
            v[c] = (p - x % p) % p;
        }
        basis.push(v);
    }
    basis
}

fn rref2(rows: &mut [Vec<u32>], ncols: usize) -> Vec<usize> {
    let words = ncols.div_ceil(64);
    let mut bits: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut w = vec![0u64; words];
            for (j, &x) in r.iter().enumerate().take(ncols) {
                if x & 1 == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == bits.len() {
            break;
        }
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(piv) = (r..bits.len()).find(|&i| bits[i][w] & b != 0) else { continue };
        bits.swap(r, piv);
        let pr = bits[r].clone();
        for (i, row) in bits.iter_mut().enumerate() {
            if i != r && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    for (row, w) in rows.iter_mut().zip(&bits) {
        for (j, x) in row.iter_mut().enumerate().take(ncols) {
            *x = ((w[j / 64] >> (j % 64)) & 1) as u32;
        }
    }
    pivots
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Visits every coefficient vector in (F_p)^n in counter order; the callback
/// returns false to stop early.
pub fn for_each_combination(p: u32, n: usize, mut f: impl FnMut(&[u32]) -> bool) {
    let mut c = vec![0u32; n];
    loop {
        if !f(&c) {
            return;
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            c[i] += 1;
            if c[i] == p {
                c[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_solve() {
        for p in [2u32, 3, 5] {
            let mut m = FpMat::zeros(p, 2, 4);
            m.set(0, 0, 1);
            m.set(0, 1, 1);
            m.set(1, 2, 1);
            m.set(1, 3, p - 1);
            let k = m.kernel();
            assert_eq!(k.len(), 2);
            for v in &k {
                assert!(m.apply(v).iter().all(|&x| x == 0));
            }
            let (x, ker) = m.solve_affine(&[1, 2 % p]).unwrap();
            assert_eq!(m.apply(&x), vec![1, 2 % p]);
            assert_eq!(ker.len(), 2);
            assert_eq!(m.rank(), 2);
        }
    }

    #[test]
    fn inconsistent_system() {
        let mut m = FpMat::zeros(3, 2, 1);
        m.set(0, 0, 1);
        m.set(1, 0, 1);
        assert!(m.solve_affine(&[1, 2]).is_none());
    }

    #[test]
    fn combinations_count() {
        let mut n = 0;
        for_each_combination(3, 3, |_| {
            n += 1;
            true
        });
        assert_eq!(n, 27);
    }
}
