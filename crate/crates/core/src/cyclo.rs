//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! Elements are sparse coefficient vectors on the power basis 1, ζ, …, ζ^{φ(N)-1},
//! always reduced modulo the N-th cyclotomic polynomial. The coefficient type
//! is generic; the crate root fixes it to arbitrary-precision rationals.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{FromPrimitive, Num};

use crate::arith::{euler_phi, gcd, lcm};
use crate::error::{invalid, Result};

/// Coefficient ring for cyclotomic numbers: any exact or approximate field
/// that `num-traits` can describe.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + Send
    + Sync
    + 'static
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Num
        + Neg<Output = T>
        + FromPrimitive
        + Send
        + Sync
        + 'static
        + for<'a> AddAssign<&'a T>
        + for<'a> SubAssign<&'a T>
        + for<'a> MulAssign<&'a T>
{
}

/// Structure constants of Q(ζ_N).
#[derive(Debug)]
pub struct CycField {
    n: u32,
    phi: usize,
    poly: Vec<i64>,
    /// ζ^e expressed on the power basis, sparse, for 0 ≤ e < n.
    pow: Vec<Vec<(u32, i64)>>,
}

impl CycField {
    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.poly
    }

    pub fn power(&self, e: i64) -> &[(u32, i64)] {
        let n = self.n as i64;
        &self.pow[e.rem_euclid(n) as usize]
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    assert!(lead == 1 || lead == -1);
    let ql = rem.len() + 1 - dl;
    let mut q = vec![0i64; ql];
    for i in (0..ql).rev() {
        let c = rem[i + dl - 1] * lead;
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let pd = cyclotomic_poly(d, cache);
            num = poly_div_exact(&num, &pd);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn build_field(n: u32) -> CycField {
    let mut cache = HashMap::new();
    let poly = cyclotomic_poly(n, &mut cache);
    let phi = euler_phi(n as u64) as usize;
    debug_assert_eq!(poly.len(), phi + 1);
    let mut pow = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        pow.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        );
        // multiply by ζ and reduce the overflow coefficient with Φ_N
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * poly[i];
            }
        }
    }
    CycField { n, phi, poly, pow }
}

/// Shared, immutable structure constants for Q(ζ_N).
pub fn cyc_field(n: u32) -> Result<Arc<CycField>> {
    if n == 0 {
        return invalid("cyclotomic modulus must be positive");
    }
    static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycField>>>> = OnceLock::new();
    let map = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().unwrap();
    Ok(guard
        .entry(n)
        .or_insert_with(|| Arc::new(build_field(n)))
        .clone())
}

/// An element of Q(ζ_N) with coefficients in `R`, stored sparsely as
/// (basis index, nonzero coefficient) pairs in increasing index order.
#[derive(Clone)]
pub struct Cyc<R> {
    field: Arc<CycField>,
    t: Vec<(u32, R)>,
}

fn add_small<R: Scalar>(acc: &mut R, x: &R, k: i64) {
    match k {
        1 => *acc += x,
        -1 => *acc -= x,
        _ => {
            let mut t = R::from_i64(k).expect("small integer coefficient");
            t *= x;
            *acc += &t;
        }
    }
}

fn sparsify<R: Scalar>(dense: Vec<R>) -> Vec<(u32, R)> {
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i as u32, x))
        .collect()
}

fn merge<R: Scalar>(a: &[(u32, R)], b: &[(u32, R)], sub: bool) -> Vec<(u32, R)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = if sub { -b[j].1.clone() } else { b[j].1.clone() };
            out.push((b[j].0, v));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            if sub {
                v -= &b[j].1;
            } else {
                v += &b[j].1;
            }
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl<R: Scalar> Cyc<R> {
    pub fn zero(n: u32) -> Self {
        Cyc { field: cyc_field(n).expect("positive modulus"), t: Vec::new() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_scalar(n, R::one())
    }

    pub fn from_scalar(n: u32, r: R) -> Self {
        let mut z = Self::zero(n);
        if !r.is_zero() {
            z.t.push((0, r));
        }
        z
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        Self::from_scalar(n, R::from_i64(k).expect("integer"))
    }

    /// ζ_N^k.
    pub fn root(n: u32, k: i64) -> Result<Self> {
        let f = cyc_field(n)?;
        let t = f
            .power(k)
            .iter()
            .map(|&(i, v)| (i, R::from_i64(v).expect("integer")))
            .collect();
        Ok(Cyc { field: f, t })
    }

    pub fn modulus(&self) -> u32 {
        self.field.n
    }

    /// Dense coefficient vector on the power basis.
    pub fn coeffs(&self) -> Vec<R> {
        let mut c = vec![R::zero(); self.field.phi];
        for (i, x) in &self.t {
            c[*i as usize] = x.clone();
        }
        c
    }

    /// Nonzero (index, coefficient) pairs.
    pub fn terms(&self) -> &[(u32, R)] {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.t.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.t.len() == 1 && self.t[0].0 == 0 && self.t[0].1.is_one()
    }

    /// The rational value when the element lies in Q.
    pub fn as_scalar(&self) -> Option<R> {
        match self.t.as_slice() {
            [] => Some(R::zero()),
            [(0, x)] => Some(x.clone()),
            _ => None,
        }
    }

    fn scalar_ref(&self) -> Option<&R> {
        match self.t.as_slice() {
            [(0, x)] => Some(x),
            _ => None,
        }
    }

    fn from_exponent_sum<'a>(field: &Arc<CycField>, terms: impl Iterator<Item = (i64, &'a R)>) -> Self
    where
        R: 'a,
    {
        let mut c = vec![R::zero(); field.phi];
        for (e, x) in terms {
            for &(i, k) in field.power(e) {
                add_small(&mut c[i as usize], x, k);
            }
        }
        Cyc { field: field.clone(), t: sparsify(c) }
    }

    /// Image under ζ_N ↦ ζ_N^a for a coprime to N.
    pub fn galois(&self, a: i64) -> Self {
        let n = self.field.n as i64;
        assert_eq!(gcd(a.rem_euclid(n) as u64, n as u64), 1, "Galois exponent must be a unit");
        Self::from_exponent_sum(&self.field, self.t.iter().map(|(i, x)| (a * *i as i64, x)))
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.scalar_ref().is_some() || self.is_zero() {
            return self.clone();
        }
        self.galois(-1)
    }

    /// Image under Q(ζ_N) → Q(ζ_M), for N dividing M.
    pub fn embed(&self, m: u32) -> Result<Self> {
        let n = self.field.n;
        if m == 0 || m % n != 0 {
            return invalid(format!("cannot embed Q(zeta_{n}) into Q(zeta_{m})"));
        }
        if m == n {
            return Ok(self.clone());
        }
        let f = cyc_field(m)?;
        let step = (m / n) as i64;
        Ok(Self::from_exponent_sum(&f, self.t.iter().map(|(i, x)| (step * *i as i64, x))))
    }

    fn aligned<'a>(&'a self, o: &'a Self) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if self.field.n == o.field.n {
            (Cow::Borrowed(self), Cow::Borrowed(o))
        } else {
            let m = lcm(self.field.n as u64, o.field.n as u64) as u32;
            (Cow::Owned(self.embed(m).unwrap()), Cow::Owned(o.embed(m).unwrap()))
        }
    }

    pub fn scale(&self, r: &R) -> Self {
        if r.is_zero() {
            return Cyc { field: self.field.clone(), t: Vec::new() };
        }
        let t = self
            .t
            .iter()
            .map(|(i, x)| {
                let mut y = x.clone();
                y *= r;
                (*i, y)
            })
            .collect();
        Cyc { field: self.field.clone(), t }
    }

    /// Multiplication by ζ_N^e.
    pub fn mul_root(&self, e: i64) -> Self {
        Self::from_exponent_sum(&self.field, self.t.iter().map(|(i, x)| (*i as i64 + e, x)))
    }

    fn mul_same(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Cyc { field: self.field.clone(), t: Vec::new() };
        }
        if let Some(r) = self.scalar_ref() {
            return o.scale(r);
        }
        if let Some(r) = o.scalar_ref() {
            return self.scale(r);
        }
        let phi = self.field.phi;
        let mut acc = vec![R::zero(); 2 * phi - 1];
        for (i, a) in &self.t {
            for (j, b) in &o.t {
                let mut t = a.clone();
                t *= b;
                acc[(i + j) as usize] += &t;
            }
        }
        let mut c: Vec<R> = acc.drain(..phi).collect();
        for (k, x) in acc.into_iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(i, v) in self.field.power((phi + k) as i64) {
                add_small(&mut c[i as usize], &x, v);
            }
        }
        Cyc { field: self.field.clone(), t: sparsify(c) }
    }

    /// `self += a * b`, the inner step of matrix products.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a * b;
        *self += &p;
    }

    /// Multiplicative inverse, None for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.scalar_ref() {
            return Some(Self::from_scalar(self.field.n, R::one() / r.clone()));
        }
        let phi = self.field.phi;
        // columns: self * ζ^j ; solve M x = e_0
        let cols: Vec<Vec<R>> = (0..phi).map(|j| self.mul_root(j as i64).coeffs()).collect();
        let mut m: Vec<Vec<R>> = (0..phi)
            .map(|i| {
                let mut row: Vec<R> = cols.iter().map(|col| col[i].clone()).collect();
                row.push(if i == 0 { R::one() } else { R::zero() });
                row
            })
            .collect();
        let x = solve_square(&mut m, phi)?;
        Some(Cyc { field: self.field.clone(), t: sparsify(x) })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

/// Gaussian elimination on an augmented n×(n+1) system; None when singular.
fn solve_square<R: Scalar>(m: &mut [Vec<R>], n: usize) -> Option<Vec<R>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = R::one() / m[col][col].clone();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for k in col..=n {
                    let mut t = m[col][k].clone();
                    t *= &f;
                    m[r][k] -= &t;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

impl<R: Scalar> PartialEq for Cyc<R> {
    fn eq(&self, o: &Self) -> bool {
        let (a, b) = self.aligned(o);
        a.t == b.t
    }
}

impl<R: Scalar + Eq> Eq for Cyc<R> {}

impl<R: Scalar> Add for &Cyc<R> {
    type Output = Cyc<R>;
    fn add(self, o: &Cyc<R>) -> Cyc<R> {
        let (a, b) = self.aligned(o);
        Cyc { field: a.field.clone(), t: merge(&a.t, &b.t, false) }
    }
}

impl<R: Scalar> Sub for &Cyc<R> {
    type Output = Cyc<R>;
    fn sub(self, o: &Cyc<R>) -> Cyc<R> {
        let (a, b) = self.aligned(o);
        Cyc { field: a.field.clone(), t: merge(&a.t, &b.t, true) }
    }
}

impl<R: Scalar> Mul for &Cyc<R> {
    type Output = Cyc<R>;
    fn mul(self, o: &Cyc<R>) -> Cyc<R> {
        let (a, b) = self.aligned(o);
        a.mul_same(&b)
    }
}

impl<R: Scalar> Neg for &Cyc<R> {
    type Output = Cyc<R>;
    fn neg(self) -> Cyc<R> {
        Cyc { field: self.field.clone(), t: self.t.iter().map(|(i, x)| (*i, -x.clone())).collect() }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl<R: Scalar> $tr for Cyc<R> {
            type Output = Cyc<R>;
            fn $f(self, o: Cyc<R>) -> Cyc<R> {
                (&self).$f(&o)
            }
        }
        impl<R: Scalar> $tr<&Cyc<R>> for Cyc<R> {
            type Output = Cyc<R>;
            fn $f(self, o: &Cyc<R>) -> Cyc<R> {
                (&self).$f(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<R: Scalar> Neg for Cyc<R> {
    type Output = Cyc<R>;
    fn neg(self) -> Cyc<R> {
        -&self
    }
}

impl<R: Scalar> AddAssign<&Cyc<R>> for Cyc<R> {
    fn add_assign(&mut self, o: &Cyc<R>) {
        if o.is_zero() {
            return;
        }
        if self.field.n == o.field.n {
            if self.t.is_empty() {
                self.t = o.t.clone();
            } else {
                self.t = merge(&self.t, &o.t, false);
            }
        } else {
            *self = &*self + o;
        }
    }
}

impl<R: Scalar> SubAssign<&Cyc<R>> for Cyc<R> {
    fn sub_assign(&mut self, o: &Cyc<R>) {
        if o.is_zero() {
            return;
        }
        if self.field.n == o.field.n {
            self.t = merge(&self.t, &o.t, true);
        } else {
            *self = &*self - o;
        }
    }
}

impl<R: Scalar> MulAssign<&Cyc<R>> for Cyc<R> {
    fn mul_assign(&mut self, o: &Cyc<R>) {
        *self = &*self * o;
    }
}

impl<R: Scalar + fmt::Display> fmt::Display for Cyc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, x) in &self.t {
            let i = *i as usize;
            let s = x.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, body.as_str()) {
                (0, b) => write!(f, "{b}")?,
                (_, "1") => write!(f, "z{}^{}", self.field.n, i)?,
                (_, b) => write!(f, "{b}*z{}^{}", self.field.n, i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: Scalar + fmt::Display> fmt::Debug for Cyc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc({self})")
    }
}

/// ζ_N^k for the default exact coefficient type.
pub fn cyc_root(n: u32, k: i64) -> Result<crate::CycNum> {
    Cyc::root(n, k)
}

pub fn cyc_conj(x: &crate::CycNum) -> crate::CycNum {
    x.conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CycNum;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn root_examples() {
        assert!(cyc_root(0, 1).is_err());
        assert_eq!(cyc_root(4, 2).unwrap(), CycNum::from_int(4, -1));
        let s = &cyc_root(3, 1).unwrap() + &cyc_root(3, 2).unwrap();
        assert_eq!(s, CycNum::from_int(3, -1));
        let z6 = cyc_root(6, 1).unwrap();
        let rhs = -cyc_root(3, 2).unwrap();
        assert_eq!(z6, rhs);
    }

    #[test]
    fn conj_examples() {
        assert_eq!(cyc_conj(&cyc_root(3, 1).unwrap()), cyc_root(3, 2).unwrap());
        let r = CycNum::from_scalar(7, q(5, 7));
        assert_eq!(cyc_conj(&r), r);
        let x = &cyc_root(8, 1).unwrap() + &cyc_root(8, -1).unwrap();
        assert_eq!(cyc_conj(&x), x);
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyc_field(1).unwrap().cyclotomic_poly(), &[-1, 1]);
        assert_eq!(cyc_field(6).unwrap().cyclotomic_poly(), &[1, -1, 1]);
        assert_eq!(cyc_field(12).unwrap().cyclotomic_poly(), &[1, 0, -1, 0, 1]);
        assert_eq!(cyc_field(60).unwrap().degree(), 16);
    }

    #[test]
    fn inverse_and_powers() {
        let a = &cyc_root(12, 1).unwrap() + &CycNum::from_int(12, 2);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert!(CycNum::zero(5).inv().is_none());
        assert!(cyc_root(10, 3).unwrap().pow(10).is_one());
    }

    #[test]
    fn mixed_moduli_align() {
        let a = cyc_root(3, 1).unwrap();
        let b = cyc_root(4, 1).unwrap();
        let p = &a * &b;
        assert_eq!(p.modulus(), 12);
        assert_eq!(p, cyc_root(12, 7).unwrap());
    }

    #[test]
    fn display_is_stable() {
        let x = &cyc_root(3, 1).unwrap() - &CycNum::from_scalar(3, q(1, 2));
        assert_eq!(x.to_string(), "-1/2 + z3^1");
        assert_eq!(CycNum::zero(3).to_string(), "0");
    }

    #[test]
    fn generic_over_f64() {
        let x: Cyc<f64> = Cyc::root(4, 1).unwrap();
        assert_eq!((&x * &x).coeffs(), vec![-1.0, 0.0]);
    }

    fn arb_cyc(n: u32) -> impl Strategy<Value = CycNum> {
        let phi = cyc_field(n).unwrap().degree();
        proptest::collection::vec((-5i64..6, 1i64..4), phi).prop_map(move |v| {
            let mut x = CycNum::zero(n);
            for (i, (a, b)) in v.into_iter().enumerate() {
                x = &x + &cyc_root(n, i as i64).unwrap().scale(&q(a, b));
            }
            x
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_cyc(12), b in arb_cyc(12), c in arb_cyc(12)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn conj_is_involutive_automorphism(a in arb_cyc(15), b in arb_cyc(15)) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }

        #[test]
        fn embedding_is_ring_map(a in arb_cyc(6), b in arb_cyc(6)) {
            let e = |x: &CycNum| x.embed(24).unwrap();
            prop_assert_eq!(e(&(&a * &b)), &e(&a) * &e(&b));
            prop_assert_eq!(e(&(&a + &b)), &e(&a) + &e(&b));
            prop_assert_eq!(e(&a.conj()), e(&a).conj());
            prop_assert_eq!(e(&a).is_zero(), a.is_zero());
        }

        #[test]
        fn roots_multiply(k in -30i64..30, l in -30i64..30) {
            let n = 20;
            prop_assert_eq!(&cyc_root(n, k).unwrap() * &cyc_root(n, l).unwrap(), cyc_root(n, k + l).unwrap());
        }

        #[test]
        fn inverse_property(a in arb_cyc(9)) {
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
