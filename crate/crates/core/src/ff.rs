//! Finite fields F_{p^k} in polynomial bases, and the tower F_{q^{2m}} over F_q.
//!
//! Elements are packed coefficient vectors (`FFElem`); all arithmetic goes
//! through the owning [`FField`]. Defining polynomials are the smallest monic
//! irreducibles in the order of their integer encoding Σ c_i p^i.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::arith::{factorize, prime_power};
use crate::error::{invalid, Error, Result};
use crate::fplin::FpMat;

/// Packed coefficient vector of a finite-field element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FFElem(pub u128);

const TABLE_LIMIT: u128 = 1 << 20;

#[derive(Debug)]
struct Tables {
    log: Vec<u32>,
    exp: Vec<u128>,
}

#[derive(Debug)]
pub struct FField {
    p: u32,
    k: usize,
    bits: u32,
    modulus: Vec<u32>,
    red2: u128,
    size: u128,
    tables: Option<Tables>,
    generator: Option<FFElem>,
}

// ---- polynomials over F_p (dense, lowest degree first, trimmed) ----

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut r = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + x as u64 * y as u64) % p64;
        }
    }
    poly_rem_u64(r, f, p)
}

fn poly_rem_u64(mut r: Vec<u64>, f: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df] as u64, p64);
    while r.len() > df {
        let top = r.len() - 1;
        let c = r[top] % p64 * lead_inv % p64;
        if c != 0 {
            for i in 0..=df {
                let idx = top - df + i;
                r[idx] = (r[idx] + (p64 - c) * f[i] as u64) % p64;
            }
        }
        r.pop();
    }
    let mut out: Vec<u32> = r.into_iter().map(|x| (x % p64) as u32).collect();
    trim(&mut out);
    out
}

fn poly_rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    poly_rem_u64(a.iter().map(|&x| x as u64).collect(), f, p)
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_pow_mod(base: &[u32], mut e: u128, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
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

/// Rabin's irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // x^{p^i} mod f for i = 1..k
    let mut powers = Vec::with_capacity(k + 1);
    let mut cur = x.clone();
    powers.push(cur.clone());
    for _ in 0..k {
        cur = poly_pow_mod(&cur, p as u128, f, p);
        powers.push(cur.clone());
    }
    if poly_sub(&powers[k], &x, p) != Vec::<u32>::new() {
        return false;
    }
    for (r, _) in factorize(k as u64) {
        let d = k / r as usize;
        let g = poly_gcd(f, &poly_sub(&powers[d], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible polynomial of degree k over F_p.
pub fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let mut c: u128 = 0;
    loop {
        let mut f = Vec::with_capacity(k + 1);
        let mut t = c;
        for _ in 0..k {
            f.push((t % p as u128) as u32);
            t /= p as u128;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
        c += 1;
    }
}

impl FField {
    /// Field F_{p^k} defined by the smallest irreducible of degree k.
    pub fn with_degree(p: u32, k: usize) -> Result<Self> {
        if !crate::arith::is_prime(p as u64) {
            return invalid(format!("{p} is not prime"));
        }
        if k == 0 {
            return invalid("field degree must be positive");
        }
        Self::new(p, smallest_irreducible(p, k))
    }

    /// Field F_p[x]/(f); f must be monic and irreducible.
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Self> {
        let k = modulus.len() - 1;
        if modulus[k] != 1 || !is_irreducible(&modulus, p) {
            return invalid(format!("modulus {modulus:?} is not a monic irreducible over F_{p}"));
        }
        let bits = if p == 2 { 1 } else { 32 - (p - 1).leading_zeros() };
        if (k as u32) * bits > 128 || (p == 2 && k > 127) {
            return Err(Error::Budget {
                what: format!("packed element of F_{p}^{k}"),
                needed: (k as u128) * bits as u128,
                limit: 127,
            });
        }
        let size = (p as u128).checked_pow(k as u32).ok_or(Error::Budget {
            what: "field size".into(),
            needed: u128::MAX,
            limit: u128::MAX,
        })?;
        let red2 = if p == 2 {
            modulus[..k]
                .iter()
                .enumerate()
                .fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i))
        } else {
            0
        };
        let mut f = FField { p, k, bits, modulus, red2, size, tables: None, generator: None };
        f.generator = f.find_generator();
        if let Some(g) = f.generator {
            if f.size <= TABLE_LIMIT && (1u128 << (bits as usize * k)) <= TABLE_LIMIT {
                let n = (f.size - 1) as usize;
                let mut log = vec![u32::MAX; 1usize << (bits as usize * k)];
                let mut exp = Vec::with_capacity(n);
                let mut x = f.one();
                for i in 0..n {
                    exp.push(x.0);
                    log[x.0 as usize] = i as u32;
                    x = f.mul(x, g);
                }
                f.tables = Some(Tables { log, exp });
            }
        }
        Ok(f)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Degree over F_p.
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FFElem {
        FFElem(0)
    }

    pub fn one(&self) -> FFElem {
        FFElem(1)
    }

    /// The class of x in F_p[x]/(f).
    pub fn gen(&self) -> FFElem {
        if self.k == 1 {
            self.from_digits(&[(self.p - self.modulus[0]) % self.p])
        } else {
            FFElem(1u128 << self.bits)
        }
    }

    pub fn from_int(&self, n: i64) -> FFElem {
        FFElem(n.rem_euclid(self.p as i64) as u128)
    }

    pub fn is_zero(&self, a: FFElem) -> bool {
        a.0 == 0
    }

    pub fn digits(&self, a: FFElem) -> Vec<u32> {
        let mask = (1u128 << self.bits) - 1;
        (0..self.k)
            .map(|i| ((a.0 >> (i as u32 * self.bits)) & mask) as u32)
            .collect()
    }

    pub fn from_digits(&self, d: &[u32]) -> FFElem {
        FFElem(
            d.iter()
                .enumerate()
                .fold(0u128, |acc, (i, &c)| acc | (((c % self.p) as u128) << (i as u32 * self.bits))),
        )
    }

    /// Position in the canonical enumeration: the integer Σ c_i p^i.
    pub fn index(&self, a: FFElem) -> u128 {
        if self.p == 2 {
            return a.0;
        }
        self.digits(a)
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn elem(&self, mut idx: u128) -> FFElem {
        if self.p == 2 {
            return FFElem(idx);
        }
        let mut d = Vec::with_capacity(self.k);
        for _ in 0..self.k {
            d.push((idx % self.p as u128) as u32);
            idx /= self.p as u128;
        }
        self.from_digits(&d)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.size).map(move |i| self.elem(i))
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        if self.p == 2 {
            return FFElem(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y| x + y)
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        if self.p == 2 {
            return FFElem(a.0 ^ b.0);
        }
        let p = self.p;
        self.digitwise(a, b, move |x, y| x + p - y)
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        self.sub(FFElem(0), a)
    }

    fn digitwise(&self, a: FFElem, b: FFElem, f: impl Fn(u32, u32) -> u32) -> FFElem {
        let mask = (1u128 << self.bits) - 1;
        let mut out = 0u128;
        for i in 0..self.k as u32 {
            let s = i * self.bits;
            let x = ((a.0 >> s) & mask) as u32;
            let y = ((b.0 >> s) & mask) as u32;
            out |= ((f(x, y) % self.p) as u128) << s;
        }
        FFElem(out)
    }

    /// Multiplication by an element of the prime field.
    pub fn scalar_mul(&self, c: u32, a: FFElem) -> FFElem {
        let c = c % self.p;
        if self.p == 2 {
            return if c == 0 { FFElem(0) } else { a };
        }
        self.digitwise(a, a, move |x, _| x * c)
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.0 == 0 || b.0 == 0 {
            return FFElem(0);
        }
        if let Some(t) = &self.tables {
            let n = t.exp.len();
            let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return FFElem(t.exp[if i >= n { i - n } else { i }]);
        }
        if self.p == 2 {
            return self.mul2(a.0, b.0);
        }
        self.mul_generic(a, b)
    }

    fn mul2(&self, a: u128, b: u128) -> FFElem {
        let k = self.k as u32;
        let high = 1u128 << k;
        let mut r = 0u128;
        let top = 128 - b.leading_zeros();
        for i in (0..top).rev() {
            r <<= 1;
            if r & high != 0 {
                r ^= high | self.red2;
            }
            if (b >> i) & 1 == 1 {
                r ^= a;
            }
        }
        FFElem(r)
    }

    fn mul_generic(&self, a: FFElem, b: FFElem) -> FFElem {
        let da = self.digits(a);
        let db = self.digits(b);
        let k = self.k;
        let p = self.p as u64;
        let mut r = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                r[i + j] += x as u64 * y as u64;
            }
        }
        for t in (k..2 * k - 1).rev() {
            let c = r[t] % p;
            if c != 0 {
                for i in 0..k {
                    let idx = t - k + i;
                    r[idx] += (p - c) * self.modulus[i] as u64;
                }
            }
        }
        let d: Vec<u32> = r[..k].iter().map(|&x| (x % p) as u32).collect();
        self.from_digits(&d)
    }

    pub fn pow(&self, a: FFElem, mut e: u128) -> FFElem {
        if let Some(t) = &self.tables {
            if a.0 == 0 {
                return if e == 0 { self.one() } else { a };
            }
            let n = t.exp.len() as u128;
            let l = t.log[a.0 as usize] as u128;
            return FFElem(t.exp[((l * (e % n)) % n) as usize]);
        }
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FFElem) -> Option<FFElem> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let n = t.exp.len();
            let l = t.log[a.0 as usize] as usize;
            return Some(FFElem(t.exp[(n - l) % n]));
        }
        Some(self.pow(a, self.size - 2))
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Option<FFElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// x ↦ x^{p^j}.
    pub fn frob(&self, a: FFElem, j: usize) -> FFElem {
        let j = j % self.k;
        let mut x = a;
        for _ in 0..j {
            x = self.pow(x, self.p as u128);
        }
        x
    }

    /// F_p-linear matrix of x ↦ x^{p^j} in the polynomial basis.
    pub fn frob_matrix(&self, j: usize) -> FpMat {
        self.linear_matrix(|x| self.frob(x, j))
    }

    /// Matrix (columns = images of basis vectors) of an F_p-linear map of the field.
    pub fn linear_matrix(&self, f: impl Fn(FFElem) -> FFElem) -> FpMat {
        let mut m = FpMat::zeros(self.p, self.k, self.k);
        for j in 0..self.k {
            let mut d = vec![0u32; self.k];
            d[j] = 1;
            let img = self.digits(f(self.from_digits(&d)));
            for (i, c) in img.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    fn find_generator(&self) -> Option<FFElem> {
        let n = self.size - 1;
        if n > (1u128 << 40) {
            return None;
        }
        if n == 1 {
            return Some(self.one());
        }
        let primes: Vec<u128> = factorize(n as u64).into_iter().map(|(r, _)| r as u128).collect();
        (1..self.size).map(|i| self.elem(i)).find(|&g| {
            primes.iter().all(|&r| self.pow_slow(g, n / r) != self.one())
        })
    }

    fn pow_slow(&self, a: FFElem, mut e: u128) -> FFElem {
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = if self.p == 2 { self.mul2(acc.0, b.0) } else { self.mul_generic(acc, b) };
            }
            b = if self.p == 2 { self.mul2(b.0, b.0) } else { self.mul_generic(b, b) };
            e >>= 1;
        }
        acc
    }

    /// Fixed generator of the multiplicative group (smallest in canonical order),
    /// available when the group order can be factored cheaply.
    pub fn mult_generator(&self) -> Option<FFElem> {
        self.generator
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FFElem) -> u128 {
        assert!(a.0 != 0, "zero has no multiplicative order");
        let n = self.size - 1;
        let mut ord = n;
        for (r, _) in factorize(n as u64) {
            let r = r as u128;
            while ord % r == 0 && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    /// Evaluates a polynomial with F_p coefficients at `x`.
    pub fn eval_fp_poly(&self, f: &[u32], x: FFElem) -> FFElem {
        f.iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), self.from_int(c as i64)))
    }
}

/// F_p-linear embedding of a subfield, given by the images of the basis x^i.
#[derive(Debug, Clone)]
pub struct Embedding {
    images: Vec<FFElem>,
}

impl Embedding {
    pub fn apply(&self, big: &FField, small: &FField, a: FFElem) -> FFElem {
        let d = small.digits(a);
        let mut acc = big.zero();
        for (c, img) in d.iter().zip(&self.images) {
            if *c != 0 {
                acc = big.add(acc, big.scalar_mul(*c, *img));
            }
        }
        acc
    }

    /// Image of the polynomial-basis generator of the small field.
    pub fn root(&self) -> FFElem {
        if self.images.len() > 1 {
            self.images[1]
        } else {
            self.images[0]
        }
    }
}

/// Embedding F_p[x]/(f) → `big` sending x to the smallest root of f in `big`.
pub fn find_embedding(small: &FField, big: &FField) -> Result<Embedding> {
    let k = small.degree();
    let kk = big.degree();
    if small.p() != big.p() || kk % k != 0 {
        return invalid(format!(
            "F_{}^{} does not embed in F_{}^{}",
            small.p(),
            k,
            big.p(),
            kk
        ));
    }
    let f = small.modulus();
    let root = if k == 1 {
        big.from_int(small.digits(small.gen())[0] as i64)
    } else {
        let limit = 1u128 << 24;
        let sub_size = (small.p() as u128).pow(k as u32);
        if sub_size > limit {
            return Err(Error::Budget { what: "subfield root search".into(), needed: sub_size, limit });
        }
        // the subfield of size p^k is the kernel of Frob^k - 1
        let m = big.frob_matrix(k).sub_identity();
        let basis = m.kernel();
        let mut found = None;
        crate::fplin::for_each_combination(big.p(), basis.len(), |coef| {
            if found.is_some() {
                return false;
            }
            let mut d = vec![0u32; kk];
            for (c, v) in coef.iter().zip(&basis) {
                for (x, y) in d.iter_mut().zip(v) {
                    *x = (*x + c * y) % big.p();
                }
            }
            let x = big.from_digits(&d);
            if big.eval_fp_poly(f, x) == big.zero() {
                found = Some(x);
                return false;
            }
            true
        });
        let beta = found.ok_or_else(|| Error::Verification("no root of subfield polynomial".into()))?;
        (0..k)
            .map(|i| big.frob(beta, i))
            .min_by_key(|&x| big.index(x))
            .unwrap()
    };
    let mut images = Vec::with_capacity(k);
    let mut cur = big.one();
    for _ in 0..k {
        images.push(cur);
        cur = big.mul(cur, root);
    }
    Ok(Embedding { images })
}

/// The tower of fields F_{q^{2m}}, m ≥ 1, with cached levels and embeddings.
#[derive(Debug)]
pub struct FFTower {
    p: u32,
    r: u32,
    q: u64,
    levels: Mutex<BTreeMap<u32, Arc<FField>>>,
    embeds: Mutex<HashMap<(u32, u32), Arc<Embedding>>>,
}

impl FFTower {
    pub fn new(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Ok(FFTower {
            p: p as u32,
            r,
            q,
            levels: Mutex::new(BTreeMap::new()),
            embeds: Mutex::new(HashMap::new()),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// q = p^r.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// F_{q^{2m}}.
    pub fn level(&self, m: u32) -> Result<Arc<FField>> {
        if m == 0 {
            return invalid("tower levels start at 1");
        }
        if let Some(f) = self.levels.lock().unwrap().get(&m) {
            return Ok(f.clone());
        }
        let f = Arc::new(FField::with_degree(self.p, (2 * m * self.r) as usize)?);
        self.levels.lock().unwrap().insert(m, f.clone());
        Ok(f)
    }

    /// Embedding of level m1 into level m2 (m1 | m2).
    pub fn embedding(&self, m1: u32, m2: u32) -> Result<Arc<Embedding>> {
        if m2 % m1 != 0 {
            return invalid(format!("level {m1} does not divide level {m2}"));
        }
        if let Some(e) = self.embeds.lock().unwrap().get(&(m1, m2)) {
            return Ok(e.clone());
        }
        let e = Arc::new(find_embedding(&*self.level(m1)?, &*self.level(m2)?)?);
        self.embeds.lock().unwrap().insert((m1, m2), e.clone());
        Ok(e)
    }
}

/// Shorthand for x ↦ x^q on a field containing F_q (q = p^r).
pub fn conj_q(f: &FField, r: u32, x: FFElem) -> FFElem {
    f.frob(x, r as usize)
}

/// All a ∈ F_{q^2} with a + ε a^q = c, in canonical order.
pub fn ff_trace_solve(f: &FField, r: u32, c: FFElem, eps: i32) -> Vec<FFElem> {
    f.elements()
        .filter(|&a| {
            let aq = conj_q(f, r, a);
            let t = if eps >= 0 { f.add(a, aq) } else { f.sub(a, aq) };
            t == c
        })
        .collect()
}

/// μ_{q+1} ⊂ F_{q^2} as the powers ζ^0, ζ^1, … of the fixed generator ζ = g^{q-1}.
pub fn ff_mu_enum(f: &FField, q: u64) -> Vec<FFElem> {
    let g = f.mult_generator().expect("F_{q^2} has a known generator");
    let z = f.pow(g, (q - 1) as u128);
    let mut out = Vec::with_capacity(q as usize + 1);
    let mut x = f.one();
    for _ in 0..=q {
        out.push(x);
        x = f.mul(x, z);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, k) in [(2, 2), (3, 2), (2, 3), (5, 1), (2, 4), (3, 3)] {
            let f = FField::with_degree(p, k).unwrap();
            let elems: Vec<_> = f.elements().collect();
            assert_eq!(elems.len() as u128, f.size());
            for &a in &elems {
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                for &b in elems.iter().step_by(3) {
                    assert_eq!(f.mul(a, b), f.mul_generic_check(a, b));
                }
            }
        }
    }

    impl FField {
        fn mul_generic_check(&self, a: FFElem, b: FFElem) -> FFElem {
            if self.p == 2 {
                self.mul2(a.0, b.0)
            } else {
                self.mul_generic(a, b)
            }
        }
    }

    #[test]
    fn frobenius_fixes_exactly_fq() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let t = FFTower::new(q).unwrap();
            let f = t.level(1).unwrap();
            let fixed: Vec<_> = f.elements().filter(|&x| conj_q(&f, t.r(), x) == x).collect();
            assert_eq!(fixed.len() as u64, q);
            for a in f.elements().take(40) {
                for b in f.elements().step_by(5) {
                    let lhs = conj_q(&f, t.r(), f.mul(a, b));
                    let rhs = f.mul(conj_q(&f, t.r(), a), conj_q(&f, t.r(), b));
                    assert_eq!(lhs, rhs);
                }
                assert_eq!(conj_q(&f, t.r(), conj_q(&f, t.r(), a)), a);
            }
        }
    }

    #[test]
    fn trace_solve_examples() {
        let t = FFTower::new(2).unwrap();
        let f = t.level(1).unwrap();
        let w = f.gen();
        let w2 = f.mul(w, w);
        assert_eq!(f.add(f.add(w2, w), f.one()), f.zero());
        assert_eq!(ff_trace_solve(&f, 1, f.zero(), 1), vec![f.zero(), f.one()]);
        let mut s = ff_trace_solve(&f, 1, f.one(), 1);
        s.sort();
        let mut expect = vec![w, w2];
        expect.sort();
        assert_eq!(s, expect);
        assert!(ff_trace_solve(&f, 1, w, 1).is_empty());
    }

    #[test]
    fn trace_solve_partitions() {
        for q in [2u64, 3, 4] {
            let t = FFTower::new(q).unwrap();
            let f = t.level(1).unwrap();
            for eps in [1, -1] {
                let mut total = 0;
                for c in f.elements() {
                    let s = ff_trace_solve(&f, t.r(), c, eps).len() as u64;
                    assert!(s == 0 || s == q);
                    total += s;
                }
                assert_eq!(total, q * q);
            }
        }
    }

    #[test]
    fn mu_enumeration() {
        for q in [2u64, 3, 4, 5] {
            let t = FFTower::new(q).unwrap();
            let f = t.level(1).unwrap();
            let mu = ff_mu_enum(&f, q);
            assert_eq!(mu.len() as u64, q + 1);
            assert_eq!(mu[0], f.one());
            for &z in &mu {
                assert_eq!(f.pow(z, (q + 1) as u128), f.one());
                assert!(mu.contains(&f.inv(z).unwrap()));
            }
            let mut sorted = mu.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), mu.len());
            if q == 3 {
                assert_eq!(f.mult_order(mu[1]), 4);
            }
        }
    }

    #[test]
    fn embeddings_commute_with_frobenius() {
        for q in [2u64, 3] {
            let t = FFTower::new(q).unwrap();
            for (m1, m2) in [(1, 2), (1, 3), (2, 4)] {
                let small = t.level(m1).unwrap();
                let big = t.level(m2).unwrap();
                let e = t.embedding(m1, m2).unwrap();
                let mut images = Vec::new();
                for a in small.elements() {
                    let ea = e.apply(&big, &small, a);
                    images.push(ea);
                    assert_eq!(e.apply(&big, &small, small.frob(a, 1)), big.frob(ea, 1));
                    for b in small.elements().step_by(7) {
                        let eb = e.apply(&big, &small, b);
                        assert_eq!(e.apply(&big, &small, small.mul(a, b)), big.mul(ea, eb));
                        assert_eq!(e.apply(&big, &small, small.add(a, b)), big.add(ea, eb));
                    }
                }
                images.sort();
                images.dedup();
                assert_eq!(images.len() as u128, small.size());
            }
        }
    }

    #[test]
    fn large_binary_field_arithmetic() {
        let f = FField::with_degree(2, 96).unwrap();
        let a = f.gen();
        let b = f.add(f.pow(a, 77), f.one());
        let c = f.inv(b).unwrap();
        assert_eq!(f.mul(b, c), f.one());
        assert_eq!(f.frob(b, 96), b);
        let g = FField::with_degree(3, 24).unwrap();
        let x = g.add(g.pow(g.gen(), 5), g.from_int(2));
        assert_eq!(g.mul(x, g.inv(x).unwrap()), g.one());
        assert_eq!(g.frob(x, 24), x);
    }

    #[test]
    fn not_prime_power_rejected() {
        assert!(matches!(FFTower::new(6), Err(Error::NotPrimePower(6))));
    }
}
