//! Partitions, symmetric and hyperoctahedral class data, Murnaghan–Nakayama,
//! formal expansions of unipotent characters and of R^G_{M⊂P} in
//! Deligne–Lusztig symbols, and an experimental m → 0 extraction from
//! twisted Lefschetz numbers.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::lcm;
use crate::error::{invalid, Error, Result};
use crate::CycNum;

/// A partition with parts in weakly decreasing order and no zero parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// (part value, multiplicity) pairs.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Adds one part.
    pub fn with_part(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        v.push(k);
        Partition::new(v)
    }

    /// All partitions of n in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Order of the centralizer of a permutation of cycle type ρ: Π i^{m_i} m_i!.
pub fn z_rho(rho: &Partition) -> BigInt {
    rho.multiplicities()
        .into_iter()
        .fold(BigInt::one(), |acc, (i, m)| acc * BigInt::from(i).pow(m as u32) * factorial(m))
}

/// χ^λ(ρ) by removing border strips of length ρ_1, ρ_2, … (beta-set form).
pub fn mn_char(lambda: &Partition, rho: &Partition) -> Result<i64> {
    if lambda.weight() != rho.weight() {
        return invalid(format!("|{lambda}| ≠ |{rho}|"));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(lambda, rho.parts(), &mut memo))
}

fn mn_rec(lambda: &Partition, rho: &[usize], memo: &mut HashMap<(Partition, usize), i64>) -> i64 {
    let Some((&k, rest)) = rho.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    if let Some(&v) = memo.get(&(lambda.clone(), rho.len())) {
        return v;
    }
    let l = lambda.len();
    let beta: Vec<i64> = lambda.parts().iter().enumerate().map(|(i, &p)| (p + l - 1 - i) as i64).collect();
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - k as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = nbeta.iter().enumerate().map(|(j, &x)| (x - (l - 1 - j) as i64) as usize).collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&Partition::new(parts), rest, memo);
    }
    memo.insert((lambda.clone(), rho.len()), total);
    total
}

/// Σ_ρ χ^λ_ρ χ^μ_ρ / z_ρ, which is δ_{λμ}.
pub fn mn_inner(lambda: &Partition, mu: &Partition) -> Result<BigRational> {
    let n = lambda.weight();
    let mut acc = BigRational::zero();
    for rho in Partition::all(n) {
        let v = mn_char(lambda, &rho)? * mn_char(mu, &rho)?;
        acc += BigRational::new(BigInt::from(v), z_rho(&rho));
    }
    Ok(acc)
}

/// Weyl groups of the two families. Named apart from the Weil representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylGroup {
    /// S_n, classes = cycle types.
    Symmetric(usize),
    /// (Z/2)^n ⋊ S_n, classes = signed cycle types (α, β).
    Hyperoctahedral(usize),
}

/// Conjugacy class of a maximal torus, indexed by a Weyl group class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorusLabel {
    Unitary(Partition),
    /// α: positive cycles (split factors), β: negative cycles.
    Symplectic(Partition, Partition),
}

impl fmt::Display for TorusLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusLabel::Unitary(r) => write!(f, "T{r}"),
            TorusLabel::Symplectic(a, b) => write!(f, "T({a},{b})"),
        }
    }
}

impl WeylGroup {
    pub fn classes(&self) -> Vec<TorusLabel> {
        match *self {
            WeylGroup::Symmetric(n) => Partition::all(n).into_iter().map(TorusLabel::Unitary).collect(),
            WeylGroup::Hyperoctahedral(n) => {
                let mut out = Vec::new();
                for k in (0..=n).rev() {
                    for a in Partition::all(k) {
                        for b in Partition::all(n - k) {
                            out.push(TorusLabel::Symplectic(a.clone(), b));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn order(&self) -> BigInt {
        match *self {
            WeylGroup::Symmetric(n) => factorial(n),
            WeylGroup::Hyperoctahedral(n) => factorial(n) * BigInt::from(2).pow(n as u32),
        }
    }

    /// Centralizer order of the class (z_ρ, or 2^{ℓ(α)} z_α 2^{ℓ(β)} z_β).
    pub fn centralizer(&self, c: &TorusLabel) -> Result<BigInt> {
        match (self, c) {
            (WeylGroup::Symmetric(_), TorusLabel::Unitary(r)) => Ok(z_rho(r)),
            (WeylGroup::Hyperoctahedral(_), TorusLabel::Symplectic(a, b)) => {
                let two = BigInt::from(2);
                Ok(two.pow(a.len() as u32) * z_rho(a) * two.pow(b.len() as u32) * z_rho(b))
            }
            _ => invalid("class label does not belong to this Weyl group"),
        }
    }
}

/// A formal rational combination of R_T symbols plus a constant (trivial character).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirtualChar {
    pub constant: BigRational,
    pub terms: Vec<(TorusLabel, BigRational)>,
}

impl VirtualChar {
    pub fn coefficient(&self, t: &TorusLabel) -> BigRational {
        self.terms.iter().find(|(l, _)| l == t).map_or_else(BigRational::zero, |(_, c)| c.clone())
    }

    pub fn scale(&self, c: &BigRational) -> VirtualChar {
        VirtualChar {
            constant: &self.constant * c,
            terms: self.terms.iter().map(|(l, x)| (l.clone(), x * c)).collect(),
        }
    }

    /// Degree, given the degree of each symbol.
    pub fn degree(&self, deg: impl Fn(&TorusLabel) -> BigRational) -> BigRational {
        self.terms.iter().fold(self.constant.clone(), |acc, (l, c)| acc + c * deg(l))
    }
}

impl fmt::Display for VirtualChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.constant.is_zero() {
            parts.push(self.constant.to_string());
        }
        for (l, c) in &self.terms {
            parts.push(format!("{c}·R_{l}"));
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// ψ^λ = Σ_ρ χ^λ_ρ / z_ρ · R_{T(ρ)}(1).
pub fn unipotent_expansion(lambda: &Partition) -> Result<VirtualChar> {
    let terms = Partition::all(lambda.weight())
        .into_iter()
        .map(|rho| {
            let c = BigRational::new(BigInt::from(mn_char(lambda, &rho)?), z_rho(&rho));
            Ok((TorusLabel::Unitary(rho), c))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(VirtualChar { constant: BigRational::zero(), terms })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Unitary,
    Symplectic,
}

/// R^G_{M⊂P} written as Σ_{(T') ⊂ M'} R^G_{T×T'} / |W(T')^F|.
#[derive(Clone, Debug)]
pub struct RmpExpansion {
    pub side: Side,
    pub n: usize,
    /// W(M') whose classes index the tori T'.
    pub weyl: WeylGroup,
    pub rmp: VirtualChar,
}

/// M = U_1 × U_{n-1} (unitary) or the anisotropic rank-one torus times
/// Sp_{2n-2} (symplectic); T is the U_1 factor, which adds a part 1 (resp. a
/// negative 1-cycle) to the class of T'.
pub fn expand_rmp(side: Side, n: usize) -> Result<RmpExpansion> {
    if n == 0 {
        return invalid("rank must be positive");
    }
    let weyl = match side {
        Side::Unitary => WeylGroup::Symmetric(n - 1),
        Side::Symplectic => WeylGroup::Hyperoctahedral(n - 1),
    };
    let mut terms = Vec::new();
    for c in weyl.classes() {
        let w = BigRational::new(BigInt::one(), weyl.centralizer(&c)?);
        let label = match c {
            TorusLabel::Unitary(r) => TorusLabel::Unitary(r.with_part(1)),
            TorusLabel::Symplectic(a, b) => TorusLabel::Symplectic(a, b.with_part(1)),
        };
        terms.push((label, w));
    }
    Ok(RmpExpansion { side, n, weyl, rmp: VirtualChar { constant: BigRational::zero(), terms } })
}

/// The formal expression of ω[χ] in R_T symbols: unitary ω[1] = (-1)^n (1 - R),
/// ω[χ≠1] = (-1)^{n-1} R; symplectic ω[1] = 1 - R, ω[χ≠1] = -R.
pub fn formal_omega(side: Side, n: usize, trivial: bool) -> Result<VirtualChar> {
    let e = expand_rmp(side, n)?.rmp;
    let sign = match side {
        Side::Unitary if n % 2 == 1 => -1,
        _ => 1,
    };
    let s = BigRational::from_integer(BigInt::from(sign));
    Ok(if trivial {
        let mut v = e.scale(&-s.clone());
        v.constant = s;
        v
    } else {
        let alt = if side == Side::Unitary { -s } else { -BigRational::one() };
        e.scale(&alt)
    })
}

fn p_part(q: u64) -> Result<u64> {
    let (p, _) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Ok(p)
}

/// deg R^G_T(1) = ε_G ε_T |G^F|_{p'} / |T^F|.
pub fn torus_degree(side: Side, n: usize, q: u64, t: &TorusLabel) -> Result<BigRational> {
    p_part(q)?;
    let qi = BigInt::from(q);
    let (g_pp, t_order, sign) = match (side, t) {
        (Side::Unitary, TorusLabel::Unitary(r)) if r.weight() == n => {
            let g: BigInt = (1..=n as u32).map(|i| qi.pow(i) - BigInt::from(if i % 2 == 0 { 1 } else { -1 })).product();
            let t: BigInt = r.parts().iter().map(|&k| qi.pow(k as u32) - BigInt::from(if k % 2 == 0 { 1 } else { -1 })).product();
            let even = r.parts().iter().filter(|&&k| k % 2 == 0).count();
            (g, t, (n / 2 + even) % 2)
        }
        (Side::Symplectic, TorusLabel::Symplectic(a, b)) if a.weight() + b.weight() == n => {
            let g: BigInt = (1..=n as u32).map(|i| qi.pow(2 * i) - 1).product();
            let t: BigInt = a.parts().iter().map(|&k| qi.pow(k as u32) - 1).product::<BigInt>()
                * b.parts().iter().map(|&k| qi.pow(k as u32) + 1).product::<BigInt>();
            (g, t, (n + a.len()) % 2)
        }
        _ => return invalid(format!("{t} is not a torus class of this group")),
    };
    let v = BigRational::new(g_pp, t_order);
    Ok(if sign == 1 { -v } else { v })
}

/// Virtual degree of R^G_{M⊂P}: (-1)^{n-1}(q^n - (-1)^n)/(q+1) (unitary) or
/// -(q^{2n}-1)/(q+1) (symplectic).
pub fn rm_dim(side: Side, n: usize, q: u64) -> Result<i64> {
    p_part(q)?;
    let q = q as i64;
    Ok(match side {
        Side::Unitary => {
            let s = if n % 2 == 0 { 1 } else { -1 };
            let v = (q.pow(n as u32) - s) / (q + 1);
            if n % 2 == 1 {
                v
            } else {
                -v
            }
        }
        Side::Symplectic => -(q.pow(2 * n as u32) - 1) / (q + 1),
    })
}

/// The eigenvalue model for the extraction: Frobenius eigenvalues ζ·q^j with
/// ζ^{2(q+1)} = 1 and 0 ≤ j ≤ dim.
#[derive(Clone, Copy, Debug)]
pub struct EigenModel {
    pub q: u64,
    pub dim: u32,
}

impl EigenModel {
    fn root_order(&self) -> u32 {
        2 * (self.q as u32 + 1)
    }

    /// Candidates (ζ-exponent, j, value) in modulus `md`.
    fn candidates(&self, md: u32) -> Vec<(u32, u32, CycNum)> {
        let o = self.root_order();
        let mut out = Vec::new();
        for j in 0..=self.dim {
            for e in 0..o {
                let z = CycNum::root(md, (e * (md / o)) as i64).expect("modulus divides");
                let v = z.scale(&BigRational::from_integer(BigInt::from(self.q).pow(j)));
                out.push((e, j, v));
            }
        }
        out
    }
}

/// Result of the m → 0 extraction.
#[derive(Clone, Debug)]
pub struct Extraction {
    /// (ζ-exponent in μ_{2(q+1)}, weight j, multiplicity).
    pub eigenvalues: Vec<(u32, u32, i64)>,
    /// Σ multiplicities, the extrapolated value at m = 0.
    pub value: i64,
}

/// Minimal linear recurrence c with s_k = Σ_{i≥1} c_i s_{k-i} (Berlekamp–Massey).
fn berlekamp_massey(s: &[CycNum], md: u32) -> Vec<CycNum> {
    let zero = CycNum::zero(md);
    let one = CycNum::one(md);
    let mut c = vec![one.clone()];
    let mut b = vec![one.clone()];
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = one;
    for k in 0..s.len() {
        let mut d = s[k].clone();
        for i in 1..=l {
            d += &(&c[i] * &s[k - i]);
        }
        if d.is_zero() {
            m += 1;
            continue;
        }
        let coef = &d * &bd.inv().expect("nonzero discrepancy");
        let t = c.clone();
        if c.len() < b.len() + m {
            c.resize(b.len() + m, zero.clone());
        }
        for (i, bi) in b.iter().enumerate() {
            c[i + m] = &c[i + m] - &(&coef * bi);
        }
        if 2 * l <= k {
            l = k + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            m += 1;
        }
    }
    c.resize(l + 1, zero);
    c.into_iter().skip(1).map(|x| -x).collect()
}

/// Solves A x = b over CycNum by Gauss–Jordan; None if singular.
fn solve(mut a: Vec<Vec<CycNum>>, mut b: Vec<CycNum>) -> Option<Vec<CycNum>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let k = a[r][col].clone();
                let row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&row) {
                    *x = &*x - &(&k * y);
                }
                b[r] = &b[r] - &(&k * &b[col]);
            }
        }
    }
    Some(b)
}

/// Fits L_m = Σ a_i λ_i^m (m = 1..K) with λ_i from the model, and returns Σ a_i.
/// Fails when the recurrence is not determined by the data (2r > K), when a
/// root lies outside the model, when roots repeat, or when multiplicities
/// are not integers.
pub fn lefschetz_extract_m0(seq: &[CycNum], model: EigenModel) -> Result<Extraction> {
    if seq.is_empty() {
        return Err(Error::Extraction("empty sequence".into()));
    }
    let md = seq.iter().fold(model.root_order() as u64, |acc, x| lcm(acc, x.modulus() as u64)) as u32;
    let s: Vec<CycNum> = seq.iter().map(|x| x.embed(md)).collect::<Result<_>>()?;
    let rec = berlekamp_massey(&s, md);
    let r = rec.len();
    if 2 * r > s.len() {
        return Err(Error::Extraction(format!("recurrence of order {r} is not determined by {} terms", s.len())));
    }
    // roots of x^r - Σ c_i x^{r-i}
    let mut roots = Vec::new();
    for (e, j, v) in model.candidates(md) {
        let mut acc = CycNum::one(md);
        for c in &rec {
            acc = &(&acc * &v) - c;
        }
        if acc.is_zero() {
            roots.push((e, j, v));
        }
    }
    if roots.len() != r {
        return Err(Error::Extraction(format!(
            "model falsified: {} of {r} characteristic roots lie in the candidate set",
            roots.len()
        )));
    }
    let a: Vec<Vec<CycNum>> =
        (1..=r).map(|m| roots.iter().map(|(_, _, v)| v.pow(m as u64)).collect()).collect();
    let coeffs = solve(a, s[..r].to_vec()).ok_or_else(|| Error::Extraction("singular Vandermonde system".into()))?;
    for (m, target) in s.iter().enumerate() {
        let pred = roots
            .iter()
            .zip(&coeffs)
            .fold(CycNum::zero(md), |acc, ((_, _, v), c)| &acc + &(c * &v.pow(m as u64 + 1)));
        if pred != *target {
            return Err(Error::Extraction(format!("re-prediction fails at m = {}", m + 1)));
        }
    }
    let mut eigenvalues = Vec::new();
    let mut value = 0i64;
    for ((e, j, _), c) in roots.iter().zip(&coeffs) {
        let k = crate::rep::integer(c)
            .ok_or_else(|| Error::Extraction(format!("multiplicity {c} is not an integer")))?;
        eigenvalues.push((*e, *j, k));
        value += k;
    }
    Ok(Extraction { eigenvalues, value })
}

/// |ψ^λ(1)| for U_n from the hook formula of GL_n with q replaced by -q.
pub fn unipotent_degree_hook(lambda: &Partition, q: u64) -> Result<BigRational> {
    p_part(q)?;
    let mq = -BigInt::from(q);
    let parts = lambda.parts();
    let npow: usize = parts.iter().enumerate().map(|(i, &p)| i * p).sum();
    let mut num = mq.pow(npow as u32);
    for i in 1..=lambda.weight() as u32 {
        num *= mq.pow(i) - 1;
    }
    let mut den = BigInt::one();
    for (i, &p) in parts.iter().enumerate() {
        for j in 0..p {
            let leg = parts[i + 1..].iter().filter(|&&x| x > j).count();
            den *= mq.pow((p - j + leg) as u32) - 1;
        }
    }
    Ok(BigRational::new(num, den).abs())
}

/// Checks Σ_ρ z_ρ^{-1} = 1 style identities: Σ over classes of 1/|C(w)| = 1.
pub fn class_weights_sum(w: WeylGroup) -> Result<BigRational> {
    w.classes().iter().try_fold(BigRational::zero(), |acc, c| Ok(acc + BigRational::new(BigInt::one(), w.centralizer(c)?)))
}

/// True when every coefficient of the expansion is the nonnegative weight 1/|W(T')^F|.
pub fn weights_positive(v: &VirtualChar) -> bool {
    v.terms.iter().all(|(_, c)| c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn small_characters() {
        let p = |v: &[usize]| Partition::new(v.to_vec());
        assert_eq!(mn_char(&p(&[2, 1]), &p(&[3])).unwrap(), -1);
        assert_eq!(mn_char(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(mn_char(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(), -1);
        assert!(mn_char(&p(&[2]), &p(&[1])).is_err());
        assert_eq!(z_rho(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(z_rho(&p(&[1, 1, 1, 1])), BigInt::from(24));
        assert_eq!(z_rho(&p(&[4])), BigInt::from(4));
    }

    #[test]
    fn hook_degrees_u3() {
        // unipotent degrees of U_3(q): 1, q(q-1), q^3
        let p = |v: &[usize]| Partition::new(v.to_vec());
        assert_eq!(unipotent_degree_hook(&p(&[3]), 2).unwrap(), r(1, 1));
        assert_eq!(unipotent_degree_hook(&p(&[2, 1]), 2).unwrap(), r(2, 1));
        assert_eq!(unipotent_degree_hook(&p(&[1, 1, 1]), 3).unwrap(), r(27, 1));
    }

    #[test]
    fn orthogonality() {
        for n in 1..=6 {
            let all = Partition::all(n);
            for a in &all {
                for b in &all {
                    let want = if a == b { BigRational::one() } else { BigRational::zero() };
                    assert_eq!(mn_inner(a, b).unwrap(), want);
                }
            }
        }
    }

    #[test]
    fn expansions() {
        let e = unipotent_expansion(&Partition::new(vec![2])).unwrap();
        assert_eq!(e.coefficient(&TorusLabel::Unitary(Partition::new(vec![1, 1]))), r(1, 2));
        assert_eq!(e.coefficient(&TorusLabel::Unitary(Partition::new(vec![2]))), r(1, 2));
        let s = unipotent_expansion(&Partition::new(vec![1, 1])).unwrap();
        assert_eq!(s.coefficient(&TorusLabel::Unitary(Partition::new(vec![2]))), r(-1, 2));

        let u2 = expand_rmp(Side::Unitary, 2).unwrap();
        assert_eq!(u2.rmp.terms, vec![(TorusLabel::Unitary(Partition::new(vec![1, 1])), r(1, 1))]);
        let u3 = expand_rmp(Side::Unitary, 3).unwrap();
        assert_eq!(u3.rmp.terms.len(), 2);
        assert!(u3.rmp.terms.iter().all(|(_, c)| *c == r(1, 2)));
        let s1 = expand_rmp(Side::Symplectic, 1).unwrap();
        assert_eq!(s1.rmp.terms.len(), 1);
    }

    #[test]
    fn rm_dims() {
        assert_eq!(rm_dim(Side::Unitary, 2, 2).unwrap(), -1);
        assert_eq!(rm_dim(Side::Symplectic, 1, 2).unwrap(), -1);
        assert_eq!(rm_dim(Side::Symplectic, 2, 2).unwrap(), -5);
    }

    #[test]
    fn expansion_degree_matches_rm_dim() {
        for side in [Side::Unitary, Side::Symplectic] {
            for n in 1..=4 {
                for q in [2, 3, 4, 5] {
                    let e = expand_rmp(side, n).unwrap().rmp;
                    let d = e.degree(|t| torus_degree(side, n, q, t).unwrap());
                    assert_eq!(d, r(rm_dim(side, n, q).unwrap(), 1), "{side:?} n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn hyperoctahedral_classes() {
        for n in 0..=5 {
            let w = WeylGroup::Hyperoctahedral(n);
            assert_eq!(class_weights_sum(w).unwrap(), BigRational::one());
            let total: BigInt = w.classes().iter().map(|c| w.order() / w.centralizer(c).unwrap()).sum();
            assert_eq!(total, w.order());
        }
    }

    #[test]
    fn extraction_examples() {
        let md = 6;
        let q = 2i64;
        let model = EigenModel { q: 2, dim: 1 };
        let c: Vec<CycNum> = (1..=4).map(|_| CycNum::from_int(md, 5)).collect();
        assert_eq!(lefschetz_extract_m0(&c, model).unwrap().value, 5);
        let curve: Vec<CycNum> = (1..=4u32).map(|m| CycNum::from_int(md, -(-q).pow(m))).collect();
        assert_eq!(lefschetz_extract_m0(&curve, model).unwrap().value, -1);
        // two terms need four values
        assert!(lefschetz_extract_m0(&curve[..1], model).is_err());
        let mixed: Vec<CycNum> = (1..=2u32).map(|m| CycNum::from_int(md, 1 + q.pow(m))).collect();
        assert!(lefschetz_extract_m0(&mixed[..2], model).is_err());
        // 3^m is outside the model
        let bad: Vec<CycNum> = (1..=4u32).map(|m| CycNum::from_int(md, 3i64.pow(m))).collect();
        assert!(lefschetz_extract_m0(&bad, model).is_err());
    }
}
