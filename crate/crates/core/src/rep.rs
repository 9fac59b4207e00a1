//! Matrix representations over Q(ζ_N): completion from generators, monomial
//! induction, characters, central isotypic projectors, Schur-averaged
//! intertwiners, homomorphism checks and reduction modulo ℓ.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, mult_order};
use crate::cyclo::cyc_field;
use crate::error::{invalid, Error, Result};
use crate::ff::{FFElem, FField};
use crate::groups::{Enumerated, FMat, FiniteGroup};
use crate::matrix::{exponent_counts_to_cyc, MonoMat};
use crate::{CycMat, CycNum};

/// Exhaustive homomorphism checks up to this many elements.
pub const EXHAUSTIVE_LIMIT: usize = 10_000;
/// Random pairs sampled above the exhaustive limit.
pub const RANDOM_PAIRS: usize = 10_000;

#[derive(Clone, Debug)]
pub enum RepMats {
    Mono(Vec<MonoMat>),
    Dense(Vec<CycMat>),
}

/// ρ(g) for every element of an enumerated group, indexed like the group.
pub struct MatrixRep<G: FiniteGroup> {
    pub group: Arc<Enumerated<G>>,
    pub degree: usize,
    pub modulus: u32,
    pub mats: RepMats,
}

/// Fills a table over the whole group by breadth-first propagation from the
/// generator images: ρ(x s) = ρ(x) ρ(s).
pub fn propagate<G: FiniteGroup, T: Clone>(
    group: &Enumerated<G>,
    id: T,
    images: &[T],
    mul: impl Fn(&T, &T) -> T,
) -> Vec<T> {
    let gens: Vec<usize> = group
        .generators()
        .iter()
        .map(|s| group.idx(s).expect("generator in group"))
        .collect();
    assert_eq!(gens.len(), images.len(), "one image per generator");
    let n = group.order();
    let mut out: Vec<Option<T>> = vec![None; n];
    let e = group.identity_idx();
    out[e] = Some(id);
    let mut queue = VecDeque::from([e]);
    while let Some(x) = queue.pop_front() {
        for (&s, img) in gens.iter().zip(images) {
            let y = group.mul_idx(x, s);
            if out[y].is_none() {
                out[y] = Some(mul(out[x].as_ref().unwrap(), img));
                queue.push_back(y);
            }
        }
    }
    out.into_iter().map(|m| m.expect("generators generate")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub pairs: usize,
    pub exhaustive: bool,
}

impl<G: FiniteGroup> MatrixRep<G> {
    pub fn from_mono(group: Arc<Enumerated<G>>, modulus: u32, mats: Vec<MonoMat>) -> Self {
        let degree = mats.first().map_or(0, |m| m.degree());
        MatrixRep { group, degree, modulus, mats: RepMats::Mono(mats) }
    }

    pub fn from_dense(group: Arc<Enumerated<G>>, modulus: u32, mats: Vec<CycMat>) -> Self {
        let degree = mats.first().map_or(0, |m| m.rows());
        MatrixRep { group, degree, modulus, mats: RepMats::Dense(mats) }
    }

    /// Completes dense generator images (in `group.generators()` order).
    pub fn from_generators(group: Arc<Enumerated<G>>, modulus: u32, images: &[CycMat]) -> Self {
        let d = images.first().map_or(0, |m| m.rows());
        let mats = propagate(&group, CycMat::identity(modulus, d), images, |a, b| a.mul(b));
        Self::from_dense(group, modulus, mats)
    }

    pub fn is_monomial(&self) -> bool {
        matches!(self.mats, RepMats::Mono(_))
    }

    pub fn mono(&self, i: usize) -> Option<&MonoMat> {
        match &self.mats {
            RepMats::Mono(m) => Some(&m[i]),
            RepMats::Dense(_) => None,
        }
    }

    pub fn dense(&self, i: usize) -> CycMat {
        match &self.mats {
            RepMats::Mono(m) => m[i].to_dense(),
            RepMats::Dense(m) => m[i].clone(),
        }
    }

    pub fn dense_ref(&self, i: usize) -> Option<&CycMat> {
        match &self.mats {
            RepMats::Mono(_) => None,
            RepMats::Dense(m) => Some(&m[i]),
        }
    }

    pub fn trace(&self, i: usize) -> CycNum {
        match &self.mats {
            RepMats::Mono(m) => m[i].trace(),
            RepMats::Dense(m) => m[i].trace(),
        }
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::new((0..self.group.order()).map(|i| self.trace(i)).collect())
    }

    /// ρ ∘ φ where `map[i]` is the index of φ(element i) in the same group.
    pub fn pullback(&self, map: &[usize]) -> Self {
        let mats = match &self.mats {
            RepMats::Mono(m) => RepMats::Mono(map.iter().map(|&j| m[j].clone()).collect()),
            RepMats::Dense(m) => RepMats::Dense(map.iter().map(|&j| m[j].clone()).collect()),
        };
        MatrixRep { group: self.group.clone(), degree: self.degree, modulus: self.modulus, mats }
    }

    fn product_matches(&self, x: usize, y: usize) -> bool {
        let xy = self.group.mul_idx(x, y);
        match &self.mats {
            RepMats::Mono(m) => m[x].mul(&m[y]) == m[xy],
            RepMats::Dense(m) => m[x].mul(&m[y]) == m[xy],
        }
    }

    /// ρ(x)ρ(y) = ρ(xy). Up to [`EXHAUSTIVE_LIMIT`] elements every pair
    /// (x, generator) is checked, which implies all pairs by induction on word
    /// length. Larger groups get all generator pairs plus seeded random pairs.
    pub fn verify_homomorphism(&self, seed: u64) -> Result<HomCheck> {
        let n = self.group.order();
        let gens: Vec<usize> =
            self.group.generators().iter().map(|s| self.group.idx(s).unwrap()).collect();
        let e = self.group.identity_idx();
        let id_ok = match &self.mats {
            RepMats::Mono(m) => m[e].is_identity(),
            RepMats::Dense(m) => m[e].is_identity(),
        };
        if !id_ok {
            return Err(Error::Verification("identity is not sent to the identity".into()));
        }
        let mut pairs = Vec::new();
        let exhaustive = n <= EXHAUSTIVE_LIMIT;
        if exhaustive {
            for x in 0..n {
                pairs.extend(gens.iter().map(|&s| (x, s)));
            }
        } else {
            for &s in &gens {
                pairs.extend(gens.iter().map(|&t| (s, t)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_PAIRS {
                pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
            }
        }
        for &(x, y) in &pairs {
            if !self.product_matches(x, y) {
                return Err(Error::Verification(format!(
                    "ρ(x)ρ(y) ≠ ρ(xy) at element indices ({x}, {y})"
                )));
            }
        }
        Ok(HomCheck { pairs: pairs.len(), exhaustive })
    }
}

/// A function on group elements, indexed like the enumerated group.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    pub values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn new(values: Vec<CycNum>) -> Self {
        ClassFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Constant on each conjugacy class.
    pub fn is_class_function<G: FiniteGroup>(&self, group: &Enumerated<G>) -> bool {
        group
            .conjugacy_classes()
            .iter()
            .all(|c| c.iter().all(|&i| self.values[i] == self.values[c[0]]))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        ClassFunction::new(self.values.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        ClassFunction::new(self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect())
    }
}

/// (1/|G|) Σ_g χ1(g) conj(χ2(g)).
pub fn char_inner(a: &ClassFunction, b: &ClassFunction) -> Result<CycNum> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Mismatch("class functions live on different groups".into()));
    }
    let n = a.values[0].modulus();
    let mut acc = CycNum::zero(n);
    for (x, y) in a.values.iter().zip(&b.values) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, &y.conj());
        }
    }
    let k = BigRational::from_integer((a.len() as u64).into());
    Ok(acc.scale(&(BigRational::one() / k)))
}

/// Rational value of an exact cyclotomic number, if it is one.
pub fn rational(x: &CycNum) -> Option<BigRational> {
    x.as_scalar()
}

/// Integer value of an exact cyclotomic number, if it is one.
pub fn integer(x: &CycNum) -> Option<i64> {
    let r = x.as_scalar()?;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Checks that `sub` is a subgroup and `psi` (exponents mod `modulus`) a
/// homomorphism on it.
fn check_linear_character<G: FiniteGroup>(
    group: &Enumerated<G>,
    sub: &[usize],
    psi: &[u32],
    modulus: u32,
) -> Result<HashMap<usize, u32>> {
    if sub.len() != psi.len() {
        return invalid("one character value per subgroup element");
    }
    let table: HashMap<usize, u32> = sub.iter().copied().zip(psi.iter().map(|&e| e % modulus)).collect();
    for (&a, &ea) in &table {
        for (&b, &eb) in &table {
            let ab = group.mul_idx(a, b);
            match table.get(&ab) {
                None => return invalid("subset is not closed under multiplication"),
                Some(&e) if e != (ea + eb) % modulus => {
                    return invalid("character values are not multiplicative")
                }
                _ => {}
            }
        }
    }
    Ok(table)
}

/// Ind_A^G ψ_A as monomial matrices over the left transversal made of the
/// first element (canonical order) of each coset gA.
pub fn induce_rep<G: FiniteGroup>(
    group: Arc<Enumerated<G>>,
    sub: &[usize],
    psi: &[u32],
    modulus: u32,
) -> Result<MatrixRep<G>> {
    let table = check_linear_character(&group, sub, psi, modulus)?;
    let n = group.order();
    let mut coset = vec![usize::MAX; n];
    let mut decomp: Vec<(u32, u32)> = vec![(0, 0); n];
    let mut transversal = Vec::new();
    for g in 0..n {
        if coset[g] != usize::MAX {
            continue;
        }
        let i = transversal.len();
        transversal.push(g);
        for (&a, &e) in &table {
            let y = group.mul_idx(g, a);
            coset[y] = i;
            decomp[y] = (i as u32, e);
        }
    }
    let d = transversal.len();
    let mats: Vec<MonoMat> = (0..n)
        .map(|g| {
            let mut perm = vec![0u32; d];
            let mut exps = vec![0u32; d];
            for (j, &t) in transversal.iter().enumerate() {
                let (i, e) = decomp[group.mul_idx(g, t)];
                perm[j] = i;
                exps[j] = e;
            }
            MonoMat { n: modulus, perm, exps }
        })
        .collect();
    Ok(MatrixRep::from_mono(group, modulus, mats))
}

/// Extends a linear character from `base` to the abelian subgroup `target`
/// (which contains it). Elements of `target` are adjoined in canonical order;
/// each new element x with x^m the first power inside the current subgroup gets
/// the smallest exponent c with m·c ≡ ψ(x^m) mod N.
pub fn extend_character<G: FiniteGroup>(
    group: &Enumerated<G>,
    base: &[(usize, u32)],
    target: &[usize],
    modulus: u32,
) -> Result<Vec<u32>> {
    let mut known: HashMap<usize, u32> = base.iter().map(|&(i, e)| (i, e % modulus)).collect();
    let mut sorted = target.to_vec();
    sorted.sort_unstable();
    for &x in &sorted {
        if known.contains_key(&x) {
            continue;
        }
        let mut m = 1u32;
        let mut y = x;
        while !known.contains_key(&y) {
            y = group.mul_idx(y, x);
            m += 1;
        }
        let target_e = known[&y];
        let c = (0..modulus)
            .find(|&c| (m as u64 * c as u64) % modulus as u64 == target_e as u64)
            .ok_or_else(|| Error::InvalidArgument("character does not extend with this modulus".into()))?;
        let current: Vec<(usize, u32)> = known.iter().map(|(&i, &e)| (i, e)).collect();
        let mut pw = group.identity_idx();
        for j in 1..m {
            pw = group.mul_idx(pw, x);
            for &(b, eb) in &current {
                known.insert(group.mul_idx(b, pw), (eb + j * c) % modulus);
            }
        }
    }
    if known.len() != sorted.len() {
        return invalid("extension left the target subgroup");
    }
    Ok(target.iter().map(|i| known[i]).collect())
}

/// Isotypic projector P = (1/|Z0|) Σ_z conj(χ(z)) ρ(z) for a central subgroup
/// Z0 and a character χ of it (exponents mod the representation's modulus).
/// Returns (Tr P, P).
pub fn central_isotypic<G: FiniteGroup>(
    rep: &MatrixRep<G>,
    z: &[usize],
    chi: &[u32],
) -> Result<(u64, CycMat)> {
    check_linear_character(&rep.group, z, chi, rep.modulus)?;
    let n = rep.modulus;
    let gens: Vec<usize> = rep.group.generators().iter().map(|s| rep.group.idx(s).unwrap()).collect();
    for &zi in z {
        let rz = rep.dense(zi);
        for &s in &gens {
            let rs = rep.dense(s);
            if rz.mul(&rs) != rs.mul(&rz) {
                return Err(Error::InvalidArgument("subgroup does not act centrally".into()));
            }
        }
    }
    let mut p = CycMat::zeros(n, rep.degree, rep.degree);
    for (&zi, &e) in z.iter().zip(chi) {
        let c = CycNum::root(n, -(e as i64))?;
        p.add_assign(&rep.dense(zi).scale(&c));
    }
    let k = BigRational::from_integer((z.len() as u64).into());
    let p = p.scale(&CycNum::from_scalar(n, BigRational::one() / k));
    let tr = integer(&p.trace())
        .filter(|&t| t >= 0)
        .ok_or_else(|| Error::Verification("projector trace is not a non-negative integer".into()))?;
    if p.mul(&p) != p {
        return Err(Error::Verification("isotypic projector is not idempotent".into()));
    }
    Ok((tr as u64, p))
}

/// Random 0/1 matrix from a seed.
fn seeded_01(d: usize, seed: u64) -> Vec<Vec<bool>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..d).map(|_| (0..d).map(|_| rng.gen::<bool>()).collect()).collect()
}

fn average_mono(r1: &[MonoMat], r2: &[MonoMat], m: &[Vec<bool>], n: u32) -> CycMat {
    let d = m.len();
    let nn = n as usize;
    let mut counts = vec![0i64; d * d * nn];
    for (a, b) in r2.iter().zip(r1) {
        let bi = b.inverse();
        for k in 0..d {
            let i = a.perm[k] as usize;
            let ek = a.exps[k];
            for j in 0..d {
                if m[k][bi.perm[j] as usize] {
                    let e = ((ek + bi.exps[j]) % n) as usize;
                    counts[(i * d + j) * nn + e] += 1;
                }
            }
        }
    }
    CycMat::from_fn(n, d, d, |i, j| exponent_counts_to_cyc(n, &counts[(i * d + j) * nn..(i * d + j + 1) * nn]))
}

fn average_dense<G: FiniteGroup>(r1: &MatrixRep<G>, r2: &MatrixRep<G>, m: &[Vec<bool>]) -> CycMat {
    let d = m.len();
    let n = r1.modulus.max(r2.modulus);
    let mm = CycMat::from_fn(n, d, d, |i, j| if m[i][j] { CycNum::one(n) } else { CycNum::zero(n) });
    let mut t = CycMat::zeros(n, d, d);
    for h in 0..r1.group.order() {
        let hi = r1.group.inv_idx(h);
        t.add_assign(&r2.dense(h).mul(&mm).mul(&r1.dense(hi)));
    }
    t
}

/// T with T ρ1(x) = ρ2(x) T, as Σ_h ρ2(h) M ρ1(h)^{-1} for a seeded 0/1 matrix M.
/// Retries with fresh seeds while T is singular; reports inequivalence when the
/// characters are orthogonal.
pub fn solve_intertwiner<G: FiniteGroup>(r1: &MatrixRep<G>, r2: &MatrixRep<G>, seed: u64) -> Result<CycMat> {
    if r1.degree != r2.degree || r1.group.order() != r2.group.order() {
        return Err(Error::Mismatch("representations of different shape".into()));
    }
    const TRIES: u64 = 6;
    let d = r1.degree;
    for t in 0..TRIES {
        let m = seeded_01(d, seed.wrapping_add(t));
        let tm = match (&r1.mats, &r2.mats) {
            (RepMats::Mono(a), RepMats::Mono(b)) if r1.modulus == r2.modulus => average_mono(a, b, &m, r1.modulus),
            _ => average_dense(r1, r2, &m),
        };
        if !tm.is_zero() && tm.rank() == d {
            check_intertwines(r1, r2, &tm)?;
            return Ok(tm);
        }
    }
    let ip = char_inner(&r1.character(), &r2.character())?;
    if ip.is_zero() {
        return Err(Error::Inequivalent("characters are orthogonal".into()));
    }
    Err(Error::Verification(format!("no invertible intertwiner after {TRIES} seeds")))
}

fn check_intertwines<G: FiniteGroup>(r1: &MatrixRep<G>, r2: &MatrixRep<G>, t: &CycMat) -> Result<()> {
    for s in r1.group.generators() {
        let i = r1.group.idx(s).unwrap();
        let lhs = match r1.mono(i) {
            Some(m) => m.dense_mul(t),
            None => t.mul(&r1.dense(i)),
        };
        let rhs = match r2.mono(i) {
            Some(m) => m.mul_dense(t),
            None => r2.dense(i).mul(t),
        };
        if lhs != rhs {
            return Err(Error::Verification("averaged matrix fails to intertwine".into()));
        }
    }
    Ok(())
}

/// A representation over a finite field of characteristic ℓ.
pub struct ModRep {
    pub field: Arc<FField>,
    /// Image of ζ_N.
    pub root: FFElem,
    pub degree: usize,
    pub mats: Vec<FMat>,
}

impl ModRep {
    pub fn verify_homomorphism<G: FiniteGroup>(&self, group: &Enumerated<G>) -> bool {
        let f = &*self.field;
        let gens: Vec<usize> = group.generators().iter().map(|s| group.idx(s).unwrap()).collect();
        (0..group.order()).all(|x| {
            gens.iter().all(|&s| self.mats[x].mul(f, &self.mats[s]) == self.mats[group.mul_idx(x, s)])
        })
    }

    /// dim of {X : X ρ(s) = ρ(s) X for all generators s}.
    pub fn commutant_dim(&self, gen_idx: &[usize]) -> usize {
        let f = &*self.field;
        let d = self.degree;
        let mut sys = FMat::zeros(gen_idx.len() * d * d, d * d);
        for (g, &s) in gen_idx.iter().enumerate() {
            let a = &self.mats[s];
            // (X A - A X)_{ij} = Σ_k X_ik A_kj - A_ik X_kj
            for i in 0..d {
                for j in 0..d {
                    let row = g * d * d + i * d + j;
                    for k in 0..d {
                        let c = i * d + k;
                        sys.set(row, c, f.add(sys.get(row, c), a.get(k, j)));
                        let c = k * d + j;
                        sys.set(row, c, f.sub(sys.get(row, c), a.get(i, k)));
                    }
                }
            }
        }
        sys.nullity(f)
    }
}

/// Reduces ρ modulo the prime above ℓ given by the smallest root of Φ_N in
/// F_{ℓ^k}, k the order of ℓ mod N. Coefficients must be ℓ-integral.
pub fn reduce_mod_ell<G: FiniteGroup>(rep: &MatrixRep<G>, ell: u64, p: u64) -> Result<ModRep> {
    if !is_prime(ell) {
        return invalid(format!("{ell} is not prime"));
    }
    if ell == p {
        return invalid("ℓ must differ from the defining characteristic");
    }
    let n = rep.modulus;
    if n as u64 % ell == 0 {
        return invalid("ℓ divides the cyclotomic modulus");
    }
    let k = mult_order(ell % n as u64, n as u64).max(1) as usize;
    let field = Arc::new(FField::with_degree(ell as u32, k)?);
    let f = &*field;
    let phi = cyc_field(n)?.cyclotomic_poly().to_vec();
    let coeffs: Vec<u32> = phi.iter().map(|&c| c.rem_euclid(ell as i64) as u32).collect();
    let root = f
        .elements()
        .find(|&x| f.eval_fp_poly(&coeffs, x).0 == 0)
        .ok_or_else(|| Error::Verification("Φ_N has no root in the residue field".into()))?;
    let pows: Vec<FFElem> = (0..n).map(|e| f.pow(root, e as u128)).collect();
    let ell_big = num_bigint::BigInt::from(ell);
    let reduce = |x: &CycNum| -> Result<FFElem> {
        let mut acc = f.zero();
        for (e, c) in x.terms() {
            let den = c.denom();
            if (den % &ell_big).is_zero() {
                return Err(Error::NonIntegral(format!("denominator {den} divisible by {ell}")));
            }
            let num = (c.numer() % &ell_big + &ell_big) % &ell_big;
            let den = den % &ell_big;
            let cn = f.from_int(num.to_i64().unwrap());
            let cd = f.from_int(den.to_i64().unwrap());
            acc = f.add(acc, f.mul(f.div(cn, cd).unwrap(), pows[*e as usize]));
        }
        Ok(acc)
    };
    let d = rep.degree;
    let mut mats = Vec::with_capacity(rep.group.order());
    for i in 0..rep.group.order() {
        let m = rep.dense(i);
        let mut out = FMat::zeros(d, d);
        for r in 0..d {
            for c in 0..d {
                out.set(r, c, reduce(m.get(r, c))?);
            }
        }
        mats.push(out);
    }
    Ok(ModRep { field, root, degree: d, mats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FormData, Fq2, HeisGroup, OrthGroup};

    fn heis_h1_q2() -> Arc<Enumerated<HeisGroup>> {
        let ctx = Fq2::new(2).unwrap();
        Arc::new(Enumerated::new(HeisGroup::new(ctx.clone(), FormData::hermitian(&ctx, 1)), 1000).unwrap())
    }

    /// Preimage of F_2 ⊂ F_4 with a character nontrivial on the center.
    fn svn_q2(g: &Arc<Enumerated<HeisGroup>>) -> MatrixRep<HeisGroup> {
        let ctx = &g.group.ctx;
        let fq = ctx.fq_elements();
        let sub: Vec<usize> = (0..g.order()).filter(|&i| fq.contains(&g.elem(i).v[0])).collect();
        let z: Vec<(usize, u32)> = g
            .group
            .center()
            .iter()
            .map(|c| (g.idx(c).unwrap(), if c.a.0 == 0 { 0 } else { 2 }))
            .collect();
        let psi = extend_character(g, &z, &sub, 4).unwrap();
        induce_rep(g.clone(), &sub, &psi, 4).unwrap()
    }

    #[test]
    fn svn_degree_two_irreducible() {
        let g = heis_h1_q2();
        let rho = svn_q2(&g);
        assert_eq!(rho.degree, 2);
        let chi = rho.character();
        assert!(char_inner(&chi, &chi).unwrap().is_one());
        assert!(chi.is_class_function(&g));
        assert_eq!(rho.verify_homomorphism(0).unwrap(), HomCheck { pairs: 8 * 3, exhaustive: true });
        assert_eq!(integer(&rho.trace(g.identity_idx())), Some(2));
    }

    #[test]
    fn induction_from_whole_group_is_the_character() {
        let o = Arc::new(Enumerated::new(OrthGroup { q: 2 }, 100).unwrap());
        let all: Vec<usize> = (0..o.order()).collect();
        let sign: Vec<u32> = all.iter().map(|&i| o.elem(i).k as u32).collect();
        let r = induce_rep(o.clone(), &all, &sign, 2).unwrap();
        assert_eq!(r.degree, 1);
        for i in 0..o.order() {
            assert_eq!(integer(&r.trace(i)), Some(if sign[i] == 0 { 1 } else { -1 }));
        }
        let bad: Vec<u32> = all.iter().map(|&i| o.elem(i).z).collect();
        assert!(induce_rep(o.clone(), &all, &bad, 3).is_err());
        let triv = induce_rep(o.clone(), &all, &vec![0; all.len()], 2).unwrap().character();
        assert!(char_inner(&triv, &triv).unwrap().is_one());
        let reg = induce_rep(o.clone(), &[o.identity_idx()], &[0], 2).unwrap();
        assert_eq!(reg.degree, 6);
        assert!(char_inner(&reg.character(), &triv).unwrap().is_one());
    }

    #[test]
    fn isotypic_pieces_sum_to_degree() {
        let g = heis_h1_q2();
        let reg = induce_rep(g.clone(), &[g.identity_idx()], &[0], 4).unwrap();
        let center: Vec<usize> = g.group.center().iter().map(|c| g.idx(c).unwrap()).collect();
        let mut total = 0;
        for t in [0u32, 2] {
            let chi: Vec<u32> = center.iter().map(|&c| if g.elem(c).a.0 == 0 { 0 } else { t }).collect();
            let (d, _) = central_isotypic(&reg, &center, &chi).unwrap();
            total += d;
        }
        assert_eq!(total, 8);
        let rho = svn_q2(&g);
        let full: Vec<u32> = center.iter().map(|&c| if g.elem(c).a.0 == 0 { 0 } else { 2 }).collect();
        assert_eq!(central_isotypic(&rho, &center, &full).unwrap().0, 2);
    }

    #[test]
    fn intertwiners_and_inequivalence() {
        let g = heis_h1_q2();
        let rho = svn_q2(&g);
        let t = solve_intertwiner(&rho, &rho, 7).unwrap();
        assert!(t.as_scalar().is_some());
        // conjugate by a fixed invertible B and recover it up to scalar
        let n = 4;
        let b = CycMat::from_fn(n, 2, 2, |i, j| match (i, j) {
            (0, 0) => CycNum::one(n),
            (0, 1) => CycNum::from_int(n, 2),
            (1, 1) => CycNum::one(n),
            _ => CycNum::zero(n),
        });
        let bi = b.inverse().unwrap();
        let conj: Vec<CycMat> = (0..g.order()).map(|i| b.mul(&rho.dense(i)).mul(&bi)).collect();
        let rho2 = MatrixRep::from_dense(g.clone(), n, conj);
        let t = solve_intertwiner(&rho, &rho2, 1).unwrap();
        let ratio = t.get(0, 0).clone() * b.get(0, 0).inv().unwrap();
        assert!(b.scale(&ratio) == t);
        // one-dimensional characters trivial on the center are orthogonal to ρ
        let lin = induce_rep(g.clone(), &(0..8).collect::<Vec<_>>(), &vec![0; 8], 4).unwrap();
        let lin2 = induce_rep(g.clone(), &(0..8).collect::<Vec<_>>(), &(0..8).map(|i| {
            let e = g.elem(i);
            if e.v[0] == g.group.ctx.field().zero() || e.v[0] == g.group.ctx.field().one() { 0 } else { 2 }
        }).collect::<Vec<_>>(), 4).unwrap();
        assert!(matches!(solve_intertwiner(&lin, &lin2, 0), Err(Error::Inequivalent(_))));
    }

    #[test]
    fn reduction_mod_five() {
        let g = heis_h1_q2();
        let rho = svn_q2(&g);
        let m = reduce_mod_ell(&rho, 5, 2).unwrap();
        assert!(m.verify_homomorphism(&g));
        let gens: Vec<usize> = g.generators().iter().map(|s| g.idx(s).unwrap()).collect();
        assert_eq!(m.commutant_dim(&gens), 1);
        assert!(reduce_mod_ell(&rho, 2, 2).is_err());
    }

    #[test]
    fn propagation_matches_direct_product() {
        let g = heis_h1_q2();
        let rho = svn_q2(&g);
        let imgs: Vec<CycMat> = g.generators().iter().map(|s| rho.dense(g.idx(s).unwrap())).collect();
        let r2 = MatrixRep::from_generators(g.clone(), 4, &imgs);
        for i in 0..g.order() {
            assert!(r2.dense(i) == rho.dense(i));
        }
        assert!(r2.verify_homomorphism(3).unwrap().exhaustive);
    }
}
