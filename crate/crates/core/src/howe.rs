//! The skew-hermitian model on F_{q^2}^{2n}, the Frobenius intertwiner S, the
//! representation ω of Sp_2n(F_q) × O_2^-(F_q) and the correspondence
//! σ ↦ Hom_O(σ, ω) computed on characters.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{invalid, Error, Result};
use crate::ff::FFElem;
use crate::groups::unitary::MatGroup;
use crate::groups::{
    fixed_dim, sp_enumerate, Enumerated, FMat, FormData, Fq2, HeisElem, OrthElem, OrthGroup, Product,
};
use crate::heis_weil::{normalize_trace, svn_rep, weil_trace_formula, HeisModel, DEFAULT_BUDGET};
use crate::rep::{char_inner, integer, ClassFunction, HomCheck, MatrixRep};
use crate::{CycMat, CycNum};

/// Stone–von Neumann representation of H(F_{q^2}^{2n}, h').
pub fn svn_rep_skew(n: usize, q: u64, psi_index: usize) -> Result<HeisModel> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let ctx = Fq2::new(q)?;
    let form = FormData::skew(&ctx, n);
    HeisModel::new(ctx, form, psi_index, q + 1)
}

/// S with S ρ(x) S^{-1} = ρ(x^{(q)}), S² = 1 and Tr S = q^n.
#[derive(Clone, Debug)]
pub struct FrobIntertwiner {
    pub s: CycMat,
    /// Tr of the raw solution before rescaling.
    pub raw_trace: CycNum,
    pub trace: i64,
}

/// Solves for S on the skew model and normalizes it by its trace; S² = 1 is
/// then checked, not imposed.
pub fn frobenius_intertwiner(model: &HeisModel, seed: u64) -> Result<FrobIntertwiner> {
    let n = model.form().n;
    let q = model.ctx.q();
    let twisted = model.svn.pullback(&model.frobenius_map());
    let raw = crate::rep::solve_intertwiner(&model.svn, &twisted, seed)?;
    let raw_trace = raw.trace();
    let target = q.pow(n as u32) as i64;
    let s = normalize_trace(&raw, target, model.modulus)?;
    if !s.mul(&s).is_identity() {
        let sq = s.mul(&s).as_scalar();
        return Err(Error::Verification(format!(
            "S normalized to Tr S = q^n does not square to 1 (S² = {sq:?})"
        )));
    }
    Ok(FrobIntertwiner { s, raw_trace, trace: target })
}

/// Irreducible representations of O ≅ μ_{q+1} ⋊ Z/2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DihedralLabel {
    /// (x, m) ↦ χ0(x) κ^m with χ0 = χ_{k}, χ0² = 1.
    OneDim { k: u32, kappa: i8 },
    /// Ind from μ_{q+1} of χ_k, χ_k² ≠ 1; labelled by the smaller of k, -k.
    TwoDim { k: u32 },
}

#[derive(Clone, Debug)]
pub struct DihedralIrrep {
    pub label: DihedralLabel,
    pub dim: u64,
    /// Values on `OrthGroup::elements()` order.
    pub character: Vec<CycNum>,
}

impl DihedralIrrep {
    pub fn value(&self, q: u64, o: OrthElem) -> &CycNum {
        &self.character[o.k as usize * (q as usize + 1) + o.z as usize]
    }
}

/// All irreducibles of O_2^-(F_q), characters in Q(ζ_modulus) with (q+1) | modulus.
pub fn dihedral_irreps(q: u64, modulus: u32) -> Result<Vec<DihedralIrrep>> {
    let m = (q + 1) as u32;
    if modulus % m != 0 {
        return invalid("cyclotomic modulus must be a multiple of q + 1");
    }
    let step = (modulus / m) as i64;
    let els = OrthGroup { q }.elements();
    let mut out = Vec::new();
    let ks: Vec<u32> = if m % 2 == 0 { vec![0, m / 2] } else { vec![0] };
    for &k in &ks {
        for kappa in [1i8, -1] {
            let character = els
                .iter()
                .map(|o| {
                    let c = CycNum::root(modulus, step * (k * o.z) as i64)?;
                    Ok(if o.k == 1 && kappa < 0 { -c } else { c })
                })
                .collect::<Result<_>>()?;
            out.push(DihedralIrrep { label: DihedralLabel::OneDim { k, kappa }, dim: 1, character });
        }
    }
    for k in 1..m {
        if 2 * k >= m {
            break;
        }
        let character = els
            .iter()
            .map(|o| {
                if o.k == 1 {
                    return Ok(CycNum::zero(modulus));
                }
                let e = step * (k * o.z) as i64;
                Ok(&CycNum::root(modulus, e)? + &CycNum::root(modulus, -e)?)
            })
            .collect::<Result<_>>()?;
        out.push(DihedralIrrep { label: DihedralLabel::TwoDim { k }, dim: 2, character });
    }
    Ok(out)
}

pub type SpO = Product<MatGroup, OrthGroup>;

/// ω(g, ζ^z F^k) = T_g T_ζ^z S^k on Sp_2n(F_q) × O.
pub struct SpORep {
    pub n: usize,
    pub q: u64,
    pub model: HeisModel,
    pub sp: Arc<Enumerated<MatGroup>>,
    pub group: Arc<Enumerated<SpO>>,
    pub rep: MatrixRep<SpO>,
    pub frob: FrobIntertwiner,
    pub hom: HomCheck,
}

/// Dimensions of the μ_{q+1}-isotypic pieces and of the S-eigenspaces on the
/// pieces S preserves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaDims {
    pub trivial_plus: u64,
    pub trivial_minus: u64,
    /// [ν]^± for the quadratic χ (q odd).
    pub quadratic: Option<(u64, u64)>,
    /// dim [χ_k] for k = 1..=q.
    pub pieces: Vec<(u32, u64)>,
}

pub fn omega_spo(n: usize, q: u64, psi_index: usize, seed: u64, budget: u64) -> Result<SpORep> {
    let model = svn_rep_skew(n, q, psi_index)?;
    let ctx = model.ctx.clone();
    let f = ctx.field();
    let sp = Arc::new(sp_enumerate(ctx.clone(), n, budget)?);
    let frob = frobenius_intertwiner(&model, seed)?;
    let zeta = FMat::scalar(f, 2 * n, ctx.mu()[1]);
    let tz = model.intertwiner(&zeta, seed)?;

    let o = OrthGroup { q };
    let prod = Product(sp.group.clone(), o);
    let group = Arc::new(Enumerated::new(prod, budget)?);
    let mut images: Vec<CycMat> =
        sp.generators().iter().map(|g| model.intertwiner(g, seed)).collect::<Result<_>>()?;
    images.push(tz);
    images.push(frob.s.clone());
    let rep = MatrixRep::from_generators(group.clone(), model.modulus, &images);
    let hom = rep.verify_homomorphism(seed)?;

    let mu = ctx.mu();
    for i in 0..group.order() {
        let (g, oe) = group.elem(i);
        if oe.k == 0 {
            let want = weil_trace_formula(2 * n, q, fixed_dim(&ctx, &g.scale(f, mu[oe.z as usize])));
            if integer(&rep.trace(i)) != Some(want) {
                return Err(Error::Verification(format!(
                    "Tr ω(g, ζ^{}) = {} but the unitary Weil character gives {want}",
                    oe.z,
                    rep.trace(i)
                )));
            }
        }
    }
    Ok(SpORep { n, q, model, sp, group, rep, frob, hom })
}

/// ω with default seed and budget.
pub fn omega_spo_default(n: usize, q: u64) -> Result<SpORep> {
    omega_spo(n, q, 1, 0, DEFAULT_BUDGET)
}

impl SpORep {
    pub fn orth(&self) -> OrthGroup {
        OrthGroup { q: self.q }
    }

    /// Index of (sp element i, o) in the product group.
    pub fn index(&self, g: usize, o: OrthElem) -> usize {
        self.group.idx(&(self.sp.elem(g).clone(), o)).expect("product element")
    }

    pub fn matrix(&self, g: usize, o: OrthElem) -> &CycMat {
        self.rep.dense_ref(self.index(g, o)).expect("dense ω")
    }

    pub fn degree(&self) -> usize {
        self.rep.degree
    }

    pub fn s(&self) -> &CycMat {
        &self.frob.s
    }

    /// P_χ = (1/(q+1)) Σ_j χ_k(ζ^j)^{-1} ω(ζ^j).
    pub fn projector(&self, k: u32) -> Result<CycMat> {
        let nm = self.rep.modulus;
        let m = self.q as u32 + 1;
        let step = nm / m;
        let e = self.sp.identity_idx();
        let d = self.degree();
        let mut p = CycMat::zeros(nm, d, d);
        for j in 0..m {
            let c = CycNum::root(nm, -((step * ((k * j) % m)) as i64))?;
            p.add_assign(&self.matrix(e, OrthElem { z: j, k: 0 }).scale(&c));
        }
        Ok(p.scale(&CycNum::from_scalar(nm, BigRational::one() / BigRational::from_integer(m.into()))))
    }

    /// Dimension of the κ-eigenspace of S on the image of an S-stable projector.
    fn eigen_dim(&self, p: &CycMat, kappa: i64) -> Result<u64> {
        let nm = self.rep.modulus;
        let half = CycNum::from_scalar(nm, BigRational::new(1.into(), 2.into()));
        let ps = p.mul(self.s()).scale(&CycNum::from_int(nm, kappa));
        let e = p.add(&ps).scale(&half);
        if e.mul(&e) != e {
            return Err(Error::Verification("S does not preserve the piece".into()));
        }
        nonneg(&e.trace())
    }

    pub fn dims(&self) -> Result<OmegaDims> {
        let m = self.q as u32 + 1;
        let mut pieces = Vec::new();
        for k in 1..m {
            pieces.push((k, nonneg(&self.projector(k)?.trace())?));
        }
        let p1 = self.projector(0)?;
        let quadratic = if m % 2 == 0 {
            let pn = self.projector(m / 2)?;
            Some((self.eigen_dim(&pn, 1)?, self.eigen_dim(&pn, -1)?))
        } else {
            None
        };
        Ok(OmegaDims {
            trivial_plus: self.eigen_dim(&p1, 1)?,
            trivial_minus: self.eigen_dim(&p1, -1)?,
            quadratic,
            pieces,
        })
    }

    /// S P_χ S^{-1} = P_{χ^{-1}} for every χ.
    pub fn check_s_swaps_pieces(&self) -> Result<bool> {
        let m = self.q as u32 + 1;
        let s = self.s();
        for k in 0..m {
            let lhs = s.mul(&self.projector(k)?).mul(s);
            if lhs != self.projector((m - k) % m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// χ_ω(g, o) over (Sp index, O element).
    pub fn char_value(&self, g: usize, o: OrthElem) -> CycNum {
        self.rep.trace(self.index(g, o))
    }

    /// χ_ω restricted to Sp.
    pub fn sp_character(&self) -> ClassFunction {
        let id = OrthElem { z: 0, k: 0 };
        ClassFunction::new((0..self.sp.order()).map(|g| self.char_value(g, id)).collect())
    }
}

fn nonneg(x: &CycNum) -> Result<u64> {
    integer(x)
        .filter(|&t| t >= 0)
        .map(|t| t as u64)
        .ok_or_else(|| Error::Verification(format!("expected a dimension, got {x}")))
}

/// Character of Hom_O(σ, ω) on Sp: (1/|O|) Σ_o conj χ_σ(o) χ_ω(g, o).
pub fn theta(w: &SpORep, sigma: &DihedralIrrep) -> ClassFunction {
    let els = w.orth().elements();
    let inv = BigRational::one() / BigRational::from_integer((els.len() as u64).into());
    ClassFunction::new(
        (0..w.sp.order())
            .map(|g| {
                let mut acc = CycNum::zero(w.rep.modulus);
                for &o in &els {
                    let c = sigma.value(w.q, o);
                    if !c.is_zero() {
                        acc.add_mul(&c.conj(), &w.char_value(g, o));
                    }
                }
                acc.scale(&inv)
            })
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct ThetaEntry {
    pub sigma: DihedralLabel,
    pub sigma_dim: u64,
    pub dim: i64,
    pub norm: i64,
}

/// Θ(σ) for every dihedral irreducible, with dimensions, norms and the matrix
/// of pairwise inner products.
#[derive(Clone, Debug)]
pub struct ThetaTable {
    pub entries: Vec<ThetaEntry>,
    pub inner: Vec<Vec<i64>>,
    pub characters: Vec<ClassFunction>,
}

impl ThetaTable {
    pub fn zero_entries(&self) -> Vec<DihedralLabel> {
        self.entries.iter().filter(|e| e.dim == 0).map(|e| e.sigma).collect()
    }

    /// Nonzero Θ's irreducible and pairwise orthogonal; zero ones have norm 0.
    pub fn irreducible_and_distinct(&self) -> bool {
        let k = self.entries.len();
        (0..k).all(|i| {
            (0..k).all(|j| {
                let want = if i == j && self.entries[i].dim != 0 { 1 } else { 0 };
                self.inner[i][j] == want
            })
        })
    }

    pub fn get(&self, label: DihedralLabel) -> Option<&ThetaEntry> {
        self.entries.iter().find(|e| e.sigma == label)
    }
}

pub fn theta_table(w: &SpORep) -> Result<ThetaTable> {
    let irr = dihedral_irreps(w.q, w.rep.modulus)?;
    let characters: Vec<ClassFunction> = irr.iter().map(|s| theta(w, s)).collect();
    let e = w.sp.identity_idx();
    let mut inner = vec![vec![0i64; irr.len()]; irr.len()];
    for i in 0..irr.len() {
        for j in 0..irr.len() {
            let v = char_inner(&characters[i], &characters[j])?;
            inner[i][j] = integer(&v).ok_or_else(|| Error::NonIntegral(format!("⟨Θ, Θ'⟩ = {v}")))?;
        }
    }
    let entries = irr
        .iter()
        .zip(&characters)
        .enumerate()
        .map(|(i, (s, c))| {
            let dim = integer(&c.values[e]).ok_or_else(|| Error::NonIntegral(format!("dim Θ = {}", c.values[e])))?;
            Ok(ThetaEntry { sigma: s.label, sigma_dim: s.dim, dim, norm: inner[i][i] })
        })
        .collect::<Result<_>>()?;
    Ok(ThetaTable { entries, inner, characters })
}

/// χ_ω(g, o) = Σ_σ χ_σ(o) Θ(σ)(g) at every point.
pub fn check_reassembly(w: &SpORep, table: &ThetaTable) -> Result<bool> {
    let irr = dihedral_irreps(w.q, w.rep.modulus)?;
    for g in 0..w.sp.order() {
        for o in w.orth().elements() {
            let mut acc = CycNum::zero(w.rep.modulus);
            for (s, c) in irr.iter().zip(&table.characters) {
                acc.add_mul(s.value(w.q, o), &c.values[g]);
            }
            if acc != w.char_value(g, o) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Closed forms for the piece dimensions: [1]^κ, and [χ] for χ ≠ 1.
pub fn omega_dim_formula(n: usize, q: u64) -> (i64, i64, i64) {
    let q = q as i64;
    let qn = q.pow(n as u32);
    let base = (qn - 1) * (qn - q) / (2 * (q + 1));
    (base + qn, base, (qn * qn - 1) / (q + 1))
}

/// Orbits of Sp_2n(F_q) on pairs (v1, v2) ∈ F_q^{2n} × F_q^{2n}, grouped by the
/// dimension of span(v1, v2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCount {
    pub total: usize,
    /// (zero, span of dimension 1, span of dimension 2)
    pub breakdown: (usize, usize, usize),
}

pub fn sp_orbit_count(n: usize, q: u64, budget: u64) -> Result<OrbitCount> {
    let ctx = Fq2::new(q)?;
    let f = ctx.field();
    let d = 2 * n;
    let fq = ctx.fq_elements();
    let npairs = (fq.len() as u128).pow(2 * d as u32);
    if npairs > budget as u128 {
        return Err(Error::Budget { what: "pair orbit enumeration".into(), needed: npairs, limit: budget as u128 });
    }
    let pos: HashMap<FFElem, usize> = fq.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let gens = crate::groups::sp_generators(&ctx, n);
    let b = fq.len();
    let decode = |mut i: usize| -> Vec<FFElem> {
        let mut v = vec![f.zero(); 2 * d];
        for x in v.iter_mut().rev() {
            *x = fq[i % b];
            i /= b;
        }
        v
    };
    let encode = |v: &[FFElem]| v.iter().fold(0usize, |acc, x| acc * b + pos[x]);
    let total = npairs as usize;
    let mut seen = vec![false; total];
    let mut counts = (0, 0, 0);
    for start in 0..total {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let v = decode(start);
        let pair = FMat::from_columns(&[v[..d].to_vec(), v[d..].to_vec()]);
        match pair.rank(f) {
            0 => counts.0 += 1,
            1 => counts.1 += 1,
            _ => counts.2 += 1,
        }
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let v = decode(x);
            for g in &gens {
                let mut w = g.apply(f, &v[..d]);
                w.extend(g.apply(f, &v[d..]));
                let y = encode(&w);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    Ok(OrbitCount { total: counts.0 + counts.1 + counts.2, breakdown: counts })
}

/// 2q+1 for n = 1, 2(q+1) for n ≥ 2.
pub fn orbit_count_formula(n: usize, q: u64) -> u64 {
    if n == 1 {
        2 * q + 1
    } else {
        2 * (q + 1)
    }
}

/// Compares the SvN character of H(h_{2n}) with the h'-model pulled back
/// along (v, a) ↦ (F v, ξ a), where F is block diagonal with a 2×2 block
/// satisfying ᵗF^{(q)} J F = ξ·1. Returns the matching ψ index on the h_{2n}
/// side when the characters agree.
pub fn check_form_change(n: usize, q: u64, psi_index: usize) -> Result<Option<usize>> {
    let skew = svn_rep_skew(n, q, psi_index)?;
    let ctx = skew.ctx.clone();
    let f = ctx.field();
    let xi = ctx.xi();
    let block = find_block(&ctx, xi).ok_or_else(|| Error::Verification("no 2×2 change of basis found".into()))?;
    // coordinates (i, n+i) of h' pair up with (2i, 2i+1) of h_{2n}
    let d = 2 * n;
    let mut fm = FMat::zeros(d, d);
    for i in 0..n {
        let (r, c) = ([i, n + i], [2 * i, 2 * i + 1]);
        for a in 0..2 {
            for bb in 0..2 {
                fm.set(r[a], c[bb], block.get(a, bb));
            }
        }
    }
    let hv = skew.form().clone();
    let herm = FormData::hermitian(&ctx, d);
    for v in ctx.vectors(d).iter().take(64) {
        for w in ctx.vectors(d).iter().take(64) {
            if hv.eval(&ctx, &fm.apply(f, v), &fm.apply(f, w)) != f.mul(xi, herm.eval(&ctx, v, w)) {
                return Err(Error::Verification("change of basis does not scale the form by ξ".into()));
            }
        }
    }
    let np = (ctx.p() as usize).pow(skew.heis.group.center_basis().len() as u32);
    for j in 1..np {
        let herm_model = svn_rep(d, q, j).map_err(|e| Error::Verification(e.to_string()))?;
        let h = &herm_model.heis;
        let mut ok = true;
        for i in 0..h.order() {
            let x = h.elem(i);
            let y = HeisElem { v: fm.apply(f, &x.v), a: f.mul(xi, x.a) };
            let yi = skew.heis.idx(&y).ok_or_else(|| Error::Verification("image outside H(h')".into()))?;
            if herm_model.svn.trace(i) != skew.svn.trace(yi) {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

fn find_block(ctx: &Fq2, xi: FFElem) -> Option<FMat> {
    let f = ctx.field();
    let j = FormData::skew(ctx, 1).gram;
    let target = FMat::scalar(f, 2, xi);
    let els = ctx.elements();
    for &a in els {
        for &b in els {
            for &c in els {
                for &d in els {
                    let mut m = FMat::zeros(2, 2);
                    m.set(0, 0, a);
                    m.set(0, 1, b);
                    m.set(1, 0, c);
                    m.set(1, 1, d);
                    if m.frob(f, ctx.r() as usize).transpose().mul(f, &j).mul(f, &m) == target {
                        return Some(m);
                    }
                }
            }
        }
    }
    None
}
