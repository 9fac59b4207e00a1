//! Stone–von Neumann representations of Heisenberg groups, their extension to
//! H ⋊ U normalized by Tr T_g = (-1)^d (-q)^{N(g)}, and the Weil
//! representation of U_n(F_q) with its isotypic pieces and branching.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::arith::lcm;
use crate::error::{invalid, Error, Result};
use crate::ff::FFElem;
use crate::fplin::for_each_combination;
use crate::groups::unitary::{unitary_group, MatGroup};
use crate::groups::{fixed_dim, Enumerated, FMat, FormData, FormKind, Fq2, HeisGroup};
use crate::rep::{
    central_isotypic, char_inner, extend_character, induce_rep, integer, solve_intertwiner, ClassFunction,
    HomCheck, MatrixRep,
};
use crate::{CycMat, CycNum};

/// Default search budget for group enumerations.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

/// A character of the center, given by its exponents (in F_p) on the
/// center's F_p-basis. Index 0 is trivial; indices follow lexicographic order
/// of the exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiChar {
    pub index: usize,
    pub exps: Vec<u32>,
}

/// χ_k(ζ^j) = ζ_{q+1}^{kj} on μ_{q+1} = ⟨ζ⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChiChar {
    pub k: u32,
}

/// All characters of the center in index order.
pub fn psi_enum(p: u32, r: u32) -> Vec<PsiChar> {
    let count = (p as usize).pow(r);
    (0..count)
        .map(|index| {
            let mut exps = vec![0u32; r as usize];
            let mut x = index;
            for e in exps.iter_mut().rev() {
                *e = (x % p as usize) as u32;
                x /= p as usize;
            }
            PsiChar { index, exps }
        })
        .collect()
}

/// Trace value (-1)^d (-q)^{N(g)}.
pub fn weil_trace_formula(d: usize, q: u64, fixed: usize) -> i64 {
    let s = if d % 2 == 0 { 1 } else { -1 };
    s * (-(q as i64)).pow(fixed as u32)
}

/// H(h) with its Stone–von Neumann representation for a chosen ψ.
pub struct HeisModel {
    pub ctx: Arc<Fq2>,
    pub heis: Arc<Enumerated<HeisGroup>>,
    pub svn: MatrixRep<HeisGroup>,
    pub psi: PsiChar,
    pub modulus: u32,
    center_coords: HashMap<FFElem, Vec<u32>>,
}

impl HeisModel {
    /// `extra` is folded into the cyclotomic modulus (lcm with exp H).
    pub fn new(ctx: Arc<Fq2>, form: FormData, psi_index: usize, extra: u64) -> Result<Self> {
        let hg = HeisGroup::new(ctx.clone(), form);
        let basis = hg.center_basis();
        let psis = psi_enum(ctx.p(), basis.len() as u32);
        let psi = psis
            .get(psi_index)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("ψ index {psi_index} out of range 1..{}", psis.len() - 1)))?;
        if psi.index == 0 {
            return invalid("ψ must be nontrivial");
        }
        let heis = Arc::new(Enumerated::new(hg, DEFAULT_BUDGET)?);
        let exp_h = if ctx.p() == 2 { 4 } else { ctx.p() as u64 };
        let modulus = lcm(exp_h, extra.max(1)) as u32;

        let f = ctx.field();
        let mut center_coords = HashMap::new();
        for_each_combination(ctx.p(), basis.len(), |c| {
            let mut a = f.zero();
            for (&ci, &b) in c.iter().zip(&basis) {
                a = f.add(a, f.scalar_mul(ci, b));
            }
            center_coords.insert(a, c.to_vec());
            true
        });

        let hgr = &heis.group;
        let z: Vec<(usize, u32)> = hgr
            .center()
            .iter()
            .map(|c| (heis.idx(c).unwrap(), psi_value(&center_coords, &psi, c.a, ctx.p(), modulus)))
            .collect();
        let lag: Vec<usize> =
            (0..heis.order()).filter(|&i| in_lagrangian(&ctx, &hgr.form, &heis.elem(i).v)).collect();
        let vals = extend_character(&heis, &z, &lag, modulus)?;
        let svn = induce_rep(heis.clone(), &lag, &vals, modulus)?;
        Ok(HeisModel { ctx, heis, svn, psi, modulus, center_coords })
    }

    pub fn form(&self) -> &FormData {
        &self.heis.group.form
    }

    pub fn degree(&self) -> usize {
        self.svn.degree
    }

    /// ψ(a) as an exponent of ζ_N, for a in the center.
    pub fn psi_exponent(&self, a: FFElem) -> u32 {
        psi_value(&self.center_coords, &self.psi, a, self.ctx.p(), self.modulus)
    }

    /// Index map h ↦ g·h on H.
    pub fn action_map(&self, g: &FMat) -> Vec<usize> {
        (0..self.heis.order())
            .map(|i| self.heis.idx(&self.heis.group.act(g, self.heis.elem(i))).expect("isometry acts on H"))
            .collect()
    }

    /// Index map h ↦ h^{(q)} (entrywise Frobenius on (v, a)).
    pub fn frobenius_map(&self) -> Vec<usize> {
        (0..self.heis.order())
            .map(|i| {
                let e = self.heis.elem(i);
                let img = crate::groups::HeisElem {
                    v: e.v.iter().map(|&x| self.ctx.conj(x)).collect(),
                    a: self.ctx.conj(e.a),
                };
                self.heis.idx(&img).expect("Frobenius preserves H")
            })
            .collect()
    }

    /// Normalized T_g with T_g ρ(h) = ρ(g·h) T_g and Tr T_g = (-1)^d (-q)^{N(g)}.
    pub fn intertwiner(&self, g: &FMat, seed: u64) -> Result<CycMat> {
        if !self.form().is_isometry(&self.ctx, g) {
            return invalid("matrix is not an isometry of the form");
        }
        let twisted = self.svn.pullback(&self.action_map(g));
        let t = solve_intertwiner(&self.svn, &twisted, seed)?;
        let target = weil_trace_formula(self.form().dim, self.ctx.q(), fixed_dim(&self.ctx, g));
        normalize_trace(&t, target, self.modulus)
    }

    /// T on a whole enumerated subgroup of U: generators by intertwiner
    /// solving, the rest by propagation; all traces then checked.
    pub fn weil_on(&self, group: Arc<Enumerated<MatGroup>>, seed: u64) -> Result<MatrixRep<MatGroup>> {
        let imgs: Vec<CycMat> =
            group.generators().iter().map(|g| self.intertwiner(g, seed)).collect::<Result<_>>()?;
        let rep = MatrixRep::from_generators(group.clone(), self.modulus, &imgs);
        for i in 0..group.order() {
            let want = weil_trace_formula(self.form().dim, self.ctx.q(), fixed_dim(&self.ctx, group.elem(i)));
            if integer(&rep.trace(i)) != Some(want) {
                return Err(Error::Verification(format!(
                    "Tr T_g = {} but the trace formula gives {want}",
                    rep.trace(i)
                )));
            }
        }
        Ok(rep)
    }
}

fn psi_value(coords: &HashMap<FFElem, Vec<u32>>, psi: &PsiChar, a: FFElem, p: u32, modulus: u32) -> u32 {
    let c = &coords[&a];
    let s: u32 = c.iter().zip(&psi.exps).map(|(x, e)| x * e).sum::<u32>() % p;
    s * (modulus / p)
}

/// Real points F_q^n for h_n; the span of the first n coordinates for h'.
fn in_lagrangian(ctx: &Fq2, form: &FormData, v: &[FFElem]) -> bool {
    match form.kind {
        FormKind::Hermitian => v.iter().all(|&x| ctx.conj(x) == x),
        FormKind::SkewSplit => v[form.n..].iter().all(|x| x.0 == 0),
    }
}

/// Rescales T so that its trace equals `target`.
pub fn normalize_trace(t: &CycMat, target: i64, modulus: u32) -> Result<CycMat> {
    let tr = t.trace();
    let inv = tr.inv().ok_or_else(|| Error::Verification("intertwiner has zero trace".into()))?;
    let c = &CycNum::from_scalar(modulus, BigRational::from_integer(target.into())) * &inv;
    Ok(t.scale(&c))
}

/// The Weil representation of U(V, h_n) attached to ψ.
pub struct WeilRep {
    pub n: usize,
    pub q: u64,
    pub model: HeisModel,
    pub u: Arc<Enumerated<MatGroup>>,
    pub t: MatrixRep<MatGroup>,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct WeilOptions {
    pub seed: u64,
    pub budget: u64,
}

impl Default for WeilOptions {
    fn default() -> Self {
        WeilOptions { seed: 0, budget: DEFAULT_BUDGET }
    }
}

/// Stone–von Neumann representation of H(h_n) for the ψ with index `psi_index`.
pub fn svn_rep(n: usize, q: u64, psi_index: usize) -> Result<HeisModel> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let ctx = Fq2::new(q)?;
    let form = FormData::hermitian(&ctx, n);
    HeisModel::new(ctx, form, psi_index, q + 1)
}

/// Heisenberg–Weil extension to HU(h_n).
pub fn hw_extend(n: usize, q: u64, psi_index: usize, opts: WeilOptions) -> Result<WeilRep> {
    let model = svn_rep(n, q, psi_index)?;
    let u = Arc::new(unitary_group(model.ctx.clone(), model.form(), opts.budget)?);
    let t = model.weil_on(u.clone(), opts.seed)?;
    Ok(WeilRep { n, q, model, u, t, seed: opts.seed })
}

impl WeilRep {
    /// ρ(h) T_g for h ∈ H, g ∈ U (element indices).
    pub fn hu_matrix(&self, h: usize, g: usize) -> CycMat {
        let th = self.t.dense_ref(g).expect("dense Weil matrices");
        self.model.svn.mono(h).expect("monomial SvN model").mul_dense(th)
    }

    /// Checks T is a homomorphism on U. Together with the intertwining
    /// relation on generators (checked when T was solved) this makes
    /// (h, g) ↦ ρ(h) T_g a homomorphism of H ⋊ U.
    pub fn verify(&self) -> Result<HomCheck> {
        self.t.verify_homomorphism(self.seed)
    }

    /// Scalar matrices ζ^j I in U as (element index, j).
    pub fn center_elements(&self) -> Vec<(usize, u32)> {
        let f = self.model.ctx.field();
        self.model
            .ctx
            .mu()
            .iter()
            .enumerate()
            .map(|(j, &z)| (self.u.idx(&FMat::scalar(f, self.n, z)).expect("scalars are unitary"), j as u32))
            .collect()
    }

    /// (dim, projector) of ω[χ].
    pub fn isotypic(&self, chi: ChiChar) -> Result<(u64, CycMat)> {
        let nm = self.model.modulus;
        let step = nm / (self.q as u32 + 1);
        let (z, vals): (Vec<usize>, Vec<u32>) = self
            .center_elements()
            .into_iter()
            .map(|(i, j)| (i, (step * ((chi.k * j) % (self.q as u32 + 1))) % nm))
            .unzip();
        central_isotypic(&self.t, &z, &vals)
    }

    /// g ↦ Tr(P T_g) on U.
    pub fn piece_character(&self, p: &CycMat) -> ClassFunction {
        ClassFunction::new(
            (0..self.u.order()).map(|i| p.trace_of_product(self.t.dense_ref(i).unwrap())).collect(),
        )
    }

    pub fn chars(&self) -> Vec<ChiChar> {
        (0..=self.q as u32).map(|k| ChiChar { k }).collect()
    }
}

/// χ ↦ dim ω_{U_n}[χ], each nonzero piece checked irreducible.
pub fn weil_isotypic_dims(w: &WeilRep) -> Result<Vec<(ChiChar, u64)>> {
    let mut out = Vec::new();
    for chi in w.chars() {
        let (d, p) = w.isotypic(chi)?;
        if d > 0 {
            let c = w.piece_character(&p);
            if !char_inner(&c, &c)?.is_one() {
                return Err(Error::Verification(format!("ω[χ_{}] is reducible", chi.k)));
            }
        }
        out.push((chi, d));
    }
    Ok(out)
}

/// Closed form of dim ω_{U_n}[χ].
pub fn isotypic_dim_formula(n: usize, q: u64, trivial: bool) -> i64 {
    let (q, s) = (q as i64, if n % 2 == 0 { 1 } else { -1 });
    let qn = q.pow(n as u32);
    if trivial {
        (qn + s * q) / (q + 1)
    } else {
        (qn - s) / (q + 1)
    }
}

/// Multiplicities of ω_{U_n}[χ'] in ω_{U_{n+1}}[χ] restricted along g ↦ diag(g, 1).
pub struct Branching {
    pub chi: ChiChar,
    pub restricted_dim: u64,
    pub multiplicities: Vec<(ChiChar, i64, u64)>,
}

pub fn branch(small: &WeilRep, big: &WeilRep, chi: ChiChar) -> Result<Branching> {
    if big.n != small.n + 1 || big.q != small.q {
        return invalid("branching needs Weil representations of U_n and U_{n+1}");
    }
    let f = small.model.ctx.field();
    let (restricted_dim, p) = big.isotypic(chi)?;
    let embed: Vec<usize> = (0..small.u.order())
        .map(|i| {
            let g = small.u.elem(i);
            let mut m = FMat::identity(f, big.n);
            for r in 0..small.n {
                for c in 0..small.n {
                    m.set(r, c, g.get(r, c));
                }
            }
            big.u.idx(&m).expect("diag(g, 1) is unitary")
        })
        .collect();
    let res = ClassFunction::new(embed.iter().map(|&j| p.trace_of_product(big.t.dense_ref(j).unwrap())).collect());
    let res = align(&res, small.model.modulus);
    let mut multiplicities = Vec::new();
    for c2 in small.chars() {
        let (d2, p2) = small.isotypic(c2)?;
        let m = if d2 == 0 {
            0
        } else {
            let pc = small.piece_character(&p2);
            integer(&char_inner(&res, &pc)?)
                .ok_or_else(|| Error::Verification("non-integral multiplicity".into()))?
        };
        multiplicities.push((c2, m, d2));
    }
    Ok(Branching { chi, restricted_dim, multiplicities })
}

fn align(c: &ClassFunction, n: u32) -> ClassFunction {
    ClassFunction::new(
        c.values
            .iter()
            .map(|v| if v.modulus() == n { v.clone() } else { v.embed(lcm(v.modulus() as u64, n as u64) as u32).unwrap() })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_order() {
        let ps = psi_enum(2, 2);
        assert_eq!(ps[0].exps, vec![0, 0]);
        assert_eq!(ps[1].exps, vec![0, 1]);
        assert_eq!(ps[2].exps, vec![1, 0]);
        assert_eq!(psi_enum(3, 1).len(), 3);
    }

    #[test]
    fn svn_basics() {
        for (n, q) in [(1usize, 2u64), (1, 3), (2, 2)] {
            let m = svn_rep(n, q, 1).unwrap();
            assert_eq!(m.degree() as u64, q.pow(n as u32));
            let chi = m.svn.character();
            assert!(char_inner(&chi, &chi).unwrap().is_one());
            for z in m.heis.group.center() {
                let i = m.heis.idx(&z).unwrap();
                let e = m.psi_exponent(z.a);
                let want = &CycNum::root(m.modulus, e as i64).unwrap() * &CycNum::from_int(m.modulus, m.degree() as i64);
                assert_eq!(m.svn.trace(i), want);
            }
        }
        assert!(svn_rep(1, 2, 0).is_err());
    }

    #[test]
    fn weil_u1_and_u2() {
        for (n, q) in [(1usize, 2u64), (1, 3), (2, 2)] {
            let w = hw_extend(n, q, 1, WeilOptions::default()).unwrap();
            assert!(w.verify().unwrap().exhaustive);
            let dims = weil_isotypic_dims(&w).unwrap();
            for (chi, d) in dims {
                assert_eq!(d as i64, isotypic_dim_formula(n, q, chi.k == 0));
            }
            // HU product on a few pairs
            let h = &w.model.heis;
            let g0 = w.u.generators()[0].clone();
            let gi = w.u.idx(&g0).unwrap();
            for hi in (0..h.order()).step_by(3) {
                let gh = w.model.action_map(&g0)[hi];
                let lhs = w.t.dense(gi).mul(&w.model.svn.dense(hi));
                let rhs = w.model.svn.dense(gh).mul(&w.t.dense(gi));
                assert!(lhs == rhs);
            }
        }
    }

    #[test]
    fn trace_examples() {
        let w = hw_extend(2, 2, 1, WeilOptions::default()).unwrap();
        let f = w.model.ctx.field();
        let mut swap = FMat::zeros(2, 2);
        swap.set(0, 1, f.one());
        swap.set(1, 0, f.one());
        assert_eq!(integer(&w.t.trace(w.u.idx(&swap).unwrap())), Some(-2));
        let mu = w.model.ctx.mu();
        let mut d = FMat::identity(f, 2);
        d.set(0, 0, mu[1]);
        d.set(1, 1, mu[2]);
        assert_eq!(integer(&w.t.trace(w.u.idx(&d).unwrap())), Some(1));
        let id = FMat::identity(f, 2);
        assert_eq!(integer(&w.t.trace(w.u.idx(&id).unwrap())), Some(4));
    }

    #[test]
    fn branching_one_to_two() {
        let s = hw_extend(1, 2, 1, WeilOptions::default()).unwrap();
        let b = hw_extend(2, 2, 1, WeilOptions::default()).unwrap();
        for chi in b.chars() {
            let br = branch(&s, &b, chi).unwrap();
            let total: u64 = br.multiplicities.iter().map(|&(_, m, d)| m as u64 * d).sum();
            assert_eq!(total, br.restricted_dim);
            for (c2, m, d) in br.multiplicities {
                if d > 0 {
                    assert_eq!(m, (c2 != chi) as i64);
                }
            }
        }
    }
}
