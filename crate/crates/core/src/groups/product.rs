//! Direct products, H ⋊ (U ⋊ Gal), and the dual-pair embedding into U(h') ⋊ Z/2.

use crate::error::{invalid, Result};
use crate::ff::FFElem;

use super::fmat::FMat;
use super::forms::Fq2;
use super::heis::{HeisElem, HeisGroup};
use super::symplectic::is_symplectic;
use super::FiniteGroup;

#[derive(Clone, Debug)]
pub struct Product<A, B>(pub A, pub B);

impl<A: FiniteGroup, B: FiniteGroup> FiniteGroup for Product<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn identity(&self) -> Self::Elem {
        (self.0.identity(), self.1.identity())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.0.mul(&a.0, &b.0), self.1.mul(&a.1, &b.1))
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (self.0.inv(&a.0), self.1.inv(&a.1))
    }

    fn generators(&self) -> Vec<Self::Elem> {
        let (ia, ib) = (self.0.identity(), self.1.identity());
        let mut g: Vec<Self::Elem> = self.0.generators().into_iter().map(|a| (a, ib.clone())).collect();
        g.extend(self.1.generators().into_iter().map(|b| (ia.clone(), b)));
        g
    }
}

/// (h, g, k) standing for h · g · F^k, F the entrywise q-power.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SemiElem {
    pub h: HeisElem,
    pub g: FMat,
    pub k: u8,
}

/// H(h) ⋊ (U(h) ⋊ Gal) restricted to the subgroup generated by `gens`.
#[derive(Clone, Debug)]
pub struct SemiGroup {
    pub heis: HeisGroup,
    pub gens: Vec<SemiElem>,
}

pub type HUGroup = SemiGroup;

impl SemiGroup {
    /// HU(h) generated by H and the given isometries.
    pub fn hu(heis: HeisGroup, ugens: &[FMat]) -> Self {
        let id = FMat::identity(heis.ctx.field(), heis.dim());
        let mut gens: Vec<SemiElem> =
            heis.generators().into_iter().map(|h| SemiElem { h, g: id.clone(), k: 0 }).collect();
        gens.extend(ugens.iter().map(|g| SemiElem { h: heis.identity(), g: g.clone(), k: 0 }));
        SemiGroup { heis, gens }
    }

    /// HU(h) ⋊ Z/2; only for Galois-stable forms.
    pub fn hu_gal(heis: HeisGroup, ugens: &[FMat]) -> Result<Self> {
        if !heis.form.is_galois_stable(&heis.ctx) {
            return invalid("Frobenius component needs a Galois-stable form");
        }
        let mut s = Self::hu(heis, ugens);
        let id = FMat::identity(s.heis.ctx.field(), s.heis.dim());
        s.gens.push(SemiElem { h: s.heis.identity(), g: id, k: 1 });
        Ok(s)
    }

    fn sigma_h(&self, x: &HeisElem, k: u8) -> HeisElem {
        if k == 0 {
            return x.clone();
        }
        let c = &self.heis.ctx;
        HeisElem { v: x.v.iter().map(|&a| c.conj(a)).collect(), a: c.conj(x.a) }
    }

    fn sigma_g(&self, g: &FMat, k: u8) -> FMat {
        if k == 0 {
            g.clone()
        } else {
            g.frob(self.heis.ctx.field(), self.heis.ctx.r() as usize)
        }
    }
}

impl FiniteGroup for SemiGroup {
    type Elem = SemiElem;

    fn identity(&self) -> SemiElem {
        SemiElem {
            h: self.heis.identity(),
            g: FMat::identity(self.heis.ctx.field(), self.heis.dim()),
            k: 0,
        }
    }

    fn mul(&self, a: &SemiElem, b: &SemiElem) -> SemiElem {
        let f = self.heis.ctx.field();
        let hb = self.heis.act(&a.g, &self.sigma_h(&b.h, a.k));
        SemiElem {
            h: self.heis.mul(&a.h, &hb),
            g: a.g.mul(f, &self.sigma_g(&b.g, a.k)),
            k: a.k ^ b.k,
        }
    }

    fn inv(&self, a: &SemiElem) -> SemiElem {
        let f = self.heis.ctx.field();
        let gi = a.g.inverse(f).expect("invertible");
        let h = self.heis.act(&gi, &self.heis.inv(&a.h));
        SemiElem { h: self.sigma_h(&h, a.k), g: self.sigma_g(&gi, a.k), k: a.k }
    }

    fn generators(&self) -> Vec<SemiElem> {
        self.gens.clone()
    }
}

/// (g, ξ, k) ↦ (ξ g) F^k in U(h') ⋊ Z/2.
pub fn embed_sp_mu(ctx: &Fq2, g: &FMat, xi: FFElem, k: u8) -> Result<SemiElem> {
    let f = ctx.field();
    if !is_symplectic(ctx, g) {
        return invalid("matrix is not symplectic");
    }
    if xi.0 == 0 || f.pow(xi, ctx.q() as u128 + 1) != f.one() {
        return invalid("scalar is not in μ_{q+1}");
    }
    if k > 1 {
        return invalid("Frobenius exponent must be 0 or 1");
    }
    Ok(SemiElem {
        h: HeisElem { v: vec![FFElem(0); g.rows], a: FFElem(0) },
        g: g.scale(f, xi),
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::forms::FormData;
    use crate::groups::orth::{OrthElem, OrthGroup};
    use crate::groups::symplectic::sp_enumerate;
    use crate::groups::unitary::unitary_enumerate;
    use crate::groups::Enumerated;

    #[test]
    fn hu_is_a_group_of_the_right_order() {
        let ctx = Fq2::new(2).unwrap();
        let form = FormData::hermitian(&ctx, 1);
        let u = unitary_enumerate(&ctx, &form, 1000).unwrap();
        let heis = HeisGroup::new(ctx.clone(), form);
        let g = SemiGroup::hu(heis.clone(), &u);
        let e = Enumerated::new(g.clone(), 10_000).unwrap();
        assert_eq!(e.order(), 8 * 3);
        for x in e.elements() {
            assert_eq!(g.mul(x, &g.inv(x)), g.identity());
        }
        let gg = SemiGroup::hu_gal(heis, &u).unwrap();
        let e2 = Enumerated::new(gg.clone(), 10_000).unwrap();
        assert_eq!(e2.order(), 48);
        for x in e2.elements().iter().step_by(5) {
            assert_eq!(gg.mul(&gg.inv(x), x), gg.identity());
        }
    }

    #[test]
    fn embedding_is_a_homomorphism_into_isometries() {
        for q in [2u64, 3] {
            let ctx = Fq2::new(q).unwrap();
            let sp = sp_enumerate(ctx.clone(), 1, 1 << 16).unwrap();
            let form = FormData::skew(&ctx, 1);
            let semi = SemiGroup { heis: HeisGroup::new(ctx.clone(), form.clone()), gens: vec![] };
            let o = OrthGroup { q };
            let mu = ctx.mu();
            let img = |g: &FMat, x: &OrthElem| embed_sp_mu(&ctx, g, mu[x.z as usize], x.k).unwrap();
            let os = o.elements();
            for a in sp.elements().iter().step_by(3) {
                for b in sp.elements().iter().step_by(5) {
                    for x in &os {
                        for y in &os {
                            let lhs = img(&a.mul(ctx.field(), b), &o.mul(x, y));
                            let rhs = semi.mul(&img(a, x), &img(b, y));
                            assert_eq!(lhs, rhs);
                            assert!(form.is_isometry(&ctx, &lhs.g));
                        }
                    }
                }
            }
            let id = FMat::identity(ctx.field(), 2);
            assert_eq!(embed_sp_mu(&ctx, &id, ctx.field().one(), 0).unwrap(), semi.identity());
            let mut bad = id.clone();
            bad.set(0, 1, ctx.field().gen());
            assert!(embed_sp_mu(&ctx, &bad, ctx.field().one(), 0).is_err());
        }
    }
}
