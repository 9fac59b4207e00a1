//! The field F_{q^2} with its conjugation, and sesquilinear forms on F_{q^2}^d.

use std::sync::Arc;

use crate::error::Result;
use crate::ff::{ff_mu_enum, FFElem, FFTower, FField};

use super::fmat::FMat;

/// F_{q^2} together with the tower it came from.
#[derive(Debug)]
pub struct Fq2 {
    pub tower: FFTower,
    f: Arc<FField>,
    elems: Vec<FFElem>,
}

impl Fq2 {
    pub fn new(q: u64) -> Result<Arc<Self>> {
        let tower = FFTower::new(q)?;
        let f = tower.level(1)?;
        let elems = f.elements().collect();
        Ok(Arc::new(Fq2 { tower, f, elems }))
    }

    pub fn field(&self) -> &FField {
        &self.f
    }

    pub fn q(&self) -> u64 {
        self.tower.q()
    }

    pub fn p(&self) -> u32 {
        self.tower.p()
    }

    pub fn r(&self) -> u32 {
        self.tower.r()
    }

    /// x ↦ x^q.
    pub fn conj(&self, x: FFElem) -> FFElem {
        self.f.frob(x, self.r() as usize)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> &[FFElem] {
        &self.elems
    }

    /// F_q inside F_{q^2}, canonical order.
    pub fn fq_elements(&self) -> Vec<FFElem> {
        self.elems.iter().copied().filter(|&x| self.conj(x) == x).collect()
    }

    /// μ_{q+1} as powers of its fixed generator.
    pub fn mu(&self) -> Vec<FFElem> {
        ff_mu_enum(&self.f, self.q())
    }

    pub fn norm(&self, x: FFElem) -> FFElem {
        self.f.mul(x, self.conj(x))
    }

    /// First element (canonical order) with ξ^{q-1} = -1; equals 1 when p = 2.
    pub fn xi(&self) -> FFElem {
        let m1 = self.f.neg(self.f.one());
        *self
            .elems
            .iter()
            .find(|&&x| x.0 != 0 && self.f.pow(x, (self.q() - 1) as u128) == m1)
            .expect("F_{q^2} contains such an element")
    }

    /// All vectors of F_{q^2}^d in lexicographic order (coordinate 0 most significant).
    pub fn vectors(&self, d: usize) -> Vec<Vec<FFElem>> {
        let mut out: Vec<Vec<FFElem>> = vec![Vec::new()];
        for _ in 0..d {
            let mut next = Vec::with_capacity(out.len() * self.elems.len());
            for v in &out {
                for &x in &self.elems {
                    let mut w = v.clone();
                    w.push(x);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// h_n(v, w) = Σ v_i^q w_i on F_{q^2}^n.
    Hermitian,
    /// h'(v, w) = v^{(q)T} J w with J = [[0, I], [-I, 0]] on F_{q^2}^{2n}.
    SkewSplit,
}

/// A non-degenerate form h(v, w) = Σ v_i^q G_ij w_j with h(w, v) = ε h(v, w)^q.
#[derive(Clone, Debug)]
pub struct FormData {
    pub kind: FormKind,
    pub n: usize,
    pub dim: usize,
    pub eps: i32,
    pub gram: FMat,
}

impl FormData {
    pub fn hermitian(ctx: &Fq2, n: usize) -> Self {
        FormData {
            kind: FormKind::Hermitian,
            n,
            dim: n,
            eps: 1,
            gram: FMat::identity(ctx.field(), n),
        }
    }

    pub fn skew(ctx: &Fq2, n: usize) -> Self {
        let f = ctx.field();
        let mut g = FMat::zeros(2 * n, 2 * n);
        for i in 0..n {
            g.set(i, n + i, f.one());
            g.set(n + i, i, f.neg(f.one()));
        }
        FormData { kind: FormKind::SkewSplit, n, dim: 2 * n, eps: -1, gram: g }
    }

    pub fn eval(&self, ctx: &Fq2, v: &[FFElem], w: &[FFElem]) -> FFElem {
        let f = ctx.field();
        let mut s = f.zero();
        match self.kind {
            FormKind::Hermitian => {
                for (a, b) in v.iter().zip(w) {
                    if a.0 != 0 && b.0 != 0 {
                        s = f.add(s, f.mul(ctx.conj(*a), *b));
                    }
                }
            }
            FormKind::SkewSplit => {
                let n = self.n;
                for i in 0..n {
                    s = f.add(s, f.mul(ctx.conj(v[i]), w[n + i]));
                    s = f.sub(s, f.mul(ctx.conj(v[n + i]), w[i]));
                }
            }
        }
        s
    }

    /// g^{(q)T} G g = G.
    pub fn is_isometry(&self, ctx: &Fq2, g: &FMat) -> bool {
        let f = ctx.field();
        let gq = g.frob(f, ctx.r() as usize);
        gq.transpose().mul(f, &self.gram).mul(f, g) == self.gram
    }

    /// Whether entrywise x ↦ x^q preserves the form.
    pub fn is_galois_stable(&self, ctx: &Fq2) -> bool {
        self.gram.frob(ctx.field(), ctx.r() as usize) == self.gram
    }

    /// Elements a with a + ε a^q = c, canonical order.
    pub fn fiber(&self, ctx: &Fq2, c: FFElem) -> Vec<FFElem> {
        let f = ctx.field();
        ctx.elements()
            .iter()
            .copied()
            .filter(|&a| {
                let aq = ctx.conj(a);
                let t = if self.eps > 0 { f.add(a, aq) } else { f.sub(a, aq) };
                t == c
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_have_expected_symmetry() {
        for q in [2u64, 3, 4] {
            let ctx = Fq2::new(q).unwrap();
            let f = ctx.field();
            for form in [FormData::hermitian(&ctx, 2), FormData::skew(&ctx, 1)] {
                let vs = ctx.vectors(form.dim);
                for v in vs.iter().step_by(5) {
                    for w in vs.iter().step_by(7) {
                        let a = form.eval(&ctx, w, v);
                        let b = ctx.conj(form.eval(&ctx, v, w));
                        let b = if form.eps > 0 { b } else { f.neg(b) };
                        assert_eq!(a, b);
                    }
                }
                assert!(form.is_galois_stable(&ctx));
                assert!(form.is_isometry(&ctx, &FMat::identity(f, form.dim)));
            }
        }
    }

    #[test]
    fn xi_and_mu() {
        let ctx = Fq2::new(2).unwrap();
        assert_eq!(ctx.xi(), ctx.field().one());
        assert_eq!(ctx.mu().len(), 3);
        let ctx = Fq2::new(3).unwrap();
        let f = ctx.field();
        assert_eq!(f.pow(ctx.xi(), 2), f.neg(f.one()));
        assert_eq!(ctx.fq_elements().len(), 3);
        assert!(Fq2::new(6).is_err());
    }
}
