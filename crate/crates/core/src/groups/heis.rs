//! The Heisenberg group H(h) = {(v, a) : a + ε a^q = h(v, v)}.

use std::sync::Arc;

use crate::ff::FFElem;

use super::fmat::FMat;
use super::forms::{FormData, Fq2};
use super::FiniteGroup;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HeisElem {
    pub v: Vec<FFElem>,
    pub a: FFElem,
}

/// (v, a)(v', a') = (v + v', a + a' + h(v, v')).
pub fn heis_mul(ctx: &Fq2, form: &FormData, x: &HeisElem, y: &HeisElem) -> HeisElem {
    let f = ctx.field();
    let v = x.v.iter().zip(&y.v).map(|(&a, &b)| f.add(a, b)).collect();
    let a = f.add(f.add(x.a, y.a), form.eval(ctx, &x.v, &y.v));
    HeisElem { v, a }
}

#[derive(Clone, Debug)]
pub struct HeisGroup {
    pub ctx: Arc<Fq2>,
    pub form: FormData,
}

impl HeisGroup {
    pub fn new(ctx: Arc<Fq2>, form: FormData) -> Self {
        HeisGroup { ctx, form }
    }

    pub fn dim(&self) -> usize {
        self.form.dim
    }

    /// q^{2d+1}.
    pub fn order(&self) -> u128 {
        (self.ctx.q() as u128).pow(2 * self.dim() as u32 + 1)
    }

    pub fn contains(&self, x: &HeisElem) -> bool {
        x.v.len() == self.dim() && self.form.fiber(&self.ctx, self.hvv(&x.v)).contains(&x.a)
    }

    fn hvv(&self, v: &[FFElem]) -> FFElem {
        self.form.eval(&self.ctx, v, v)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Vec<HeisElem> {
        let mut out = Vec::new();
        for v in self.ctx.vectors(self.dim()) {
            for a in self.form.fiber(&self.ctx, self.hvv(&v)) {
                out.push(HeisElem { v: v.clone(), a });
            }
        }
        out
    }

    /// Center values {a : a + ε a^q = 0}, canonical order.
    pub fn center_values(&self) -> Vec<FFElem> {
        self.form.fiber(&self.ctx, self.ctx.field().zero())
    }

    pub fn center(&self) -> Vec<HeisElem> {
        let z = vec![FFElem(0); self.dim()];
        self.center_values().into_iter().map(|a| HeisElem { v: z.clone(), a }).collect()
    }

    /// Reduced-echelon F_p-basis of the center values.
    pub fn center_basis(&self) -> Vec<FFElem> {
        let f = self.ctx.field();
        let eps = self.form.eps;
        let m = f.linear_matrix(|a| {
            let aq = self.ctx.conj(a);
            if eps > 0 {
                f.add(a, aq)
            } else {
                f.sub(a, aq)
            }
        });
        m.kernel().iter().map(|d| f.from_digits(d)).collect()
    }

    pub fn central(&self, a: FFElem) -> HeisElem {
        HeisElem { v: vec![FFElem(0); self.dim()], a }
    }

    /// The U-action g·(v, a) = (g v, a).
    pub fn act(&self, g: &FMat, x: &HeisElem) -> HeisElem {
        HeisElem { v: g.apply(self.ctx.field(), &x.v), a: x.a }
    }

    /// Smallest a with (v, a) ∈ H.
    pub fn lift(&self, v: &[FFElem]) -> HeisElem {
        let a = self.form.fiber(&self.ctx, self.hvv(v))[0];
        HeisElem { v: v.to_vec(), a }
    }
}

impl FiniteGroup for HeisGroup {
    type Elem = HeisElem;

    fn identity(&self) -> HeisElem {
        self.central(FFElem(0))
    }

    fn mul(&self, a: &HeisElem, b: &HeisElem) -> HeisElem {
        heis_mul(&self.ctx, &self.form, a, b)
    }

    fn inv(&self, x: &HeisElem) -> HeisElem {
        let f = self.ctx.field();
        HeisElem { v: x.v.iter().map(|&c| f.neg(c)).collect(), a: f.sub(self.hvv(&x.v), x.a) }
    }

    /// Lifts of x^j e_i for an F_p-basis x^j of F_{q^2}, then the center basis.
    fn generators(&self) -> Vec<HeisElem> {
        let f = self.ctx.field();
        let k = f.degree();
        let mut gens = Vec::new();
        for i in 0..self.dim() {
            for j in 0..k {
                let mut d = vec![0u32; k];
                d[j] = 1;
                let mut v = vec![FFElem(0); self.dim()];
                v[i] = f.from_digits(&d);
                gens.push(self.lift(&v));
            }
        }
        gens.extend(self.center_basis().into_iter().map(|a| self.central(a)));
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Enumerated;

    #[test]
    fn product_example_q2() {
        let ctx = Fq2::new(2).unwrap();
        let f = ctx.field();
        let h = HeisGroup::new(ctx.clone(), FormData::hermitian(&ctx, 1));
        let w = f.gen();
        let x = HeisElem { v: vec![f.one()], a: w };
        assert!(h.contains(&x));
        assert_eq!(h.mul(&x, &x), HeisElem { v: vec![f.zero()], a: f.one() });
    }

    #[test]
    fn orders_centers_and_closure() {
        for (q, n) in [(2u64, 1usize), (2, 2), (3, 1)] {
            let ctx = Fq2::new(q).unwrap();
            for form in [FormData::hermitian(&ctx, n), FormData::skew(&ctx, 1)] {
                let h = HeisGroup::new(ctx.clone(), form);
                let elems = h.elements();
                assert_eq!(elems.len() as u128, h.order());
                assert!(elems.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(h.center().len() as u64, q);
                let e = Enumerated::new(h.clone(), 1 << 20).unwrap();
                assert_eq!(e.elements(), &elems[..]);
                for x in elems.iter().step_by(3) {
                    assert_eq!(h.mul(x, &h.inv(x)), h.identity());
                    for z in h.center() {
                        assert_eq!(h.mul(x, &z), h.mul(&z, x));
                    }
                }
            }
        }
    }

    #[test]
    fn exponent_q2_n1() {
        let ctx = Fq2::new(2).unwrap();
        let h = HeisGroup::new(ctx.clone(), FormData::hermitian(&ctx, 1));
        assert_eq!(Enumerated::new(h, 1 << 10).unwrap().exponent(), 4);
    }
}
