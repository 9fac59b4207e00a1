//! Isometry groups of the forms on F_{q^2}^d, enumerated column by column.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::FFElem;

use super::fmat::FMat;
use super::forms::{FormData, Fq2};
use super::{Enumerated, FiniteGroup};

/// A matrix group over F_{q^2} given by generators.
#[derive(Clone, Debug)]
pub struct MatGroup {
    pub ctx: Arc<Fq2>,
    pub dim: usize,
    pub gens: Vec<FMat>,
}

impl FiniteGroup for MatGroup {
    type Elem = FMat;

    fn identity(&self) -> FMat {
        FMat::identity(self.ctx.field(), self.dim)
    }

    fn mul(&self, a: &FMat, b: &FMat) -> FMat {
        a.mul(self.ctx.field(), b)
    }

    fn inv(&self, a: &FMat) -> FMat {
        a.inverse(self.ctx.field()).expect("group elements are invertible")
    }

    fn generators(&self) -> Vec<FMat> {
        self.gens.clone()
    }
}

/// |U_d(q)| = q^{d(d-1)/2} Π_{i=1}^{d} (q^i - (-1)^i).
pub fn unitary_order(d: u32, q: u64) -> u128 {
    let q = q as i128;
    let mut o: i128 = q.pow(d * (d.saturating_sub(1)) / 2);
    for i in 1..=d {
        let s = if i % 2 == 0 { 1 } else { -1 };
        o *= q.pow(i) - s;
    }
    o as u128
}

/// All isometries of `form`, in lexicographic order of their column lists.
/// `budget` bounds the number of search nodes.
pub fn unitary_enumerate(ctx: &Fq2, form: &FormData, budget: u64) -> Result<Vec<FMat>> {
    let d = form.dim;
    let vecs = ctx.vectors(d);
    let norms: Vec<FFElem> = vecs.iter().map(|v| form.eval(ctx, v, v)).collect();
    // candidates per column: vectors with the right self-pairing
    let cands: Vec<Vec<usize>> = (0..d)
        .map(|j| (0..vecs.len()).filter(|&k| norms[k] == form.gram.get(j, j)).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(d);
    let mut nodes = 0u64;

    fn rec(
        ctx: &Fq2,
        form: &FormData,
        vecs: &[Vec<FFElem>],
        cands: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<FMat>,
        nodes: &mut u64,
        budget: u64,
    ) -> Result<()> {
        let j = chosen.len();
        if j == form.dim {
            let cols: Vec<Vec<FFElem>> = chosen.iter().map(|&k| vecs[k].clone()).collect();
            out.push(FMat::from_columns(&cols));
            return Ok(());
        }
        for &k in &cands[j] {
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Budget {
                    what: "isometry enumeration".into(),
                    needed: *nodes as u128,
                    limit: budget as u128,
                });
            }
            let w = &vecs[k];
            if chosen
                .iter()
                .enumerate()
                .all(|(i, &c)| form.eval(ctx, &vecs[c], w) == form.gram.get(i, j))
            {
                chosen.push(k);
                rec(ctx, form, vecs, cands, chosen, out, nodes, budget)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    rec(ctx, form, &vecs, &cands, &mut chosen, &mut out, &mut nodes, budget)?;
    Ok(out)
}

/// The isometry group of `form` as an enumerated group with greedy generators.
pub fn unitary_group(ctx: Arc<Fq2>, form: &FormData, budget: u64) -> Result<Enumerated<MatGroup>> {
    let elems = unitary_enumerate(&ctx, form, budget)?;
    let g = MatGroup { ctx, dim: form.dim, gens: Vec::new() };
    let mut e = Enumerated::from_elements(g, elems);
    e.group.gens = e.generators().to_vec();
    Ok(e)
}

/// dim ker(g - 1) over F_{q^2}.
pub fn fixed_dim(ctx: &Fq2, g: &FMat) -> usize {
    g.sub_identity(ctx.field()).nullity(ctx.field())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formula_values() {
        assert_eq!(unitary_order(1, 2), 3);
        assert_eq!(unitary_order(2, 2), 18);
        assert_eq!(unitary_order(2, 3), 96);
        assert_eq!(unitary_order(3, 2), 648);
        assert_eq!(unitary_order(4, 2), 77760);
    }

    #[test]
    fn small_unitary_groups() {
        for (q, n, want) in [(2u64, 1usize, 3usize), (3, 1, 4), (2, 2, 18), (3, 2, 96), (2, 3, 648)] {
            let ctx = Fq2::new(q).unwrap();
            let form = FormData::hermitian(&ctx, n);
            let els = unitary_enumerate(&ctx, &form, 1 << 30).unwrap();
            assert_eq!(els.len(), want);
            assert_eq!(els.len() as u128, unitary_order(n as u32, q));
            assert!(els.iter().all(|g| form.is_isometry(&ctx, g)));
        }
    }

    #[test]
    fn u2_2_exponent_and_generators() {
        let ctx = Fq2::new(2).unwrap();
        let g = unitary_group(ctx.clone(), &FormData::hermitian(&ctx, 2), 1 << 20).unwrap();
        assert_eq!(g.order(), 18);
        assert_eq!(g.exponent(), 6);
        let regen = Enumerated::new(g.group.clone(), 100).unwrap();
        assert_eq!(regen.order(), 18);
        assert_eq!(fixed_dim(&ctx, &FMat::identity(ctx.field(), 2)), 2);
    }

    #[test]
    fn u4_2_enumerates_to_formula() {
        let ctx = Fq2::new(2).unwrap();
        let els = unitary_enumerate(&ctx, &FormData::hermitian(&ctx, 4), 1 << 32).unwrap();
        assert_eq!(els.len(), 77760);
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = Fq2::new(2).unwrap();
        let r = unitary_enumerate(&ctx, &FormData::hermitian(&ctx, 3), 10);
        assert!(matches!(r, Err(Error::Budget { .. })));
    }
}
