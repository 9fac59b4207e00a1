//! Sp_2n(F_q) = {g : ᵗg J g = J}, J = [[0, E], [-E, 0]], as matrices inside
//! GL_2n(F_{q^2}).

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::ff::FFElem;

use super::fmat::FMat;
use super::forms::Fq2;
use super::unitary::MatGroup;
use super::{closure, Enumerated};

pub type SpGroup = MatGroup;

pub fn sp_gram(ctx: &Fq2, n: usize) -> FMat {
    let f = ctx.field();
    let mut j = FMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        j.set(i, n + i, f.one());
        j.set(n + i, i, f.neg(f.one()));
    }
    j
}

/// Entries in F_q and ᵗg J g = J.
pub fn is_symplectic(ctx: &Fq2, g: &FMat) -> bool {
    let f = ctx.field();
    if g.rows != g.cols || g.rows % 2 == 1 || g.e.iter().any(|&x| ctx.conj(x) != x) {
        return false;
    }
    let j = sp_gram(ctx, g.rows / 2);
    g.transpose().mul(f, &j).mul(f, g) == j
}

/// |Sp_2n(F_q)| = q^{n^2} Π_{i=1}^{n} (q^{2i} - 1).
pub fn sp_order(n: u32, q: u64) -> u128 {
    let q = q as u128;
    (1..=n).fold(q.pow(n * n), |acc, i| acc * (q.pow(2 * i) - 1))
}

/// F_p-basis of F_q inside F_{q^2}.
fn fq_basis(ctx: &Fq2) -> Vec<FFElem> {
    let f = ctx.field();
    let m = f.linear_matrix(|a| f.sub(ctx.conj(a), a));
    m.kernel().iter().map(|d| f.from_digits(d)).collect()
}

/// Root-subgroup elements [[I, B], [0, I]], [[I, 0], [C, I]] (B, C symmetric
/// elementary) and diag(A, ᵗA^{-1}) (A = I + t E_ij), with t over an F_p-basis
/// of F_q; then greedily pruned to those that enlarge the generated subgroup.
pub fn sp_generators(ctx: &Arc<Fq2>, n: usize) -> Vec<FMat> {
    let f = ctx.field();
    let d = 2 * n;
    let mut raw = Vec::new();
    for &t in &fq_basis(ctx) {
        for i in 0..n {
            for j in i..n {
                let mut up = FMat::identity(f, d);
                let mut lo = FMat::identity(f, d);
                up.set(i, n + j, t);
                up.set(j, n + i, t);
                lo.set(n + i, j, t);
                lo.set(n + j, i, t);
                raw.push(up);
                raw.push(lo);
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut a = FMat::identity(f, d);
                    a.set(i, j, t);
                    a.set(n + j, n + i, f.neg(t));
                    raw.push(a);
                }
            }
        }
    }
    let target = sp_order(n as u32, ctx.q());
    let small = target <= 1 << 20;
    let mut grp = MatGroup { ctx: ctx.clone(), dim: d, gens: Vec::new() };
    let mut sub: HashSet<FMat> = HashSet::new();
    for m in raw {
        if small && sub.contains(&m) {
            continue;
        }
        grp.gens.push(m);
        if small {
            sub = closure(&grp, &grp.gens, u64::MAX).unwrap().into_iter().collect();
            if sub.len() as u128 == target {
                break;
            }
        }
    }
    grp.gens
}

pub fn sp_group(ctx: Arc<Fq2>, n: usize) -> MatGroup {
    let gens = sp_generators(&ctx, n);
    MatGroup { ctx, dim: 2 * n, gens }
}

pub fn sp_enumerate(ctx: Arc<Fq2>, n: usize, budget: u64) -> Result<Enumerated<MatGroup>> {
    if n == 0 {
        return invalid("Sp_0 is trivial; n must be positive");
    }
    Enumerated::new(sp_group(ctx, n), budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formula() {
        assert_eq!(sp_order(2, 2), 720);
        for (n, q) in [(1usize, 2u64), (1, 3), (2, 2), (1, 4)] {
            let ctx = Fq2::new(q).unwrap();
            let g = sp_enumerate(ctx.clone(), n, 1 << 22).unwrap();
            assert_eq!(g.order() as u128, sp_order(n as u32, q));
            assert!(g.elements().iter().all(|m| is_symplectic(&ctx, m)));
        }
    }

    #[test]
    fn membership_rejects_non_symplectic() {
        let ctx = Fq2::new(3).unwrap();
        let f = ctx.field();
        let mut m = FMat::identity(f, 2);
        m.set(0, 0, f.from_int(2));
        assert!(!is_symplectic(&ctx, &m));
        assert!(is_symplectic(&ctx, &sp_gram(&ctx, 1)));
    }
}
