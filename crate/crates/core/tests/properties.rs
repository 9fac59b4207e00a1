use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use weil_core::groups::{
    fixed_dim, unitary::unitary_group, Enumerated, FiniteGroup, FormData, Fq2, HeisGroup, MatGroup,
};
use weil_core::heis_weil::{hw_extend, psi_enum, weil_trace_formula, ChiChar, WeilOptions, WeilRep};
use weil_core::lusztig::{mn_char, Partition};
use weil_core::rep::integer;
use weil_core::varieties::{
    fermat_x, isotypic_lefschetz, translation_group, twisted_count, twisted_count_direct, TwistTable,
};
use weil_core::CycNum;

const B: u128 = 1 << 26;

fn weil_u2_q3() -> &'static WeilRep {
    static W: OnceLock<WeilRep> = OnceLock::new();
    W.get_or_init(|| hw_extend(2, 3, 1, WeilOptions::default()).unwrap())
}

fn u2(q: u64) -> Arc<Enumerated<MatGroup>> {
    let ctx = Fq2::new(q).unwrap();
    Arc::new(unitary_group(ctx.clone(), &FormData::hermitian(&ctx, 2), 1 << 20).unwrap())
}

fn conjugate(p: &Partition) -> Partition {
    let parts = p.parts();
    let cols = parts.first().copied().unwrap_or(0);
    Partition::new((0..cols).map(|j| parts.iter().filter(|&&x| x > j).count()).collect())
}

/// n! / Π hooks.
fn hook_count(p: &Partition) -> i64 {
    let parts = p.parts();
    let fact: i128 = (1..=p.weight() as i128).product();
    let hooks: i128 = parts
        .iter()
        .enumerate()
        .flat_map(|(i, &r)| (0..r).map(move |j| (r - j + parts[i + 1..].iter().filter(|&&x| x > j).count()) as i128))
        .product();
    (fact / hooks) as i64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_conjugation(qi in 0usize..7, i in 0usize..1000, j in 0usize..1000) {
        let q = [2u64, 3, 4, 5, 7, 8, 9][qi];
        let ctx = Fq2::new(q).unwrap();
        let f = ctx.field();
        let els = ctx.elements();
        let (x, y) = (els[i % els.len()], els[j % els.len()]);
        if !f.is_zero(x) {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
        prop_assert_eq!(ctx.conj(f.mul(x, y)), f.mul(ctx.conj(x), ctx.conj(y)));
        prop_assert_eq!(ctx.conj(f.add(x, y)), f.add(ctx.conj(x), ctx.conj(y)));
        prop_assert_eq!(ctx.conj(ctx.conj(x)), x);
        prop_assert_eq!(ctx.conj(x) == x, ctx.fq_elements().contains(&x));
    }

    #[test]
    fn heisenberg_associative(qi in 0usize..2, a in 0usize..4096, b in 0usize..4096, c in 0usize..4096) {
        let q = [3u64, 4][qi];
        let ctx = Fq2::new(q).unwrap();
        let h = HeisGroup::new(ctx.clone(), FormData::hermitian(&ctx, 2));
        let els = h.elements();
        let (x, y, z) = (&els[a % els.len()], &els[b % els.len()], &els[c % els.len()]);
        prop_assert_eq!(h.mul(&h.mul(x, y), z), h.mul(x, &h.mul(y, z)));
        prop_assert!(h.contains(&h.mul(x, y)));
        prop_assert_eq!(h.mul(x, &h.inv(x)), h.identity());
    }

    #[test]
    fn weil_random_pairs(a in 0usize..10_000, b in 0usize..10_000) {
        let w = weil_u2_q3();
        let (g, h) = (a % w.u.order(), b % w.u.order());
        let gh = w.u.mul_idx(g, h);
        prop_assert!(w.t.dense(g).mul(&w.t.dense(h)) == w.t.dense(gh));
        let n = fixed_dim(&w.model.ctx, w.u.elem(g));
        prop_assert_eq!(integer(&w.t.trace(g)), Some(weil_trace_formula(2, 3, n)));
    }

    #[test]
    fn lefschetz_is_class_function(a in 0usize..1000, b in 0usize..1000, k in 0u32..3, m in 1u32..3) {
        let ctx = Fq2::new(2).unwrap();
        let u = u2(2);
        let (g, h) = (u.elem(a % u.order()), u.elem(b % u.order()));
        let conj = u.group.mul(&u.group.mul(h, g), &u.group.inv(h));
        let spec = fermat_x(2);
        let psi = &psi_enum(2, 1)[1];
        let l1 = isotypic_lefschetz(&ctx, &spec, Some(g), psi, ChiChar { k }, m, B).unwrap();
        let l2 = isotypic_lefschetz(&ctx, &spec, Some(&conj), psi, ChiChar { k }, m, B).unwrap();
        prop_assert_eq!(l1, l2);
    }

    #[test]
    fn fourier_inversion(a in 0usize..1000, m in 1u32..3) {
        let ctx = Fq2::new(2).unwrap();
        let u = u2(2);
        let g = u.elem(a % u.order()).clone();
        let spec = fermat_x(2);
        let table = TwistTable::build(&ctx, &spec, B, |z, t| spec.twist(&ctx, Some(&g), z, t, m)).unwrap();
        let mut sum = CycNum::zero(table.modulus());
        for psi in psi_enum(2, 1) {
            for k in 0..3 {
                sum += &table.isotypic(&psi, ChiChar { k }).unwrap();
            }
        }
        prop_assert_eq!(sum, CycNum::from_int(table.modulus(), table.total() as i64));
    }

    #[test]
    fn fibred_count_matches_direct(qi in 0usize..2, a in 0usize..1000, zi in 0usize..4, ti in 0usize..3) {
        let q = [2u64, 3][qi];
        let ctx = Fq2::new(q).unwrap();
        let u = u2(q);
        let g = u.elem(a % u.order());
        let mu = ctx.mu();
        let trans = translation_group(&ctx, 1);
        let spec = fermat_x(2);
        let t = spec.twist(&ctx, Some(g), mu[zi % mu.len()], trans[ti % trans.len()].0, 1).unwrap();
        prop_assert_eq!(twisted_count(&ctx, &spec, &t, B).unwrap(), twisted_count_direct(&ctx, &spec, &t, B).unwrap());
    }

    #[test]
    fn symmetric_group_characters(n in 1usize..9, i in 0usize..1000, j in 0usize..1000) {
        let ps = Partition::all(n);
        let (l, r) = (&ps[i % ps.len()], &ps[j % ps.len()]);
        let ones = Partition::new(vec![1; n]);
        prop_assert_eq!(mn_char(l, &ones).unwrap(), hook_count(l));
        let sign = if (n - r.len()) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(mn_char(&conjugate(l), r).unwrap(), sign * mn_char(l, r).unwrap());
    }
}
