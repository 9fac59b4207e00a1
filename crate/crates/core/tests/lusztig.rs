use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use weil_core::groups::Fq2;
use weil_core::heis_weil::{isotypic_dim_formula, ChiChar};
use weil_core::howe::omega_dim_formula;
use weil_core::lusztig::{
    formal_omega, lefschetz_extract_m0, mn_char, rm_dim, torus_degree, unipotent_expansion, z_rho, EigenModel,
    Partition, Side, TorusLabel,
};
use weil_core::varieties::torsor_lefschetz_sequence;

type Poly = HashMap<Vec<u8>, i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// χ^λ_ρ as the coefficient of x^{λ+δ} in a_δ·p_ρ (Frobenius' formula).
fn frobenius_char(lambda: &Partition, rho: &Partition) -> i64 {
    let n = lambda.weight();
    let mut a_delta = Poly::new();
    let perms = permutations(n);
    for (perm, sign) in perms {
        let e: Vec<u8> = perm.iter().map(|&i| (n - 1 - i) as u8).collect();
        *a_delta.entry(e).or_insert(0) += sign;
    }
    let mut acc = a_delta;
    for &k in rho.parts() {
        let mut p = Poly::new();
        for i in 0..n {
            let mut e = vec![0u8; n];
            e[i] = k as u8;
            p.insert(e, 1);
        }
        acc = mul(&acc, &p);
    }
    let mut target = vec![0u8; n];
    for (i, t) in target.iter_mut().enumerate() {
        *t = (lambda.parts().get(i).copied().unwrap_or(0) + n - 1 - i) as u8;
    }
    acc.get(&target).copied().unwrap_or(0)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            // inserting the largest element before (len - pos) smaller ones
            let sign = if (p.len() - pos) % 2 == 0 { s } else { -s };
            out.push((v, sign));
        }
    }
    out
}

#[test]
fn murnaghan_nakayama_matches_frobenius_formula() {
    for n in 1..=5 {
        for l in Partition::all(n) {
            for r in Partition::all(n) {
                assert_eq!(mn_char(&l, &r).unwrap(), frobenius_char(&l, &r), "{l} {r}");
            }
        }
    }
}

#[test]
fn class_expansion_coefficients() {
    for n in 1..=4 {
        for l in Partition::all(n) {
            let e = unipotent_expansion(&l).unwrap();
            for r in Partition::all(n) {
                let want = BigRational::new(BigInt::from(frobenius_char(&l, &r)), z_rho(&r));
                assert_eq!(e.coefficient(&TorusLabel::Unitary(r.clone())), want);
            }
        }
        // trivial character: Σ_ρ R_{T(ρ)}/z_ρ
        let triv = unipotent_expansion(&Partition::new(vec![n])).unwrap();
        for r in Partition::all(n) {
            assert_eq!(triv.coefficient(&TorusLabel::Unitary(r.clone())), BigRational::new(1.into(), z_rho(&r)));
        }
    }
}

#[test]
fn rm_dim_against_weil_dimensions() {
    for n in 1..=3 {
        for q in [2u64, 3] {
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let u = rm_dim(Side::Unitary, n, q).unwrap();
            assert_eq!(u, sign * isotypic_dim_formula(n, q, false));
            let s = rm_dim(Side::Symplectic, n, q).unwrap();
            let (plus, minus, other) = omega_dim_formula(n, q);
            assert_eq!(-s, other);
            let deg = |side: Side| move |t: &TorusLabel| torus_degree(side, n, q, t).unwrap();
            let int = |k: i64| BigRational::from_integer(k.into());
            assert_eq!(formal_omega(Side::Unitary, n, true).unwrap().degree(deg(Side::Unitary)), int(isotypic_dim_formula(n, q, true)));
            assert_eq!(formal_omega(Side::Unitary, n, false).unwrap().degree(deg(Side::Unitary)), int(isotypic_dim_formula(n, q, false)));
            assert_eq!(formal_omega(Side::Symplectic, n, true).unwrap().degree(deg(Side::Symplectic)), int(plus + minus));
            assert_eq!(formal_omega(Side::Symplectic, n, false).unwrap().degree(deg(Side::Symplectic)), int(other));
        }
    }
}

#[test]
fn extraction_on_torsor_sequence() {
    let ctx = Fq2::new(2).unwrap();
    for k in 1..=2 {
        let seq = torsor_lefschetz_sequence(&ctx, 2, ChiChar { k }, 4, 1 << 24).unwrap();
        let ex = lefschetz_extract_m0(&seq, EigenModel { q: 2, dim: 1 }).unwrap();
        assert_eq!(-ex.value, isotypic_dim_formula(2, 2, false));
    }
}
