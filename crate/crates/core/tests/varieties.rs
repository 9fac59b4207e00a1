use weil_core::groups::{sp_enumerate, unitary::unitary_group, FormData, Fq2};
use weil_core::heis_weil::ChiChar;
use weil_core::varieties::{
    fermat_identity_checks, is_algebraic_integer, sign_dictionary, verify_drinfeld, verify_torsor, verify_weil_tie,
    IdentityCheck,
};

const B: u128 = 1 << 26;

fn assert_all(checks: &[IdentityCheck]) {
    for c in checks {
        assert!(c.holds(), "{} {}: {} vs {}", c.name, c.params, c.lhs, c.rhs);
        assert!(is_algebraic_integer(&c.lhs));
    }
}

#[test]
fn fermat_n3_class_representatives() {
    let ctx = Fq2::new(2).unwrap();
    let u = unitary_group(ctx.clone(), &FormData::hermitian(&ctx, 3), 1 << 20).unwrap();
    for class in u.conjugacy_classes() {
        let g = u.elem(class[0]);
        for m in [1, 2] {
            assert_all(&fermat_identity_checks(&ctx, 3, g, m, B).unwrap());
        }
    }
}

#[test]
fn drinfeld_q2_q3() {
    for q in [2, 3] {
        let ctx = Fq2::new(q).unwrap();
        let sl2 = sp_enumerate(ctx.clone(), 1, 1 << 20).unwrap();
        for g in sl2.elements() {
            for k in 0..=q as u32 {
                assert_all(&verify_drinfeld(&ctx, g, ChiChar { k }, 1, B).unwrap());
            }
        }
    }
}

#[test]
fn torsor_m2() {
    let ctx = Fq2::new(2).unwrap();
    let r = verify_torsor(&ctx, 2, 2, B).unwrap();
    assert!(r.holds(), "{r:?}");
}

#[test]
fn weil_tie_q2() {
    let d = sign_dictionary(2, B).unwrap();
    for n in [1, 2] {
        for m in [1, 2] {
            assert_all(&verify_weil_tie(n, 2, m, d, B).unwrap());
        }
    }
}
