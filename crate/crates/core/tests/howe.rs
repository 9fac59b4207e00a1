use weil_core::howe::{
    check_reassembly, omega_dim_formula, omega_spo_default, orbit_count_formula, sp_orbit_count, theta_table,
    DihedralLabel,
};
use weil_core::rep::{char_inner, integer};

fn run(n: usize, q: u64) {
    let w = omega_spo_default(n, q).unwrap();
    assert_eq!(w.degree() as u64, q.pow(2 * n as u32));
    assert_eq!(integer(&w.s().trace()), Some(q.pow(n as u32) as i64));
    assert!(w.s().mul(w.s()).is_identity());

    let d = w.dims().unwrap();
    let (plus, minus, other) = omega_dim_formula(n, q);
    assert_eq!((d.trivial_plus as i64, d.trivial_minus as i64), (plus, minus));
    for &(_, x) in &d.pieces {
        assert_eq!(x as i64, other);
    }
    if let Some((a, b)) = d.quadratic {
        assert_eq!(a, b);
        assert_eq!(2 * a as i64, other);
    }
    assert!(w.check_s_swaps_pieces().unwrap());

    let t = theta_table(&w).unwrap();
    assert!(t.irreducible_and_distinct());
    assert!(check_reassembly(&w, &t).unwrap());
    let total: i64 = t.entries.iter().map(|e| e.sigma_dim as i64 * e.dim).sum();
    assert_eq!(total, q.pow(2 * n as u32) as i64);
    for e in &t.entries {
        if let DihedralLabel::TwoDim { .. } = e.sigma {
            assert_eq!(e.dim, other);
        }
    }
    if n == 2 {
        let q = q as i64;
        assert_eq!(t.get(DihedralLabel::OneDim { k: 0, kappa: -1 }).unwrap().dim, q * (q - 1) * (q - 1) / 2);
    }

    let c = w.sp_character();
    let norm = integer(&char_inner(&c, &c).unwrap()).unwrap();
    assert_eq!(norm as u64, orbit_count_formula(n, q));
    assert_eq!(sp_orbit_count(n, q, 1 << 24).unwrap().total as u64, orbit_count_formula(n, q));
}

#[test]
fn howe_n1_q3() {
    run(1, 3);
}

#[test]
fn howe_n2_q2() {
    run(2, 2);
}
