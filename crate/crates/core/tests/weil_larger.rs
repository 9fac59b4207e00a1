use std::time::Instant;

use weil_core::heis_weil::{branch, hw_extend, isotypic_dim_formula, weil_isotypic_dims, WeilOptions};

#[test]
fn weil_u2_q3_and_u3_q2() {
    for (n, q) in [(2usize, 3u64), (3, 2)] {
        let t0 = Instant::now();
        let w = hw_extend(n, q, 1, WeilOptions::default()).unwrap();
        eprintln!("build ({n},{q}): {:?}", t0.elapsed());
        w.verify().unwrap();
        eprintln!("verify ({n},{q}): {:?}", t0.elapsed());
        for (chi, d) in weil_isotypic_dims(&w).unwrap() {
            assert_eq!(d as i64, isotypic_dim_formula(n, q, chi.k == 0));
        }
        eprintln!("dims ({n},{q}): {:?}", t0.elapsed());
    }
}

#[test]
fn branching_two_to_three() {
    let s = hw_extend(2, 2, 1, WeilOptions::default()).unwrap();
    let b = hw_extend(3, 2, 1, WeilOptions::default()).unwrap();
    for chi in b.chars() {
        let br = branch(&s, &b, chi).unwrap();
        for (c2, m, d) in br.multiplicities {
            if d > 0 {
                assert_eq!(m, (c2 != chi) as i64);
            }
        }
    }
}
