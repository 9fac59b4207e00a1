use num_bigint::BigInt;
use num_rational::BigRational;
use weil_core::groups::{fixed_dim, sp_enumerate, unitary::unitary_group, FMat, FormData, Fq2};
use weil_core::heis_weil::{
    branch, hw_extend, isotypic_dim_formula, psi_enum, svn_rep, weil_isotypic_dims, weil_trace_formula, ChiChar,
    WeilOptions, WeilRep,
};
use weil_core::howe::{
    check_reassembly, omega_dim_formula, omega_spo, orbit_count_formula, sp_orbit_count, theta_table, DihedralLabel,
};
use weil_core::lusztig::{
    formal_omega, lefschetz_extract_m0, mn_char, mn_inner, rm_dim, torus_degree, unipotent_degree_hook,
    unipotent_expansion, z_rho, EigenModel, Partition, Side, TorusLabel,
};
use weil_core::rep::{char_inner, integer};
use weil_core::varieties::{
    curve_checks, fermat_identity_checks, fmt_mat, is_algebraic_integer, sign_dictionary, torsor_lefschetz_sequence,
    verify_drinfeld, verify_surface_ke, verify_torsor, verify_weil_tie, IdentityCheck,
};
use weil_core::{CycNum, Result};

use crate::config::{RunConfig, Suite};
use crate::report::{Anchor, Record, Status};

pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<Record> {
    let mut out = Vec::new();
    match suite {
        Suite::Weil => weil(cfg, &mut out),
        Suite::Branching => branching(cfg, &mut out),
        Suite::Howe => howe(cfg, &mut out),
        Suite::Pointcount => pointcount(cfg, &mut out),
        Suite::Lusztig => lusztig(cfg, &mut out),
        Suite::All => {
            for s in Suite::ORDER {
                out.extend(run_suite(s, cfg));
            }
        }
    }
    out
}

/// Runs `f`, turning an error into a SKIPPED (budget) or FAIL record.
fn guard<T>(out: &mut Vec<Record>, check: &str, anchor: Anchor, params: &str, f: impl FnOnce() -> Result<T>) -> Option<T> {
    match f() {
        Ok(v) => Some(v),
        Err(e) => {
            out.push(Record::from_error(check, anchor, params.to_string(), &e));
            None
        }
    }
}

fn num(c: &CycNum) -> String {
    integer(c).map_or_else(|| c.to_string(), |k| k.to_string())
}

fn identity_records(out: &mut Vec<Record>, anchor: Anchor, checks: Vec<IdentityCheck>) {
    for c in checks {
        let ok = c.holds() && is_algebraic_integer(&c.lhs);
        out.push(Record {
            check: c.name.clone(),
            anchor,
            params: c.params.clone(),
            expected: num(&c.rhs),
            actual: num(&c.lhs),
            status: if ok { Status::Pass } else { Status::Fail },
        });
    }
}

fn weil_opts(cfg: &RunConfig) -> WeilOptions {
    WeilOptions { seed: cfg.seed, budget: cfg.budget }
}

fn nontrivial_psi_count(q: u64) -> usize {
    Fq2::new(q).map(|c| psi_enum(c.p(), c.r()).len() - 1).unwrap_or(0)
}

fn weil(cfg: &RunConfig, out: &mut Vec<Record>) {
    let (n, q, psi) = (cfg.n, cfg.q, cfg.psi);
    let p = format!("n={n} q={q} psi={psi}");
    let qn = q.pow(n as u32);
    if let Some(m) = guard(out, "svn model", Anchor::StoneVonNeumann, &p, || svn_rep(n, q, psi)) {
        out.push(Record::compare("svn degree", Anchor::StoneVonNeumann, p.clone(), qn, m.degree()));
        let chi = m.svn.character();
        if let Some(v) = guard(out, "svn norm", Anchor::StoneVonNeumann, &p, || char_inner(&chi, &chi)) {
            out.push(Record::compare("svn norm", Anchor::StoneVonNeumann, p.clone(), 1, num(&v)));
        }
        let mut bad = 0;
        for z in m.heis.group.center() {
            let i = m.heis.idx(&z).expect("center lies in H");
            let want = CycNum::root(m.modulus, m.psi_exponent(z.a) as i64)
                .map(|r| &r * &CycNum::from_int(m.modulus, m.degree() as i64));
            bad += (want.as_ref() != Ok(&m.svn.trace(i))) as usize;
        }
        out.push(Record::compare(
            "svn central character q^n psi",
            Anchor::StoneVonNeumann,
            p.clone(),
            "0 mismatches",
            format!("{bad} mismatches"),
        ));
    }

    let Some(w) = guard(out, "weil model", Anchor::WeilHomomorphism, &p, || hw_extend(n, q, psi, weil_opts(cfg))) else {
        return;
    };
    if let Some(h) = guard(out, "weil homomorphism", Anchor::WeilHomomorphism, &p, || w.verify()) {
        out.push(Record {
            check: "weil homomorphism".into(),
            anchor: Anchor::WeilHomomorphism,
            params: p.clone(),
            expected: "T(x)T(y) = T(xy)".into(),
            actual: format!("holds on {} pairs ({})", h.pairs, if h.exhaustive { "exhaustive" } else { "sampled" }),
            status: Status::Pass,
        });
    }
    weil_traces(&w, &p, out);

    match weil_isotypic_dims(&w) {
        Ok(dims) => {
            for (chi, d) in dims {
                out.push(Record::compare(
                    "isotypic dimension",
                    Anchor::IsotypicDimension,
                    format!("{p} chi={}", chi.k),
                    isotypic_dim_formula(n, q, chi.k == 0),
                    d,
                ));
            }
        }
        Err(e) => out.push(Record::from_error("isotypic dimension", Anchor::IsotypicDimension, p.clone(), &e)),
    }

    let count = nontrivial_psi_count(q);
    if count > 1 {
        let other = psi % count + 1;
        let po = format!("n={n} q={q} psi={psi},{other}");
        if let Some(w2) = guard(out, "psi independence", Anchor::PsiIndependence, &po, || hw_extend(n, q, other, weil_opts(cfg))) {
            let same = w.t.character() == w2.t.character();
            out.push(Record::compare(
                "psi independence",
                Anchor::PsiIndependence,
                po,
                "equal characters",
                if same { "equal characters" } else { "different characters" },
            ));
        }
    }
}

fn weil_traces(w: &WeilRep, p: &str, out: &mut Vec<Record>) {
    let (n, q) = (w.n, w.q);
    let ctx = &w.model.ctx;
    let f = ctx.field();
    let formula = |g: &FMat| weil_trace_formula(n, q, fixed_dim(ctx, g));
    let bad = (0..w.u.order()).filter(|&i| integer(&w.t.trace(i)) != Some(formula(w.u.elem(i)))).count();
    out.push(Record::compare(
        "trace formula on all elements",
        Anchor::WeilTrace,
        format!("{p} order={}", w.u.order()),
        "0 mismatches",
        format!("{bad} mismatches"),
    ));
    for (ci, class) in w.u.conjugacy_classes().iter().enumerate() {
        let g = w.u.elem(class[0]);
        out.push(Record::compare(
            "trace",
            Anchor::WeilTrace,
            format!("{p} class={ci} size={} N={} g={}", class.len(), fixed_dim(ctx, g), fmt_mat(ctx, g)),
            formula(g),
            num(&w.t.trace(class[0])),
        ));
    }
    if n >= 2 {
        let mut swap = FMat::identity(f, n);
        swap.set(0, 0, f.zero());
        swap.set(1, 1, f.zero());
        swap.set(0, 1, f.one());
        swap.set(1, 0, f.one());
        if let Some(i) = w.u.idx(&swap) {
            out.push(Record::compare("trace at coordinate swap", Anchor::WeilTrace, p.to_string(), formula(&swap), num(&w.t.trace(i))));
        }
    }
    let mu = ctx.mu();
    if mu.len() > n {
        let mut d = FMat::identity(f, n);
        for i in 0..n {
            d.set(i, i, mu[i + 1]);
        }
        if let Some(i) = w.u.idx(&d) {
            let want = if n % 2 == 0 { 1 } else { -1 };
            out.push(Record::compare("trace at regular diagonal", Anchor::WeilTrace, p.to_string(), want, num(&w.t.trace(i))));
        }
    }
}

fn branching(cfg: &RunConfig, out: &mut Vec<Record>) {
    let (n, q, psi) = (cfg.n, cfg.q, cfg.psi);
    let p = format!("n={n}->{} q={q} psi={psi}", n + 1);
    let Some(s) = guard(out, "branching", Anchor::Branching, &p, || hw_extend(n, q, psi, weil_opts(cfg))) else {
        return;
    };
    let Some(b) = guard(out, "branching", Anchor::Branching, &p, || hw_extend(n + 1, q, psi, weil_opts(cfg))) else {
        return;
    };
    for chi in b.chars() {
        let pc = format!("{p} chi={}", chi.k);
        let Some(br) = guard(out, "branching", Anchor::Branching, &pc, || branch(&s, &b, chi)) else {
            continue;
        };
        for &(c2, m, d) in &br.multiplicities {
            if d > 0 {
                out.push(Record::compare(
                    "branching multiplicity",
                    Anchor::Branching,
                    format!("{pc} chi'={}", c2.k),
                    (c2 != chi) as i64,
                    m,
                ));
            }
        }
        let total: u64 = br.multiplicities.iter().map(|&(_, m, d)| m as u64 * d).sum();
        out.push(Record::compare("branching dimension", Anchor::Branching, pc, br.restricted_dim, total));
    }
}

fn sigma_name(l: DihedralLabel) -> String {
    match l {
        DihedralLabel::OneDim { k: 0, kappa } => format!("sigma_(1,{})", if kappa > 0 { "+" } else { "-" }),
        DihedralLabel::OneDim { kappa, .. } => format!("sigma_(nu,{})", if kappa > 0 { "+" } else { "-" }),
        DihedralLabel::TwoDim { k } => format!("sigma_{k}"),
    }
}

fn howe(cfg: &RunConfig, out: &mut Vec<Record>) {
    let (n, q, psi) = (cfg.n, cfg.q, cfg.psi);
    let p = format!("n={n} q={q} psi={psi}");
    let Some(w) = guard(out, "howe model", Anchor::HoweDimensions, &p, || omega_spo(n, q, psi, cfg.seed, cfg.budget)) else {
        return;
    };
    let qn = q.pow(n as u32) as i64;
    out.push(Record::compare("Tr S", Anchor::FrobeniusNormalization, p.clone(), qn, num(&w.s().trace())));
    out.push(Record::compare(
        "S^2",
        Anchor::FrobeniusNormalization,
        p.clone(),
        "identity",
        if w.s().mul(w.s()).is_identity() { "identity" } else { "not identity" },
    ));

    let (plus, minus, other) = omega_dim_formula(n, q);
    if let Some(d) = guard(out, "howe dimensions", Anchor::HoweDimensions, &p, || w.dims()) {
        out.push(Record::compare("dim [1]^+", Anchor::HoweDimensions, p.clone(), plus, d.trivial_plus));
        out.push(Record::compare("dim [1]^-", Anchor::HoweDimensions, p.clone(), minus, d.trivial_minus));
        for &(k, x) in &d.pieces {
            out.push(Record::compare("dim [chi]", Anchor::HoweDimensions, format!("{p} chi={k}"), other, x));
        }
        if let Some((a, b)) = d.quadratic {
            out.push(Record::compare("dim [nu]^+", Anchor::HoweDimensions, p.clone(), other / 2, a));
            out.push(Record::compare("dim [nu]^-", Anchor::HoweDimensions, p.clone(), other / 2, b));
        }
    }

    let Some(t) = guard(out, "theta table", Anchor::ThetaIrreducible, &p, || theta_table(&w)) else {
        return;
    };
    for e in &t.entries {
        out.push(Record {
            check: "theta lift".into(),
            anchor: Anchor::ThetaDimension,
            params: format!("{p} sigma={} dim sigma={}", sigma_name(e.sigma), e.sigma_dim),
            expected: if e.dim == 0 { "norm 0".into() } else { "norm 1".into() },
            actual: format!("norm {}, dim {}", e.norm, e.dim),
            status: if e.norm == (e.dim != 0) as i64 { Status::Pass } else { Status::Fail },
        });
    }
    out.push(Record::compare(
        "theta lifts irreducible and distinct",
        Anchor::ThetaIrreducible,
        p.clone(),
        true,
        t.irreducible_and_distinct(),
    ));
    if let Some(ok) = guard(out, "theta reassembly", Anchor::ThetaIrreducible, &p, || check_reassembly(&w, &t)) {
        out.push(Record::compare("theta reassembly", Anchor::ThetaIrreducible, p.clone(), true, ok));
    }
    let zeros: Vec<String> = t.zero_entries().into_iter().map(sigma_name).collect();
    if n == 1 {
        // Compared literally; the computed zero lift is listed in params.
        let plus1 = t.get(DihedralLabel::OneDim { k: 0, kappa: 1 }).map(|e| e.dim);
        out.push(Record::compare(
            "theta zero lift",
            Anchor::ThetaZeroLift,
            format!("{p} sigma=sigma_(1,+) zero lifts=[{}]", zeros.join(" ")),
            0,
            plus1.map_or("missing".into(), |d| d.to_string()),
        ));
    } else {
        out.push(Record::compare(
            "theta zero lifts",
            Anchor::ThetaZeroLift,
            p.clone(),
            "none",
            if zeros.is_empty() { "none".into() } else { zeros.join(" ") },
        ));
    }
    if n == 2 {
        let qq = q as i64;
        let d = t.get(DihedralLabel::OneDim { k: 0, kappa: -1 }).map(|e| e.dim);
        out.push(Record::compare(
            "dim theta(sigma_(1,-))",
            Anchor::ThetaDimension,
            p.clone(),
            qq * (qq - 1) * (qq - 1) / 2,
            d.map_or("missing".into(), |d| d.to_string()),
        ));
    }

    let want = orbit_count_formula(n, q);
    let ch = w.sp_character();
    if let Some(v) = guard(out, "<chi,chi>_Sp by characters", Anchor::HoweInnerProduct, &p, || char_inner(&ch, &ch)) {
        out.push(Record::compare("<chi,chi>_Sp by characters", Anchor::HoweInnerProduct, p.clone(), want, num(&v)));
    }
    if let Some(o) = guard(out, "<chi,chi>_Sp by orbits", Anchor::HoweInnerProduct, &p, || sp_orbit_count(n, q, cfg.budget)) {
        let (a, b, c) = o.breakdown;
        out.push(Record::compare(
            "<chi,chi>_Sp by orbits",
            Anchor::HoweInnerProduct,
            format!("{p} orbits by span dimension={a},{b},{c}"),
            want,
            o.total,
        ));
    }
}

fn pointcount(cfg: &RunConfig, out: &mut Vec<Record>) {
    let (n, q) = (cfg.n, cfg.q);
    let budget = cfg.budget as u128;
    let p = format!("n={n} q={q}");
    let Some(ctx) = guard(out, "field", Anchor::CurveCount, &p, || Fq2::new(q)) else {
        return;
    };
    for m in [1, 2] {
        let pm = format!("q={q} m={m}");
        if let Some(c) = guard(out, "curve", Anchor::CurveCount, &pm, || curve_checks(&ctx, m, budget)) {
            identity_records(out, Anchor::CurveCount, c);
        }
    }

    if let Some(u) = guard(out, "fermat", Anchor::FermatCohomology, &p, || {
        unitary_group(ctx.clone(), &FormData::hermitian(&ctx, n), cfg.budget)
    }) {
        // counts are class functions of g
        for class in u.conjugacy_classes() {
            let g = u.elem(class[0]);
            for m in [1, 2] {
                let pg = format!("{p} m={m} g={}", fmt_mat(&ctx, g));
                if let Some(c) = guard(out, "fermat", Anchor::FermatCohomology, &pg, || fermat_identity_checks(&ctx, n, g, m, budget)) {
                    identity_records(out, Anchor::FermatCohomology, c);
                }
            }
        }
    }

    let f = ctx.field();
    for &zeta in ctx.elements().iter().filter(|z| !f.is_zero(**z)) {
        for k in 0..=1 {
            for m in [1, 2] {
                let pz = format!("q={q} zeta={} k={k} m={m}", f.index(zeta));
                if let Some(c) = guard(out, "surface-ke", Anchor::SurfaceKe, &pz, || verify_surface_ke(&ctx, zeta, k, m, budget)) {
                    identity_records(out, Anchor::SurfaceKe, c);
                }
            }
        }
    }

    if n >= 2 {
        let pt = format!("{p} m=1");
        if let Some(r) = guard(out, "torsor", Anchor::TorsorQuotient, &pt, || verify_torsor(&ctx, n, 1, budget)) {
            out.push(Record {
                check: "torsor quotient".into(),
                anchor: Anchor::TorsorQuotient,
                params: format!("{pt} |M^F|={} #Y~={} sum={}", r.levi_order, r.tilde_count, r.twisted_sum),
                expected: format!("free orbits, #Y_P = #Y_n = {}", r.yn_count),
                actual: format!(
                    "{} orbits, first columns {}, #Y_P = {}",
                    if r.free_orbits { "free" } else { "non-free" },
                    if r.first_column_ok { "on Y~_n" } else { "off Y~_n" },
                    r.yp_count
                ),
                status: if r.holds() { Status::Pass } else { Status::Fail },
            });
        }
    }

    if let Some(sl2) = guard(out, "drinfeld", Anchor::DrinfeldCurve, &p, || sp_enumerate(ctx.clone(), 1, cfg.budget)) {
        for g in sl2.elements() {
            for k in 0..=q as u32 {
                let pg = format!("q={q} chi={k} g={}", fmt_mat(&ctx, g));
                if let Some(c) = guard(out, "drinfeld", Anchor::DrinfeldCurve, &pg, || verify_drinfeld(&ctx, g, ChiChar { k }, 1, budget)) {
                    identity_records(out, Anchor::DrinfeldCurve, c);
                }
            }
        }
    }

    if let Some(d) = guard(out, "sign dictionary", Anchor::WeilTie, &p, || sign_dictionary(q, budget)) {
        for m in [1, 2] {
            let pm = format!("{p} m={m} chi inverted={} g inverted={}", d.chi_inverse, d.g_inverse);
            if let Some(c) = guard(out, "weil-tie", Anchor::WeilTie, &pm, || verify_weil_tie(n, q, m, d, budget)) {
                identity_records(out, Anchor::WeilTie, c);
            }
        }
    }
}

fn lusztig(cfg: &RunConfig, out: &mut Vec<Record>) {
    let (n, q) = (cfg.n, cfg.q);
    for k in 1..=n {
        let ps = Partition::all(k);
        let mut bad = 0;
        for l in &ps {
            for m in &ps {
                let want = (l == m) as i64;
                bad += mn_inner(l, m).map_or(true, |v| v != rat(want)) as usize;
            }
        }
        out.push(Record::compare(
            "character table orthogonality",
            Anchor::MnOrthogonality,
            format!("n={k} partitions={}", ps.len()),
            "0 mismatches",
            format!("{bad} mismatches"),
        ));
    }

    for l in Partition::all(n) {
        let pl = format!("n={n} q={q} lambda={l}");
        let Some(e) = guard(out, "class expansion", Anchor::ClassExpansion, &pl, || unipotent_expansion(&l)) else {
            continue;
        };
        let mut bad = 0;
        for r in Partition::all(n) {
            let want = mn_char(&l, &r).map(|c| BigRational::new(BigInt::from(c), z_rho(&r)));
            bad += want.map_or(true, |w| e.coefficient(&TorusLabel::Unitary(r)) != w) as usize;
        }
        out.push(Record::compare("expansion coefficients", Anchor::ClassExpansion, pl.clone(), "0 mismatches", format!("{bad} mismatches")));
        if let Some(hook) = guard(out, "unipotent degree", Anchor::ClassExpansion, &pl, || unipotent_degree_hook(&l, q)) {
            let err = std::cell::Cell::new(None);
            let deg = e.degree(|t| {
                torus_degree(Side::Unitary, n, q, t).unwrap_or_else(|x| {
                    err.set(Some(x));
                    rat(0)
                })
            });
            match err.into_inner() {
                Some(x) => out.push(Record::from_error("unipotent degree", Anchor::ClassExpansion, pl, &x)),
                None => out.push(Record::compare("unipotent degree", Anchor::ClassExpansion, pl, hook, abs(deg))),
            }
        }
    }

    let p = format!("n={n} q={q}");
    let (plus, minus, other) = omega_dim_formula(n, q);
    let sign = if n % 2 == 1 { 1 } else { -1 };
    if let Some(u) = guard(out, "rm_dim", Anchor::RmDimension, &p, || rm_dim(Side::Unitary, n, q)) {
        out.push(Record::compare("rm_dim unitary", Anchor::RmDimension, p.clone(), sign * isotypic_dim_formula(n, q, false), u));
    }
    if let Some(s) = guard(out, "rm_dim", Anchor::RmDimension, &p, || rm_dim(Side::Symplectic, n, q)) {
        out.push(Record::compare("rm_dim symplectic", Anchor::RmDimension, p.clone(), -other, s));
    }
    let cases = [
        (Side::Unitary, true, isotypic_dim_formula(n, q, true)),
        (Side::Unitary, false, isotypic_dim_formula(n, q, false)),
        (Side::Symplectic, true, plus + minus),
        (Side::Symplectic, false, other),
    ];
    for (side, trivial, want) in cases {
        let pc = format!("{p} side={side:?} chi={}", if trivial { "trivial" } else { "nontrivial" });
        if let Some(v) = guard(out, "formal omega degree", Anchor::RmDimension, &pc, || formal_omega(side, n, trivial)) {
            let deg = v.degree(|t| torus_degree(side, n, q, t).unwrap_or_else(|_| rat(0)));
            out.push(Record::compare("formal omega degree", Anchor::RmDimension, pc, want, deg));
        }
    }

    extraction(cfg, out);
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn abs(x: BigRational) -> BigRational {
    if x < rat(0) {
        -x
    } else {
        x
    }
}

fn extraction(cfg: &RunConfig, out: &mut Vec<Record>) {
    let (n, q) = (cfg.n, cfg.q);
    let Ok(ctx) = Fq2::new(q) else { return };
    let Ok(want) = rm_dim(Side::Unitary, n, q) else { return };
    for k in 1..=q as u32 {
        let p = format!("n={n} q={q} chi={k}");
        let len = 2 * n as u32;
        let Some(seq) = guard(out, "m0 extraction", Anchor::M0Extraction, &p, || {
            torsor_lefschetz_sequence(&ctx, n, ChiChar { k }, len, cfg.budget as u128)
        }) else {
            continue;
        };
        let model = EigenModel { q, dim: n as u32 - 1 };
        let rec = match lefschetz_extract_m0(&seq, model) {
            Ok(ex) => {
                let r = Record::compare("m0 extraction", Anchor::M0Extraction, format!("{p} eigenvalues={:?}", ex.eigenvalues), want, ex.value);
                if r.status == Status::Pass {
                    r.with_status(Status::Experimental)
                } else {
                    r
                }
            }
            Err(e) => Record {
                check: "m0 extraction".into(),
                anchor: Anchor::M0Extraction,
                params: p,
                expected: want.to_string(),
                actual: format!("no fit: {e}"),
                status: Status::Experimental,
            },
        };
        out.push(rec);
    }
}
