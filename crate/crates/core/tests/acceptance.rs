//! Acceptance criteria A1 to A10. Runs without the libtest harness so every
//! criterion prints exactly one PASS or FAIL line.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;

use repzeta::arith::{dirichlet_from_pairs, global_coeffs_from_local, quotient_pairs};
use repzeta::counting::{
    admissible_types, count_type_closed, count_type_enumerate, local_zeta_truncation_oracle, rank_count_closed,
    rank_count_enumerate, MatrixSpaceKind,
};
use repzeta::igusa::{
    closed_coeffs, igusa_coeff_oracle, verify_bs_candidates, verify_pole_translation, verify_sym_alt_relation, PvsKind,
};
use repzeta::qalg::{rat_equal, verify_identity, IdentityKind, SubsetIndex};
use repzeta::schemes::{
    check_functional_equation, local_coefficients, local_zeta_additive, local_zeta_multiplicative, Family, GroupScheme,
};
use repzeta::weyl::{
    all_stats, conjecture_l_report, length_oracle_bfs, stats, verify_f_formulas_from, verify_joint_distribution_b,
    verify_reiner_from, verify_sn_distribution,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn schemes_where(max_n: usize, keep: impl Fn(&GroupScheme) -> bool) -> Vec<GroupScheme> {
    GroupScheme::all_up_to(max_n).into_iter().filter(keep).collect()
}

fn a1() -> Check {
    let gs = schemes_where(5, |g| g.family == Family::H || g.n <= 4);
    for g in &gs {
        let add = local_zeta_additive(g).map_err(|e| format!("{g}: {e}"))?;
        ensure(rat_equal(&add, &local_zeta_multiplicative(g)), || format!("{g} differs"))?;
    }
    Ok(format!("{} schemes", gs.len()))
}

fn a2() -> Check {
    let gs = GroupScheme::all_up_to(4);
    for g in &gs {
        ensure(check_functional_equation(g).map_err(|e| e.to_string())?, || format!("{g} fails"))?;
    }
    Ok(format!("{} schemes", gs.len()))
}

fn a3() -> Check {
    let bound = 1000;
    let mut phi: Vec<u64> = (0..=bound as u64).collect();
    for p in 2..=bound {
        if phi[p] == p as u64 {
            for k in (p..=bound).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    let got = global_coeffs_from_local(&GroupScheme::g(1), bound).map_err(|e| e.to_string())?;
    let hits = (1..=bound).filter(|&n| *got.get(n) == BigInt::from(phi[n])).count();
    ensure(hits == bound, || format!("{hits}/{bound} entries"))?;
    Ok(format!("{hits}/{bound} entries"))
}

fn a4() -> Check {
    for kind in IdentityKind::ALL {
        for n in 1..=5 {
            ensure(verify_identity(kind, n).map_err(|e| e.to_string())?, || format!("{} n={n}", kind.name()))?;
        }
    }
    Ok("4 identities, n <= 5".into())
}

fn a5() -> Check {
    let mut cases = vec![];
    for q in [2usize, 3] {
        for space in [
            MatrixSpaceKind::Alt(2),
            MatrixSpaceKind::Alt(4),
            MatrixSpaceKind::Mat(1),
            MatrixSpaceKind::Mat(2),
            MatrixSpaceKind::Mat(3),
            MatrixSpaceKind::Sym(1),
            MatrixSpaceKind::Sym(2),
            MatrixSpaceKind::Sym(3),
        ] {
            cases.push((space, q));
        }
    }
    cases.push((MatrixSpaceKind::Alt(5), 2));
    for &(space, q) in &cases {
        let hist = rank_count_enumerate(space, q).map_err(|e| e.to_string())?;
        for i in 0..=space.half() {
            let closed = rank_count_closed(space, i, q as u64).map_err(|e| e.to_string())?;
            let seen = hist.get(&space.rank_of_index(i)).copied().unwrap_or(0);
            ensure(closed == BigInt::from(seen), || format!("{space} q={q} index {i}: {closed} vs {seen}"))?;
        }
    }
    Ok(format!("{} spaces", cases.len()))
}

fn a6() -> Check {
    // F_{2,1} at p = 3 and N = 2 would need 3^20 points
    let cases: Vec<(GroupScheme, u64)> = vec![
        (GroupScheme::f(2, 0), 2),
        (GroupScheme::f(2, 0), 3),
        (GroupScheme::f(2, 1), 2),
        (GroupScheme::g(2), 2),
        (GroupScheme::g(2), 3),
        (GroupScheme::h(2), 2),
        (GroupScheme::h(2), 3),
    ];
    let mut types = 0;
    for (g, p) in &cases {
        for cap in 0..=2 {
            for (idx, r) in admissible_types(2, cap) {
                let closed = count_type_closed(g, &idx, &r, *p).map_err(|e| e.to_string())?;
                let seen = count_type_enumerate(g, &idx, &r, *p).map_err(|e| e.to_string())?;
                ensure(closed == BigInt::from(seen), || format!("{g} p={p} {idx} r={r:?}: {closed} vs {seen}"))?;
                types += 1;
            }
        }
        let oracle = local_zeta_truncation_oracle(g, *p, 2).map_err(|e| e.to_string())?;
        let series = local_coefficients(g, *p, 2).map_err(|e| e.to_string())?;
        ensure(oracle == series, || format!("{g} p={p}: {oracle:?} vs {series:?}"))?;
    }
    Ok(format!("{types} type counts, {} truncations", cases.len()))
}

fn a7() -> Check {
    for n in 1..=4 {
        let records = all_stats(n).map_err(|e| e.to_string())?;
        for idx in SubsetIndex::all(n) {
            ensure(verify_reiner_from(&records, &idx), || format!("Reiner n={n} {idx}"))?;
            for delta in 0..=1 {
                let ok = verify_f_formulas_from(&records, delta, &idx).map_err(|e| e.to_string())?;
                ensure(ok, || format!("type F formula n={n} delta={delta} {idx}"))?;
            }
        }
        ensure(verify_joint_distribution_b(n).map_err(|e| e.to_string())?, || format!("joint B n={n}"))?;
        let bfs = length_oracle_bfs(n).map_err(|e| e.to_string())?;
        for (w, l) in &bfs {
            ensure(stats(w).length == *l, || format!("length of {w:?}"))?;
        }
    }
    for n in 1..=5 {
        ensure(verify_sn_distribution(n).map_err(|e| e.to_string())?, || format!("S_n n={n}"))?;
    }
    Ok("n <= 4, S_n up to 5".into())
}

fn a8() -> Check {
    let (mut proved, mut open_match, mut open_total) = (0, 0, 0);
    for n in 1..=4 {
        for row in conjecture_l_report(n).map_err(|e| e.to_string())? {
            if row.proved {
                ensure(row.matches, || format!("n={n} I={:?}", row.subset))?;
                proved += 1;
            } else {
                open_total += 1;
                open_match += row.matches as usize;
            }
        }
    }
    Ok(format!("{proved} proved cases; remaining cases match {open_match}/{open_total}"))
}

fn a9() -> Check {
    let mut asserted = 0;
    let mut report = Vec::new();
    let kinds = [
        PvsKind::AltPfaffian(2),
        PvsKind::AltPfaffian(4),
        PvsKind::MatDet(1),
        PvsKind::MatDet(2),
        PvsKind::SymDet(1),
        PvsKind::SymDet(2),
    ];
    for kind in kinds {
        for p in [2u64, 3] {
            let closed = closed_coeffs(kind, p, 2);
            for k in 0..=2u32 {
                let oracle: BigRational = igusa_coeff_oracle(kind, p, k).map_err(|e| e.to_string())?;
                let ok = oracle == closed[k as usize];
                if matches!(kind, PvsKind::SymDet(_)) && p == 2 {
                    report.push(format!("{kind} p=2 k={k} {}", if ok { "match" } else { "differs" }));
                } else {
                    ensure(ok, || format!("{kind} p={p} k={k}: {oracle} vs {}", closed[k as usize]))?;
                    asserted += 1;
                }
            }
        }
    }
    for n in 1..=4 {
        ensure(verify_sym_alt_relation(n).map_err(|e| e.to_string())?, || format!("Sym/Alt n={n}"))?;
        ensure(verify_bs_candidates(n).map_err(|e| e.to_string())?, || format!("b-function n={n}"))?;
    }
    for g in GroupScheme::all_up_to(4) {
        ensure(verify_pole_translation(&g), || format!("poles {g}"))?;
    }
    Ok(format!("{asserted} coefficients; report: {}", report.join(", ")))
}

fn a10() -> Check {
    let gs = GroupScheme::all_up_to(3);
    for g in &gs {
        let local = global_coeffs_from_local(g, 200).map_err(|e| e.to_string())?;
        let conv = dirichlet_from_pairs(&quotient_pairs(g), 200);
        ensure(local == conv, || format!("{g}"))?;
        ensure(local.is_multiplicative(), || format!("{g} not multiplicative"))?;
        ensure(local.coeffs.iter().all(|c| c.sign() != Sign::Minus), || format!("{g} negative"))?;
    }
    Ok(format!("{} schemes to 200", gs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("A1 additive and multiplicative forms agree", a1),
        ("A2 functional equations", a2),
        ("A3 Heisenberg coefficients are Euler phi", a3),
        ("A4 q-series identities", a4),
        ("A5 rank counts over finite fields", a5),
        ("A6 elementary divisor type counts", a6),
        ("A7 signed permutation statistics", a7),
        ("A8 statistic L on descent classes", a8),
        ("A9 Igusa zeta functions", a9),
        ("A10 Dirichlet coefficients by two routes", a10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({detail}) [{secs:.2}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} [{secs:.2}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
